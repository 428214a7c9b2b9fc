use super::{Elem, ExactIdeal, ExactIdeals, Model, ModelError, ModelSpec};

/// Free monoid `F_n^+` inside the free group `F_n`.
///
/// Letters are encoded as `+i` / `-i` for the `i`-th generator and its
/// inverse (`i` starting at 1) and printed as `a, b, c, ...` and
/// `A, B, C, ...`. The empty word is printed as `e`. Nonempty constructible
/// ideals are the principal ideals `wP`.
#[derive(Debug, Clone)]
pub struct FreeMonoid {
    rank: usize,
    generators: Vec<Elem>,
}

impl FreeMonoid {
    pub fn new(rank: usize) -> Result<Self, ModelError> {
        if rank == 0 || rank > 26 {
            return Err(ModelError::InvalidSpec(
                "free_monoid rank must be between 1 and 26".into(),
            ));
        }
        let generators = (1..=rank as i64).map(|i| Elem::new(vec![i])).collect();
        Ok(FreeMonoid { rank, generators })
    }

    fn word(x: &ExactIdeal) -> Option<&[i64]> {
        match x {
            ExactIdeal::Principal { word } => Some(word.coords()),
            ExactIdeal::Empty => None,
            other => panic!("foreign ideal form for free_monoid: {other:?}"),
        }
    }

    fn principal(word: Vec<i64>) -> ExactIdeal {
        ExactIdeal::Principal {
            word: Elem::new(word),
        }
    }
}

fn reduce_into(out: &mut Vec<i64>, letters: &[i64]) {
    for &l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
}

fn is_prefix(short: &[i64], long: &[i64]) -> bool {
    short.len() <= long.len() && long[..short.len()] == *short
}

impl Model for FreeMonoid {
    fn name(&self) -> String {
        format!("F{}+", self.rank)
    }

    fn spec(&self) -> ModelSpec {
        ModelSpec::FreeMonoid { rank: self.rank }
    }

    fn unit(&self) -> Elem {
        Elem::new(Vec::new())
    }

    fn generators(&self) -> &[Elem] {
        &self.generators
    }

    fn validate(&self, a: &Elem) -> Result<(), ModelError> {
        let w = a.coords();
        let letters_ok = w
            .iter()
            .all(|&l| l != 0 && l.unsigned_abs() as usize <= self.rank);
        let reduced = w.windows(2).all(|p| p[0] != -p[1]);
        if letters_ok && reduced {
            Ok(())
        } else {
            Err(ModelError::Mismatch {
                model: self.name(),
                elem: a.clone(),
            })
        }
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = a.coords().to_vec();
        reduce_into(&mut out, b.coords());
        Elem::new(out)
    }

    fn inv(&self, a: &Elem) -> Elem {
        Elem::new(a.coords().iter().rev().map(|l| -l).collect())
    }

    fn in_p(&self, a: &Elem) -> bool {
        a.coords().iter().all(|&l| l > 0)
    }

    fn length(&self, a: &Elem) -> usize {
        a.coords().len()
    }

    fn enumerate_p(&self, max_len: usize) -> Vec<Elem> {
        let mut out = vec![self.unit()];
        let mut level = vec![Vec::<i64>::new()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(level.len() * self.rank);
            for w in &level {
                for l in 1..=self.rank as i64 {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned().map(Elem::new));
            level = next;
        }
        out
    }

    fn format(&self, a: &Elem) -> String {
        if a.coords().is_empty() {
            return "e".to_string();
        }
        a.coords()
            .iter()
            .map(|&l| {
                let base = if l > 0 { b'a' } else { b'A' };
                (base + (l.unsigned_abs() as u8 - 1)) as char
            })
            .collect()
    }

    fn parse(&self, input: &str) -> Result<Elem, ModelError> {
        let s = input.trim();
        if s == "e" || s.is_empty() {
            return Ok(self.unit());
        }
        let mut letters = Vec::new();
        for ch in s.chars() {
            let l = match ch {
                'a'..='z' => (ch as u8 - b'a') as i64 + 1,
                'A'..='Z' => -((ch as u8 - b'A') as i64 + 1),
                _ => {
                    return Err(ModelError::Parse {
                        input: input.to_string(),
                        reason: format!("unexpected character {ch:?}"),
                    })
                }
            };
            if l.unsigned_abs() as usize > self.rank {
                return Err(ModelError::Parse {
                    input: input.to_string(),
                    reason: format!("letter {ch:?} exceeds rank {}", self.rank),
                });
            }
            letters.push(l);
        }
        let mut out = Vec::new();
        reduce_into(&mut out, &letters);
        Ok(Elem::new(out))
    }

    fn is_abelian(&self) -> bool {
        self.rank == 1
    }

    fn exact(&self) -> Option<&dyn ExactIdeals> {
        Some(self)
    }

    fn least_element_bound(&self, total_q_len: usize) -> Option<usize> {
        Some(total_q_len)
    }
}

impl ExactIdeals for FreeMonoid {
    fn whole(&self) -> ExactIdeal {
        Self::principal(Vec::new())
    }

    fn left_mul(&self, p: &Elem, x: &ExactIdeal) -> ExactIdeal {
        match Self::word(x) {
            None => ExactIdeal::Empty,
            Some(w) => {
                let mut v = p.coords().to_vec();
                v.extend_from_slice(w);
                Self::principal(v)
            }
        }
    }

    fn preimage(&self, p: &Elem, x: &ExactIdeal) -> ExactIdeal {
        match Self::word(x) {
            None => ExactIdeal::Empty,
            Some(w) => {
                let p = p.coords();
                if is_prefix(w, p) {
                    self.whole()
                } else if is_prefix(p, w) {
                    Self::principal(w[p.len()..].to_vec())
                } else {
                    ExactIdeal::Empty
                }
            }
        }
    }

    fn intersect(&self, x: &ExactIdeal, y: &ExactIdeal) -> ExactIdeal {
        match (Self::word(x), Self::word(y)) {
            (Some(u), Some(w)) if is_prefix(u, w) => y.clone(),
            (Some(u), Some(w)) if is_prefix(w, u) => x.clone(),
            _ => ExactIdeal::Empty,
        }
    }

    fn contains(&self, x: &ExactIdeal, a: &Elem) -> bool {
        match Self::word(x) {
            None => false,
            Some(w) => self.in_p(a) && is_prefix(w, a.coords()),
        }
    }

    fn translate_meet(&self, g: &Elem) -> ExactIdeal {
        // gw is positive for some positive w iff g = u s^{-1} with u, s positive;
        // then gP ∩ P = uP.
        let w = g.coords();
        let split = w.iter().position(|&l| l < 0).unwrap_or(w.len());
        if w[split..].iter().all(|&l| l < 0) {
            Self::principal(w[..split].to_vec())
        } else {
            ExactIdeal::Empty
        }
    }

    fn decisive_radius(&self, ideals: &[&ExactIdeal]) -> usize {
        ideals
            .iter()
            .filter_map(|x| Self::word(x))
            .map(|w| w.len())
            .max()
            .unwrap_or(0)
    }
}
