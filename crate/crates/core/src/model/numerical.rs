use num_integer::Integer;

use super::{Elem, ExactIdeal, ExactIdeals, Model, ModelError, ModelSpec};

/// Numerical semigroup `<g_1, ..., g_m>` inside `Z`.
///
/// Membership below the conductor is tabulated once by dynamic programming;
/// everything at or above the conductor lies in `P`.
#[derive(Debug, Clone)]
pub struct Numerical {
    gens: Vec<i64>,
    generators: Vec<Elem>,
    /// `member[n]` for `0 <= n < conductor`.
    member: Vec<bool>,
    conductor: i64,
}

impl Numerical {
    pub fn new(gens: &[i64]) -> Result<Self, ModelError> {
        let mut gens = gens.to_vec();
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() || gens[0] <= 0 {
            return Err(ModelError::InvalidSpec(
                "numerical semigroup generators must be positive".into(),
            ));
        }
        if gens.iter().fold(0i64, |g, x| g.gcd(x)) != 1 {
            return Err(ModelError::InvalidSpec(
                "numerical semigroup generators must be coprime".into(),
            ));
        }
        let smallest = gens[0] as usize;
        // grow the table until `smallest` consecutive members appear; from there
        // on every integer is a member
        let mut table = vec![true];
        let mut run = 1usize;
        let mut n = 0usize;
        while run < smallest {
            n += 1;
            let hit = gens
                .iter()
                .any(|&g| (g as usize) <= n && table[n - g as usize]);
            table.push(hit);
            run = if hit { run + 1 } else { 0 };
        }
        let conductor = (n + 1 - smallest) as i64;
        table.truncate(conductor as usize);
        let generators = gens.iter().map(|&g| Elem::scalar(g)).collect();
        Ok(Numerical {
            gens,
            generators,
            member: table,
            conductor,
        })
    }

    /// Smallest `c` with `[c, inf)` contained in `P`.
    pub fn conductor(&self) -> i64 {
        self.conductor
    }

    /// Largest integer not in `P`, `-1` for `N` itself.
    pub fn frobenius(&self) -> i64 {
        self.conductor - 1
    }

    fn contains_int(&self, n: i64) -> bool {
        if n < 0 {
            false
        } else if n >= self.conductor {
            true
        } else {
            self.member[n as usize]
        }
    }

    fn value(a: &Elem) -> i64 {
        a.coords()[0]
    }

    fn unpack(x: &ExactIdeal) -> Option<(&[i64], i64)> {
        match x {
            ExactIdeal::Numerical { below, tail } => Some((below, *tail)),
            ExactIdeal::Empty => None,
            other => panic!("foreign ideal form for numerical semigroup: {other:?}"),
        }
    }

    fn ideal_contains(below: &[i64], tail: i64, n: i64) -> bool {
        n >= tail || below.binary_search(&n).is_ok()
    }

    /// Canonical form of the set `{n in P : pred(n)}`, given that every
    /// `n >= threshold` satisfies `pred`.
    fn canonical(&self, threshold: i64, pred: impl Fn(i64) -> bool) -> ExactIdeal {
        let threshold = threshold.max(self.conductor).max(0);
        let mut below: Vec<i64> = (0..threshold)
            .filter(|&n| self.contains_int(n) && pred(n))
            .collect();
        let mut tail = threshold;
        while below.last() == Some(&(tail - 1)) {
            below.pop();
            tail -= 1;
        }
        ExactIdeal::Numerical { below, tail }
    }
}

impl Model for Numerical {
    fn name(&self) -> String {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        format!("<{}>", parts.join(","))
    }

    fn spec(&self) -> ModelSpec {
        ModelSpec::Numerical {
            generators: self.gens.clone(),
        }
    }

    fn unit(&self) -> Elem {
        Elem::scalar(0)
    }

    fn generators(&self) -> &[Elem] {
        &self.generators
    }

    fn validate(&self, a: &Elem) -> Result<(), ModelError> {
        if a.coords().len() == 1 {
            Ok(())
        } else {
            Err(ModelError::Mismatch {
                model: self.name(),
                elem: a.clone(),
            })
        }
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Elem::scalar(Self::value(a) + Self::value(b))
    }

    fn inv(&self, a: &Elem) -> Elem {
        Elem::scalar(-Self::value(a))
    }

    fn in_p(&self, a: &Elem) -> bool {
        self.contains_int(Self::value(a))
    }

    fn length(&self, a: &Elem) -> usize {
        Self::value(a).unsigned_abs() as usize
    }

    fn enumerate_p(&self, max_len: usize) -> Vec<Elem> {
        (0..=max_len as i64)
            .filter(|&n| self.contains_int(n))
            .map(Elem::scalar)
            .collect()
    }

    fn format(&self, a: &Elem) -> String {
        Self::value(a).to_string()
    }

    fn parse(&self, input: &str) -> Result<Elem, ModelError> {
        input
            .trim()
            .parse::<i64>()
            .map(Elem::scalar)
            .map_err(|e| ModelError::Parse {
                input: input.to_string(),
                reason: e.to_string(),
            })
    }

    fn is_abelian(&self) -> bool {
        true
    }

    fn exact(&self) -> Option<&dyn ExactIdeals> {
        Some(self)
    }

    fn least_element_bound(&self, total_q_len: usize) -> Option<usize> {
        Some(total_q_len + self.conductor as usize)
    }
}

impl ExactIdeals for Numerical {
    fn whole(&self) -> ExactIdeal {
        self.canonical(self.conductor, |_| true)
    }

    fn left_mul(&self, p: &Elem, x: &ExactIdeal) -> ExactIdeal {
        let Some((below, tail)) = Self::unpack(x) else {
            return ExactIdeal::Empty;
        };
        let p = Self::value(p);
        self.canonical(tail + p, |n| {
            n - p >= 0 && Self::ideal_contains(below, tail, n - p)
        })
    }

    fn preimage(&self, p: &Elem, x: &ExactIdeal) -> ExactIdeal {
        let Some((below, tail)) = Self::unpack(x) else {
            return ExactIdeal::Empty;
        };
        let p = Self::value(p);
        self.canonical(tail - p, |y| Self::ideal_contains(below, tail, p + y))
    }

    fn intersect(&self, x: &ExactIdeal, y: &ExactIdeal) -> ExactIdeal {
        match (Self::unpack(x), Self::unpack(y)) {
            (Some((b1, t1)), Some((b2, t2))) => self.canonical(t1.max(t2), |n| {
                Self::ideal_contains(b1, t1, n) && Self::ideal_contains(b2, t2, n)
            }),
            _ => ExactIdeal::Empty,
        }
    }

    fn contains(&self, x: &ExactIdeal, a: &Elem) -> bool {
        match Self::unpack(x) {
            None => false,
            Some((below, tail)) => {
                let n = Self::value(a);
                self.contains_int(n) && Self::ideal_contains(below, tail, n)
            }
        }
    }

    fn translate_meet(&self, g: &Elem) -> ExactIdeal {
        let g = Self::value(g);
        self.canonical(g + self.conductor, |s| self.contains_int(s - g))
    }

    fn decisive_radius(&self, ideals: &[&ExactIdeal]) -> usize {
        ideals
            .iter()
            .filter_map(|x| Self::unpack(x))
            .map(|(_, t)| t.max(0) as usize)
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Membership by exhaustive search over nonnegative combinations.
    fn brute_member(gens: &[i64], n: i64) -> bool {
        if n == 0 {
            return true;
        }
        gens.iter().any(|&g| n >= g && brute_member(gens, n - g))
    }

    #[test]
    fn membership_matches_exhaustion() {
        for gens in [vec![2, 3], vec![3, 5], vec![4, 6, 9], vec![1], vec![5, 7, 11]] {
            let m = Numerical::new(&gens).unwrap();
            for n in -3..60 {
                assert_eq!(m.in_p(&Elem::scalar(n)), n >= 0 && brute_member(&gens, n), "{gens:?} {n}");
            }
        }
    }

    #[test]
    fn frobenius_numbers() {
        // two coprime generators: ab - a - b
        assert_eq!(Numerical::new(&[2, 3]).unwrap().frobenius(), 1);
        assert_eq!(Numerical::new(&[3, 5]).unwrap().frobenius(), 7);
        assert_eq!(Numerical::new(&[1]).unwrap().frobenius(), -1);
        assert_eq!(Numerical::new(&[6, 9, 20]).unwrap().frobenius(), 43);
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(Numerical::new(&[2, 4]).is_err());
        assert!(Numerical::new(&[0, 3]).is_err());
        assert!(Numerical::new(&[]).is_err());
    }

    #[test]
    fn examples() {
        let m = Numerical::new(&[2, 3]).unwrap();
        assert!(!m.in_p(&Elem::scalar(1)));
        assert!(m.in_p(&Elem::scalar(4)));
        assert_eq!(
            m.enumerate_p(5),
            [0, 2, 3, 4, 5].map(Elem::scalar).to_vec()
        );
        assert_eq!(m.divide(&Elem::scalar(2), &Elem::scalar(3)).unwrap(), None);
        // 2 + (3 + P) = {5, 7, 8, 9, ...}
        let three = m.left_mul(&Elem::scalar(3), &m.whole());
        assert_eq!(
            m.left_mul(&Elem::scalar(2), &three),
            ExactIdeal::Numerical {
                below: vec![5],
                tail: 7
            }
        );
    }
}
