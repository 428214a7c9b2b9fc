use super::{Elem, ExactIdeal, ExactIdeals, Model, ModelError, ModelSpec};

/// `N^k` inside `Z^k`, with the l1 length.
///
/// Constructible ideals are the corners `a + N^k`.
#[derive(Debug, Clone)]
pub struct FreeAbelian {
    rank: usize,
    generators: Vec<Elem>,
}

impl FreeAbelian {
    pub fn new(rank: usize) -> Result<Self, ModelError> {
        if rank == 0 {
            return Err(ModelError::InvalidSpec("free_abelian rank must be positive".into()));
        }
        let generators = (0..rank)
            .map(|i| {
                let mut v = vec![0; rank];
                v[i] = 1;
                Elem::new(v)
            })
            .collect();
        Ok(FreeAbelian { rank, generators })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn corner(x: &ExactIdeal) -> Option<&[i64]> {
        match x {
            ExactIdeal::Corner { corner } => Some(corner),
            ExactIdeal::Empty => None,
            other => panic!("foreign ideal form for free_abelian: {other:?}"),
        }
    }
}

/// All vectors in `N^rank` with coordinate sum exactly `total`, lexicographic.
fn compositions(rank: usize, total: usize, prefix: &mut Vec<i64>, out: &mut Vec<Elem>) {
    if prefix.len() + 1 == rank {
        prefix.push(total as i64);
        out.push(Elem::new(prefix.clone()));
        prefix.pop();
        return;
    }
    for first in 0..=total {
        prefix.push(first as i64);
        compositions(rank, total - first, prefix, out);
        prefix.pop();
    }
}

impl Model for FreeAbelian {
    fn name(&self) -> String {
        format!("N^{}", self.rank)
    }

    fn spec(&self) -> ModelSpec {
        ModelSpec::FreeAbelian { rank: self.rank }
    }

    fn unit(&self) -> Elem {
        Elem::new(vec![0; self.rank])
    }

    fn generators(&self) -> &[Elem] {
        &self.generators
    }

    fn validate(&self, a: &Elem) -> Result<(), ModelError> {
        if a.coords().len() == self.rank {
            Ok(())
        } else {
            Err(ModelError::Mismatch {
                model: self.name(),
                elem: a.clone(),
            })
        }
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Elem::new(a.coords().iter().zip(b.coords()).map(|(x, y)| x + y).collect())
    }

    fn inv(&self, a: &Elem) -> Elem {
        Elem::new(a.coords().iter().map(|x| -x).collect())
    }

    fn in_p(&self, a: &Elem) -> bool {
        a.coords().iter().all(|&x| x >= 0)
    }

    fn length(&self, a: &Elem) -> usize {
        a.coords().iter().map(|x| x.unsigned_abs() as usize).sum()
    }

    fn enumerate_p(&self, max_len: usize) -> Vec<Elem> {
        let mut out = Vec::new();
        for total in 0..=max_len {
            let mut level = Vec::new();
            compositions(self.rank, total, &mut Vec::new(), &mut level);
            level.sort();
            out.extend(level);
        }
        out
    }

    fn format(&self, a: &Elem) -> String {
        let c = a.coords();
        if c.len() == 1 {
            c[0].to_string()
        } else {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(","))
        }
    }

    fn parse(&self, input: &str) -> Result<Elem, ModelError> {
        let trimmed = input.trim().trim_start_matches('(').trim_end_matches(')');
        let coords: Result<Vec<i64>, _> = trimmed.split(',').map(|s| s.trim().parse::<i64>()).collect();
        let elem = Elem::new(coords.map_err(|e| ModelError::Parse {
            input: input.to_string(),
            reason: e.to_string(),
        })?);
        self.validate(&elem)?;
        Ok(elem)
    }

    fn is_abelian(&self) -> bool {
        true
    }

    fn exact(&self) -> Option<&dyn ExactIdeals> {
        Some(self)
    }

    fn least_element_bound(&self, total_q_len: usize) -> Option<usize> {
        Some(total_q_len)
    }
}

impl ExactIdeals for FreeAbelian {
    fn whole(&self) -> ExactIdeal {
        ExactIdeal::Corner {
            corner: vec![0; self.rank],
        }
    }

    fn left_mul(&self, p: &Elem, x: &ExactIdeal) -> ExactIdeal {
        match Self::corner(x) {
            None => ExactIdeal::Empty,
            Some(a) => ExactIdeal::Corner {
                corner: a.iter().zip(p.coords()).map(|(a, p)| a + p).collect(),
            },
        }
    }

    fn preimage(&self, p: &Elem, x: &ExactIdeal) -> ExactIdeal {
        match Self::corner(x) {
            None => ExactIdeal::Empty,
            Some(a) => ExactIdeal::Corner {
                corner: a.iter().zip(p.coords()).map(|(a, p)| (a - p).max(0)).collect(),
            },
        }
    }

    fn intersect(&self, x: &ExactIdeal, y: &ExactIdeal) -> ExactIdeal {
        match (Self::corner(x), Self::corner(y)) {
            (Some(a), Some(b)) => ExactIdeal::Corner {
                corner: a.iter().zip(b).map(|(a, b)| *a.max(b)).collect(),
            },
            _ => ExactIdeal::Empty,
        }
    }

    fn contains(&self, x: &ExactIdeal, a: &Elem) -> bool {
        match Self::corner(x) {
            None => false,
            Some(c) => a.coords().iter().zip(c).all(|(v, c)| v >= c),
        }
    }

    fn translate_meet(&self, g: &Elem) -> ExactIdeal {
        ExactIdeal::Corner {
            corner: g.coords().iter().map(|x| (*x).max(0)).collect(),
        }
    }

    fn decisive_radius(&self, ideals: &[&ExactIdeal]) -> usize {
        // indicator vectors only depend on min(v, join of corners)
        let mut join = vec![0i64; self.rank];
        for x in ideals {
            if let Some(c) = Self::corner(x) {
                for (j, v) in join.iter_mut().zip(c) {
                    *j = (*j).max(*v);
                }
            }
        }
        join.iter().map(|x| *x as usize).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_examples() {
        let z2 = FreeAbelian::new(2).unwrap();
        let a = Elem::new(vec![1, 0]);
        let b = Elem::new(vec![0, 2]);
        assert_eq!(z2.mul(&a, &b), Elem::new(vec![1, 2]));
        assert_eq!(z2.inv(&Elem::new(vec![1, 2])), Elem::new(vec![-1, -2]));
        assert!(z2.in_p(&Elem::new(vec![1, 2])));
        assert!(!z2.in_p(&Elem::new(vec![-1, 0])));
        assert_eq!(
            z2.divide(&a, &Elem::new(vec![3, 2])).unwrap(),
            Some(Elem::new(vec![2, 2]))
        );
    }

    #[test]
    fn enumerate_rank_one() {
        let n = FreeAbelian::new(1).unwrap();
        assert_eq!(
            n.enumerate_p(2),
            vec![Elem::scalar(0), Elem::scalar(1), Elem::scalar(2)]
        );
        let z2 = FreeAbelian::new(2).unwrap();
        // (n+1)(n+2)/2 points of l1-length <= n
        assert_eq!(z2.enumerate_p(4).len(), 15);
    }

    #[test]
    fn corner_calculus() {
        let n = FreeAbelian::new(1).unwrap();
        let three = ExactIdeal::Corner { corner: vec![3] };
        assert_eq!(n.preimage(&Elem::scalar(2), &three), ExactIdeal::Corner { corner: vec![1] });
        assert_eq!(n.left_mul(&Elem::scalar(2), &n.whole()), ExactIdeal::Corner { corner: vec![2] });
        assert_eq!(n.translate_meet(&Elem::scalar(-4)), n.whole());
    }

    #[test]
    fn parse_round_trip() {
        let z2 = FreeAbelian::new(2).unwrap();
        let x = z2.parse("(3,-1)").unwrap();
        assert_eq!(z2.format(&x), "(3,-1)");
        assert!(z2.parse("1,2,3").is_err());
    }
}
