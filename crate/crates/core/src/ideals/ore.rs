//! Search for a pair `p, q` with `pP ∩ qP = ∅`.

use serde::{Deserialize, Serialize};

use super::{IdealCalculus, IdealError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OreVerdict {
    /// `pP ∩ qP ≠ ∅` for all `p, q` of length at most `max_len`.
    OreUpTo { max_len: usize, pairs: usize },
    Counterexample { p: String, q: String },
    /// The truncation could neither exhibit a common element nor certify emptiness.
    Inconclusive { p: String, q: String },
}

impl OreVerdict {
    pub fn is_ore(&self) -> bool {
        matches!(self, OreVerdict::OreUpTo { .. })
    }
}

/// Checks every unordered pair from `P_{<=max_len}` in enumeration order.
pub fn ore_test(calc: &IdealCalculus, max_len: usize) -> Result<OreVerdict, IdealError> {
    let m = calc.model();
    let elems = m.enumerate_p(max_len);
    let principals = elems
        .iter()
        .map(|p| calc.principal(p))
        .collect::<Result<Vec<_>, _>>()?;
    let mut pairs = 0;
    for i in 0..elems.len() {
        for j in i..elems.len() {
            pairs += 1;
            let meet = calc.intersect(&principals[i], &principals[j])?;
            match calc.is_empty(&meet) {
                Some(false) => {}
                Some(true) => {
                    return Ok(OreVerdict::Counterexample {
                        p: m.format(&elems[i]),
                        q: m.format(&elems[j]),
                    })
                }
                None => {
                    return Ok(OreVerdict::Inconclusive {
                        p: m.format(&elems[i]),
                        q: m.format(&elems[j]),
                    })
                }
            }
        }
    }
    Ok(OreVerdict::OreUpTo { max_len, pairs })
}
