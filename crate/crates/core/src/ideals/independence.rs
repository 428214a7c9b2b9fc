//! Independence of a fragment: no member is a finite union of strictly smaller members.

use serde::{Deserialize, Serialize};

use super::lattice::{Lattice, EMPTY};
use crate::linalg::rank_int;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Independence {
    /// No member is covered by its proper submembers; decided on `P_{<=radius}`.
    Independent { radius: usize },
    /// `ideal` equals the union of `cover`, all strictly smaller.
    Witness { ideal: usize, cover: Vec<usize>, radius: usize },
    Inconclusive { radius: usize, reason: String },
}

impl Independence {
    pub fn is_independent(&self) -> bool {
        matches!(self, Independence::Independent { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RankVerdict {
    FullRank { rank: usize, rows: usize, radius: usize },
    Deficient { rank: usize, rows: usize, radius: usize },
    Inconclusive { radius: usize, needed: usize },
}

impl RankVerdict {
    pub fn full_rank(&self) -> Option<bool> {
        match self {
            RankVerdict::FullRank { .. } => Some(true),
            RankVerdict::Deficient { .. } => Some(false),
            RankVerdict::Inconclusive { .. } => None,
        }
    }
}

/// 0/1 membership table: one row per listed ideal, one column per element of `P_{<=radius}`.
fn indicator_rows(lat: &Lattice, indices: &[usize], radius: usize) -> Option<Vec<Vec<bool>>> {
    let calc = lat.calculus();
    let points = calc.model().enumerate_p(radius);
    indices
        .iter()
        .map(|&i| {
            let members = calc.members_within(lat.ideal(i), radius)?;
            let m = calc.model();
            let keys: Vec<_> = members.iter().map(|a| m.sort_key(a)).collect();
            Some(points.iter().map(|p| keys.binary_search(&m.sort_key(p)).is_ok()).collect())
        })
        .collect()
}

fn covers(target: &[bool], rows: &[&Vec<bool>]) -> bool {
    target
        .iter()
        .enumerate()
        .all(|(c, &t)| !t || rows.iter().any(|r| r[c]))
}

/// Searches the fragment for a member equal to the union of strictly smaller members.
///
/// The witness `cover` is greedily minimized. In the truncated tier a
/// covering seen on the working radius is not a certificate, and the verdict
/// is inconclusive.
pub fn independence_test(lat: &Lattice) -> Independence {
    let nonempty = lat.nonempty();
    let (radius, certified) = lat.decisive_radius(&nonempty);
    let Some(rows) = indicator_rows(lat, &nonempty, radius) else {
        return Independence::Inconclusive {
            radius,
            reason: "member lists do not reach the decisive radius".into(),
        };
    };
    let row = |i: usize| &rows[nonempty.iter().position(|&k| k == i).unwrap()];
    for &x in &nonempty {
        let smaller: Vec<usize> = nonempty.iter().copied().filter(|&y| y != x && lat.leq(y, x)).collect();
        let cand: Vec<&Vec<bool>> = smaller.iter().map(|&y| row(y)).collect();
        if !covers(row(x), &cand) {
            continue;
        }
        let mut cover = smaller;
        let mut k = 0;
        while k < cover.len() {
            let mut trial = cover.clone();
            trial.remove(k);
            let trial_rows: Vec<&Vec<bool>> = trial.iter().map(|&y| row(y)).collect();
            if covers(row(x), &trial_rows) {
                cover = trial;
            } else {
                k += 1;
            }
        }
        if !certified {
            return Independence::Inconclusive {
                radius,
                reason: format!(
                    "ideal {x} is covered by {cover:?} on the truncation only"
                ),
            };
        }
        return Independence::Witness { ideal: x, cover, radius };
    }
    if certified || lat.certified() {
        Independence::Independent { radius }
    } else {
        Independence::Inconclusive {
            radius,
            reason: "no covering on the truncation; equalities beyond it are undecided".into(),
        }
    }
}

/// Exact rank of the indicator matrix of the nonempty members on `P_{<=radius}`.
///
/// Full rank on any radius is conclusive; deficiency is only conclusive
/// once the radius reaches the decisive radius of the fragment.
pub fn independence_rank_oracle(lat: &Lattice, radius: usize) -> RankVerdict {
    let nonempty: Vec<usize> = lat.nonempty();
    debug_assert!(!nonempty.contains(&EMPTY));
    let (needed, certified) = lat.decisive_radius(&nonempty);
    let Some(rows) = indicator_rows(lat, &nonempty, radius) else {
        return RankVerdict::Inconclusive { radius, needed };
    };
    let ints: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&b| b as i64).collect()).collect();
    let rank = rank_int(&ints);
    let n = nonempty.len();
    if rank == n {
        RankVerdict::FullRank { rank, rows: n, radius }
    } else if certified && radius >= needed {
        RankVerdict::Deficient { rank, rows: n, radius }
    } else {
        RankVerdict::Inconclusive { radius, needed }
    }
}
