//! Integer side: the intersection count, the Hirzebruch-type inequality, the
//! degree window for free arrangements, and enumeration of weak
//! combinatorics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(d, k; n2, n3, t5)`: numbers of lines and smooth cubics, nodes, ordinary
/// triple points and `A5` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeakCombinatorics {
    pub k: u32,
    pub d: u32,
    pub n2: u64,
    pub n3: u64,
    pub t5: u64,
}

impl WeakCombinatorics {
    pub fn new(k: u32, d: u32, n2: u64, n3: u64, t5: u64) -> Self {
        WeakCombinatorics { k, d, n2, n3, t5 }
    }

    /// Degree `3k + d` of the arrangement.
    pub fn m(&self) -> u32 {
        3 * self.k + self.d
    }

    /// Intersections absorbed by the singular points: `n2 + 3 n3 + 3 t5`.
    pub fn absorbed_intersections(&self) -> u64 {
        self.n2 + 3 * self.n3 + 3 * self.t5
    }
}

fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Number of intersection points counted with multiplicity among `k` cubics
/// and `d` lines: `9 C(k,2) + 3kd + C(d,2)`.
pub fn combinatorial_count(k: u32, d: u32) -> u64 {
    let (k, d) = (k as u64, d as u64);
    9 * choose2(k) + 3 * k * d + choose2(d)
}

pub fn count_satisfied(wc: &WeakCombinatorics) -> bool {
    combinatorial_count(wc.k, wc.d) == wc.absorbed_intersections()
}

/// Both sides of `27k + n2 + 3/4 n3 >= d + 5 t5`, multiplied by 4.
pub fn hirzebruch_sides(wc: &WeakCombinatorics) -> (u64, u64) {
    let lhs = 108 * wc.k as u64 + 4 * wc.n2 + 3 * wc.n3;
    let rhs = 4 * wc.d as u64 + 20 * wc.t5;
    (lhs, rhs)
}

/// Whether the inequality's hypotheses hold: `k >= 1`, `d >= 1`, `3k + d >= 6`.
pub fn hirzebruch_applies(wc: &WeakCombinatorics) -> bool {
    wc.k >= 1 && wc.d >= 1 && wc.m() >= 6
}

/// Exact check of `27k + n2 + 3/4 n3 >= d + 5 t5`.
pub fn hirzebruch_check(wc: &WeakCombinatorics) -> Result<bool> {
    if !hirzebruch_applies(wc) {
        return Err(Error::HypothesisViolated(format!(
            "Hirzebruch-type inequality needs k >= 1, d >= 1, 3k + d >= 6 (k = {}, d = {})",
            wc.k, wc.d
        )));
    }
    let (lhs, rhs) = hirzebruch_sides(wc);
    Ok(lhs >= rhs)
}

/// Admissible values of `mdr(f)` for a free arrangement of degree `m`:
/// `ceil(2m/3 - 2) <= d1 <= floor((m-1)/2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeWindow {
    pub m: u32,
    pub lower: i64,
    pub upper: i64,
    pub admissible: Vec<u32>,
}

impl DegreeWindow {
    pub fn is_empty(&self) -> bool {
        self.admissible.is_empty()
    }

    pub fn contains(&self, d1: u32) -> bool {
        self.admissible.contains(&d1)
    }
}

pub fn degree_window(m: u32) -> Result<DegreeWindow> {
    if m < 3 {
        return Err(Error::HypothesisViolated(format!("degree window needs m >= 3, got {m}")));
    }
    let m_i = m as i64;
    // ceil((2m - 6) / 3); the numerator is nonnegative for m >= 3.
    let lower = (2 * m_i - 6 + 2) / 3;
    let upper = (m_i - 1) / 2;
    let admissible = (lower.max(0)..=upper).map(|v| v as u32).collect();
    Ok(DegreeWindow { m, lower, upper, admissible })
}

/// `(m-1)^2 - d1 (m - d1 - 1)`: the total Tjurina number a free curve of
/// degree `m` with exponent `d1` must have.
pub fn free_tjurina_target(m: u32, d1: u32) -> i64 {
    let (m, d1) = (m as i64, d1 as i64);
    (m - 1) * (m - 1) - d1 * (m - d1 - 1)
}

/// Whether an ordinary triple point is possible at all: it needs three
/// distinct components through one point.
pub fn triple_points_possible(k: u32, d: u32) -> bool {
    k + d >= 3
}

/// All `(n2, n3, t5) >= 0` with `n2 + 3 n3 + 3 t5 = combinatorial_count(k, d)`
/// (and `n3 = 0` when there are fewer than three components), sorted
/// lexicographically.
pub fn enumerate_admissible(k: u32, d: u32) -> Vec<WeakCombinatorics> {
    let total = combinatorial_count(k, d);
    let mut out = Vec::new();
    let mut n2 = total % 3;
    while n2 <= total {
        let triples = (total - n2) / 3;
        let max_n3 = if triple_points_possible(k, d) { triples } else { 0 };
        for n3 in 0..=max_n3 {
            out.push(WeakCombinatorics::new(k, d, n2, n3, triples - n3));
        }
        n2 += 3;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeCandidate {
    pub wc: WeakCombinatorics,
    pub d1: u32,
    /// `None` when the inequality's hypotheses do not hold.
    pub hirzebruch_pass: Option<bool>,
}

/// Admissible weak combinatorics whose combinatorial Tjurina number equals
/// the free target for some `d1` in the degree window.
pub fn enumerate_free_candidates(k: u32, d: u32) -> Vec<FreeCandidate> {
    let m = 3 * k + d;
    let Ok(window) = degree_window(m) else { return Vec::new() };
    let admissible = enumerate_admissible(k, d);
    let mut out = Vec::new();
    for &d1 in &window.admissible {
        let target = free_tjurina_target(m, d1);
        for wc in &admissible {
            if (wc.n2 + 4 * wc.n3 + 5 * wc.t5) as i64 == target {
                out.push(FreeCandidate { wc: *wc, d1, hirzebruch_pass: hirzebruch_check(wc).ok() });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triples(v: &[WeakCombinatorics]) -> Vec<(u64, u64, u64)> {
        v.iter().map(|w| (w.n2, w.n3, w.t5)).collect()
    }

    #[test]
    fn counts() {
        assert_eq!(combinatorial_count(1, 1), 3);
        assert_eq!(combinatorial_count(2, 3), 30);
        assert_eq!(combinatorial_count(1, 6), 33);
        assert_eq!(combinatorial_count(0, 0), 0);
    }

    #[test]
    fn count_examples() {
        assert!(count_satisfied(&WeakCombinatorics::new(1, 3, 0, 1, 3)));
        assert!(count_satisfied(&WeakCombinatorics::new(1, 9, 27, 3, 9)));
        assert!(!count_satisfied(&WeakCombinatorics::new(1, 1, 1, 1, 1)));
    }

    #[test]
    fn hirzebruch_examples() {
        let fermat = WeakCombinatorics::new(1, 9, 27, 3, 9);
        assert_eq!(hirzebruch_check(&fermat), Ok(true));
        assert_eq!(hirzebruch_sides(&fermat), (225, 216));
        assert_eq!(hirzebruch_check(&WeakCombinatorics::new(1, 6, 6, 3, 6)), Ok(false));
        assert_eq!(hirzebruch_check(&WeakCombinatorics::new(1, 6, 9, 1, 7)), Ok(false));
        assert!(matches!(
            hirzebruch_check(&WeakCombinatorics::new(1, 2, 7, 0, 0)),
            Err(Error::HypothesisViolated(_))
        ));
        assert!(hirzebruch_check(&WeakCombinatorics::new(2, 0, 18, 0, 0)).is_err());
    }

    #[test]
    fn windows() {
        let w = |m| degree_window(m).unwrap().admissible;
        assert!(w(8).is_empty());
        assert_eq!(degree_window(8).unwrap().lower, 4);
        assert_eq!(w(9), vec![4]);
        assert!(w(12).is_empty());
        assert_eq!(w(6), vec![2]);
        assert_eq!(w(7), vec![3]);
        for m in 4..=9 {
            assert_eq!(!w(m).is_empty(), [4, 5, 6, 7, 9].contains(&m), "m = {m}");
        }
        assert!(degree_window(2).is_err());
    }

    #[test]
    fn low_degree_enumerations() {
        assert_eq!(triples(&enumerate_admissible(1, 1)), vec![(0, 0, 1), (3, 0, 0)]);
        assert_eq!(
            triples(&enumerate_admissible(1, 2)),
            vec![(1, 0, 2), (1, 1, 1), (1, 2, 0), (4, 0, 1), (4, 1, 0), (7, 0, 0)]
        );
        assert!(enumerate_free_candidates(1, 1).is_empty());
        assert!(enumerate_free_candidates(1, 2).is_empty());
    }

    #[test]
    fn degree_nine_candidates() {
        let c = enumerate_free_candidates(2, 3);
        assert_eq!(triples(&c.iter().map(|c| c.wc).collect::<Vec<_>>()), vec![(0, 2, 8), (3, 0, 9)]);
        assert!(c.iter().all(|c| c.d1 == 4));

        let c = enumerate_free_candidates(1, 6);
        let got: Vec<_> = c.iter().map(|c| ((c.wc.n2, c.wc.n3, c.wc.t5), c.hirzebruch_pass)).collect();
        assert_eq!(
            got,
            vec![
                ((0, 7, 4), Some(true)),
                ((3, 5, 5), Some(true)),
                ((6, 3, 6), Some(false)),
                ((9, 1, 7), Some(false)),
            ]
        );
    }

    /// Independent brute force over the whole box `0..=count` in each slot.
    fn brute_admissible(k: u32, d: u32) -> Vec<WeakCombinatorics> {
        let total = combinatorial_count(k, d);
        let mut out = Vec::new();
        for n2 in 0..=total {
            for n3 in 0..=total {
                for t5 in 0..=total {
                    let wc = WeakCombinatorics::new(k, d, n2, n3, t5);
                    let triple_ok = n3 == 0 || k + d >= 3;
                    if count_satisfied(&wc) && triple_ok {
                        out.push(wc);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn exhaustive_against_brute_force() {
        for (k, d) in [(1, 1), (1, 2), (1, 3), (1, 4), (2, 0), (2, 1), (2, 3), (1, 6)] {
            assert_eq!(enumerate_admissible(k, d), brute_admissible(k, d), "(k, d) = ({k}, {d})");
        }
    }

    proptest! {
        #[test]
        fn admissible_tuples_satisfy_count(k in 1u32..4, d in 1u32..10) {
            let adm = enumerate_admissible(k, d);
            prop_assert!(adm.iter().all(count_satisfied));
            let free = enumerate_free_candidates(k, d);
            prop_assert!(free.iter().all(|c| adm.contains(&c.wc)));
        }

        #[test]
        fn hirzebruch_monotone_in_nodes(k in 1u32..4, d in 3u32..12, n2 in 0u64..60, n3 in 0u64..20, t5 in 0u64..20, extra in 1u64..10) {
            let a = WeakCombinatorics::new(k, d, n2, n3, t5);
            let b = WeakCombinatorics::new(k, d, n2 + extra, n3, t5);
            if hirzebruch_check(&a).unwrap() {
                prop_assert!(hirzebruch_check(&b).unwrap());
            }
        }
    }
}
