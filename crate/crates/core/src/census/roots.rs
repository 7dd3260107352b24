//! Univariate complex root finding with multiplicities.
//!
//! Roots come from Aberth-Ehrlich iteration. A multiple root shows up as a
//! tight cloud of approximations whose individual accuracy is only about
//! `eps^(1/m)`, but whose centroid is accurate to working precision. Clouds
//! are found with a coarse radius and accepted as one root of multiplicity
//! `m` only if the centroid annihilates `p, p', ..., p^(m-1)` to relative
//! precision; the root is then polished with Newton steps on `p^(m-1)`.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Relative radius inside which approximations are candidates for one
/// multiple root.
const CLOUD_RADIUS: f64 = 1e-3;
/// Relative size of the Taylor coefficients a multiple root must annihilate.
const MULTIPLICITY_EPS: f64 = 1e-8;
const MAX_ITER: usize = 2000;

fn horner(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::zero(), |acc, c| acc * z + c)
}

fn derivative(p: &[Complex64]) -> Vec<Complex64> {
    p.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect()
}

/// Drops leading coefficients that are negligible next to the largest one.
pub fn trim(p: &[Complex64], rel: f64) -> Vec<Complex64> {
    let scale = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut v = p.to_vec();
    while v.len() > 1 && v.last().unwrap().norm() <= rel * scale {
        v.pop();
    }
    v
}

/// All roots of `p` (coefficients in ascending order, nonzero leading term),
/// listed with repetition.
pub fn aberth(p: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = p.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = p[n];
    if lead.is_zero() {
        return Err(Error::RootFinding("leading coefficient is zero".into()));
    }
    let a: Vec<Complex64> = p.iter().map(|c| c / lead).collect();
    if n == 1 {
        return Ok(vec![-a[0]]);
    }
    let da = derivative(&a);
    // Fujiwara bound on root moduli.
    let bound = (0..n)
        .map(|i| {
            let k = (n - i) as f64;
            let c = if i == 0 { a[0].norm() / 2.0 } else { a[i].norm() };
            c.powf(1.0 / k)
        })
        .fold(0.0, f64::max)
        * 2.0;
    let radius = if bound > 0.0 { bound } else { 1.0 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut done = vec![false; n];
    for _ in 0..MAX_ITER {
        let mut all_done = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let pk = horner(&a, z[k]);
            if pk.is_zero() {
                done[k] = true;
                continue;
            }
            let dk = horner(&da, z[k]);
            let sum: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d.is_zero() {
                        Complex64::new(1e300, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let denom = dk - pk * sum;
            let w = if denom.is_zero() || !denom.is_finite() {
                Complex64::new(1e-8 * (1.0 + z[k].norm()), 0.0)
            } else {
                pk / denom
            };
            z[k] -= w;
            if w.norm() <= 4.0 * f64::EPSILON * (1.0 + z[k].norm()) {
                done[k] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    if z.iter().any(|v| !v.is_finite()) {
        return Err(Error::RootFinding("Aberth iteration diverged".into()));
    }
    // Clouds around multiple roots stall well above machine precision; the
    // clustering step below handles them, so no convergence error here.
    Ok(z)
}

/// Taylor coefficients `p^(j)(c) / j!` and their natural magnitudes
/// `sum_i |a_i| C(i, j) |c|^(i-j)`.
fn taylor_at(p: &[Complex64], c: Complex64) -> Vec<(Complex64, f64)> {
    let n = p.len();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut val = Complex64::zero();
        let mut mag = 0.0;
        for (i, a) in p.iter().enumerate().skip(j) {
            let b = binom_coeff(i, j);
            val += a * b * c.powu((i - j) as u32);
            mag += a.norm() * b * c.norm().powi((i - j) as i32);
        }
        out.push((val, mag));
    }
    out
}

fn binom_coeff(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn is_multiple_root(p: &[Complex64], c: Complex64, m: usize) -> bool {
    let t = taylor_at(p, c);
    let scale = t.iter().map(|(_, mag)| *mag).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    t.iter().take(m).all(|(v, mag)| v.norm() <= MULTIPLICITY_EPS * mag.max(1e-3 * scale))
}

fn polish(p: &[Complex64], mut c: Complex64, m: usize) -> Complex64 {
    let mut q = p.to_vec();
    for _ in 1..m {
        q = derivative(&q);
    }
    let dq = derivative(&q);
    let mut best = (horner(&q, c).norm(), c);
    for _ in 0..8 {
        let d = horner(&dq, c);
        if d.is_zero() {
            break;
        }
        c -= horner(&q, c) / d;
        let r = horner(&q, c).norm();
        if r.is_nan() || r >= best.0 {
            break;
        }
        best = (r, c);
    }
    best.1
}

/// Distinct roots of `p` with multiplicities summing to `deg p`.
pub fn roots_with_multiplicity(p: &[Complex64]) -> Result<Vec<(Complex64, u32)>> {
    let approx = aberth(p)?;
    let n = approx.len();
    // Union-find over the coarse proximity graph.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = 1.0f64.max(approx[i].norm()).max(approx[j].norm());
            if (approx[i] - approx[j]).norm() <= CLOUD_RADIUS * scale {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if group_of[r] == usize::MAX {
            group_of[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[group_of[r]].push(i);
    }
    let mut out = Vec::with_capacity(groups.len());
    for g in groups {
        let m = g.len();
        let centroid = g.iter().map(|&i| approx[i]).sum::<Complex64>() / m as f64;
        // The centroid is only as good as the stalled cloud; Newton on
        // p^(m-1), for which the candidate is a simple root, sharpens it
        // before the multiplicity test.
        let candidate = polish(p, centroid, m);
        if m == 1 || is_multiple_root(p, candidate, m) {
            out.push((candidate, m as u32));
        } else {
            out.extend(g.iter().map(|&i| (polish(p, approx[i], 1), 1)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Expands prod (z - r_i).
    fn from_roots(roots: &[Complex64]) -> Vec<Complex64> {
        roots.iter().fold(vec![c(1.0, 0.0)], |acc, r| {
            let mut next = vec![Complex64::zero(); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            next
        })
    }

    #[test]
    fn simple_roots() {
        let roots = [c(1.0, 0.0), c(-2.0, 0.5), c(0.0, 3.0)];
        let mut got = roots_with_multiplicity(&from_roots(&roots)).unwrap();
        got.sort_by(|a, b| a.0.re.partial_cmp(&b.0.re).unwrap());
        assert_eq!(got.len(), 3);
        assert!((got[0].0 - roots[1]).norm() < 1e-13);
        assert!(got.iter().all(|r| r.1 == 1));
    }

    #[test]
    fn triple_root_is_recovered_accurately() {
        let r = c(-0.5, 0.8660254037844386);
        let p = from_roots(&[r, r, r, c(2.0, 0.0)]);
        let got = roots_with_multiplicity(&p).unwrap();
        let triple = got.iter().find(|g| g.1 == 3).expect("triple root");
        assert!((triple.0 - r).norm() < 1e-13, "{:?}", triple);
        assert_eq!(got.iter().map(|g| g.1).sum::<u32>(), 4);
    }

    #[test]
    fn z_cubed_plus_one() {
        let got = roots_with_multiplicity(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(got.len(), 3);
        for (z, m) in got {
            assert_eq!(m, 1);
            assert!((z.powu(3) + 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn close_but_distinct_roots_stay_separate() {
        // Inside the coarse cloud radius but resolvable by the Taylor test.
        let p = from_roots(&[c(1.0, 0.0), c(1.0 + 8e-4, 0.0)]);
        let got = roots_with_multiplicity(&p).unwrap();
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn trim_drops_tiny_leading_terms() {
        assert_eq!(trim(&[c(1.0, 0.0), c(2.0, 0.0), c(1e-20, 0.0)], 1e-14).len(), 2);
    }
}
