//! Intersection points of two plane curves over the complex numbers.

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::roots::{aberth, roots_with_multiplicity, trim};
use crate::error::{Error, Result};
use crate::poly::{cross, ComplexPoint, NumericPoly};

/// Number of random unitary changes of coordinates tried before giving up on
/// a generic projection.
pub const SHEAR_ATTEMPTS: u32 = 16;

/// Size of a resultant relative to the Hadamard bound of its Sylvester matrix
/// below which it counts as identically zero.
const SHARED_EPS: f64 = 1e-11;
/// Relative residual below which a candidate point counts as common.
const COMMON_EPS: f64 = 1e-6;
/// Chordal separation of the projected intersection points above which a
/// projection is accepted outright. Below it the projection centre may sit
/// near a common chord, where distinct points project almost onto each other
/// and rounding splits multiple roots into rings; further projections are
/// tried and the best separated one is kept.
const CHORD_SEPARATION: f64 = 5e-2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairIntersection {
    /// Distinct points with intersection multiplicities; they sum to the
    /// product of the degrees.
    pub points: Vec<(ComplexPoint, u32)>,
    /// Index of the random projection used (curve-curve pairs only).
    pub shear_attempt: Option<u32>,
}

impl PairIntersection {
    pub fn total_multiplicity(&self) -> u32 {
        self.points.iter().map(|(_, m)| m).sum()
    }
}

/// Intersects two curves given by numeric polynomials.
///
/// Line-line pairs use the cross product; a line against a curve is
/// parameterized and reduced to a univariate equation; two curves of degree
/// at least two are intersected through the resultant in the last variable
/// after a seeded random unitary change of coordinates. Points closer than
/// `tol` (projective distance) are merged with their multiplicities added.
pub fn pair_intersections(a: &NumericPoly, b: &NumericPoly, tol: f64, seed: u64) -> Result<PairIntersection> {
    let (a, b) = if a.degree() <= b.degree() { (a, b) } else { (b, a) };
    if a.degree() == 0 || a.is_zero(0.0) || b.is_zero(0.0) {
        return Err(Error::InvalidComponent("curves must have positive degree".into()));
    }
    let (points, shear_attempt) = match (a.degree(), b.degree()) {
        (1, 1) => (line_line(a, b)?, None),
        (1, _) => (line_curve(a, b)?, None),
        _ => {
            let (pts, attempt) = curve_curve(a, b, seed)?;
            (pts, Some(attempt))
        }
    };
    Ok(PairIntersection { points: merge_close(points, tol), shear_attempt })
}

fn unit(p: &NumericPoly) -> NumericPoly {
    p.scaled(Complex64::new(1.0 / p.coeff_norm(), 0.0))
}

fn line_vector(l: &NumericPoly) -> [Complex64; 3] {
    [l.coeffs()[0], l.coeffs()[1], l.coeffs()[2]]
}

fn line_line(a: &NumericPoly, b: &NumericPoly) -> Result<Vec<(ComplexPoint, u32)>> {
    let (la, lb) = (line_vector(&unit(a)), line_vector(&unit(b)));
    let p = ComplexPoint::new(cross(la, lb));
    if p.norm() < SHARED_EPS {
        return Err(Error::SharedComponent(0, 1));
    }
    Ok(vec![(p.normalized(), 1)])
}

fn hermitian_normalize(v: [Complex64; 3]) -> [Complex64; 3] {
    let n = ComplexPoint::new(v).norm();
    v.map(|c| c / n)
}

/// Two points spanning the line `l . p = 0`, orthonormal in the Hermitian
/// sense.
fn line_basis(l: [Complex64; 3]) -> ([Complex64; 3], [Complex64; 3]) {
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| l[i].norm().partial_cmp(&l[j].norm()).unwrap());
    let e = |i: usize| {
        let mut v = [Complex64::zero(); 3];
        v[i] = Complex64::new(1.0, 0.0);
        v
    };
    let p = hermitian_normalize(cross(l, e(order[0])));
    let q0 = cross(l, e(order[1]));
    let dot: Complex64 = p.iter().zip(&q0).map(|(a, b)| a.conj() * b).sum();
    let q = hermitian_normalize([q0[0] - dot * p[0], q0[1] - dot * p[1], q0[2] - dot * p[2]]);
    (p, q)
}

fn line_curve(line: &NumericPoly, curve: &NumericPoly) -> Result<Vec<(ComplexPoint, u32)>> {
    let curve = unit(curve);
    let (p0, q0) = line_basis(line_vector(&unit(line)));
    // Pick the parameterization whose point at infinity is farthest from the
    // curve, so the univariate equation keeps its full degree.
    let mut best: Option<(f64, [Complex64; 3], [Complex64; 3])> = None;
    for k in 0..8 {
        let th = std::f64::consts::PI * k as f64 / 8.0 + 0.1;
        let (c, s) = (th.cos(), th.sin());
        let p: [Complex64; 3] = std::array::from_fn(|i| p0[i] * c + q0[i] * s);
        let q: [Complex64; 3] = std::array::from_fn(|i| -p0[i] * s + q0[i] * c);
        let v = curve.eval(p).norm();
        if best.as_ref().is_none_or(|b| v > b.0) {
            best = Some((v, p, q));
        }
    }
    let (_, p, q) = best.expect("eight candidates");
    let h = curve.restrict_to_line(p, q);
    let scale = h.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let n = h.len() - 1;
    if scale < SHARED_EPS || h[n].norm() < SHARED_EPS * scale.max(1.0) {
        return Err(Error::SharedComponent(0, 1));
    }
    Ok(roots_with_multiplicity(&h)?
        .into_iter()
        .map(|(s, m)| (ComplexPoint::new(std::array::from_fn(|i| p[i] * s + q[i])).normalized(), m))
        .collect())
}

/// Random unitary matrix from Gram-Schmidt on uniform complex vectors.
pub fn random_unitary(rng: &mut impl Rng) -> [[Complex64; 3]; 3] {
    loop {
        let mut rows: Vec<[Complex64; 3]> = Vec::with_capacity(3);
        for _ in 0..3 {
            let mut v: [Complex64; 3] =
                std::array::from_fn(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            for r in &rows {
                let dot: Complex64 = r.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for i in 0..3 {
                    v[i] -= dot * r[i];
                }
            }
            rows.push(v);
        }
        if rows.iter().all(|r| ComplexPoint::new(*r).norm() > 1e-3) {
            return [
                hermitian_normalize(rows[0]),
                hermitian_normalize(rows[1]),
                hermitian_normalize(rows[2]),
            ];
        }
    }
}

fn det(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut acc = Complex64::new(1.0, 0.0);
    for c in 0..n {
        let piv = (c..n)
            .max_by(|&i, &j| m[i][c].norm().partial_cmp(&m[j][c].norm()).unwrap())
            .unwrap();
        if m[piv][c].is_zero() {
            return Complex64::zero();
        }
        if piv != c {
            m.swap(piv, c);
            acc = -acc;
        }
        acc *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            if f.is_zero() {
                continue;
            }
            let (top, bottom) = m.split_at_mut(r);
            for (dst, src) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                *dst -= f * src;
            }
        }
    }
    acc
}

/// Resultant of two univariate polynomials (ascending coefficients) via the
/// Sylvester determinant, with the Hadamard bound of the matrix.
fn sylvester_resultant(f: &[Complex64], g: &[Complex64]) -> (Complex64, f64) {
    let (a, b) = (f.len() - 1, g.len() - 1);
    let n = a + b;
    let mut m = vec![vec![Complex64::zero(); n]; n];
    for r in 0..b {
        for (i, c) in f.iter().rev().enumerate() {
            m[r][r + i] = *c;
        }
    }
    for r in 0..a {
        for (i, c) in g.iter().rev().enumerate() {
            m[b + r][r + i] = *c;
        }
    }
    let hadamard = m.iter().map(|row| row.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()).product();
    (det(m), hadamard)
}

type Points = Vec<(ComplexPoint, u32)>;

fn curve_curve(f: &NumericPoly, g: &NumericPoly, seed: u64) -> Result<(Vec<(ComplexPoint, u32)>, u32)> {
    let (f, g) = (unit(f), unit(g));
    let total = (f.degree() * g.degree()) as usize;
    // Best projection so far: (separation, points, attempt).
    let mut best: Option<(f64, Points, u32)> = None;
    // A vanishing resultant is only believed when two projections agree.
    let mut shared_votes = 0;
    for attempt in 0..SHEAR_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(attempt as u64));
        let u = random_unitary(&mut rng);
        match project_and_solve(&f.compose_linear(&u), &g.compose_linear(&u), total) {
            Ok((points, separation)) => {
                let back: Vec<_> = points.into_iter().map(|(p, m)| (p.apply(&u).normalized(), m)).collect();
                if separation >= CHORD_SEPARATION {
                    return Ok((back, attempt));
                }
                if best.as_ref().is_none_or(|b| separation > b.0) {
                    best = Some((separation, back, attempt));
                }
            }
            Err(e @ Error::SharedComponent(..)) => {
                shared_votes += 1;
                if shared_votes == 2 {
                    return Err(e);
                }
            }
            Err(_) => {}
        }
    }
    best.map(|(_, pts, attempt)| (pts, attempt)).ok_or(Error::ProjectionDegenerate { attempts: SHEAR_ATTEMPTS })
}

/// Chordal distance between `(a : 1)` and `(b : 1)` on the projective line.
fn chordal(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / ((1.0 + a.norm_sqr()) * (1.0 + b.norm_sqr())).sqrt()
}

/// Intersection points in the current coordinates, with the smallest chordal
/// separation between the distinct projected points.
fn project_and_solve(f: &NumericPoly, g: &NumericPoly, total: usize) -> Result<(Vec<(ComplexPoint, u32)>, f64)> {
    // The projection centre (0:0:1) must lie on neither curve.
    let (fz, gz) = (f.eval(e3()), g.eval(e3()));
    if fz.norm() < 1e-3 || gz.norm() < 1e-3 {
        return Err(Error::ProjectionDegenerate { attempts: 1 });
    }
    // R(x) = Res_z(f(x, 1, z), g(x, 1, z)) has degree at most a*b; recover it
    // from samples on the unit circle with an inverse DFT.
    let n = total + 1;
    let mut relative_size: f64 = 0.0;
    let samples: Vec<Complex64> = (0..n)
        .map(|j| {
            let x = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / n as f64);
            let one = Complex64::new(1.0, 0.0);
            let (r, bound) = sylvester_resultant(&f.in_last_variable(x, one), &g.in_last_variable(x, one));
            relative_size = relative_size.max(r.norm() / bound.max(f64::MIN_POSITIVE));
            r
        })
        .collect();
    if relative_size < SHARED_EPS {
        return Err(Error::SharedComponent(0, 1));
    }
    let coeffs: Vec<Complex64> = (0..n)
        .map(|k| {
            samples
                .iter()
                .enumerate()
                .map(|(j, s)| s * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64))
                .sum::<Complex64>()
                / n as f64
        })
        .collect();
    let trimmed = trim(&coeffs, 1e-9);
    if trimmed.len() != n {
        // A common point on the line y = 0 escapes to infinity.
        return Err(Error::ProjectionDegenerate { attempts: 1 });
    }
    let mut out = Vec::new();
    let one = Complex64::new(1.0, 0.0);
    let roots = roots_with_multiplicity(&coeffs)?;
    let mut separation = f64::INFINITY;
    for (i, (xi, _)) in roots.iter().enumerate() {
        for (xj, _) in &roots[i + 1..] {
            separation = separation.min(chordal(*xi, *xj));
        }
    }
    for (x, mult) in roots {
        let fzs = aberth(&trim(&f.in_last_variable(x, one), 1e-12))?;
        let gpoly = g.in_last_variable(x, one);
        let gscale = |z: Complex64| -> f64 {
            gpoly.iter().enumerate().map(|(i, c)| c.norm() * z.norm().powi(i as i32)).sum::<f64>().max(1e-300)
        };
        let mut scored: Vec<(f64, Complex64)> = fzs
            .iter()
            .map(|&z| {
                let v: Complex64 = gpoly.iter().rev().fold(Complex64::zero(), |acc, c| acc * z + c);
                (v.norm() / gscale(z), z)
            })
            .collect();
        scored.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
        let best = scored[0];
        if best.0 > COMMON_EPS.sqrt() {
            return Err(Error::ProjectionDegenerate { attempts: 1 });
        }
        // Two distinct common points over the same x: projection not generic.
        if scored.iter().skip(1).any(|(r, z)| *r < COMMON_EPS && (z - best.1).norm() > 1e-4 * (1.0 + z.norm())) {
            return Err(Error::ProjectionDegenerate { attempts: 1 });
        }
        let mut pt = [x, one, best.1];
        if mult == 1 {
            pt = newton_refine(f, g, pt);
        }
        out.push((ComplexPoint::new(pt), mult));
    }
    Ok((out, separation))
}

fn e3() -> [Complex64; 3] {
    [Complex64::zero(), Complex64::zero(), Complex64::new(1.0, 0.0)]
}

/// Newton iteration on `f = g = 0` in the affine chart `y = 1`.
fn newton_refine(f: &NumericPoly, g: &NumericPoly, mut p: [Complex64; 3]) -> [Complex64; 3] {
    use crate::poly::Var;
    let (fx, fz, gx, gz) = (f.partial(Var::X), f.partial(Var::Z), g.partial(Var::X), g.partial(Var::Z));
    let residual = |p: [Complex64; 3]| f.eval(p).norm() + g.eval(p).norm();
    let mut best = residual(p);
    for _ in 0..6 {
        let (a, b, c, d) = (fx.eval(p), fz.eval(p), gx.eval(p), gz.eval(p));
        let det = a * d - b * c;
        if det.is_zero() {
            break;
        }
        let (fv, gv) = (f.eval(p), g.eval(p));
        let dx = (d * fv - b * gv) / det;
        let dz = (-c * fv + a * gv) / det;
        let cand = [p[0] - dx, p[1], p[2] - dz];
        let r = residual(cand);
        if r.is_nan() || r >= best {
            break;
        }
        best = r;
        p = cand;
    }
    p
}

/// Merges points within projective distance `tol`, adding multiplicities.
pub fn merge_close(points: Vec<(ComplexPoint, u32)>, tol: f64) -> Vec<(ComplexPoint, u32)> {
    let mut out: Vec<(ComplexPoint, u32)> = Vec::new();
    for (p, m) in points {
        match out.iter_mut().find(|(q, _)| q.projective_distance(&p) <= tol) {
            Some((_, mm)) => *mm += m,
            None => out.push((p, m)),
        }
    }
    out
}
