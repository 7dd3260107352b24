use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::monomial::{graded_dim, monomial_basis, Monomial, Var};
use crate::error::{Error, Result};

/// Below this Euclidean norm a coordinate vector is treated as zero.
pub const POINT_NORM_EPS: f64 = 1e-300;

/// A point of the complex projective plane.
///
/// `new` stores the coordinates as given; `normalized` returns the canonical
/// representative: unit Euclidean norm, and the largest-modulus coordinate
/// (first one on near-ties) rotated onto the positive real axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl ComplexPoint {
    pub fn new(c: [Complex64; 3]) -> Self {
        ComplexPoint { x: c[0], y: c[1], z: c[2] }
    }

    pub fn real(x: f64, y: f64, z: f64) -> Self {
        ComplexPoint::new([x.into(), y.into(), z.into()])
    }

    pub fn coords(&self) -> [Complex64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm(&self) -> f64 {
        self.coords().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_degenerate(&self) -> bool {
        self.norm() < POINT_NORM_EPS
    }

    pub fn normalized(&self) -> ComplexPoint {
        let n = self.norm();
        let c = self.coords();
        let max = c.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let lead = c.iter().position(|v| v.norm() >= max * (1.0 - 1e-9)).unwrap_or(0);
        let phase = c[lead] / c[lead].norm();
        let scale = phase.conj() / n;
        let mut out = [c[0] * scale, c[1] * scale, c[2] * scale];
        out[lead] = Complex64::new(out[lead].re, 0.0);
        ComplexPoint::new(out)
    }

    /// Sine of the Fubini-Study angle between the two points; zero iff they
    /// are the same projective point.
    pub fn projective_distance(&self, other: &ComplexPoint) -> f64 {
        // Lagrange identity: |a|^2 |b|^2 - |<a, b>|^2 = sum_{i<j} |a_i b_j - a_j b_i|^2,
        // which keeps full relative precision for nearby points.
        let (a, b) = (self.coords(), other.coords());
        let wedge: f64 = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(i, j)| (a[i] * b[j] - a[j] * b[i]).norm_sqr())
            .sum();
        (wedge.sqrt() / (self.norm() * other.norm())).min(1.0)
    }

    pub fn apply(&self, g: &[[Complex64; 3]; 3]) -> ComplexPoint {
        let c = self.coords();
        let row = |r: &[Complex64; 3]| r[0] * c[0] + r[1] * c[1] + r[2] * c[2];
        ComplexPoint::new([row(&g[0]), row(&g[1]), row(&g[2])])
    }
}

pub fn cross(a: [Complex64; 3], b: [Complex64; 3]) -> [Complex64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Homogeneous polynomial with complex floating coefficients stored densely in
/// `monomial_basis` order.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericPoly {
    degree: u32,
    coeffs: Vec<Complex64>,
}

impl NumericPoly {
    pub fn new(degree: u32, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != graded_dim(degree as usize) {
            return Err(Error::InvalidComponent(format!(
                "degree {degree} needs {} coefficients, got {}",
                graded_dim(degree as usize),
                coeffs.len()
            )));
        }
        Ok(NumericPoly { degree, coeffs })
    }

    pub fn linear(l: [Complex64; 3]) -> Self {
        NumericPoly { degree: 1, coeffs: l.to_vec() }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self, eps: f64) -> bool {
        self.coeff_norm() <= eps
    }

    pub fn scaled(&self, s: Complex64) -> NumericPoly {
        NumericPoly { degree: self.degree, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn eval(&self, p: [Complex64; 3]) -> Complex64 {
        let d = self.degree as usize;
        let pw = |v: Complex64| -> Vec<Complex64> {
            let mut out = Vec::with_capacity(d + 1);
            let mut acc = Complex64::new(1.0, 0.0);
            for _ in 0..=d {
                out.push(acc);
                acc *= v;
            }
            out
        };
        let (px, py, pz) = (pw(p[0]), pw(p[1]), pw(p[2]));
        monomial_basis(self.degree)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| c * px[m.ex as usize] * py[m.ey as usize] * pz[m.ez as usize])
            .sum()
    }

    pub fn partial(&self, v: Var) -> NumericPoly {
        if self.degree == 0 {
            return NumericPoly { degree: 0, coeffs: vec![Complex64::zero()] };
        }
        let mut out = vec![Complex64::zero(); graded_dim(self.degree as usize - 1)];
        for (m, c) in monomial_basis(self.degree).iter().zip(&self.coeffs) {
            if let Some(low) = m.lower(v) {
                out[low.basis_index()] += c * m.exp(v) as f64;
            }
        }
        NumericPoly { degree: self.degree - 1, coeffs: out }
    }

    pub fn gradient_at(&self, p: [Complex64; 3]) -> [Complex64; 3] {
        Var::ALL.map(|v| self.partial(v).eval(p))
    }

    pub fn multiply(&self, other: &NumericPoly) -> NumericPoly {
        let degree = self.degree + other.degree;
        let mut out = vec![Complex64::zero(); graded_dim(degree as usize)];
        let (ba, bb) = (monomial_basis(self.degree), monomial_basis(other.degree));
        for (ma, ca) in ba.iter().zip(&self.coeffs) {
            if ca.is_zero() {
                continue;
            }
            for (mb, cb) in bb.iter().zip(&other.coeffs) {
                out[ma.mul(mb).basis_index()] += ca * cb;
            }
        }
        NumericPoly { degree, coeffs: out }
    }

    /// Returns `f(g v)` for a complex 3x3 matrix `g`.
    pub fn compose_linear(&self, g: &[[Complex64; 3]; 3]) -> NumericPoly {
        let forms: Vec<NumericPoly> = g.iter().map(|row| NumericPoly::linear(*row)).collect();
        let one = NumericPoly { degree: 0, coeffs: vec![Complex64::new(1.0, 0.0)] };
        let powers: Vec<Vec<NumericPoly>> = forms
            .iter()
            .map(|l| {
                let mut ps = vec![one.clone()];
                for _ in 0..self.degree {
                    let next = ps.last().unwrap().multiply(l);
                    ps.push(next);
                }
                ps
            })
            .collect();
        let mut out = vec![Complex64::zero(); self.coeffs.len()];
        for (m, c) in monomial_basis(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let term = powers[0][m.ex as usize]
                .multiply(&powers[1][m.ey as usize])
                .multiply(&powers[2][m.ez as usize]);
            for (o, t) in out.iter_mut().zip(&term.coeffs) {
                *o += c * t;
            }
        }
        NumericPoly { degree: self.degree, coeffs: out }
    }

    /// Coefficients (ascending powers of `s`) of `f(s * p + q)`.
    pub fn restrict_to_line(&self, p: [Complex64; 3], q: [Complex64; 3]) -> Vec<Complex64> {
        let d = self.degree as usize;
        // Powers of the univariate linear polynomials p_i s + q_i.
        let lin_powers = |a: Complex64, b: Complex64| -> Vec<Vec<Complex64>> {
            let mut out = vec![vec![Complex64::new(1.0, 0.0)]];
            for k in 0..d {
                let prev = &out[k];
                let mut next = vec![Complex64::zero(); prev.len() + 1];
                for (i, c) in prev.iter().enumerate() {
                    next[i] += c * b;
                    next[i + 1] += c * a;
                }
                out.push(next);
            }
            out
        };
        let (lx, ly, lz) = (lin_powers(p[0], q[0]), lin_powers(p[1], q[1]), lin_powers(p[2], q[2]));
        let mut out = vec![Complex64::zero(); d + 1];
        for (m, c) in monomial_basis(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let prod = poly_mul(&poly_mul(&lx[m.ex as usize], &ly[m.ey as usize]), &lz[m.ez as usize]);
            for (o, t) in out.iter_mut().zip(&prod) {
                *o += c * t;
            }
        }
        out
    }

    /// Coefficients (ascending powers of `z`) of `f(x0, y0, z)`.
    pub fn in_last_variable(&self, x0: Complex64, y0: Complex64) -> Vec<Complex64> {
        let mut out = vec![Complex64::zero(); self.degree as usize + 1];
        for (m, c) in monomial_basis(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            out[m.ez as usize] += c * x0.powu(m.ex) * y0.powu(m.ey);
        }
        out
    }

    pub fn coeff(&self, m: &Monomial) -> Complex64 {
        self.coeffs[m.basis_index()]
    }
}

pub(crate) fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn normalization_is_canonical() {
        let p = ComplexPoint::new([c(0.0, 2.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let n = p.normalized();
        assert!((n.norm() - 1.0).abs() < 1e-15);
        assert!(n.x.im == 0.0 && n.x.re > 0.0);
        let q = ComplexPoint::new([c(6.0, 0.0), c(0.0, -3.0), c(0.0, 0.0)]).normalized();
        assert!((n.x - q.x).norm() < 1e-15 && (n.y - q.y).norm() < 1e-15);
        assert!(p.projective_distance(&q) < 1e-12);
        assert!((ComplexPoint::real(1.0, 0.0, 0.0).projective_distance(&ComplexPoint::real(0.0, 1.0, 0.0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn restrict_and_last_variable() {
        // x^3 + y^3 + z^3 on the line through p=(1,0,0), q=(0,0,1): s^3 + 1.
        let f = NumericPoly::new(3, {
            let mut v = vec![Complex64::zero(); 10];
            v[Monomial::new(3, 0, 0).basis_index()] = c(1.0, 0.0);
            v[Monomial::new(0, 3, 0).basis_index()] = c(1.0, 0.0);
            v[Monomial::new(0, 0, 3).basis_index()] = c(1.0, 0.0);
            v
        })
        .unwrap();
        let r = f.restrict_to_line([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(r, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let z = f.in_last_variable(c(1.0, 0.0), c(2.0, 0.0));
        assert_eq!(z, vec![c(9.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }
}
