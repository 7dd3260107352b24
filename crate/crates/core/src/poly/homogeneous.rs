use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::{monomial_basis, Monomial, Var};
use super::numeric::{ComplexPoint, NumericPoly};
use crate::error::{Error, Result};

/// Exact coefficient field.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A homogeneous polynomial in `x, y, z` with rational coefficients.
///
/// Only nonzero coefficients are stored and every stored monomial has total
/// degree `degree`. The zero polynomial keeps its degree tag so that graded
/// maps stay total.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousPoly {
    degree: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl HomogeneousPoly {
    pub fn zero(degree: u32) -> Self {
        HomogeneousPoly { degree, terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = HomogeneousPoly::zero(0);
        p.add_term(Monomial::ONE, c);
        p
    }

    pub fn one() -> Self {
        HomogeneousPoly::constant(Rational::one())
    }

    pub fn var(v: Var) -> Self {
        HomogeneousPoly::monomial(Monomial::var(v), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = HomogeneousPoly::zero(m.degree());
        p.add_term(m, c);
        p
    }

    /// The linear form `a x + b y + c z`.
    pub fn linear(a: Rational, b: Rational, c: Rational) -> Self {
        let mut p = HomogeneousPoly::zero(1);
        for (v, coef) in Var::ALL.into_iter().zip([a, b, c]) {
            p.add_term(Monomial::var(v), coef);
        }
        p
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms<I>(degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = HomogeneousPoly::zero(degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::NotHomogeneous {
                    monomial: m.to_string(),
                    expected: degree,
                    found: m.degree(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Convenience for small integer-coefficient polynomials: `[(c, ex, ey, ez)]`.
    pub fn from_int_terms(degree: u32, terms: &[(i64, u32, u32, u32)]) -> Result<Self> {
        HomogeneousPoly::from_terms(
            degree,
            terms.iter().map(|&(c, ex, ey, ez)| (Monomial::new(ex, ey, ez), rat(c))),
        )
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &HomogeneousPoly) -> Result<HomogeneousPoly> {
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::NotHomogeneous {
                monomial: other.to_string(),
                expected: self.degree,
                found: other.degree,
            });
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let mut out = HomogeneousPoly { degree, terms: self.terms.clone() };
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HomogeneousPoly) -> Result<HomogeneousPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomogeneousPoly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> HomogeneousPoly {
        if c.is_zero() {
            return HomogeneousPoly::zero(self.degree);
        }
        HomogeneousPoly {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn multiply(&self, other: &HomogeneousPoly) -> HomogeneousPoly {
        let mut out = HomogeneousPoly::zero(self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> HomogeneousPoly {
        (0..e).fold(HomogeneousPoly::one(), |acc, _| acc.multiply(self))
    }

    /// Product of a list of factors; the empty product is `1`.
    pub fn product<'a, I: IntoIterator<Item = &'a HomogeneousPoly>>(factors: I) -> HomogeneousPoly {
        factors.into_iter().fold(HomogeneousPoly::one(), |acc, f| acc.multiply(f))
    }

    pub fn partial(&self, v: Var) -> Result<HomogeneousPoly> {
        if self.degree == 0 {
            return Err(Error::DegreeUnderflow { op: "partial", degree: 0, min: 1 });
        }
        let mut out = HomogeneousPoly::zero(self.degree - 1);
        for (m, c) in &self.terms {
            if let Some(lowered) = m.lower(v) {
                out.add_term(lowered, c * rat(m.exp(v) as i64));
            }
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Result<[HomogeneousPoly; 3]> {
        Ok([self.partial(Var::X)?, self.partial(Var::Y)?, self.partial(Var::Z)?])
    }

    /// Determinant of the 3x3 matrix of second partial derivatives.
    pub fn hessian_det(&self) -> Result<HomogeneousPoly> {
        if self.degree < 2 {
            return Err(Error::DegreeUnderflow { op: "hessian_det", degree: self.degree, min: 2 });
        }
        let grad = self.gradient()?;
        let mut h: Vec<Vec<HomogeneousPoly>> = Vec::with_capacity(3);
        for g in &grad {
            h.push(Var::ALL.iter().map(|&v| g.partial(v)).collect::<Result<_>>()?);
        }
        let minor = |a: usize, b: usize, c: usize, d: usize| -> HomogeneousPoly {
            h[1][a].multiply(&h[2][b]).sub(&h[1][c].multiply(&h[2][d])).expect("same degree")
        };
        let t0 = h[0][0].multiply(&minor(1, 2, 2, 1));
        let t1 = h[0][1].multiply(&minor(0, 2, 2, 0));
        let t2 = h[0][2].multiply(&minor(0, 1, 1, 0));
        let det = t0.sub(&t1)?.add(&t2)?;
        Ok(HomogeneousPoly { degree: 3 * (self.degree - 2), terms: det.terms })
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, p: [&Rational; 3]) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| {
                c * num_traits::pow(p[0].clone(), m.ex as usize)
                    * num_traits::pow(p[1].clone(), m.ey as usize)
                    * num_traits::pow(p[2].clone(), m.ez as usize)
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn evaluate_complex(&self, p: &ComplexPoint) -> Complex64 {
        self.to_numeric().eval(p.coords())
    }

    /// Substitutes `(x, y, z) -> g * (x, y, z)`, i.e. returns `f(g v)`.
    pub fn compose_linear(&self, g: &[[Rational; 3]; 3]) -> HomogeneousPoly {
        let forms: Vec<HomogeneousPoly> = g
            .iter()
            .map(|row| HomogeneousPoly::linear(row[0].clone(), row[1].clone(), row[2].clone()))
            .collect();
        let powers: Vec<Vec<HomogeneousPoly>> = forms
            .iter()
            .map(|l| {
                let mut ps = vec![HomogeneousPoly::one()];
                for _ in 0..self.degree {
                    let next = ps.last().unwrap().multiply(l);
                    ps.push(next);
                }
                ps
            })
            .collect();
        let mut out = HomogeneousPoly::zero(self.degree);
        for (m, c) in &self.terms {
            let term = powers[0][m.ex as usize]
                .multiply(&powers[1][m.ey as usize])
                .multiply(&powers[2][m.ez as usize]);
            for (mm, cc) in term.terms {
                out.add_term(mm, cc * c);
            }
        }
        out
    }

    /// Floating-point image with coefficients in basis order.
    pub fn to_numeric(&self) -> NumericPoly {
        let mut coeffs = vec![Complex64::zero(); super::monomial::graded_dim(self.degree as usize)];
        for (m, c) in &self.terms {
            coeffs[m.basis_index()] = Complex64::new(rational_to_f64(c), 0.0);
        }
        NumericPoly::new(self.degree, coeffs).expect("dimension matches degree")
    }

    /// Integer coefficient vector (basis order) of a positive rational multiple.
    pub fn integer_coefficients(&self) -> Vec<(usize, BigInt)> {
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.terms
            .iter()
            .map(|(m, c)| (m.basis_index(), (c * Rational::from_integer(lcm.clone())).to_integer()))
            .collect()
    }

    /// Monomials of the full basis with their coefficient (zero included).
    pub fn dense_coefficients(&self) -> Vec<Rational> {
        monomial_basis(self.degree).iter().map(|m| self.coeff(m)).collect()
    }

    /// The same polynomial divided by its leading coefficient (in basis order).
    pub fn monic(&self) -> HomogeneousPoly {
        match self.terms.values().next() {
            Some(lc) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }
}

pub(crate) fn rational_to_f64(c: &Rational) -> f64 {
    match (c.numer().to_f64(), c.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Very large numerator/denominator; scale both down first.
            let shift = c.numer().bits().max(c.denom().bits()).saturating_sub(900);
            let n = (c.numer() >> shift as usize).to_f64().unwrap_or(0.0);
            let d = (c.denom() >> shift as usize).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

impl fmt::Display for HomogeneousPoly {
    /// `c*x^a*y^b*z^c` terms in basis order; unit coefficients are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.degree() == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for HomogeneousPoly {
    type Err = Error;

    /// Parses the text form produced by `Display`, e.g. `x^3 - 3/2*x*y*z + z^3`.
    fn from_str(s: &str) -> Result<Self> {
        let src: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(Error::PolyParse("empty input".into()));
        }
        let mut terms: Vec<(Monomial, Rational)> = Vec::new();
        let mut i = 0;
        while i < src.len() {
            let mut sign = Rational::one();
            if src[i] == '+' || src[i] == '-' {
                if src[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            } else if !terms.is_empty() {
                return Err(Error::PolyParse(format!("expected '+' or '-' at {i}")));
            }
            let mut coef = Rational::one();
            let mut mono = Monomial::ONE;
            let mut expect_factor = true;
            while expect_factor {
                expect_factor = false;
                match src.get(i) {
                    Some(c) if c.is_ascii_digit() => {
                        let (n, next) = read_int(&src, i);
                        i = next;
                        let mut value = Rational::from_integer(n);
                        if src.get(i) == Some(&'/') {
                            let (d, next) = read_int(&src, i + 1);
                            if next == i + 1 || d.is_zero() {
                                return Err(Error::PolyParse("bad denominator".into()));
                            }
                            i = next;
                            value /= Rational::from_integer(d);
                        }
                        coef *= value;
                    }
                    Some(&c) if c == 'x' || c == 'y' || c == 'z' => {
                        i += 1;
                        let mut e = 1u32;
                        if src.get(i) == Some(&'^') {
                            let (n, next) = read_int(&src, i + 1);
                            if next == i + 1 {
                                return Err(Error::PolyParse("missing exponent".into()));
                            }
                            i = next;
                            e = n.to_u32().ok_or_else(|| Error::PolyParse("exponent too large".into()))?;
                        }
                        let v = match c {
                            'x' => Var::X,
                            'y' => Var::Y,
                            _ => Var::Z,
                        };
                        let add = Monomial::new(
                            if v == Var::X { e } else { 0 },
                            if v == Var::Y { e } else { 0 },
                            if v == Var::Z { e } else { 0 },
                        );
                        mono = mono.mul(&add);
                    }
                    other => {
                        return Err(Error::PolyParse(format!("unexpected {other:?} at {i}")));
                    }
                }
                if src.get(i) == Some(&'*') {
                    i += 1;
                    expect_factor = true;
                }
            }
            terms.push((mono, sign * coef));
        }
        let degree = terms[0].0.degree();
        HomogeneousPoly::from_terms(degree, terms)
    }
}

fn read_int(src: &[char], start: usize) -> (BigInt, usize) {
    let mut end = start;
    while end < src.len() && src[end].is_ascii_digit() {
        end += 1;
    }
    let digits: String = src[start..end].iter().collect();
    (digits.parse().unwrap_or_default(), end)
}
