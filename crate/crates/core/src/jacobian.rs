//! Graded linear algebra on the Jacobian ideal `J_f = (f_x, f_y, f_z)`.
//!
//! A syzygy of degree `r` is a triple `(a, b, c)` of forms of degree `r` with
//! `a f_x + b f_y + c f_z = 0`; these are exactly the kernel vectors of
//! [`syzygy_matrix`]`(f, r)`. The same matrix, read as the degree
//! `r + deg f - 1` piece of `J_f`, gives the Hilbert function of the
//! Jacobian algebra `S / J_f`, whose stable value is the total Tjurina number.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{degree_window, free_tjurina_target, DegreeWindow, WeakCombinatorics};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, RankMethod};
use crate::poly::{graded_dim, monomial_basis, HomogeneousPoly, Rational};

/// The singularities allowed in the arrangements under study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SingularityType {
    /// Node, `x^2 + y^2 = 0`.
    A1,
    /// Ordinary triple point, `y^2 x + x^3 = 0`.
    D4,
    /// Contact of order three between smooth branches, `x^2 + y^6 = 0`.
    A5,
}

impl SingularityType {
    pub const ALL: [SingularityType; 3] = [SingularityType::A1, SingularityType::D4, SingularityType::A5];

    pub fn milnor(self) -> u32 {
        match self {
            SingularityType::A1 => 1,
            SingularityType::D4 => 4,
            SingularityType::A5 => 5,
        }
    }

    /// Quasi-homogeneous, so equal to the Milnor number.
    pub fn tjurina(self) -> u32 {
        self.milnor()
    }

    /// Log-canonical threshold (Arnold exponent).
    pub fn lct(self) -> Rational {
        match self {
            SingularityType::A1 => crate::poly::rat(1),
            SingularityType::D4 | SingularityType::A5 => crate::poly::ratio(2, 3),
        }
    }

    /// Pairwise intersections among the branches absorbed by the point.
    pub fn intersection_cost(self) -> u32 {
        match self {
            SingularityType::A1 => 1,
            SingularityType::D4 | SingularityType::A5 => 3,
        }
    }

    pub fn normal_form(self) -> &'static str {
        match self {
            SingularityType::A1 => "x^2 + y^2",
            SingularityType::D4 => "y^2*x + x^3",
            SingularityType::A5 => "x^2 + y^6",
        }
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Matrix of `(a, b, c) -> a f_x + b f_y + c f_z` from `S_r^3` to
/// `S_{r + deg f - 1}`. Columns run over `monomial_basis(r)` for `a`, then
/// `b`, then `c`; rows follow `monomial_basis(r + deg f - 1)`.
pub fn syzygy_matrix(f: &HomogeneousPoly, r: u32) -> Result<ExactMatrix> {
    if f.degree() < 2 {
        return Err(Error::DegreeUnderflow { op: "syzygy_matrix", degree: f.degree(), min: 2 });
    }
    let grad = f.gradient()?;
    let target = r + f.degree() - 1;
    let basis = monomial_basis(r);
    let mut columns = Vec::with_capacity(3 * basis.len());
    for g in &grad {
        for m in &basis {
            columns.push(g.terms().map(|(gm, c)| (gm.mul(m).basis_index(), c.clone())).collect());
        }
    }
    Ok(ExactMatrix::from_columns(graded_dim(target as usize), columns))
}

pub fn kernel_dimension(m: &ExactMatrix) -> usize {
    m.kernel_dimension()
}

/// Minimal degree of a nonzero Jacobian syzygy.
pub fn mdr(f: &HomogeneousPoly) -> Result<u32> {
    mdr_with(f, RankMethod::Exact)
}

pub fn mdr_with(f: &HomogeneousPoly, method: RankMethod) -> Result<u32> {
    if f.degree() < 2 {
        return Err(Error::DegreeUnderflow { op: "mdr", degree: f.degree(), min: 2 });
    }
    // The Koszul relation (f_y, -f_x, 0) bounds the search by deg f - 1.
    for r in 0..f.degree() {
        if syzygy_matrix(f, r)?.kernel_dimension_with(method) > 0 {
            if r == 0 {
                return Err(Error::PartialsDependent);
            }
            return Ok(r);
        }
    }
    Err(Error::PartialsDependent)
}

/// A syzygy `(a, b, c)` of minimal degree.
pub fn minimal_syzygy(f: &HomogeneousPoly) -> Result<(u32, [HomogeneousPoly; 3])> {
    let r = mdr(f)?;
    let m = syzygy_matrix(f, r)?;
    let kernel = m.kernel_basis();
    // Prefer the sparsest basis vector for readability.
    let v = kernel
        .into_iter()
        .min_by_key(|v| v.iter().filter(|c| !c.is_zero()).count())
        .expect("mdr guarantees a kernel vector");
    let basis = monomial_basis(r);
    let n = basis.len();
    let part = |i: usize| {
        HomogeneousPoly::from_terms(r, basis.iter().copied().zip(v[i * n..(i + 1) * n].iter().cloned()))
            .expect("basis monomials are homogeneous")
    };
    let (a, b, c) = (part(0), part(1), part(2));
    // Normalize by the first nonzero coefficient.
    let lead = v.iter().find(|c| !c.is_zero()).cloned().expect("nonzero kernel vector").recip();
    Ok((r, [a.scale(&lead), b.scale(&lead), c.scale(&lead)]))
}

/// `dim (S / J_f)_t`.
pub fn hilbert_jacobian(f: &HomogeneousPoly, t: u32) -> Result<u64> {
    hilbert_jacobian_with(f, t, RankMethod::Exact)
}

pub fn hilbert_jacobian_with(f: &HomogeneousPoly, t: u32, method: RankMethod) -> Result<u64> {
    if f.degree() < 2 {
        return Err(Error::DegreeUnderflow { op: "hilbert_jacobian", degree: f.degree(), min: 2 });
    }
    let full = graded_dim(t as usize) as u64;
    if t + 1 < f.degree() {
        return Ok(full);
    }
    let rank = syzygy_matrix(f, t + 1 - f.degree())?.rank_with(method);
    Ok(full - rank as u64)
}

/// Hilbert function values inspected while computing the total Tjurina number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TjurinaTrace {
    pub tau: u64,
    /// `(t, dim (S/J_f)_t)` in evaluation order.
    pub values: Vec<(u32, u64)>,
}

/// Total Tjurina number as the stable value of the Jacobian Hilbert function:
/// evaluated from `t = 3(m - 2)` until three consecutive values agree, with
/// a hard cap at `t = 5m`.
pub fn total_tjurina_algebraic(f: &HomogeneousPoly) -> Result<u64> {
    Ok(tjurina_trace(f, RankMethod::Exact)?.tau)
}

pub fn tjurina_trace(f: &HomogeneousPoly, method: RankMethod) -> Result<TjurinaTrace> {
    let m = f.degree();
    if m < 3 {
        return Err(Error::DegreeUnderflow { op: "total_tjurina_algebraic", degree: m, min: 3 });
    }
    let cap = 5 * m;
    let mut values: Vec<(u32, u64)> = Vec::new();
    let mut t = 3 * (m - 2);
    while t <= cap {
        values.push((t, hilbert_jacobian_with(f, t, method)?));
        if let [.., (_, a), (_, b), (_, c)] = values.as_slice() {
            if a == b && b == c {
                return Ok(TjurinaTrace { tau: *c, values });
            }
        }
        t += 1;
    }
    Err(Error::StabilizationFailure { cap })
}

/// `n2 + 4 n3 + 5 t5`.
pub fn total_tjurina_combinatorial(wc: &WeakCombinatorics) -> u64 {
    wc.n2 * SingularityType::A1.tjurina() as u64
        + wc.n3 * SingularityType::D4.tjurina() as u64
        + wc.t5 * SingularityType::A5.tjurina() as u64
}

/// du Plessis-Wall: for `mdr(f) = d1 <= (m-1)/2`, the curve is free iff
/// `(m-1)^2 - d1 (m - d1 - 1) = tau`.
pub fn du_plessis_wall(m: u32, d1: u32, tau: u64) -> Result<bool> {
    if 2 * d1 > m.saturating_sub(1) {
        return Err(Error::MdrOutOfRange { m, d1 });
    }
    Ok(free_tjurina_target(m, d1) == tau as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Free,
    NotFree,
    NotFreeByDegreeWindow,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub m: u32,
    pub d1: u32,
    pub tau_algebraic: u64,
    pub tau_combinatorial: Option<u64>,
    pub exponents: Option<(u32, u32)>,
    pub verdict: Verdict,
    pub reason: String,
    pub window: DegreeWindow,
    /// Hilbert function values that fixed `tau_algebraic`.
    pub hilbert_tail: Vec<(u32, u64)>,
    pub smooth: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub rank: RankMethod,
}

pub fn analyze(f: &HomogeneousPoly, wc: Option<&WeakCombinatorics>) -> Result<FreenessReport> {
    analyze_with(f, wc, AnalysisOptions::default())
}

pub fn analyze_with(
    f: &HomogeneousPoly,
    wc: Option<&WeakCombinatorics>,
    opts: AnalysisOptions,
) -> Result<FreenessReport> {
    let m = f.degree();
    if m < 3 {
        return Err(Error::DegreeUnderflow { op: "analyze", degree: m, min: 3 });
    }
    let d1 = mdr_with(f, opts.rank)?;
    let trace = tjurina_trace(f, opts.rank)?;
    let tau = trace.tau;
    let tau_combinatorial = wc.map(total_tjurina_combinatorial);
    let window = degree_window(m)?;

    let mut exponents = None;
    let (verdict, mut reason) = if window.is_empty() {
        (
            Verdict::NotFreeByDegreeWindow,
            format!(
                "degree window empty for m = {m}: need {} <= mdr <= {}",
                window.lower, window.upper
            ),
        )
    } else if tau == 0 {
        (Verdict::NotFree, "smooth curve: tau = 0, no singular points".to_string())
    } else {
        match du_plessis_wall(m, d1, tau) {
            Err(_) => (
                Verdict::NotFree,
                format!("mdr = {d1} > (m-1)/2 = {}/2, so no exponents d1 <= d2 with d1 + d2 = m - 1", m - 1),
            ),
            Ok(true) => {
                exponents = Some((d1, m - 1 - d1));
                (
                    Verdict::Free,
                    format!("(m-1)^2 - d1(m-d1-1) = {} = tau", free_tjurina_target(m, d1)),
                )
            }
            Ok(false) => (
                Verdict::NotFree,
                format!("(m-1)^2 - d1(m-d1-1) = {} != tau = {tau}", free_tjurina_target(m, d1)),
            ),
        }
    };
    if !window.is_empty() && !window.contains(d1) && verdict != Verdict::Free {
        reason.push_str(&format!("; mdr = {d1} lies outside the degree window"));
    }
    if let Some(tc) = tau_combinatorial {
        if tc != tau {
            reason.push_str(&format!("; combinatorial tau = {tc} disagrees with algebraic tau = {tau}"));
        }
    }
    Ok(FreenessReport {
        m,
        d1,
        tau_algebraic: tau,
        tau_combinatorial,
        exponents,
        verdict,
        reason,
        window,
        hilbert_tail: trace.values,
        smooth: tau == 0,
    })
}

/// Applies `(a, b, c) -> a f_x + b f_y + c f_z`.
pub fn apply_syzygy(f: &HomogeneousPoly, syz: &[HomogeneousPoly; 3]) -> Result<HomogeneousPoly> {
    let grad = f.gradient()?;
    let mut acc = HomogeneousPoly::zero(syz[0].degree() + f.degree() - 1);
    for (s, g) in syz.iter().zip(&grad) {
        acc = acc.add(&s.multiply(g))?;
    }
    Ok(acc)
}
