//! Exact linear algebra over the rationals.
//!
//! The reference rank computation is a fraction-free sparse elimination: every
//! column is scaled to a primitive integer vector and reduced against a table
//! of pivots keyed by leading row, with cross-multiplication and content
//! removal in place of division. Jacobian matrices are shifted copies of three
//! sparse polynomials, so this keeps both fill-in and coefficient growth
//! small in practice.
//!
//! A multi-prime modular rank is available as a fast path. Its value is a
//! certified lower bound for the rational rank (a minor that is nonzero mod p
//! is nonzero over Z) and agrees with it for all but finitely many primes.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::Rational;

/// Primes just below 2^62 used by the modular rank.
pub const MODULAR_PRIMES: [u64; 3] =
    [4_611_686_018_427_387_847, 4_611_686_018_427_387_817, 4_611_686_018_427_387_787];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMethod {
    /// Fraction-free exact elimination over Z.
    #[default]
    Exact,
    /// Maximum of the ranks modulo [`MODULAR_PRIMES`].
    Modular,
}

/// Sparse rational matrix stored by columns.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, Rational)>>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Builds a matrix from sparse columns of `(row, value)` entries. Zero
    /// values are dropped and repeated rows are summed.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, Rational)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|col| {
                let mut acc: Vec<(usize, Rational)> = Vec::with_capacity(col.len());
                let mut sorted = col;
                sorted.sort_by_key(|(r, _)| *r);
                for (r, v) in sorted {
                    assert!(r < rows, "row index {r} out of range for {rows} rows");
                    match acc.last_mut() {
                        Some((lr, lv)) if *lr == r => *lv += v,
                        _ => acc.push((r, v)),
                    }
                }
                acc.retain(|(_, v)| !v.is_zero());
                acc
            })
            .collect();
        ExactMatrix { rows, cols, columns }
    }

    /// Row-major dense input.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut columns = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    columns[j].push((i, v.clone()));
                }
            }
        }
        ExactMatrix { rows: nrows, cols: ncols, columns }
    }

    pub fn identity(n: usize) -> Self {
        ExactMatrix::from_columns(n, (0..n).map(|i| vec![(i, Rational::one())]).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, Rational)] {
        &self.columns[j]
    }

    pub fn nonzeros(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.columns[j]
            .binary_search_by_key(&i, |(r, _)| *r)
            .map(|k| self.columns[j][k].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Rational::zero(); self.rows];
        for (col, x) in self.columns.iter().zip(v) {
            if x.is_zero() {
                continue;
            }
            for (r, a) in col {
                out[*r] += a * x;
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rank_with(RankMethod::Exact)
    }

    pub fn rank_with(&self, method: RankMethod) -> usize {
        match method {
            RankMethod::Exact => exact_rank(self),
            RankMethod::Modular => MODULAR_PRIMES
                .iter()
                .filter_map(|&p| modular_rank(self, p))
                .max()
                .unwrap_or_else(|| exact_rank(self)),
        }
    }

    /// `cols - rank`.
    pub fn kernel_dimension(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn kernel_dimension_with(&self, method: RankMethod) -> usize {
        self.cols - self.rank_with(method)
    }

    /// Basis of the right kernel from the reduced row echelon form, one vector
    /// per free column (with a 1 in that column). Dense, meant for the small
    /// matrices that carry minimal syzygies.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut a: Vec<Vec<Rational>> = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                a[*i][j] = v.clone();
            }
        }
        let mut pivots: Vec<usize> = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for v in a[r].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            basis.push(v);
        }
        basis
    }
}

type SparseInt = Vec<(usize, BigInt)>;

fn primitive(mut v: SparseInt) -> SparseInt {
    let mut g = BigInt::zero();
    for (_, c) in &v {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if !g.is_one() && !g.is_zero() {
        for (_, c) in v.iter_mut() {
            *c /= &g;
        }
    }
    if v.first().is_some_and(|(_, c)| c.is_negative()) {
        for (_, c) in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

fn integer_column(col: &[(usize, Rational)]) -> SparseInt {
    let lcm = col.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let v = col
        .iter()
        .map(|(r, c)| (*r, (c * Rational::from_integer(lcm.clone())).to_integer()))
        .collect();
    primitive(v)
}

/// `a * v - b * w`, both sorted by row.
fn combine(a: &BigInt, v: &SparseInt, b: &BigInt, w: &SparseInt) -> SparseInt {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let take_v = j == w.len() || (i < v.len() && v[i].0 < w[j].0);
        let take_w = i == v.len() || (j < w.len() && w[j].0 < v[i].0);
        if take_v {
            out.push((v[i].0, a * &v[i].1));
            i += 1;
        } else if take_w {
            out.push((w[j].0, -(b * &w[j].1)));
            j += 1;
        } else {
            let c = a * &v[i].1 - b * &w[j].1;
            if !c.is_zero() {
                out.push((v[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn exact_rank(m: &ExactMatrix) -> usize {
    let mut cols: Vec<SparseInt> =
        m.columns.iter().filter(|c| !c.is_empty()).map(|c| integer_column(c)).collect();
    // Sparse columns with early leads first keeps the pivot rows short.
    cols.sort_by_key(|c| (c[0].0, c.len()));
    let mut pivots: HashMap<usize, SparseInt> = HashMap::new();
    for mut v in cols {
        while let Some((lead, lc)) = v.first().cloned() {
            let Some(p) = pivots.get(&lead) else { break };
            let plc = &p[0].1;
            let g = plc.gcd(&lc);
            v = primitive(combine(&(plc / &g), &v, &(&lc / &g), p));
        }
        if let Some((lead, _)) = v.first() {
            pivots.insert(*lead, v);
        }
    }
    pivots.len()
}

fn mod_rational(c: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = c.numer().mod_floor(&pb).to_u64()?;
    let d = c.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    Some(mul_mod(n, pow_mod(d, p - 2, p), p))
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Rank modulo `p`, or `None` if some denominator vanishes mod `p`.
fn modular_rank(m: &ExactMatrix, p: u64) -> Option<usize> {
    // Rows of the working matrix are the columns of `m`.
    let mut a: Vec<Vec<u64>> = Vec::with_capacity(m.cols);
    for col in &m.columns {
        let mut row = vec![0u64; m.rows];
        for (r, c) in col {
            row[*r] = mod_rational(c, p)?;
        }
        a.push(row);
    }
    let (nr, nc) = (a.len(), m.rows);
    let mut rank = 0;
    for c in 0..nc {
        if rank == nr {
            break;
        }
        let Some(piv) = (rank..nr).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = mul_mod(row[c], inv, p);
            for k in c..nc {
                if prow[k] != 0 {
                    row[k] = (row[k] + p - mul_mod(f, prow[k], p)) % p;
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}
