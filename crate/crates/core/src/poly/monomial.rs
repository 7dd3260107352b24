use std::cmp::Ordering;
use std::fmt;

/// One of the three homogeneous coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }

    pub fn name(self) -> char {
        ['x', 'y', 'z'][self.index()]
    }
}

/// A monomial `x^ex * y^ey * z^ez`.
///
/// The ordering is graded-lexicographic with `x > y > z`, arranged so that
/// ascending iteration visits lower degrees first and, within a degree, the
/// lexicographically *largest* monomial first. Iterating a sorted
/// collection of same-degree monomials therefore reproduces
/// [`monomial_basis`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub ex: u32,
    pub ey: u32,
    pub ez: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { ex: 0, ey: 0, ez: 0 };

    pub fn new(ex: u32, ey: u32, ez: u32) -> Self {
        Monomial { ex, ey, ez }
    }

    pub fn var(v: Var) -> Self {
        let mut m = Monomial::ONE;
        *m.exp_mut(v) = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.ex + self.ey + self.ez
    }

    pub fn exp(&self, v: Var) -> u32 {
        match v {
            Var::X => self.ex,
            Var::Y => self.ey,
            Var::Z => self.ez,
        }
    }

    fn exp_mut(&mut self, v: Var) -> &mut u32 {
        match v {
            Var::X => &mut self.ex,
            Var::Y => &mut self.ey,
            Var::Z => &mut self.ez,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.ex + other.ex, self.ey + other.ey, self.ez + other.ez)
    }

    /// Lowers the exponent of `v` by one; `None` if it is already zero.
    pub fn lower(&self, v: Var) -> Option<Monomial> {
        let mut m = *self;
        let e = m.exp_mut(v);
        if *e == 0 {
            return None;
        }
        *e -= 1;
        Some(m)
    }

    /// Position of this monomial inside `monomial_basis(self.degree())`.
    pub fn basis_index(&self) -> usize {
        let t = self.degree() as usize;
        let rest = t - self.ex as usize;
        rest * (rest + 1) / 2 + (rest - self.ey as usize)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(other.ex.cmp(&self.ex))
            .then(other.ey.cmp(&self.ey))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        Ok(())
    }
}

/// Number of monomials of degree `t` in three variables.
pub fn graded_dim(t: usize) -> usize {
    (t + 1) * (t + 2) / 2
}

/// All monomials of degree `t`, graded-lex with `x > y > z`:
/// `x^t, x^(t-1) y, x^(t-1) z, x^(t-2) y^2, ...`.
pub fn monomial_basis(t: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(graded_dim(t as usize));
    for ex in (0..=t).rev() {
        for ey in (0..=t - ex).rev() {
            out.push(Monomial::new(ex, ey, t - ex - ey));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bases() {
        assert_eq!(monomial_basis(0), vec![Monomial::ONE]);
        assert_eq!(
            monomial_basis(1),
            vec![Monomial::var(Var::X), Monomial::var(Var::Y), Monomial::var(Var::Z)]
        );
        assert_eq!(monomial_basis(21).len(), 253);
    }

    #[test]
    fn basis_index_matches_position() {
        for t in 0..12 {
            let basis = monomial_basis(t);
            assert_eq!(basis.len(), graded_dim(t as usize));
            for (i, m) in basis.iter().enumerate() {
                assert_eq!(m.basis_index(), i);
            }
            let mut sorted = basis.clone();
            sorted.sort();
            assert_eq!(sorted, basis);
        }
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::new(2, 0, 1).to_string(), "x^2*z");
        assert_eq!(Monomial::ONE.to_string(), "1");
    }
}
