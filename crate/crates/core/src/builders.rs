//! Named arrangements and the flex-point machinery of smooth cubics.
//!
//! The inflection points of a smooth cubic are its nine common zeros with the
//! Hessian curve; the tangent line at a flex meets the cubic there with
//! multiplicity three. For the Fermat cubic `x^3 + y^3 + z^3` the Hessian is
//! `216 xyz`, the flexes are the points with one vanishing coordinate, and the
//! nine tangents multiply out to `(x^3 + y^3)(y^3 + z^3)(x^3 + z^3)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::census::{pair_intersections, Arrangement, Component, ComponentKind};
use crate::error::{Error, Result};
use crate::jacobian::total_tjurina_algebraic;
use crate::poly::{rat, ComplexPoint, HomogeneousPoly, NumericPoly};

/// Seed of the projection used to intersect a cubic with its Hessian.
const FLEX_SEED: u64 = 0;

pub fn fermat_cubic() -> HomogeneousPoly {
    "x^3 + y^3 + z^3".parse().expect("valid literal")
}

/// The nine inflection points of a smooth cubic.
pub fn inflection_points(cubic: &HomogeneousPoly, tol: f64) -> Result<Vec<ComplexPoint>> {
    if cubic.degree() != 3 || !matches!(total_tjurina_algebraic(cubic), Ok(0)) {
        return Err(Error::NotSmooth(0));
    }
    let hessian = cubic.hessian_det()?;
    let inter = pair_intersections(&cubic.to_numeric(), &hessian.to_numeric(), tol, FLEX_SEED)?;
    // A smooth cubic meets its Hessian transversally in nine distinct points.
    if inter.points.len() != 9 || inter.points.iter().any(|(_, m)| *m != 1) {
        return Err(Error::CountMismatch { expected: 9, found: inter.points.len() as u64 });
    }
    Ok(inter.points.into_iter().map(|(p, _)| p).collect())
}

/// Tangent line `f_x(p) x + f_y(p) y + f_z(p) z = 0` at a smooth point,
/// with a unit-norm coefficient vector.
pub fn tangent_line_at(f: &HomogeneousPoly, p: &ComplexPoint) -> Result<Component> {
    tangent_line_numeric(&f.to_numeric(), p)
}

pub fn tangent_line_numeric(f: &NumericPoly, p: &ComplexPoint) -> Result<Component> {
    let u = p.normalized();
    let grad = ComplexPoint::new(f.gradient_at(u.coords()));
    if grad.norm() <= 1e-10 * f.coeff_norm() {
        return Err(Error::SingularPoint);
    }
    Component::numeric_line(grad.normalized().coords())
}

/// Primitive cube root of unity `exp(2 pi i / 3)`.
pub fn omega() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)
}

/// The three lines `a + omega^j b = 0` for coordinate indices `a`, `b`;
/// their product is `a^3 + b^3`. The rational one (`j = 0`) is exact.
fn factor_lines(a: usize, b: usize) -> Result<Vec<Component>> {
    (0..3)
        .map(|j| {
            if j == 0 {
                let mut c = [0i64; 3];
                c[a] = 1;
                c[b] = 1;
                let l = HomogeneousPoly::linear(rat(c[0]), rat(c[1]), rat(c[2]));
                return Component::exact(l);
            }
            let mut c = [Complex64::new(0.0, 0.0); 3];
            c[a] = Complex64::new(1.0, 0.0);
            c[b] = omega().powu(j);
            Component::numeric_line(c)
        })
        .collect()
}

/// Product of the nine inflectional tangents of the Fermat cubic.
pub fn fermat_flex_tangent_product() -> HomogeneousPoly {
    ["x^3 + y^3", "y^3 + z^3", "x^3 + z^3"]
        .iter()
        .map(|s| s.parse::<HomogeneousPoly>().expect("valid literal"))
        .reduce(|acc, p| acc.multiply(&p))
        .expect("three factors")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExampleName {
    #[serde(rename = "EL6")]
    El6,
    #[serde(rename = "EL7")]
    El7,
    #[serde(rename = "CPPP")]
    Cppp,
    #[serde(rename = "FERMAT")]
    Fermat,
}

impl ExampleName {
    pub const ALL: [ExampleName; 4] = [ExampleName::El6, ExampleName::El7, ExampleName::Cppp, ExampleName::Fermat];

    pub fn as_str(self) -> &'static str {
        match self {
            ExampleName::El6 => "EL6",
            ExampleName::El7 => "EL7",
            ExampleName::Cppp => "CPPP",
            ExampleName::Fermat => "FERMAT",
        }
    }
}

impl fmt::Display for ExampleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExampleName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExampleName::ALL
            .into_iter()
            .find(|n| n.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownExample(s.to_string()))
    }
}

/// Built-in arrangements.
///
/// * `EL6`: the Fermat cubic and the three factor lines of `x^3 + y^3`.
/// * `EL7`: `EL6` and the line `y + z`.
/// * `CPPP`: the Fermat cubic and its nine inflectional tangents.
/// * `FERMAT`: the Fermat cubic alone.
pub fn example(name: ExampleName) -> Arrangement {
    build(name).expect("built-in examples are valid")
}

pub fn example_by_name(name: &str) -> Result<Arrangement> {
    Ok(example(name.parse()?))
}

fn build(name: ExampleName) -> Result<Arrangement> {
    let fermat = fermat_cubic();
    let cubic = Component::exact(fermat.clone())?;
    let x3y3: HomogeneousPoly = "x^3 + y^3".parse()?;
    let (components, product) = match name {
        ExampleName::Fermat => (vec![cubic], fermat),
        ExampleName::El6 => {
            let mut c = vec![cubic];
            c.extend(factor_lines(0, 1)?);
            (c, fermat.multiply(&x3y3))
        }
        ExampleName::El7 => {
            let mut c = vec![cubic];
            c.extend(factor_lines(0, 1)?);
            let yz: HomogeneousPoly = "y + z".parse()?;
            c.push(Component::exact(yz.clone())?);
            (c, fermat.multiply(&x3y3).multiply(&yz))
        }
        ExampleName::Cppp => {
            let mut c = vec![cubic];
            for (a, b) in [(0, 1), (1, 2), (0, 2)] {
                c.extend(factor_lines(a, b)?);
            }
            (c, fermat.multiply(&fermat_flex_tangent_product()))
        }
    };
    Arrangement::new(name.as_str(), components, Some(product))
}

/// Exact product of the components when every component is exact.
pub fn exact_component_product(arr: &Arrangement) -> Option<HomogeneousPoly> {
    let exact: Option<Vec<&HomogeneousPoly>> = arr.components().iter().map(|c| c.exact_poly()).collect();
    exact.map(HomogeneousPoly::product)
}

/// Numeric product of all components.
pub fn numeric_component_product(arr: &Arrangement) -> Option<NumericPoly> {
    arr.components().iter().map(|c| c.numeric().clone()).reduce(|a, b| a.multiply(&b))
}

/// A smooth cubic together with the tangents at its flexes, computed from
/// scratch through the Hessian.
pub fn cubic_with_flex_tangents(cubic: &HomogeneousPoly, tol: f64) -> Result<Arrangement> {
    let mut components = vec![Component::new(ComponentKind::Cubic, Some(cubic.clone()), None)?];
    for p in inflection_points(cubic, tol)? {
        components.push(tangent_line_at(cubic, &p)?);
    }
    Arrangement::new("cubic with flex tangents", components, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{census, is_smooth_cubic, proportionality_defect, CensusOptions, DEFAULT_TOL};
    use crate::combinatorics::WeakCombinatorics;

    #[test]
    fn fermat_basics() {
        let f = fermat_cubic();
        assert_eq!(f.degree(), 3);
        assert!(is_smooth_cubic(&Component::exact(f.clone()).unwrap()));
        assert_eq!(f.hessian_det().unwrap(), "216*x*y*z".parse().unwrap());
    }

    #[test]
    fn fermat_flexes() {
        let f = fermat_cubic();
        let h = f.hessian_det().unwrap();
        let pts = inflection_points(&f, DEFAULT_TOL).unwrap();
        assert_eq!(pts.len(), 9);
        for p in &pts {
            let u = p.normalized();
            assert!(f.evaluate_complex(&u).norm() < 1e-12);
            assert!(h.evaluate_complex(&u).norm() < 1e-10);
            // One coordinate vanishes.
            assert!(u.coords().iter().any(|c| c.norm() < 1e-12));
        }
        assert!(pts.iter().any(|p| p.projective_distance(&ComplexPoint::real(-1.0, 1.0, 0.0)) < 1e-12));
    }

    #[test]
    fn tangent_lines() {
        let f = fermat_cubic();
        let expect = |l: &Component, s: &str| {
            let e: HomogeneousPoly = s.parse().unwrap();
            assert!(proportionality_defect(l.numeric(), &e.to_numeric()) < 1e-14, "{s}");
        };
        expect(&tangent_line_at(&f, &ComplexPoint::real(-1.0, 1.0, 0.0)).unwrap(), "x + y");
        expect(&tangent_line_at(&f, &ComplexPoint::real(0.0, -1.0, 1.0)).unwrap(), "y + z");
        let conic: HomogeneousPoly = "x^2 + y^2 - z^2".parse().unwrap();
        expect(&tangent_line_at(&conic, &ComplexPoint::real(1.0, 0.0, 1.0)).unwrap(), "x - z");
        let cusp: HomogeneousPoly = "y^3 - x^2*z".parse().unwrap();
        assert_eq!(tangent_line_at(&cusp, &ComplexPoint::real(0.0, 0.0, 1.0)), Err(Error::SingularPoint));
    }

    #[test]
    fn flex_tangent_product_from_scratch() {
        // Derive the nine tangents through the Hessian, multiply them
        // numerically, scale so the x^6 y^3 coefficient is 1 and round: the
        // result must be the frozen exact product.
        let arr = cubic_with_flex_tangents(&fermat_cubic(), DEFAULT_TOL).unwrap();
        let lines = arr.components()[1..].iter().map(|c| c.numeric().clone());
        let prod = lines.reduce(|a, b| a.multiply(&b)).unwrap();
        let target = fermat_flex_tangent_product();
        let m = crate::poly::Monomial::new(6, 3, 0);
        let s = prod.coeff(&m);
        let terms = crate::poly::monomial_basis(9).into_iter().filter_map(|mono| {
            let c = prod.coeff(&mono) / s;
            assert!(c.im.abs() < 1e-9 && (c.re - c.re.round()).abs() < 1e-9, "{mono}: {c}");
            let r = c.re.round() as i64;
            (r != 0).then(|| (mono, rat(r)))
        });
        assert_eq!(HomogeneousPoly::from_terms(9, terms).unwrap(), target);
    }

    #[test]
    fn example_products() {
        let el6 = example(ExampleName::El6);
        assert_eq!(el6.product().unwrap(), &"x^6 + 2*x^3*y^3 + x^3*z^3 + y^6 + y^3*z^3".parse().unwrap());
        assert_eq!((el6.k(), el6.d(), el6.m()), (1, 3, 6));
        let el7 = example(ExampleName::El7);
        assert_eq!(el7.product().unwrap().degree(), 7);
        let cppp = example(ExampleName::Cppp);
        assert_eq!(cppp.components().len(), 10);
        assert_eq!(cppp.product().unwrap().degree(), 12);
        let fermat = example(ExampleName::Fermat);
        assert_eq!(fermat.product().unwrap(), &fermat_cubic());
        for name in ExampleName::ALL {
            let arr = example(name);
            let n = numeric_component_product(&arr).unwrap();
            assert!(proportionality_defect(&n, &arr.product().unwrap().to_numeric()) < 1e-12, "{name}");
            if let Some(e) = exact_component_product(&arr) {
                assert_eq!(&e, arr.product().unwrap());
            }
        }
        assert_eq!("el7".parse::<ExampleName>().unwrap(), ExampleName::El7);
        assert!(matches!(example_by_name("EL8"), Err(Error::UnknownExample(_))));
    }

    #[test]
    fn example_censuses() {
        let c = |n| census(&example(n), CensusOptions::default()).unwrap().wc;
        assert_eq!(c(ExampleName::El6), WeakCombinatorics::new(1, 3, 0, 1, 3));
        assert_eq!(c(ExampleName::El7), WeakCombinatorics::new(1, 4, 3, 1, 4));
        assert_eq!(c(ExampleName::Cppp), WeakCombinatorics::new(1, 9, 27, 3, 9));
        assert_eq!(c(ExampleName::Fermat), WeakCombinatorics::new(1, 0, 0, 0, 0));
    }

    #[test]
    fn inflection_points_reject_singular_cubics() {
        let nodal: HomogeneousPoly = "y^2*z - x^3 - x^2*z".parse().unwrap();
        assert_eq!(inflection_points(&nodal, DEFAULT_TOL), Err(Error::NotSmooth(0)));
    }
}
