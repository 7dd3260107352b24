//! Numeric singularity census of an arrangement of smooth cubics and lines.
//!
//! Every pair of components is intersected over the complex numbers, the
//! resulting points are clustered across pairs, and each cluster is
//! classified from its number of branches and the pairwise intersection
//! multiplicities: two transverse branches give `A1`, two branches with
//! contact of order three give `A5`, three pairwise transverse branches give
//! `D4`. Anything else is outside the supported class and is an error.

pub mod intersect;
pub mod roots;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{combinatorial_count, count_satisfied, WeakCombinatorics};
use crate::error::{Error, Result};
use crate::jacobian::{total_tjurina_algebraic, SingularityType};
use crate::poly::{ComplexPoint, HomogeneousPoly, NumericPoly, Var};

pub use intersect::{pair_intersections, PairIntersection, SHEAR_ATTEMPTS};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Relative agreement required between the exact and numeric forms of a
/// component.
const AGREEMENT_EPS: f64 = 1e-12;
/// Minimal projective distance between tangent lines of a triple point.
const TANGENT_SEPARATION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Line,
    Cubic,
}

impl ComponentKind {
    pub fn degree(self) -> u32 {
        match self {
            ComponentKind::Line => 1,
            ComponentKind::Cubic => 3,
        }
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentKind::Line => "line",
            ComponentKind::Cubic => "cubic",
        })
    }
}

/// A line or cubic, with an exact rational form when one exists and always a
/// numeric coefficient vector in `monomial_basis` order.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    kind: ComponentKind,
    exact: Option<HomogeneousPoly>,
    numeric: NumericPoly,
}

impl Component {
    pub fn new(kind: ComponentKind, exact: Option<HomogeneousPoly>, numeric: Option<NumericPoly>) -> Result<Self> {
        let numeric = match (&exact, numeric) {
            (None, None) => {
                return Err(Error::InvalidComponent("component needs an exact or a numeric form".into()))
            }
            (Some(e), None) => e.to_numeric(),
            (None, Some(n)) => n,
            (Some(e), Some(n)) => {
                if proportionality_defect(&e.to_numeric(), &n) > AGREEMENT_EPS {
                    return Err(Error::InvalidComponent(format!(
                        "numeric coefficients disagree with exact form {e}"
                    )));
                }
                n
            }
        };
        if numeric.degree() != kind.degree() {
            return Err(Error::InvalidComponent(format!(
                "{kind} must have degree {}, got {}",
                kind.degree(),
                numeric.degree()
            )));
        }
        if numeric.is_zero(0.0) {
            return Err(Error::InvalidComponent("zero polynomial".into()));
        }
        Ok(Component { kind, exact, numeric })
    }

    /// Component from an exact polynomial of degree 1 or 3.
    pub fn exact(poly: HomogeneousPoly) -> Result<Self> {
        let kind = match poly.degree() {
            1 => ComponentKind::Line,
            3 => ComponentKind::Cubic,
            d => return Err(Error::InvalidComponent(format!("degree {d} is neither a line nor a cubic"))),
        };
        Component::new(kind, Some(poly), None)
    }

    pub fn numeric_line(coeffs: [Complex64; 3]) -> Result<Self> {
        Component::new(ComponentKind::Line, None, Some(NumericPoly::linear(coeffs)))
    }

    pub fn kind(&self) -> ComponentKind {
        self.kind
    }

    pub fn exact_poly(&self) -> Option<&HomogeneousPoly> {
        self.exact.as_ref()
    }

    pub fn numeric(&self) -> &NumericPoly {
        &self.numeric
    }

    pub fn degree(&self) -> u32 {
        self.kind.degree()
    }
}

/// Distance between the unit-normalised coefficient vectors after the best
/// phase alignment; zero iff the polynomials are proportional.
pub fn proportionality_defect(a: &NumericPoly, b: &NumericPoly) -> f64 {
    if a.coeffs().len() != b.coeffs().len() {
        return 1.0;
    }
    let (na, nb) = (a.coeff_norm(), b.coeff_norm());
    if na == 0.0 || nb == 0.0 {
        return 1.0;
    }
    let dot: Complex64 = a.coeffs().iter().zip(b.coeffs()).map(|(p, q)| p.conj() * q).sum();
    let phase = if dot.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { dot / dot.norm() };
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(p, q)| (q / nb - phase * p / na).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Arrangement {
    pub label: String,
    components: Vec<Component>,
    product: Option<HomogeneousPoly>,
}

impl Arrangement {
    pub fn new(label: impl Into<String>, components: Vec<Component>, product: Option<HomogeneousPoly>) -> Result<Self> {
        for i in 0..components.len() {
            for j in i + 1..components.len() {
                let (a, b) = (&components[i], &components[j]);
                if a.kind == b.kind && proportionality_defect(&a.numeric, &b.numeric) < AGREEMENT_EPS {
                    return Err(Error::InvalidComponent(format!("components {i} and {j} coincide")));
                }
            }
        }
        let arr = Arrangement { label: label.into(), components, product };
        if let Some(p) = &arr.product {
            if p.degree() != arr.m() {
                return Err(Error::InvalidComponent(format!(
                    "product has degree {}, components give {}",
                    p.degree(),
                    arr.m()
                )));
            }
            let numeric: Option<NumericPoly> = arr
                .components
                .iter()
                .map(|c| c.numeric.clone())
                .reduce(|acc, c| acc.multiply(&c));
            if let Some(n) = numeric {
                if proportionality_defect(&n, &p.to_numeric()) > 1e-9 {
                    return Err(Error::InvalidComponent("product does not match the components".into()));
                }
            }
        }
        Ok(arr)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn product(&self) -> Option<&HomogeneousPoly> {
        self.product.as_ref()
    }

    /// Number of cubics.
    pub fn k(&self) -> u32 {
        self.components.iter().filter(|c| c.kind == ComponentKind::Cubic).count() as u32
    }

    /// Number of lines.
    pub fn d(&self) -> u32 {
        self.components.iter().filter(|c| c.kind == ComponentKind::Line).count() as u32
    }

    pub fn m(&self) -> u32 {
        3 * self.k() + self.d()
    }

    /// The exact product, or the product of the exact components when all of
    /// them have one.
    pub fn exact_product(&self) -> Option<HomogeneousPoly> {
        self.product.clone().or_else(|| {
            let exact: Option<Vec<&HomogeneousPoly>> = self.components.iter().map(|c| c.exact.as_ref()).collect();
            exact.map(HomogeneousPoly::product)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularPointRecord {
    pub location: ComplexPoint,
    /// Indices of the components through the point, ascending.
    pub members: Vec<usize>,
    /// Intersection multiplicity for each pair of members.
    pub pairwise_mult: BTreeMap<(usize, usize), u32>,
    pub classification: Option<SingularityType>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CensusOptions {
    pub tol: f64,
    pub seed: u64,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { tol: DEFAULT_TOL, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShearRecord {
    pub pair: (usize, usize),
    pub attempt: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Census {
    pub wc: WeakCombinatorics,
    pub points: Vec<SingularPointRecord>,
    /// Smallest projective distance between two distinct singular points.
    pub min_cluster_gap: Option<f64>,
    /// Projections used for curve-curve pairs.
    pub shears: Vec<ShearRecord>,
}

/// Smoothness of a cubic component: `tau = 0` for exact input, otherwise no
/// common zero of the three partials.
pub fn is_smooth_cubic(c: &Component) -> bool {
    if c.kind != ComponentKind::Cubic {
        return false;
    }
    match &c.exact {
        Some(p) => matches!(total_tjurina_algebraic(p), Ok(0)),
        None => numeric_smooth(&c.numeric, DEFAULT_TOL, 0),
    }
}

/// No common zero of the partial derivatives, searched with the pairwise
/// intersection pipeline.
pub fn numeric_smooth(f: &NumericPoly, tol: f64, seed: u64) -> bool {
    let scale = f.coeff_norm();
    let partials: Vec<NumericPoly> =
        Var::ALL.iter().map(|&v| f.partial(v)).filter(|p| !p.is_zero(1e-12 * scale)).collect();
    // With fewer than three independent partials the remaining ones always
    // have common zeros (or the curve is a cone).
    if partials.len() < 3 {
        return false;
    }
    let Ok(common) = pair_intersections(&partials[0], &partials[1], tol, seed) else { return false };
    let third = &partials[2];
    let third_scale = third.coeff_norm();
    !common.points.iter().any(|(p, _)| {
        let u = p.normalized().coords();
        third.eval(u).norm() <= 1e-8 * third_scale
    })
}

/// Merges intersection points across component pairs.
pub fn cluster(points: &[((usize, usize), ComplexPoint, u32)], tol: f64) -> Vec<SingularPointRecord> {
    let mut out: Vec<SingularPointRecord> = Vec::new();
    for &((i, j), p, m) in points {
        let rec = match out.iter_mut().find(|r| r.location.projective_distance(&p) <= tol) {
            Some(r) => r,
            None => {
                out.push(SingularPointRecord {
                    location: p.normalized(),
                    members: Vec::new(),
                    pairwise_mult: BTreeMap::new(),
                    classification: None,
                });
                out.last_mut().unwrap()
            }
        };
        for c in [i, j] {
            if let Err(pos) = rec.members.binary_search(&c) {
                rec.members.insert(pos, c);
            }
        }
        *rec.pairwise_mult.entry((i.min(j), i.max(j))).or_insert(0) += m;
    }
    out
}

fn describe(rec: &SingularPointRecord) -> String {
    let pairs: Vec<String> = rec.pairwise_mult.iter().map(|((a, b), m)| format!("({a},{b})->{m}")).collect();
    format!("{} branches, pairwise multiplicities [{}]", rec.members.len(), pairs.join(", "))
}

fn location_string(p: &ComplexPoint) -> String {
    let f = |c: Complex64| format!("{:.6}{:+.6}i", c.re, c.im);
    format!("({} : {} : {})", f(p.x), f(p.y), f(p.z))
}

/// Classifies a cluster from branch count and pairwise multiplicities.
pub fn classify_point(rec: &SingularPointRecord, components: &[Component]) -> Result<SingularityType> {
    let mults: Vec<u32> = rec.pairwise_mult.values().copied().collect();
    let unsupported = |why: &str| Error::UnsupportedSingularity {
        location: location_string(&rec.location),
        pattern: format!("{} ({why})", describe(rec)),
    };
    match (rec.members.len(), mults.as_slice()) {
        (2, [1]) => Ok(SingularityType::A1),
        (2, [3]) => Ok(SingularityType::A5),
        (3, [1, 1, 1]) => {
            let p = rec.location.coords();
            let tangents: Vec<ComplexPoint> = rec
                .members
                .iter()
                .map(|&i| ComplexPoint::new(components[i].numeric.gradient_at(p)))
                .collect();
            for a in 0..3 {
                for b in a + 1..3 {
                    if tangents[a].projective_distance(&tangents[b]) < TANGENT_SEPARATION {
                        return Err(unsupported("tangential triple point"));
                    }
                }
            }
            Ok(SingularityType::D4)
        }
        (2, _) => Err(unsupported("contact order other than 1 or 3")),
        (3, _) => Err(unsupported("non-transverse triple point")),
        _ => Err(unsupported("more than three branches")),
    }
}

/// Locates and classifies all singular points of the arrangement and returns
/// its weak combinatorics.
pub fn census(arr: &Arrangement, opts: CensusOptions) -> Result<Census> {
    let comps = arr.components();
    for (i, c) in comps.iter().enumerate() {
        if c.kind == ComponentKind::Cubic && !is_smooth_cubic(c) {
            return Err(Error::NotSmooth(i));
        }
    }
    let mut all = Vec::new();
    let mut shears = Vec::new();
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let pair_seed = opts.seed ^ ((i as u64) << 32 | j as u64);
            let inter = pair_intersections(&comps[i].numeric, &comps[j].numeric, opts.tol, pair_seed)
                .map_err(|e| match e {
                    Error::SharedComponent(..) => Error::SharedComponent(i, j),
                    other => other,
                })?;
            let expected = comps[i].degree() * comps[j].degree();
            if inter.total_multiplicity() != expected {
                return Err(Error::CountMismatch {
                    expected: expected as u64,
                    found: inter.total_multiplicity() as u64,
                });
            }
            if let Some(attempt) = inter.shear_attempt {
                shears.push(ShearRecord { pair: (i, j), attempt });
            }
            all.extend(inter.points.into_iter().map(|(p, m)| ((i, j), p, m)));
        }
    }
    let mut points = cluster(&all, opts.tol);
    for rec in points.iter_mut() {
        rec.classification = Some(classify_point(rec, comps)?);
    }
    let count = |t| points.iter().filter(|r| r.classification == Some(t)).count() as u64;
    let wc = WeakCombinatorics::new(
        arr.k(),
        arr.d(),
        count(SingularityType::A1),
        count(SingularityType::D4),
        count(SingularityType::A5),
    );
    if !count_satisfied(&wc) {
        return Err(Error::CountMismatch {
            expected: combinatorial_count(wc.k, wc.d),
            found: wc.absorbed_intersections(),
        });
    }
    let mut min_cluster_gap: Option<f64> = None;
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            let g = points[a].location.projective_distance(&points[b].location);
            min_cluster_gap = Some(min_cluster_gap.map_or(g, |m| m.min(g)));
        }
    }
    Ok(Census { wc, points, min_cluster_gap, shears })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(s: &str) -> Component {
        Component::exact(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn smooth_cubic_checks() {
        assert!(is_smooth_cubic(&comp("x^3+y^3+z^3")));
        assert!(!is_smooth_cubic(&comp("x^3")));
        assert!(!is_smooth_cubic(&comp("y^3 - x^2*z")));
        let numeric = |s: &str| {
            Component::new(ComponentKind::Cubic, None, Some(s.parse::<HomogeneousPoly>().unwrap().to_numeric())).unwrap()
        };
        assert!(is_smooth_cubic(&numeric("x^3+y^3+z^3")));
        assert!(!is_smooth_cubic(&numeric("y^3 - x^2*z")));
        assert!(!is_smooth_cubic(&numeric("x^3")));
        assert!(!is_smooth_cubic(&numeric("x^3 + y^3 + x*y*z")));
    }

    #[test]
    fn coordinate_triangle_clusters() {
        let arr = Arrangement::new("triangle", vec![comp("x"), comp("y"), comp("z")], None).unwrap();
        let c = census(&arr, CensusOptions::default()).unwrap();
        assert_eq!(c.points.len(), 3);
        assert!(c.points.iter().all(|r| r.members.len() == 2));
        assert_eq!(c.wc, WeakCombinatorics::new(0, 3, 3, 0, 0));
        assert!(cluster(&[], 1e-9).is_empty());
    }

    #[test]
    fn unsupported_patterns() {
        // Four concurrent lines.
        let arr = Arrangement::new(
            "pencil",
            vec![comp("x"), comp("y"), comp("x+y"), comp("x-y")],
            None,
        )
        .unwrap();
        assert!(matches!(census(&arr, CensusOptions::default()), Err(Error::UnsupportedSingularity { .. })));
        // x + y + z meets the Fermat cubic transversally in three points.
        let arr = Arrangement::new("secant", vec![comp("x^3+y^3+z^3"), comp("x+y+z")], None).unwrap();
        assert_eq!(census(&arr, CensusOptions::default()).unwrap().wc, WeakCombinatorics::new(1, 1, 3, 0, 0));
        // x = 0 is tangent to y^2 z = x^3 - x z^2 at the non-flex point
        // (0 : 0 : 1): contact order 2, an A3 point outside the class.
        let arr = Arrangement::new("tangent", vec![comp("y^2*z - x^3 + x*z^2"), comp("x")], None).unwrap();
        assert!(matches!(census(&arr, CensusOptions::default()), Err(Error::UnsupportedSingularity { .. })));
    }

    #[test]
    fn duplicate_components_rejected() {
        let arr = Arrangement::new("dup", vec![comp("x+y"), comp("2*x+2*y")], None);
        assert!(arr.is_err());
    }

    #[test]
    fn singular_cubic_rejected() {
        let arr = Arrangement::new("cusp", vec![comp("y^3 - x^2*z"), comp("x")], None).unwrap();
        assert_eq!(census(&arr, CensusOptions::default()), Err(Error::NotSmooth(0)));
    }
}
