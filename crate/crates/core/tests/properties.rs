//! Randomized invariants of the exact and numeric layers.

use cubic_lines::builders::{example, inflection_points, tangent_line_at, ExampleName};
use cubic_lines::census::{census, pair_intersections, Arrangement, CensusOptions, Component, DEFAULT_TOL};
use cubic_lines::combinatorics::count_satisfied;
use cubic_lines::jacobian::{mdr, total_tjurina_algebraic, total_tjurina_combinatorial};
use cubic_lines::linalg::{ExactMatrix, RankMethod};
use cubic_lines::poly::{monomial_basis, ratio, HomogeneousPoly, Monomial, Rational, Var};
use cubic_lines::reproduce::euler_defect;
use cubic_lines::Error;
use proptest::prelude::*;

fn poly_strategy(max_degree: u32) -> impl Strategy<Value = HomogeneousPoly> {
    (0..=max_degree).prop_flat_map(|deg| {
        let n = monomial_basis(deg).len();
        prop::collection::vec((0..n, -9i64..=9, 1i64..=4), 1..=8).prop_map(move |terms| {
            let basis = monomial_basis(deg);
            let mut f = HomogeneousPoly::zero(deg);
            for (i, num, den) in terms {
                f = f.add(&HomogeneousPoly::monomial(basis[i], ratio(num, den))).unwrap();
            }
            f
        })
    })
}

fn same_degree_pair(max_degree: u32) -> impl Strategy<Value = (HomogeneousPoly, HomogeneousPoly)> {
    (poly_strategy(max_degree), poly_strategy(max_degree)).prop_map(|(f, g)| {
        // Bring g to f's degree: lift by a power of x, or replace it by a
        // monomial when it is already too large.
        let deg = f.degree();
        let g = if g.degree() <= deg {
            g.multiply(&HomogeneousPoly::var(Var::X).pow(deg - g.degree()))
        } else {
            HomogeneousPoly::monomial(Monomial::new(deg, 0, 0), ratio(1, 1))
        };
        (f, g)
    })
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-7i64..=-1, 1i64..=7], 1i64..=5).prop_map(|(n, d)| ratio(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn euler_relation(f in poly_strategy(9)) {
        prop_assert!(euler_defect(&f).unwrap().is_zero());
    }

    #[test]
    fn multiplication_commutes_and_associates(f in poly_strategy(4), g in poly_strategy(4), h in poly_strategy(4)) {
        prop_assert_eq!(f.multiply(&g), g.multiply(&f));
        prop_assert_eq!(f.multiply(&g).multiply(&h), f.multiply(&g.multiply(&h)));
    }

    #[test]
    fn distributive_law((f, g) in same_degree_pair(4), h in poly_strategy(3)) {
        let lhs = f.add(&g).unwrap().multiply(&h);
        let rhs = f.multiply(&h).add(&g.multiply(&h)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn leibniz_rule(f in poly_strategy(4), g in poly_strategy(4), v in 0usize..3) {
        let v = Var::ALL[v];
        prop_assume!(f.degree() + g.degree() >= 1);
        let lhs = f.multiply(&g).partial(v).unwrap();
        let term = |a: &HomogeneousPoly, b: &HomogeneousPoly| {
            if a.degree() == 0 {
                HomogeneousPoly::zero(a.degree() + b.degree() - 1)
            } else {
                a.partial(v).unwrap().multiply(b)
            }
        };
        prop_assert_eq!(lhs, term(&f, &g).add(&term(&g, &f)).unwrap());
    }

    #[test]
    fn display_parse_round_trip(f in poly_strategy(6)) {
        let back: HomogeneousPoly = f.to_string().parse().unwrap();
        // Zero polynomials lose their degree tag in text form.
        if !f.is_zero() {
            prop_assert_eq!(back, f);
        }
    }

    #[test]
    fn modular_rank_matches_exact(
        rows in 1usize..7,
        cols in 1usize..7,
        entries in prop::collection::vec((-3i64..=3, 1i64..=3), 49),
    ) {
        let dense: Vec<Vec<Rational>> = (0..rows)
            .map(|i| (0..cols).map(|j| { let (n, d) = entries[i * 7 + j]; ratio(n, d) }).collect())
            .collect();
        let m = ExactMatrix::from_rows(&dense);
        let exact = m.rank();
        prop_assert_eq!(exact, m.rank_with(RankMethod::Modular));
        prop_assert_eq!(m.kernel_basis().len(), cols - exact);
        for v in m.kernel_basis() {
            prop_assert!(m.mul_vec(&v).iter().all(|x| *x == ratio(0, 1)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn scaling_preserves_mdr_and_tau(c in nonzero_rational(), which in 0usize..2) {
        let name = [ExampleName::El6, ExampleName::El7][which];
        let f = example(name).product().unwrap().clone();
        let g = f.scale(&c);
        prop_assert_eq!(mdr(&g).unwrap(), mdr(&f).unwrap());
        prop_assert_eq!(total_tjurina_algebraic(&g).unwrap(), total_tjurina_algebraic(&f).unwrap());
    }
}

/// Lines `a x + b y + c z` with small integer coefficients, not all zero.
fn line_strategy() -> impl Strategy<Value = (i64, i64, i64)> {
    (-3i64..=3, -3i64..=3, -3i64..=3).prop_filter("nonzero", |&(a, b, c)| (a, b, c) != (0, 0, 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The census either rejects the arrangement with a typed error or
    /// returns counts that satisfy the intersection identity and the
    /// cross-layer tau equality.
    #[test]
    fn census_of_random_arrangements(lines in prop::collection::vec(line_strategy(), 1..5)) {
        let mut comps = vec![Component::exact("x^3 + y^3 + z^3".parse().unwrap()).unwrap()];
        for (a, b, c) in &lines {
            comps.push(Component::exact(HomogeneousPoly::linear(ratio(*a, 1), ratio(*b, 1), ratio(*c, 1))).unwrap());
        }
        let Ok(arr) = Arrangement::new("random", comps, None) else { return Ok(()) };
        match census(&arr, CensusOptions::default()) {
            Ok(c) => {
                prop_assert!(count_satisfied(&c.wc));
                let tau = total_tjurina_algebraic(&arr.exact_product().unwrap()).unwrap();
                prop_assert_eq!(tau, total_tjurina_combinatorial(&c.wc));
            }
            Err(Error::UnsupportedSingularity { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    /// A smooth cubic has nine flexes and each flex tangent meets the cubic
    /// with multiplicity three at the flex.
    #[test]
    fn flexes_of_random_smooth_cubics(coeffs in prop::collection::vec(-4i64..=4, 10)) {
        let basis = monomial_basis(3);
        let mut f = HomogeneousPoly::zero(3);
        for (m, c) in basis.iter().zip(&coeffs) {
            f = f.add(&HomogeneousPoly::monomial(*m, ratio(*c, 1))).unwrap();
        }
        prop_assume!(!f.is_zero() && total_tjurina_algebraic(&f) == Ok(0));
        let pts = inflection_points(&f, DEFAULT_TOL).unwrap();
        prop_assert_eq!(pts.len(), 9);
        for p in &pts {
            let line = tangent_line_at(&f, p).unwrap();
            let r = pair_intersections(line.numeric(), &f.to_numeric(), DEFAULT_TOL, 0).unwrap();
            prop_assert_eq!(r.total_multiplicity(), 3);
            let at_flex = r.points.iter().find(|(q, _)| q.projective_distance(p) < 1e-6);
            prop_assert_eq!(at_flex.map(|(_, m)| *m), Some(3), "{:?}", r.points);
        }
    }
}

#[test]
fn cubic_cubic_multiplicities_do_not_depend_on_the_shear() {
    let p = |s: &str| s.parse::<HomogeneousPoly>().unwrap();
    let fermat = p("x^3 + y^3 + z^3");
    // The second curve contains the flex tangent x + y, so one intersection
    // point has multiplicity three.
    let cases = [
        (p("x*y*z"), vec![1; 9]),
        (p("x + y").multiply(&p("x^2 + y^2 + 2*z^2")), vec![1, 1, 1, 1, 1, 1, 3]),
    ];
    for (g, expect) in cases {
        let reference = pair_intersections(&fermat.to_numeric(), &g.to_numeric(), DEFAULT_TOL, 0).unwrap();
        for seed in 0..10 {
            let r = pair_intersections(&fermat.to_numeric(), &g.to_numeric(), DEFAULT_TOL, seed).unwrap();
            let mut mults: Vec<u32> = r.points.iter().map(|(_, m)| *m).collect();
            mults.sort();
            assert_eq!(mults, expect, "{g}, seed {seed}");
            for (q, m) in &r.points {
                assert!(
                    reference.points.iter().any(|(q0, m0)| q0.projective_distance(q) < 1e-9 && m0 == m),
                    "{g}, seed {seed}: {q:?}"
                );
            }
        }
    }
}

#[test]
fn tolerance_robustness_on_examples() {
    for name in [ExampleName::El6, ExampleName::El7, ExampleName::Cppp] {
        let arr = example(name);
        let wcs: Vec<_> = [1e-6, 1e-8, 1e-10]
            .iter()
            .map(|&tol| census(&arr, CensusOptions { tol, seed: 0 }).unwrap().wc)
            .collect();
        assert!(wcs.windows(2).all(|w| w[0] == w[1]), "{name}: {wcs:?}");
    }
}

#[test]
fn shared_factors_are_detected_for_every_seed() {
    let p = |s: &str| s.parse::<HomogeneousPoly>().unwrap();
    let conic = p("x^2 + y^2 - z^2");
    let (f, g) = (conic.multiply(&p("x + 2*y")), conic.multiply(&p("y - z")));
    for seed in 0..20 {
        let r = pair_intersections(&f.to_numeric(), &g.to_numeric(), DEFAULT_TOL, seed);
        assert!(matches!(r, Err(Error::SharedComponent(..))), "seed {seed}: {r:?}");
    }
}
