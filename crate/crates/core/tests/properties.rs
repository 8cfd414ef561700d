//! Property tests for the algebraic and numeric invariants: homogeneity,
//! Euler's relation, resultant soundness on planted roots, root
//! reconstruction, clustering accounting, normalization idempotence,
//! determinism, and chart independence of the intersection pipeline.

use proptest::prelude::*;

use quartics::polyalg::{self, Axis, BiPoly};
use quartics::{catalog, projgeom, roots, HomPoly3, ProjPoint, Tolerances, UniPoly, C64};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn complex_strategy(range: f64) -> impl Strategy<Value = C64> {
    (-range..range, -range..range).prop_map(|(re, im)| C64::new(re, im))
}

/// A random dense quartic form.
fn quartic_strategy() -> impl Strategy<Value = HomPoly3> {
    let exps: Vec<[u32; 3]> = (0..=4u32)
        .flat_map(|i| (0..=4 - i).map(move |j| [i, j, 4 - i - j]))
        .collect();
    proptest::collection::vec(complex_strategy(2.0), exps.len())
        .prop_map(move |coeffs| HomPoly3::from_terms(4, exps.iter().copied().zip(coeffs)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn homogeneity(f in quartic_strategy(), lambda in complex_strategy(3.0), v in [complex_strategy(2.0), complex_strategy(2.0), complex_strategy(2.0)]) {
        prop_assume!(lambda.norm() > 1e-3);
        let scaled = [lambda * v[0], lambda * v[1], lambda * v[2]];
        let lhs = f.evaluate(scaled);
        let rhs = lambda.powu(4) * f.evaluate(v);
        let scale = f.eval_scale(scaled).max(f.eval_scale(v) * lambda.norm().powi(4));
        prop_assert!((lhs - rhs).norm() <= 1e-10 * scale);
    }

    #[test]
    fn euler_relation(f in quartic_strategy()) {
        let x = HomPoly3::monomial([1, 0, 0], c(1.0, 0.0));
        let y = HomPoly3::monomial([0, 1, 0], c(1.0, 0.0));
        let z = HomPoly3::monomial([0, 0, 1], c(1.0, 0.0));
        let lhs = x
            .mul(&f.partial(Axis::X))
            .add(&y.mul(&f.partial(Axis::Y)))
            .add(&z.mul(&f.partial(Axis::Z)));
        let rhs = f.scale(c(4.0, 0.0));
        let diff = lhs.sub(&rhs);
        prop_assert!(diff.max_coeff_modulus() <= 1e-11 * rhs.max_coeff_modulus().max(1e-30));
    }

    #[test]
    fn hessian_degree_law(f in quartic_strategy()) {
        let h = f.hessian_det();
        prop_assume!(!h.is_zero());
        prop_assert_eq!(h.degree(), 3 * (f.degree() - 2));
    }

    #[test]
    fn normalization_idempotent_bitwise(raw in [complex_strategy(3.0), complex_strategy(3.0), complex_strategy(3.0)]) {
        prop_assume!(raw.iter().any(|x| x.norm() > 1e-6));
        let p = ProjPoint::new(raw).unwrap();
        let q = ProjPoint::new(p.coords()).unwrap();
        prop_assert_eq!(p.coords(), q.coords());
    }

    /// Planted common root: the resultant vanishes (relatively) at the
    /// kept coordinate of the root.
    #[test]
    fn resultant_soundness_on_planted_root(
        ru in complex_strategy(1.5), rv in complex_strategy(1.5),
        a in proptest::collection::vec(complex_strategy(2.0), 6),
        b in proptest::collection::vec(complex_strategy(2.0), 6),
    ) {
        // f = alpha (u - ru) + beta (v - rv) with random linear alpha, beta
        let lin = |coeffs: &[C64]| {
            BiPoly::new(vec![
                vec![coeffs[0], coeffs[1]],
                vec![coeffs[2], c(0.0, 0.0)],
            ])
        };
        let shift_u = BiPoly::new(vec![vec![-ru, c(0.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]);
        let shift_v = BiPoly::new(vec![vec![-rv, c(1.0, 0.0)]]);
        let build = |coeffs: &[C64]| {
            let alpha = lin(&coeffs[0..3]);
            let beta = lin(&coeffs[3..6]);
            bipoly_mul_add(&alpha, &shift_u, &beta, &shift_v)
        };
        let f = build(&a);
        let g = build(&b);
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assume!(f.v_degree() >= 1 || g.v_degree() >= 1);
        let r = match polyalg::resultant_eliminating_v(&f, &g, 1e-12) {
            Ok(r) => r,
            Err(_) => return Ok(()),
        };
        prop_assume!(!r.is_zero());
        let val = r.eval(ru).norm();
        prop_assert!(val <= 1e-6 * r.eval_scale(ru), "resultant at planted root: {val:.3e}");
    }

    /// Polishing from a perturbed seed never ends up worse than the seed.
    #[test]
    fn polish_never_increases_residual(
        ru in complex_strategy(1.0), rv in complex_strategy(1.0),
        a in proptest::collection::vec(complex_strategy(2.0), 6),
        b in proptest::collection::vec(complex_strategy(2.0), 6),
        du in complex_strategy(0.01), dv in complex_strategy(0.01),
    ) {
        let lin = |coeffs: &[C64]| {
            BiPoly::new(vec![
                vec![coeffs[0], coeffs[1]],
                vec![coeffs[2], c(0.0, 0.0)],
            ])
        };
        let shift_u = BiPoly::new(vec![vec![-ru, c(0.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]);
        let shift_v = BiPoly::new(vec![vec![-rv, c(1.0, 0.0)]]);
        let f = bipoly_mul_add(&lin(&a[0..3]), &shift_u, &lin(&a[3..6]), &shift_v);
        let g = bipoly_mul_add(&lin(&b[0..3]), &shift_u, &lin(&b[3..6]), &shift_v);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let seed = (ru + du, rv + dv);
        let seed_res = {
            use quartics::roots::Bivariate;
            (f.value(seed.0, seed.1).norm() / f.scale(seed.0, seed.1))
                .max(g.value(seed.0, seed.1).norm() / g.scale(seed.0, seed.1))
        };
        if let Ok(out) = roots::polish_pair(&f, &g, seed, 1e-12) {
            prop_assert!(out.residual <= seed_res * (1.0 + 1e-12));
        }
    }

    /// Clustering never loses or invents values.
    #[test]
    fn cluster_multiplicities_account_for_everything(
        values in proptest::collection::vec(complex_strategy(5.0), 1..40)
    ) {
        if let Ok(clusters) = roots::cluster_complex(&values, 1e-6) {
            let total: usize = clusters.iter().map(|cl| cl.multiplicity).sum();
            prop_assert_eq!(total, values.len());
        }
    }
}

/// alpha * su + beta * sv for bivariate polynomials.
fn bipoly_mul_add(alpha: &BiPoly, su: &BiPoly, beta: &BiPoly, sv: &BiPoly) -> BiPoly {
    let du = (alpha.u_degree() + su.u_degree()).max(beta.u_degree() + sv.u_degree());
    let dv = (alpha.v_degree() + su.v_degree()).max(beta.v_degree() + sv.v_degree());
    let mut grid = vec![vec![c(0.0, 0.0); dv + 1]; du + 1];
    let acc = |p: &BiPoly, q: &BiPoly, grid: &mut Vec<Vec<C64>>| {
        for i in 0..=p.u_degree() {
            for j in 0..=p.v_degree() {
                for k in 0..=q.u_degree() {
                    for l in 0..=q.v_degree() {
                        grid[i + k][j + l] += p.coeff(i, j) * q.coeff(k, l);
                    }
                }
            }
        }
    };
    acc(alpha, su, &mut grid);
    acc(beta, sv, &mut grid);
    BiPoly::new(grid)
}

/// Root reconstruction: polynomials with well-separated roots rebuild
/// their coefficients from the found roots to 1e-6 relative.
#[test]
fn aberth_reconstructs_well_separated_roots() {
    let mut rng_state = 0x243f6a8885a308d3u64;
    let mut next = move || {
        // xorshift; plenty for test point generation
        rng_state ^= rng_state << 13;
        rng_state ^= rng_state >> 7;
        rng_state ^= rng_state << 17;
        (rng_state >> 11) as f64 / (1u64 << 53) as f64
    };
    for degree in [4usize, 9, 16, 24] {
        // jittered unit-circle roots: well separated and well conditioned
        // (a filled grid of 24 roots is Wilkinson territory, where 1e-6
        // recovery from double-precision coefficients is unattainable)
        let roots_true: Vec<C64> = (0..degree)
            .map(|k| {
                let theta =
                    2.0 * std::f64::consts::PI * k as f64 / degree as f64 + 0.1 * (next() - 0.5);
                let r = 0.85 + 0.3 * next();
                C64::from_polar(r, theta)
            })
            .collect();
        let lead = c(1.0 + next(), next());
        let p = UniPoly::from_roots(lead, &roots_true);
        let found = roots::aberth_roots(&p, 1e-12).unwrap();
        assert_eq!(found.len(), degree);
        for r in &roots_true {
            let best = found
                .iter()
                .map(|f| (f - r).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(
                best < 1e-6,
                "degree {degree}: root {r} missed by {best:.2e}"
            );
        }
        let rebuilt = UniPoly::from_roots(lead, &found);
        let max = p.coeffs().iter().map(|x| x.norm()).fold(0.0, f64::max);
        for (a, b) in p.coeffs().iter().zip(rebuilt.coeffs()) {
            assert!(
                (a - b).norm() <= 1e-6 * max,
                "coefficient drift {:.2e}",
                (a - b).norm()
            );
        }
    }
}

/// Identical inputs produce bitwise-identical outputs.
#[test]
fn pipelines_are_deterministic() {
    let tols = Tolerances::default();
    let f = catalog::pencil(c(0.5, 0.5));
    let h = f.hessian_det();
    let r = polyalg::eliminate(&f, &h, Axis::Z, Axis::X).unwrap();
    let roots_a = roots::aberth_roots(&r, tols.polish).unwrap();
    let roots_b = roots::aberth_roots(&r, tols.polish).unwrap();
    assert_eq!(roots_a.len(), roots_b.len());
    for (a, b) in roots_a.iter().zip(&roots_b) {
        assert!(
            a.re == b.re && a.im == b.im,
            "root finder not bitwise deterministic"
        );
    }
    let pts_a = projgeom::intersect(&f, &h, &tols).unwrap();
    let pts_b = projgeom::intersect(&f, &h, &tols).unwrap();
    assert_eq!(pts_a.len(), pts_b.len());
    for (a, b) in pts_a.iter().zip(&pts_b) {
        assert_eq!(a.multiplicity, b.multiplicity);
        for (ca, cb) in a.point.coords().iter().zip(b.point.coords()) {
            assert!(
                ca.re == cb.re && ca.im == cb.im,
                "intersection not bitwise deterministic"
            );
        }
    }
}

/// Chart independence: running the intersection after a fixed projective
/// change of coordinates lands on the same point set.
#[test]
fn intersection_is_chart_independent() {
    let tols = Tolerances::default();
    let f = catalog::pencil(c(0.5, 0.5));
    let h = f.hessian_det();
    let base = projgeom::intersect(&f, &h, &tols).unwrap();

    // a fixed well-conditioned change of coordinates
    let a = [
        [c(0.8, 0.1), c(0.2, -0.3), c(-0.1, 0.4)],
        [c(-0.3, 0.2), c(0.9, 0.0), c(0.3, 0.1)],
        [c(0.1, -0.2), c(-0.2, 0.3), c(0.7, -0.1)],
    ];
    let fr = f.compose(&a);
    let hr = h.compose(&a);
    let rotated = projgeom::intersect(&fr, &hr, &tols).unwrap();
    assert_eq!(base.len(), rotated.len());
    let mut total = 0usize;
    for ip in &rotated {
        let q = ip.point.coords();
        let mapped = ProjPoint::new([
            a[0][0] * q[0] + a[0][1] * q[1] + a[0][2] * q[2],
            a[1][0] * q[0] + a[1][1] * q[1] + a[1][2] * q[2],
            a[2][0] * q[0] + a[2][1] * q[1] + a[2][2] * q[2],
        ])
        .unwrap();
        let hit = base
            .iter()
            .find(|b| b.point.dist(&mapped) <= 10.0 * tols.cluster_eps)
            .expect("rotated point missing from the base set");
        assert_eq!(hit.multiplicity, ip.multiplicity);
        total += ip.multiplicity;
    }
    assert_eq!(total, 24);
}

/// The hessian covariance identity, checked coefficientwise rather than at
/// sample points.
#[test]
fn hessian_covariance_coefficientwise() {
    let f = catalog::pencil(c(-3.0, 0.0));
    let a = [
        [c(1.1, 0.2), c(-0.4, 0.3), c(0.2, -0.5)],
        [c(0.3, -0.1), c(0.8, 0.4), c(-0.2, 0.2)],
        [c(-0.5, 0.3), c(0.1, -0.2), c(0.9, 0.1)],
    ];
    let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    let lhs = f.compose(&a).hessian_det();
    let rhs = f.hessian_det().compose(&a).scale(det * det);
    let diff = lhs.sub(&rhs);
    assert!(
        diff.max_coeff_modulus() <= 1e-10 * rhs.max_coeff_modulus(),
        "covariance violated coefficientwise: {:.3e}",
        diff.max_coeff_modulus()
    );
}

/// No point of a generic member carries a stabilizer of order divisible
/// by four: checked on all Weierstrass and ramification points of C_1.
#[test]
fn no_stabilizer_of_order_divisible_by_four() {
    let tols = Tolerances::default();
    let f = catalog::pencil(c(1.0, 0.0));
    let group = catalog::pencil_group(&tols).unwrap();
    let wp = quartics::weierstrass::weierstrass_points(&f, &tols).unwrap();
    let mut pts: Vec<ProjPoint> = wp.into_iter().map(|(p, _)| p).collect();
    for (i, a) in group.elements().iter().enumerate() {
        if i == 0 {
            continue;
        }
        for p in quartics::autgroup::fixed_points_on_curve(a, &f, &tols)
            .unwrap()
            .points
        {
            if !pts.iter().any(|q| q.dist(&p) <= tols.cluster_eps) {
                pts.push(p);
            }
        }
    }
    for p in &pts {
        let stab = group
            .elements()
            .iter()
            .filter(|a| a.apply(p).dist(p) <= 10.0 * tols.cluster_eps)
            .count();
        assert!(
            stab % 4 != 0,
            "stabilizer of order {stab} at {:?}",
            p.coords()
        );
    }
}

/// Simple points stay separate under clustering: the 24 Weierstrass points
/// of a generic member give 24 singleton clusters.
#[test]
fn cluster_points_of_generic_member_are_singletons() {
    let tols = Tolerances::default();
    let f = catalog::pencil(c(1.0, 0.0));
    let wp = quartics::weierstrass::weierstrass_points(&f, &tols).unwrap();
    let pts: Vec<ProjPoint> = wp.into_iter().map(|(p, _)| p).collect();
    let clusters = projgeom::cluster_points(&pts, tols.cluster_eps).unwrap();
    assert_eq!(clusters.len(), 24);
    assert!(clusters.iter().all(|cl| cl.multiplicity == 1));
}

/// Polishing an eliminant-derived seed on the t = 3 member converges onto
/// one of its closed-form hyperflexes (all coordinates fourth roots of
/// unity).
#[test]
fn polish_lands_on_c3_hyperflex() {
    let tols = Tolerances::default();
    let f = catalog::build_curve(&catalog::CurveId::C3);
    let h = f.hessian_det();
    let fb = f.dehomogenize(Axis::Z);
    let hb = h.dehomogenize(Axis::Z);
    // seed near the hyperflex [1 : i : 1], offset as an eliminant root
    // with a few digits of error would be
    let seed = (c(1.0 + 3e-5, -2e-5), c(1e-5, 1.0 - 4e-5));
    let out = roots::polish_pair(&fb, &hb, seed, tols.polish).unwrap();
    let (u, v) = out.point;
    assert!(out.residual <= 1e-10, "residual {:.2e}", out.residual);
    assert!((u - c(1.0, 0.0)).norm() < 1e-5, "u = {u}");
    assert!((v - c(0.0, 1.0)).norm() < 1e-5, "v = {v}");
}

/// Clustering semantics on point lists: a doubled point list clusters to
/// the distinct points with multiplicity two.
#[test]
fn cluster_points_counts_doubled_fermat_points() {
    let tols = Tolerances::default();
    let f = catalog::build_curve(&catalog::CurveId::Fermat);
    let wp = quartics::weierstrass::weierstrass_points(&f, &tols).unwrap();
    assert_eq!(wp.len(), 12);
    let mut doubled: Vec<ProjPoint> = Vec::new();
    for (p, _) in &wp {
        let c0 = p.coords();
        doubled.push(*p);
        // a perturbed second copy, as a polishing pipeline would produce
        doubled.push(
            ProjPoint::new([
                c0[0] + c(1e-9, -1e-9),
                c0[1] + c(-1e-9, 1e-9),
                c0[2] + c(1e-9, 1e-9),
            ])
            .unwrap(),
        );
    }
    let clusters = projgeom::cluster_points(&doubled, tols.cluster_eps).unwrap();
    assert_eq!(clusters.len(), 12);
    assert!(clusters.iter().all(|cl| cl.multiplicity == 2));
}
