//! Univariate complex root finding, two-equation Newton polishing and
//! multiplicity clustering: the numeric kernel under every intersection.
//!
//! Everything here is deterministic: fixed initial-guess layout, fixed
//! iteration order, no time-based seeding.

use crate::error::{Error, Result};
use crate::polyalg::UniPoly;
use crate::C64;

/// Fixed irrational rotation applied to the initial-guess circle so the
/// guesses never align with the symmetric root patterns of the curves in
/// scope.
const GUESS_ROTATION: f64 = 0.81763871263872;

const MAX_SWEEPS: u32 = 400;

/// A group of near-coincident values standing for one multiple root.
#[derive(Debug, Clone)]
pub struct RootCluster<T> {
    pub center: T,
    pub multiplicity: usize,
    pub radius: f64,
    /// Largest certified residual among the members.
    pub residual: f64,
    /// Indices of the input values collected into this cluster.
    pub members: Vec<usize>,
}

/// Simultaneous Aberth–Ehrlich iteration. Returns `deg p` values, with
/// repetition (as near-coincident values) for multiple roots.
pub fn aberth_roots(p: &UniPoly, tol: f64) -> Result<Vec<C64>> {
    match aberth_with_rotation(p, tol, GUESS_ROTATION) {
        Err(Error::NotConverged { .. }) => {
            // one retry from a different deterministic initialization
            aberth_with_rotation(p, tol, GUESS_ROTATION * 2.391)
        }
        other => other,
    }
}

pub fn aberth_with_rotation(p: &UniPoly, tol: f64, rotation: f64) -> Result<Vec<C64>> {
    if p.is_zero() {
        return Err(Error::InvalidInput(
            "root finding on the zero polynomial".into(),
        ));
    }
    let n = p.degree();
    if n == 0 {
        return Err(Error::InvalidInput("root finding on a constant".into()));
    }
    let coeffs = p.coeffs();
    let lead = p.leading();
    if n == 1 {
        return Ok(vec![-coeffs[0] / coeffs[1]]);
    }
    let dp = p.derivative();

    // Inclusion radius for the initial circle: the smaller of the Cauchy
    // and Fujiwara bounds, capped so a relatively tiny leading coefficient
    // (degree drop at the noise floor) cannot blow the guesses past
    // overflow territory
    let cauchy = coeffs[..n]
        .iter()
        .map(|c| (c / lead).norm())
        .fold(0.0, f64::max);
    let fujiwara = 2.0
        * (1..=n)
            .map(|k| (coeffs[n - k] / lead).norm().powf(1.0 / k as f64))
            .fold(0.0, f64::max);
    let radius = 1.0 + cauchy.min(fujiwara).min(1e8);
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + rotation;
            C64::from_polar(radius, theta)
        })
        .collect();
    let mut frozen = vec![false; n];
    let mut prev_correction = vec![f64::INFINITY; n];

    // Residuals at the level of evaluation round-off mean the iterate
    // cannot improve further once its corrections stop shrinking (the
    // signature of a multiple root grinding against the noise floor).
    let residual_floor = |scale: f64| 64.0 * f64::EPSILON * scale;

    for sweep in 0..MAX_SWEEPS {
        let mut all_done = true;
        for k in 0..n {
            if frozen[k] {
                continue;
            }
            if !z[k].re.is_finite() || !z[k].im.is_finite() {
                // overflow escape: restart this iterate deterministically
                let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64)
                    + rotation * (sweep as f64 + 2.0);
                z[k] = C64::from_polar(radius * 0.5, theta);
                all_done = false;
                continue;
            }
            let pv = p.eval(z[k]);
            let scale = p.eval_scale(z[k]);
            let at_floor = pv.norm() <= residual_floor(scale);
            let dv = dp.eval(z[k]);
            let newton = if dv.norm() > f64::MIN_POSITIVE {
                pv / dv
            } else if at_floor {
                frozen[k] = true;
                continue;
            } else {
                // derivative collapsed: nudge deterministically and retry
                z[k] += C64::from_polar(radius * 1e-6, (k as f64) + 0.5);
                all_done = false;
                continue;
            };
            let mut s = C64::new(0.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j == k {
                    continue;
                }
                let d = z[k] - zj;
                if d.norm_sqr() > 0.0 {
                    s += C64::new(1.0, 0.0) / d;
                }
            }
            let denom = C64::new(1.0, 0.0) - newton * s;
            let w = if denom.norm() > 1e-12 {
                newton / denom
            } else {
                newton
            };
            let stagnating = w.norm() >= 0.5 * prev_correction[k];
            prev_correction[k] = w.norm();
            if at_floor && stagnating {
                // multiple root: the iterate is as close as round-off allows
                frozen[k] = true;
                continue;
            }
            z[k] -= w;
            if w.norm() <= tol * z[k].norm().max(1.0) {
                frozen[k] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }

    // certify: residual within round-off at the value's own magnitude
    // scale, plus a derivative-scaled term that covers clusters collapsing
    // onto the origin (where the plain scale vanishes with the root)
    for &zk in &z {
        let finite = zk.re.is_finite() && zk.im.is_finite();
        let scale = p.eval_scale(zk);
        let bound = residual_floor(scale) + 100.0 * tol * dp.eval(zk).norm() * zk.norm().max(1.0);
        if !finite || p.eval(zk).norm() > bound.max(1e-9 * scale) {
            return Err(Error::NotConverged {
                iterations: MAX_SWEEPS,
                best: z,
            });
        }
    }
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(z)
}

/// A bivariate function with partial derivatives and a magnitude scale,
/// as required by [`polish_pair`].
pub trait Bivariate {
    fn value(&self, u: C64, v: C64) -> C64;
    fn partial_u(&self, u: C64, v: C64) -> C64;
    fn partial_v(&self, u: C64, v: C64) -> C64;
    /// Magnitude scale used to turn residuals into relative residuals.
    fn scale(&self, u: C64, v: C64) -> f64;
}

#[derive(Debug, Clone, Copy)]
pub struct Polished {
    pub point: (C64, C64),
    /// Largest relative residual of the two equations at `point`.
    pub residual: f64,
    /// Set when the Jacobian went near-singular (a multiple point) and the
    /// iteration fell back to damped Gauss-Newton.
    pub singular: bool,
    pub iterations: u32,
}

/// Newton iteration on the 2x2 system `(f, g) = 0` from `seed`.
///
/// Never returns an iterate worse than the seed. Signals divergence when the
/// step keeps growing for five consecutive iterations.
pub fn polish_pair<A: Bivariate + ?Sized, B: Bivariate + ?Sized>(
    f: &A,
    g: &B,
    seed: (C64, C64),
    tol: f64,
) -> Result<Polished> {
    let residual_at = |u: C64, v: C64| -> f64 {
        let rf = f.value(u, v).norm() / f.scale(u, v);
        let rg = g.value(u, v).norm() / g.scale(u, v);
        rf.max(rg)
    };
    let (mut u, mut v) = seed;
    let mut best = Polished {
        point: (u, v),
        residual: residual_at(u, v),
        singular: false,
        iterations: 0,
    };
    let mut singular_seen = false;
    let mut prev_step = f64::INFINITY;
    let mut growth_streak = 0u32;

    for it in 1..=60 {
        let fv = f.value(u, v);
        let gv = g.value(u, v);
        let fu_ = f.partial_u(u, v);
        let fv_ = f.partial_v(u, v);
        let gu_ = g.partial_u(u, v);
        let gv_ = g.partial_v(u, v);
        let det = fu_ * gv_ - fv_ * gu_;
        let jscale = (fu_.norm() + fv_.norm()) * (gu_.norm() + gv_.norm());
        let (mut du, mut dv) = if det.norm() > 1e-10 * jscale.max(f64::MIN_POSITIVE) {
            // Cramer solve of J d = -r
            ((-fv * gv_ + gv * fv_) / det, (-gv * fu_ + fv * gu_) / det)
        } else {
            singular_seen = true;
            // damped Gauss-Newton: (J^H J + lambda I) d = -J^H r
            let a = fu_.conj() * fu_ + gu_.conj() * gu_;
            let b = fu_.conj() * fv_ + gu_.conj() * gv_;
            let c = fv_.conj() * fu_ + gv_.conj() * gu_;
            let d = fv_.conj() * fv_ + gv_.conj() * gv_;
            let lambda = 1e-8 * (a.re + d.re).max(f64::MIN_POSITIVE);
            let a = a + lambda;
            let d = d + lambda;
            let rhs0 = -(fu_.conj() * fv + gu_.conj() * gv);
            let rhs1 = -(fv_.conj() * fv + gv_.conj() * gv);
            let det2 = a * d - b * c;
            if det2.norm() <= f64::MIN_POSITIVE {
                break;
            }
            ((rhs0 * d - b * rhs1) / det2, (a * rhs1 - rhs0 * c) / det2)
        };
        // keep steps bounded so a bad Jacobian cannot fling the iterate away
        let cap = 1.0 + u.norm().max(v.norm());
        let step = du.norm().max(dv.norm());
        if step > cap {
            let shrink = C64::new(cap / step, 0.0);
            du *= shrink;
            dv *= shrink;
        }
        u += du;
        v += dv;
        let res = residual_at(u, v);
        if res < best.residual {
            best = Polished {
                point: (u, v),
                residual: res,
                singular: singular_seen,
                iterations: it,
            };
        }
        if res < tol {
            break;
        }
        if step > prev_step {
            growth_streak += 1;
            if growth_streak >= 5 {
                return Err(Error::Diverged {
                    iterations: it,
                    last: (u, v),
                    residual: res,
                });
            }
        } else {
            growth_streak = 0;
        }
        prev_step = step;
    }
    // a multiple point is one where the Jacobian degenerates at the
    // solution, whether or not the damped branch was ever taken
    let (bu, bv) = best.point;
    let det = f.partial_u(bu, bv) * g.partial_v(bu, bv) - f.partial_v(bu, bv) * g.partial_u(bu, bv);
    let jscale = (f.partial_u(bu, bv).norm() + f.partial_v(bu, bv).norm())
        * (g.partial_u(bu, bv).norm() + g.partial_v(bu, bv).norm());
    best.singular = singular_seen || det.norm() <= 1e-4 * jscale.max(f64::MIN_POSITIVE);
    Ok(best)
}

/// Newton refinement of an m-fold root: a root of multiplicity m is a
/// simple root of the (m-1)-th derivative, where Newton recovers full
/// precision instead of the square-root-of-noise accuracy of the cluster.
pub fn refine_root(p: &UniPoly, center: C64, multiplicity: usize) -> C64 {
    if multiplicity <= 1 {
        return center;
    }
    let mut dr = p.clone();
    for _ in 1..multiplicity {
        dr = dr.derivative();
    }
    let ddr = dr.derivative();
    let mut z = center;
    for _ in 0..8 {
        let dv = ddr.eval(z);
        if dv.norm() <= f64::MIN_POSITIVE {
            break;
        }
        let step = dr.eval(z) / dv;
        z -= step;
        if step.norm() <= 1e-15 * z.norm().max(1.0) {
            break;
        }
    }
    // keep the refinement only if it stayed in the cluster's neighborhood
    if (z - center).norm() <= 1e-3 * center.norm().max(1.0) {
        z
    } else {
        center
    }
}

/// Greedy single-linkage dedupe of complex values at relative distance
/// `eps`: returns group means in order of first appearance, without the
/// ambiguity guards of [`cluster_by`].
pub fn dedupe_complex(values: &[C64], eps: f64) -> Vec<C64> {
    let mut groups: Vec<(C64, usize)> = Vec::new(); // (sum, count)
    for &v in values {
        let mut placed = false;
        for (sum, count) in groups.iter_mut() {
            let mean = *sum / C64::new(*count as f64, 0.0);
            if (mean - v).norm() <= eps * mean.norm().max(v.norm()).max(1.0) {
                *sum += v;
                *count += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            groups.push((v, 1));
        }
    }
    groups
        .into_iter()
        .map(|(sum, count)| sum / C64::new(count as f64, 0.0))
        .collect()
}

/// Single-linkage clustering of complex values at relative distance `eps`.
pub fn cluster_complex(values: &[C64], eps: f64) -> Result<Vec<RootCluster<C64>>> {
    let dist = |a: &C64, b: &C64| (a - b).norm() / a.norm().max(b.norm()).max(1.0);
    cluster_by(values, eps, dist, |members: &[&C64]| {
        let mut mean = C64::new(0.0, 0.0);
        for m in members {
            mean += **m;
        }
        mean / C64::new(members.len() as f64, 0.0)
    })
}

/// Single-linkage clustering of coordinate pairs, e.g. polished affine
/// intersection points; multiplicity is the cluster cardinality.
pub fn cluster_pairs(values: &[(C64, C64)], eps: f64) -> Result<Vec<RootCluster<(C64, C64)>>> {
    let dist = |a: &(C64, C64), b: &(C64, C64)| {
        let scale =
            a.0.norm()
                .max(a.1.norm())
                .max(b.0.norm())
                .max(b.1.norm())
                .max(1.0);
        ((a.0 - b.0).norm().max((a.1 - b.1).norm())) / scale
    };
    cluster_by(values, eps, dist, |members: &[&(C64, C64)]| {
        let mut mu = C64::new(0.0, 0.0);
        let mut mv = C64::new(0.0, 0.0);
        for m in members {
            mu += m.0;
            mv += m.1;
        }
        let n = C64::new(members.len() as f64, 0.0);
        (mu / n, mv / n)
    })
}

/// Generic single-linkage clustering with user-supplied metric and
/// center-of-mass. Clusters are reported in order of their first member.
pub fn cluster_by<T: Clone, D, M>(
    values: &[T],
    eps: f64,
    dist: D,
    mean: M,
) -> Result<Vec<RootCluster<T>>>
where
    D: Fn(&T, &T) -> f64,
    M: Fn(&[&T]) -> T,
{
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = i;
        while parent[c] != c {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if dist(&values[i], &values[j]) <= eps {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[rj.max(ri)] = rj.min(ri);
                }
            }
        }
    }
    let mut order: Vec<usize> = Vec::new();
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match order.iter().position(|&x| x == r) {
            Some(k) => clusters[k].push(i),
            None => {
                order.push(r);
                clusters.push(vec![i]);
            }
        }
    }
    let mut out = Vec::with_capacity(clusters.len());
    for members in &clusters {
        let refs: Vec<&T> = members.iter().map(|&i| &values[i]).collect();
        let center = mean(&refs);
        let radius = refs.iter().map(|m| dist(&center, m)).fold(0.0, f64::max);
        if radius > 2.0 * eps {
            return Err(Error::ToleranceAmbiguity { gap: radius, eps });
        }
        out.push(RootCluster {
            center,
            multiplicity: members.len(),
            radius,
            residual: 0.0,
            members: members.clone(),
        });
    }
    // clusters closer than 10 eps to each other make multiplicities
    // tolerance-dependent; surface that instead of guessing
    for i in 0..out.len() {
        for j in (i + 1)..out.len() {
            let g = dist(&out[i].center, &out[j].center);
            if g < 10.0 * eps {
                return Err(Error::ToleranceAmbiguity { gap: g, eps });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::BiPoly;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn aberth_quadratic_pure_imaginary() {
        // z^2 + 1
        let p = UniPoly::from_raw(vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let roots = aberth_roots(&p, 1e-12).unwrap();
        assert_eq!(roots.len(), 2);
        for expect in [c(0.0, -1.0), c(0.0, 1.0)] {
            assert!(roots.iter().any(|r| (r - expect).norm() < 1e-10));
        }
    }

    #[test]
    fn aberth_triple_root() {
        // (z - 1)^3
        let p = UniPoly::from_roots(c(1.0, 0.0), &[c(1.0, 0.0); 3]);
        let roots = aberth_roots(&p, 1e-12).unwrap();
        assert_eq!(roots.len(), 3);
        for r in roots {
            assert!((r - c(1.0, 0.0)).norm() < 1e-4, "triple root off: {r}");
        }
    }

    #[test]
    fn aberth_well_separated_reconstruction() {
        let roots = [c(2.0, 0.0), c(-1.0, 1.0), c(0.0, -3.0), c(4.5, 2.5)];
        let p = UniPoly::from_roots(c(2.0, -1.0), &roots);
        let found = aberth_roots(&p, 1e-12).unwrap();
        for r in roots {
            assert!(
                found.iter().any(|f| (f - r).norm() < 1e-9),
                "missing root {r}"
            );
        }
    }

    #[test]
    fn aberth_rejects_constants() {
        assert!(aberth_roots(&UniPoly::constant(c(3.0, 0.0)), 1e-12).is_err());
        assert!(aberth_roots(&UniPoly::zero(), 1e-12).is_err());
    }

    fn bipoly(rows: &[&[(f64, f64)]]) -> BiPoly {
        BiPoly::new(
            rows.iter()
                .map(|r| r.iter().map(|&(re, im)| c(re, im)).collect())
                .collect(),
        )
    }

    #[test]
    fn polish_circle_line() {
        // f = u^2 + v^2 - 1, g = u - v, seed (0.7, 0.7)
        let f = bipoly(&[
            &[(-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
            &[(0.0, 0.0)],
            &[(1.0, 0.0)],
        ]);
        let g = bipoly(&[&[(0.0, 0.0), (-1.0, 0.0)], &[(1.0, 0.0)]]);
        let out = polish_pair(&f, &g, (c(0.7, 0.0), c(0.7, 0.0)), 1e-12).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((out.point.0 - c(s, 0.0)).norm() < 1e-10);
        assert!((out.point.1 - c(s, 0.0)).norm() < 1e-10);
        assert!(out.residual < 1e-12);
        assert!(!out.singular);
    }

    #[test]
    fn polish_tangency_flags_singular_jacobian() {
        // f = v - u^2, g = v: double contact at the origin
        let f = bipoly(&[&[(0.0, 0.0), (1.0, 0.0)], &[(0.0, 0.0)], &[(-1.0, 0.0)]]);
        let g = bipoly(&[&[(0.0, 0.0), (1.0, 0.0)]]);
        let out = polish_pair(&f, &g, (c(0.1, 0.0), c(0.01, 0.0)), 1e-12).unwrap();
        assert!(out.point.0.norm() < 1e-5, "u = {}", out.point.0);
        assert!(out.point.1.norm() < 1e-8, "v = {}", out.point.1);
        assert!(out.singular, "tangency must flag the singular Jacobian");
    }

    #[test]
    fn polish_never_worse_than_seed() {
        let f = bipoly(&[
            &[(-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
            &[(0.0, 0.0)],
            &[(1.0, 0.0)],
        ]);
        let g = bipoly(&[&[(0.0, 0.0), (-1.0, 0.0)], &[(1.0, 0.0)]]);
        let s0 = std::f64::consts::FRAC_1_SQRT_2 - 1e-8;
        let seed = (c(s0, 0.0), c(s0, 0.0));
        let seed_res = {
            use super::Bivariate;
            (f.value(seed.0, seed.1).norm() / f.scale(seed.0, seed.1))
                .max(g.value(seed.0, seed.1).norm() / g.scale(seed.0, seed.1))
        };
        let out = polish_pair(&f, &g, seed, 1e-12).unwrap();
        assert!(out.residual <= seed_res);
    }

    #[test]
    fn cluster_counts_multiplicities() {
        let vals = [c(1.0, 0.0), c(1.0, 1e-9), c(5.0, 0.0)];
        let cl = cluster_complex(&vals, 1e-6).unwrap();
        assert_eq!(cl.len(), 2);
        assert_eq!(cl[0].multiplicity, 2);
        assert!((cl[0].center - c(1.0, 0.0)).norm() < 1e-8);
        assert_eq!(cl[1].multiplicity, 1);
    }

    #[test]
    fn cluster_flags_ambiguity() {
        let vals = [c(1.0, 0.0), c(1.0 + 3e-6, 0.0)];
        match cluster_complex(&vals, 1e-6) {
            Err(Error::ToleranceAmbiguity { .. }) => {}
            other => panic!("expected tolerance ambiguity, got {other:?}"),
        }
    }

    #[test]
    fn cluster_multiplicities_sum_to_input_length() {
        let vals: Vec<C64> = (0..24)
            .map(|k| c((k % 6) as f64, (k / 6) as f64 * 2.0))
            .collect();
        let cl = cluster_complex(&vals, 1e-6).unwrap();
        let total: usize = cl.iter().map(|c| c.multiplicity).sum();
        assert_eq!(total, vals.len());
    }
}
