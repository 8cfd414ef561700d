//! Projective points, chart management, Bezout-complete curve intersection
//! with multiplicities, smoothness testing, tangent lines and contact
//! orders.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::polyalg::{self, Axis, BiPoly, HomPoly3, UniPoly};
use crate::roots::{self, Bivariate};
use crate::C64;

/// Relative modulus difference under which two coordinates count as tied
/// when picking the normalization pivot.
const TIE_REL: f64 = 1e-12;

/// A point of the complex projective plane, stored normalized: the
/// coordinate of largest modulus equals exactly 1 (ties broken by last
/// index), and the remaining coordinates are divided through by it.
#[derive(Debug, Clone, Copy)]
pub struct ProjPoint {
    coords: [C64; 3],
}

impl ProjPoint {
    pub fn new(raw: [C64; 3]) -> Result<ProjPoint> {
        let norm: f64 = raw.iter().map(|c| c.norm_sqr()).sum();
        if !norm.is_finite() || norm <= 0.0 {
            return Err(Error::InvalidInput(
                "projective point needs a nonzero finite coordinate".into(),
            ));
        }
        Ok(ProjPoint {
            coords: Self::normalize(raw),
        })
    }

    fn normalize(raw: [C64; 3]) -> [C64; 3] {
        let n = [raw[0].norm_sqr(), raw[1].norm_sqr(), raw[2].norm_sqr()];
        let max = n[0].max(n[1]).max(n[2]);
        let mut pivot = 0;
        for (i, &v) in n.iter().enumerate() {
            if v >= max * (1.0 - TIE_REL) {
                pivot = i;
            }
        }
        let p = raw[pivot];
        [raw[0] / p, raw[1] / p, raw[2] / p]
    }

    pub fn coords(&self) -> [C64; 3] {
        self.coords
    }

    /// Fubini–Study sine distance between projective points: 0 for equal
    /// points, invariant under rescaling of either argument.
    pub fn dist(&self, other: &ProjPoint) -> f64 {
        proj_dist(self.coords, other.coords)
    }

    /// Deterministic ordering key: real and imaginary parts of the
    /// normalized coordinates rounded to 1e-9.
    pub fn order_key(&self) -> [i64; 6] {
        let r = |x: f64| (x / 1e-9).round() as i64;
        [
            r(self.coords[0].re),
            r(self.coords[0].im),
            r(self.coords[1].re),
            r(self.coords[1].im),
            r(self.coords[2].re),
            r(self.coords[2].im),
        ]
    }
}

pub(crate) fn proj_dist(a: [C64; 3], b: [C64; 3]) -> f64 {
    let na: f64 = a.iter().map(|c| c.norm_sqr()).sum();
    let nb: f64 = b.iter().map(|c| c.norm_sqr()).sum();
    let herm: C64 = (0..3).map(|i| a[i] * b[i].conj()).sum();
    (1.0 - herm.norm_sqr() / (na * nb)).max(0.0).sqrt()
}

/// A line `a x + b y + c z = 0`, coefficients normalized like a point.
#[derive(Debug, Clone, Copy)]
pub struct ProjLine {
    coeffs: ProjPoint,
}

impl ProjLine {
    pub fn new(raw: [C64; 3]) -> Result<ProjLine> {
        Ok(ProjLine {
            coeffs: ProjPoint::new(raw)?,
        })
    }

    pub fn coeffs(&self) -> [C64; 3] {
        self.coeffs.coords()
    }

    pub fn eval(&self, p: &ProjPoint) -> C64 {
        let c = self.coeffs.coords();
        let v = p.coords();
        c[0] * v[0] + c[1] * v[1] + c[2] * v[2]
    }

    /// The defining degree-1 form.
    pub fn to_poly(&self) -> HomPoly3 {
        let c = self.coeffs.coords();
        HomPoly3::from_terms(1, [([1, 0, 0], c[0]), ([0, 1, 0], c[1]), ([0, 0, 1], c[2])])
    }

    /// Two independent points spanning the line, via cross products with
    /// the coordinate directions.
    pub fn span(&self) -> [[C64; 3]; 2] {
        let l = self.coeffs.coords();
        let candidates = [
            [C64::new(0.0, 0.0), l[2], -l[1]],
            [-l[2], C64::new(0.0, 0.0), l[0]],
            [l[1], -l[0], C64::new(0.0, 0.0)],
        ];
        let norm = |v: &[C64; 3]| -> f64 { v.iter().map(|c| c.norm_sqr()).sum() };
        let mut order: Vec<usize> = (0..3).collect();
        order.sort_by(|&i, &j| {
            norm(&candidates[j])
                .partial_cmp(&norm(&candidates[i]))
                .unwrap()
        });
        let first = candidates[order[0]];
        // the remaining candidate most independent from the first
        let mut second = candidates[order[1]];
        if proj_dist(first, second) < 1e-6 {
            second = candidates[order[2]];
        }
        [first, second]
    }
}

/// One certified point of a complete intersection.
#[derive(Debug, Clone, Copy)]
pub struct IntersectionPoint {
    pub point: ProjPoint,
    pub multiplicity: usize,
    /// Relative residuals of the two defining polynomials at the point.
    pub residuals: (f64, f64),
}

fn mat_vec(a: &[[C64; 3]; 3], v: [C64; 3]) -> [C64; 3] {
    [
        a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2],
        a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
        a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2],
    ]
}

/// Fixed, reproducible "random" projective change of coordinates used by
/// the retry paths.
pub(crate) fn rotation_matrix(variant: u64) -> [[C64; 3]; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de ^ variant);
    loop {
        let mut a = [[C64::new(0.0, 0.0); 3]; 3];
        for row in &mut a {
            for e in row.iter_mut() {
                *e = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            }
        }
        let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
        if det.norm() > 0.2 {
            return a;
        }
    }
}

/// Computed multiple roots of an eliminant split proportionally to the
/// square root of its evaluation noise, which for 10x10 Sylvester
/// determinants lands well above the point-level clustering distance, so
/// eliminant roots are deduplicated at this coarser relative distance.
/// They only seed back-substitution; multiplicities are never read off the
/// eliminant.
const ELIMINANT_CLUSTER_EPS: f64 = 1e-4;

/// A bivariate polynomial with precomputed partials, for fast polishing.
struct BiSystem {
    f: BiPoly,
    fu: BiPoly,
    fv: BiPoly,
}

impl BiSystem {
    fn new(f: BiPoly) -> BiSystem {
        let fu = f.deriv_u();
        let fv = f.deriv_v();
        BiSystem { f, fu, fv }
    }
}

impl Bivariate for BiSystem {
    fn value(&self, u: C64, v: C64) -> C64 {
        self.f.eval(u, v)
    }
    fn partial_u(&self, u: C64, v: C64) -> C64 {
        self.fu.eval(u, v)
    }
    fn partial_v(&self, u: C64, v: C64) -> C64 {
        self.fv.eval(u, v)
    }
    fn scale(&self, u: C64, v: C64) -> f64 {
        self.f.eval_scale_floored(u, v)
    }
}

/// Complete intersection of two curves with multiplicities summing to the
/// Bezout count `deg F * deg G`.
///
/// Pipeline: each of the three standard affine charts is processed with
/// both choices of kept variable (eliminate, root-find, back-substitute,
/// polish, lift); the six views are merged by projective-distance dedupe
/// into the support, and each support point's multiplicity is computed
/// locally as the vanishing order of one curve along the other's branch.
/// A fixed random coordinate change is retried once before declaring the
/// intersection incomplete.
pub fn intersect(f: &HomPoly3, g: &HomPoly3, tols: &Tolerances) -> Result<Vec<IntersectionPoint>> {
    if f.is_zero() || g.is_zero() || f.degree() == 0 || g.degree() == 0 {
        return Err(Error::InvalidInput(
            "intersection needs two nonconstant curves".into(),
        ));
    }
    if g.degree() == 1 {
        let line = ProjLine::new(line_coeffs(g))?;
        return line_curve_intersect(f, &line, tols);
    }
    if f.degree() == 1 {
        let line = ProjLine::new(line_coeffs(f))?;
        let mut pts = line_curve_intersect(g, &line, tols)?;
        for p in &mut pts {
            p.residuals = (p.residuals.1, p.residuals.0);
        }
        return Ok(pts);
    }

    let expected = (f.degree() * g.degree()) as usize;
    match intersect_attempt(f, g, tols, expected) {
        Ok(pts) => Ok(pts),
        Err(Error::SharedComponent) => Err(Error::SharedComponent),
        Err(first) => {
            // one retry after a fixed random projective change of coordinates
            let rot = rotation_matrix(1);
            let fr = f.compose(&rot);
            let gr = g.compose(&rot);
            let rotated = intersect_attempt(&fr, &gr, tols, expected).map_err(|_| first)?;
            let mut out = Vec::with_capacity(rotated.len());
            for ip in rotated {
                let p = ProjPoint::new(mat_vec(&rot, ip.point.coords()))?;
                let rf = f.evaluate(p.coords()).norm() / f.eval_scale(p.coords());
                let rg = g.evaluate(p.coords()).norm() / g.eval_scale(p.coords());
                if rf > tols.cert_residual || rg > tols.cert_residual {
                    return Err(Error::NumericalInconsistency(format!(
                        "rotated intersection point fails certification: residuals ({rf:.2e}, {rg:.2e})"
                    )));
                }
                out.push(IntersectionPoint {
                    point: p,
                    multiplicity: ip.multiplicity,
                    residuals: (rf, rg),
                });
            }
            out.sort_by_key(|p| p.point.order_key());
            Ok(out)
        }
    }
}

fn line_coeffs(l: &HomPoly3) -> [C64; 3] {
    [
        l.coefficient([1, 0, 0]),
        l.coefficient([0, 1, 0]),
        l.coefficient([0, 0, 1]),
    ]
}

fn intersect_attempt(
    f: &HomPoly3,
    g: &HomPoly3,
    tols: &Tolerances,
    expected: usize,
) -> Result<Vec<IntersectionPoint>> {
    // phase 1: the support, merged over all six (chart, kept-variable) views
    let charts = [Axis::Z, Axis::Y, Axis::X];
    let mut support: Vec<FoundPoint> = Vec::new();
    let mut zero_eliminants = 0usize;
    let mut views_run = 0usize;
    let match_eps = 10.0 * tols.cluster_eps;
    for chart in charts {
        let fb = f.dehomogenize(chart);
        let gb = g.dehomogenize(chart);
        for swap in [false, true] {
            views_run += 1;
            let (fv, gv) = if swap {
                (fb.swapped(), gb.swapped())
            } else {
                (fb.clone(), gb.clone())
            };
            match run_view(f, g, &fv, &gv, chart, swap, tols) {
                Ok(Some(found)) => {
                    for (point, residuals) in found {
                        match support
                            .iter_mut()
                            .find(|(p, _)| p.dist(&point) <= match_eps)
                        {
                            Some((p, r)) => {
                                if residuals.0.max(residuals.1) < r.0.max(r.1) {
                                    *p = point;
                                    *r = residuals;
                                }
                            }
                            None => support.push((point, residuals)),
                        }
                    }
                }
                Ok(None) => zero_eliminants += 1,
                Err(_) => {} // view-level failure: other views may still cover
            }
        }
    }
    if zero_eliminants == views_run {
        return Err(Error::SharedComponent);
    }

    // phase 2: local intersection multiplicity per support point, as the
    // vanishing order of one curve along the other's branch; tangential
    // points come back refined to full precision
    let mut out: Vec<IntersectionPoint> = Vec::new();
    let mut unresolved: Vec<FoundPoint> = Vec::new();
    let mut total = 0usize;
    for (point, residuals) in support {
        match local_multiplicity(f, g, &point) {
            Some((m, refined)) => {
                let v = refined.coords();
                let rf = f.evaluate(v).norm() / f.eval_scale(v);
                let rg = g.evaluate(v).norm() / g.eval_scale(v);
                let (point, residuals) =
                    if rf.max(rg) <= residuals.0.max(residuals.1).max(tols.cert_residual) {
                        (refined, (rf, rg))
                    } else {
                        (point, residuals)
                    };
                total += m;
                out.push(IntersectionPoint {
                    point,
                    multiplicity: m,
                    residuals,
                });
            }
            None => unresolved.push((point, residuals)),
        }
    }
    // a single unresolved point (singular on both curves) is pinned down by
    // the Bezout count once everything else is certified
    if unresolved.len() == 1 && total < expected {
        let (point, residuals) = unresolved.pop().unwrap();
        out.push(IntersectionPoint {
            point,
            multiplicity: expected - total,
            residuals,
        });
        total = expected;
    }
    if !unresolved.is_empty() {
        return Err(Error::IncompleteIntersection {
            found: total,
            expected,
            diagnostic: format!("{} points with unresolved multiplicity", unresolved.len()),
        });
    }
    if total != expected {
        return Err(Error::IncompleteIntersection {
            found: total,
            expected,
            diagnostic: format!("{} distinct points found", out.len()),
        });
    }
    out.sort_by_key(|p| p.point.order_key());
    Ok(out)
}

/// Truncation order for branch series: enough to resolve every
/// multiplicity a quartic pipeline can produce.
const SERIES_ORD: usize = 8;

type Series = [C64; SERIES_ORD];

fn series_zero() -> Series {
    [C64::new(0.0, 0.0); SERIES_ORD]
}

fn series_mul(a: &Series, b: &Series) -> Series {
    let mut out = series_zero();
    for i in 0..SERIES_ORD {
        if a[i].norm_sqr() == 0.0 {
            continue;
        }
        for j in 0..SERIES_ORD - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

/// Reciprocal of a series with nonzero constant term.
fn series_recip(a: &Series) -> Option<Series> {
    if a[0].norm() <= f64::MIN_POSITIVE {
        return None;
    }
    let mut r = series_zero();
    r[0] = C64::new(1.0, 0.0) / a[0];
    for k in 1..SERIES_ORD {
        let mut acc = C64::new(0.0, 0.0);
        for i in 1..=k {
            acc += a[i] * r[k - i];
        }
        r[k] = -acc / a[0];
    }
    Some(r)
}

/// Evaluates the bivariate polynomial at `(u0 + s, w(s))` as a truncated
/// series in `s`.
fn bipoly_eval_series(f: &BiPoly, u0: C64, w: &Series) -> Series {
    // Taylor-shift the u-coefficient of each power of v to u0
    let du = f.u_degree();
    let dv = f.v_degree();
    // binomial table
    let mut binom = vec![vec![0.0f64; du + 1]; du + 1];
    for i in 0..=du {
        binom[i][0] = 1.0;
        for k in 1..=i {
            binom[i][k] = binom[i - 1][k - 1] + if k < i { binom[i - 1][k] } else { 0.0 };
        }
    }
    let mut pow_u0 = vec![C64::new(1.0, 0.0); du + 1];
    for i in 1..=du {
        pow_u0[i] = pow_u0[i - 1] * u0;
    }
    let coeff = |i: usize, j: usize| f.coeff(i, j);
    let mut result = series_zero();
    for j in (0..=dv).rev() {
        // A_j(s): coefficients sum_i binom(i,k) c[i][j] u0^(i-k)
        let mut aj = series_zero();
        for (k, slot) in aj.iter_mut().enumerate().take(du + 1) {
            let mut acc = C64::new(0.0, 0.0);
            for i in k..=du {
                acc += coeff(i, j) * C64::new(binom[i][k], 0.0) * pow_u0[i - k];
            }
            *slot = acc;
        }
        result = series_mul(&result, w);
        for (r, a) in result.iter_mut().zip(aj.iter()) {
            *r += a;
        }
    }
    result
}

/// Local intersection multiplicity at a certified smooth-ish point: the
/// vanishing order of one polynomial restricted to a series parametrization
/// of the other's branch. Tangential points are re-centered at the root of
/// the deflated restriction, restoring full precision. Returns `None` when
/// the point is singular on both curves (no graphable branch).
fn local_multiplicity(f: &HomPoly3, g: &HomPoly3, point: &ProjPoint) -> Option<(usize, ProjPoint)> {
    // chart of the pivot coordinate: the point is well inside this chart
    let coords = point.coords();
    let pivot = (0..3)
        .max_by(|&i, &j| coords[i].norm().partial_cmp(&coords[j].norm()).unwrap())
        .unwrap();
    let chart = [Axis::X, Axis::Y, Axis::Z][pivot];
    let (ua, va) = chart.others();
    let (u, v) = (coords[ua.index()], coords[va.index()]);
    let fb = f.dehomogenize(chart);
    let gb = g.dehomogenize(chart);
    let (m, (ru, rv)) = branch_vanishing_order(&fb, &gb, (u, v))
        .or_else(|| branch_vanishing_order(&gb, &fb, (u, v)))?;
    let mut raw = [C64::new(0.0, 0.0); 3];
    raw[chart.index()] = C64::new(1.0, 0.0);
    raw[ua.index()] = ru;
    raw[va.index()] = rv;
    let refined = ProjPoint::new(raw).ok()?;
    Some((m, refined))
}

/// Order of vanishing of `g` along the branch of `f` through `p`, together
/// with the refined point location.
fn branch_vanishing_order(f: &BiPoly, g: &BiPoly, p: (C64, C64)) -> Option<(usize, (C64, C64))> {
    let fu = f.deriv_u().eval(p.0, p.1);
    let fv = f.deriv_v().eval(p.0, p.1);
    let grad_scale = f
        .deriv_u()
        .eval_scale_floored(p.0, p.1)
        .max(f.deriv_v().eval_scale_floored(p.0, p.1));
    if fu.norm().max(fv.norm()) <= 1e-7 * grad_scale {
        return None; // singular point of f: no single graphable branch
    }
    // graph the branch over the better-conditioned direction
    let swapped = fv.norm() < fu.norm();
    let (fw, gw, u0, v0) = if swapped {
        (f.swapped(), g.swapped(), p.1, p.0)
    } else {
        (f.clone(), g.clone(), p.0, p.1)
    };
    let fw_v = fw.deriv_v();
    let mut w = series_zero();
    w[0] = v0;
    for _ in 0..6 {
        let fval = bipoly_eval_series(&fw, u0, &w);
        let fder = bipoly_eval_series(&fw_v, u0, &w);
        let corr = series_mul(&fval, &series_recip(&fder)?);
        for (wi, ci) in w.iter_mut().zip(corr.iter()) {
            *wi -= ci;
        }
    }
    // the branch must actually satisfy f
    let fcheck = bipoly_eval_series(&fw, u0, &w);
    let fscale = fw.eval_scale_floored(u0, v0);
    if fcheck.iter().any(|c| c.norm() > 1e-6 * fscale) {
        return None;
    }
    let h = bipoly_eval_series(&gw, u0, &w);
    let hmax = h.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let gscale = gw.eval_scale_floored(u0, v0);
    if hmax <= 1e-9 * gscale {
        return None; // vanishing beyond the truncation order
    }
    // The multiplicity is the number of roots of the restriction that sit
    // at the point, i.e. within polish accuracy of s = 0; counting roots
    // is insensitive to the small parameter offset left by polishing a
    // tangential point, which shifts the roots but does not split them.
    let hp = UniPoly::new(h.to_vec(), 1e-13);
    if hp.is_zero() || hp.degree() == 0 {
        return None;
    }
    let hroots = roots::aberth_roots(&hp, 1e-13).ok()?;
    let mut near: Vec<C64> = Vec::new();
    for s in hroots {
        let a = s.norm();
        if a <= 1e-3 {
            near.push(s);
        } else if a <= 1e-2 {
            return None; // ambiguous middle ground: let another route decide
        }
    }
    if near.is_empty() {
        return None;
    }
    let m = near.len();
    // re-center on the mean intersection parameter
    let mut sstar = C64::new(0.0, 0.0);
    for &s in &near {
        sstar += s;
    }
    sstar /= C64::new(m as f64, 0.0);
    let mut wnew = C64::new(0.0, 0.0);
    for &c in w.iter().rev() {
        wnew = wnew * sstar + c;
    }
    let unew = u0 + sstar;
    let refined = if swapped { (wnew, unew) } else { (unew, wnew) };
    Some((m, refined))
}

/// A certified point with its pair of relative residuals.
type FoundPoint = (ProjPoint, (f64, f64));

/// Runs one (chart, kept-variable) view: eliminate, root-find,
/// back-substitute, polish, lift. Returns the certified points it found,
/// or `None` when this view's eliminant vanished identically
/// (shared-component suspicion).
#[allow(clippy::too_many_arguments)]
fn run_view(
    f3: &HomPoly3,
    g3: &HomPoly3,
    f: &BiPoly,
    g: &BiPoly,
    chart: Axis,
    swap: bool,
    tols: &Tolerances,
) -> Result<Option<Vec<FoundPoint>>> {
    let eliminant = match polyalg::resultant_eliminating_v(f, g, tols.coeff_drop) {
        Ok(r) => r,
        Err(Error::ChartDegenerate { .. }) => return Ok(Some(Vec::new())),
        Err(e) => return Err(e),
    };
    if eliminant.is_zero() {
        return Ok(None);
    }
    if eliminant.degree() == 0 {
        // no affine intersection in this view
        return Ok(Some(Vec::new()));
    }
    let roots = roots::aberth_roots(&eliminant, tols.polish)?;
    let seeds_u = roots::dedupe_complex(&roots, ELIMINANT_CLUSTER_EPS);

    let fsys = BiSystem::new(f.clone());
    let gsys = BiSystem::new(g.clone());
    let mut found: Vec<FoundPoint> = Vec::new();
    for u0 in seeds_u {
        // back-substitute: solve the restriction of one polynomial in the
        // eliminated variable, filter by the other, polish the pair
        let fu = f.restrict_u(u0, tols.coeff_drop);
        let gu = g.restrict_u(u0, tols.coeff_drop);
        let (main, other) = if !fu.is_zero() && fu.degree() >= 1 {
            (&fu, &gu)
        } else if !gu.is_zero() && gu.degree() >= 1 {
            (&gu, &fu)
        } else {
            continue; // fiber unresolvable in this view
        };
        let vs = match roots::aberth_roots(main, tols.polish) {
            Ok(v) => v,
            Err(_) => continue,
        };
        for v0 in vs {
            if !other.is_zero() && other.eval(v0).norm() > 1e-2 * other.eval_scale_floored(v0) {
                continue; // clearly not an intersection above u0
            }
            let Ok(polished) = roots::polish_pair(&fsys, &gsys, (u0, v0), tols.polish) else {
                continue;
            };
            if polished.residual > tols.cert_residual {
                continue;
            }
            let (pu, pv) = polished.point;
            let point = lift(chart, swap, pu, pv)?;
            let rf = f3.evaluate(point.coords()).norm() / f3.eval_scale(point.coords());
            let rg = g3.evaluate(point.coords()).norm() / g3.eval_scale(point.coords());
            if rf > tols.cert_residual || rg > tols.cert_residual {
                continue;
            }
            if !found
                .iter()
                .any(|(p, _)| p.dist(&point) <= tols.cluster_eps)
            {
                found.push((point, (rf, rg)));
            }
        }
    }
    Ok(Some(found))
}

fn lift(chart: Axis, swap: bool, u: C64, v: C64) -> Result<ProjPoint> {
    let (ua, va) = chart.others();
    let (a, b) = if swap { (v, u) } else { (u, v) };
    let mut coords = [C64::new(0.0, 0.0); 3];
    coords[chart.index()] = C64::new(1.0, 0.0);
    coords[ua.index()] = a;
    coords[va.index()] = b;
    ProjPoint::new(coords)
}

/// Intersection of a curve with a line by direct restriction: parametrize
/// the line, root-find the restricted univariate polynomial, cluster for
/// multiplicity. Degree deficiency of the restriction is the multiplicity
/// at the parametrization's base point.
pub fn line_curve_intersect(
    f: &HomPoly3,
    line: &ProjLine,
    tols: &Tolerances,
) -> Result<Vec<IntersectionPoint>> {
    let d = f.degree() as usize;
    let [p, q] = line.span();
    let mut candidates = vec![p, q];
    for (cp, cq) in [(1.0, 1.0), (1.0, -1.0), (1.0, 2.0)] {
        candidates.push([
            p[0] * cp + q[0] * cq,
            p[1] * cp + q[1] * cq,
            p[2] * cp + q[2] * cq,
        ]);
    }
    // base point of the parametrization: the candidate most clearly off the
    // curve, so the restriction keeps full degree (a curve of degree d has
    // at most d roots on the line, and we try d + 1 candidates)
    let rel = |v: &[C64; 3]| f.evaluate(*v).norm() / f.eval_scale(*v);
    let base = *candidates
        .iter()
        .max_by(|a, b| rel(a).partial_cmp(&rel(b)).unwrap())
        .unwrap();
    if rel(&base) < 1e-6 {
        return Err(Error::SharedComponent);
    }
    let anchor = *candidates
        .iter()
        .max_by(|a, b| {
            proj_dist(**a, base)
                .partial_cmp(&proj_dist(**b, base))
                .unwrap()
        })
        .unwrap();

    let r = f.restrict_line(anchor, base);
    if r.is_zero() {
        return Err(Error::SharedComponent);
    }
    let deficiency = d - r.degree();
    let mut out: Vec<IntersectionPoint> = Vec::new();
    if r.degree() >= 1 {
        let roots = roots::aberth_roots(&r, tols.polish)?;
        let clusters = roots::cluster_complex(&roots, 100.0 * tols.cluster_eps)?;
        for cl in clusters {
            let s = roots::refine_root(&r, cl.center, cl.multiplicity);
            let v = [
                anchor[0] + s * base[0],
                anchor[1] + s * base[1],
                anchor[2] + s * base[2],
            ];
            let point = ProjPoint::new(v)?;
            let rf = f.evaluate(point.coords()).norm() / f.eval_scale(point.coords());
            let rl = line.eval(&point).norm();
            if rf > tols.cert_residual {
                return Err(Error::NumericalInconsistency(format!(
                    "line intersection point fails certification: residual {rf:.2e}"
                )));
            }
            out.push(IntersectionPoint {
                point,
                multiplicity: cl.multiplicity,
                residuals: (rf, rl),
            });
        }
    }
    if deficiency > 0 {
        let point = ProjPoint::new(base)?;
        let rf = f.evaluate(point.coords()).norm() / f.eval_scale(point.coords());
        out.push(IntersectionPoint {
            point,
            multiplicity: deficiency,
            residuals: (rf, line.eval(&point).norm()),
        });
    }
    let total: usize = out.iter().map(|p| p.multiplicity).sum();
    if total != d {
        return Err(Error::IncompleteIntersection {
            found: total,
            expected: d,
            diagnostic: "line restriction lost roots".into(),
        });
    }
    out.sort_by_key(|p| p.point.order_key());
    Ok(out)
}

/// Smoothness verdict with diagnostics.
#[derive(Debug, Clone)]
pub enum Smoothness {
    /// No common zero of the three partials. `margin` is the smallest
    /// relative value of the deciding partial over the candidate points: a
    /// conditioning measure that shrinks as the curve approaches a
    /// singular member.
    Smooth {
        margin: f64,
    },
    Singular {
        witness: ProjPoint,
    },
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Smoothness::Smooth { .. })
    }
}

/// Tests smoothness: the curve is smooth iff its three partials share no
/// common projective zero. Intersects two partials and evaluates the third
/// at every candidate; degenerate pairs (shared components) fall through to
/// the other pairs, one rotated retry, and finally to witness sampling.
pub fn is_smooth(f: &HomPoly3, tols: &Tolerances) -> Result<Smoothness> {
    if f.degree() == 0 || f.is_zero() {
        return Err(Error::InvalidInput("smoothness needs degree >= 1".into()));
    }
    if f.degree() == 1 {
        return Ok(Smoothness::Smooth { margin: 1.0 });
    }
    match smooth_attempt(f, tols)? {
        Some(v) => Ok(v),
        None => {
            // every pair of partials degenerated; a change of coordinates
            // cannot split an intrinsic shared component, so hunt for a
            // singular witness by sampling
            let rot = rotation_matrix(2);
            let fr = f.compose(&rot);
            if let Some(v) = smooth_attempt(&fr, tols)? {
                return Ok(match v {
                    Smoothness::Smooth { margin } => Smoothness::Smooth { margin },
                    Smoothness::Singular { witness } => Smoothness::Singular {
                        witness: ProjPoint::new(mat_vec(&rot, witness.coords()))?,
                    },
                });
            }
            sample_singular_witness(f, tols)
        }
    }
}

fn smooth_attempt(f: &HomPoly3, tols: &Tolerances) -> Result<Option<Smoothness>> {
    let grad = f.gradient();
    if grad.iter().any(|g| g.is_zero()) {
        return Ok(None);
    }
    let pairs = [(0usize, 1usize, 2usize), (1, 2, 0), (0, 2, 1)];
    for (a, b, c) in pairs {
        match intersect(&grad[a], &grad[b], tols) {
            Ok(points) => {
                let mut margin = f64::INFINITY;
                for ip in &points {
                    let v = ip.point.coords();
                    let third = grad[c].evaluate(v).norm() / grad[c].eval_scale(v);
                    if third <= tols.cert_residual * 10.0 {
                        return Ok(Some(Smoothness::Singular { witness: ip.point }));
                    }
                    margin = margin.min(third);
                }
                return Ok(Some(Smoothness::Smooth { margin }));
            }
            Err(_) => continue,
        }
    }
    Ok(None)
}

/// Finds a point where all three partials vanish by sampling deterministic
/// lines against the first nonzero partial.
fn sample_singular_witness(f: &HomPoly3, tols: &Tolerances) -> Result<Smoothness> {
    let grad = f.gradient();
    let main = grad
        .iter()
        .find(|g| !g.is_zero())
        .ok_or_else(|| Error::InvalidInput("all partials vanish identically".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5a110ff);
    for _ in 0..64 {
        let mut pt = [C64::new(0.0, 0.0); 3];
        let mut dir = [C64::new(0.0, 0.0); 3];
        for i in 0..3 {
            pt[i] = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            dir[i] = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        }
        let r = main.restrict_line(pt, dir);
        if r.is_zero() || r.degree() == 0 {
            continue;
        }
        let Ok(roots) = roots::aberth_roots(&r, tols.polish) else {
            continue;
        };
        for s in roots {
            let v = [pt[0] + s * dir[0], pt[1] + s * dir[1], pt[2] + s * dir[2]];
            let all_zero = grad
                .iter()
                .all(|g| g.is_zero() || g.evaluate(v).norm() / g.eval_scale(v) <= 1e-6);
            if all_zero {
                return Ok(Smoothness::Singular {
                    witness: ProjPoint::new(v)?,
                });
            }
        }
    }
    Err(Error::NumericalInconsistency(
        "partials degenerate in every chart but no singular witness found".into(),
    ))
}

/// Tangent line at a smooth point of the curve: coefficients are the three
/// partials evaluated at the point.
pub fn tangent_line(f: &HomPoly3, p: &ProjPoint, tols: &Tolerances) -> Result<ProjLine> {
    let v = p.coords();
    let on_curve = f.evaluate(v).norm() / f.eval_scale(v);
    if on_curve > tols.cert_residual * 10.0 {
        return Err(Error::InvalidInput(format!(
            "point is not on the curve (relative residual {on_curve:.2e})"
        )));
    }
    let grad = f.gradient();
    let gv = [
        grad[0].evaluate(v),
        grad[1].evaluate(v),
        grad[2].evaluate(v),
    ];
    let scale = grad.iter().map(|g| g.eval_scale(v)).fold(0.0f64, f64::max);
    let norm = gv.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm <= 1e-8 * scale {
        return Err(Error::SingularPoint(v));
    }
    ProjLine::new(gv)
}

/// Order of vanishing at `p` of `f` restricted to a linear parametrization
/// of `line`: 2 at a generic tangency, 3 at an ordinary flex, 4 at a
/// hyperflex.
pub fn contact_order(
    f: &HomPoly3,
    line: &ProjLine,
    p: &ProjPoint,
    tols: &Tolerances,
) -> Result<u32> {
    let v = p.coords();
    let lp = line.eval(p).norm();
    if lp > 1e-6 {
        return Err(Error::InvalidInput(format!(
            "point is not on the line (|L(P)| = {lp:.2e})"
        )));
    }
    let on_curve = f.evaluate(v).norm() / f.eval_scale(v);
    if on_curve > tols.cert_residual * 10.0 {
        return Err(Error::InvalidInput(format!(
            "point is not on the curve (relative residual {on_curve:.2e})"
        )));
    }
    // direction along the line, projectively independent from p
    let [a, b] = line.span();
    let dir = if proj_dist(a, v) >= proj_dist(b, v) {
        a
    } else {
        b
    };
    if proj_dist(dir, v) < 1e-3 {
        return Err(Error::NumericalInconsistency(
            "could not find a line direction independent of the point".into(),
        ));
    }
    let r = f.restrict_line(v, dir);
    let coeffs = r.coeffs();
    let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return Err(Error::SharedComponent);
    }
    for (k, c) in coeffs.iter().enumerate() {
        if c.norm() >= tols.contact_negligible * max {
            if k == 0 {
                return Err(Error::InvalidInput(
                    "restriction does not vanish at the point".into(),
                ));
            }
            return Ok(k as u32);
        }
    }
    // every coefficient negligible: the line lies inside the curve
    Err(Error::SharedComponent)
}

/// Single-linkage clustering of projective points under the Fubini–Study
/// metric; multiplicity is the cluster cardinality. Representatives are
/// phase-aligned to the first member before averaging, since canonical
/// normalization may pick different pivots for near-tied coordinates.
pub fn cluster_points(
    points: &[ProjPoint],
    eps: f64,
) -> crate::error::Result<Vec<roots::RootCluster<ProjPoint>>> {
    roots::cluster_by(
        points,
        eps,
        |a, b| a.dist(b),
        |members: &[&ProjPoint]| {
            let anchor = members[0].coords();
            let mut sum = anchor;
            for m in &members[1..] {
                let c = m.coords();
                let inner: C64 = (0..3).map(|i| anchor[i] * c[i].conj()).sum();
                let nc: f64 = c.iter().map(|x| x.norm_sqr()).sum();
                let alpha = inner / C64::new(nc, 0.0);
                for i in 0..3 {
                    sum[i] += alpha * c[i];
                }
            }
            ProjPoint::new(sum).expect("cluster mean of valid points is nonzero")
        },
    )
}

/// Deterministic sample of points on the curve, found by intersecting it
/// with seeded random lines.
pub fn sample_curve_points(
    f: &HomPoly3,
    n: usize,
    seed: u64,
    tols: &Tolerances,
) -> Result<Vec<ProjPoint>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let mut guard = 0;
    while out.len() < n {
        guard += 1;
        if guard > 16 * n + 64 {
            return Err(Error::NumericalInconsistency(
                "curve sampling failed to produce enough points".into(),
            ));
        }
        let mut pt = [C64::new(0.0, 0.0); 3];
        let mut dir = [C64::new(0.0, 0.0); 3];
        for i in 0..3 {
            pt[i] = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            dir[i] = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        }
        let r = f.restrict_line(pt, dir);
        if r.is_zero() || r.degree() == 0 {
            continue;
        }
        let Ok(roots) = roots::aberth_roots(&r, tols.polish) else {
            continue;
        };
        for s in roots {
            if out.len() >= n {
                break;
            }
            let v = [pt[0] + s * dir[0], pt[1] + s * dir[1], pt[2] + s * dir[2]];
            if f.evaluate(v).norm() / f.eval_scale(v) <= tols.cert_residual {
                out.push(ProjPoint::new(v)?);
            }
        }
    }
    Ok(out)
}
