//! Weierstrass data for a curve: points, weights by two independent
//! methods, gap sequences, orbit decomposition, the Riemann–Hurwitz
//! signature of a group action, and the transitivity verdict.

use crate::autgroup::{self, GroupTable};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::polyalg::HomPoly3;
use crate::projgeom::{self, ProjPoint, Smoothness};
use crate::report::{CurveReport, Signature, WeierstrassDatum};

/// Weierstrass points of a smooth quartic with their weights.
///
/// The weight of each point is computed twice: as the intersection
/// multiplicity of the curve with its Hessian, and as the tangent contact
/// order minus two. The two routes must agree and land in {1, 2}; any
/// mismatch is an error, never resolved by preference.
pub fn weierstrass_points(f: &HomPoly3, tols: &Tolerances) -> Result<Vec<(ProjPoint, u32)>> {
    if f.degree() != 4 {
        return Err(Error::InvalidInput(format!(
            "weierstrass analysis expects a quartic, got degree {}",
            f.degree()
        )));
    }
    let hessian = f.hessian_det();
    let pts = projgeom::intersect(f, &hessian, tols)?;
    let mut out = Vec::with_capacity(pts.len());
    for ip in &pts {
        let weight = ip.multiplicity as u32;
        if weight > 2 {
            return Err(Error::NumericalInconsistency(format!(
                "intersection multiplicity {} exceeds the genus-3 weight bound at {:?}",
                weight,
                ip.point.coords()
            )));
        }
        let tangent = projgeom::tangent_line(f, &ip.point, tols)?;
        let contact = projgeom::contact_order(f, &tangent, &ip.point, tols)?;
        if contact < 3 || contact - 2 != weight {
            return Err(Error::NumericalInconsistency(format!(
                "weight disagreement at {:?}: multiplicity {} vs contact order {}",
                ip.point.coords(),
                weight,
                contact
            )));
        }
        out.push((ip.point, weight));
    }
    out.sort_by_key(|(p, _)| p.order_key());
    Ok(out)
}

/// Gap sequence at a point of a smooth quartic, from the contact order `m`
/// of the tangent line: `m = 2` at a generic point, 3 at an ordinary flex,
/// 4 at a hyperflex.
pub fn gap_sequence(f: &HomPoly3, p: &ProjPoint, tols: &Tolerances) -> Result<[u32; 3]> {
    let tangent = projgeom::tangent_line(f, p, tols)?;
    let m = projgeom::contact_order(f, &tangent, p, tols)?;
    gaps_from_contact(m)
}

pub(crate) fn gaps_from_contact(m: u32) -> Result<[u32; 3]> {
    match m {
        2 => Ok([1, 2, 3]),
        3 => Ok([1, 2, 4]),
        4 => Ok([1, 2, 5]),
        _ => Err(Error::NumericalInconsistency(format!(
            "tangent contact order {m} is impossible on a smooth quartic"
        ))),
    }
}

/// Genus of a smooth plane curve of the given degree.
fn plane_genus(degree: u32) -> u32 {
    (degree - 1) * (degree - 2) / 2
}

/// Signature of the action of `g` on the smooth curve `f`.
///
/// Collects the fixed points of every non-identity element, orbits them
/// under the group, reads one branch period per orbit off the common
/// stabilizer order, and solves Riemann–Hurwitz for the quotient genus
/// (which must come out a nonnegative integer).
pub fn signature(g: &GroupTable, f: &HomPoly3, tols: &Tolerances) -> Result<Signature> {
    // invariance precheck at sampled curve points
    let samples = projgeom::sample_curve_points(f, 8, 0x517e, tols)?;
    for a in g.elements() {
        for p in &samples {
            let q = a.apply(p).coords();
            let rel = f.evaluate(q).norm() / f.eval_scale(q);
            if rel > 1e-6 {
                return Err(Error::InvalidInput(format!(
                    "group does not leave the curve invariant (residual {rel:.2e})"
                )));
            }
        }
    }

    let genus = plane_genus(f.degree());
    let mut ramification: Vec<ProjPoint> = Vec::new();
    for (i, a) in g.elements().iter().enumerate() {
        if i == 0 {
            continue;
        }
        let fixed = autgroup::fixed_points_on_curve(a, f, tols)?;
        for p in fixed.points {
            if !ramification.iter().any(|q| q.dist(&p) <= tols.cluster_eps) {
                ramification.push(p);
            }
        }
    }
    ramification.sort_by_key(|p| p.order_key());

    let mut periods: Vec<u32> = Vec::new();
    let mut weighted_sum = 0i64; // sum over orbits of (|G|/m)(m - 1)
    if !ramification.is_empty() {
        let dec = autgroup::orbits(g, &ramification, tols.cluster_eps)?;
        for orbit in &dec.orbits {
            let stab = dec.stabilizer_orders[orbit[0]];
            if orbit.iter().any(|&i| dec.stabilizer_orders[i] != stab) {
                return Err(Error::BranchDataInconsistent(
                    "stabilizer order varies within one orbit".into(),
                ));
            }
            if stab < 2 {
                return Err(Error::BranchDataInconsistent(
                    "a collected fixed point has trivial stabilizer".into(),
                ));
            }
            periods.push(stab as u32);
            weighted_sum += (orbit.len() as i64) * (stab as i64 - 1);
        }
    }

    // 2g - 2 = |G| (2 gamma - 2) + sum_orbits (|G|/m)(m-1)
    let lhs = 2 * genus as i64 - 2;
    let num = lhs - weighted_sum;
    let denom = 2 * g.order() as i64;
    if num.rem_euclid(denom) != 0 {
        return Err(Error::BranchDataInconsistent(format!(
            "Riemann-Hurwitz does not balance: (2g-2) - sum = {num} is not divisible by 2|G| = {denom}"
        )));
    }
    let gamma = num / denom + 1;
    if gamma < 0 {
        return Err(Error::BranchDataInconsistent(format!(
            "negative quotient genus {gamma}"
        )));
    }
    Ok(Signature::new(gamma as u32, periods))
}

/// Assembles the full per-curve verdict: Weierstrass points with weights
/// and gap sequences, orbit decomposition, transitivity, signature and the
/// Hurwitz bound check.
pub fn transitivity_report(
    curve_id: String,
    f: &HomPoly3,
    g: &GroupTable,
    tols: &Tolerances,
) -> Result<CurveReport> {
    match projgeom::is_smooth(f, tols)? {
        Smoothness::Smooth { .. } => {}
        Smoothness::Singular { witness } => {
            return Err(Error::SingularCurve {
                witness: witness.coords(),
            })
        }
    }
    let wp = weierstrass_points(f, tols)?;
    let points: Vec<ProjPoint> = wp.iter().map(|(p, _)| *p).collect();
    let dec = autgroup::orbits(g, &points, 10.0 * tols.cluster_eps)?;

    let mut data = Vec::with_capacity(wp.len());
    for (i, (p, weight)) in wp.iter().enumerate() {
        let gaps = gap_sequence(f, p, tols)?;
        let datum = WeierstrassDatum {
            point: *p,
            weight: *weight,
            gaps,
            stabilizer_order: dec.stabilizer_orders[i] as u32,
            orbit_id: dec.orbit_of[i] as u32,
        };
        if !datum.consistent() {
            return Err(Error::NumericalInconsistency(format!(
                "weight {} and gaps {:?} disagree at {:?}",
                datum.weight,
                datum.gaps,
                p.coords()
            )));
        }
        if !g.order().is_multiple_of(dec.stabilizer_orders[i]) {
            return Err(Error::NumericalInconsistency(
                "stabilizer order does not divide the group order".into(),
            ));
        }
        data.push(datum);
    }

    let weight_sum: u32 = data.iter().map(|d| d.weight).sum();
    if weight_sum != 24 {
        return Err(Error::NumericalInconsistency(format!(
            "weights sum to {weight_sum}, expected 24"
        )));
    }

    let mut histogram = std::collections::BTreeMap::new();
    for d in &data {
        *histogram.entry(d.weight.to_string()).or_insert(0u32) += 1;
    }
    let orbit_sizes: Vec<u32> = dec.orbits.iter().map(|o| o.len() as u32).collect();
    let sig = signature(g, f, tols)?;

    Ok(CurveReport {
        curve_id,
        smooth: true,
        group_order: g.order() as u32,
        wp_count: data.len() as u32,
        weight_histogram: histogram,
        orbit_sizes: orbit_sizes.clone(),
        transitive: orbit_sizes.len() == 1,
        signature: sig,
        hurwitz_bound_ok: g.order() <= 168,
        points: data,
    })
}
