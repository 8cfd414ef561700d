//! Projective linear transformations up to scalar: group closure from
//! generators, orbits, stabilizers, conjugacy classes, element orders and
//! fixed loci on a curve.

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::polyalg::{HomPoly3, UniPoly};
use crate::projgeom::{self, ProjLine, ProjPoint};
use crate::roots;
use crate::C64;

const TIE_REL: f64 = 1e-12;

/// A 3x3 complex matrix taken up to scalar, stored in canonical form: the
/// whole matrix is scaled so the entry of largest modulus (first in
/// row-major order, within a tie tolerance) has modulus 1, and the overall
/// phase is fixed by making the first non-negligible entry real positive.
#[derive(Debug, Clone, Copy)]
pub struct ProjMap {
    m: [[C64; 3]; 3],
}

impl ProjMap {
    pub fn new(m: [[C64; 3]; 3]) -> Result<ProjMap> {
        let canon = Self::canonicalize(m)?;
        let d = det3(&canon);
        if d.norm() < 1e-9 {
            return Err(Error::InvalidInput(format!(
                "projective map is not invertible (|det| = {:.3e})",
                d.norm()
            )));
        }
        Ok(ProjMap { m: canon })
    }

    /// The map sending `[x:y:z]` to the three given coordinate rows.
    pub fn from_rows(r0: [C64; 3], r1: [C64; 3], r2: [C64; 3]) -> Result<ProjMap> {
        ProjMap::new([r0, r1, r2])
    }

    pub fn identity() -> ProjMap {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        ProjMap {
            m: [[one, zero, zero], [zero, one, zero], [zero, zero, one]],
        }
    }

    fn canonicalize(m: [[C64; 3]; 3]) -> Result<[[C64; 3]; 3]> {
        let mut max = 0.0f64;
        for row in &m {
            for e in row {
                max = max.max(e.norm());
            }
        }
        if !max.is_finite() || max <= 0.0 {
            return Err(Error::InvalidInput("zero or non-finite matrix".into()));
        }
        let mut pivot_mod = 0.0;
        let mut first = C64::new(0.0, 0.0);
        let mut first_found = false;
        for row in &m {
            for e in row {
                let n = e.norm();
                if !first_found && n > TIE_REL * max {
                    first = *e;
                    first_found = true;
                }
                if pivot_mod == 0.0 && n >= max * (1.0 - TIE_REL) {
                    pivot_mod = n;
                }
            }
        }
        let factor = first.conj() / C64::new(first.norm() * pivot_mod, 0.0);
        let mut out = m;
        for row in &mut out {
            for e in row.iter_mut() {
                *e *= factor;
            }
        }
        Ok(out)
    }

    pub fn matrix(&self) -> [[C64; 3]; 3] {
        self.m
    }

    /// Largest entrywise distance between the canonical forms.
    pub fn entry_dist(&self, other: &ProjMap) -> f64 {
        let mut d = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                d = d.max((self.m[i][j] - other.m[i][j]).norm());
            }
        }
        d
    }

    pub fn approx_eq(&self, other: &ProjMap, eps: f64) -> bool {
        self.entry_dist(other) <= eps
    }

    pub fn is_identity(&self, eps: f64) -> bool {
        self.approx_eq(&ProjMap::identity(), eps)
    }

    /// Matrix product `self * other` (apply `other` first), re-canonicalized.
    pub fn compose(&self, other: &ProjMap) -> ProjMap {
        let mut m = [[C64::new(0.0, 0.0); 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..3 {
                    acc += self.m[i][k] * other.m[k][j];
                }
                *entry = acc;
            }
        }
        // products of invertible canonical maps stay well away from zero
        ProjMap {
            m: Self::canonicalize(m).expect("product of canonical maps is nonzero"),
        }
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let v = p.coords();
        let w = [
            self.m[0][0] * v[0] + self.m[0][1] * v[1] + self.m[0][2] * v[2],
            self.m[1][0] * v[0] + self.m[1][1] * v[1] + self.m[1][2] * v[2],
            self.m[2][0] * v[0] + self.m[2][1] * v[1] + self.m[2][2] * v[2],
        ];
        ProjPoint::new(w).expect("invertible map cannot send a point to zero")
    }

    pub fn det(&self) -> C64 {
        det3(&self.m)
    }

    /// Least `n >= 1` with `A^n` equal to the identity up to scalar.
    pub fn order(&self, cap: u32, eps: f64) -> Result<u32> {
        let mut acc = *self;
        for n in 1..=cap {
            if acc.is_identity(eps) {
                return Ok(n);
            }
            acc = acc.compose(self);
        }
        Err(Error::OrderExceedsCap { cap })
    }
}

fn det3(m: &[[C64; 3]; 3]) -> C64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Order of a projective map, capped at 24 (the largest order occurring
/// for the groups in scope).
pub fn element_order(a: &ProjMap) -> Result<u32> {
    a.order(24, Tolerances::default().group_eps)
}

/// Free-function form of [`ProjMap::apply`].
pub fn apply(a: &ProjMap, p: &ProjPoint) -> ProjPoint {
    a.apply(p)
}

/// A finite group of projective maps with its multiplication table,
/// element orders and conjugacy classes. Element 0 is the identity.
#[derive(Debug, Clone)]
pub struct GroupTable {
    elements: Vec<ProjMap>,
    product: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    orders: Vec<u32>,
    classes: Vec<Vec<usize>>,
    eps: f64,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ProjMap] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ProjMap {
        &self.elements[i]
    }

    pub fn product_index(&self, i: usize, j: usize) -> usize {
        self.product[i][j]
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.orders
    }

    /// Conjugacy classes as index sets, ordered by (size, smallest member).
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.len()).collect()
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn find(&self, m: &ProjMap) -> Option<usize> {
        self.elements.iter().position(|e| e.approx_eq(m, self.eps))
    }

    /// Elements of the given order within the class of the given size;
    /// handy for picking out the two involution classes of the pencil group.
    pub fn classes_with(&self, order: u32, class_size: usize) -> Vec<&Vec<usize>> {
        self.classes
            .iter()
            .filter(|cl| cl.len() == class_size && cl.iter().all(|&i| self.orders[i] == order))
            .collect()
    }
}

/// Breadth-first closure of the generators under composition, with
/// scalar-normalized dedupe, followed by the product table, element orders
/// and conjugacy classes (by full conjugation test).
pub fn generate(gens: &[ProjMap], cap: usize, eps: f64) -> Result<GroupTable> {
    let mut elements = vec![ProjMap::identity()];
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        let base = elements[i];
        for g in gens {
            let prod = base.compose(g);
            if !elements.iter().any(|e| e.approx_eq(&prod, eps)) {
                if elements.len() >= cap {
                    return Err(Error::NotClosedWithinCap {
                        cap,
                        reached: elements.len() + 1,
                    });
                }
                elements.push(prod);
                frontier.push(elements.len() - 1);
            }
        }
    }
    let n = elements.len();
    let find = |m: &ProjMap| -> Result<usize> {
        elements
            .iter()
            .position(|e| e.approx_eq(m, eps))
            .ok_or_else(|| {
                Error::NumericalInconsistency(
                    "closure is not closed: product left the element set".into(),
                )
            })
    };
    let mut product = vec![vec![0usize; n]; n];
    for (i, row) in product.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = find(&elements[i].compose(&elements[j]))?;
        }
    }
    let mut inverses = vec![usize::MAX; n];
    for (i, row) in product.iter().enumerate() {
        if let Some(j) = row.iter().position(|&p| p == 0) {
            inverses[i] = j;
        }
    }
    if inverses.contains(&usize::MAX) {
        return Err(Error::NumericalInconsistency(
            "an element has no inverse in the closure".into(),
        ));
    }
    let mut orders = Vec::with_capacity(n);
    for e in &elements {
        orders.push(e.order(n as u32 + 1, eps)?);
    }
    // conjugacy classes by brute-force conjugation
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        for a in 0..n {
            let conj = product[product[a][i]][inverses[a]];
            if class_of[conj] == usize::MAX {
                class_of[conj] = id;
                members.push(conj);
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes.sort_by_key(|c| (c.len(), c[0]));
    Ok(GroupTable {
        elements,
        product,
        inverses,
        orders,
        classes,
        eps,
    })
}

/// Orbit decomposition of a point set.
#[derive(Debug, Clone)]
pub struct OrbitDecomposition {
    /// Orbits as index sets into the input, in order of first appearance.
    pub orbits: Vec<Vec<usize>>,
    /// Orbit index per input point.
    pub orbit_of: Vec<usize>,
    /// Stabilizer order per input point.
    pub stabilizer_orders: Vec<usize>,
}

/// Partitions `points` into G-orbits and counts per-point stabilizers.
/// Fails when the set is not G-invariant or the orbit-stabilizer identity
/// does not balance.
pub fn orbits(g: &GroupTable, points: &[ProjPoint], eps: f64) -> Result<OrbitDecomposition> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = i;
        while parent[c] != c {
            let nx = parent[c];
            parent[c] = r;
            c = nx;
        }
        r
    }
    let mut stabilizer_orders = vec![0usize; n];
    for (i, p) in points.iter().enumerate() {
        for a in g.elements() {
            let image = a.apply(p);
            let mut matched = None;
            for (j, q) in points.iter().enumerate() {
                if image.dist(q) <= eps {
                    matched = Some(j);
                    break;
                }
            }
            let Some(j) = matched else {
                return Err(Error::SetNotInvariant {
                    point: image.coords(),
                });
            };
            if j == i {
                stabilizer_orders[i] += 1;
            }
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        if orbit_of[r] == usize::MAX {
            orbit_of[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbit_of[i] = orbit_of[r];
        orbits[orbit_of[r]].push(i);
    }
    for (i, &stab) in stabilizer_orders.iter().enumerate() {
        let orbit_len = orbits[orbit_of[i]].len();
        if orbit_len * stab != g.order() {
            return Err(Error::NumericalInconsistency(format!(
                "orbit-stabilizer violated at point {i}: |orbit| {orbit_len} * |stab| {stab} != |G| {}",
                g.order()
            )));
        }
    }
    Ok(OrbitDecomposition {
        orbits,
        orbit_of,
        stabilizer_orders,
    })
}

/// The G-orbit of a single point, deduplicated.
pub fn point_orbit(g: &GroupTable, p: &ProjPoint, eps: f64) -> Vec<ProjPoint> {
    let mut out: Vec<ProjPoint> = Vec::new();
    for a in g.elements() {
        let q = a.apply(p);
        if !out.iter().any(|r| r.dist(&q) <= eps) {
            out.push(q);
        }
    }
    out.sort_by_key(|p| p.order_key());
    out
}

/// The fixed locus of a non-identity map in the plane: isolated
/// eigen-points, plus a pointwise-fixed line when an eigenvalue has a
/// two-dimensional eigenspace.
#[derive(Debug, Clone)]
pub struct FixedLocus {
    pub isolated: Vec<ProjPoint>,
    pub line: Option<ProjLine>,
}

pub fn fixed_locus(a: &ProjMap) -> Result<FixedLocus> {
    let m = a.matrix();
    let tr = m[0][0] + m[1][1] + m[2][2];
    let m2 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2]
        - m[1][2] * m[2][1];
    let d = det3(&m);
    let charpoly = UniPoly::from_raw(vec![-d, m2, -tr, C64::new(1.0, 0.0)]);
    let eigenvalues = roots::aberth_roots(&charpoly, 1e-13)?;
    // eigenvalues of the finite-order maps in scope are well-separated
    // roots of unity up to phase; computed double roots split around 1e-8
    let clusters = roots::cluster_complex(&eigenvalues, 1e-6)?;
    if clusters.len() == 1 {
        return Err(Error::InvalidInput(
            "scalar map fixes the whole plane".into(),
        ));
    }
    let mut isolated = Vec::new();
    let mut line = None;
    for cl in &clusters {
        let lam = roots::refine_root(&charpoly, cl.center, cl.multiplicity);
        let mm = [
            [m[0][0] - lam, m[0][1], m[0][2]],
            [m[1][0], m[1][1] - lam, m[1][2]],
            [m[2][0], m[2][1], m[2][2] - lam],
        ];
        // cross products of row pairs span the eigenvector for rank 2;
        // they all collapse for rank 1, where any row is the fixed line
        let cross = |i: usize, j: usize| -> [C64; 3] {
            [
                mm[i][1] * mm[j][2] - mm[i][2] * mm[j][1],
                mm[i][2] * mm[j][0] - mm[i][0] * mm[j][2],
                mm[i][0] * mm[j][1] - mm[i][1] * mm[j][0],
            ]
        };
        let norm = |v: &[C64; 3]| v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let row_scale = (0..3).map(|i| norm(&mm[i])).fold(0.0f64, f64::max);
        let candidates = [cross(0, 1), cross(0, 2), cross(1, 2)];
        let best = candidates
            .iter()
            .max_by(|a, b| norm(a).partial_cmp(&norm(b)).unwrap())
            .unwrap();
        if norm(best) > 1e-8 * row_scale * row_scale {
            isolated.push(ProjPoint::new(*best)?);
        } else {
            // two-dimensional eigenspace: the fixed line's coefficients are
            // any nonzero row of (A - lambda I)
            let row = (0..3)
                .max_by(|&i, &j| norm(&mm[i]).partial_cmp(&norm(&mm[j])).unwrap())
                .unwrap();
            if norm(&mm[row])
                <= 1e-10
                    * a.matrix()
                        .iter()
                        .flatten()
                        .map(|c| c.norm())
                        .fold(0.0, f64::max)
            {
                return Err(Error::InvalidInput(
                    "scalar map fixes the whole plane".into(),
                ));
            }
            line = Some(ProjLine::new(mm[row])?);
        }
    }
    isolated.sort_by_key(|p| p.order_key());
    Ok(FixedLocus { isolated, line })
}

/// Fixed points of a map on a curve, with plane-level diagnostics.
#[derive(Debug, Clone)]
pub struct CurveFixedPoints {
    /// Fixed points lying on the curve, sorted.
    pub points: Vec<ProjPoint>,
    /// Number of isolated plane fixed points (eigen-directions).
    pub plane_isolated: usize,
    /// Whether the map fixes a whole line pointwise.
    pub has_fixed_line: bool,
}

/// The fixed locus of `a` intersected with the curve: eigen-points on the
/// curve plus, when a pointwise-fixed line exists, its intersection with
/// the curve.
pub fn fixed_points_on_curve(
    a: &ProjMap,
    f: &HomPoly3,
    tols: &Tolerances,
) -> Result<CurveFixedPoints> {
    if a.is_identity(tols.group_eps) {
        return Err(Error::InvalidInput("identity fixes the whole curve".into()));
    }
    let locus = fixed_locus(a)?;
    let mut points: Vec<ProjPoint> = Vec::new();
    for p in &locus.isolated {
        let v = p.coords();
        if f.evaluate(v).norm() / f.eval_scale(v) <= tols.cert_residual {
            points.push(*p);
        }
    }
    if let Some(line) = &locus.line {
        for ip in projgeom::line_curve_intersect(f, line, tols)? {
            if !points.iter().any(|q| q.dist(&ip.point) <= tols.cluster_eps) {
                points.push(ip.point);
            }
        }
    }
    points.sort_by_key(|p| p.order_key());
    Ok(CurveFixedPoints {
        points,
        plane_isolated: locus.isolated.len(),
        has_fixed_line: locus.line.is_some(),
    })
}

/// The subgroup of `g` leaving the curve invariant (the polynomial is
/// reproduced up to scalar under substitution).
pub fn invariant_subgroup(g: &GroupTable, f: &HomPoly3, eps: f64) -> Result<GroupTable> {
    let gens: Vec<ProjMap> = g
        .elements()
        .iter()
        .filter(|a| leaves_invariant(a, f))
        .copied()
        .collect();
    generate(&gens, g.order(), eps)
}

/// Whether `F(A v)` is a scalar multiple of `F(v)`, coefficientwise.
pub fn leaves_invariant(a: &ProjMap, f: &HomPoly3) -> bool {
    let composed = f.compose(&a.matrix());
    if composed.is_zero() || f.is_zero() {
        return false;
    }
    // match against the largest coefficient of f
    let (eref, cref) = f
        .terms()
        .max_by(|x, y| x.1.norm().partial_cmp(&y.1.norm()).unwrap())
        .map(|(e, c)| (*e, *c))
        .expect("nonzero polynomial");
    let ratio = composed.coefficient(eref) / cref;
    if ratio.norm() < 1e-9 {
        return false;
    }
    let diff = composed.sub(&f.scale(ratio));
    diff.max_coeff_modulus() <= 1e-9 * f.max_coeff_modulus() * ratio.norm().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }
    fn one() -> C64 {
        c(1.0, 0.0)
    }
    fn zero() -> C64 {
        c(0.0, 0.0)
    }

    /// [x:y:z] -> [x:z:-y]
    fn gen_rot() -> ProjMap {
        ProjMap::from_rows(
            [one(), zero(), zero()],
            [zero(), zero(), one()],
            [zero(), -one(), zero()],
        )
        .unwrap()
    }

    /// [x:y:z] -> [z:y:x]
    fn gen_swap() -> ProjMap {
        ProjMap::from_rows(
            [zero(), zero(), one()],
            [zero(), one(), zero()],
            [one(), zero(), zero()],
        )
        .unwrap()
    }

    /// [x:y:z] -> [-y:x:z]
    fn phi() -> ProjMap {
        ProjMap::from_rows(
            [zero(), -one(), zero()],
            [one(), zero(), zero()],
            [zero(), zero(), one()],
        )
        .unwrap()
    }

    fn pencil(t: C64) -> HomPoly3 {
        HomPoly3::from_terms(
            4,
            [
                ([4, 0, 0], one()),
                ([0, 4, 0], one()),
                ([0, 0, 4], one()),
                ([2, 2, 0], t),
                ([0, 2, 2], t),
                ([2, 0, 2], t),
            ],
        )
    }

    #[test]
    fn canonical_form_is_scalar_free_and_idempotent() {
        let a = ProjMap::new([
            [c(0.3, 0.4), c(-1.2, 0.1), zero()],
            [c(0.0, 2.0), c(0.5, -0.5), one()],
            [one(), zero(), c(0.25, 0.0)],
        ])
        .unwrap();
        for lambda in [c(2.0, 0.0), c(0.0, -3.0), c(1.5, 2.5)] {
            let mut scaled = a.matrix();
            for row in &mut scaled {
                for e in row.iter_mut() {
                    *e *= lambda;
                }
            }
            let b = ProjMap::new(scaled).unwrap();
            assert!(a.approx_eq(&b, 1e-12), "dist {}", a.entry_dist(&b));
        }
        let again = ProjMap::new(a.matrix()).unwrap();
        assert!(a.entry_dist(&again) <= 1e-14);
    }

    #[test]
    fn trivial_and_sign_groups() {
        let g = generate(&[ProjMap::identity()], 8, 1e-9).unwrap();
        assert_eq!(g.order(), 1);
        let refl = ProjMap::from_rows(
            [one(), zero(), zero()],
            [zero(), one(), zero()],
            [zero(), zero(), -one()],
        )
        .unwrap();
        let g = generate(&[refl], 8, 1e-9).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn pencil_generators_close_to_s4() {
        let g = generate(&[gen_rot(), gen_swap()], 48, 1e-9).unwrap();
        assert_eq!(g.order(), 24);
        let mut sizes = g.class_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        // product table is a Latin square
        let n = g.order();
        for i in 0..n {
            let mut row: Vec<usize> = (0..n).map(|j| g.product_index(i, j)).collect();
            let mut col: Vec<usize> = (0..n).map(|j| g.product_index(j, i)).collect();
            row.sort_unstable();
            col.sort_unstable();
            let all: Vec<usize> = (0..n).collect();
            assert_eq!(row, all);
            assert_eq!(col, all);
        }
    }

    #[test]
    fn generate_respects_cap() {
        match generate(&[gen_rot(), gen_swap()], 10, 1e-9) {
            Err(Error::NotClosedWithinCap { cap: 10, .. }) => {}
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn element_orders_of_named_maps() {
        assert_eq!(element_order(&ProjMap::identity()).unwrap(), 1);
        assert_eq!(element_order(&phi()).unwrap(), 4);
        assert_eq!(element_order(&gen_rot()).unwrap(), 4);
        assert_eq!(element_order(&gen_swap()).unwrap(), 2);
    }

    #[test]
    fn apply_examples() {
        // phi fixes [1:-i:0]
        let p2 = ProjPoint::new([one(), c(0.0, -1.0), zero()]).unwrap();
        assert!(phi().apply(&p2).dist(&p2) < 1e-14);
        // the rotation generator sends [0:1:0] to [0:0:-1] ~ [0:0:1]
        let e1 = ProjPoint::new([zero(), one(), zero()]).unwrap();
        let img = gen_rot().apply(&e1);
        let e2 = ProjPoint::new([zero(), zero(), one()]).unwrap();
        assert!(img.dist(&e2) < 1e-14);
        // identity
        assert!(ProjMap::identity().apply(&p2).dist(&p2) < 1e-14);
    }

    #[test]
    fn phi_fixed_locus_has_three_plane_points() {
        let locus = fixed_locus(&phi()).unwrap();
        assert_eq!(locus.isolated.len(), 3);
        assert!(locus.line.is_none());
        let p1 = ProjPoint::new([c(0.0, -1.0), one(), zero()]).unwrap();
        let p2 = ProjPoint::new([one(), c(0.0, -1.0), zero()]).unwrap();
        let vertex = ProjPoint::new([zero(), zero(), one()]).unwrap();
        for expect in [p1, p2, vertex] {
            assert!(
                locus.isolated.iter().any(|p| p.dist(&expect) < 1e-9),
                "missing fixed point {:?}",
                expect.coords()
            );
        }
    }

    #[test]
    fn phi_on_curve_iff_t_is_two() {
        let tols = Tolerances::default();
        let fixed = fixed_points_on_curve(&phi(), &pencil(c(2.0, 0.0)), &tols).unwrap();
        assert_eq!(fixed.points.len(), 2);
        assert_eq!(fixed.plane_isolated, 3);
        for t in [
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(3.0, 0.0),
            c(-3.0, 0.0),
            c(0.0, 1.0),
        ] {
            let fixed = fixed_points_on_curve(&phi(), &pencil(t), &tols).unwrap();
            assert!(fixed.points.is_empty(), "phi should be free on C_{t}");
        }
    }

    #[test]
    fn involution_fixes_four_points_on_generic_member() {
        let tols = Tolerances::default();
        let refl = ProjMap::from_rows(
            [-one(), zero(), zero()],
            [zero(), one(), zero()],
            [zero(), zero(), one()],
        )
        .unwrap();
        let fixed = fixed_points_on_curve(&refl, &pencil(one()), &tols).unwrap();
        assert_eq!(fixed.points.len(), 4);
        assert!(fixed.has_fixed_line);
    }

    #[test]
    fn orbit_stabilizer_on_fixed_points() {
        let tols = Tolerances::default();
        let refl = ProjMap::from_rows(
            [-one(), zero(), zero()],
            [zero(), one(), zero()],
            [zero(), zero(), one()],
        )
        .unwrap();
        let g2 = generate(&[refl], 4, 1e-9).unwrap();
        let fixed = fixed_points_on_curve(&refl, &pencil(one()), &tols).unwrap();
        let dec = orbits(&g2, &fixed.points, tols.cluster_eps).unwrap();
        assert_eq!(dec.orbits.len(), 4, "fixed points are singleton orbits");
        assert!(dec.stabilizer_orders.iter().all(|&s| s == 2));
    }

    #[test]
    fn set_not_invariant_detected() {
        let g = generate(&[gen_swap()], 4, 1e-9).unwrap();
        let p = ProjPoint::new([one(), c(0.25, 0.0), zero()]).unwrap();
        match orbits(&g, &[p], 1e-9) {
            Err(Error::SetNotInvariant { .. }) => {}
            other => panic!("expected SetNotInvariant, got {other:?}"),
        }
    }

    #[test]
    fn pencil_invariance_filter() {
        let g = generate(&[gen_rot(), gen_swap()], 48, 1e-9).unwrap();
        // every element preserves every pencil member
        let f = pencil(c(0.5, -0.25));
        assert!(g.elements().iter().all(|a| leaves_invariant(a, &f)));
        // the klein model is preserved exactly by the cyclic rotations
        let klein = HomPoly3::from_terms(
            4,
            [([3, 1, 0], one()), ([0, 3, 1], one()), ([1, 0, 3], one())],
        );
        let sub = invariant_subgroup(&g, &klein, 1e-9).unwrap();
        assert_eq!(sub.order(), 3);
    }
}
