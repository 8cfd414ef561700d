//! Exact-shape, approximate-coefficient algebra for homogeneous trivariate
//! polynomials: arithmetic, differentiation, Hessian determinant,
//! dehomogenization and resultant elimination.
//!
//! Coefficients are complex doubles. Every operation that can create
//! numerically-zero coefficients trims them relative to the largest
//! coefficient modulus, so polynomial degrees never inflate silently.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::C64;

/// Default relative modulus under which a coefficient is dropped.
pub const DROP_TOL: f64 = 1e-12;

/// One of the three homogeneous coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }

    /// The other two axes, in (x, y, z) order.
    pub fn others(self) -> (Axis, Axis) {
        match self {
            Axis::X => (Axis::Y, Axis::Z),
            Axis::Y => (Axis::X, Axis::Z),
            Axis::Z => (Axis::X, Axis::Y),
        }
    }
}

/// A homogeneous polynomial in three variables with complex coefficients.
///
/// Stored densely by exponent triple; the sizes in play (quartics and their
/// degree-6 Hessians) are tiny, so clarity beats sparsity tricks.
#[derive(Debug, Clone, PartialEq)]
pub struct HomPoly3 {
    degree: u32,
    coeffs: BTreeMap<[u32; 3], C64>,
}

impl HomPoly3 {
    /// Builds a polynomial of the given degree from `(exponents, coefficient)`
    /// terms. Panics if an exponent triple does not sum to `degree`.
    pub fn from_terms<I>(degree: u32, terms: I) -> HomPoly3
    where
        I: IntoIterator<Item = ([u32; 3], C64)>,
    {
        let mut coeffs: BTreeMap<[u32; 3], C64> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(
                e[0] + e[1] + e[2],
                degree,
                "exponent triple {:?} does not sum to degree {}",
                e,
                degree
            );
            *coeffs.entry(e).or_insert(C64::new(0.0, 0.0)) += c;
        }
        let mut p = HomPoly3 { degree, coeffs };
        p.trim(DROP_TOL);
        p
    }

    pub fn zero(degree: u32) -> HomPoly3 {
        HomPoly3 {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// A single monomial `c * x^i y^j z^k`.
    pub fn monomial(e: [u32; 3], c: C64) -> HomPoly3 {
        HomPoly3::from_terms(e[0] + e[1] + e[2], [(e, c)])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient(&self, e: [u32; 3]) -> C64 {
        self.coeffs.get(&e).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &C64)> {
        self.coeffs.iter()
    }

    pub fn max_coeff_modulus(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn trim(&mut self, rel_tol: f64) {
        let max = self.max_coeff_modulus();
        if max == 0.0 {
            self.coeffs.clear();
            return;
        }
        self.coeffs.retain(|_, c| c.norm() > rel_tol * max);
    }

    /// Sum of `coefficient * x^i y^j z^k` over stored monomials.
    pub fn evaluate(&self, v: [C64; 3]) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (e, c) in &self.coeffs {
            acc += c * v[0].powu(e[0]) * v[1].powu(e[1]) * v[2].powu(e[2]);
        }
        acc
    }

    /// Magnitude scale of the evaluation, `sum |c| |x|^i |y|^j |z|^k`,
    /// floored at the largest coefficient so relative residuals make sense
    /// near the origin.
    pub fn eval_scale(&self, v: [C64; 3]) -> f64 {
        let m = [v[0].norm(), v[1].norm(), v[2].norm()];
        let mut acc = 0.0f64;
        for (e, c) in &self.coeffs {
            acc +=
                c.norm() * m[0].powi(e[0] as i32) * m[1].powi(e[1] as i32) * m[2].powi(e[2] as i32);
        }
        acc.max(self.max_coeff_modulus()).max(f64::MIN_POSITIVE)
    }

    /// Formal partial derivative. Degree drops by exactly one; a degree-0
    /// input yields the flagged zero polynomial.
    pub fn partial(&self, axis: Axis) -> HomPoly3 {
        if self.degree == 0 {
            return HomPoly3::zero(0);
        }
        let a = axis.index();
        let mut out: BTreeMap<[u32; 3], C64> = BTreeMap::new();
        for (e, c) in &self.coeffs {
            if e[a] == 0 {
                continue;
            }
            let mut f = *e;
            f[a] -= 1;
            out.insert(f, c * C64::new(e[a] as f64, 0.0));
        }
        let mut p = HomPoly3 {
            degree: self.degree - 1,
            coeffs: out,
        };
        p.trim(DROP_TOL);
        p
    }

    pub fn gradient(&self) -> [HomPoly3; 3] {
        [
            self.partial(Axis::X),
            self.partial(Axis::Y),
            self.partial(Axis::Z),
        ]
    }

    pub fn add(&self, other: &HomPoly3) -> HomPoly3 {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "degree mismatch in add");
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            *coeffs.entry(*e).or_insert(C64::new(0.0, 0.0)) += c;
        }
        let mut p = HomPoly3 {
            degree: self.degree,
            coeffs,
        };
        p.trim(DROP_TOL);
        p
    }

    pub fn sub(&self, other: &HomPoly3) -> HomPoly3 {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: C64) -> HomPoly3 {
        let mut p = HomPoly3 {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * s)).collect(),
        };
        p.trim(DROP_TOL);
        p
    }

    pub fn mul(&self, other: &HomPoly3) -> HomPoly3 {
        if self.is_zero() || other.is_zero() {
            return HomPoly3::zero(self.degree + other.degree);
        }
        let mut coeffs: BTreeMap<[u32; 3], C64> = BTreeMap::new();
        for (e, c) in &self.coeffs {
            for (f, d) in &other.coeffs {
                let g = [e[0] + f[0], e[1] + f[1], e[2] + f[2]];
                *coeffs.entry(g).or_insert(C64::new(0.0, 0.0)) += c * d;
            }
        }
        let mut p = HomPoly3 {
            degree: self.degree + other.degree,
            coeffs,
        };
        p.trim(DROP_TOL);
        p
    }

    /// Determinant of the 3x3 matrix of second partials, homogeneous of
    /// degree `3 (d - 2)` when nonzero.
    pub fn hessian_det(&self) -> HomPoly3 {
        assert!(self.degree >= 2, "hessian needs degree >= 2");
        let axes = [Axis::X, Axis::Y, Axis::Z];
        let grad = self.gradient();
        let mut h: Vec<Vec<HomPoly3>> = Vec::with_capacity(3);
        for g in &grad {
            h.push(axes.iter().map(|&a| g.partial(a)).collect());
        }
        let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
            h[r0][c0].mul(&h[r1][c1]).sub(&h[r0][c1].mul(&h[r1][c0]))
        };
        h[0][0]
            .mul(&minor(1, 2, 1, 2))
            .sub(&h[0][1].mul(&minor(1, 2, 0, 2)))
            .add(&h[0][2].mul(&minor(1, 2, 0, 1)))
    }

    /// Substitution of a linear change of coordinates: returns `F(A v)`.
    pub fn compose(&self, a: &[[C64; 3]; 3]) -> HomPoly3 {
        let lin: Vec<HomPoly3> = (0..3)
            .map(|i| {
                HomPoly3::from_terms(
                    1,
                    [
                        ([1, 0, 0], a[i][0]),
                        ([0, 1, 0], a[i][1]),
                        ([0, 0, 1], a[i][2]),
                    ],
                )
            })
            .collect();
        // powers of each linear form up to the degree that actually occurs
        let mut pows: Vec<Vec<HomPoly3>> = Vec::with_capacity(3);
        for l in &lin {
            let mut v = vec![HomPoly3::from_terms(0, [([0, 0, 0], C64::new(1.0, 0.0))])];
            for k in 1..=self.degree {
                let next = v[(k - 1) as usize].mul(l);
                v.push(next);
            }
            pows.push(v);
        }
        let mut acc = HomPoly3::zero(self.degree);
        for (e, c) in &self.coeffs {
            let term = pows[0][e[0] as usize]
                .mul(&pows[1][e[1] as usize])
                .mul(&pows[2][e[2] as usize])
                .scale(*c);
            acc = acc.add(&term);
        }
        acc
    }

    /// Sets the chart axis to one, producing a bivariate polynomial in the
    /// two remaining coordinates (kept in (x, y, z) order).
    pub fn dehomogenize(&self, chart: Axis) -> BiPoly {
        let (ua, va) = chart.others();
        let (ui, vi) = (ua.index(), va.index());
        let d = self.degree as usize;
        let mut c = vec![vec![C64::new(0.0, 0.0); d + 1]; d + 1];
        for (e, coeff) in &self.coeffs {
            c[e[ui] as usize][e[vi] as usize] += coeff;
        }
        BiPoly::new(c)
    }

    /// Restriction of the polynomial to the parametrized line `p + s d`,
    /// as a univariate polynomial in `s`.
    pub fn restrict_line(&self, p: [C64; 3], d: [C64; 3]) -> UniPoly {
        let deg = self.degree as usize;
        let mut pows: Vec<Vec<Vec<C64>>> = Vec::with_capacity(3);
        for a in 0..3 {
            let mut v: Vec<Vec<C64>> = vec![vec![C64::new(1.0, 0.0)]];
            for k in 1..=deg {
                let prev = &v[k - 1];
                let mut next = vec![C64::new(0.0, 0.0); k + 1];
                for (i, &pc) in prev.iter().enumerate() {
                    next[i] += pc * p[a];
                    next[i + 1] += pc * d[a];
                }
                v.push(next);
            }
            pows.push(v);
        }
        let mut acc = vec![C64::new(0.0, 0.0); deg + 1];
        for (e, c) in &self.coeffs {
            let px = &pows[0][e[0] as usize];
            let py = &pows[1][e[1] as usize];
            let pz = &pows[2][e[2] as usize];
            // convolve the three factor polynomials, scaled by c
            let mut t = vec![C64::new(0.0, 0.0); px.len() + py.len() - 1];
            for (i, &a) in px.iter().enumerate() {
                for (j, &b) in py.iter().enumerate() {
                    t[i + j] += a * b;
                }
            }
            for (i, &a) in t.iter().enumerate() {
                for (j, &b) in pz.iter().enumerate() {
                    acc[i + j] += c * a * b;
                }
            }
        }
        UniPoly::from_raw(acc)
    }
}

impl fmt::Display for HomPoly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(e, c)| {
                format!(
                    "({:.6e}{:+.6e}i) x^{} y^{} z^{}",
                    c.re, c.im, e[0], e[1], e[2]
                )
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A univariate complex polynomial, lowest-degree coefficient first.
///
/// The zero polynomial is stored as an empty coefficient vector; otherwise
/// the leading coefficient modulus always exceeds the drop tolerance used
/// at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<C64>,
}

impl UniPoly {
    /// Trims leading coefficients whose modulus is at most
    /// `drop_tol * max coefficient modulus`.
    pub fn new(coeffs: Vec<C64>, drop_tol: f64) -> UniPoly {
        let mut p = UniPoly { coeffs };
        p.trim(drop_tol);
        p
    }

    /// As `new` with the default drop tolerance.
    pub fn from_raw(coeffs: Vec<C64>) -> UniPoly {
        UniPoly::new(coeffs, DROP_TOL)
    }

    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: C64) -> UniPoly {
        UniPoly::from_raw(vec![c])
    }

    /// Monic-by-leading product of `(z - r_i)`, scaled by `leading`.
    pub fn from_roots(leading: C64, roots: &[C64]) -> UniPoly {
        let mut c = vec![leading];
        for &r in roots {
            let mut next = vec![C64::new(0.0, 0.0); c.len() + 1];
            for (i, &a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            c = next;
        }
        UniPoly { coeffs: c }
    }

    fn trim(&mut self, drop_tol: f64) {
        let max = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if max <= f64::MIN_POSITIVE {
            self.coeffs.clear();
            return;
        }
        while let Some(last) = self.coeffs.last() {
            if last.norm() <= drop_tol * max {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the last non-negligible coefficient; 0 for constants and
    /// for the zero polynomial (check `is_zero` to tell them apart).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn leading(&self) -> C64 {
        self.coeffs.last().copied().unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn eval(&self, z: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// `sum |a_i| |z|^i`, used to scale residuals.
    pub fn eval_scale(&self, z: C64) -> f64 {
        let m = z.norm();
        let mut acc = 0.0f64;
        for &c in self.coeffs.iter().rev() {
            acc = acc * m + c.norm();
        }
        acc.max(f64::MIN_POSITIVE)
    }

    /// As `eval_scale` with `|z|` floored at one: the magnitude of the
    /// polynomial over the unit disk scaled to the point, so that zeros
    /// lying near coordinate degenerations still certify relatively.
    pub fn eval_scale_floored(&self, z: C64) -> f64 {
        let m = z.norm().max(1.0);
        let mut acc = 0.0f64;
        for &c in self.coeffs.iter().rev() {
            acc = acc * m + c.norm();
        }
        acc.max(f64::MIN_POSITIVE)
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| a * C64::new(i as f64, 0.0))
            .collect();
        UniPoly { coeffs: c }
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![C64::new(0.0, 0.0); n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            c[i] += a;
        }
        for (i, &a) in other.coeffs.iter().enumerate() {
            c[i] += a;
        }
        UniPoly::from_raw(c)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: C64) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![C64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly { coeffs: c }
    }
}

/// A bivariate complex polynomial `sum c[i][j] u^i v^j` on an affine chart.
#[derive(Debug, Clone)]
pub struct BiPoly {
    c: Vec<Vec<C64>>,
    du: usize,
    dv: usize,
}

impl BiPoly {
    pub fn new(mut c: Vec<Vec<C64>>) -> BiPoly {
        // keep the grid rectangular so indexing never goes ragged
        let width = c.iter().map(|row| row.len()).max().unwrap_or(0).max(1);
        if c.is_empty() {
            c.push(Vec::new());
        }
        for row in &mut c {
            row.resize(width, C64::new(0.0, 0.0));
        }
        let max = c
            .iter()
            .flat_map(|row| row.iter())
            .map(|x| x.norm())
            .fold(0.0, f64::max);
        let mut du = 0;
        let mut dv = 0;
        if max > 0.0 {
            for (i, row) in c.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if x.norm() > DROP_TOL * max {
                        du = du.max(i);
                        dv = dv.max(j);
                    }
                }
            }
        }
        BiPoly { c, du, dv }
    }

    pub fn is_zero(&self) -> bool {
        self.c
            .iter()
            .flat_map(|row| row.iter())
            .all(|x| x.norm() == 0.0)
            || self.max_coeff_modulus() <= f64::MIN_POSITIVE
    }

    pub fn max_coeff_modulus(&self) -> f64 {
        self.c
            .iter()
            .flat_map(|row| row.iter())
            .map(|x| x.norm())
            .fold(0.0, f64::max)
    }

    pub fn u_degree(&self) -> usize {
        self.du
    }

    pub fn v_degree(&self) -> usize {
        self.dv
    }

    pub fn coeff(&self, i: usize, j: usize) -> C64 {
        self.c
            .get(i)
            .and_then(|row| row.get(j))
            .copied()
            .unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn total_degree(&self) -> usize {
        let max = self.max_coeff_modulus();
        let mut d = 0;
        for (i, row) in self.c.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if x.norm() > DROP_TOL * max {
                    d = d.max(i + j);
                }
            }
        }
        d
    }

    /// Transposes the two variables.
    pub fn swapped(&self) -> BiPoly {
        let mut c = vec![vec![C64::new(0.0, 0.0); self.du + 1]; self.dv + 1];
        for (i, row) in self.c[..=self.du].iter().enumerate() {
            for (j, x) in row[..=self.dv].iter().enumerate() {
                c[j][i] = *x;
            }
        }
        BiPoly::new(c)
    }

    pub fn eval(&self, u: C64, v: C64) -> C64 {
        // Horner in u over Horner in v
        let mut acc = C64::new(0.0, 0.0);
        for row in self.c[..=self.du].iter().rev() {
            let mut r = C64::new(0.0, 0.0);
            for &x in row[..=self.dv.min(row.len() - 1)].iter().rev() {
                r = r * v + x;
            }
            acc = acc * u + r;
        }
        acc
    }

    pub fn eval_scale(&self, u: C64, v: C64) -> f64 {
        self.eval_scale_abs(u.norm(), v.norm())
    }

    /// Magnitude scale with both coordinates floored at one, so relative
    /// residuals stay meaningful near the coordinate axes (where sparse
    /// polynomials collapse to single monomials).
    pub fn eval_scale_floored(&self, u: C64, v: C64) -> f64 {
        self.eval_scale_abs(u.norm().max(1.0), v.norm().max(1.0))
    }

    fn eval_scale_abs(&self, mu: f64, mv: f64) -> f64 {
        let mut acc = 0.0f64;
        for row in self.c[..=self.du].iter().rev() {
            let mut r = 0.0f64;
            for x in row[..=self.dv.min(row.len() - 1)].iter().rev() {
                r = r * mv + x.norm();
            }
            acc = acc * mu + r;
        }
        acc.max(self.max_coeff_modulus()).max(f64::MIN_POSITIVE)
    }

    pub fn deriv_u(&self) -> BiPoly {
        if self.du == 0 {
            return BiPoly::new(vec![vec![C64::new(0.0, 0.0)]]);
        }
        let mut c = vec![vec![C64::new(0.0, 0.0); self.dv + 1]; self.du];
        for (i, row) in c.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.c[i + 1][j] * C64::new((i + 1) as f64, 0.0);
            }
        }
        BiPoly::new(c)
    }

    pub fn deriv_v(&self) -> BiPoly {
        if self.dv == 0 {
            return BiPoly::new(vec![vec![C64::new(0.0, 0.0)]]);
        }
        let mut c = vec![vec![C64::new(0.0, 0.0); self.dv]; self.du + 1];
        for (i, row) in c.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.c[i][j + 1] * C64::new((j + 1) as f64, 0.0);
            }
        }
        BiPoly::new(c)
    }

    /// Coefficient values of `v^0 .. v^dv` with `u` substituted, untrimmed,
    /// so callers control the Sylvester matrix shape.
    pub fn coeffs_in_v_at(&self, u: C64) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.dv + 1];
        for (j, slot) in out.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for i in (0..=self.du).rev() {
                acc = acc * u + self.c[i][j];
            }
            *slot = acc;
        }
        out
    }

    /// Restriction `v -> value` as a trimmed univariate polynomial in `u`.
    pub fn restrict_v(&self, v: C64, drop_tol: f64) -> UniPoly {
        let mut out = vec![C64::new(0.0, 0.0); self.du + 1];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for j in (0..=self.dv).rev() {
                acc = acc * v + self.c[i][j];
            }
            *slot = acc;
        }
        UniPoly::new(out, drop_tol)
    }

    /// Restriction `u -> value` as a trimmed univariate polynomial in `v`.
    pub fn restrict_u(&self, u: C64, drop_tol: f64) -> UniPoly {
        UniPoly::new(self.coeffs_in_v_at(u), drop_tol)
    }
}

impl crate::roots::Bivariate for BiPoly {
    fn value(&self, u: C64, v: C64) -> C64 {
        self.eval(u, v)
    }
    fn partial_u(&self, u: C64, v: C64) -> C64 {
        self.deriv_u().eval(u, v)
    }
    fn partial_v(&self, u: C64, v: C64) -> C64 {
        self.deriv_v().eval(u, v)
    }
    fn scale(&self, u: C64, v: C64) -> f64 {
        self.eval_scale_floored(u, v)
    }
}

/// LU determinant with partial pivoting for small dense complex matrices.
/// Returns the determinant together with the Hadamard bound (product of row
/// norms), which callers use as the magnitude scale for zero tests.
pub(crate) fn lu_det(mut m: Vec<Vec<C64>>) -> (C64, f64) {
    let n = m.len();
    if n == 0 {
        return (C64::new(1.0, 0.0), 1.0);
    }
    let mut hadamard = 1.0f64;
    for row in &m {
        hadamard *= row.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    }
    let mut det = C64::new(1.0, 0.0);
    for col in 0..n {
        let mut piv = col;
        let mut best = m[col][col].norm_sqr();
        for (r, row) in m.iter().enumerate().skip(col + 1) {
            let v = row[col].norm_sqr();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return (C64::new(0.0, 0.0), hadamard);
        }
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        let (pivot_row, rest) = m[col..].split_first_mut().expect("col < n");
        for row in rest {
            let f = row[col] / p;
            if f.norm_sqr() == 0.0 {
                continue;
            }
            for (x, pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * pv;
            }
        }
    }
    (det, hadamard)
}

/// Numeric Sylvester determinant of two coefficient vectors (lowest degree
/// first, fixed global shape). Returns the determinant and its Hadamard
/// bound.
pub fn sylvester_det(fc: &[C64], gc: &[C64]) -> (C64, f64) {
    let m = fc.len() - 1;
    let n = gc.len() - 1;
    let size = m + n;
    if size == 0 {
        return (C64::new(1.0, 0.0), 1.0);
    }
    let mut mat = vec![vec![C64::new(0.0, 0.0); size]; size];
    for i in 0..n {
        for k in 0..=m {
            mat[i][i + k] = fc[m - k];
        }
    }
    for i in 0..m {
        for k in 0..=n {
            mat[n + i][i + k] = gc[n - k];
        }
    }
    lu_det(mat)
}

/// Resultant of `f` and `g` with respect to `v`, computed by
/// evaluation-interpolation: the kept variable is sampled on a complex
/// circle of radius 2, a fixed-shape numeric Sylvester determinant is taken
/// per node, and the values are interpolated back (an inverse DFT, since
/// the nodes are scaled roots of unity).
///
/// Sign and scale follow the Sylvester convention and are not normalized.
/// Returns the zero polynomial when every node determinant is negligible
/// against its Hadamard bound, which callers read as shared-component
/// suspicion.
pub fn resultant_eliminating_v(f: &BiPoly, g: &BiPoly, drop_tol: f64) -> Result<UniPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::InvalidInput(
            "resultant of an identically-zero polynomial".into(),
        ));
    }
    let dfv = f.v_degree();
    let dgv = g.v_degree();
    if dfv == 0 && dgv == 0 {
        return Err(Error::ChartDegenerate {
            chart: "both polynomials free of the eliminated variable",
        });
    }
    let bound = f.total_degree() * g.total_degree();
    let n_nodes = bound + 1;
    let radius = 2.0f64;
    let mut values = Vec::with_capacity(n_nodes);
    let mut max_val = 0.0f64;
    let mut max_rel = 0.0f64;
    for j in 0..n_nodes {
        let theta = 2.0 * std::f64::consts::PI * (j as f64) / (n_nodes as f64);
        let node = C64::from_polar(radius, theta);
        let fc = f.coeffs_in_v_at(node);
        let gc = g.coeffs_in_v_at(node);
        let (det, hadamard) = sylvester_det(&fc, &gc);
        max_val = max_val.max(det.norm());
        if hadamard > 0.0 {
            max_rel = max_rel.max(det.norm() / hadamard);
        }
        values.push((node, det));
    }
    if max_rel <= 1e-12 {
        // identically-zero resultant within round-off
        return Ok(UniPoly::zero());
    }
    // inverse DFT: values[j] = sum_k c_k r^k w^{jk}
    let nn = n_nodes as f64;
    let mut coeffs = Vec::with_capacity(n_nodes);
    for k in 0..n_nodes {
        let mut acc = C64::new(0.0, 0.0);
        for (j, (_, v)) in values.iter().enumerate() {
            let ang = -2.0 * std::f64::consts::PI * (j as f64) * (k as f64) / nn;
            acc += v * C64::from_polar(1.0, ang);
        }
        coeffs.push(acc / C64::new(nn * radius.powi(k as i32), 0.0));
    }
    Ok(UniPoly::new(coeffs, drop_tol))
}

/// Eliminates one variable from the pair `(F, G)` on an affine chart.
///
/// `chart` is the coordinate set to one; `keep` is the surviving variable of
/// the resulting univariate polynomial; the remaining coordinate is
/// eliminated through the Sylvester resultant.
pub fn eliminate(f: &HomPoly3, g: &HomPoly3, chart: Axis, keep: Axis) -> Result<UniPoly> {
    eliminate_with_tol(f, g, chart, keep, DROP_TOL)
}

pub fn eliminate_with_tol(
    f: &HomPoly3,
    g: &HomPoly3,
    chart: Axis,
    keep: Axis,
    drop_tol: f64,
) -> Result<UniPoly> {
    assert_ne!(chart, keep, "kept variable must differ from the chart axis");
    let (u, _v) = chart.others();
    let fb = f.dehomogenize(chart);
    let gb = g.dehomogenize(chart);
    if keep == u {
        resultant_eliminating_v(&fb, &gb, drop_tol)
    } else {
        resultant_eliminating_v(&fb.swapped(), &gb.swapped(), drop_tol)
    }
}
