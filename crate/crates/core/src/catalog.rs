//! Constructors for the named curves and groups, and the singular-parameter
//! detector for the quartic pencil
//! `x^4 + y^4 + z^4 + t (x^2 y^2 + y^2 z^2 + z^2 x^2)`.

use std::fmt;

use crate::autgroup::{self, GroupTable, ProjMap};
use crate::config::Tolerances;
use crate::error::Result;
use crate::polyalg::HomPoly3;
use crate::projgeom::{self, Smoothness};
use crate::C64;

/// Margin of the smoothness certificate under which a parameter is flagged
/// near-singular even though smoothness still certifies.
const NEAR_SINGULAR_MARGIN: f64 = 1e-3;

/// Identifier of a curve in the catalog.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveId {
    /// Pencil member `C_t`.
    Pencil(C64),
    /// `x^4 + y^4 + z^4`, the pencil at `t = 0`.
    Fermat,
    /// `x^3 y + y^3 z + z^3 x`.
    Klein,
    /// `x^4 + y^4 + z^3 x`.
    Picard,
    /// The pencil at `t = 3`.
    C3,
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveId::Pencil(t) => write!(f, "pencil({},{})", t.re, t.im),
            CurveId::Fermat => write!(f, "fermat"),
            CurveId::Klein => write!(f, "klein"),
            CurveId::Picard => write!(f, "picard"),
            CurveId::C3 => write!(f, "c3"),
        }
    }
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

/// The pencil member `C_t`.
pub fn pencil(t: C64) -> HomPoly3 {
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

/// Exact coefficient placement for each catalog curve.
pub fn build_curve(id: &CurveId) -> HomPoly3 {
    match id {
        CurveId::Pencil(t) => pencil(*t),
        CurveId::Fermat => pencil(zero()),
        CurveId::C3 => pencil(C64::new(3.0, 0.0)),
        CurveId::Klein => HomPoly3::from_terms(
            4,
            [([3, 1, 0], one()), ([0, 3, 1], one()), ([1, 0, 3], one())],
        ),
        CurveId::Picard => HomPoly3::from_terms(
            4,
            [([4, 0, 0], one()), ([0, 4, 0], one()), ([1, 0, 3], one())],
        ),
    }
}

/// The parameter of the pencil member isomorphic to Klein's quartic
/// (either sign of the imaginary part gives an isomorphic member).
pub fn klein_parameter() -> C64 {
    C64::new(-1.5, 10.5)
}

/// The two generators of the pencil's automorphism group:
/// `[x:y:z] -> [x:z:-y]` and `[x:y:z] -> [z:y:x]`. The quoted image
/// coordinates are the rows of the substitution matrix.
pub fn pencil_generators() -> (ProjMap, ProjMap) {
    let rot = ProjMap::from_rows(
        [one(), zero(), zero()],
        [zero(), zero(), one()],
        [zero(), -one(), zero()],
    )
    .expect("generator is invertible");
    let swap = ProjMap::from_rows(
        [zero(), zero(), one()],
        [zero(), one(), zero()],
        [one(), zero(), zero()],
    )
    .expect("generator is invertible");
    (rot, swap)
}

/// The order-4 map `[x:y:z] -> [-y:x:z]`.
pub fn phi() -> ProjMap {
    ProjMap::from_rows(
        [zero(), -one(), zero()],
        [one(), zero(), zero()],
        [zero(), zero(), one()],
    )
    .expect("phi is invertible")
}

/// Closure of the two pencil generators (order 24).
pub fn pencil_group(tols: &Tolerances) -> Result<GroupTable> {
    let (a, b) = pencil_generators();
    autgroup::generate(&[a, b], 48, tols.group_eps)
}

/// Smoothness verdict for one pencil parameter.
#[derive(Debug, Clone)]
pub enum ParameterClass {
    Smooth,
    /// Smoothness still certifies but the certificate margin is thin.
    NearSingular {
        margin: f64,
    },
    Singular {
        witness: [C64; 3],
    },
}

impl ParameterClass {
    pub fn is_singular(&self) -> bool {
        matches!(self, ParameterClass::Singular { .. })
    }
}

/// Runs the smoothness test on `C_t`.
pub fn classify_parameter(t: C64, tols: &Tolerances) -> Result<ParameterClass> {
    match projgeom::is_smooth(&pencil(t), tols)? {
        Smoothness::Smooth { margin } => {
            if margin < NEAR_SINGULAR_MARGIN {
                Ok(ParameterClass::NearSingular { margin })
            } else {
                Ok(ParameterClass::Smooth)
            }
        }
        Smoothness::Singular { witness } => Ok(ParameterClass::Singular {
            witness: witness.coords(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeom::ProjPoint;

    #[test]
    fn fermat_is_pencil_at_zero() {
        let a = build_curve(&CurveId::Fermat);
        let b = pencil(zero());
        assert!(a.sub(&b).is_zero());
        assert_eq!(a.num_terms(), 3);
    }

    #[test]
    fn c3_is_pencil_at_three() {
        let a = build_curve(&CurveId::C3);
        let b = pencil(C64::new(3.0, 0.0));
        assert!(a.sub(&b).is_zero());
    }

    #[test]
    fn pencil_monomial_counts() {
        assert_eq!(pencil(zero()).num_terms(), 3);
        for t in [C64::new(1.0, 0.0), C64::new(-0.5, 0.25), klein_parameter()] {
            assert_eq!(pencil(t).num_terms(), 6);
        }
    }

    #[test]
    fn klein_and_picard_equations() {
        let k = build_curve(&CurveId::Klein);
        assert_eq!(k.degree(), 4);
        assert_eq!(k.num_terms(), 3);
        assert_eq!(k.coefficient([3, 1, 0]), one());
        assert_eq!(k.coefficient([0, 3, 1]), one());
        assert_eq!(k.coefficient([1, 0, 3]), one());
        let p = build_curve(&CurveId::Picard);
        assert_eq!(p.coefficient([4, 0, 0]), one());
        assert_eq!(p.coefficient([0, 4, 0]), one());
        assert_eq!(p.coefficient([1, 0, 3]), one());
    }

    #[test]
    fn generator_convention_is_pinned() {
        // apply(gen1, [0:1:0]) lands on [0:0:-1], the same projective point
        // as [0:0:1]; this pins the rows-are-images convention
        let (rot, _) = pencil_generators();
        let p = ProjPoint::new([zero(), one(), zero()]).unwrap();
        let img = rot.apply(&p);
        let expect = ProjPoint::new([zero(), zero(), one()]).unwrap();
        assert!(img.dist(&expect) < 1e-14);
    }

    #[test]
    fn generator_orders() {
        let (rot, swap) = pencil_generators();
        assert_eq!(autgroup::element_order(&rot).unwrap(), 4);
        assert_eq!(autgroup::element_order(&swap).unwrap(), 2);
    }

    #[test]
    fn pencil_group_has_order_24() {
        let g = pencil_group(&Tolerances::default()).unwrap();
        assert_eq!(g.order(), 24);
        assert!(g.find(&phi()).is_some(), "phi belongs to the pencil group");
    }

    #[test]
    fn classify_excluded_parameters() {
        let tols = Tolerances::default();
        for t in [-1.0, 2.0, -2.0] {
            let v = classify_parameter(C64::new(t, 0.0), &tols).unwrap();
            assert!(v.is_singular(), "t = {t} must classify singular");
        }
        assert!(!classify_parameter(one(), &tols).unwrap().is_singular());
    }
}
