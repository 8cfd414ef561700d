//! Report data model: per-point Weierstrass data, the signature of a group
//! action, and the full per-curve verdict.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::projgeom::ProjPoint;
use crate::C64;

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let c = self.coords();
        let raw: [[f64; 2]; 3] = [[c[0].re, c[0].im], [c[1].re, c[1].im], [c[2].re, c[2].im]];
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = <[[f64; 2]; 3]>::deserialize(d)?;
        ProjPoint::new([
            C64::new(raw[0][0], raw[0][1]),
            C64::new(raw[1][0], raw[1][1]),
            C64::new(raw[2][0], raw[2][1]),
        ])
        .map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// One Weierstrass point with its weight, gap sequence, stabilizer order
/// and orbit label.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeierstrassDatum {
    #[serde(rename = "coords")]
    pub point: ProjPoint,
    pub weight: u32,
    pub gaps: [u32; 3],
    pub stabilizer_order: u32,
    pub orbit_id: u32,
}

impl WeierstrassDatum {
    /// Weight 1 pairs with gaps {1,2,4}, weight 2 with {1,2,5}.
    pub fn consistent(&self) -> bool {
        match self.weight {
            1 => self.gaps == [1, 2, 4],
            2 => self.gaps == [1, 2, 5],
            _ => false,
        }
    }
}

/// Quotient genus and branch periods of a group action, constrained by
/// Riemann–Hurwitz.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub genus: u32,
    pub periods: Vec<u32>,
}

impl Signature {
    pub fn new(genus: u32, mut periods: Vec<u32>) -> Signature {
        periods.sort_unstable();
        Signature { genus, periods }
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let p: Vec<String> = self.periods.iter().map(|m| m.to_string()).collect();
        write!(f, "({}; {})", self.genus, p.join(","))
    }
}

/// Full verdict for one curve. Field order is the serialization order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveReport {
    pub curve_id: String,
    pub smooth: bool,
    pub group_order: u32,
    pub wp_count: u32,
    /// weight -> number of points of that weight
    pub weight_histogram: BTreeMap<String, u32>,
    pub orbit_sizes: Vec<u32>,
    pub transitive: bool,
    pub signature: Signature,
    /// `|G| <= 84 (g - 1) = 168`
    pub hurwitz_bound_ok: bool,
    pub points: Vec<WeierstrassDatum>,
}

/// Structured error report for a singular input curve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SingularReport {
    pub curve_id: String,
    pub smooth: bool,
    pub witness: ProjPoint,
    pub error: String,
}
