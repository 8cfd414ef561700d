//! Tolerance knobs shared by the numerical pipelines.

use serde::{Deserialize, Serialize};

/// Tolerances used by root finding, clustering and certification.
///
/// The defaults are tuned for quartic/sextic intersections in double
/// precision: polishing drives residuals to `1e-12` relative, while points
/// are considered equal below `1e-6`, so "same point" and "distinct points"
/// stay several orders of magnitude apart.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative residual target for Newton polishing.
    pub polish: f64,
    /// Single-linkage distance for merging near-coincident points.
    pub cluster_eps: f64,
    /// Relative modulus below which a polynomial coefficient is dropped.
    pub coeff_drop: f64,
    /// Relative residual bound certified intersection points must satisfy.
    pub cert_residual: f64,
    /// Relative threshold for a coefficient of a line-restricted polynomial
    /// to count as vanishing when measuring contact order.
    pub contact_negligible: f64,
    /// Entrywise distance under which two normalized projective maps are
    /// the same group element.
    pub group_eps: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            polish: 1e-12,
            cluster_eps: 1e-6,
            coeff_drop: 1e-12,
            cert_residual: 1e-8,
            contact_negligible: 1e-7,
            group_eps: 1e-9,
        }
    }
}

impl Tolerances {
    /// Cheap sanity check: polishing must resolve points at least three
    /// orders of magnitude more finely than clustering merges them.
    pub fn validate(&self) -> Result<(), crate::Error> {
        if !(self.polish > 0.0 && self.cluster_eps > 0.0 && self.coeff_drop > 0.0) {
            return Err(crate::Error::InvalidInput(
                "tolerances must be positive".into(),
            ));
        }
        if self.polish * 1e3 > self.cluster_eps {
            return Err(crate::Error::InvalidInput(format!(
                "polish tolerance {} too loose for cluster eps {}",
                self.polish, self.cluster_eps
            )));
        }
        Ok(())
    }
}
