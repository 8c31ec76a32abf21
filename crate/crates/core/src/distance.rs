//! The distance-decay function family with a hard radius cutoff.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceKind {
    /// 1/d^2
    InverseSquare,
    /// 1/d
    Inverse,
    /// 1/2^d
    InverseExponential,
    /// 1 for d <= k; turns the closeness game into k-degree centrality.
    Indicator,
}

impl DistanceKind {
    pub const ALL: [DistanceKind; 4] = [
        DistanceKind::InverseSquare,
        DistanceKind::Inverse,
        DistanceKind::InverseExponential,
        DistanceKind::Indicator,
    ];
}

impl serde::Serialize for DistanceKind {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            DistanceKind::InverseSquare => "inverse-square",
            DistanceKind::Inverse => "inverse",
            DistanceKind::InverseExponential => "inverse-exponential",
            DistanceKind::Indicator => "indicator",
        };
        f.write_str(name)
    }
}

impl FromStr for DistanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inverse-square" | "inverse_square" => Ok(DistanceKind::InverseSquare),
            "inverse" => Ok(DistanceKind::Inverse),
            "inverse-exponential" | "inverse_exponential" => Ok(DistanceKind::InverseExponential),
            "indicator" => Ok(DistanceKind::Indicator),
            other => Err(Error::InvalidParameter(format!("unknown distance function '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceFunction {
    pub kind: DistanceKind,
    pub radius_k: f64,
}

impl DistanceFunction {
    pub fn new(kind: DistanceKind, radius_k: f64) -> Result<Self> {
        if !(radius_k > 0.0) {
            return Err(Error::InvalidParameter(format!("radius {radius_k} must be positive")));
        }
        Ok(Self { kind, radius_k })
    }
}

/// f(d), exactly 0 beyond the radius and at d = infinity. d = 0 never occurs:
/// the closeness sum skips nodes inside the group.
pub fn eval_f(f: DistanceFunction, d: f64) -> f64 {
    if !d.is_finite() || d > f.radius_k {
        return 0.0;
    }
    match f.kind {
        DistanceKind::InverseSquare => 1.0 / (d * d),
        DistanceKind::Inverse => 1.0 / d,
        DistanceKind::InverseExponential => 0.5_f64.powf(d),
        DistanceKind::Indicator => 1.0,
    }
}
