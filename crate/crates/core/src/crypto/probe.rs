use serde::Serialize;

use super::{PublicKey, SecretKey};
use crate::error::Result;
use crate::linalg::{pinv, rank_of, Matrix, Tolerance};

/// Diagnostic for the naive key-recovery attempt `F ≈ (Y₁)⁺ (Y₂F)`.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub r: usize,
    pub rank_y1: usize,
    pub rank_y2f: usize,
    /// `rank(Y₂F) < r`, so `Y₂F ≠ I`.
    pub rank_deficient: bool,
    #[serde(skip)]
    pub candidate: Matrix,
    /// `‖candidate − F‖_F / ‖F‖_F`, only with the secret in hand.
    pub relative_distance: Option<f64>,
}

impl ProbeReport {
    /// Whether the pseudoinverse probe reproduced the secret basis.
    pub fn recovered(&self, threshold: f64) -> Option<bool> {
        self.relative_distance.map(|d| d <= threshold)
    }
}

/// Computes `(Y₁)⁺ (Y₂F)` from public material; with `secret` supplied it
/// also measures how far that candidate is from the true `F`.
pub fn attack_probe(pk: &PublicKey, secret: Option<&SecretKey>) -> Result<ProbeReport> {
    let tol = Tolerance::default();
    let candidate = pinv(&pk.y1, &tol).matmul(&pk.y2f)?;
    let rank_y1 = rank_of(&pk.y1, &tol).rank;
    let rank_y2f = rank_of(&pk.y2f, &tol).rank;
    let relative_distance = match secret {
        Some(sk) => Some(candidate.distance(&sk.f)? / sk.f.frobenius_norm()),
        None => None,
    };
    Ok(ProbeReport {
        r: pk.r,
        rank_y1,
        rank_y2f,
        rank_deficient: rank_y2f < pk.r,
        candidate,
        relative_distance,
    })
}
