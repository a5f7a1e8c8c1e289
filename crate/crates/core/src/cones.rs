//! Positivity and rank decisions, and membership in the rank-constrained
//! cones `P_n^k(S)` of Hermitian positive semidefinite matrices with entries
//! in `S` and rank at most `k`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{HermitianMatrix, MatrixError};
use crate::region::Region;

pub const DEFAULT_PSD_TOL: f64 = 1e-10;
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConeError {
    #[error("cone rank bound k={k} must satisfy 1 <= k <= n={n}")]
    BadRank { n: usize, k: usize },
    #[error("tolerance must be finite and nonnegative, got {0}")]
    BadTolerance(f64),
}

/// Relative thresholds for positivity and numerical rank, both scaled by
/// `max(1, spectral scale)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceProfile {
    psd_tol: f64,
    rank_tol: f64,
}

impl ToleranceProfile {
    pub fn new(psd_tol: f64, rank_tol: f64) -> Result<Self, ConeError> {
        for t in [psd_tol, rank_tol] {
            if !(t.is_finite() && t >= 0.0) {
                return Err(ConeError::BadTolerance(t));
            }
        }
        Ok(Self { psd_tol, rank_tol })
    }

    pub fn psd_tol(&self) -> f64 {
        self.psd_tol
    }

    pub fn rank_tol(&self) -> f64 {
        self.rank_tol
    }
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        Self {
            psd_tol: DEFAULT_PSD_TOL,
            rank_tol: DEFAULT_RANK_TOL,
        }
    }
}

/// `P_n^k(domain)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeSpec {
    n: usize,
    k: usize,
    domain: Region,
}

impl ConeSpec {
    pub fn new(n: usize, k: usize, domain: Region) -> Result<Self, ConeError> {
        if k == 0 || k > n {
            return Err(ConeError::BadRank { n, k });
        }
        Ok(Self { n, k, domain })
    }

    pub fn rank_one(n: usize, domain: Region) -> Result<Self, ConeError> {
        Self::new(n, 1, domain)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn domain(&self) -> &Region {
        &self.domain
    }
}

/// Eigenvalues in nondecreasing order.
pub fn eigenvalues(m: &HermitianMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = if m.is_real() {
        m.to_nalgebra_real().symmetric_eigenvalues().iter().copied().collect()
    } else {
        m.to_nalgebra_complex()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect()
    };
    ev.sort_by(f64::total_cmp);
    ev
}

fn spectral_scale(ev: &[f64]) -> f64 {
    ev.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsdReport {
    pub psd: bool,
    pub min_eigenvalue: f64,
    pub spectral_scale: f64,
    /// The eigenvalue floor that was applied: `−psd_tol · max(1, scale)`.
    pub threshold: f64,
}

pub fn psd_report_from_eigenvalues(ev: &[f64], tol: &ToleranceProfile) -> PsdReport {
    let scale = spectral_scale(ev);
    let min = ev.first().copied().unwrap_or(0.0);
    let threshold = -tol.psd_tol * scale.max(1.0);
    PsdReport {
        psd: min >= threshold,
        min_eigenvalue: min,
        spectral_scale: scale,
        threshold,
    }
}

pub fn is_psd(m: &HermitianMatrix, tol: &ToleranceProfile) -> PsdReport {
    psd_report_from_eigenvalues(&eigenvalues(m), tol)
}

pub fn rank_from_eigenvalues(ev: &[f64], tol: &ToleranceProfile) -> usize {
    let cutoff = tol.rank_tol * spectral_scale(ev).max(1.0);
    ev.iter().filter(|v| v.abs() > cutoff).count()
}

pub fn numeric_rank(m: &HermitianMatrix, tol: &ToleranceProfile) -> usize {
    rank_from_eigenvalues(&eigenvalues(m), tol)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConeFailure {
    Dimension { expected: usize, got: usize },
    EntryDomain { row: usize, col: usize, value: Complex64 },
    NotPsd { min_eigenvalue: f64, threshold: f64 },
    RankExceeded { rank: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub in_cone: bool,
    pub first_failure: Option<ConeFailure>,
    /// Filled in once the spectral checks ran.
    pub eigenvalues: Option<Vec<f64>>,
}

/// Checks, in order, dimension, entry domain (exact), positivity and rank.
pub fn cone_membership(
    m: &HermitianMatrix,
    spec: &ConeSpec,
    tol: &ToleranceProfile,
) -> MembershipReport {
    let fail = |f: ConeFailure, ev: Option<Vec<f64>>| MembershipReport {
        in_cone: false,
        first_failure: Some(f),
        eigenvalues: ev,
    };
    if m.n() != spec.n {
        return fail(
            ConeFailure::Dimension {
                expected: spec.n,
                got: m.n(),
            },
            None,
        );
    }
    if let Some((row, col, value)) = m
        .upper_entries()
        .find(|&(_, _, z)| !spec.domain.contains(z))
    {
        return fail(ConeFailure::EntryDomain { row, col, value }, None);
    }
    let ev = eigenvalues(m);
    let psd = psd_report_from_eigenvalues(&ev, tol);
    if !psd.psd {
        return fail(
            ConeFailure::NotPsd {
                min_eigenvalue: psd.min_eigenvalue,
                threshold: psd.threshold,
            },
            Some(ev),
        );
    }
    let rank = rank_from_eigenvalues(&ev, tol);
    if rank > spec.k {
        return fail(ConeFailure::RankExceeded { rank, k: spec.k }, Some(ev));
    }
    MembershipReport {
        in_cone: true,
        first_failure: None,
        eigenvalues: Some(ev),
    }
}

/// `v v*`, the generic rank-one builder.
pub fn rank1_from_vector(v: &[Complex64]) -> Result<HermitianMatrix, MatrixError> {
    HermitianMatrix::outer(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::Interval;
    use approx::assert_relative_eq;

    fn interval(lo: f64, hi: f64) -> Region {
        Region::RealInterval(Interval::open(lo, hi).unwrap())
    }

    #[test]
    fn eigenvalues_of_small_examples() {
        let id = HermitianMatrix::identity(3).unwrap();
        assert_eq!(eigenvalues(&id), vec![1.0, 1.0, 1.0]);

        let ones = HermitianMatrix::ones(3).unwrap();
        let ev = eigenvalues(&ones);
        assert!(ev[0].abs() < 1e-14 && ev[1].abs() < 1e-14);
        assert_relative_eq!(ev[2], 3.0, epsilon = 1e-14);

        // λ² − 4λ + 3 = 0.
        let m = HermitianMatrix::from_real_rows(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let ev = eigenvalues(&m);
        assert_relative_eq!(ev[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(ev[1], 3.0, epsilon = 1e-14);
    }

    #[test]
    fn complex_hermitian_eigenvalues() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let m = HermitianMatrix::from_rows(
            2,
            &[
                Complex64::new(2.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(2.0, 0.0),
            ],
        )
        .unwrap();
        let ev = eigenvalues(&m);
        assert_relative_eq!(ev[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(ev[1], 3.0, epsilon = 1e-14);
    }

    #[test]
    fn psd_decisions() {
        let tol = ToleranceProfile::default();
        assert!(is_psd(&HermitianMatrix::ones(4).unwrap(), &tol).psd);
        assert!(is_psd(&HermitianMatrix::zeros(3).unwrap(), &tol).psd);
        let m = HermitianMatrix::from_real_rows(2, &[1.0, 2.0, 2.0, 1.0]).unwrap();
        let r = is_psd(&m, &tol);
        assert!(!r.psd);
        assert_relative_eq!(r.min_eigenvalue, -1.0, epsilon = 1e-14);
    }

    #[test]
    fn rank_decisions() {
        let tol = ToleranceProfile::default();
        let v = HermitianMatrix::outer_real(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(numeric_rank(&v, &tol), 1);
        assert_eq!(numeric_rank(&HermitianMatrix::identity(5).unwrap(), &tol), 5);
        assert_eq!(numeric_rank(&HermitianMatrix::zeros(4).unwrap(), &tol), 0);
    }

    #[test]
    fn membership_examples() {
        let tol = ToleranceProfile::default();
        let ones = HermitianMatrix::ones(3).unwrap();
        let r = cone_membership(&ones, &ConeSpec::rank_one(3, interval(0.0, 2.0)).unwrap(), &tol);
        assert!(r.in_cone);

        let r = cone_membership(&ones, &ConeSpec::rank_one(3, interval(2.0, 3.0)).unwrap(), &tol);
        assert!(matches!(r.first_failure, Some(ConeFailure::EntryDomain { .. })));

        let id = HermitianMatrix::identity(3).unwrap();
        let spec = ConeSpec::rank_one(3, Region::RealInterval(Interval::new(-0.5, 2.0, false, false).unwrap()))
            .unwrap();
        let r = cone_membership(&id, &spec, &tol);
        assert_eq!(
            r.first_failure,
            Some(ConeFailure::RankExceeded { rank: 3, k: 1 })
        );

        let r = cone_membership(&ones, &ConeSpec::rank_one(4, interval(0.0, 2.0)).unwrap(), &tol);
        assert!(matches!(r.first_failure, Some(ConeFailure::Dimension { .. })));
    }

    #[test]
    fn diag_ones_against_open_unit_interval_fails_on_zero_entries() {
        let tol = ToleranceProfile::default();
        let id = HermitianMatrix::identity(3).unwrap();
        let r = cone_membership(&id, &ConeSpec::rank_one(3, interval(0.0, 2.0)).unwrap(), &tol);
        // 0 is not in (0, 2), so the entry check fires before the rank check.
        assert!(matches!(r.first_failure, Some(ConeFailure::EntryDomain { row: 0, col: 1, .. })));
    }

    #[test]
    fn cone_spec_validation() {
        assert!(ConeSpec::new(3, 0, Region::reals()).is_err());
        assert!(ConeSpec::new(3, 4, Region::reals()).is_err());
        assert!(ToleranceProfile::new(-1.0, 0.0).is_err());
        assert!(ToleranceProfile::new(f64::INFINITY, 0.0).is_err());
    }
}
