//! Rank-one positivity preservers.
//!
//! Decides membership in the cones `P_n^k(S)`, evaluates the power
//! families, searches for witnesses that an entrywise map leaves the
//! rank-one cone, and classifies sampled maps.

pub mod cauchy;
pub mod classify;
pub mod cones;
pub mod entrywise;
pub mod matrix;
pub mod powerfam;
pub mod region;

pub use num_complex::Complex64;

pub use cones::{
    cone_membership, eigenvalues, is_psd, numeric_rank, rank1_from_vector, ConeError,
    ConeFailure, ConeSpec, MembershipReport, PsdReport, ToleranceProfile,
};
pub use entrywise::{
    apply_entrywise, check_preserver, find_violation, sample_rank1, witness_complex, witness_eps,
    witness_neg_block, witness_ones_x, witness_ones_xy, CandidateFunction, ComplexWitness,
    Construction, EntrywiseError, EntrywiseImage, Failure, PreserverStatus, PreserverVerdict,
    WitnessCertificate,
};
pub use matrix::{minor2, DenseMatrix, Entries, HermitianMatrix, MatrixError};
pub use powerfam::{PowerError, PowerFamilyMember};
pub use region::{Interval, Region, RegionError};
pub use classify::{
    check_multiplicative, fit_complex_power, fit_rank2_exception, fit_real_power, ClassificationResult,
    ClassifyError, FitOptions, MultiplicativityReport, Rank2ExceptionProfile, SampleSet,
};
pub use cauchy::{
    classify_additive, classify_exponential, classify_logarithmic, classify_multiplicative,
    dedekind_independence, is_cn_multiplicative, CauchyError, CauchySolution, CauchyVerdict, Equation,
    IndependenceReport,
};
