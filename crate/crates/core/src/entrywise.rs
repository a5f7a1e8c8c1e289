//! Entrywise maps `f[A] = (f(a_ij))` and falsification of rank-one
//! preservation.
//!
//! A candidate `f` is tested against `P_n^1(domain)` by sweeping a fixed
//! grid of structured rank-one witnesses (the vectors `(1,…,1,x)`,
//! `(1,…,1,x,y)`, `(1,…,1,y/x,x)`, the negative 2×2 block and the complex
//! constructions) interleaved with seeded random rank-one draws. The first
//! image that leaves `P_n^k(ℝ)` (or `P_n^k(ℂ)`) is returned as a
//! [`WitnessCertificate`] that can be re-checked independently.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cones::{self, ConeError, ConeFailure, ConeSpec, ToleranceProfile};
use crate::matrix::{minor2, DenseMatrix, HermitianMatrix, MatrixError};
use crate::powerfam::PowerFamilyMember;
use crate::region::{Interval, Region, RegionError};

/// Number of interior points of the geometric witness grid.
pub const GRID_POINTS: usize = 33;
/// Smallest product magnitude drawn by the random sampler when the domain
/// reaches down to 0.
pub const SAMPLE_FLOOR: f64 = 1e-6;
/// Largest product magnitude drawn when the domain is unbounded above.
pub const SAMPLE_CEIL: f64 = 1e12;
pub const MAX_SAMPLE_ATTEMPTS: usize = 2000;
/// Relative tolerance for `f(conj z) = conj f(z)` on complex images.
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EntrywiseError {
    #[error("entry ({row}, {col}) = {value} is outside the domain of `{label}`")]
    Domain {
        label: String,
        row: usize,
        col: usize,
        value: Complex64,
    },
    #[error("real candidate `{label}` applied to non-real entry ({row}, {col}) = {value}")]
    NonRealEntry {
        label: String,
        row: usize,
        col: usize,
        value: Complex64,
    },
    #[error("`{label}` failed at {point}: {reason}")]
    Evaluation {
        label: String,
        point: Complex64,
        reason: String,
    },
    #[error("`{label}` returned a non-finite value at entry ({row}, {col})")]
    NonFiniteValue { label: String, row: usize, col: usize },
    #[error("witness entry ({row}, {col}) = {value} escapes the region {region}")]
    WitnessOutsideRegion {
        row: usize,
        col: usize,
        value: Complex64,
        region: String,
    },
    #[error("invalid witness parameters: {0}")]
    BadParameters(String),
    #[error("no rank-one matrix found in {domain} after {attempts} attempts")]
    Infeasible { domain: String, attempts: usize },
    #[error("unsupported cone: {0}")]
    UnsupportedCone(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Region(#[from] RegionError),
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{0}")]
pub struct EvalError(pub String);

type RealFn = dyn Fn(f64) -> Result<f64, EvalError> + Send + Sync;
type ComplexFn = dyn Fn(Complex64) -> Result<Complex64, EvalError> + Send + Sync;

#[derive(Clone)]
enum Evaluator {
    Real(Arc<RealFn>),
    Complex(Arc<ComplexFn>),
}

/// A scalar map with its declared domain.
#[derive(Clone)]
pub struct CandidateFunction {
    evaluator: Evaluator,
    domain: Region,
    label: String,
}

impl fmt::Debug for CandidateFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CandidateFunction")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("real", &self.is_real())
            .finish()
    }
}

impl CandidateFunction {
    pub fn real<F>(label: impl Into<String>, domain: Region, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::real_fallible(label, domain, move |x| Ok(f(x)))
    }

    pub fn real_fallible<F>(label: impl Into<String>, domain: Region, f: F) -> Self
    where
        F: Fn(f64) -> Result<f64, EvalError> + Send + Sync + 'static,
    {
        Self {
            evaluator: Evaluator::Real(Arc::new(f)),
            domain,
            label: label.into(),
        }
    }

    pub fn complex<F>(label: impl Into<String>, domain: Region, f: F) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        Self::complex_fallible(label, domain, move |z| Ok(f(z)))
    }

    pub fn complex_fallible<F>(label: impl Into<String>, domain: Region, f: F) -> Self
    where
        F: Fn(Complex64) -> Result<Complex64, EvalError> + Send + Sync + 'static,
    {
        Self {
            evaluator: Evaluator::Complex(Arc::new(f)),
            domain,
            label: label.into(),
        }
    }

    /// Real members become real candidates; `ComplexPower` is complex.
    pub fn from_member(member: PowerFamilyMember, domain: Region) -> Self {
        let label = member.to_string();
        if member.is_real() {
            Self::real_fallible(label, domain, move |x| {
                member.eval_real(x).map_err(|e| EvalError(e.to_string()))
            })
        } else {
            Self::complex_fallible(label, domain, move |z| {
                member.eval(z).map_err(|e| EvalError(e.to_string()))
            })
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> &Region {
        &self.domain
    }

    pub fn is_real(&self) -> bool {
        matches!(self.evaluator, Evaluator::Real(_))
    }

    /// Evaluates at a single point, enforcing the domain.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, EntrywiseError> {
        self.eval_at(z, 0, 0)
    }

    fn eval_at(&self, z: Complex64, row: usize, col: usize) -> Result<Complex64, EntrywiseError> {
        if !self.domain.contains(z) {
            return Err(EntrywiseError::Domain {
                label: self.label.clone(),
                row,
                col,
                value: z,
            });
        }
        let eval_err = |e: EvalError| EntrywiseError::Evaluation {
            label: self.label.clone(),
            point: z,
            reason: e.0,
        };
        let w = match &self.evaluator {
            Evaluator::Real(f) => {
                if z.im != 0.0 {
                    return Err(EntrywiseError::NonRealEntry {
                        label: self.label.clone(),
                        row,
                        col,
                        value: z,
                    });
                }
                Complex64::new(f(z.re).map_err(eval_err)?, 0.0)
            }
            Evaluator::Complex(f) => f(z).map_err(eval_err)?,
        };
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(EntrywiseError::NonFiniteValue {
                label: self.label.clone(),
                row,
                col,
            });
        }
        Ok(w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetryDefect {
    pub row: usize,
    pub col: usize,
    /// `|f(a_ji) − conj f(a_ij)|`, or `|Im f(a_ii)|` on the diagonal.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntrywiseImage {
    pub raw: DenseMatrix,
    /// `None` exactly when `symmetry_defect` is set.
    pub hermitian: Option<HermitianMatrix>,
    pub symmetry_defect: Option<SymmetryDefect>,
}

pub fn apply_entrywise(
    f: &CandidateFunction,
    m: &HermitianMatrix,
) -> Result<EntrywiseImage, EntrywiseError> {
    let n = m.n();
    if f.is_real() {
        let mut upper = Vec::with_capacity(n * (n + 1) / 2);
        for (i, j, z) in m.upper_entries() {
            upper.push(f.eval_at(z, i, j)?);
        }
        let mut it = upper.into_iter();
        let image = HermitianMatrix::from_upper_fn(n, |_, _| it.next().expect("sized"))?;
        return Ok(EntrywiseImage {
            raw: DenseMatrix::from(&image),
            hermitian: Some(image),
            symmetry_defect: None,
        });
    }

    let mut values = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            values.push(f.eval_at(m.get(i, j), i, j)?);
        }
    }
    let raw = DenseMatrix::from_fn(n, |i, j| values[i * n + j])?;
    let mut worst: Option<SymmetryDefect> = None;
    for i in 0..n {
        for j in i..n {
            let a = raw.get(i, j);
            let deviation = if i == j {
                a.im.abs()
            } else {
                (raw.get(j, i) - a.conj()).norm()
            };
            if deviation > HERMITIAN_TOL * a.norm().max(1.0)
                && worst.is_none_or(|w| deviation > w.deviation)
            {
                worst = Some(SymmetryDefect {
                    row: i,
                    col: j,
                    deviation,
                });
            }
        }
    }
    if worst.is_some() {
        return Ok(EntrywiseImage {
            raw,
            hermitian: None,
            symmetry_defect: worst,
        });
    }
    let image = HermitianMatrix::from_upper_fn(n, |i, j| {
        let z = raw.get(i, j);
        if i == j {
            Complex64::new(z.re, 0.0)
        } else {
            z
        }
    })?;
    Ok(EntrywiseImage {
        raw,
        hermitian: Some(image),
        symmetry_defect: None,
    })
}

// ---------------------------------------------------------------------------
// Witness constructions

fn ones_then(n: usize, tail: &[Complex64]) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(1.0, 0.0); n - tail.len()];
    v.extend_from_slice(tail);
    v
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Outer product of `(1, …, 1, x)`.
pub fn witness_ones_x(n: usize, x: f64) -> Result<HermitianMatrix, EntrywiseError> {
    if n < 2 {
        return Err(EntrywiseError::BadParameters(format!("ones_x needs n >= 2, got {n}")));
    }
    Ok(HermitianMatrix::outer(&ones_then(n, &[real(x)]))?)
}

/// Outer product of `(1, …, 1, x, y)`.
pub fn witness_ones_xy(n: usize, x: f64, y: f64) -> Result<HermitianMatrix, EntrywiseError> {
    if n < 3 {
        return Err(EntrywiseError::BadParameters(format!("ones_xy needs n >= 3, got {n}")));
    }
    Ok(HermitianMatrix::outer(&ones_then(n, &[real(x), real(y)]))?)
}

/// `[[|x|, x], [x, |x|]] ⊕ 0` for `x < 0`.
pub fn witness_neg_block(n: usize, x: f64) -> Result<HermitianMatrix, EntrywiseError> {
    if n < 2 {
        return Err(EntrywiseError::BadParameters(format!("neg_block needs n >= 2, got {n}")));
    }
    if !(x < 0.0) {
        return Err(EntrywiseError::BadParameters(format!("neg_block needs x < 0, got {x}")));
    }
    // Entries set directly so they are exactly |x| and x.
    Ok(HermitianMatrix::from_upper_fn(n, |i, j| match (i, j) {
        (0, 0) | (1, 1) => real(x.abs()),
        (0, 1) => real(x),
        _ => real(0.0),
    })?)
}

/// Outer product of `(1, …, 1, y/x, x)` for `x < y < 0`.
pub fn witness_eps(n: usize, x: f64, y: f64) -> Result<HermitianMatrix, EntrywiseError> {
    if n < 3 {
        return Err(EntrywiseError::BadParameters(format!("eps needs n >= 3, got {n}")));
    }
    if !(x < y && y < 0.0) {
        return Err(EntrywiseError::BadParameters(format!(
            "eps needs x < y < 0, got x={x}, y={y}"
        )));
    }
    Ok(HermitianMatrix::outer(&ones_then(n, &[real(y / x), real(x)]))?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComplexWitness {
    /// `√|z| (1, …, 1, conj(z)/|z|)`.
    ConjPair { z: Complex64 },
    /// `|z|^{-1/2} (z, |z|, 0, …, 0)`.
    ModulusSplit { z: Complex64 },
    /// `(z, conj(z'), 1, …, 1)` for `z, z'` on the unit circle.
    CirclePair { z: Complex64, z_prime: Complex64 },
    /// `(x, z, 1, …, 1)` for `x > 0`, `z` on the unit circle.
    ScaleCircle { x: f64, z: Complex64 },
}

impl ComplexWitness {
    fn vector(&self, n: usize) -> Result<Vec<Complex64>, EntrywiseError> {
        if n < 3 {
            return Err(EntrywiseError::BadParameters(format!(
                "complex witnesses need n >= 3, got {n}"
            )));
        }
        let nonzero = |z: Complex64| {
            if z.norm() > 0.0 {
                Ok(())
            } else {
                Err(EntrywiseError::BadParameters("z must be nonzero".into()))
            }
        };
        Ok(match *self {
            ComplexWitness::ConjPair { z } => {
                nonzero(z)?;
                let r = z.norm();
                let s = r.sqrt();
                let mut v = vec![real(s); n];
                v[n - 1] = z.conj() / r * s;
                v
            }
            ComplexWitness::ModulusSplit { z } => {
                nonzero(z)?;
                let r = z.norm();
                let s = r.sqrt().recip();
                let mut v = vec![real(0.0); n];
                v[0] = z * s;
                v[1] = real(r * s);
                v
            }
            ComplexWitness::CirclePair { z, z_prime } => {
                let mut v = vec![real(1.0); n];
                v[0] = z;
                v[1] = z_prime.conj();
                v
            }
            ComplexWitness::ScaleCircle { x, z } => {
                if !(x > 0.0) {
                    return Err(EntrywiseError::BadParameters(format!(
                        "scale_circle needs x > 0, got {x}"
                    )));
                }
                let mut v = vec![real(1.0); n];
                v[0] = real(x);
                v[1] = z;
                v
            }
        })
    }
}

/// Builds the complex witness and checks every entry lies in `region`.
pub fn witness_complex(
    kind: ComplexWitness,
    n: usize,
    region: &Region,
) -> Result<HermitianMatrix, EntrywiseError> {
    let m = HermitianMatrix::outer(&kind.vector(n)?)?;
    if let Some((row, col, value)) = m.upper_entries().find(|&(_, _, z)| !region.contains(z)) {
        return Err(EntrywiseError::WitnessOutsideRegion {
            row,
            col,
            value,
            region: region.to_string(),
        });
    }
    Ok(m)
}

/// Where a tested matrix came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    OnesX { x: f64 },
    OnesXy { x: f64, y: f64 },
    NegBlock { x: f64 },
    Eps { x: f64, y: f64 },
    Complex { witness: ComplexWitness },
    Random { seed: u64, trial: u64 },
}

impl Construction {
    /// Rebuilds the matrix for dimension `n` (random draws need `domain`).
    pub fn build(&self, n: usize, domain: &Region) -> Result<HermitianMatrix, EntrywiseError> {
        match *self {
            Construction::OnesX { x } => witness_ones_x(n, x),
            Construction::OnesXy { x, y } => witness_ones_xy(n, x, y),
            Construction::NegBlock { x } => witness_neg_block(n, x),
            Construction::Eps { x, y } => witness_eps(n, x, y),
            Construction::Complex { witness } => witness_complex(witness, n, domain),
            Construction::Random { seed, trial } => {
                let spec = ConeSpec::rank_one(n, domain.clone())?;
                sample_rank1(&spec, &mut trial_rng(seed, trial))
            }
        }
    }

    /// The 2×2 minor that the construction is designed to expose, as
    /// `(rows, cols)` for [`minor2`].
    pub fn designated_minor(&self, n: usize) -> Option<((usize, usize), (usize, usize))> {
        match *self {
            // K(1)K(x²) − K(x)²
            Construction::OnesX { .. } => Some(((n - 2, n - 1), (n - 2, n - 1))),
            // K(x)K(y) − K(1)K(xy)
            Construction::OnesXy { .. } => Some(((0, n - 1), (n - 2, 0))),
            // K(|x|)² − K(x)²
            Construction::NegBlock { .. } => Some(((0, 1), (0, 1))),
            // K(1)K(y) − K(y/x)K(x)
            Construction::Eps { .. } => Some(((n - 3, n - 1), (n - 3, n - 2))),
            // K(1)K(z') − K(zz')K(conj z)
            Construction::Complex {
                witness: ComplexWitness::CirclePair { .. },
            } => Some(((0, 2), (0, 1))),
            // K(xz)K(1) − K(z)K(x)
            Construction::Complex {
                witness: ComplexWitness::ScaleCircle { .. },
            } => Some(((1, 2), (0, 2))),
            _ => None,
        }
    }

    pub fn is_random(&self) -> bool {
        matches!(self, Construction::Random { .. })
    }
}

// ---------------------------------------------------------------------------
// Random rank-one draws

/// Independent stream per trial, so trial `i` does not depend on how many
/// draws earlier trials consumed.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn log_uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    if lo == hi {
        return lo;
    }
    let (a, b) = (lo.ln(), hi.ln());
    (a + rng.random::<f64>() * (b - a)).exp()
}

fn magnitude_range(pos: &Interval) -> Option<(f64, f64)> {
    let lo = pos.lo().max(SAMPLE_FLOOR).sqrt();
    let hi = pos.hi().min(SAMPLE_CEIL).sqrt();
    (lo <= hi).then_some((lo, hi))
}

fn all_entries_in(m: &HermitianMatrix, region: &Region) -> bool {
    m.upper_entries().all(|(_, _, z)| region.contains(z))
}

/// Draws `v v*` with every entry in the cone's domain.
///
/// Magnitudes are log-uniform in `(√max(lo₊, floor), √hi₊)`. Signs (real
/// case) or phases (complex case) are randomized only where the domain
/// admits them; every draw is checked exactly and rejected if any product
/// leaves the domain.
pub fn sample_rank1<R: Rng + ?Sized>(
    spec: &ConeSpec,
    rng: &mut R,
) -> Result<HermitianMatrix, EntrywiseError> {
    if spec.k() != 1 {
        return Err(EntrywiseError::UnsupportedCone(format!(
            "sample_rank1 draws rank-one matrices, got k = {}",
            spec.k()
        )));
    }
    let n = spec.n();
    let domain = spec.domain();
    let infeasible = || EntrywiseError::Infeasible {
        domain: domain.to_string(),
        attempts: MAX_SAMPLE_ATTEMPTS,
    };
    let section = domain.real_section().ok().flatten();
    let pos = section.as_ref().and_then(Interval::positive_part);
    let signed = section.as_ref().and_then(Interval::negative_part).is_some();
    let Some((lo, hi)) = pos.as_ref().and_then(magnitude_range) else {
        return Err(infeasible());
    };
    let complex = !domain.is_real();

    let mut v = vec![Complex64::new(0.0, 0.0); n];
    for attempt in 0..MAX_SAMPLE_ATTEMPTS {
        let strategy = if complex { attempt % 3 } else { 2 };
        for slot in v.iter_mut() {
            *slot = match strategy {
                0 => Complex64::from_polar(
                    log_uniform(rng, lo, hi),
                    rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
                ),
                1 => Complex64::from_polar(
                    1.0,
                    rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
                ),
                _ => {
                    let r = log_uniform(rng, lo, hi);
                    let neg = signed && rng.random::<bool>();
                    real(if neg { -r } else { r })
                }
            };
        }
        let m = HermitianMatrix::outer(&v)?;
        if all_entries_in(&m, domain) {
            return Ok(m);
        }
    }
    Err(infeasible())
}

// ---------------------------------------------------------------------------
// Witness grid

/// Index order visiting strides 16, 8, 4, 2, 1 of a grid.
fn coarse_to_fine(len: usize) -> Vec<Vec<usize>> {
    let mut levels = Vec::new();
    let mut stride = 16usize;
    loop {
        let mut level: Vec<usize> = (0..len).step_by(stride).collect();
        if len > 0 && !level.contains(&(len - 1)) {
            level.push(len - 1);
        }
        levels.push(level);
        if stride == 1 {
            break;
        }
        stride /= 2;
    }
    levels
}

fn coarse_to_fine_pairs(len: usize) -> Vec<(usize, usize)> {
    let levels = coarse_to_fine(len);
    let mut done = vec![false; len * len];
    let mut out = Vec::new();
    for level in levels {
        let mut idx = level.clone();
        idx.sort_unstable();
        for &i in &idx {
            for &j in &idx {
                if !done[i * len + j] {
                    done[i * len + j] = true;
                    out.push((i, j));
                }
            }
        }
    }
    out
}

fn coarse_to_fine_points(len: usize) -> Vec<usize> {
    let mut done = vec![false; len];
    let mut out = Vec::new();
    for level in coarse_to_fine(len) {
        for i in level {
            if !done[i] {
                done[i] = true;
                out.push(i);
            }
        }
    }
    out
}

/// Parameter grid for the structured witnesses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessGrid {
    /// Geometric grid strictly inside `(max(lo₊, 1/√hi₊), √hi₊)`.
    pub positive: Vec<f64>,
    /// Mirror image `−t` of the positive grid, restricted to the domain.
    pub negative: Vec<f64>,
    /// Angles for the complex constructions, in `(−π, π)`.
    pub angles: Vec<f64>,
}

impl WitnessGrid {
    pub fn for_interval(section: &Interval) -> Self {
        let mut positive = Vec::new();
        if let Some(pos) = section.positive_part() {
            let hi = pos.hi().min(SAMPLE_CEIL);
            let b = hi.sqrt();
            let a = pos.lo().max(1.0 / b);
            if a < b {
                let (la, lb) = (a.ln(), b.ln());
                let steps = (GRID_POINTS + 1) as f64;
                positive = (1..=GRID_POINTS)
                    .map(|k| (la + (lb - la) * k as f64 / steps).exp())
                    .collect();
            }
        }
        let negative = positive
            .iter()
            .map(|t| -t)
            .filter(|x| section.contains(*x))
            .collect();
        Self {
            positive,
            negative,
            angles: Vec::new(),
        }
    }

    pub fn for_region(region: &Region) -> Result<Self, EntrywiseError> {
        let section = region.real_section()?.ok_or_else(|| {
            EntrywiseError::UnsupportedCone(format!("{region} does not meet the real axis"))
        })?;
        let mut grid = Self::for_interval(&section);
        if !region.is_real() {
            let count = 12;
            grid.angles = (0..count)
                .map(|k| -std::f64::consts::PI + (k as f64 + 0.5) * 2.0 * std::f64::consts::PI / count as f64)
                .collect();
        }
        Ok(grid)
    }
}

fn magnitudes_along(region: &Region, dir: Complex64, count: usize) -> Vec<f64> {
    let Ok(Some(iv)) = region.ray_interval(dir) else {
        return Vec::new();
    };
    if iv.is_degenerate() {
        return vec![iv.lo()];
    }
    let lo = iv.lo().max(SAMPLE_FLOOR);
    let hi = iv.hi().min(SAMPLE_CEIL);
    if !(lo < hi) {
        return Vec::new();
    }
    let (a, b) = (lo.ln(), hi.ln());
    (1..=count)
        .map(|k| (a + (b - a) * k as f64 / (count + 1) as f64).exp())
        .chain(std::iter::once(1.0).filter(|one| iv.contains(*one)))
        .collect()
}

/// Deterministic witness list for `P_n^1(domain)`, already filtered to
/// matrices that lie in the input cone.
pub fn witness_sweep(
    n: usize,
    domain: &Region,
    tol: &ToleranceProfile,
) -> Result<Vec<(Construction, HermitianMatrix)>, EntrywiseError> {
    let grid = WitnessGrid::for_region(domain)?;
    let spec = ConeSpec::rank_one(n, domain.clone())?;
    let mut out = Vec::new();
    let mut push = |c: Construction| {
        if let Ok(m) = c.build(n, domain) {
            if cones::cone_membership(&m, &spec, tol).in_cone {
                out.push((c, m));
            }
        }
    };

    let pos = &grid.positive;
    if n >= 3 {
        for (i, j) in coarse_to_fine_pairs(pos.len()) {
            push(Construction::OnesXy { x: pos[i], y: pos[j] });
        }
    }
    for i in coarse_to_fine_points(pos.len()) {
        push(Construction::OnesX { x: pos[i] });
    }
    let neg = &grid.negative;
    for i in coarse_to_fine_points(neg.len()) {
        push(Construction::NegBlock { x: neg[i] });
    }
    if n >= 3 {
        // neg is decreasing (−t for increasing t), so x < y means i > j.
        for (i, j) in coarse_to_fine_pairs(neg.len()) {
            if neg[i] < neg[j] {
                push(Construction::Eps { x: neg[i], y: neg[j] });
            }
        }
        let mut mixed: Vec<f64> = neg.iter().rev().copied().chain(pos.iter().copied()).collect();
        mixed.dedup();
        for (i, j) in coarse_to_fine_pairs(mixed.len()) {
            if mixed[i] < 0.0 || mixed[j] < 0.0 {
                push(Construction::OnesXy {
                    x: mixed[i],
                    y: mixed[j],
                });
            }
        }
    }

    if n >= 3 && !grid.angles.is_empty() {
        let dirs: Vec<Complex64> = grid
            .angles
            .iter()
            .map(|&t| Complex64::from_polar(1.0, t))
            .collect();
        let mut points = Vec::new();
        for &d in &dirs {
            for r in magnitudes_along(domain, d, 5) {
                points.push(d * r);
            }
        }
        for &z in &points {
            push(Construction::Complex {
                witness: ComplexWitness::ConjPair { z },
            });
            push(Construction::Complex {
                witness: ComplexWitness::ModulusSplit { z },
            });
        }
        for &z in &dirs {
            for &zp in &dirs {
                push(Construction::Complex {
                    witness: ComplexWitness::CirclePair { z, z_prime: zp },
                });
            }
        }
        for &z in &dirs {
            for &x in pos.iter().step_by(4) {
                push(Construction::Complex {
                    witness: ComplexWitness::ScaleCircle { x, z },
                });
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Certificates and verdicts

/// The observable that shows an image is outside the target cone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    NegativeEigenvalue {
        lambda: f64,
        threshold: f64,
    },
    /// Rank exceeds 1, exhibited by a nonzero 2×2 minor.
    MinorViolation {
        rows: (usize, usize),
        cols: (usize, usize),
        value: Complex64,
        rank: usize,
    },
    RankExceeded {
        rank: usize,
        k: usize,
    },
    HermitianSymmetryLost {
        row: usize,
        col: usize,
        deviation: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub matrix: HermitianMatrix,
    pub construction: Construction,
    pub cone: ConeSpec,
    pub out_k: usize,
    pub failure: Failure,
    pub tolerance: ToleranceProfile,
}

fn out_cone(f: &CandidateFunction, n: usize, out_k: usize) -> Result<ConeSpec, EntrywiseError> {
    let codomain = if f.is_real() {
        Region::reals()
    } else {
        Region::complex_plane()
    };
    Ok(ConeSpec::new(n, out_k, codomain)?)
}

fn largest_minor(m: &HermitianMatrix) -> ((usize, usize), (usize, usize), Complex64) {
    let n = m.n();
    let mut best = ((0, 1), (0, 1), Complex64::new(0.0, 0.0));
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                for l in k + 1..n {
                    let v = minor2(m, (i, j), (k, l)).expect("indices in range");
                    if v.norm() > best.2.norm() {
                        best = ((i, j), (k, l), v);
                    }
                }
            }
        }
    }
    best
}

/// Tests one input matrix; `Some(failure)` when its image leaves the cone.
pub fn test_witness(
    f: &CandidateFunction,
    matrix: &HermitianMatrix,
    construction: &Construction,
    out_k: usize,
    tol: &ToleranceProfile,
) -> Result<Option<Failure>, EntrywiseError> {
    let n = matrix.n();
    let image = apply_entrywise(f, matrix)?;
    if let Some(d) = image.symmetry_defect {
        return Ok(Some(Failure::HermitianSymmetryLost {
            row: d.row,
            col: d.col,
            deviation: d.deviation,
        }));
    }
    let image = image.hermitian.expect("hermitian when no defect");
    let spec = out_cone(f, n, out_k)?;
    let report = cones::cone_membership(&image, &spec, tol);
    let Some(failure) = report.first_failure else {
        return Ok(None);
    };
    Ok(Some(match failure {
        ConeFailure::NotPsd {
            min_eigenvalue,
            threshold,
        } => Failure::NegativeEigenvalue {
            lambda: min_eigenvalue,
            threshold,
        },
        ConeFailure::RankExceeded { rank, k: 1 } => {
            let scale = report
                .eigenvalues
                .as_deref()
                .map(|ev| ev.iter().fold(0.0_f64, |a, v| a.max(v.abs())))
                .unwrap_or(0.0)
                .max(1.0);
            let designated = construction
                .designated_minor(n)
                .map(|(r, c)| (r, c, minor2(&image, r, c).expect("valid indices")))
                .filter(|(_, _, v)| v.norm() > tol.rank_tol() * scale * scale);
            let (rows, cols, value) = designated.unwrap_or_else(|| largest_minor(&image));
            Failure::MinorViolation {
                rows,
                cols,
                value,
                rank,
            }
        }
        ConeFailure::RankExceeded { rank, k } => Failure::RankExceeded { rank, k },
        ConeFailure::Dimension { expected, got } => {
            return Err(EntrywiseError::UnsupportedCone(format!(
                "image dimension {got} differs from {expected}"
            )))
        }
        ConeFailure::EntryDomain { row, col, value } => {
            return Err(EntrywiseError::NonFiniteValue {
                label: format!("{} (entry {value})", f.label()),
                row,
                col,
            })
        }
    }))
}

impl WitnessCertificate {
    /// Re-applies `f` to the recorded matrix and confirms the recorded
    /// failure is reproduced under the recorded tolerances.
    pub fn recheck(&self, f: &CandidateFunction) -> Result<bool, EntrywiseError> {
        if !cones::cone_membership(&self.matrix, &self.cone, &self.tolerance).in_cone {
            return Ok(false);
        }
        let image = apply_entrywise(f, &self.matrix)?;
        let n = self.matrix.n();
        match &self.failure {
            Failure::HermitianSymmetryLost { .. } => Ok(image.symmetry_defect.is_some()),
            other => {
                let Some(img) = image.hermitian else {
                    return Ok(false);
                };
                let ev = cones::eigenvalues(&img);
                let rank = cones::rank_from_eigenvalues(&ev, &self.tolerance);
                Ok(match other {
                    Failure::NegativeEigenvalue { .. } => {
                        !cones::psd_report_from_eigenvalues(&ev, &self.tolerance).psd
                    }
                    Failure::MinorViolation {
                        rows, cols, value, ..
                    } => {
                        rank > self.out_k
                            && rows.0.max(rows.1).max(cols.0).max(cols.1) < n
                            && minor2(&img, *rows, *cols)? == *value
                            && value.norm() > 0.0
                    }
                    Failure::RankExceeded { k, .. } => rank > *k,
                    Failure::HermitianSymmetryLost { .. } => unreachable!(),
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PreserverStatus {
    NoViolationFound,
    Violation { certificate: Box<WitnessCertificate> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreserverVerdict {
    #[serde(flatten)]
    pub status: PreserverStatus,
    /// Matrices examined (structured witnesses plus random draws).
    pub trials: usize,
    pub witnesses_checked: usize,
    pub random_trials: usize,
    pub seed: u64,
    /// Classification hypotheses the domain does not satisfy; verdicts on
    /// such domains are outside the scope of the classification.
    pub outside_hypotheses: Vec<String>,
}

impl PreserverVerdict {
    pub fn certificate(&self) -> Option<&WitnessCertificate> {
        match &self.status {
            PreserverStatus::Violation { certificate } => Some(certificate),
            PreserverStatus::NoViolationFound => None,
        }
    }
}

/// Hypotheses of the rank-one classification that `domain` fails.
pub fn hypothesis_gaps(domain: &Region, n: usize) -> Vec<String> {
    let mut gaps = Vec::new();
    if n < 3 {
        gaps.push(format!(
            "n = {n}: only positivity and rank are tested, the n >= 3 classification does not apply"
        ));
    }
    match domain.real_section() {
        Ok(Some(section)) => {
            if let Some(pos) = section.positive_part() {
                if pos.hi_closed() || (pos.lo() > 0.0 && pos.lo_closed()) {
                    gaps.push(format!("positive part of {section} is not open"));
                }
            }
            let sup = section.hi();
            if sup.is_finite() && section.contains(-sup) {
                gaps.push(format!("-sup = {} lies in {section}", -sup));
            }
        }
        _ => gaps.push(format!("real section of {domain} is not an interval")),
    }
    if !domain.is_real() {
        if !domain.closed_under_conjugation() {
            gaps.push("region is not closed under conjugation".into());
        }
        if !domain.closed_under_modulus() {
            gaps.push("region is not closed under modulus".into());
        }
    }
    gaps
}

fn require_one_interior(domain: &Region) -> Result<(), EntrywiseError> {
    match domain.real_section()? {
        Some(s) if s.contains_interior(1.0) => Ok(()),
        _ => Err(EntrywiseError::UnsupportedCone(format!(
            "the real section of {domain} must contain 1 as an interior point"
        ))),
    }
}

fn certificate(
    f: &CandidateFunction,
    spec: &ConeSpec,
    out_k: usize,
    construction: Construction,
    matrix: HermitianMatrix,
    failure: Failure,
    tol: &ToleranceProfile,
) -> Result<WitnessCertificate, EntrywiseError> {
    let cert = WitnessCertificate {
        matrix,
        construction,
        cone: spec.clone(),
        out_k,
        failure,
        tolerance: *tol,
    };
    debug_assert!(cert.recheck(f)?, "certificate must re-check");
    Ok(cert)
}

fn validate(
    f: &CandidateFunction,
    in_spec: &ConeSpec,
    out_k: usize,
) -> Result<(), EntrywiseError> {
    if in_spec.k() != 1 {
        return Err(EntrywiseError::UnsupportedCone(format!(
            "input cone must have rank bound 1, got {}",
            in_spec.k()
        )));
    }
    if out_k == 0 || out_k > in_spec.n() {
        return Err(ConeError::BadRank {
            n: in_spec.n(),
            k: out_k,
        }
        .into());
    }
    require_one_interior(in_spec.domain())?;
    let _ = f;
    Ok(())
}

/// Randomized falsification of `f[P_n^1(domain)] ⊂ P_n^{out_k}`.
///
/// Structured witnesses and random draws are interleaved (witness `i`, then
/// random trial `i`); the first failure in that order is reported.
pub fn check_preserver(
    f: &CandidateFunction,
    in_spec: &ConeSpec,
    out_k: usize,
    trials: usize,
    seed: u64,
    tol: &ToleranceProfile,
) -> Result<PreserverVerdict, EntrywiseError> {
    validate(f, in_spec, out_k)?;
    let n = in_spec.n();
    let witnesses = witness_sweep(n, in_spec.domain(), tol)?;
    let mut witnesses_checked = 0;
    let mut random_trials = 0;
    let verdict = |status, w, r| PreserverVerdict {
        status,
        trials: w + r,
        witnesses_checked: w,
        random_trials: r,
        seed,
        outside_hypotheses: hypothesis_gaps(in_spec.domain(), n),
    };
    for i in 0..witnesses.len().max(trials) {
        if let Some((construction, matrix)) = witnesses.get(i) {
            witnesses_checked += 1;
            if let Some(failure) = test_witness(f, matrix, construction, out_k, tol)? {
                let cert = certificate(f, in_spec, out_k, *construction, matrix.clone(), failure, tol)?;
                return Ok(verdict(
                    PreserverStatus::Violation {
                        certificate: Box::new(cert),
                    },
                    witnesses_checked,
                    random_trials,
                ));
            }
        }
        if i < trials {
            random_trials += 1;
            let construction = Construction::Random {
                seed,
                trial: i as u64,
            };
            let matrix = sample_rank1(in_spec, &mut trial_rng(seed, i as u64))?;
            if let Some(failure) = test_witness(f, &matrix, &construction, out_k, tol)? {
                let cert = certificate(f, in_spec, out_k, construction, matrix, failure, tol)?;
                return Ok(verdict(
                    PreserverStatus::Violation {
                        certificate: Box::new(cert),
                    },
                    witnesses_checked,
                    random_trials,
                ));
            }
        }
    }
    Ok(verdict(
        PreserverStatus::NoViolationFound,
        witnesses_checked,
        random_trials,
    ))
}

/// Certificate-first search into `P_n^1`: the whole structured witness grid
/// (coarse to fine), then `budget` random draws.
pub fn find_violation(
    f: &CandidateFunction,
    in_spec: &ConeSpec,
    budget: usize,
    seed: u64,
    tol: &ToleranceProfile,
) -> Result<Option<WitnessCertificate>, EntrywiseError> {
    validate(f, in_spec, 1)?;
    let n = in_spec.n();
    for (construction, matrix) in witness_sweep(n, in_spec.domain(), tol)? {
        if let Some(failure) = test_witness(f, &matrix, &construction, 1, tol)? {
            return certificate(f, in_spec, 1, construction, matrix, failure, tol).map(Some);
        }
    }
    for trial in 0..budget as u64 {
        let construction = Construction::Random { seed, trial };
        let matrix = sample_rank1(in_spec, &mut trial_rng(seed, trial))?;
        if let Some(failure) = test_witness(f, &matrix, &construction, 1, tol)? {
            return certificate(f, in_spec, 1, construction, matrix, failure, tol).map(Some);
        }
    }
    Ok(None)
}
