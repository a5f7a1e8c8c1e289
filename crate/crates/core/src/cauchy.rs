//! The four Cauchy functional equations on intervals, the `C^n`
//! multiplicative-map predicate and a finite Dedekind independence test.
//!
//! Each classifier first checks its identity on every sampled pair whose
//! sum (or product) is also sampled, then fits the one remaining parameter
//! by least squares through the origin.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{self, ClassifyError, FitOptions, SampleSet};
use crate::powerfam::PowerFamilyMember;
use crate::region::RegionError;

/// Default relative threshold `σ_min / σ_max` for independence.
pub const DEFAULT_INDEPENDENCE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CauchyError {
    #[error("{equation} equation fails: residual {residual:e} at ({x}, {y})")]
    NotSatisfied {
        equation: Equation,
        residual: f64,
        x: f64,
        y: f64,
    },
    #[error("no sampled pair has its {0} also sampled")]
    NoTriples(&'static str),
    #[error("domain requirement: {0}")]
    Domain(String),
    #[error("inconsistent with the classification: {0}")]
    Inconsistent(String),
    #[error("invalid member list: {0}")]
    Members(String),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Region(#[from] RegionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Equation {
    /// `K(x+y) = K(x) + K(y)`
    Additive,
    /// `K(xy) = K(x) K(y)`
    Multiplicative,
    /// `K(x+y) = K(x) K(y)`
    Exponential,
    /// `K(xy) = K(x) + K(y)`
    Logarithmic,
}

impl std::fmt::Display for Equation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Equation::Additive => "additive",
            Equation::Multiplicative => "multiplicative",
            Equation::Exponential => "exponential",
            Equation::Logarithmic => "logarithmic",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CauchySolution {
    Zero,
    Linear { beta: f64 },
    Power { member: PowerFamilyMember },
    Exp { beta: f64 },
    Log { beta: f64 },
}

impl CauchySolution {
    pub fn eval(&self, x: f64) -> Result<f64, CauchyError> {
        Ok(match *self {
            CauchySolution::Zero => 0.0,
            CauchySolution::Linear { beta } => beta * x,
            CauchySolution::Power { member } => member.eval_real(x).map_err(ClassifyError::from)?,
            CauchySolution::Exp { beta } => (beta * x).exp(),
            CauchySolution::Log { beta } => beta * x.ln(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CauchyVerdict {
    pub equation: Equation,
    pub solution: CauchySolution,
    /// [`solution_residual`] over the samples.
    pub residual: f64,
    /// Worst relative defect of the functional equation itself.
    pub equation_residual: f64,
    pub triples: usize,
}

impl CauchyVerdict {
    pub fn recompute_residual(&self, s: &SampleSet) -> Result<f64, CauchyError> {
        solution_residual(&self.solution, s)
    }
}

/// `max |v − K(x)| / max(1, |v|, |K(x)|)` over the samples.
pub fn solution_residual(sol: &CauchySolution, s: &SampleSet) -> Result<f64, CauchyError> {
    let mut worst = 0.0_f64;
    for (x, v) in real(s)? {
        let m = sol.eval(x)?;
        worst = worst.max((v - m).abs() / v.abs().max(m.abs()).max(1.0));
    }
    Ok(worst)
}

fn real(s: &SampleSet) -> Result<Vec<(f64, f64)>, CauchyError> {
    if !s.is_real() {
        return Err(ClassifyError::InvalidSamples("Cauchy classifiers need real samples".into()).into());
    }
    Ok(s.iter().map(|(p, v)| (p.re, v.re)).collect())
}

struct TripleScan {
    residual: f64,
    worst: (f64, f64),
    triples: usize,
}

/// Scans `(x, y)` with `combine(x, y)` sampled and returns the worst
/// `|K(combine) − rhs| / max(1, |K(combine)|, |rhs|)`.
fn scan(
    s: &SampleSet,
    opts: &FitOptions,
    combine: impl Fn(f64, f64) -> f64,
    rhs: impl Fn(f64, f64) -> f64,
) -> Result<TripleScan, CauchyError> {
    let pts = real(s)?;
    let mut out = TripleScan {
        residual: 0.0,
        worst: (f64::NAN, f64::NAN),
        triples: 0,
    };
    for &(x, kx) in &pts {
        for &(y, ky) in &pts {
            let Some(kz) = s.value_near(Complex64::new(combine(x, y), 0.0), opts.match_tol) else {
                continue;
            };
            let kz = kz.re;
            let r = rhs(kx, ky);
            let res = (kz - r).abs() / kz.abs().max(r.abs()).max(1.0);
            if out.triples == 0 || res > out.residual {
                out.residual = res;
                out.worst = (x, y);
            }
            out.triples += 1;
        }
    }
    Ok(out)
}

fn require(eq: Equation, scan: &TripleScan, opts: &FitOptions, what: &'static str) -> Result<(), CauchyError> {
    if scan.triples == 0 {
        return Err(CauchyError::NoTriples(what));
    }
    if scan.residual > opts.tol {
        return Err(CauchyError::NotSatisfied {
            equation: eq,
            residual: scan.residual,
            x: scan.worst.0,
            y: scan.worst.1,
        });
    }
    Ok(())
}

fn interior(s: &SampleSet, point: f64) -> Result<(), CauchyError> {
    match s.domain().real_section()? {
        Some(iv) if iv.contains_interior(point) => Ok(()),
        _ => Err(CauchyError::Domain(format!(
            "{point} must be an interior point of {}",
            s.domain()
        ))),
    }
}

fn slope(pairs: impl Iterator<Item = (f64, f64)>) -> f64 {
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in pairs {
        sxy += x * y;
        sxx += x * x;
    }
    if sxx > 0.0 {
        sxy / sxx
    } else {
        0.0
    }
}

fn verdict(
    equation: Equation,
    solution: CauchySolution,
    scan: &TripleScan,
    s: &SampleSet,
) -> Result<CauchyVerdict, CauchyError> {
    Ok(CauchyVerdict {
        equation,
        solution,
        residual: solution_residual(&solution, s)?,
        equation_residual: scan.residual,
        triples: scan.triples,
    })
}

/// `g(x+y) = g(x) + g(y)` on an interval with 0 in its interior gives
/// `g(x) = βx`.
pub fn classify_additive(s: &SampleSet, opts: &FitOptions) -> Result<CauchyVerdict, CauchyError> {
    interior(s, 0.0)?;
    let sc = scan(s, opts, |x, y| x + y, |a, b| a + b)?;
    require(Equation::Additive, &sc, opts, "sum")?;
    let beta = slope(real(s)?.into_iter());
    verdict(Equation::Additive, CauchySolution::Linear { beta }, &sc, s)
}

/// `K(xy) = K(x)K(y)`: zero, the constant 1, `φ_α` or `ψ_α`.
pub fn classify_multiplicative(s: &SampleSet, opts: &FitOptions) -> Result<CauchyVerdict, CauchyError> {
    let pts = real(s)?;
    let sc = scan(s, opts, |x, y| x * y, |a, b| a * b)?;
    if pts.iter().all(|&(_, v)| v == 0.0) {
        require(Equation::Multiplicative, &sc, opts, "product")?;
        return verdict(Equation::Multiplicative, CauchySolution::Zero, &sc, s);
    }
    let k1 = s
        .value_at(Complex64::new(1.0, 0.0))
        .ok_or(ClassifyError::MissingUnit)?
        .re;
    // K(1) = K(1)², so a nonzero solution has K(1) = 1.
    if (k1 - 1.0).abs() > opts.tol {
        return Err(CauchyError::Inconsistent(format!(
            "K(1) = {k1}, but a nonzero multiplicative map has K(1) = 1"
        )));
    }
    require(Equation::Multiplicative, &sc, opts, "product")?;
    let fit = classify::fit_real_power(s, opts)?;
    let member = fit.member.with_multiplier(1.0).map_err(ClassifyError::from)?;
    verdict(Equation::Multiplicative, CauchySolution::Power { member }, &sc, s)
}

/// `K(x+y) = K(x)K(y)` with 0 interior: zero or `exp(βx)`.
pub fn classify_exponential(s: &SampleSet, opts: &FitOptions) -> Result<CauchyVerdict, CauchyError> {
    interior(s, 0.0)?;
    let pts = real(s)?;
    let sc = scan(s, opts, |x, y| x + y, |a, b| a * b)?;
    require(Equation::Exponential, &sc, opts, "sum")?;
    let zeros = pts.iter().filter(|&&(_, v)| v == 0.0).count();
    if zeros == pts.len() {
        return verdict(Equation::Exponential, CauchySolution::Zero, &sc, s);
    }
    if zeros > 0 {
        return Err(CauchyError::Inconsistent(
            "a zero value forces K ≡ 0, but other samples are nonzero".into(),
        ));
    }
    if let Some(&(x, v)) = pts.iter().find(|&&(_, v)| v < 0.0) {
        return Err(CauchyError::Inconsistent(format!(
            "K({x}) = {v} < 0, but K(x) = K(x/2)² ≥ 0"
        )));
    }
    let beta = slope(pts.iter().map(|&(x, v)| (x, v.ln())));
    verdict(Equation::Exponential, CauchySolution::Exp { beta }, &sc, s)
}

/// `K(xy) = K(x) + K(y)` with 1 interior: zero when `0` is in the domain,
/// otherwise `β ln x`.
pub fn classify_logarithmic(s: &SampleSet, opts: &FitOptions) -> Result<CauchyVerdict, CauchyError> {
    interior(s, 1.0)?;
    let pts = real(s)?;
    let sc = scan(s, opts, |x, y| x * y, |a, b| a + b)?;
    if s.domain().contains_real(0.0) {
        // K(0) = K(x·0) = K(x) + K(0).
        if let Some(&(x, v)) = pts.iter().find(|&&(_, v)| v != 0.0) {
            return Err(CauchyError::Inconsistent(format!(
                "0 is in the domain, which forces K ≡ 0, but K({x}) = {v}"
            )));
        }
        return verdict(Equation::Logarithmic, CauchySolution::Zero, &sc, s);
    }
    require(Equation::Logarithmic, &sc, opts, "product")?;
    let beta = slope(pts.iter().map(|&(x, v)| (x.ln(), v)));
    verdict(Equation::Logarithmic, CauchySolution::Log { beta }, &sc, s)
}

/// Whether `m` is an `n` times continuously differentiable multiplicative
/// map at the origin: zero, the constant 1, `x^α` for integer
/// `α ∈ (0, n]` (`φ_α` for even, `ψ_α` for odd `α`), or `φ_α`, `ψ_α`
/// with `α > n`.
///
/// The test concerns regularity at 0; away from 0 every power is smooth.
/// Non-unit multipliers are not multiplicative and return false, as do
/// complex powers.
pub fn is_cn_multiplicative(m: &PowerFamilyMember, n: u32) -> bool {
    match *m {
        PowerFamilyMember::Zero => true,
        PowerFamilyMember::Constant { c } => c == 1.0,
        PowerFamilyMember::ComplexPower { .. } => false,
        PowerFamilyMember::Phi { c, alpha } | PowerFamilyMember::Psi { c, alpha } => {
            if c != 1.0 || alpha <= 0.0 {
                return false;
            }
            if alpha > f64::from(n) {
                return true;
            }
            if alpha.fract() != 0.0 {
                return false;
            }
            let even = alpha % 2.0 == 0.0;
            matches!(m, PowerFamilyMember::Phi { .. }) == even
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub independent: bool,
    pub smallest_singular_value: f64,
    pub largest_singular_value: f64,
    pub threshold: f64,
}

/// Linear independence of the members as functions on `grid`, from the
/// singular values of the evaluation matrix `E[p][j] = m_j(grid[p])`.
pub fn dedekind_independence(
    members: &[PowerFamilyMember],
    grid: &[Complex64],
    rel_threshold: f64,
) -> Result<IndependenceReport, CauchyError> {
    if members.is_empty() {
        return Err(CauchyError::Members("no members".into()));
    }
    for (i, a) in members.iter().enumerate() {
        if members[..i].contains(a) {
            return Err(CauchyError::Members(format!("{a} is listed twice")));
        }
    }
    if grid.len() < members.len() {
        return Err(CauchyError::Members(format!(
            "grid has {} points for {} members",
            grid.len(),
            members.len()
        )));
    }
    let mut e = DMatrix::<Complex64>::zeros(grid.len(), members.len());
    for (j, m) in members.iter().enumerate() {
        let mut nonzero = false;
        for (p, &z) in grid.iter().enumerate() {
            let v = m.eval(z).map_err(ClassifyError::from)?;
            nonzero |= v.norm() > 0.0;
            e[(p, j)] = v;
        }
        if !nonzero {
            return Err(CauchyError::Members(format!("{m} vanishes on the grid")));
        }
    }
    let sv = e.singular_values();
    let largest = sv.iter().copied().fold(0.0, f64::max);
    let smallest = sv.iter().copied().fold(f64::INFINITY, f64::min);
    let threshold = rel_threshold * largest;
    Ok(IndependenceReport {
        independent: smallest > threshold,
        smallest_singular_value: smallest,
        largest_singular_value: largest,
        threshold,
    })
}
