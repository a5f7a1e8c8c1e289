//! Recovering the power-family classification from sampled values.
//!
//! A [`SampleSet`] is a finite table `x ↦ K(x)`. The fits read off
//! `c = K(1)`, regress `α` on the positive axis (and `β` on the unit circle
//! for complex data), pick the family from the sign pattern on the negative
//! axis and then re-evaluate the fitted member on every sample.

use std::f64::consts::PI;
use std::io::Read;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::powerfam::{principal_arg, PowerError, PowerFamilyMember};
use crate::region::{Interval, Region, RegionError};

pub const DEFAULT_FIT_TOL: f64 = 1e-6;
/// Relative tolerance when matching a product or sum to a sampled point.
pub const DEFAULT_MATCH_TOL: f64 = 1e-12;
/// `|K(1)|` below this cannot normalize.
pub const NORMALIZATION_FLOOR: f64 = 1e-300;
/// Points with `||z| − 1|` below this count as unit-circle samples.
pub const CIRCLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error("line {line}: {reason}")]
    Csv { line: u64, reason: String },
    #[error("invalid sample set: {0}")]
    InvalidSamples(String),
    #[error("sample point {0} is outside the domain {1}")]
    OutsideDomain(Complex64, String),
    #[error("sample point {0} appears twice")]
    DuplicatePoint(Complex64),
    #[error("the sample set has no point at 1")]
    MissingUnit,
    #[error("too few samples: {0}")]
    InsufficientSamples(String),
    #[error("|K(1)| = {0:e} is too small to normalize")]
    DegenerateNormalization(f64),
    #[error("inconsistent with the classification: {0}")]
    Inconsistent(String),
    #[error(
        "sign map is not constant on the negative axis: K({positive_at})/K(1) > 0 but K({negative_at})/K(1) < 0; \
         this is the n = 2 exception, use the rank-2 fit"
    )]
    Rank2Exception { positive_at: f64, negative_at: f64 },
    #[error("samples are not conjugation-equivariant: |K(conj z) - conj K(z)| = {deviation:e} at z = {z}")]
    NotEquivariant { z: Complex64, deviation: f64 },
    #[error("not in the family: {reason} (residual {residual:e})")]
    NotInFamily { reason: String, residual: f64 },
    #[error(transparent)]
    Power(#[from] PowerError),
    #[error(transparent)]
    Region(#[from] RegionError),
}

/// Finite table of distinct points and values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    points: Vec<Complex64>,
    values: Vec<Complex64>,
    domain: Region,
}

impl SampleSet {
    pub fn new(
        points: Vec<Complex64>,
        values: Vec<Complex64>,
        domain: Region,
    ) -> Result<Self, ClassifyError> {
        if points.len() != values.len() {
            return Err(ClassifyError::InvalidSamples(format!(
                "{} points but {} values",
                points.len(),
                values.len()
            )));
        }
        if points.is_empty() {
            return Err(ClassifyError::InvalidSamples("no samples".into()));
        }
        for (p, v) in points.iter().zip(&values) {
            let finite = |z: &Complex64| z.re.is_finite() && z.im.is_finite();
            if !finite(p) || !finite(v) {
                return Err(ClassifyError::InvalidSamples(format!(
                    "non-finite sample {p} -> {v}"
                )));
            }
            if !domain.contains(*p) {
                return Err(ClassifyError::OutsideDomain(*p, domain.to_string()));
            }
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| cmp_point(points[a], points[b]));
        for w in order.windows(2) {
            if points[w[0]] == points[w[1]] {
                return Err(ClassifyError::DuplicatePoint(points[w[0]]));
            }
        }
        Ok(Self {
            points: order.iter().map(|&i| points[i]).collect(),
            values: order.iter().map(|&i| values[i]).collect(),
            domain,
        })
    }

    pub fn from_real(points: &[f64], values: &[f64], domain: Region) -> Result<Self, ClassifyError> {
        Self::new(
            points.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
            domain,
        )
    }

    /// Tabulates `f` on `points`.
    pub fn tabulate<F>(points: &[Complex64], domain: Region, mut f: F) -> Result<Self, ClassifyError>
    where
        F: FnMut(Complex64) -> Complex64,
    {
        let values = points.iter().map(|&z| f(z)).collect();
        Self::new(points.to_vec(), values, domain)
    }

    pub fn tabulate_real<F>(points: &[f64], domain: Region, mut f: F) -> Result<Self, ClassifyError>
    where
        F: FnMut(f64) -> f64,
    {
        let values: Vec<f64> = points.iter().map(|&x| f(x)).collect();
        Self::from_real(points, &values, domain)
    }

    /// Reads `x,value` (real) or `re_x,im_x,re_v,im_v` (complex) rows after a
    /// header line. The column count of the header decides the format.
    pub fn from_csv<R: Read>(reader: R, domain: Option<Region>) -> Result<Self, ClassifyError> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let header_len = rdr
            .headers()
            .map_err(|e| ClassifyError::Csv {
                line: 1,
                reason: e.to_string(),
            })?
            .len();
        if header_len != 2 && header_len != 4 {
            return Err(ClassifyError::Csv {
                line: 1,
                reason: format!(
                    "header must have 2 columns (x,value) or 4 (re_x,im_x,re_v,im_v), found {header_len}"
                ),
            });
        }
        let mut points = Vec::new();
        let mut values = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(|e| ClassifyError::Csv {
                line: e.position().map_or(0, |p| p.line()),
                reason: e.to_string(),
            })?;
            let line = record.position().map_or(0, |p| p.line());
            let nums = record
                .iter()
                .map(|f| {
                    f.parse::<f64>().map_err(|e| ClassifyError::Csv {
                        line,
                        reason: format!("`{f}`: {e}"),
                    })
                })
                .collect::<Result<Vec<f64>, _>>()?;
            match nums[..] {
                [x, v] if header_len == 2 => {
                    points.push(Complex64::new(x, 0.0));
                    values.push(Complex64::new(v, 0.0));
                }
                [a, b, c, d] if header_len == 4 => {
                    points.push(Complex64::new(a, b));
                    values.push(Complex64::new(c, d));
                }
                _ => {
                    return Err(ClassifyError::Csv {
                        line,
                        reason: format!("expected {header_len} fields, found {}", nums.len()),
                    })
                }
            }
        }
        if points.is_empty() {
            return Err(ClassifyError::Csv {
                line: 1,
                reason: "no data rows".into(),
            });
        }
        let domain = match domain {
            Some(d) => d,
            None => hull(&points)?,
        };
        Self::new(points, values, domain)
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn domain(&self) -> &Region {
        &self.domain
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.points.iter().chain(&self.values).all(|z| z.im == 0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        self.points.iter().copied().zip(self.values.iter().copied())
    }

    /// Value at exactly `z`.
    pub fn value_at(&self, z: Complex64) -> Option<Complex64> {
        self.points
            .binary_search_by(|p| cmp_point(*p, z))
            .ok()
            .map(|i| self.values[i])
    }

    /// Value at the sampled point within `rel_tol · max(1, |z|)` of `z`.
    pub fn value_near(&self, z: Complex64, rel_tol: f64) -> Option<Complex64> {
        let tol = rel_tol * z.norm().max(1.0);
        let start = self.points.partition_point(|p| p.re < z.re - tol);
        self.points[start..]
            .iter()
            .zip(&self.values[start..])
            .take_while(|(p, _)| p.re <= z.re + tol)
            .filter(|(p, _)| (**p - z).norm() <= tol)
            .min_by(|a, b| (*a.0 - z).norm().total_cmp(&(*b.0 - z).norm()))
            .map(|(_, v)| *v)
    }

    /// The subset of samples satisfying `keep`, over `domain`.
    pub fn restrict<F>(&self, domain: Region, keep: F) -> Result<Self, ClassifyError>
    where
        F: Fn(Complex64) -> bool,
    {
        let (points, values) = self.iter().filter(|(p, _)| keep(*p)).unzip();
        Self::new(points, values, domain)
    }
}

fn cmp_point(a: Complex64, b: Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Closed interval hull of real points, or the closed disc through the
/// farthest point for complex ones.
fn hull(points: &[Complex64]) -> Result<Region, ClassifyError> {
    if points.iter().all(|z| z.im == 0.0) {
        let lo = points.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        let hi = points.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
        Ok(Region::RealInterval(Interval::closed(lo, hi)?))
    } else {
        let r = points.iter().map(|z| z.norm()).fold(0.0, f64::max);
        Ok(Region::disc(Complex64::new(0.0, 0.0), r, true)?)
    }
}

fn rel_dev(a: Complex64, b: Complex64) -> f64 {
    let d = (a - b).norm();
    if d == 0.0 {
        0.0
    } else {
        d / a.norm().max(b.norm())
    }
}

/// Max over samples of `|v − m(x)| / max(|v|, |m(x)|)`.
pub fn member_residual(member: &PowerFamilyMember, s: &SampleSet) -> Result<f64, ClassifyError> {
    let mut worst = 0.0_f64;
    for (p, v) in s.iter() {
        worst = worst.max(rel_dev(v, member.eval(p)?));
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    /// Relative acceptance threshold for residuals.
    pub tol: f64,
    /// Relative tolerance for matching products to sampled points.
    pub match_tol: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_FIT_TOL,
            match_tol: DEFAULT_MATCH_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplicativityReport {
    pub ok: bool,
    /// `max |K(xy) − K(x)K(y)/K(1)| / max(1, |K(xy)|, |K(x)K(y)/K(1)|)`.
    pub max_residual: f64,
    /// Absolute deviation at the worst triple.
    pub worst_deviation: f64,
    pub worst_pair: Option<(Complex64, Complex64)>,
    pub triples: usize,
}

/// Checks `K(xy) = K(x)K(y)/K(1)` on every sampled pair whose product is
/// also sampled.
pub fn check_multiplicative(s: &SampleSet, opts: &FitOptions) -> Result<MultiplicativityReport, ClassifyError> {
    let k1 = s.value_at(Complex64::new(1.0, 0.0)).ok_or(ClassifyError::MissingUnit)?;
    if k1.norm() < NORMALIZATION_FLOOR {
        return Err(ClassifyError::DegenerateNormalization(k1.norm()));
    }
    let mut report = MultiplicativityReport {
        ok: true,
        max_residual: 0.0,
        worst_deviation: 0.0,
        worst_pair: None,
        triples: 0,
    };
    for (x, kx) in s.iter() {
        for (y, ky) in s.iter() {
            let Some(kxy) = s.value_near(x * y, opts.match_tol) else {
                continue;
            };
            report.triples += 1;
            let predicted = kx * ky / k1;
            let dev = (kxy - predicted).norm();
            let res = dev / kxy.norm().max(predicted.norm()).max(1.0);
            if res > report.max_residual || report.worst_pair.is_none() {
                report.max_residual = res;
                report.worst_deviation = dev;
                report.worst_pair = Some((x, y));
            }
        }
    }
    report.ok = report.max_residual <= opts.tol;
    Ok(report)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FitDiagnostics {
    pub multiplicativity: Option<f64>,
    /// Worst `||K(x)| − |c||x|^α|` (relative) over sampled negative `x`.
    pub sign_consistency: Option<f64>,
    /// `|β̂ − round(β̂)|` for complex fits.
    pub beta_integrality: Option<f64>,
    pub equivariance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Alternative {
    pub member: PowerFamilyMember,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub member: PowerFamilyMember,
    /// [`member_residual`] of `member` over the samples.
    pub residual: f64,
    pub diagnostics: FitDiagnostics,
    /// Set when the samples cannot tell `member` from `alternatives`.
    pub ambiguous: bool,
    pub alternatives: Vec<Alternative>,
}

impl ClassificationResult {
    pub fn recompute_residual(&self, s: &SampleSet) -> Result<f64, ClassifyError> {
        member_residual(&self.member, s)
    }
}

/// Least-squares slope through the origin.
fn slope(pairs: impl Iterator<Item = (f64, f64)>) -> Option<f64> {
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in pairs {
        sxy += x * y;
        sxx += x * x;
    }
    (sxx > 0.0).then(|| sxy / sxx)
}

fn real_samples(s: &SampleSet) -> Result<Vec<(f64, f64)>, ClassifyError> {
    if !s.is_real() {
        return Err(ClassifyError::InvalidSamples(
            "real fit needs real points and values".into(),
        ));
    }
    Ok(s.iter().map(|(p, v)| (p.re, v.re)).collect())
}

fn real_unit(s: &SampleSet) -> Result<f64, ClassifyError> {
    Ok(s.value_at(Complex64::new(1.0, 0.0)).ok_or(ClassifyError::MissingUnit)?.re)
}

/// `α` from `log(K(x)/c) ≈ α log x` over positive `x ≠ 1`.
fn fit_alpha(pos: &[(f64, f64)], c: f64) -> Result<f64, ClassifyError> {
    if pos.len() < 3 {
        return Err(ClassifyError::InsufficientSamples(format!(
            "need at least 3 positive points besides 1, got {}",
            pos.len()
        )));
    }
    for &(x, v) in pos {
        if v == 0.0 {
            return Err(ClassifyError::Inconsistent(format!(
                "K({x}) = 0 while K(1) = {c} is nonzero"
            )));
        }
        if v / c < 0.0 {
            return Err(ClassifyError::Inconsistent(format!(
                "K({x}) and K(1) have opposite signs on the positive axis"
            )));
        }
    }
    Ok(slope(pos.iter().map(|&(x, v)| (x.ln(), (v / c).ln()))).expect("x ≠ 1 gives log x ≠ 0"))
}

/// Fits `c·φ_α`, `c·ψ_α` or the constant `c` to real samples.
pub fn fit_real_power(s: &SampleSet, opts: &FitOptions) -> Result<ClassificationResult, ClassifyError> {
    let samples = real_samples(s)?;
    let c = real_unit(s)?;
    if c.abs() < NORMALIZATION_FLOOR {
        if samples.iter().all(|&(_, v)| v == 0.0) {
            return Ok(ClassificationResult {
                member: PowerFamilyMember::Zero,
                residual: 0.0,
                diagnostics: FitDiagnostics::default(),
                ambiguous: false,
                alternatives: Vec::new(),
            });
        }
        return Err(ClassifyError::Inconsistent(
            "K(1) = 0 but some sampled values are nonzero".into(),
        ));
    }
    let pos: Vec<(f64, f64)> = samples.iter().copied().filter(|&(x, _)| x > 0.0 && x != 1.0).collect();
    let neg: Vec<(f64, f64)> = samples.iter().copied().filter(|&(x, _)| x < 0.0).collect();
    let at_zero = samples.iter().find(|&&(x, _)| x == 0.0).map(|&(_, v)| v);
    let section = s.domain().real_section()?;
    let zero_in_domain = s.domain().contains_real(0.0);
    let negatives_in_domain = section.as_ref().and_then(Interval::negative_part).is_some();

    let multiplicativity = check_multiplicative(s, opts).ok().filter(|r| r.triples > 0).map(|r| r.max_residual);
    let mut diagnostics = FitDiagnostics {
        multiplicativity,
        ..Default::default()
    };

    // Constant: every value equals c, including at 0 when sampled.
    let all_c = samples.iter().all(|&(_, v)| rel_dev(Complex64::new(v, 0.0), Complex64::new(c, 0.0)) <= opts.tol);
    if all_c {
        let member = PowerFamilyMember::constant(c)?;
        let residual = member_residual(&member, s)?;
        let mut alternatives = Vec::new();
        if zero_in_domain && at_zero.is_none() {
            // φ_0 = 1 off the origin; only K(0) separates it from the constant.
            let phi0 = PowerFamilyMember::phi(c, 0.0)?;
            alternatives.push(Alternative {
                member: phi0,
                residual: member_residual(&phi0, s)?,
            });
        }
        return Ok(ClassificationResult {
            member,
            residual,
            diagnostics,
            ambiguous: !alternatives.is_empty(),
            alternatives,
        });
    }

    let alpha = fit_alpha(&pos, c)?;
    let mut positive_at = None;
    let mut negative_at = None;
    for &(x, v) in &neg {
        let r = v / c;
        if r > 0.0 {
            positive_at.get_or_insert(x);
        } else if r < 0.0 {
            negative_at.get_or_insert(x);
        } else {
            return Err(ClassifyError::Inconsistent(format!(
                "K({x}) = 0 on the negative axis while K(1) ≠ 0"
            )));
        }
    }
    let (member, ambiguous_alt) = match (positive_at, negative_at) {
        (Some(p), Some(q)) => {
            return Err(ClassifyError::Rank2Exception {
                positive_at: p,
                negative_at: q,
            })
        }
        (None, Some(_)) => (PowerFamilyMember::psi(c, alpha)?, None),
        (Some(_), None) => (PowerFamilyMember::phi(c, alpha)?, None),
        (None, None) if negatives_in_domain => (
            PowerFamilyMember::phi(c, alpha)?,
            Some(PowerFamilyMember::psi(c, alpha)?),
        ),
        (None, None) => (PowerFamilyMember::phi(c, alpha)?, None),
    };
    if let Some(v0) = at_zero {
        if v0 != 0.0 {
            return Err(ClassifyError::NotInFamily {
                reason: format!("K(0) = {v0} but power families vanish at 0"),
                residual: 1.0,
            });
        }
    }
    if !neg.is_empty() {
        let mut worst = 0.0_f64;
        for &(x, v) in &neg {
            let m = member.eval_real(x)?;
            worst = worst.max(rel_dev(Complex64::new(v.abs(), 0.0), Complex64::new(m.abs(), 0.0)));
        }
        diagnostics.sign_consistency = Some(worst);
    }
    let residual = member_residual(&member, s)?;
    if residual > opts.tol {
        return Err(ClassifyError::NotInFamily {
            reason: format!("best fit {member} does not reproduce the samples"),
            residual,
        });
    }
    let alternatives = match ambiguous_alt {
        Some(alt) => vec![Alternative {
            member: alt,
            residual: member_residual(&alt, s)?,
        }],
        None => Vec::new(),
    };
    Ok(ClassificationResult {
        member,
        residual,
        diagnostics,
        ambiguous: !alternatives.is_empty(),
        alternatives,
    })
}

/// Fits `c·Ψ_{α,β}` with integral `β` to complex samples.
///
/// Needs positive-real samples (for `c` and `α`) and at least 8 unit-circle
/// samples (for `β`).
pub fn fit_complex_power(s: &SampleSet, opts: &FitOptions) -> Result<ClassificationResult, ClassifyError> {
    let k1 = s.value_at(Complex64::new(1.0, 0.0)).ok_or(ClassifyError::MissingUnit)?;
    if !(k1.re > 0.0) || k1.im.abs() > opts.tol * k1.re {
        return Err(ClassifyError::Inconsistent(format!("K(1) = {k1} must be positive")));
    }
    let c = k1.re;

    let mut pos = Vec::new();
    for (p, v) in s.iter() {
        if p.im == 0.0 && p.re > 0.0 && p.re != 1.0 {
            if v.im.abs() > opts.tol * v.norm() {
                return Err(ClassifyError::NotInFamily {
                    reason: format!("K({}) = {v} is not real on the positive axis", p.re),
                    residual: v.im.abs() / v.norm(),
                });
            }
            pos.push((p.re, v.re));
        }
    }
    let alpha = fit_alpha(&pos, c)?;

    // Phases on the unit circle, unwrapped outward from θ = 0.
    let mut circle: Vec<(f64, f64)> = s
        .iter()
        .filter(|(p, _)| (p.norm() - 1.0).abs() <= CIRCLE_TOL)
        .map(|(p, v)| (principal_arg(p), principal_arg(v / c)))
        .collect();
    if circle.len() < 8 {
        return Err(ClassifyError::InsufficientSamples(format!(
            "need at least 8 unit-circle samples, got {}",
            circle.len()
        )));
    }
    circle.sort_by(|a, b| a.0.total_cmp(&b.0));
    let start = circle
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .0.abs().total_cmp(&b.1 .0.abs()))
        .map(|(i, _)| i)
        .expect("nonempty");
    let mut unwrapped = vec![0.0; circle.len()];
    // Anchor: the phase at θ ≈ 0 is taken as its principal value.
    unwrapped[start] = circle[start].1;
    let wrap = |prev: f64, cur: f64| cur + 2.0 * PI * ((prev - cur) / (2.0 * PI)).round();
    for i in start + 1..circle.len() {
        unwrapped[i] = wrap(unwrapped[i - 1], circle[i].1);
    }
    for i in (0..start).rev() {
        unwrapped[i] = wrap(unwrapped[i + 1], circle[i].1);
    }
    let beta_hat = slope(circle.iter().zip(&unwrapped).map(|(&(t, _), &u)| (t, u)))
        .ok_or_else(|| ClassifyError::InsufficientSamples("unit-circle samples are all at θ = 0".into()))?;
    let beta_round = beta_hat.round();
    let integrality = (beta_hat - beta_round).abs();
    if integrality > opts.tol || beta_round.abs() > i32::MAX as f64 {
        return Err(ClassifyError::NotInFamily {
            reason: format!("phase slope {beta_hat} on the unit circle is not an integer"),
            residual: integrality,
        });
    }
    let beta = beta_round as i32;

    let mut equivariance = 0.0_f64;
    for (p, v) in s.iter() {
        if p.im == 0.0 {
            continue;
        }
        if let Some(w) = s.value_near(p.conj(), opts.match_tol) {
            let dev = (w - v.conj()).norm();
            let rel = dev / v.norm().max(w.norm()).max(f64::MIN_POSITIVE);
            if rel > opts.tol {
                return Err(ClassifyError::NotEquivariant { z: p, deviation: dev });
            }
            equivariance = equivariance.max(rel);
        }
    }

    let member = PowerFamilyMember::complex_power(c, alpha, beta)?;
    let residual = member_residual(&member, s)?;
    if residual > opts.tol {
        return Err(ClassifyError::NotInFamily {
            reason: format!("best fit {member} does not reproduce the samples"),
            residual,
        });
    }
    Ok(ClassificationResult {
        member,
        residual,
        diagnostics: FitDiagnostics {
            multiplicativity: check_multiplicative(s, opts)
                .ok()
                .filter(|r| r.triples > 0)
                .map(|r| r.max_residual),
            sign_consistency: None,
            beta_integrality: Some(integrality),
            equivariance: Some(equivariance),
        },
        ambiguous: false,
        alternatives: Vec::new(),
    })
}

/// `K(x) = ε(x) K(|x|)` with a sign map `ε` on the negative axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rank2ExceptionProfile {
    /// Fit on the nonnegative axis.
    pub base: PowerFamilyMember,
    /// `(x, ε(x))` for each sampled negative `x`, ascending.
    pub eps: Vec<(f64, i8)>,
    /// Worst relative `||K(x)| − base(|x|)|` over negative samples, or the
    /// base fit residual if larger.
    pub residual: f64,
}

impl Rank2ExceptionProfile {
    pub fn is_constant_sign(&self) -> bool {
        self.eps.windows(2).all(|w| w[0].1 == w[1].1)
    }

    /// Sign at the sampled negative point nearest to `x` in `log|x|`.
    pub fn sign_near(&self, x: f64) -> Option<i8> {
        let lx = x.abs().ln();
        self.eps
            .iter()
            .min_by(|a, b| (a.0.abs().ln() - lx).abs().total_cmp(&(b.0.abs().ln() - lx).abs()))
            .map(|&(_, e)| e)
    }

    /// `base(x)` for `x ≥ 0`, `ε(x)·base(|x|)` otherwise, with `ε` extended
    /// from the samples by nearest neighbour.
    pub fn eval(&self, x: f64) -> Result<f64, ClassifyError> {
        if x >= 0.0 {
            return Ok(self.base.eval_real(x)?);
        }
        let e = self.sign_near(x).unwrap_or(1);
        Ok(f64::from(e) * self.base.eval_real(-x)?)
    }
}

/// Fits the n = 2 exception: a power family on `x ≥ 0` and a sign map on
/// the sampled negative points.
pub fn fit_rank2_exception(s: &SampleSet, opts: &FitOptions) -> Result<Rank2ExceptionProfile, ClassifyError> {
    let samples = real_samples(s)?;
    let section = s.domain().real_section()?.ok_or_else(|| {
        ClassifyError::InvalidSamples(format!("{} does not meet the real axis", s.domain()))
    })?;
    let nonneg = section
        .intersect(&Interval::new(0.0, f64::INFINITY, true, false)?)
        .ok_or_else(|| ClassifyError::InsufficientSamples("domain has no nonnegative part".into()))?;
    let base_samples = s.restrict(Region::RealInterval(nonneg), |p| p.re >= 0.0)?;
    let base_fit = fit_real_power(&base_samples, opts)?;
    let base = base_fit.member;

    let mut eps = Vec::new();
    let mut residual = base_fit.residual;
    for &(x, v) in samples.iter().filter(|&&(x, _)| x < 0.0) {
        let b = base.eval_real(-x)?;
        let dev = rel_dev(Complex64::new(v.abs(), 0.0), Complex64::new(b.abs(), 0.0));
        if dev > opts.tol || v == 0.0 {
            return Err(ClassifyError::NotInFamily {
                reason: format!("|K({x})| = {} differs from base(|x|) = {b}", v.abs()),
                residual: dev,
            });
        }
        residual = residual.max(dev);
        eps.push((x, if v / b > 0.0 { 1 } else { -1 }));
    }
    Ok(Rank2ExceptionProfile { base, eps, residual })
}
