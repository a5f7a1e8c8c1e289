//! The classified families: constants, the even and odd real powers
//! `φ_α(x) = |x|^α`, `ψ_α(x) = sgn(x)|x|^α`, and the complex powers
//! `Ψ_{α,β}(r e^{iθ}) = r^α e^{iβθ}` with integral `β`.
//!
//! All three power families vanish at the origin for every exponent,
//! including `α ≤ 0`.
//!
//! The phase factor `e^{iβθ}` is computed as `(z/|z|)^β` by repeated
//! multiplication. Because `β` is integral this equals `e^{iβθ}` for any
//! choice of branch, so the result is exactly real on the negative axis and
//! conjugation commutes with evaluation bit for bit.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PowerError {
    #[error("invalid member: {0}")]
    Invalid(String),
    #[error("cannot parse member `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("real member {member} applied to non-real input {z}")]
    NonRealInput { member: String, z: Complex64 },
    #[error("{0} is not a complex power member")]
    NotComplexPower(String),
}

pub fn eval_phi(alpha: f64, x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.abs().powf(alpha)
    }
}

pub fn eval_psi(alpha: f64, x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.signum() * x.abs().powf(alpha)
    }
}

/// Principal argument in `(−π, π]`.
pub fn principal_arg(z: Complex64) -> f64 {
    let theta = z.im.atan2(z.re);
    if theta == -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        theta
    }
}

pub fn eval_cpow(alpha: f64, beta: i32, z: Complex64) -> Complex64 {
    let r = z.norm();
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let unit = z / r;
    let phase = if beta >= 0 {
        unit.powu(beta as u32)
    } else {
        unit.conj().powu(beta.unsigned_abs())
    };
    phase * r.powf(alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum PowerFamilyMember {
    Zero,
    Constant { c: f64 },
    Phi { c: f64, alpha: f64 },
    Psi { c: f64, alpha: f64 },
    ComplexPower { c: f64, alpha: f64, beta: i32 },
}

impl PowerFamilyMember {
    fn check(c: f64, alpha: f64) -> Result<(), PowerError> {
        if !c.is_finite() || c == 0.0 {
            return Err(PowerError::Invalid(format!(
                "multiplier must be finite and nonzero, got {c} (use `zero` for the zero map)"
            )));
        }
        if !alpha.is_finite() {
            return Err(PowerError::Invalid(format!("exponent must be finite, got {alpha}")));
        }
        Ok(())
    }

    pub fn constant(c: f64) -> Result<Self, PowerError> {
        Self::check(c, 0.0)?;
        Ok(Self::Constant { c })
    }

    pub fn phi(c: f64, alpha: f64) -> Result<Self, PowerError> {
        Self::check(c, alpha)?;
        Ok(Self::Phi { c, alpha })
    }

    pub fn psi(c: f64, alpha: f64) -> Result<Self, PowerError> {
        Self::check(c, alpha)?;
        Ok(Self::Psi { c, alpha })
    }

    pub fn complex_power(c: f64, alpha: f64, beta: i32) -> Result<Self, PowerError> {
        Self::check(c, alpha)?;
        Ok(Self::ComplexPower { c, alpha, beta })
    }

    pub fn multiplier(&self) -> f64 {
        match *self {
            Self::Zero => 0.0,
            Self::Constant { c } | Self::Phi { c, .. } | Self::Psi { c, .. } => c,
            Self::ComplexPower { c, .. } => c,
        }
    }

    pub fn alpha(&self) -> Option<f64> {
        match *self {
            Self::Phi { alpha, .. } | Self::Psi { alpha, .. } => Some(alpha),
            Self::ComplexPower { alpha, .. } => Some(alpha),
            _ => None,
        }
    }

    pub fn is_real(&self) -> bool {
        !matches!(self, Self::ComplexPower { .. })
    }

    /// Same member with multiplier replaced (`Zero` stays `Zero`).
    pub fn with_multiplier(&self, c: f64) -> Result<Self, PowerError> {
        match *self {
            Self::Zero => Ok(Self::Zero),
            Self::Constant { .. } => Self::constant(c),
            Self::Phi { alpha, .. } => Self::phi(c, alpha),
            Self::Psi { alpha, .. } => Self::psi(c, alpha),
            Self::ComplexPower { alpha, beta, .. } => Self::complex_power(c, alpha, beta),
        }
    }

    pub fn eval_real(&self, x: f64) -> Result<f64, PowerError> {
        match *self {
            Self::Zero => Ok(0.0),
            Self::Constant { c } => Ok(c),
            Self::Phi { c, alpha } => Ok(c * eval_phi(alpha, x)),
            Self::Psi { c, alpha } => Ok(c * eval_psi(alpha, x)),
            Self::ComplexPower { .. } => {
                let z = self.eval(Complex64::new(x, 0.0))?;
                Ok(z.re)
            }
        }
    }

    /// `c · family(z)`; `Phi` and `Psi` reject non-real `z`, constants are
    /// constant on ℂ.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, PowerError> {
        match *self {
            Self::ComplexPower { c, alpha, beta } => Ok(eval_cpow(alpha, beta, z) * c),
            Self::Zero => Ok(Complex64::new(0.0, 0.0)),
            Self::Constant { c } => Ok(Complex64::new(c, 0.0)),
            _ if z.im != 0.0 => Err(PowerError::NonRealInput {
                member: self.to_string(),
                z,
            }),
            _ => Ok(Complex64::new(self.eval_real(z.re)?, 0.0)),
        }
    }

    /// Restriction of `Ψ_{α,β}` to the real line: `φ_α` for even `β`, `ψ_α`
    /// for odd `β`.
    pub fn restrict_to_reals(&self) -> Result<Self, PowerError> {
        match *self {
            Self::ComplexPower { c, alpha, beta } => {
                if beta % 2 == 0 {
                    Self::phi(c, alpha)
                } else {
                    Self::psi(c, alpha)
                }
            }
            other => Err(PowerError::NotComplexPower(other.to_string())),
        }
    }

    /// Whether `f(xy) = f(x) f(y)` holds identically (multiplier 1, or zero).
    pub fn is_multiplicative(&self) -> bool {
        match *self {
            Self::Zero => true,
            other => other.multiplier() == 1.0,
        }
    }
}

/// Text syntax: `zero`, `const:<c>`, `phi:<c>:<alpha>`, `psi:<c>:<alpha>`,
/// `cpow:<c>:<alpha>:<beta>`.
impl fmt::Display for PowerFamilyMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Zero => write!(f, "zero"),
            Self::Constant { c } => write!(f, "const:{c}"),
            Self::Phi { c, alpha } => write!(f, "phi:{c}:{alpha}"),
            Self::Psi { c, alpha } => write!(f, "psi:{c}:{alpha}"),
            Self::ComplexPower { c, alpha, beta } => write!(f, "cpow:{c}:{alpha}:{beta}"),
        }
    }
}

impl FromStr for PowerFamilyMember {
    type Err = PowerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_err = |reason: String| PowerError::Parse {
            input: s.to_string(),
            reason,
        };
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| -> Result<f64, PowerError> {
            t.trim()
                .parse::<f64>()
                .map_err(|e| parse_err(format!("bad number `{t}`: {e}")))
        };
        let wrap = |r: Result<Self, PowerError>| r.map_err(|e| parse_err(e.to_string()));
        match parts.as_slice() {
            ["zero"] => Ok(Self::Zero),
            ["const", c] => wrap(Self::constant(num(c)?)),
            ["phi", c, a] => wrap(Self::phi(num(c)?, num(a)?)),
            ["psi", c, a] => wrap(Self::psi(num(c)?, num(a)?)),
            ["cpow", c, a, b] => {
                let beta = b
                    .trim()
                    .parse::<i32>()
                    .map_err(|e| parse_err(format!("beta must be an integer, `{b}`: {e}")))?;
                wrap(Self::complex_power(num(c)?, num(a)?, beta))
            }
            _ => Err(parse_err(
                "expected zero | const:c | phi:c:alpha | psi:c:alpha | cpow:c:alpha:beta".into(),
            )),
        }
    }
}
