//! Entry domains: real intervals and the complex regions built from discs,
//! annuli, the unit circle and unions of those.
//!
//! Membership is decided directly from the construction tree. The only
//! non-literal comparison is the unit circle, which accepts points whose
//! modulus is within [`UNIT_CIRCLE_ULPS`] units in the last place of 1,
//! since almost no point of S¹ is representable in binary floating point.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Modulus band accepted as "on the unit circle", in multiples of `f64::EPSILON`.
pub const UNIT_CIRCLE_ULPS: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegionError {
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("cannot parse domain `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("ray set for direction {0} is not a single interval")]
    NotAnInterval(Complex64),
    #[error("direction {0} does not have unit modulus")]
    NotUnitModulus(Complex64),
}

/// JSON has no infinities; `±inf` endpoints travel as the strings "inf" and
/// "-inf".
mod extended {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Finite(f64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            Repr::Finite(*x)
        } else if *x > 0.0 {
            Repr::Text("inf".into())
        } else {
            Repr::Text("-inf".into())
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Finite(x) => Ok(x),
            Repr::Text(t) if t == "inf" => Ok(f64::INFINITY),
            Repr::Text(t) if t == "-inf" => Ok(f64::NEG_INFINITY),
            Repr::Text(t) => Err(serde::de::Error::custom(format!("expected a number or ±inf, got `{t}`"))),
        }
    }
}

/// A real interval with independently open or closed endpoints.
///
/// Infinite endpoints are always open. A degenerate interval `[a, a]` is
/// allowed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "extended")]
    lo: f64,
    #[serde(with = "extended")]
    hi: f64,
    lo_closed: bool,
    hi_closed: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Result<Self, RegionError> {
        if lo.is_nan() || hi.is_nan() {
            return Err(RegionError::InvalidInterval("NaN endpoint".into()));
        }
        if (lo.is_infinite() && lo_closed) || (hi.is_infinite() && hi_closed) {
            return Err(RegionError::InvalidInterval(
                "infinite endpoints cannot be closed".into(),
            ));
        }
        if lo > hi || (lo == hi && !(lo_closed && hi_closed)) {
            return Err(RegionError::InvalidInterval(format!(
                "empty interval with lo={lo}, hi={hi}"
            )));
        }
        Ok(Self {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    pub fn open(lo: f64, hi: f64) -> Result<Self, RegionError> {
        Self::new(lo, hi, false, false)
    }

    pub fn closed(lo: f64, hi: f64) -> Result<Self, RegionError> {
        Self::new(lo, hi, true, true)
    }

    pub fn point(x: f64) -> Result<Self, RegionError> {
        Self::closed(x, x)
    }

    pub fn real_line() -> Self {
        Self {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        if x.is_nan() {
            return false;
        }
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }

    /// True when `x` lies strictly between the endpoints.
    pub fn contains_interior(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    /// `I ∩ (0, ∞)`, or `None` when empty.
    pub fn positive_part(&self) -> Option<Interval> {
        self.intersect(&Interval::new(0.0, f64::INFINITY, false, false).ok()?)
    }

    /// `I ∩ (−∞, 0)`, or `None` when empty.
    pub fn negative_part(&self) -> Option<Interval> {
        self.intersect(&Interval::new(f64::NEG_INFINITY, 0.0, false, false).ok()?)
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match self.lo.partial_cmp(&other.lo)? {
            std::cmp::Ordering::Greater => (self.lo, self.lo_closed),
            std::cmp::Ordering::Less => (other.lo, other.lo_closed),
            std::cmp::Ordering::Equal => (self.lo, self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.partial_cmp(&other.hi)? {
            std::cmp::Ordering::Less => (self.hi, self.hi_closed),
            std::cmp::Ordering::Greater => (other.hi, other.hi_closed),
            std::cmp::Ordering::Equal => (self.hi, self.hi_closed && other.hi_closed),
        };
        Interval::new(lo, hi, lo_closed, hi_closed).ok()
    }

    /// `{ -x : x ∈ I }`.
    pub fn negated(&self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
            lo_closed: self.hi_closed,
            hi_closed: self.lo_closed,
        }
    }

    /// Union of two intervals when it is again an interval.
    fn merge(&self, other: &Interval) -> Option<Interval> {
        let (a, b) = if (self.lo, !self.lo_closed) <= (other.lo, !other.lo_closed) {
            (self, other)
        } else {
            (other, self)
        };
        let touches = b.lo < a.hi || (b.lo == a.hi && (a.hi_closed || b.lo_closed));
        if !touches {
            return None;
        }
        let (hi, hi_closed) = if a.hi > b.hi {
            (a.hi, a.hi_closed)
        } else if b.hi > a.hi {
            (b.hi, b.hi_closed)
        } else {
            (a.hi, a.hi_closed || b.hi_closed)
        };
        Interval::new(a.lo, hi, a.lo_closed, hi_closed).ok()
    }

    /// Whether `|x| ∈ I` for every `x ∈ I`.
    pub fn closed_under_modulus(&self) -> bool {
        if self.lo >= 0.0 {
            return true;
        }
        // The negative part maps onto (0, |lo|) or (0, |lo|].
        let reach = -self.lo;
        self.hi > reach || (self.hi == reach && (self.hi_closed || !self.lo_closed))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// Entry domain for matrices: a real interval or a region of the complex plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Region {
    RealInterval(Interval),
    /// Disc around `center`; `radius` may be infinite (the whole plane).
    Disc {
        center: Complex64,
        #[serde(with = "extended")]
        radius: f64,
        closed: bool,
    },
    /// `{ z : r_in ≤ |z| < r_out }` with configurable closures.
    Annulus {
        r_in: f64,
        #[serde(with = "extended")]
        r_out: f64,
        in_closed: bool,
        out_closed: bool,
    },
    UnitCircle,
    Union(Vec<Region>),
}

impl Region {
    pub fn interval(iv: Interval) -> Self {
        Region::RealInterval(iv)
    }

    pub fn reals() -> Self {
        Region::RealInterval(Interval::real_line())
    }

    pub fn complex_plane() -> Self {
        Region::Disc {
            center: Complex64::new(0.0, 0.0),
            radius: f64::INFINITY,
            closed: false,
        }
    }

    pub fn disc(center: Complex64, radius: f64, closed: bool) -> Result<Self, RegionError> {
        if !(radius > 0.0) || !center.re.is_finite() || !center.im.is_finite() {
            return Err(RegionError::InvalidRegion(format!(
                "disc needs finite center and positive radius, got {center}, {radius}"
            )));
        }
        Ok(Region::Disc {
            center,
            radius,
            closed: closed && radius.is_finite(),
        })
    }

    pub fn annulus(
        r_in: f64,
        r_out: f64,
        in_closed: bool,
        out_closed: bool,
    ) -> Result<Self, RegionError> {
        if !(r_in >= 0.0) || !(r_out > r_in) {
            return Err(RegionError::InvalidRegion(format!(
                "annulus needs 0 <= r_in < r_out, got {r_in}, {r_out}"
            )));
        }
        Ok(Region::Annulus {
            r_in,
            r_out,
            in_closed,
            out_closed: out_closed && r_out.is_finite(),
        })
    }

    pub fn union(parts: Vec<Region>) -> Result<Self, RegionError> {
        if parts.is_empty() {
            return Err(RegionError::InvalidRegion("empty union".into()));
        }
        Ok(Region::Union(parts))
    }

    /// Whether the region lies inside the real axis.
    pub fn is_real(&self) -> bool {
        match self {
            Region::RealInterval(_) => true,
            Region::Union(parts) => parts.iter().all(Region::is_real),
            _ => false,
        }
    }

    pub fn as_interval(&self) -> Option<&Interval> {
        match self {
            Region::RealInterval(iv) => Some(iv),
            _ => None,
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        if !z.re.is_finite() || !z.im.is_finite() {
            return false;
        }
        match self {
            Region::RealInterval(iv) => z.im == 0.0 && iv.contains(z.re),
            Region::Disc {
                center,
                radius,
                closed,
            } => {
                if radius.is_infinite() {
                    return true;
                }
                let d2 = (z - center).norm_sqr();
                let r2 = radius * radius;
                if *closed {
                    d2 <= r2
                } else {
                    d2 < r2
                }
            }
            Region::Annulus {
                r_in,
                r_out,
                in_closed,
                out_closed,
            } => {
                let m2 = z.norm_sqr();
                let inner = if *in_closed {
                    m2 >= r_in * r_in
                } else {
                    m2 > r_in * r_in
                };
                let outer = if r_out.is_infinite() {
                    true
                } else if *out_closed {
                    m2 <= r_out * r_out
                } else {
                    m2 < r_out * r_out
                };
                inner && outer
            }
            Region::UnitCircle => (z.norm() - 1.0).abs() <= UNIT_CIRCLE_ULPS * f64::EPSILON,
            Region::Union(parts) => parts.iter().any(|p| p.contains(z)),
        }
    }

    pub fn contains_real(&self, x: f64) -> bool {
        self.contains(Complex64::new(x, 0.0))
    }

    /// Sufficient structural check for `z ∈ G ⇒ conj(z) ∈ G`.
    pub fn closed_under_conjugation(&self) -> bool {
        match self {
            Region::RealInterval(_) | Region::Annulus { .. } | Region::UnitCircle => true,
            Region::Disc { center, radius, .. } => center.im == 0.0 || radius.is_infinite(),
            Region::Union(parts) => parts.iter().all(Region::closed_under_conjugation),
        }
    }

    /// Sufficient structural check for `z ∈ G ⇒ |z| ∈ G`.
    pub fn closed_under_modulus(&self) -> bool {
        match self {
            Region::RealInterval(iv) => iv.closed_under_modulus(),
            Region::Disc { center, radius, .. } => {
                (center.re == 0.0 && center.im == 0.0) || radius.is_infinite()
            }
            Region::Annulus { .. } | Region::UnitCircle => true,
            Region::Union(parts) => parts.iter().all(Region::closed_under_modulus),
        }
    }

    /// `I_z = { a > 0 : a z ∈ G }` for a unit-modulus direction `z`.
    ///
    /// Returns `Ok(None)` when the ray misses the region.
    pub fn ray_interval(&self, z: Complex64) -> Result<Option<Interval>, RegionError> {
        if (z.norm() - 1.0).abs() > UNIT_CIRCLE_ULPS * f64::EPSILON {
            return Err(RegionError::NotUnitModulus(z));
        }
        let pieces = self.ray_pieces(z);
        merge_all(pieces).map_err(|_| RegionError::NotAnInterval(z))
    }

    fn ray_pieces(&self, z: Complex64) -> Vec<Interval> {
        let positive = Interval::new(0.0, f64::INFINITY, false, false).expect("valid");
        match self {
            Region::RealInterval(iv) => {
                if z.im != 0.0 {
                    return vec![];
                }
                let directed = if z.re > 0.0 { *iv } else { iv.negated() };
                directed.intersect(&positive).into_iter().collect()
            }
            Region::Disc {
                center,
                radius,
                closed,
            } => {
                if radius.is_infinite() {
                    return vec![positive];
                }
                // |a z - c|² = a² - 2a Re(c conj z) + |c|² against radius².
                let b = (center * z.conj()).re;
                let disc = b * b - (center.norm_sqr() - radius * radius);
                if disc < 0.0 || (disc == 0.0 && !closed) {
                    return vec![];
                }
                let s = disc.sqrt();
                Interval::new(b - s, b + s, *closed, *closed)
                    .ok()
                    .and_then(|iv| iv.intersect(&positive))
                    .into_iter()
                    .collect()
            }
            Region::Annulus {
                r_in,
                r_out,
                in_closed,
                out_closed,
            } => Interval::new(*r_in, *r_out, *in_closed, *out_closed)
                .ok()
                .and_then(|iv| iv.intersect(&positive))
                .into_iter()
                .collect(),
            Region::UnitCircle => vec![Interval::point(1.0).expect("valid")],
            Region::Union(parts) => parts.iter().flat_map(|p| p.ray_pieces(z)).collect(),
        }
    }

    /// `G ∩ ℝ` as an interval, when it is one.
    pub fn real_section(&self) -> Result<Option<Interval>, RegionError> {
        let one = Complex64::new(1.0, 0.0);
        let pos = self.ray_interval(one)?;
        let neg = self.ray_interval(-one)?.map(|iv| iv.negated());
        let mut pieces: Vec<Interval> = pos.into_iter().chain(neg).collect();
        if self.contains_real(0.0) {
            pieces.push(Interval::point(0.0).expect("valid"));
        }
        merge_all(pieces).map_err(|_| RegionError::NotAnInterval(Complex64::new(0.0, 0.0)))
    }
}

fn merge_all(mut pieces: Vec<Interval>) -> Result<Option<Interval>, ()> {
    pieces.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
    let mut iter = pieces.into_iter();
    let Some(mut acc) = iter.next() else {
        return Ok(None);
    };
    for piece in iter {
        acc = acc.merge(&piece).ok_or(())?;
    }
    Ok(Some(acc))
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::RealInterval(iv) => write!(f, "{iv}"),
            Region::Disc {
                center,
                radius,
                closed,
            } => write!(
                f,
                "disc(center={center}, radius={radius}, {})",
                if *closed { "closed" } else { "open" }
            ),
            Region::Annulus {
                r_in,
                r_out,
                in_closed,
                out_closed,
            } => write!(
                f,
                "annulus({}{r_in},{r_out}{})",
                if *in_closed { '[' } else { '(' },
                if *out_closed { ']' } else { ')' }
            ),
            Region::UnitCircle => write!(f, "circle"),
            Region::Union(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ∪ ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_bound(s: &str, input: &str) -> Result<f64, RegionError> {
    let t = s.trim();
    let v = match t {
        "inf" | "+inf" | "infinity" => f64::INFINITY,
        "-inf" | "-infinity" => f64::NEG_INFINITY,
        _ => t.parse::<f64>().map_err(|e| RegionError::Parse {
            input: input.to_string(),
            reason: format!("bad number `{t}`: {e}"),
        })?,
    };
    Ok(v)
}

fn parse_interval(s: &str) -> Result<Interval, RegionError> {
    let t = s.trim();
    let (lo_closed, body) = match t.chars().next() {
        Some('[') => (true, &t[1..]),
        Some('(') => (false, &t[1..]),
        _ => (false, t),
    };
    let (hi_closed, body) = match body.chars().last() {
        Some(']') => (true, &body[..body.len() - 1]),
        Some(')') => (false, &body[..body.len() - 1]),
        _ => (false, body),
    };
    let (lo, hi) = body.split_once(',').ok_or_else(|| RegionError::Parse {
        input: s.to_string(),
        reason: "expected `lo,hi`".into(),
    })?;
    Interval::new(
        parse_bound(lo, s)?,
        parse_bound(hi, s)?,
        lo_closed,
        hi_closed,
    )
    .map_err(|e| RegionError::Parse {
        input: s.to_string(),
        reason: e.to_string(),
    })
}

/// Domain syntax:
///
/// * `lo,hi` (open), `[lo,hi]`, `(lo,hi]`, `[lo,hi)`; `inf` is accepted
/// * `disc:R`: the open disc `D(0, R)`
/// * `annulus:r:R`: `(−R, R) ∪ { r ≤ |z| < R }`
/// * `circle+interval:lo,hi`: `S¹ ∪ (lo, hi)` (bracket forms allowed)
impl FromStr for Region {
    type Err = RegionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = |reason: &str| RegionError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if let Some(rest) = t.strip_prefix("disc:") {
            let r = parse_bound(rest, s)?;
            return Region::disc(Complex64::new(0.0, 0.0), r, false).map_err(|e| err(&e.to_string()));
        }
        if let Some(rest) = t.strip_prefix("annulus:") {
            let (r_in, r_out) = rest.split_once(':').ok_or_else(|| err("expected annulus:r:R"))?;
            let (r_in, r_out) = (parse_bound(r_in, s)?, parse_bound(r_out, s)?);
            let ring = Region::annulus(r_in, r_out, true, false).map_err(|e| err(&e.to_string()))?;
            let line = Interval::open(-r_out, r_out).map_err(|e| err(&e.to_string()))?;
            return Region::union(vec![Region::RealInterval(line), ring]);
        }
        if let Some(rest) = t.strip_prefix("circle+interval:") {
            let iv = parse_interval(rest)?;
            return Region::union(vec![Region::UnitCircle, Region::RealInterval(iv)]);
        }
        if t == "circle" {
            return Ok(Region::UnitCircle);
        }
        parse_interval(t).map(Region::RealInterval)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn interval_invariants() {
        assert!(Interval::open(1.0, 1.0).is_err());
        assert!(Interval::point(1.0).is_ok());
        assert!(Interval::new(0.0, f64::INFINITY, false, true).is_err());
        assert!(Interval::open(2.0, 1.0).is_err());
    }

    #[test]
    fn open_and_closed_endpoints_are_sharp() {
        let iv = Interval::new(-2.0, 2.0, true, false).unwrap();
        assert!(iv.contains(-2.0));
        assert!(!iv.contains(2.0));
        assert!(iv.contains(1.999_999_999_999_999_8));
    }

    #[test]
    fn positive_and_negative_parts() {
        let iv = Interval::open(-5.0, 10.0).unwrap();
        let pos = iv.positive_part().unwrap();
        assert_eq!((pos.lo(), pos.hi(), pos.lo_closed()), (0.0, 10.0, false));
        let neg = iv.negative_part().unwrap();
        assert_eq!((neg.lo(), neg.hi()), (-5.0, 0.0));
        assert!(Interval::open(1.0, 2.0).unwrap().negative_part().is_none());
    }

    #[test]
    fn interval_modulus_closure() {
        assert!(Interval::open(-5.0, 10.0).unwrap().closed_under_modulus());
        assert!(!Interval::open(-10.0, 5.0).unwrap().closed_under_modulus());
        assert!(Interval::open(-2.0, 2.0).unwrap().closed_under_modulus());
        assert!(!Interval::new(-2.0, 2.0, true, false).unwrap().closed_under_modulus());
    }

    #[test]
    fn disc_and_annulus_membership() {
        let d = Region::disc(c(0.0, 0.0), 2.0, false).unwrap();
        assert!(d.contains(c(1.0, 1.0)));
        assert!(!d.contains(c(2.0, 0.0)));
        let a = Region::annulus(0.5, 2.0, true, false).unwrap();
        assert!(a.contains(c(0.5, 0.0)));
        assert!(!a.contains(c(0.25, 0.0)));
        assert!(Region::UnitCircle.contains(Complex64::from_polar(1.0, 0.7)));
        assert!(!Region::UnitCircle.contains(c(1.0 + 1e-9, 0.0)));
    }

    #[test]
    fn ray_intervals() {
        let g: Region = "annulus:0.5:3".parse().unwrap();
        let iz = g.ray_interval(Complex64::from_polar(1.0, 1.0)).unwrap().unwrap();
        assert_eq!((iz.lo(), iz.hi(), iz.lo_closed(), iz.hi_closed()), (0.5, 3.0, true, false));
        // Along the real axis the line (−3, 3) fills the gap below 0.5.
        let i1 = g.ray_interval(c(1.0, 0.0)).unwrap().unwrap();
        assert_eq!((i1.lo(), i1.hi()), (0.0, 3.0));

        let h: Region = "circle+interval:-1.5,1.5".parse().unwrap();
        let iz = h.ray_interval(c(0.0, 1.0)).unwrap().unwrap();
        assert!(iz.is_degenerate());
        assert_eq!(iz.lo(), 1.0);
        assert!(h.ray_interval(c(2.0, 0.0)).is_err());
    }

    #[test]
    fn ray_interval_with_gap_is_rejected() {
        let g = Region::union(vec![
            Region::annulus(2.0, 3.0, false, false).unwrap(),
            Region::disc(c(0.0, 0.0), 1.0, false).unwrap(),
        ])
        .unwrap();
        assert!(matches!(
            g.ray_interval(c(0.0, 1.0)),
            Err(RegionError::NotAnInterval(_))
        ));
    }

    #[test]
    fn real_section_of_complex_region() {
        let g: Region = "circle+interval:(-1.5,1.5)".parse().unwrap();
        let s = g.real_section().unwrap().unwrap();
        assert_eq!((s.lo(), s.hi()), (-1.5, 1.5));
        assert!(g.closed_under_conjugation());
        assert!(g.closed_under_modulus());
    }

    #[test]
    fn parse_domain_syntax() {
        let r: Region = "0,10".parse().unwrap();
        assert_eq!(r, Region::RealInterval(Interval::open(0.0, 10.0).unwrap()));
        let r: Region = "(0,10]".parse().unwrap();
        assert!(r.contains_real(10.0));
        let r: Region = "[-2,2]".parse().unwrap();
        assert!(r.contains_real(-2.0));
        let r: Region = "0,inf".parse().unwrap();
        assert!(r.contains_real(1e300));
        assert!("disc:0".parse::<Region>().is_err());
        assert!("1;2".parse::<Region>().is_err());
        let d: Region = "disc:2".parse().unwrap();
        assert!(d.contains(c(0.0, 1.9)));
    }

    #[test]
    fn conjugation_symmetry_of_membership() {
        let regions: Vec<Region> = ["disc:2", "annulus:0.5:2", "circle+interval:-1.2,1.2", "-1,3"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        for g in &regions {
            assert!(g.closed_under_conjugation());
            for k in 0..40 {
                let z = Complex64::from_polar(0.1 * k as f64, 0.37 * k as f64);
                assert_eq!(g.contains(z), g.contains(z.conj()), "{g} at {z}");
            }
        }
    }
}
