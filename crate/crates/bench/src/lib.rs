//! Shared fixtures for the benchmarks.

use rankone_core::{
    CandidateFunction, ConeSpec, HermitianMatrix, Interval, PowerFamilyMember, Region, SampleSet,
};

pub fn open(lo: f64, hi: f64) -> Region {
    Region::RealInterval(Interval::open(lo, hi).expect("valid interval"))
}

/// Outer product of a fixed vector with magnitudes spread over a decade.
pub fn rank_one(n: usize) -> HermitianMatrix {
    let v: Vec<f64> = (0..n).map(|i| 0.5 + 2.5 * ((i * 7 % n) as f64) / n as f64).collect();
    HermitianMatrix::outer_real(&v).expect("n > 0")
}

pub fn square_on(n: usize) -> (CandidateFunction, ConeSpec) {
    let dom = open(0.0, 10.0);
    let f = CandidateFunction::from_member(PowerFamilyMember::phi(1.0, 2.0).expect("valid"), dom.clone());
    (f, ConeSpec::rank_one(n, dom).expect("n >= 1"))
}

/// `3|x|^1.7` on ±2^{k/4}, 0 and 1.
pub fn phi_samples() -> SampleSet {
    let mut pts = vec![0.0, 1.0];
    for k in -8..=8 {
        let t = 2f64.powf(k as f64 / 4.0);
        if k != 0 {
            pts.push(t);
        }
        if t < 5.0 {
            pts.push(-t);
        }
    }
    SampleSet::tabulate_real(&pts, open(-5.0, 10.0), |x| 3.0 * x.abs().powf(1.7)).expect("valid samples")
}
