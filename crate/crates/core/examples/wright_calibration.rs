//! Recalibrate the Wright envelope's beta for plane partitions and certify
//! the shipped constants.

use partineq::envelopes::{calibrate_wright_beta, certify_sequence, BoundEnvelope, PrecisionPolicy, WrightParams};
use partineq::seq_core::{SequenceSpec, Terms};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let hi: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(500);
    let params = WrightParams::calibrated();
    let terms = Terms::compute(&SequenceSpec::PlaneP, hi)?;
    let beta = calibrate_wright_beta(&params.alpha, &params.gamma, &terms, 1, hi, 128)?;
    println!("least two-decimal beta on [1, {hi}]: {} (shipped: {})", beta.text(), params.beta.text());

    let report = certify_sequence(&BoundEnvelope::wright(&params), &SequenceSpec::PlaneP, 1, hi, &PrecisionPolicy::default())?;
    println!("shipped envelope on [1, {hi}]: passed = {}, max precision {} bits", report.passed(), report.max_precision);
    Ok(())
}
