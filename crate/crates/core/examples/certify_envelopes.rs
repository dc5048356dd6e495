//! Certify the Lehmer and Chen envelopes for p(n) against exact values,
//! escalating interval precision where the enclosures are too wide.

use partineq::envelopes::{certify_sequence, lehmer_envelope, BoundEnvelope, PrecisionPolicy};
use partineq::seq_core::{euler_p, SequenceSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (lo, hi) = lehmer_envelope(26, 64)?;
    println!("Lehmer at 26: {lo} < {} < {hi}", euler_p(26));

    let policy = PrecisionPolicy::default();
    for (env, from) in [(BoundEnvelope::lehmer(), 2), (BoundEnvelope::chen(), 37), (BoundEnvelope::chen(), 1)] {
        let report = certify_sequence(&env, &SequenceSpec::EulerP, from, 1000, &policy)?;
        println!(
            "{:<8} on [{from}, 1000]: {} failures, {} unresolved, max precision {} bits, clean from {:?}",
            env.label,
            report.failures.len(),
            report.unresolved.len(),
            report.max_precision,
            report.clean_start(),
        );
    }
    Ok(())
}
