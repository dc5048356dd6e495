//! Cassini's identity, golden-ratio bounds and the BO gap for q(n) = F_{2n}.

use partineq::analysis::{bo_gap_audit_q, cassini_audit, golden_bounds_audit};
use partineq::envelopes::PrecisionPolicy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let policy = PrecisionPolicy::default();
    for v in [cassini_audit(10_000)?, golden_bounds_audit(500, &policy)?, bo_gap_audit_q(40, &policy)?] {
        println!("[{}] {}", v.status, v.label);
        for note in &v.notes {
            println!("    {note}");
        }
    }
    Ok(())
}
