//! Log-concavity ⇒ BO: the shift implication, the F(0) >= 1 implication and
//! the finite limsup probe, on p(n), its shift by 26, and q(n) = F_{2n}.

use partineq::criteria::{check_prop42, check_ratio_descent, check_thm43, limsup_probe};
use partineq::seq_core::SequenceSpec;
use partineq::verdict::Verdict;

fn show(v: &Verdict) {
    println!("[{}] {}", v.status, v.label);
    for p in &v.parts {
        println!("    [{}] {} ({} witnesses)", p.status, p.label, p.witnesses.len());
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = SequenceSpec::EulerP;
    show(&check_ratio_descent(&p, 26, 400)?);
    show(&check_prop42(&p, 26, 400)?);
    show(&check_thm43(&SequenceSpec::shifted(p.clone(), 26), 400)?);
    show(&check_thm43(&SequenceSpec::FibEven, 60)?);
    show(&check_thm43(&SequenceSpec::shifted(SequenceSpec::FibEven, 1), 60)?);

    for (seq, n0) in [(p, 26), (SequenceSpec::FibEven, 2)] {
        let probe = limsup_probe(&seq, n0, 600)?;
        println!(
            "limsup probe {seq} n0={n0}: trailing max {:.6} vs F(n0) = {} -> {:?}",
            probe.trailing_max_f64(),
            probe.f_n0,
            probe.status
        );
    }
    Ok(())
}
