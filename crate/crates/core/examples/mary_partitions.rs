//! m-ary partitions: the forced log-concavity failures at n ≡ -1 (mod m), the
//! BO threshold, and the slow convergence of log b_m(n) to the Mahler
//! exponent.

use partineq::analysis::{find_min_bo_threshold, scan_logconcavity};
use partineq::envelopes::mahler_log_ratio;
use partineq::seq_core::{mary_p, SequenceSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for m in [2u64, 3, 5] {
        let spec = SequenceSpec::MAry(m);
        let scan = scan_logconcavity(&spec, 2, 1000)?;
        let off = scan.violations.iter().filter(|v| (v.min_index() + 1) % m != 0).count();
        println!(
            "b_{m}: {} log-concavity violations on [2, 1000], {off} of them off the n ≡ -1 class",
            scan.violations.len()
        );
    }
    println!("BO threshold for b_2 up to a + b <= 2000: {:?}", find_min_bo_threshold(&SequenceSpec::MAry(2), 2000)?);

    for n in [10u64, 1_000, 100_000, 1_000_000] {
        let b = mary_p(2, n)?;
        let r = mahler_log_ratio(2, &b, n, 128)?;
        println!("n = {n:>7}: log b_2(n) / ((log n)^2 / (2 log 2)) = {:.6}", r.lo_f64());
    }
    Ok(())
}
