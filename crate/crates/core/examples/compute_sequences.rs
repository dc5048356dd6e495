//! Exact values of every supported sequence, plus a round trip through the
//! binary prefix format.
//!
//!     cargo run --example compute_sequences -- 100

use partineq::seq_core::{eval, read_terms, write_terms, SequenceSpec, Terms};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(50);

    for selector in ["euler", "restricted:1,2,5,10", "plane", "mary:2", "mary:3", "fib-even", "shift:26:euler"] {
        let spec: SequenceSpec = selector.parse()?;
        println!("{spec:>22}  F({n}) = {}", eval(&spec, n)?);
    }
    println!("p(26) = {}", eval(&SequenceSpec::EulerP, 26)?);

    let terms = Terms::compute(&SequenceSpec::PlaneP, 20)?;
    let mut buf = Vec::new();
    write_terms(&terms, &mut buf)?;
    let back = read_terms(buf.as_slice())?;
    assert_eq!(back.values(), terms.values());
    println!("plane prefix [0..=20]: {} bytes serialized, round trip ok", buf.len());
    Ok(())
}
