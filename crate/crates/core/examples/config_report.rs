//! Drive a criterion from a TOML config and emit the versioned JSON report.

use partineq::criteria::{preset, run_preset};
use partineq::envelopes::config::parse_config;
use partineq::envelopes::PrecisionPolicy;
use partineq::report::ReportEnvelope;

const CONFIG: &str = r#"
[envelope]
family = "wright"
alpha = "0.2315168134488983705603564064"
beta = "0.5"
gamma = "2.009445660877013753064908765816"

[criterion]
preset = "bo-planepartition"
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = parse_config(CONFIG)?;
    let id = cfg.criterion.as_ref().and_then(|c| c.preset.clone()).unwrap_or_default();
    let instance = preset(&id, 2)?.with_config(&cfg)?;
    let mut report = ReportEnvelope::new("criterion");
    report.echo("preset", &id);
    report.echo("horizon", 150);
    report.push_verdict(run_preset(&instance, 150, &PrecisionPolicy::default())?);
    print!("{}", report.to_json());
    Ok(())
}
