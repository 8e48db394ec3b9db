use centralizer::cli::{default_config, emit_report, run_suite, OutputFormat, Suite};
use centralizer::lie::AlgebraSpec;

fn main() {
    let mut config = default_config(AlgebraSpec::sp(4), Suite::Centralizer);
    config.m = 1;
    config.order = 2;
    config.jobs = 4;
    let reports = run_suite(&config).unwrap();
    print!("{}", String::from_utf8(emit_report(None, &reports, OutputFormat::Text)).unwrap());
}
