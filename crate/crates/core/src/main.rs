use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use jetsym::cli::{emit_report, run_pipeline, Args, Format};

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = args.to_config();
    let start = Instant::now();
    let mut report = run_pipeline(&cfg);
    if args.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let mut code = report.exit_code();
    if let Some(path) = &args.json {
        if let Err(e) = std::fs::write(path, emit_report(&report, Format::Json)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            code = code.max(1);
        }
    }
    print!("{}", emit_report(&report, args.format));
    if let (Some(err), Format::Human) = (&report.error, args.format) {
        eprintln!("error: {}", err.message);
    }
    ExitCode::from(code as u8)
}
