//! Runs every stage on input files and writes `report.json`.
//!
//! Usage: `cargo run --example pipeline -- <dir with complex.txt, group.txt, matching.txt>`

use std::path::PathBuf;

use equimorse::pipeline::{run_pipeline, PipelineConfig};

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/cone").into()));
    let optional = |name: &str| Some(dir.join(name)).filter(|p| p.exists());
    let cfg = PipelineConfig {
        complex: dir.join("complex.txt"),
        group: optional("group.txt"),
        matching: optional("matching.txt"),
        lifts: optional("lifts.txt"),
        out: Some(std::env::temp_dir().join("equimorse-report")),
        fixed_point_checks: true,
        ..PipelineConfig::default()
    };
    let (code, report, err) = run_pipeline(&cfg);
    if let Some(e) = err {
        eprintln!("error: {e}");
    }
    if let Some(r) = report {
        println!("{}", r.to_json());
        println!("report written to {}", cfg.out.unwrap().join("report.json").display());
    }
    std::process::exit(code);
}
