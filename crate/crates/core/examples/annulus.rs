//! The dihedral group of order 8 acting on a triangulated annulus, with one matched pair on
//! the quotient.

use equimorse::corpus::annulus_d8;
use equimorse::pipeline::{run_stages, Budgets, PipelineInput};

fn main() {
    let ex = annulus_d8();
    let input = PipelineInput {
        action: ex.action,
        matching: ex.matching,
        lifts: ex.lifts,
    };
    let r = run_stages(&input, 0, &Budgets::default(), true);
    for s in &r.stages {
        println!("{:<26} {:?} {}", s.stage, s.status, s.detail);
    }
    let s = &r.summary;
    println!("quotient f-vector {:?}", s.quotient_f_vector);
    println!("critical cells: {} on the quotient, {} upstairs", s.flow_objects_quotient, s.flow_objects);
    println!("lifted pairs: {}", s.lifted_pairs);
    if let Some(h) = &s.development_homology {
        println!("development:\n{h}");
    }
    for c in r.fixed_point_checks.iter().flatten() {
        println!("fixed by {{{}}}: {} objects, betti {:?}", c.subgroup, c.fixed_objects, c.category_betti);
    }
    println!("{}", r.verdict);
}
