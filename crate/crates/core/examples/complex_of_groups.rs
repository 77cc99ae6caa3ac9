//! The complex of groups of the dihedral group acting on a hexagon.

use equimorse::action::{choose_lifts_transfers, face_quotient};
use equimorse::cog::{cog_from_action, validate_cog, validate_cog_morphism};
use equimorse::corpus::dihedral_polygon;
use equimorse::io;

fn main() -> equimorse::Result<()> {
    let a = dihedral_polygon(3);
    println!("group of order {} on {} simplices", a.group.order(), a.complex.len());
    let (q, fa, qd) = face_quotient(&a)?;
    println!("quotient f-vector {:?}", q.complex.f_vector());
    print!("{}", io::orbit_table(&qd, &fa.category));
    for seed in 0..3 {
        let lt = choose_lifts_transfers(&fa, &qd, seed)?;
        let (f, phi) = cog_from_action(&fa, &qd, &lt)?;
        validate_cog(&f).into_result("complex of groups")?;
        validate_cog_morphism(&phi, &f).into_result("morphism")?;
        println!("\nseed {seed}: twist nontrivial = {}", !f.is_trivial());
        print!("{}", io::dump_cog(&f, &phi));
    }
    Ok(())
}
