//! An irregular action becomes regular after two barycentric subdivisions.

use std::sync::Arc;

use equimorse::action::{action_from_vertex_perms, check_regularity};
use equimorse::complex::SimplicialComplex;
use equimorse::group::group_from_generators;

fn main() -> equimorse::Result<()> {
    let x = Arc::new(SimplicialComplex::from_maximal(&[vec!["a", "b", "c"]])?);
    let swap: Vec<usize> = ["b", "a", "c"].iter().map(|v| x.vertex_index(v).unwrap()).collect();
    let g = Arc::new(group_from_generators(3, &[("t".to_string(), swap)])?);
    let mut a = action_from_vertex_perms(x, g)?;
    for round in 0..3 {
        let r = check_regularity(&a);
        println!("subdivisions: {round}, simplices: {}, regular: {}", a.complex.len(), r.is_ok());
        if !r.is_ok() {
            print!("{r}");
        }
        a = a.subdivide()?;
    }
    Ok(())
}
