//! Integral homology of the standard minimal triangulations.

use equimorse::complex::{face_poset, simplicial_homology_oracle};
use equimorse::corpus::{rp2, sphere, torus7};
use equimorse::homology::classifying_homology;
use equimorse::lp::DEFAULT_NERVE_BOUND;

fn main() -> equimorse::Result<()> {
    for (name, x) in [("sphere", sphere()), ("torus", torus7()), ("projective plane", rp2())] {
        let h = simplicial_homology_oracle(&x)?;
        println!("{name}: f-vector {:?}", x.f_vector());
        println!("{h}");
        // The nerve of the face poset is the barycentric subdivision.
        let hn = classifying_homology(&face_poset(&x), DEFAULT_NERVE_BOUND)?;
        assert_eq!(h, hn);
        println!("nerve of the face poset agrees\n");
    }
    Ok(())
}
