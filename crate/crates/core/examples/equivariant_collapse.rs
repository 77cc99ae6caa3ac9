//! A dihedral cone collapsed onto its apex: the Morse complex of groups has a single object.

use equimorse::action::SimplicialAction;
use equimorse::corpus::{cone_collapse_matching, cone_dihedral};
use equimorse::homology::classifying_homology;
use equimorse::lp::DEFAULT_NERVE_BOUND;
use equimorse::morse::{FlowBudget, Matching};
use equimorse::morse_cog::equivariant_morse;
use equimorse::development::develop;

fn collapse(a: &SimplicialAction) -> equimorse::Result<()> {
    let cmp = equivariant_morse(a, &matching(a)?, 0, FlowBudget::default())?;
    let (m, psi) = &cmp.morse;
    let d = develop(m, psi)?;
    println!("group of order {}", a.group.order());
    println!("Morse complex of groups: {} object(s), local group of order {}", m.base.n_objects(), m.groups[0].order());
    println!("development: {} object(s)", d.category.n_objects());
    print!("{}", classifying_homology(&d.category, DEFAULT_NERVE_BOUND)?);
    println!();
    Ok(())
}

fn matching(a: &SimplicialAction) -> equimorse::Result<Matching> {
    let (q, _, _) = equimorse::action::face_quotient(a)?;
    Matching::from_names(&q.complex, &cone_collapse_matching())
}

fn main() -> equimorse::Result<()> {
    for n in [2, 3] {
        collapse(&cone_dihedral(n))?;
    }
    Ok(())
}
