//! Developing the complex of groups of an action recovers the face poset equivariantly.

use equimorse::action::{choose_lifts_transfers, lp_action_from_simplicial, quotient_lp};
use equimorse::cog::cog_from_action;
use equimorse::corpus::regular_actions;
use equimorse::development::{check_equivariant_iso, develop};
use equimorse::lp::{geometric_nerve, nerve_iso_check, DEFAULT_NERVE_BOUND};

fn main() -> equimorse::Result<()> {
    for (name, a) in regular_actions() {
        let fa = lp_action_from_simplicial(&a)?;
        let qd = quotient_lp(&fa)?;
        let lt = choose_lifts_transfers(&fa, &qd, 0)?;
        let (f, phi) = cog_from_action(&fa, &qd, &lt)?;
        let d = develop(&f, &phi)?;
        let w = d.witness_functor(&fa, &lt.lift, &lt.lifted);
        let iso = check_equivariant_iso(&d.action, &fa, Some(&w), 100_000)?;
        let nd = geometric_nerve(&d.category, None, DEFAULT_NERVE_BOUND)?;
        let nx = geometric_nerve(&fa.category, None, DEFAULT_NERVE_BOUND)?;
        let r = nerve_iso_check(&w, &nd, &nx);
        println!(
            "{name:<30} |G| = {:<2} quotient {:>2} objects, development {:>3} objects, {}, nerve {}",
            a.group.order(),
            qd.quotient.n_objects(),
            d.category.n_objects(),
            iso.label(),
            if r.is_ok() { "matches" } else { "differs" }
        );
    }
    Ok(())
}
