//! Flow category of a random acyclic matching on a random complex.

use std::sync::Arc;

use equimorse::complex::simplicial_homology_oracle;
use equimorse::corpus::{random_complex, random_matching};
use equimorse::homology::classifying_homology;
use equimorse::lp::DEFAULT_NERVE_BOUND;
use equimorse::morse::{flow_category, validate_matching, FlowBudget};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> equimorse::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = Arc::new(random_complex(&mut rng, 6, 20));
    let sigma = random_matching(&mut rng, &x);
    validate_matching(&x, &sigma).into_result("matching")?;
    println!("complex f-vector {:?}", x.f_vector());
    for line in sigma.describe(&x) {
        println!("  {line}");
    }
    let flow = flow_category(x.clone(), &sigma, FlowBudget::default())?;
    let c = &flow.category;
    println!("{} critical cells, {} morphisms", c.n_objects(), c.n_morphisms());
    for f in 0..c.non_identity_count().min(10) {
        println!("  {}", flow.word(f).label(&x));
    }
    let hx = simplicial_homology_oracle(&x)?;
    let hf = classifying_homology(c, DEFAULT_NERVE_BOUND)?;
    println!("complex:\n{hx}\nflow category:\n{hf}");
    assert_eq!(hx, hf);
    Ok(())
}
