//! Unit groups of Z/p^k, restriction maps and coherent p-power roots of unity.

use galois_lab::cyclotomic::{build_coherent_roots, restriction, unit_group_structure, unit_order_census};
use galois_lab::field::make_field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (p, k) in [(3, 3), (5, 2), (2, 5)] {
        let view = unit_group_structure(p, k)?;
        let census = unit_order_census(p, k);
        println!(
            "(Z/{p}^{k})^*: Z/{} x Z/{}; census matches: {}",
            view.p_part,
            view.q_part,
            census == view.order_census()
        );
    }
    println!("restriction of 17 from 3^3 to 3^1: {}", restriction(17, 3, 3, 1)?);

    let sys = build_coherent_roots(3, &make_field(7, 1)?, 2)?;
    sys.verify()?;
    for (i, w) in sys.roots().iter().enumerate() {
        println!("omega_{i} = {w} in {}", sys.tower().level(i));
    }
    Ok(())
}
