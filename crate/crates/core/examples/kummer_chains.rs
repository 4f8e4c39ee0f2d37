//! Kummer chains X^{p^n} = b, the map phi(c) = tau(c)/c, and Artin-Schreier equations.

use galois_lab::field::make_field;
use galois_lab::kummer::{
    artin_schreier_operator_bridge, artin_schreier_solve, build_kummer_chain, divisible_p_subgroup_is_trivial,
    phi_identities, phi_map,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f7 = make_field(7, 1)?;
    let chain = build_kummer_chain(&f7, &f7.from_int(6), 3, 2)?;
    chain.check_power_map()?;
    for n in 0..=chain.depth() {
        let level: Vec<String> = chain.level(n).iter().map(ToString::to_string).collect();
        println!("level {n} in {}: {}", chain.tower().level(n), level.join(", "));
    }
    let image = phi_map(&chain, 1);
    println!("phi image size: {}", image.image.len());
    println!("phi identities hold: {}", phi_identities(&chain, 1).all());

    let f343 = make_field(7, 3)?;
    let verdict = divisible_p_subgroup_is_trivial(&f343.generator(), 3)?;
    println!("divisible 3-subgroup trivial: {}", verdict.holds);

    let f9 = make_field(3, 2)?;
    for b in f9.elements().take(4) {
        let roots: Vec<String> = artin_schreier_solve(&f9, &b).iter().map(ToString::to_string).collect();
        println!("x^3 - x = {b}: trace {}, roots [{}]", b.trace_to_prime(), roots.join(", "));
    }
    let bridge = artin_schreier_operator_bridge(9)?;
    println!(
        "operator bridge on F_729: A_0 has {} elements, {} solvable b, consistent = {}",
        bridge.a0_size, bridge.solvable_b, bridge.consistent
    );
    Ok(())
}
