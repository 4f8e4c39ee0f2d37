//! Truncated Puiseux series with sigma and tau actions and tau-orbits of x^{1/p^i}.

use galois_lab::cyclotomic::build_coherent_roots;
use galois_lab::field::make_field;
use galois_lab::puiseux::{tau_orbit_size, verify_commutation, SeriesRing};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let system = build_coherent_roots(3, &make_field(7, 1)?, 2)?;
    let ring = SeriesRing::new(system, 6)?;
    println!("coefficients in {}", ring.coeff_field());

    let s = ring.parse("[0,1,0,0,0,0]*x^(1/3) + x^(2/9) + 5")?;
    println!("s = {s}");
    println!("tau(s) = {}", ring.tau(&s)?);
    println!("sigma(s) = {}", ring.sigma(&s, 1));
    println!("s^2 = {}", ring.mul(&s, &s)?);

    for i in 1..=2 {
        println!("tau-orbit of x^(1/3^{i}) has size {}", tau_orbit_size(&ring, i)?);
    }
    let report = verify_commutation(&ring, 500, 7);
    println!("sigma tau = tau sigma on {} samples: {}", report.tuples_checked, report.passed());
    Ok(())
}
