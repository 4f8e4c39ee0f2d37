//! Exhaustive p-tournament verification and the related counting facts.

use galois_lab::field::make_field;
use galois_lab::tournament::{
    mu2n_tournament, p_cycle_obstruction, power_index, vandermonde_kernel_dim, verify_p_tournament,
    verify_square_tournament, TournamentParams,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = make_field(7, 1)?;
    let params = TournamentParams::canonical(&f, 3)?;
    let report = verify_p_tournament(&params)?;
    println!(
        "3-tournament on F_7: {} tuples, {} violations",
        report.tuples_checked,
        report.violation_count
    );

    let sq = verify_square_tournament(&make_field(11, 1)?)?;
    println!("square tournament on F_11: passed = {}", sq.passed());

    let mu = mu2n_tournament(&make_field(13, 1)?, 2)?;
    println!("mu_4 tournament on F_13: passed = {}", mu.passed());

    println!("[F_31^* : (F_31^*)^5] = {}", power_index(&make_field(31, 1)?, 5));

    let f11 = make_field(11, 1)?;
    let omega = TournamentParams::canonical(&f11, 5)?.omega().clone();
    let (rank, kernel) = vandermonde_kernel_dim(5, &omega)?;
    println!("Vandermonde over F_11, p=5: rank {rank}, kernel dimension {}", kernel.len());

    let obs = p_cycle_obstruction(5);
    println!("5-cycle obstruction holds: {} (orbit size {})", obs.holds, obs.orbit_size);
    Ok(())
}
