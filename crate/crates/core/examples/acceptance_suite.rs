//! Runs the full verification suite, as `galois-lab all` does.

use galois_lab::suite::acceptance;

fn main() {
    let checks = acceptance(7);
    for c in &checks {
        println!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
    }
    std::process::exit(if checks.iter().all(|c| c.pass) { 0 } else { 1 });
}
