//! Haar measures of Galois-action events on Z_p^*, exactly and by seeded Monte Carlo.

use galois_lab::haar::{decay_is_geometric, decay_table, estimate_event_measure, exact_event_measure, Event};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for event in Event::ALL {
        println!("{event}: exact measure at 3^4 = {}", exact_event_measure(3, 4, event)?);
    }
    let est = estimate_event_measure(3, 4, Event::PowerFixes, 1_000_000, 7)?;
    println!(
        "Monte Carlo: {:.5} +- {:.5} (exact {}, z = {:.2})",
        est.estimate,
        est.std_error,
        est.exact.as_deref().unwrap_or("?"),
        est.z.unwrap_or(f64::NAN)
    );
    for p in [2, 3, 5] {
        let table = decay_table(p, 5, Event::PowerFixes)?;
        let shown: Vec<String> = table.iter().map(ToString::to_string).collect();
        println!("p = {p}: [{}], geometric tail: {}", shown.join(", "), decay_is_geometric(p, &table));
    }
    Ok(())
}
