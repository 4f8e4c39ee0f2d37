//! F_{q^n} coded as n-tuples over F_q, with its cyclic Galois group as matrices.

use galois_lab::field::make_field;
use galois_lab::interpretation::{code_extension, coded_mul, galois_matrix, verify_commute, verify_iso_with_direct};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = make_field(2, 2)?;
    let ext = code_extension(&base, 3)?;
    let min_poly: Vec<String> = ext.min_poly().iter().map(ToString::to_string).collect();
    println!("F_64 over {base}: minimal polynomial coefficients [{}]", min_poly.join(", "));

    let u = ext.from_index(5);
    let v = ext.from_index(42);
    println!("{u:?} * {v:?} = {:?}", coded_mul(&ext, &u, &v)?);

    let iso = verify_iso_with_direct(&ext, 7)?;
    println!(
        "matches direct construction: {} ({} pairs, exhaustive = {})",
        iso.ok, iso.pairs_checked, iso.exhaustive
    );

    for r in 0..3 {
        let g = galois_matrix(&ext, r)?;
        let c = verify_commute(&ext, &g)?;
        println!("sigma^{r}: commutes with sigma = {}", c.commute);
    }
    let sigma = galois_matrix(&ext, 1)?;
    println!("sigma^3 = identity: {}", sigma.pow(3) == galois_lab::linalg::Matrix::identity(&base, 3));
    Ok(())
}
