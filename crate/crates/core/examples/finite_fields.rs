//! Arithmetic in F_{p^n}, canonical generators, Frobenius and tower lifts.

use galois_lab::field::{make_field, parse_element, roots_of_unity, Tower};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = make_field(3, 2)?;
    println!("{f}: modulus {:?}, generator {}", f.modulus(), f.generator());
    let a = parse_element(&f, "[1,2]")?;
    let b = f.alpha();
    println!("a = {a}, b = {b}");
    println!("a + b = {}, a * b = {}, a / b = {}", &a + &b, &a * &b, a.try_div(&b)?);
    println!("a^-1 = {}, frobenius(a) = {}, order(a) = {}", a.inv()?, a.frobenius(1), a.order()?);
    println!("trace to F_3 of a = {}", a.trace_to_prime());

    let mu4: Vec<String> = roots_of_unity(&f, 4).iter().map(ToString::to_string).collect();
    println!("mu_4 in {f}: {}", mu4.join(", "));

    let tower = Tower::over(&make_field(7, 1)?, &[1, 2, 4])?;
    let x = tower.level(1).generator();
    let lifted = tower.lift(&x, 1, 2)?;
    println!("generator of {} lifted to {}: {lifted}", tower.level(1), tower.level(2));
    Ok(())
}
