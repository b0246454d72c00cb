// `|P|` on the unit-norm state, exact and in floating point.

use slocc::{gen_chi, gen_ghz, measure, Backend, InvariantKind};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (name, state) in [("chi1", gen_chi(1, 4)?), ("chi3", gen_chi(3, 4)?), ("ghz", gen_ghz(4)?)] {
        for kind in InvariantKind::ALL {
            let exact = measure(kind, &state, Backend::Exact)?;
            let float = measure(kind, &state, Backend::Float)?;
            let sq = exact
                .exact_modulus_squared
                .as_ref()
                .map(|r| r.to_string())
                .unwrap_or_default();
            println!(
                "{name} {kind:<8} |P|^2 = {sq:<8} |P| = {:.6}",
                float.value.unwrap_or(f64::NAN)
            );
        }
    }
    let m = measure(InvariantKind::TypeI, &gen_chi(1, 4)?, Backend::Exact)?;
    assert_eq!(m.value, Some(1.0 / 16.0));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
