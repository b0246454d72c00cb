// Builds the named state families and prints their supports.
//
// ```bash
// cargo run -p slocc --example generate_families
// ```

use slocc::{gen_chi, gen_dicke, gen_ghz, gen_w, PureState};

fn describe(s: &PureState) -> String {
    let support: Vec<String> = s.support().iter().map(|i| format!("{i:0w$b}", w = s.n())).collect();
    format!(
        "{:<8} n={} terms={:<3} norm^2={:<3} {}",
        s.label().unwrap_or("-"),
        s.n(),
        s.nonzero_count(),
        s.norm_squared(),
        support.join(" ")
    )
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("{}", describe(&gen_ghz(4)?));
    println!("{}", describe(&gen_w(4)?));
    println!("{}", describe(&gen_dicke(2, 4)?));
    for k in 1..=7 {
        println!("{}", describe(&gen_chi(k, 4)?));
    }

    // chi7 is not defined for two qubits
    assert!(gen_chi(7, 2).is_err());

    // and coincides with chi5 at six
    assert_eq!(gen_chi(7, 6)?.amplitudes(), gen_chi(5, 6)?.amplitudes());

    let big = gen_chi(1, 12)?;
    println!("chi1 on 12 qubits has {} terms", big.nonzero_count());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
