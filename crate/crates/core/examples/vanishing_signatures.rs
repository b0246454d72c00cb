// Zero patterns of the four invariants and the verdicts they support.

use slocc::{compare, gen_chi, gen_dicke, gen_ghz, gen_w, signature, Backend, Outcome, ZeroTest};

fn pattern(p: [bool; 4]) -> String {
    p.iter().map(|z| if *z { '0' } else { '*' }).collect()
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let test = ZeroTest::default();
    for n in [4, 6, 8] {
        let mut states = vec![gen_ghz(n)?, gen_w(n)?, gen_dicke(2, n)?];
        for k in 1..=7 {
            states.push(gen_chi(k, n)?);
        }
        for s in &states {
            let exact = signature(s, Backend::Exact, test)?;
            let float = signature(s, Backend::Float, test)?;
            assert_eq!(exact.pattern(), float.pattern());
            println!("n={n} {:<8} {}", s.label().unwrap_or("-"), pattern(exact.pattern()));
        }
    }

    let v = compare(&gen_chi(1, 4)?, &gen_chi(3, 4)?, Backend::Exact, test)?;
    assert_eq!(v.outcome, Outcome::Inequivalent);
    println!("chi1 vs chi3: separated by {:?}", v.separating_kinds);

    // equal patterns leave the question open
    let v = compare(&gen_ghz(4)?, &gen_w(4)?, Backend::Exact, test)?;
    assert_eq!(v.outcome, Outcome::Inconclusive);
    println!("ghz vs w: inconclusive");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
