// Evaluates the same invariants with exact Gaussian-rational arithmetic and
// with log-domain LU, then cross-checks both against cofactor expansion.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slocc::sampling::random_state;
use slocc::{build_exact, cofactor_oracle, det_exact, evaluate, Backend, InvariantKind};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let state = random_state(&mut rng, 4, Backend::Exact)?;

    for kind in InvariantKind::ALL {
        let exact = evaluate(kind, &state, Backend::Exact)?;
        let float = evaluate(kind, &state, Backend::Float)?;
        let z = exact.raw.as_exact().unwrap();
        let lc = float.raw.as_float().unwrap();
        println!("{kind}: exact {z}");
        println!("        float |P| = exp({:.12}), arg = {:.12}", lc.log_magnitude, lc.phase);

        let m = build_exact(kind, &state).matrix;
        assert_eq!(det_exact(&m)?, cofactor_oracle(&m)?);
        if !lc.is_zero() {
            assert!((z.ln_modulus() - lc.log_magnitude).abs() < 1e-9);
        }
    }

    // n = 12 gives 64 x 64 matrices; the float path stays in log space
    let big = random_state(&mut rng, 12, Backend::Float)?;
    let v = evaluate(InvariantKind::TypeIII, &big, Backend::Float)?;
    println!("n=12 TypeIII ln|P| = {:.6}", v.raw.ln_modulus());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
