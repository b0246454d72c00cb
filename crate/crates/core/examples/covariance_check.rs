// Applies random invertible local operators and checks that each invariant
// picks up exactly `(prod det A_i)^(2^((n-2)/2))`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slocc::sampling::random_state;
use slocc::slocc::per_qubit_covariance_suite;
use slocc::{covariance_residual, random_chain_with, Backend, DetBounds, InvariantKind};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    for n in [2, 4, 6] {
        let state = random_state(&mut rng, n, Backend::Exact)?;
        let chain = random_chain_with(&mut rng, n, DetBounds::default(), Backend::Exact)?;
        for kind in InvariantKind::ALL {
            let report = covariance_residual(kind, &state, &chain, Backend::Exact)?;
            println!("n={n} {kind}: exponent {} holds={}", report.exponent, report.passes(0.0));
            assert!(report.passes(0.0));
        }
    }

    let state = random_state(&mut rng, 10, Backend::Float)?;
    let chain = random_chain_with(&mut rng, 10, DetBounds::default(), Backend::Float)?;
    let report = covariance_residual(InvariantKind::TypeIV, &state, &chain, Backend::Float)?;
    println!("n=10 float residual {:?}", report.residual);
    assert!(report.passes(1e-8));

    // one operator per qubit position
    let state = random_state(&mut rng, 6, Backend::Exact)?;
    let suite = per_qubit_covariance_suite(InvariantKind::TypeII, &state, Backend::Exact, &mut rng)?;
    assert!(suite.iter().all(|r| r.passes(0.0)));
    println!("per-qubit suite on n=6: {} positions ok", suite.len());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
