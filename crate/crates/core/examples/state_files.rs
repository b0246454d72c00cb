// Round-trips states through the JSON state format and drives the CLI
// in-process.

use slocc::cli::run;
use slocc::{gen_chi, parse_state, serialize_state, Backend};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let state = gen_chi(2, 4)?;
    let text = serialize_state(&state);
    println!("{text}");
    assert_eq!(parse_state(text.as_bytes())?, state);

    let float = state.converted(Backend::Float);
    let back = parse_state(serialize_state(&float).as_bytes())?;
    assert_eq!(back.to_float(), float.to_float());

    let dir = tempfile::tempdir()?;
    let a = dir.path().join("chi1.json");
    let b = dir.path().join("chi3.json");
    let a_s = a.to_str().unwrap();
    let b_s = b.to_str().unwrap();
    for (family, path) in [("chi1", a_s), ("chi3", b_s)] {
        let out = run(["slocc", "gen", "--family", family, "--n", "4", "-o", path]);
        assert_eq!(out.code, 0, "{}", out.stderr);
    }
    let out = run(["slocc", "compare", a_s, b_s]);
    println!("compare exit {}\n{}", out.code, out.stdout);
    let out = run(["slocc", "check-covariance", a_s, "--kind", "all", "--trials", "3", "--seed", "1"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
