// Prints the four index grids for 4 and 6 qubits.
//
// Entry `(r, c)` is the amplitude index placed at row `r`, column `c`.

use slocc::layout::index_grid;
use slocc::InvariantKind;

fn print_grid(kind: InvariantKind, n: usize) -> slocc::Result<()> {
    println!("{kind} n={n}");
    for row in index_grid(kind, n)? {
        let cells: Vec<String> = row.iter().map(|i| format!("a{i}")).collect();
        println!("  {}", cells.join(" "));
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in [4, 6] {
        for kind in InvariantKind::ALL {
            print_grid(kind, n)?;
        }
    }
    // every layout is a permutation of 0..2^n
    for kind in InvariantKind::ALL {
        let mut all: Vec<usize> = index_grid(kind, 8)?.concat();
        all.sort_unstable();
        assert!(all.iter().copied().eq(0..256));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
