//! Runs one verification suite on a grid: `cargo run --example verify -- pairs-eps "n<=2,q in 2,3"`.

use mactab::harness::{run_suite, Grid, Registry, Suite};

fn main() -> mactab::Result<()> {
    let mut args = std::env::args().skip(1);
    let suite = Suite::parse(&args.next().unwrap_or_else(|| "cuspidal-census".into()))?;
    let grid = Grid::parse(&args.next().unwrap_or_else(|| "n<=3,q in 2,3".into()))?;
    let reg = Registry::new(&grid, None, 0);
    let report = run_suite(suite, &grid, &reg, 0)?;
    print!("{}", report.to_lines());
    Ok(())
}
