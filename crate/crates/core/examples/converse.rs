//! Gamma-data injectivity and uniqueness of the cuspidal relabeling for GL_3(F_2).

use mactab::harness::{converse_suite, ConverseOptions, Grid, Registry};

fn main() -> mactab::Result<()> {
    let grid = Grid::parse("n=3,q=2")?;
    let reg = Registry::new(&grid, None, 0);
    let (cases, notes) = converse_suite(&reg, 3, 2, &ConverseOptions::default())?;
    for c in cases {
        println!("{} {:?} {}", c.case, c.status, c.detail);
    }
    notes.iter().for_each(|n| println!("note: {n}"));
    Ok(())
}
