//! Compares the intertwining gamma factor with the Whittaker zeta-sum factor on GL_2(F_5) x GL_1(F_5).

use mactab::char_table::GlFamily;
use mactab::factors::{sjpss_check, Evaluation};

fn main() -> mactab::Result<()> {
    let fam = GlFamily::new(5, 2, None)?;
    let (t1, t2) = (fam.table(2), fam.table(1));
    let eval = Evaluation::default();
    let mut holds = 0;
    let mut total = 0;
    for i in t1.cuspidal_rows() {
        for j in 0..t2.len() {
            let s = sjpss_check(&fam, (2, t1.character(i)), (1, t2.character(j)), &eval)?;
            total += 1;
            holds += s.holds as usize;
            if !s.holds {
                println!("{} x {}: off by {:?}", t1.param(i), t2.param(j), s.discrepancy.map(|d| d.to_string()));
            }
        }
    }
    println!("{holds}/{total} pairs agree");
    Ok(())
}
