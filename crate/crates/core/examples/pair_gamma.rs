//! Gamma and epsilon factors of the cuspidal pairs of GL_2(F_3) x GL_1(F_3).

use mactab::char_table::GlFamily;
use mactab::factors::{eps_pair, shahidi_gamma, Evaluation};

fn main() -> mactab::Result<()> {
    let fam = GlFamily::new(3, 2, None)?;
    let eval = Evaluation::default();
    let (t1, t2) = (fam.table(2), fam.table(1));
    for i in t1.cuspidal_rows() {
        for j in t2.cuspidal_rows() {
            let (a, b) = ((2, t1.character(i)), (1, t2.character(j)));
            let g = shahidi_gamma(&fam, a, b, &eval)?;
            let e = eps_pair(&fam, a, b, &eval)?;
            println!("{} x {}: gamma {} eps {} ({} points)", t1.param(i), t2.param(j), g.gamma, e, g.points_checked);
        }
    }
    Ok(())
}
