//! Pins the epsilon convention, then compares both sides for every irreducible of GL_2(F_5).

use std::sync::Arc;

use mactab::char_table::{macdonald, GlFamily};
use mactab::factors::{eps_zeta, pin_conventions};
use mactab::wd_side::eps0_class;

fn main() -> mactab::Result<()> {
    let record = pin_conventions(|q, n| Ok(Arc::new(GlFamily::new(q, n.max(if q == 5 { 2 } else { 1 }), None)?)))?;
    println!("pinned {:?} from {} cases", record.convention, record.cases.len() + record.tie_break.len());
    let fam = GlFamily::new(5, 2, None)?;
    let (ctx, table) = (fam.context(2), fam.table(2));
    for i in 0..table.len() {
        let group = eps_zeta(ctx, table.character(i))?;
        let galois = eps0_class(fam.tower(), &macdonald(&table.label(i)), Some(&record.convention))?;
        println!("{:<22} {}  {}", table.param(i).to_string(), group == galois, group);
    }
    Ok(())
}
