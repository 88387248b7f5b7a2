//! Labels of the irreducibles of GL_2(F_3), their Macdonald classes and central characters.

use mactab::char_table::{central_character, macdonald, GlFamily};

fn main() -> mactab::Result<()> {
    let fam = GlFamily::new(3, 2, None)?;
    let (ctx, table) = (fam.context(2), fam.table(2));
    for i in 0..table.len() {
        let class = macdonald(&table.label(i));
        let omega = central_character(table.character(i), ctx)?;
        println!(
            "{:<20} deg {:<2} {:<24} omega {} det {}",
            table.param(i).to_string(),
            table.character(i).degree().unwrap_or(0),
            class.to_string(),
            omega.exponent(),
            class.determinant_exponent()
        );
    }
    Ok(())
}
