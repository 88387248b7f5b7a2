//! Exact character table of GL_3(F_2), with its orthogonality check.

use std::sync::Arc;

use mactab::char_table::CharacterTable;
use mactab::ff_tower::FieldTower;
use mactab::gl_group::GroupContext;

fn main() -> mactab::Result<()> {
    let tower = Arc::new(FieldTower::for_rank(2, 3)?);
    let ctx = GroupContext::new(tower, 3)?;
    let table = CharacterTable::compute(&ctx)?;
    table.check_orthogonality(&ctx)?;
    for row in table.rows() {
        let values: Vec<String> = row.values().iter().map(|v| v.to_string()).collect();
        println!("{}", values.join(" | "));
    }
    println!("degrees {:?}", table.degrees());
    Ok(())
}
