//! Conjugacy classes of GL_2(F_3) by rational canonical form.

use std::sync::Arc;

use mactab::ff_tower::FieldTower;
use mactab::gl_group::GroupContext;

fn main() -> mactab::Result<()> {
    let tower = Arc::new(FieldTower::for_rank(3, 2)?);
    let ctx = GroupContext::new(tower, 2)?;
    println!("|GL_2(F_3)| = {}, {} classes", ctx.order(), ctx.num_classes());
    for c in ctx.classes() {
        println!("{:<32} size {:>3}  order {}", c.label.display(ctx.field()), c.size, c.element_order);
    }
    Ok(())
}
