//! Parameter functions of GL_3(F_2) and their tame Weil-Deligne classes.

use mactab::char_lattice::enumerate_params;
use mactab::ff_tower::FieldTower;
use mactab::wd_side::param_to_wd;

fn main() -> mactab::Result<()> {
    let tower = FieldTower::for_rank(2, 3)?;
    let params = enumerate_params(&tower, 3)?;
    println!("{} parameter functions of total degree 3 over F_2", params.len());
    for p in &params {
        println!("{p:<28} {}", param_to_wd(p));
    }
    Ok(())
}
