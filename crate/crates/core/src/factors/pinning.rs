use std::sync::Arc;

use serde::Serialize;

use super::eps_zeta;
use crate::char_table::{macdonald, GlFamily};
use crate::cyclotomic::FactorValue;
use crate::error::{Error, Result};
use crate::wd_side::{eps0_class, EpsConvention};

#[derive(Clone, Debug, Serialize)]
pub struct PinningCase {
    pub q: u64,
    pub n: usize,
    pub label: String,
    pub group: FactorValue,
    /// Conventions under which `ε₀` agrees with the group side.
    pub agreeing: Vec<EpsConvention>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PinningRecord {
    pub convention: EpsConvention,
    pub cases: Vec<PinningCase>,
    pub survivors: Vec<EpsConvention>,
    /// Extra `GL_1` cases used when the fixed set leaves several conventions.
    pub tie_break: Vec<PinningCase>,
}

fn cases_for(fam: &GlFamily, n: usize, rows: &[usize]) -> Result<Vec<PinningCase>> {
    let ctx = fam.context(n);
    let table = fam.table(n);
    rows.iter()
        .map(|&i| {
            let group = eps_zeta(ctx, table.character(i))?;
            let class = macdonald(&table.label(i));
            let mut agreeing = Vec::new();
            for c in EpsConvention::ALL {
                if eps0_class(fam.tower(), &class, Some(&c))? == group {
                    agreeing.push(c);
                }
            }
            Ok(PinningCase { q: fam.q(), n, label: table.param(i).to_string(), group, agreeing })
        })
        .collect()
}

fn survivors(cases: &[PinningCase], from: &[EpsConvention]) -> Vec<EpsConvention> {
    from.iter().copied().filter(|c| cases.iter().all(|k| k.agreeing.contains(c))).collect()
}

/// Fixes the sign rule and the `θ` versus `θ^{-1}` choice in `ε₀` from
/// all of `GL_1(F_2)`, `GL_1(F_3)` and the cuspidal of `GL_2(F_2)`,
/// then from `GL_1(F_4)`, `GL_1(F_5)` while more than one convention survives.
pub fn pin_conventions<F>(family: F) -> Result<PinningRecord>
where
    F: Fn(u64, usize) -> Result<Arc<GlFamily>>,
{
    let mut cases = Vec::new();
    for q in [2, 3] {
        let fam = family(q, 1)?;
        let rows: Vec<usize> = (0..fam.table(1).len()).collect();
        cases.extend(cases_for(&fam, 1, &rows)?);
    }
    let fam = family(2, 2)?;
    let cusp = fam.table(2).cuspidal_rows();
    cases.extend(cases_for(&fam, 2, &cusp[..1])?);

    let mut alive = survivors(&cases, &EpsConvention::ALL);
    let after_fixed = alive.clone();
    let mut tie_break = Vec::new();
    for q in [4, 5] {
        if alive.len() <= 1 {
            break;
        }
        let fam = family(q, 1)?;
        let rows: Vec<usize> = (0..fam.table(1).len()).collect();
        let extra = cases_for(&fam, 1, &rows)?;
        alive = survivors(&extra, &alive);
        tie_break.extend(extra);
    }
    match alive.as_slice() {
        [c] => Ok(PinningRecord { convention: *c, cases, survivors: after_fixed, tie_break }),
        _ => Err(Error::ConventionNotPinned),
    }
}
