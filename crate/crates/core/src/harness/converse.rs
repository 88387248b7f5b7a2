use std::collections::BTreeSet;

use rayon::prelude::*;
use serde_json::json;

use super::{CaseReport, Registry};
use crate::char_table::{central_character, macdonald};
use crate::cyclotomic::FactorValue;
use crate::factors::{eps_pair, is_generic, jpss_gamma};
use crate::wd_side::{eps0_pair, TameWDClass};
use crate::Result;

#[derive(Clone, Debug)]
pub struct ConverseOptions {
    /// Same-rank pair constraints `ε(T ρ1 × T ρ2)` are used when `q^{n²}`, the
    /// number of intertwining terms, is at most this.
    pub max_same_rank_terms: u64,
    /// Survivors kept in the report.
    pub keep_survivors: usize,
}

impl Default for ConverseOptions {
    fn default() -> Self {
        ConverseOptions { max_same_rank_terms: 4096, keep_survivors: 8 }
    }
}

/// Gamma-data injectivity and uniqueness of the cuspidal relabeling on `GL_n(F_q)`.
///
/// A relabeling `T` of the cuspidals must keep `ω_{T ρ} = det ρ` and
/// `ε(T ρ × τ) = ε₀(ρ ⊗ 𝓜(τ))` for every cuspidal `τ` of lower rank (left
/// unlabelled), plus the same-rank constraints within budget.
pub fn converse_suite(reg: &Registry, n: usize, q: u64, opts: &ConverseOptions) -> Result<(Vec<CaseReport>, Vec<String>)> {
    let fam = reg.family(q, n)?;
    let conv = reg.pinning()?.convention;
    let table = fam.table(n);
    let ctx = fam.context(n);
    let cusp = table.cuspidal_rows();
    let name = format!("GL_{n}(F_{q})");
    let mut notes = Vec::new();

    let central: Vec<u64> =
        cusp.iter().map(|&i| Ok(central_character(table.character(i), ctx)?.exponent())).collect::<Result<_>>()?;
    let classes: Vec<TameWDClass> = cusp.iter().map(|&i| macdonald(&table.label(i))).collect();

    let mut taus = Vec::new();
    for m in 1..=n / 2 {
        let t = fam.table(m);
        for j in 0..t.len() {
            if is_generic(fam.context(m), t.character(j), false)? {
                taus.push((m, j));
            }
        }
    }
    let signatures: Vec<String> = cusp
        .par_iter()
        .zip(&central)
        .map(|(&i, &w)| {
            let gammas = taus
                .iter()
                .map(|&(m, j)| Ok(jpss_gamma(&fam, (n, table.character(i)), (m, fam.table(m).character(j)))?.to_string()))
                .collect::<Result<Vec<_>>>()?;
            Ok(format!("{w}|{}", gammas.join(",")))
        })
        .collect::<Result<_>>()?;
    let distinct = signatures.iter().collect::<BTreeSet<_>>().len();
    if cusp.len() == 1 {
        notes.push(format!("{name}: single cuspidal, injectivity vacuous"));
    }
    let injective = CaseReport::new(
        format!("{name} injectivity"),
        distinct == cusp.len(),
        json!({
            "cuspidals": cusp.len(),
            "distinct_gamma_data": distinct,
            "generic_twists": taus.len(),
            "vacuous": cusp.len() == 1,
        }),
    );

    let lower: Vec<(usize, usize)> =
        (1..n).flat_map(|m| fam.table(m).cuspidal_rows().into_iter().map(move |j| (m, j))).collect();
    let group_lower: Vec<Vec<FactorValue>> = cusp
        .par_iter()
        .map(|&i| {
            lower
                .iter()
                .map(|&(m, j)| eps_pair(&fam, (n, table.character(i)), (m, fam.table(m).character(j)), &reg.eval))
                .collect()
        })
        .collect::<Result<_>>()?;
    let galois_lower: Vec<Vec<FactorValue>> = classes
        .iter()
        .map(|c| {
            lower
                .iter()
                .map(|&(m, j)| eps0_pair(fam.tower(), c, &macdonald(&fam.table(m).label(j)), Some(&conv)))
                .collect()
        })
        .collect::<Result<_>>()?;
    let k = cusp.len();
    let ok: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| central[j] == classes[i].determinant_exponent() && group_lower[j] == galois_lower[i]).collect())
        .collect();

    let same_rank = q.checked_pow((n * n) as u32).is_some_and(|t| t <= opts.max_same_rank_terms);
    let (group_same, galois_same) = if same_rank {
        let idx: Vec<(usize, usize)> = (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).collect();
        let g: Vec<FactorValue> = idx
            .par_iter()
            .map(|&(a, b)| eps_pair(&fam, (n, table.character(cusp[a])), (n, table.character(cusp[b])), &reg.eval))
            .collect::<Result<_>>()?;
        let w: Vec<FactorValue> = idx
            .iter()
            .map(|&(a, b)| eps0_pair(fam.tower(), &classes[a], &classes[b], Some(&conv)))
            .collect::<Result<_>>()?;
        (g, w)
    } else {
        notes.push(format!("{name}: same-rank pair constraints skipped ({q}^{} intertwining terms)", n * n));
        (Vec::new(), Vec::new())
    };

    let mut search = Search {
        k,
        ok: &ok,
        same: same_rank.then_some((&group_same, &galois_same)),
        assign: Vec::new(),
        used: vec![false; k],
        survivors: Vec::new(),
        count: 0,
        nodes: 0,
        keep: opts.keep_survivors,
    };
    search.run();
    let identity: Vec<usize> = (0..k).collect();
    let identity_survives = search.survivors.contains(&identity);
    let unary: Vec<usize> = ok.iter().map(|r| r.iter().filter(|&&b| b).count()).collect();
    let unique = CaseReport::new(
        format!("{name} uniqueness"),
        search.count == 1 && identity_survives,
        json!({
            "cuspidals": k,
            "lower_rank_twists": lower.len(),
            "same_rank_constraints": same_rank,
            "candidates_per_cuspidal": unary,
            "search_nodes": search.nodes,
            "survivors": search.count,
            "identity_survives": identity_survives,
            "kept_survivors": search.survivors,
        }),
    );
    Ok((vec![injective, unique], notes))
}

struct Search<'a> {
    k: usize,
    ok: &'a [Vec<bool>],
    same: Option<(&'a [FactorValue], &'a [FactorValue])>,
    assign: Vec<usize>,
    used: Vec<bool>,
    survivors: Vec<Vec<usize>>,
    count: u64,
    nodes: u64,
    keep: usize,
}

impl Search<'_> {
    fn consistent(&self, i: usize, j: usize) -> bool {
        let Some((g, w)) = self.same else { return true };
        let k = self.k;
        if g[j * k + j] != w[i * k + i] {
            return false;
        }
        self.assign.iter().enumerate().all(|(a, &ta)| g[j * k + ta] == w[i * k + a] && g[ta * k + j] == w[a * k + i])
    }

    fn run(&mut self) {
        self.nodes += 1;
        let i = self.assign.len();
        if i == self.k {
            self.count += 1;
            if self.survivors.len() < self.keep {
                self.survivors.push(self.assign.clone());
            }
            return;
        }
        for j in 0..self.k {
            if self.used[j] || !self.ok[i][j] || !self.consistent(i, j) {
                continue;
            }
            self.used[j] = true;
            self.assign.push(j);
            self.run();
            self.assign.pop();
            self.used[j] = false;
        }
    }
}
