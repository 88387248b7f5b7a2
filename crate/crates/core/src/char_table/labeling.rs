use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::char_lattice::{enumerate_params, orbits_of_degree, GaloisOrbit, LevelChar, ParamFunction};
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::ff_tower::FieldTower;
use crate::gl_group::{EllipticEmbedding, GroupContext, ParabolicShape, DEFAULT_GROUP_CAP};
use crate::partition::{partitions, Partition};
use crate::wd_side::{param_to_wd, wd_to_param, TameWDClass};

use super::harish::{induce_levi, is_cuspidal, LeviFunction, ParabolicData};
use super::{CharacterTable, ClassFunction};

/// The `(θ, λ)` data attached to an irreducible character.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IrreducibleLabel {
    Cuspidal { orbit: GaloisOrbit },
    General { param: ParamFunction },
}

impl IrreducibleLabel {
    /// Normalizes single-orbit, `λ = (1)` parameters to the cuspidal form.
    pub fn from_param(p: ParamFunction) -> Self {
        if p.is_cuspidal_label() {
            IrreducibleLabel::Cuspidal { orbit: p.entries()[0].0.clone() }
        } else {
            IrreducibleLabel::General { param: p }
        }
    }

    pub fn to_param(&self) -> ParamFunction {
        match self {
            IrreducibleLabel::Cuspidal { orbit } => {
                ParamFunction::single(orbit.clone(), Partition::new(vec![1]))
            }
            IrreducibleLabel::General { param } => param.clone(),
        }
    }
}

/// The Macdonald correspondence at parameter level.
pub fn macdonald(label: &IrreducibleLabel) -> TameWDClass {
    param_to_wd(&label.to_param())
}

pub fn macdonald_inverse(class: &TameWDClass) -> IrreducibleLabel {
    IrreducibleLabel::from_param(wd_to_param(class))
}

/// `Q^{n(λ)} Π_{i≤e}(Q^i - 1) / Π_{hooks}(Q^h - 1)`.
pub fn generic_degree(lambda: &Partition, big_q: u64) -> i128 {
    let qq = big_q as i128;
    let e = lambda.size();
    let num: i128 = (1..=e).map(|i| qq.pow(i) - 1).product::<i128>() * qq.pow(lambda.n_statistic());
    let den: i128 = lambda.hooks().iter().map(|&h| qq.pow(h) - 1).product();
    debug_assert_eq!(num % den, 0);
    num / den
}

/// The central character `z ↦ χ(zI)/χ(1)` as a level-1 character.
pub fn central_character(chi: &ClassFunction, ctx: &GroupContext) -> Result<LevelChar> {
    if chi.norm_squared(ctx) != Some(1) {
        return Err(Error::NotIrreducible);
    }
    let q = ctx.q();
    if q == 2 {
        return Ok(LevelChar::new(q, 1, 0));
    }
    let deg = chi.value(ctx.identity_class());
    let v = chi.value(ctx.scalar_class(2));
    (0..q - 1)
        .find(|&c| *v == deg.mul_root((q - 1) as u32, c as i64))
        .map(|c| LevelChar::new(q, 1, c))
        .ok_or(Error::NotIrreducible)
}

/// The unique degree-`n` orbit satisfying the trace formula
/// `χ(x) = (-1)^{n-1} Σ_i θ(x^{q^i})` at every `x ∈ k_n^×` of degree `n`.
pub fn label_cuspidal(
    chi: &ClassFunction,
    ctx: &GroupContext,
    emb: &EllipticEmbedding,
) -> Result<GaloisOrbit> {
    let tower = ctx.tower();
    let n = ctx.n() as u32;
    let order = tower.unit_order(n);
    let sign: i128 = if n % 2 == 1 { 1 } else { -1 };
    let points: Vec<(u64, usize)> = tower
        .elements(n)
        .skip(1)
        .filter(|x| tower.degree(*x) == n)
        .map(|x| Ok((x.log.unwrap(), ctx.class_of(&emb.embed(ctx.gl(), x)?))))
        .collect::<Result<_>>()?;
    let mut found = Vec::new();
    for orbit in orbits_of_degree(tower, n)? {
        let ok = points.iter().all(|&(a, k)| {
            let terms = orbit
                .members()
                .iter()
                .map(|&e| ((e as u128 * a as u128 % order as u128) as u64, sign));
            *chi.value(k) == CyclotomicNumber::from_exponents(order as u32, terms, 1)
        });
        if ok {
            found.push(orbit);
        }
    }
    match found.len() {
        0 => Err(Error::NoMatch(format!("GL_{n}"))),
        1 => Ok(found.pop().unwrap()),
        _ => Err(Error::MultipleMatch(format!("GL_{n}: {} orbits", found.len()))),
    }
}

/// A character table with a parameter attached to every row.
#[derive(Debug)]
pub struct LabeledTable {
    table: CharacterTable,
    labels: Vec<ParamFunction>,
    cuspidal: Vec<bool>,
    index: HashMap<ParamFunction, usize>,
}

impl LabeledTable {
    pub fn table(&self) -> &CharacterTable {
        &self.table
    }
    pub fn len(&self) -> usize {
        self.labels.len()
    }
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
    pub fn character(&self, i: usize) -> &ClassFunction {
        &self.table.rows()[i]
    }
    pub fn param(&self, i: usize) -> &ParamFunction {
        &self.labels[i]
    }
    pub fn label(&self, i: usize) -> IrreducibleLabel {
        IrreducibleLabel::from_param(self.labels[i].clone())
    }
    pub fn is_cuspidal(&self, i: usize) -> bool {
        self.cuspidal[i]
    }
    pub fn cuspidal_rows(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.cuspidal[i]).collect()
    }
    pub fn row_of(&self, p: &ParamFunction) -> Option<usize> {
        self.index.get(p).copied()
    }
    /// Row of the cuspidal attached to a degree-`n` orbit.
    pub fn cuspidal_row(&self, orbit: &GaloisOrbit) -> Option<usize> {
        self.row_of(&ParamFunction::single(orbit.clone(), Partition::new(vec![1])))
    }
}

/// Groups `GL_1(F_q), …, GL_N(F_q)` over one shared tower, with labelled character tables.
pub struct GlFamily {
    q: u64,
    tower: Arc<FieldTower>,
    contexts: Vec<Arc<GroupContext>>,
    tables: Vec<Arc<LabeledTable>>,
    parabolics: Mutex<HashMap<ParabolicShape, Arc<ParabolicData>>>,
}

impl std::fmt::Debug for GlFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GlFamily(q={}, N={})", self.q, self.contexts.len())
    }
}

impl GlFamily {
    /// Builds and labels tables up to rank `max_n`, reading and writing `cache` when given.
    pub fn new(q: u64, max_n: usize, cache: Option<&Path>) -> Result<Self> {
        Self::with_tower(Arc::new(FieldTower::for_rank(q, max_n as u32)?), max_n, cache)
    }

    pub fn with_tower(tower: Arc<FieldTower>, max_n: usize, cache: Option<&Path>) -> Result<Self> {
        let q = tower.q();
        let mut fam = GlFamily {
            q,
            tower: tower.clone(),
            contexts: Vec::new(),
            tables: Vec::new(),
            parabolics: Mutex::new(HashMap::new()),
        };
        for n in 1..=max_n {
            let ctx = Arc::new(GroupContext::with_cap(tower.clone(), n, DEFAULT_GROUP_CAP)?);
            fam.contexts.push(ctx.clone());
            let table = match cache {
                Some(dir) => CharacterTable::load_or_compute(&ctx, dir)?,
                None => CharacterTable::compute(&ctx)?,
            };
            let labeled = fam.label_table(n, table)?;
            fam.tables.push(Arc::new(labeled));
        }
        Ok(fam)
    }

    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }
    pub fn max_n(&self) -> usize {
        self.contexts.len()
    }
    pub fn context(&self, n: usize) -> &Arc<GroupContext> {
        &self.contexts[n - 1]
    }
    pub fn table(&self, n: usize) -> &Arc<LabeledTable> {
        &self.tables[n - 1]
    }

    /// Class data for a standard parabolic of `GL_{shape.n()}`.
    pub fn parabolic(&self, shape: &ParabolicShape) -> Result<Arc<ParabolicData>> {
        if let Some(d) = self.parabolics.lock().unwrap().get(shape) {
            return Ok(d.clone());
        }
        let n = shape.n();
        if n == 0 || n > self.contexts.len() {
            return Err(Error::ShapeMismatch(format!("GL_{n} not in family")));
        }
        let blocks: Vec<&GroupContext> = shape.parts().iter().map(|&k| self.context(k).as_ref()).collect();
        let data = Arc::new(ParabolicData::build(self.context(n), shape, &blocks)?);
        self.parabolics.lock().unwrap().insert(shape.clone(), data.clone());
        Ok(data)
    }

    /// `σ_1 ⊙ … ⊙ σ_r` for characters of the blocks.
    pub fn induce(&self, blocks: &[&ClassFunction], sizes: &[usize]) -> Result<ClassFunction> {
        let shape = ParabolicShape::new(sizes.to_vec())?;
        let data = self.parabolic(&shape)?;
        let n = shape.n();
        Ok(induce_levi(self.context(n), &data, &LeviFunction::tensor(&data, blocks)?))
    }

    fn proper_parabolics(&self, n: usize) -> Result<Vec<Arc<ParabolicData>>> {
        ParabolicShape::all(n)
            .into_iter()
            .filter(|s| s.is_proper())
            .map(|s| self.parabolic(&s))
            .collect()
    }

    /// Cuspidality of an irreducible character of `GL_n`.
    pub fn is_cuspidal(&self, n: usize, chi: &ClassFunction) -> Result<bool> {
        let ps = self.proper_parabolics(n)?;
        let refs: Vec<&ParabolicData> = ps.iter().map(|p| p.as_ref()).collect();
        is_cuspidal(chi, self.context(n), &refs)
    }

    fn label_table(&self, n: usize, table: CharacterTable) -> Result<LabeledTable> {
        let ctx = self.context(n).clone();
        let rows = table.rows();
        let r = rows.len();
        let mut labels: Vec<Option<ParamFunction>> = vec![None; r];
        let assign = |i: usize, p: ParamFunction, labels: &mut Vec<Option<ParamFunction>>| {
            if labels[i].is_some() {
                return Err(Error::AmbiguousLabel(format!("row {i} of GL_{n} labelled twice")));
            }
            labels[i] = Some(p);
            Ok(())
        };
        let cuspidal: Vec<bool> =
            rows.iter().map(|c| self.is_cuspidal(n, c)).collect::<Result<_>>()?;
        let emb = EllipticEmbedding::new(&self.tower, ctx.field(), n as u32)?;
        for i in (0..r).filter(|&i| cuspidal[i]) {
            let orbit = label_cuspidal(&rows[i], &ctx, &emb)?;
            assign(i, ParamFunction::single(orbit, Partition::new(vec![1])), &mut labels)?;
        }
        let params = enumerate_params(&self.tower, n as u32)?;
        // single orbit, |λ| ≥ 2: constituents of the self-induced cuspidal
        let mut done_orbits = std::collections::HashSet::new();
        for p in &params {
            let [(orbit, lambda)] = p.entries() else { continue };
            if lambda.size() < 2 || !done_orbits.insert(orbit.clone()) {
                continue;
            }
            let d = orbit.degree() as usize;
            let e = lambda.size() as usize;
            let base = self.table(d);
            let cusp = base
                .cuspidal_row(orbit)
                .ok_or_else(|| Error::NoMatch(format!("cuspidal {orbit} of GL_{d}")))?;
            let chars: Vec<&ClassFunction> = vec![base.character(cusp); e];
            let ind = self.induce(&chars, &vec![d; e])?;
            let mult = table.decompose(&ind, &ctx)?;
            let constituents: Vec<(usize, i128)> =
                mult.iter().enumerate().filter(|(_, &m)| m != 0).map(|(i, &m)| (i, m)).collect();
            let lambdas = partitions(e as u32);
            if constituents.len() != lambdas.len() {
                return Err(Error::AmbiguousLabel(format!(
                    "{} constituents for {} partitions of {e}",
                    constituents.len(),
                    lambdas.len()
                )));
            }
            let big_q = self.q.pow(d as u32);
            let gd: Vec<i128> = lambdas.iter().map(|l| generic_degree(l, big_q)).collect();
            for (a, la) in lambdas.iter().enumerate() {
                for (b, lb) in lambdas.iter().enumerate().skip(a + 1) {
                    if gd[a] == gd[b] && la.standard_tableaux() == lb.standard_tableaux() {
                        return Err(Error::AmbiguousLabel(format!("{la} and {lb} share a generic degree")));
                    }
                }
            }
            let total: i128 =
                lambdas.iter().zip(&gd).map(|(l, g)| l.standard_tableaux() as i128 * g).sum();
            let ind_deg = ind.degree().expect("integral degree");
            for (l, g) in lambdas.iter().zip(&gd) {
                let f = l.standard_tableaux() as i128;
                let hits: Vec<usize> = constituents
                    .iter()
                    .filter(|&&(i, m)| m == f && rows[i].degree().unwrap() * total == ind_deg * g)
                    .map(|&(i, _)| i)
                    .collect();
                match hits.as_slice() {
                    [i] => assign(*i, ParamFunction::single(orbit.clone(), l.clone()), &mut labels)?,
                    [] => return Err(Error::NoMatch(format!("{orbit} with {l}"))),
                    _ => return Err(Error::AmbiguousLabel(format!("{orbit} with {l}"))),
                }
            }
        }
        // several orbits: induce the labelled pieces and require irreducibility
        for p in &params {
            if p.entries().len() < 2 {
                continue;
            }
            let mut pieces = Vec::new();
            let mut sizes = Vec::new();
            for (o, l) in p.entries() {
                let m = (o.degree() * l.size()) as usize;
                let piece = ParamFunction::single(o.clone(), l.clone());
                let row = self
                    .table(m)
                    .row_of(&piece)
                    .ok_or_else(|| Error::NoMatch(format!("piece {piece} of GL_{m}")))?;
                pieces.push(self.table(m).character(row));
                sizes.push(m);
            }
            let ind = self.induce(&pieces, &sizes)?;
            if ind.norm_squared(&ctx) != Some(1) {
                return Err(Error::NotIrreducible);
            }
            let i = table.find(&ind).ok_or_else(|| Error::NoMatch(format!("{p}")))?;
            assign(i, p.clone(), &mut labels)?;
        }
        let labels: Vec<ParamFunction> = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.ok_or_else(|| Error::NoMatch(format!("row {i} of GL_{n} unlabelled"))))
            .collect::<Result<_>>()?;
        let index: HashMap<ParamFunction, usize> =
            labels.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        if index.len() != labels.len() || labels.len() != params.len() {
            return Err(Error::AmbiguousLabel(format!("GL_{n}: labels are not a bijection")));
        }
        Ok(LabeledTable { table, labels, cuspidal, index })
    }
}
