use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff_tower::{BaseField, FieldTower};
use crate::partition::Partition;

use super::matrix::{gl_order, Gl, Matrix};
use super::poly::{irreducible_polys, Poly};

/// Default bound on `|G|` for enumerated groups.
pub const DEFAULT_GROUP_CAP: u64 = 200_000;
/// Bound on `q^{n²}` for the code lookup table.
const CODE_SPACE_LIMIT: u64 = 1 << 26;

/// Elementary-divisor data of a conjugacy class: `(f, λ_f)` sorted by `f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassLabel(pub Vec<(Poly, Partition)>);

impl ClassLabel {
    pub fn display(&self, f: &BaseField) -> String {
        let parts: Vec<String> =
            self.0.iter().map(|(p, l)| format!("({}){}", p.display(f), l)).collect();
        parts.join(" ")
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(p, l)| format!("{p}{l}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for ClassLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(&Vec<u8>, &Partition)> = self.0.iter().map(|(p, l)| (&p.0, l)).collect();
        v.serialize(s)
    }
}

/// Computes the class label of an invertible `g` from nullities of `f(g)^i`.
pub fn class_label(gl: &Gl, irreducibles: &[Poly], g: &Matrix) -> Result<ClassLabel> {
    if !gl.is_invertible(g) {
        return Err(Error::Singular);
    }
    let n = gl.n();
    let mut out = Vec::new();
    let mut covered = 0;
    for f in irreducibles {
        if covered == n {
            break;
        }
        let d = f.degree();
        if d > n - covered {
            continue;
        }
        let m = f.eval_matrix(gl, g);
        let mut power = m;
        let mut kernel = vec![0usize];
        loop {
            let nullity = n - gl.rank(&power);
            if nullity == *kernel.last().unwrap() {
                break;
            }
            kernel.push(nullity);
            power = gl.mul(&power, &m);
        }
        if kernel.len() == 1 {
            continue;
        }
        let conj: Vec<u32> = kernel.windows(2).map(|w| ((w[1] - w[0]) / d) as u32).collect();
        let lambda = Partition::new(conj).conjugate();
        covered += d * lambda.size() as usize;
        out.push((f.clone(), lambda));
    }
    debug_assert_eq!(covered, n);
    Ok(ClassLabel(out))
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    pub label: ClassLabel,
    #[serde(skip)]
    pub rep: Matrix,
    pub size: u64,
    pub centralizer: u64,
    /// Order of any element of the class.
    pub element_order: u64,
}

/// `GL_n(F_q)` with its elements and conjugacy classes enumerated.
#[derive(Debug)]
pub struct GroupContext {
    tower: Arc<FieldTower>,
    gl: Gl,
    irreducibles: Vec<Poly>,
    elements: Vec<Matrix>,
    class_by_code: Vec<u32>,
    classes: Vec<ClassInfo>,
    inverse: Vec<usize>,
}

impl GroupContext {
    pub fn new(tower: Arc<FieldTower>, n: usize) -> Result<Self> {
        Self::with_cap(tower, n, DEFAULT_GROUP_CAP)
    }

    pub fn with_cap(tower: Arc<FieldTower>, n: usize, cap: u64) -> Result<Self> {
        let q = tower.q();
        let order = gl_order(n, q);
        if order > cap {
            return Err(Error::CapExceeded { order, cap });
        }
        let field = Arc::new(BaseField::new(&tower));
        let gl = Gl::new(n, field);
        let space = gl
            .code_space()
            .filter(|&s| s <= CODE_SPACE_LIMIT)
            .ok_or_else(|| Error::LimitExceeded(format!("q^(n^2) for n={n}, q={q}")))?;
        let irreducibles = irreducible_polys(gl.field(), n);
        let mut class_by_code = vec![u32::MAX; space as usize];
        let mut elements = Vec::with_capacity(order as usize);
        for code in 0..space {
            let m = gl.decode(code);
            if gl.is_invertible(&m) {
                elements.push(m);
            }
        }
        debug_assert_eq!(elements.len() as u64, order);
        let gens: Vec<(Matrix, Matrix)> =
            gl.generators().into_iter().map(|s| (s, gl.inv(&s).unwrap())).collect();
        let mut raw: Vec<(Matrix, u64)> = Vec::new();
        let unassigned = u32::MAX;
        for g in &elements {
            if class_by_code[gl.code(g) as usize] != unassigned {
                continue;
            }
            let id = raw.len() as u32;
            let mut queue = VecDeque::from([*g]);
            class_by_code[gl.code(g) as usize] = id;
            let mut size = 0u64;
            while let Some(x) = queue.pop_front() {
                size += 1;
                for (s, si) in &gens {
                    let y = gl.conjugate(s, &x, si);
                    let c = gl.code(&y) as usize;
                    if class_by_code[c] == unassigned {
                        class_by_code[c] = id;
                        queue.push_back(y);
                    }
                }
            }
            raw.push((*g, size));
        }
        let mut classes: Vec<(ClassInfo, u32)> = raw
            .into_iter()
            .enumerate()
            .map(|(i, (rep, size))| {
                let label = class_label(&gl, &irreducibles, &rep).expect("invertible");
                let info = ClassInfo {
                    label,
                    rep,
                    size,
                    centralizer: order / size,
                    element_order: gl.element_order(&rep),
                };
                (info, i as u32)
            })
            .collect();
        classes.sort_by(|a, b| {
            (a.0.element_order, &a.0.label).cmp(&(b.0.element_order, &b.0.label))
        });
        let mut remap = vec![0u32; classes.len()];
        for (new, (_, old)) in classes.iter().enumerate() {
            remap[*old as usize] = new as u32;
        }
        for c in class_by_code.iter_mut() {
            if *c != unassigned {
                *c = remap[*c as usize];
            }
        }
        let classes: Vec<ClassInfo> = classes.into_iter().map(|(c, _)| c).collect();
        let mut ctx = GroupContext {
            tower,
            gl,
            irreducibles,
            elements,
            class_by_code,
            classes,
            inverse: Vec::new(),
        };
        ctx.inverse = (0..ctx.classes.len())
            .map(|k| ctx.class_of(&ctx.gl.inv(&ctx.classes[k].rep).unwrap()))
            .collect();
        Ok(ctx)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }
    pub fn gl(&self) -> &Gl {
        &self.gl
    }
    pub fn field(&self) -> &BaseField {
        self.gl.field()
    }
    pub fn n(&self) -> usize {
        self.gl.n()
    }
    pub fn q(&self) -> u64 {
        self.gl.q()
    }
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }
    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }
    /// Position of `g` in [`Self::elements`].
    pub fn element_index(&self, g: &Matrix) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }
    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }
    pub fn irreducibles(&self) -> &[Poly] {
        &self.irreducibles
    }

    /// Index of the class of an invertible matrix. Panics on singular input.
    #[inline]
    pub fn class_of(&self, g: &Matrix) -> usize {
        let c = self.class_by_code[self.gl.code(g) as usize];
        assert!(c != u32::MAX, "singular matrix has no class");
        c as usize
    }

    pub fn try_class_of(&self, g: &Matrix) -> Result<usize> {
        match self.class_by_code[self.gl.code(g) as usize] {
            u32::MAX => Err(Error::Singular),
            c => Ok(c as usize),
        }
    }

    /// Label computed from the matrix itself, independently of the lookup table.
    pub fn label_of(&self, g: &Matrix) -> Result<ClassLabel> {
        class_label(&self.gl, &self.irreducibles, g)
    }

    pub fn identity_class(&self) -> usize {
        0
    }

    pub fn inverse_class(&self, k: usize) -> usize {
        self.inverse[k]
    }

    /// Class of `g_k^j`.
    pub fn power_class(&self, k: usize, j: u64) -> usize {
        self.class_of(&self.gl.pow(&self.classes[k].rep, j))
    }

    /// Exponent of the group.
    pub fn exponent(&self) -> u64 {
        self.classes.iter().fold(1, |acc, c| acc.lcm(&c.element_order))
    }

    /// Class index of a scalar matrix `a·I`.
    pub fn scalar_class(&self, a: u8) -> usize {
        self.class_of(&self.gl.scalar(a))
    }

    pub fn class_index_by_label(&self) -> HashMap<ClassLabel, usize> {
        self.classes.iter().enumerate().map(|(i, c)| (c.label.clone(), i)).collect()
    }
}
