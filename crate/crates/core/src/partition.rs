use std::fmt;

use serde::{Deserialize, Serialize};

/// An integer partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|i| self.0.iter().filter(|&&p| p >= i).count() as u32).collect())
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_statistic(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &p)| i as u32 * p).sum()
    }

    /// Hook lengths of all cells, row by row.
    pub fn hooks(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut out = Vec::new();
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.0[j as usize] - i as u32 - 1;
                out.push(arm + leg + 1);
            }
        }
        out
    }

    /// Number of standard Young tableaux, the dimension of the matching `S_n`-irreducible.
    pub fn standard_tableaux(&self) -> u64 {
        let n = self.size() as u64;
        let fact: u64 = (1..=n).product();
        fact / self.hooks().iter().map(|&h| h as u64).product::<u64>()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n`, in reverse lexicographic order (`(n)` first).
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=max.min(n)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let p: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(p, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn statistics() {
        let l = Partition::new(vec![1, 3, 0, 2]);
        assert_eq!(l.parts(), &[3, 2, 1]);
        assert_eq!(l.conjugate(), Partition::new(vec![3, 2, 1]));
        assert_eq!(Partition::new(vec![2, 1, 1]).conjugate(), Partition::new(vec![3, 1]));
        assert_eq!(Partition::new(vec![1, 1, 1]).n_statistic(), 3);
        assert_eq!(Partition::new(vec![2, 1]).standard_tableaux(), 2);
        assert_eq!(Partition::new(vec![2, 2]).standard_tableaux(), 2);
        assert_eq!(Partition::new(vec![3, 1]).standard_tableaux(), 3);
    }

    #[test]
    fn tableaux_squares_sum_to_factorial() {
        for n in 1..7u32 {
            let s: u64 = partitions(n).iter().map(|l| l.standard_tableaux().pow(2)).sum();
            assert_eq!(s, (1..=n as u64).product::<u64>());
        }
    }
}
