//! Finite posets given by covering pairs.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};
use workbench_core::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    pub labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

impl Poset {
    /// Reflexive-transitive closure of `rel`; rejects cycles.
    pub fn from_relations(labels: Vec<String>, rel: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in rel {
            if a >= n || b >= n {
                return Err(Error::InvalidParam(format!("relation ({a},{b}) out of range")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidParam(format!("`{}` and `{}` are related both ways", labels[i], labels[j])));
                }
            }
        }
        Ok(Poset { labels, leq })
    }

    pub fn from_json(j: &PosetJson) -> Result<Self> {
        let find = |s: &str| {
            j.elements.iter().position(|e| e == s).ok_or_else(|| Error::InvalidParam(format!("unknown element `{s}`")))
        };
        let rel = j.covers.iter().map(|[a, b]| Ok((find(a)?, find(b)?))).collect::<Result<Vec<_>>>()?;
        Self::from_relations(j.elements.clone(), &rel)
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.labels.clone(),
            covers: self.covers().into_iter().map(|(a, b)| [self.labels[a].clone(), self.labels[b].clone()]).collect(),
        }
    }

    fn numbered(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    pub fn chain(n: usize) -> Self {
        let rel: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_relations(Self::numbered(n), &rel).expect("acyclic")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_relations(Self::numbered(n), &[]).expect("acyclic")
    }

    /// `1 < 3, 1 < 4, 2 < 3, 2 < 4`.
    pub fn crown() -> Self {
        Self::from_relations(Self::numbered(4), &[(0, 2), (0, 3), (1, 2), (1, 3)]).expect("acyclic")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq[x][y]
    }

    /// Pairs `x <= y` in lexicographic order; position = basis index of `e_xy`.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|x| (0..n).filter(move |&y| self.leq[x][y]).map(move |y| (x, y))).collect()
    }

    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        self.intervals().into_iter().filter(|(x, y)| x != y).collect()
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.strict_pairs().into_iter().filter(|&(x, y)| !(0..self.len()).any(|z| self.lt(x, z) && self.lt(z, y))).collect()
    }

    /// Maximal chains, each listed bottom to top.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let covers = self.covers();
        let up = |x: usize| covers.iter().filter(move |(a, _)| *a == x).map(|(_, b)| *b);
        let minimal: Vec<usize> = (0..n).filter(|&x| !(0..n).any(|y| self.lt(y, x))).collect();
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = minimal.into_iter().map(|m| vec![m]).collect();
        while let Some(c) = stack.pop() {
            let top = *c.last().expect("nonempty");
            let next: Vec<usize> = up(top).collect();
            if next.is_empty() {
                out.push(c);
            } else {
                for b in next {
                    let mut c2 = c.clone();
                    c2.push(b);
                    stack.push(c2);
                }
            }
        }
        out.sort();
        out
    }

    fn relation_mask(&self, perm: &[usize]) -> u64 {
        let n = self.len();
        let mut m = 0u64;
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq[i][j] {
                    m |= 1 << (perm[i] * n + perm[j]);
                }
            }
        }
        m
    }

    /// Smallest relation bitmask over all relabellings.
    pub fn canonical_form(&self) -> u64 {
        let n = self.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u64::MAX;
        permute(&mut perm, 0, &mut |p| best = best.min(self.relation_mask(p)));
        best
    }

    /// All posets on `n` elements up to isomorphism, labelled `1..n` along a linear extension.
    pub fn all_up_to_iso(n: usize) -> Vec<Poset> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << pairs.len()) {
            let rel: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, p)| *p).collect();
            let p = Self::from_relations(Self::numbered(n), &rel).expect("upper triangular is acyclic");
            // only transitively closed masks, so each relation is produced once
            if p.strict_pairs().len() != rel.len() {
                continue;
            }
            if seen.insert(p.canonical_form()) {
                out.push(p);
            }
        }
        out
    }

    /// Random poset: each pair `i < j` related with probability `density`, then closed.
    pub fn random(rng: &mut impl Rng, n: usize, density: f64) -> Poset {
        let mut rel = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(density) {
                    rel.push((i, j));
                }
            }
        }
        Self::from_relations(Self::numbered(n), &rel).expect("acyclic")
    }
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}
