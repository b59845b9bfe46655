use std::collections::BTreeMap;

use super::{check_disjoint, InfoError, JointPmf, Weight};

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Bipartite graph between the supports of two margins, with an edge for
/// every jointly supported pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicGraph {
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
    /// Component number of each left vertex, numbered by first appearance.
    pub left_component: Vec<usize>,
    pub right_component: Vec<usize>,
    pub components: usize,
}

impl CharacteristicGraph {
    pub(crate) fn from_pairs(pairs: impl IntoIterator<Item = (Vec<usize>, Vec<usize>)>) -> Self {
        let mut left_ix: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut right_ix: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut raw = Vec::new();
        for (a, b) in pairs {
            let n = left_ix.len();
            let l = *left_ix.entry(a).or_insert(n);
            let n = right_ix.len();
            let r = *right_ix.entry(b).or_insert(n);
            raw.push((l, r));
        }
        let mut left = vec![Vec::new(); left_ix.len()];
        for (k, i) in left_ix {
            left[i] = k;
        }
        let mut right = vec![Vec::new(); right_ix.len()];
        for (k, i) in right_ix {
            right[i] = k;
        }
        let nl = left.len();
        let mut uf = UnionFind::new(nl + right.len());
        for &(l, r) in &raw {
            uf.union(l, nl + r);
        }
        let mut label: BTreeMap<usize, usize> = BTreeMap::new();
        let mut comp = |uf: &mut UnionFind, v: usize| {
            let root = uf.find(v);
            let n = label.len();
            *label.entry(root).or_insert(n)
        };
        let left_component: Vec<usize> = (0..nl).map(|v| comp(&mut uf, v)).collect();
        let right_component: Vec<usize> = (0..right.len()).map(|v| comp(&mut uf, nl + v)).collect();
        raw.sort();
        raw.dedup();
        CharacteristicGraph { left, right, edges: raw, left_component, right_component, components: label.len() }
    }

    pub fn component_of_left(&self, v: &[usize]) -> Option<usize> {
        self.left.iter().position(|l| l == v).map(|i| self.left_component[i])
    }
}

/// Characteristic bipartite graph of the `a` and `b` margins of `p`.
pub fn characteristic_components<W: Weight>(
    p: &JointPmf<W>,
    a: &[usize],
    b: &[usize],
) -> Result<CharacteristicGraph, InfoError> {
    check_disjoint(a, b)?;
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    let joint = p.marginal(&both)?;
    let k = a.len();
    Ok(CharacteristicGraph::from_pairs(
        joint.iter().filter(|(_, w)| w.in_support()).map(|(o, _)| (o[..k].to_vec(), o[k..].to_vec())),
    ))
}
