use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::{CertifyError, SupportStructure, VIEW_COORDS};
use crate::bits::Log2;
use crate::domain::Domain;

/// Resource limits for [`search`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Nodes visited before giving up with [`CertifyError::BudgetExceeded`].
    pub max_nodes: u64,
    /// Worker threads; 1 searches sequentially.
    pub workers: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 200_000_000, workers: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityVerdict {
    pub feasible: bool,
    pub witness: Option<SupportStructure>,
    pub nodes_explored: u64,
    pub cap: usize,
}

/// The triple coordinate a party does not see.
const HIDDEN: [usize; 3] = [1, 2, 0];

type Triple = [u8; 3];
type View = [u8; 2];

fn view(t: &Triple, party: usize) -> View {
    let [a, b] = VIEW_COORDS[party];
    [t[a], t[b]]
}

/// Partial structure: the triples placed so far, their views, the views each
/// party's secret classes own, and the number of symbols used per share.
#[derive(Clone)]
struct Node {
    sets: Vec<Vec<Triple>>,
    views: Vec<[Vec<View>; 3]>,
    owned: [Vec<(View, usize)>; 3],
    used: [u8; 3],
}

enum Step {
    Prune,
    Done,
    Branch(usize, Vec<Triple>),
}

struct Problem {
    cap: usize,
    /// `class[m][i]`: member `m`'s secret as seen by party `i`.
    class: Vec<[usize; 3]>,
    /// `peers[m][i]`: other members party `i` must not tell apart from `m`.
    peers: Vec<[Vec<usize>; 3]>,
    max_nodes: u64,
}

impl Problem {
    fn new(domain: &Domain, cap: usize, max_nodes: u64) -> Self {
        let class: Vec<[usize; 3]> = domain.members().iter().map(|x| x.0).collect();
        let peers = (0..class.len())
            .map(|m| [0, 1, 2].map(|i| (0..class.len()).filter(|&p| p != m && class[p][i] == class[m][i]).collect()))
            .collect();
        Problem { cap, class, peers, max_nodes }
    }

    fn root(&self) -> Node {
        let n = self.class.len();
        let mut node = Node {
            sets: vec![Vec::new(); n],
            views: vec![[Vec::new(), Vec::new(), Vec::new()]; n],
            owned: [Vec::new(), Vec::new(), Vec::new()],
            used: [0; 3],
        };
        self.add(&mut node, 0, [0, 0, 0]);
        node
    }

    fn can_add(&self, node: &Node, m: usize, t: &Triple) -> bool {
        if node.sets[m].len() >= self.cap || node.sets[m].contains(t) {
            return false;
        }
        (0..3).all(|i| {
            let v = view(t, i);
            node.owned[i].iter().all(|(w, c)| *w != v || *c == self.class[m][i])
        })
    }

    fn add(&self, node: &mut Node, m: usize, t: Triple) {
        node.sets[m].push(t);
        for i in 0..3 {
            let v = view(&t, i);
            if !node.views[m][i].contains(&v) {
                node.views[m][i].push(v);
            }
            if !node.owned[i].iter().any(|(w, _)| *w == v) {
                node.owned[i].push((v, self.class[m][i]));
            }
        }
        for c in 0..3 {
            node.used[c] = node.used[c].max(t[c] + 1);
        }
    }

    /// Views party `i` must see under member `m` but does not yet.
    fn open_views(&self, node: &Node, m: usize, i: usize) -> Vec<View> {
        let mut open: Vec<View> = Vec::new();
        for &p in &self.peers[m][i] {
            for v in &node.views[p][i] {
                if !node.views[m][i].contains(v) && !open.contains(v) {
                    open.push(*v);
                }
            }
        }
        open
    }

    fn completions(&self, node: &Node, m: usize, i: usize, v: View) -> Vec<Triple> {
        let hidden = HIDDEN[i];
        (0..=node.used[hidden])
            .map(|s| {
                let mut t = [0u8; 3];
                t[VIEW_COORDS[i][0]] = v[0];
                t[VIEW_COORDS[i][1]] = v[1];
                t[hidden] = s;
                t
            })
            .filter(|t| self.can_add(node, m, t))
            .collect()
    }

    /// Every missing view costs its member a distinct new triple, so a member
    /// whose set plus its largest per-party shortfall exceeds the cap is a dead
    /// end. Otherwise branch on the open view with the fewest completions.
    fn step(&self, node: &Node) -> Step {
        let mut open_all = Vec::new();
        for m in 0..self.class.len() {
            let open = [0, 1, 2].map(|i| self.open_views(node, m, i));
            let need = open.iter().map(Vec::len).max().unwrap_or(0);
            if node.sets[m].len() + need > self.cap {
                return Step::Prune;
            }
            if need > 0 {
                open_all.push((m, open));
            }
        }
        if open_all.is_empty() {
            return match node.sets.iter().position(Vec::is_empty) {
                Some(m) => Step::Branch(m, self.seeds(node, m)),
                None => Step::Done,
            };
        }
        let mut best: Option<(usize, Vec<Triple>)> = None;
        for (m, open) in &open_all {
            for (i, views) in open.iter().enumerate() {
                for &v in views {
                    let options = self.completions(node, *m, i, v);
                    if options.is_empty() {
                        return Step::Prune;
                    }
                    if best.as_ref().is_none_or(|(_, b)| options.len() < b.len()) {
                        best = Some((*m, options));
                    }
                }
            }
        }
        let (m, options) = best.expect("some open view");
        Step::Branch(m, options)
    }

    /// Starting triples for a member no other member constrains.
    fn seeds(&self, node: &Node, m: usize) -> Vec<Triple> {
        let mut out = Vec::new();
        for a in 0..=node.used[0] {
            for b in 0..=node.used[1] {
                for c in 0..=node.used[2] {
                    let t = [a, b, c];
                    if self.can_add(node, m, &t) {
                        out.push(t);
                    }
                }
            }
        }
        out
    }

    fn count(&self, counter: &AtomicU64) -> Result<(), CertifyError> {
        if counter.fetch_add(1, Ordering::Relaxed) >= self.max_nodes {
            return Err(CertifyError::BudgetExceeded { nodes: self.max_nodes });
        }
        Ok(())
    }

    fn dfs(&self, node: Node, counter: &AtomicU64) -> Result<Option<Node>, CertifyError> {
        self.count(counter)?;
        match self.step(&node) {
            Step::Prune => Ok(None),
            Step::Done => Ok(Some(node)),
            Step::Branch(m, options) => {
                for t in options {
                    let mut child = node.clone();
                    self.add(&mut child, m, t);
                    if let Some(found) = self.dfs(child, counter)? {
                        return Ok(Some(found));
                    }
                }
                Ok(None)
            }
        }
    }

    /// Expands the tree breadth-first, in branch order, until there are
    /// enough subtrees to share among workers.
    fn frontier(&self, target: usize, counter: &AtomicU64) -> Result<Vec<Node>, CertifyError> {
        let mut frontier = vec![self.root()];
        while frontier.len() < target {
            let mut next = Vec::new();
            let mut expanded = false;
            for node in frontier {
                match self.step(&node) {
                    Step::Prune => self.count(counter)?,
                    Step::Done => next.push(node),
                    Step::Branch(m, options) => {
                        self.count(counter)?;
                        expanded = true;
                        for t in options {
                            let mut child = node.clone();
                            self.add(&mut child, m, t);
                            next.push(child);
                        }
                    }
                }
            }
            frontier = next;
            if !expanded {
                break;
            }
        }
        Ok(frontier)
    }
}

fn witness(domain: &Domain, cap: usize, node: Node) -> SupportStructure {
    let sets = node.sets.into_iter().map(|set| set.into_iter().map(|t| t.map(usize::from)).collect()).collect();
    SupportStructure { domain: domain.clone(), cap, sets }
}

/// Decides whether some support structure with every set of size at most
/// `cap` exists on `domain`. Symbols are numbered in order of first use, so
/// each structure is searched once up to relabeling; the search is
/// exhaustive, so an infeasible verdict is a proof.
pub fn search(domain: &Domain, cap: usize, budget: SearchBudget) -> Result<FeasibilityVerdict, CertifyError> {
    if cap == 0 {
        return Err(CertifyError::ZeroCap);
    }
    let problem = Problem::new(domain, cap, budget.max_nodes);
    let counter = AtomicU64::new(0);
    let found = if budget.workers <= 1 {
        problem.dfs(problem.root(), &counter)?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(budget.workers)
            .build()
            .expect("thread pool");
        let frontier = problem.frontier(budget.workers * 16, &counter)?;
        pool.install(|| {
            frontier
                .into_par_iter()
                .map(|node| problem.dfs(node, &counter))
                .find_map_first(|r| match r {
                    Ok(None) => None,
                    other => Some(other),
                })
                .unwrap_or(Ok(None))
        })?
    };
    Ok(FeasibilityVerdict {
        feasible: found.is_some(),
        witness: found.map(|node| witness(domain, cap, node)),
        nodes_explored: counter.load(Ordering::Relaxed),
        cap,
    })
}

/// Result of [`certified_lower_bound`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedBound {
    /// `ρ ≥ log2(bits.0)`.
    pub bits: Log2,
    /// Smallest feasible cap, when one was found within the limit.
    pub smallest_feasible: Option<usize>,
    pub verdicts: Vec<FeasibilityVerdict>,
}

/// Searches caps `1, 2, …, k_max` in order. Infeasibility at `k − 1` proves
/// every scheme needs at least `k` randomness values; the bound is `log2` of
/// the smallest feasible cap, or of `k_max + 1` when none is.
pub fn certified_lower_bound(domain: &Domain, k_max: usize, budget: SearchBudget) -> Result<CertifiedBound, CertifyError> {
    let mut verdicts = Vec::new();
    for k in 1..=k_max {
        let v = search(domain, k, budget)?;
        let feasible = v.feasible;
        verdicts.push(v);
        if feasible {
            return Ok(CertifiedBound { bits: Log2(k as u64), smallest_feasible: Some(k), verdicts });
        }
    }
    Ok(CertifiedBound { bits: Log2(k_max as u64 + 1), smallest_feasible: None, verdicts })
}
