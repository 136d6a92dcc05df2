use serde::Serialize;

use super::check_cap;
use crate::error::{ensure_branching, Error, Result};

/// A finite rooted tree, vertices numbered so that every parent precedes its
/// children.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    /// Neighbours outside the tree that a boundary condition acts on.
    boundary: Vec<u32>,
}

/// `|V|` for the ball of radius `depth` in the tree where every vertex has
/// `d + 1` neighbours. `None` on overflow.
pub fn tree_size(d: u32, depth: u32) -> Option<usize> {
    let d = d as usize;
    let mut total: usize = 1;
    let mut level: usize = 1;
    for k in 0..depth {
        level = level.checked_mul(if k == 0 { d + 1 } else { d })?;
        total = total.checked_add(level)?;
    }
    Some(total)
}

/// Breadth-first ball of radius `depth`: the root has `d + 1` children, every
/// other internal vertex `d`. Leaves carry the `d` missing neighbours as
/// boundary (the root does too, `d + 1` of them, when `depth == 0`).
pub fn build_tree(d: u32, depth: u32, cap: usize) -> Result<FiniteTree> {
    ensure_branching(d)?;
    let n = tree_size(d, depth).unwrap_or(usize::MAX);
    check_cap("tree", n, cap)?;
    let mut parent = vec![None];
    let mut level = vec![0usize];
    for k in 0..depth {
        let fan = if k == 0 { d + 1 } else { d };
        let mut next = Vec::with_capacity(level.len() * fan as usize);
        for &v in &level {
            for _ in 0..fan {
                next.push(parent.len());
                parent.push(Some(v));
            }
        }
        level = next;
    }
    let mut tree = FiniteTree::from_parents(&parent)?;
    for v in 0..tree.len() {
        if tree.children[v].is_empty() {
            tree.boundary[v] = if v == 0 { d + 1 } else { d };
        }
    }
    Ok(tree)
}

impl FiniteTree {
    /// Tree from a parent list. `parents[0]` must be `None` and every other
    /// entry must point to an earlier vertex. No boundary is attached.
    pub fn from_parents(parents: &[Option<usize>]) -> Result<Self> {
        if parents.is_empty() || parents[0].is_some() {
            return Err(Error::Domain("vertex 0 must be the (only) root".into()));
        }
        let n = parents.len();
        let mut children = vec![Vec::new(); n];
        let mut depth = vec![0; n];
        for (v, p) in parents.iter().enumerate().skip(1) {
            match *p {
                Some(p) if p < v => {
                    children[p].push(v);
                    depth[v] = depth[p] + 1;
                }
                _ => {
                    return Err(Error::Domain(format!(
                        "vertex {v} needs a parent with a smaller index, got {p:?}"
                    )))
                }
            }
        }
        Ok(Self {
            parent: parents.to_vec(),
            children,
            depth,
            boundary: vec![0; n],
        })
    }

    /// All rooted trees on `n` vertices up to relabelling order, as parent
    /// lists in which each parent precedes its child. Includes isomorphic
    /// duplicates; intended for small `n`.
    pub fn all_parent_lists(n: usize) -> Vec<Vec<Option<usize>>> {
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        let mut cur = vec![None];
        fn rec(n: usize, cur: &mut Vec<Option<usize>>, out: &mut Vec<Vec<Option<usize>>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for p in 0..cur.len() {
                cur.push(Some(p));
                rec(n, cur, out);
                cur.pop();
            }
        }
        rec(n, &mut cur, &mut out);
        out
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth_of(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn boundary_degree(&self, v: usize) -> u32 {
        self.boundary[v]
    }

    /// Degree counting boundary neighbours.
    pub fn degree(&self, v: usize) -> usize {
        self.children[v].len() + self.parent[v].is_some() as usize + self.boundary[v] as usize
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p, v)))
    }
}
