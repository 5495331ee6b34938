//! Automorphism groups and isomorphisms of small graphs by individualisation
//! and refinement.
//!
//! The search follows the first path of the refinement tree to a discrete
//! leaf. For each level, deepest first, every vertex of the target cell not
//! already in the orbit of the first-path vertex (under automorphisms found
//! so far) roots a subtree that is searched for a leaf equivalent to the first
//! leaf. Nodes whose refinement trace differs from the first path at the same
//! depth are pruned.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permgroup::{orbit_under, PermGroup};

use super::Graph;

#[derive(Clone)]
struct Node {
    cells: Vec<Vec<u32>>,
    trace: u64,
}

fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x100_0000_01b3).rotate_left(17) ^ 0x9e37_79b9_7f4a_7c15
}

impl Node {
    fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    /// First smallest non-singleton cell.
    fn target(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, c) in self.cells.iter().enumerate() {
            if c.len() > 1 && best.is_none_or(|b| c.len() < self.cells[b].len()) {
                best = Some(i);
            }
        }
        best
    }

    fn leaf(&self) -> Vec<u32> {
        self.cells.iter().map(|c| c[0]).collect()
    }
}

struct Refiner<'a> {
    g: &'a Graph,
    counts: Vec<u32>,
}

impl<'a> Refiner<'a> {
    fn new(g: &'a Graph) -> Self {
        Refiner { g, counts: vec![0; g.vertex_count()] }
    }

    /// Splits cells by neighbour counts into each splitter cell until equitable.
    fn refine(&mut self, node: &mut Node) {
        loop {
            let mut changed = false;
            let mut si = 0;
            while si < node.cells.len() {
                for c in self.counts.iter_mut() {
                    *c = 0;
                }
                for &u in &node.cells[si] {
                    for &v in self.g.neighbours(u as usize) {
                        self.counts[v as usize] += 1;
                    }
                }
                let mut next: Vec<Vec<u32>> = Vec::with_capacity(node.cells.len());
                let mut split_here = false;
                for (ci, cell) in node.cells.iter().enumerate() {
                    if cell.len() == 1 {
                        next.push(cell.clone());
                        continue;
                    }
                    let first = self.counts[cell[0] as usize];
                    if cell.iter().all(|&v| self.counts[v as usize] == first) {
                        next.push(cell.clone());
                        continue;
                    }
                    let mut keyed: Vec<(u32, u32)> = cell.iter().map(|&v| (self.counts[v as usize], v)).collect();
                    keyed.sort_by_key(|&(k, _)| k);
                    let mut start = 0;
                    node.trace = mix(node.trace, ((si as u64) << 32) | ci as u64);
                    while start < keyed.len() {
                        let k = keyed[start].0;
                        let end = keyed[start..].iter().position(|&(kk, _)| kk != k).map_or(keyed.len(), |e| start + e);
                        next.push(keyed[start..end].iter().map(|&(_, v)| v).collect());
                        node.trace = mix(node.trace, ((k as u64) << 32) | (end - start) as u64);
                        start = end;
                    }
                    split_here = true;
                }
                if split_here {
                    node.cells = next;
                    changed = true;
                }
                si += 1;
            }
            if !changed {
                break;
            }
        }
        node.trace = mix(node.trace, node.cells.len() as u64);
    }

    fn root(&mut self) -> Node {
        let n = self.g.vertex_count();
        let mut node = Node { cells: if n == 0 { Vec::new() } else { vec![(0..n as u32).collect()] }, trace: 0 };
        self.refine(&mut node);
        node
    }

    fn individualise(&mut self, node: &Node, cell: usize, v: u32) -> Node {
        let mut cells = Vec::with_capacity(node.cells.len() + 1);
        cells.extend_from_slice(&node.cells[..cell]);
        cells.push(vec![v]);
        cells.push(node.cells[cell].iter().copied().filter(|&x| x != v).collect());
        cells.extend_from_slice(&node.cells[cell + 1..]);
        let mut child = Node { cells, trace: mix(node.trace, cell as u64 + 1) };
        self.refine(&mut child);
        child
    }
}

/// First path: nodes, target cells and chosen vertices.
struct FirstPath {
    nodes: Vec<Node>,
    targets: Vec<usize>,
    chosen: Vec<u32>,
}

fn first_path(r: &mut Refiner) -> FirstPath {
    let mut nodes = vec![r.root()];
    let mut targets = Vec::new();
    let mut chosen = Vec::new();
    while let Some(t) = nodes.last().unwrap().target() {
        let v = nodes.last().unwrap().cells[t][0];
        let child = r.individualise(nodes.last().unwrap(), t, v);
        targets.push(t);
        chosen.push(v);
        nodes.push(child);
    }
    FirstPath { nodes, targets, chosen }
}

/// Searches the subtree below `node` (at `depth`) for a leaf `λ` such that
/// `leaf1[i] ↦ λ[i]` is an isomorphism from `g1` to `g2`.
fn search_leaf(r: &mut Refiner, g1: &Graph, fp: &FirstPath, leaf1: &[u32], node: &Node, depth: usize) -> Option<Permutation> {
    if node.trace != fp.nodes[depth].trace || node.cells.len() != fp.nodes[depth].cells.len() {
        return None;
    }
    if node.is_discrete() {
        let leaf = node.leaf();
        let mut img = vec![0u32; leaf.len()];
        for (a, b) in leaf1.iter().zip(&leaf) {
            img[*a as usize] = *b;
        }
        let perm = Permutation::from_images(img).ok()?;
        return is_isomorphism(g1, r.g, &perm).then_some(perm);
    }
    let t = fp.targets[depth];
    if node.cells[t].len() != fp.nodes[depth].cells[t].len() {
        return None;
    }
    for &w in &node.cells[t].clone() {
        let child = r.individualise(node, t, w);
        if let Some(p) = search_leaf(r, g1, fp, leaf1, &child, depth + 1) {
            return Some(p);
        }
    }
    None
}

fn is_isomorphism(g1: &Graph, g2: &Graph, f: &Permutation) -> bool {
    (0..g1.vertex_count()).all(|u| {
        let fu = f.apply(u);
        g1.valency(u) == g2.valency(fu) && g1.neighbours(u).iter().all(|&v| g2.is_adjacent(fu, f.apply(v as usize)))
    })
}

fn check_budget(n: usize, budget: usize) -> Result<()> {
    if n > budget {
        return Err(Error::budget("automorphism search", n, budget as u64));
    }
    Ok(())
}

/// Generators of `Aut(Γ)`.
pub fn automorphism_generators(g: &Graph, budget: usize) -> Result<Vec<Permutation>> {
    let n = g.vertex_count();
    check_budget(n, budget)?;
    let mut r = Refiner::new(g);
    let fp = first_path(&mut r);
    let leaf1 = fp.nodes.last().unwrap().leaf();
    let mut gens: Vec<Permutation> = Vec::new();
    for k in (0..fp.targets.len()).rev() {
        let t = fp.targets[k];
        let cell = fp.nodes[k].cells[t].clone();
        let mut orbit = orbit_under(&gens, n, fp.chosen[k] as usize);
        for &w in &cell {
            if orbit.binary_search(&(w as usize)).is_ok() {
                continue;
            }
            let child = r.individualise(&fp.nodes[k], t, w);
            if let Some(a) = search_leaf(&mut r, g, &fp, &leaf1, &child, k + 1) {
                gens.push(a);
                orbit = orbit_under(&gens, n, fp.chosen[k] as usize);
            }
        }
    }
    Ok(gens)
}

/// The full automorphism group.
pub fn automorphism_group(g: &Graph, budget: usize) -> Result<PermGroup> {
    let gens = automorphism_generators(g, budget)?;
    PermGroup::new(g.vertex_count(), gens)
}

/// An isomorphism `f` from `a` to `b` (`u ~ v ⇒ f(u) ~ f(v)`), or `None`.
pub fn isomorphism(a: &Graph, b: &Graph, budget: usize) -> Result<Option<Permutation>> {
    let n = a.vertex_count();
    check_budget(n.max(b.vertex_count()), budget)?;
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let mut da: Vec<usize> = (0..n).map(|v| a.valency(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.valency(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Permutation::identity(0)));
    }
    let mut ra = Refiner::new(a);
    let fp = first_path(&mut ra);
    let leaf1 = fp.nodes.last().unwrap().leaf();
    let mut rb = Refiner::new(b);
    let root = rb.root();
    Ok(search_leaf(&mut rb, a, &fp, &leaf1, &root, 0))
}
