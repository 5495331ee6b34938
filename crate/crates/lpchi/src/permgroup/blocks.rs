//! Block systems via union-find closure of a seed pair.

use super::PermGroup;

/// A partition of an invariant point set into equal-size cells.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BlockSystem {
    /// Cells sorted internally and by least element.
    pub cells: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn cell_size(&self) -> usize {
        self.cells.first().map_or(0, |c| c.len())
    }

    /// Index of the cell containing `x`.
    pub fn cell_of(&self, x: usize) -> Option<usize> {
        self.cells.iter().position(|c| c.contains(&x))
    }

    /// Every generator maps cells onto cells.
    pub fn is_preserved_by(&self, g: &PermGroup) -> bool {
        g.generators().iter().all(|s| {
            self.cells.iter().all(|c| {
                let target = self.cell_of(s.apply(c[0]));
                target.is_some_and(|t| c.iter().all(|&x| self.cells[t].contains(&s.apply(x))))
            })
        })
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) -> bool {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra == rb {
        return false;
    }
    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
    parent[hi] = lo;
    true
}

/// Finest block system on `domain` (an orbit) with `a` and `b` in one cell.
pub fn minimal_block(g: &PermGroup, domain: &[usize], a: usize, b: usize) -> BlockSystem {
    let n = g.degree();
    let mut parent: Vec<usize> = (0..n).collect();
    union(&mut parent, a, b);
    loop {
        let mut changed = false;
        for &x in domain {
            let r = find(&mut parent, x);
            if r == x {
                continue;
            }
            for s in g.generators() {
                if union(&mut parent, s.apply(x), s.apply(r)) {
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut cells: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &x in domain {
        let r = find(&mut parent, x);
        cells.entry(r).or_default().push(x);
    }
    let mut cells: Vec<Vec<usize>> = cells.into_values().collect();
    for c in &mut cells {
        c.sort_unstable();
    }
    cells.sort();
    BlockSystem { cells }
}

/// Minimal non-trivial block systems of each orbit (for a transitive group:
/// of the whole point set).
pub fn block_systems(g: &PermGroup) -> Vec<BlockSystem> {
    let mut out = Vec::new();
    for orbit in g.orbits() {
        if orbit.len() < 3 {
            continue;
        }
        let a = orbit[0];
        let mut found: Vec<BlockSystem> = Vec::new();
        for &b in &orbit[1..] {
            let sys = minimal_block(g, &orbit, a, b);
            if sys.cells.len() > 1 && !found.contains(&sys) {
                found.push(sys);
            }
        }
        let minimal: Vec<BlockSystem> = found
            .iter()
            .filter(|s| !found.iter().any(|t| t.cell_size() < s.cell_size() && t.cells.iter().all(|c| s.cells.iter().any(|d| c.iter().all(|x| d.contains(x))))))
            .cloned()
            .collect();
        out.extend(minimal);
    }
    out.sort();
    out
}
