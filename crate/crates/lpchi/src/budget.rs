/// Limits guarding the expensive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest group order that may be enumerated element by element.
    pub enumeration: u64,
    /// Largest vertex count accepted by the automorphism and isomorphism solvers.
    pub automorphism_vertices: usize,
    /// Largest coset-action degree built by the census.
    pub coset_degree: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { enumeration: 1_000_000, automorphism_vertices: 200, coset_degree: 10_000 }
    }
}

impl Budget {
    /// Defaults with room to enumerate the largest census groups.
    pub fn census() -> Self {
        Budget { enumeration: 5_000_000, ..Budget::default() }
    }
}
