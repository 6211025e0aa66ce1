/// Size guards for the exponential enumerations.
///
/// Every enumeration checks its input against one of these bounds up front and
/// fails with [`crate::Error::Capability`] instead of running away.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Largest square matrix whose tropical determinant is computed by
    /// enumerating permutations.
    pub max_permutation_size: usize,
    /// Largest number of set-partition ground elements (strong components of
    /// the digraph) enumerated for a digraph-cone face lattice.
    pub max_partition_nodes: usize,
    /// Largest number of square submatrices inspected by a genericity test.
    pub max_square_submatrices: u64,
    /// Largest number of degree-one column selections seeding a cell
    /// enumeration.
    pub max_cell_candidates: u64,
    /// Largest weak component whose subsets are enumerated for ray supports.
    pub max_subset_nodes: usize,
    /// Largest number of columns for which all sign vectors are enumerated.
    pub max_sign_columns: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_permutation_size: 9,
            max_partition_nodes: 10,
            max_square_submatrices: 1_000_000,
            max_cell_candidates: 1_000_000,
            max_subset_nodes: 24,
            max_sign_columns: 20,
        }
    }
}
