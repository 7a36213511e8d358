//! Subset enumeration. A subset is meaningful when it contains at least one
//! mutation and at least one hill climber: without a mutation the chain
//! cannot leave the first local optimum, without a climber it cannot exploit.

use super::ConfigureError;
use crate::engine::{ComponentDesc, ComponentKind};
use itertools::Itertools;

/// All meaningful subsets of exactly `size` pool members, as index lists
/// into `pool`, in lexicographic index order.
pub fn enumerate_meaningful_subsets(
    pool: &[ComponentDesc],
    size: usize,
) -> Result<Vec<Vec<usize>>, ConfigureError> {
    if size < 2 || size > pool.len() {
        return Err(ConfigureError::SizeOutOfRange {
            size,
            pool: pool.len(),
        });
    }
    let subsets: Vec<Vec<usize>> = (0..pool.len())
        .combinations(size)
        .filter(|subset| {
            let mutations = subset
                .iter()
                .filter(|&&i| pool[i].kind == ComponentKind::Mutation)
                .count();
            mutations > 0 && mutations < subset.len()
        })
        .collect();
    if subsets.is_empty() {
        return Err(ConfigureError::NoMeaningfulSubsets);
    }
    Ok(subsets)
}
