//! Minimum-cost linear assignment in O(n^3) via shortest augmenting paths
//! with potentials. Deterministic: ties are broken by the fixed column scan
//! order, so equal inputs give equal permutations.

use super::Ap3Error;

/// Bijection on 0..n. `apply(i)` is the image of i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self, Ap3Error> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(Ap3Error::NotAPermutation);
            }
            seen[v] = true;
        }
        Ok(Permutation(map))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Solves min sum costs[r][perm(r)] over permutations. Input must be square.
/// Returns the optimal row-to-column map and its cost.
pub fn solve_lap(costs: &[Vec<i64>]) -> Result<(Permutation, i64), Ap3Error> {
    let n = costs.len();
    for (r, row) in costs.iter().enumerate() {
        if row.len() != n {
            return Err(Ap3Error::NonSquareMatrix {
                rows: n,
                row: r,
                len: row.len(),
            });
        }
    }
    if n == 0 {
        return Ok((Permutation::identity(0), 0));
    }

    const INF: i64 = i64::MAX / 4;
    // 1-indexed arrays with a virtual row/column 0, the classic formulation.
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut matched_row = vec![0usize; n + 1]; // column -> row, 0 = free
    let mut way = vec![0usize; n + 1];

    for r in 1..=n {
        matched_row[0] = r;
        let mut j0 = 0usize;
        let mut minv = vec![INF; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta = INF;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = costs[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[matched_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }
        // Augment along the alternating path back to the virtual column.
        loop {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut map = vec![0usize; n];
    for j in 1..=n {
        map[matched_row[j] - 1] = j - 1;
    }
    let perm = Permutation(map);
    let cost = (0..n).map(|r| costs[r][perm.apply(r)]).sum();
    Ok((perm, cost))
}
