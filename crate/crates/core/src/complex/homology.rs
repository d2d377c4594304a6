use alloc::vec;
use alloc::vec::Vec;

use super::{BettiVector, SimplicialComplex};

/// Rank over GF(2) of `∂_d`, from `d`-simplices to `(d−1)`-simplices.
///
/// Returns 0 for `d = 0` and for `d` above the top dimension.
pub fn boundary_rank(complex: &SimplicialComplex, d: usize) -> usize {
    if d == 0 || d > complex.max_dim() || complex.count(d) == 0 {
        return 0;
    }
    let columns = boundary_columns(complex, d);
    if complex.count(d) > complex.count(d - 1) {
        // same rank, fewer columns
        rank(transpose(&columns, complex.count(d - 1)))
    } else {
        rank(columns)
    }
}

/// `β_d = #d-simplices − rank ∂_d − rank ∂_{d+1}` for `d = 0..=max_dim`.
///
/// The top entry counts cycles not killed by simplices that were never
/// built, so it is only meaningful when the complex is complete there.
pub fn betti_numbers(complex: &SimplicialComplex) -> BettiVector {
    let top = complex.max_dim();
    let ranks: Vec<usize> = (0..=top + 1).map(|d| boundary_rank(complex, d)).collect();
    BettiVector((0..=top).map(|d| complex.count(d) - ranks[d] - ranks[d + 1]).collect())
}

/// Column `j` lists the row indices of the faces of the `j`-th
/// `d`-simplex, ascending.
fn boundary_columns(complex: &SimplicialComplex, d: usize) -> Vec<Vec<u32>> {
    let mut face = Vec::with_capacity(d);
    complex
        .simplices(d)
        .map(|s| {
            let mut col: Vec<u32> = (0..=d)
                .map(|skip| {
                    face.clear();
                    face.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                    complex.index_of(&face).expect("complex is closed under faces") as u32
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect()
}

fn transpose(columns: &[Vec<u32>], rows: usize) -> Vec<Vec<u32>> {
    let mut t = vec![Vec::new(); rows];
    for (j, col) in columns.iter().enumerate() {
        for &i in col {
            t[i as usize].push(j as u32);
        }
    }
    t
}

/// Rank of a sparse GF(2) matrix by standard column reduction.
///
/// Columns are processed right to left with the lowest nonzero taken as
/// the largest row index.
fn rank(mut columns: Vec<Vec<u32>>) -> usize {
    let rows = columns.iter().flat_map(|c| c.last()).map(|&r| r as usize + 1).max().unwrap_or(0);
    let mut owner: Vec<u32> = vec![u32::MAX; rows];
    let mut scratch = Vec::new();
    let mut rank = 0;
    for j in (0..columns.len()).rev() {
        let mut col = core::mem::take(&mut columns[j]);
        while let Some(&low) = col.last() {
            let o = owner[low as usize];
            if o == u32::MAX {
                break;
            }
            add_into(&mut col, &columns[o as usize], &mut scratch);
        }
        if let Some(&low) = col.last() {
            owner[low as usize] = j as u32;
            rank += 1;
        }
        columns[j] = col;
    }
    rank
}

/// `a ← a + b` over GF(2), both sorted.
fn add_into(a: &mut Vec<u32>, b: &[u32], scratch: &mut Vec<u32>) {
    scratch.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                scratch.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                scratch.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    scratch.extend_from_slice(&a[i..]);
    scratch.extend_from_slice(&b[j..]);
    core::mem::swap(a, scratch);
}
