//! Inversion counting.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("sequence is not a permutation of 1..={len}")]
pub struct NotAPermutation {
    pub len: usize,
}

/// Number of pairs `i < j` with `perm[i] > perm[j]`, for a permutation of
/// `1..=k`. Merge-sort count, `O(k log k)`.
pub fn inversions(perm: &[u32]) -> Result<u64, NotAPermutation> {
    let k = perm.len();
    let mut seen = vec![false; k];
    for &v in perm {
        let slot = (v as usize)
            .checked_sub(1)
            .and_then(|i| seen.get_mut(i))
            .ok_or(NotAPermutation { len: k })?;
        if std::mem::replace(slot, true) {
            return Err(NotAPermutation { len: k });
        }
    }
    let mut buf = perm.to_vec();
    let mut scratch = vec![0u32; k];
    Ok(sort_count(&mut buf, &mut scratch))
}

fn sort_count(a: &mut [u32], scratch: &mut [u32]) -> u64 {
    let n = a.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (left, right) = a.split_at_mut(mid);
        let (sl, sr) = scratch.split_at_mut(mid);
        sort_count(left, sl) + sort_count(right, sr)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if a[i] <= a[j] {
            scratch[k] = a[i];
            i += 1;
        } else {
            // a[j] jumps ahead of every remaining left element.
            scratch[k] = a[j];
            count += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    scratch[k..k + mid - i].copy_from_slice(&a[i..mid]);
    k += mid - i;
    scratch[k..n].copy_from_slice(&a[j..n]);
    a.copy_from_slice(&scratch[..n]);
    count
}
