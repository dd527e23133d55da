//! Permutation enumeration with signs.

/// Sign of the permutation that sorts `seq` (which must have distinct entries).
pub fn sort_sign<T: Ord>(seq: &[T]) -> i32 {
    let mut idx: Vec<usize> = (0..seq.len()).collect();
    idx.sort_by(|&a, &b| seq[a].cmp(&seq[b]));
    permutation_sign(&idx)
}

/// Sign of a permutation of `0..n` given in one-line notation.
pub fn permutation_sign(p: &[usize]) -> i32 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Advance `p` to the next permutation in lexicographic order, returning the
/// sign change, or `None` when `p` was the last one.
pub fn next_permutation<T: Ord>(p: &mut [T]) -> Option<i32> {
    let n = p.len();
    if n < 2 {
        return None;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    let swaps = 1 + (n - i) / 2;
    Some(if swaps.is_multiple_of(2) { 1 } else { -1 })
}

/// Streams every permutation of `items` (assumed sorted ascending) together
/// with its sign relative to the input order.
pub fn for_each_permutation<T: Ord + Clone>(items: &[T], mut f: impl FnMut(&[T], i32)) {
    let mut p = items.to_vec();
    let mut sign = 1;
    loop {
        f(&p, sign);
        match next_permutation(&mut p) {
            Some(s) => sign *= s,
            None => break,
        }
    }
}

/// All permutations of `items` whose first entry is `items[first]`, with signs
/// relative to `items`. Used to split alternations into independent chunks.
pub fn for_each_permutation_with_head<T: Ord + Clone>(items: &[T], first: usize, mut f: impl FnMut(&[T], i32)) {
    let mut rest: Vec<T> = items.to_vec();
    let head = rest.remove(first);
    // moving items[first] to the front is a cycle of length first + 1
    let head_sign = if first.is_multiple_of(2) { 1 } else { -1 };
    let mut buf = Vec::with_capacity(items.len());
    for_each_permutation(&rest, |tail, s| {
        buf.clear();
        buf.push(head.clone());
        buf.extend_from_slice(tail);
        f(&buf, head_sign * s);
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_match_cycle_counting() {
        let mut count = 0;
        for_each_permutation(&[0usize, 1, 2, 3, 4], |p, s| {
            assert_eq!(s, permutation_sign(p));
            count += 1;
        });
        assert_eq!(count, 120);
    }

    #[test]
    fn head_split_covers_everything_once() {
        let items = [1u8, 2, 3, 4];
        let mut all = std::collections::BTreeMap::new();
        for first in 0..4 {
            for_each_permutation_with_head(&items, first, |p, s| {
                let idx: Vec<usize> = p.iter().map(|&x| x as usize - 1).collect();
                assert_eq!(s, permutation_sign(&idx));
                assert!(all.insert(p.to_vec(), s).is_none());
            });
        }
        assert_eq!(all.len(), 24);
    }

    #[test]
    fn sort_sign_examples() {
        assert_eq!(sort_sign(&[3, 1, 2]), 1);
        assert_eq!(sort_sign(&[2, 1]), -1);
        assert_eq!(sort_sign::<u8>(&[]), 1);
    }
}
