//! Multisets of sets with bounded coverage.

/// Searches for a multiset of `k` sets (indices into `sets`, non-decreasing)
/// covering every element of `0..ground` at most `cap` times.
///
/// Indices are tried in the given order, so callers that sort `sets` by size
/// and then lexicographically get the first such multiset in that order.
pub fn find_low_cover(sets: &[Vec<usize>], ground: usize, k: usize, cap: usize) -> Option<Vec<usize>> {
    if k == 0 {
        return Some(Vec::new());
    }
    if let Some(i) = sets.iter().position(|s| s.is_empty()) {
        return Some(vec![i; k]);
    }
    let usable: Vec<usize> = (0..sets.len())
        .filter(|&i| sets[i].iter().all(|&u| u < ground))
        .collect();
    let mut count = vec![0usize; ground];
    let mut chosen = Vec::with_capacity(k);
    if dfs(sets, &usable, 0, k, cap, &mut count, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

fn dfs(
    sets: &[Vec<usize>],
    usable: &[usize],
    from: usize,
    k: usize,
    cap: usize,
    count: &mut [usize],
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == k {
        return true;
    }
    for pos in from..usable.len() {
        let set = &sets[usable[pos]];
        if set.iter().any(|&u| count[u] >= cap) {
            continue;
        }
        for &u in set {
            count[u] += 1;
        }
        chosen.push(usable[pos]);
        if dfs(sets, usable, pos, k, cap, count, chosen) {
            return true;
        }
        chosen.pop();
        for &u in set {
            count[u] -= 1;
        }
    }
    false
}

/// Largest coverage of any element by the multiset.
pub fn max_coverage(sets: &[Vec<usize>], multiset: &[usize], ground: usize) -> usize {
    let mut count = vec![0usize; ground];
    for &i in multiset {
        for &u in &sets[i] {
            count[u] += 1;
        }
    }
    count.into_iter().max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_set_multiset_is_low() {
        // 0-based versions of {1..5}, {3,4,7,8}, {5,6,7}, {9,10}
        let sets = vec![
            vec![0, 1, 2, 3, 4],
            vec![2, 3, 6, 7],
            vec![4, 5, 6],
            vec![8, 9],
        ];
        assert_eq!(max_coverage(&sets, &[0, 1, 2, 3, 3], 10), 2);
        assert!(find_low_cover(&sets, 10, 5, 2).is_some());
    }

    #[test]
    fn intersecting_triple_has_no_low_cover() {
        // three pairwise intersecting 2-sets of [3], k=3, cap 1
        let sets = vec![vec![0, 1], vec![0, 2], vec![1, 2]];
        assert_eq!(find_low_cover(&sets, 3, 3, 1), None);
        assert_eq!(find_low_cover(&sets, 3, 2, 1), None);
        assert!(find_low_cover(&sets, 3, 3, 2).is_some());
    }

    #[test]
    fn empty_set_covers_nothing() {
        let sets = vec![vec![0], vec![]];
        assert_eq!(find_low_cover(&sets, 1, 4, 0), Some(vec![1; 4]));
    }

    #[test]
    fn brute_force_agreement() {
        use crate::combin::odometer_next;
        let sets = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3], vec![1]];
        for k in 1..=4 {
            for cap in 0..=3 {
                let radix = vec![sets.len(); k];
                let mut digits = vec![0; k];
                let mut exists = false;
                loop {
                    if max_coverage(&sets, &digits, 4) <= cap {
                        exists = true;
                    }
                    if !odometer_next(&mut digits, &radix) {
                        break;
                    }
                }
                let found = find_low_cover(&sets, 4, k, cap);
                assert_eq!(found.is_some(), exists, "k={k} cap={cap}");
                if let Some(m) = found {
                    assert!(max_coverage(&sets, &m, 4) <= cap);
                }
            }
        }
    }
}
