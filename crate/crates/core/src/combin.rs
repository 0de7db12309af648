//! Small combinatorial helpers shared across modules.

/// Binomial coefficient, saturating at `u128::MAX`.
pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `base^exp`, saturating.
pub(crate) fn pow_sat(base: u128, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Advances a mixed-radix odometer with the given per-position radices, last
/// position fastest. Returns `false` after wrapping past the final tuple.
pub(crate) fn odometer_next(digits: &mut [usize], radix: &[usize]) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < radix[i] {
            return true;
        }
        digits[i] = 0;
    }
    false
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(12, 3), 220);
    }

    #[test]
    fn odometer_visits_everything() {
        let radix = [2, 3];
        let mut d = vec![0, 0];
        let mut seen = vec![d.clone()];
        while odometer_next(&mut d, &radix) {
            seen.push(d.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![0, 1]);
        assert_eq!(d, vec![0, 0]);
    }

    #[test]
    fn subsets_count() {
        assert_eq!(subsets(5, 3).len(), 10);
        assert_eq!(subsets(4, 0), vec![Vec::<usize>::new()]);
    }
}
