//! Small helpers for element sets.
//!
//! Throughout the crate a set is a sorted, duplicate-free `Vec<usize>` of
//! element ids. Ordering two such vectors with `Ord` is the lexicographic
//! order used for every deterministic tie-break. Exhaustive routines switch
//! to `u32` bitmasks internally.

/// Sorts and deduplicates in place.
pub fn normalize(set: &mut Vec<usize>) {
    set.sort_unstable();
    set.dedup();
}

/// Elements of `0..n` not in the sorted set `set`.
pub fn complement(set: &[usize], n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n.saturating_sub(set.len()));
    let mut it = set.iter().peekable();
    for x in 0..n {
        if it.peek() == Some(&&x) {
            it.next();
        } else {
            out.push(x);
        }
    }
    out
}

/// Size of the intersection of two sorted sets.
pub fn intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Sorted union of two sorted sets.
pub fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    normalize(&mut out);
    out
}

pub fn is_subset(a: &[usize], b: &[usize]) -> bool {
    intersection_len(a, b) == a.len()
}

pub fn mask_to_set(mask: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

pub fn set_to_mask(set: &[usize]) -> u32 {
    set.iter().fold(0, |m, &x| m | (1 << x))
}

/// `⌈t·n⌉`, snapping products that sit within rounding noise of an integer.
///
/// `0.07 * 100.0` evaluates to `7.000000000000001`; a naive ceiling would
/// give 8.
pub fn ceil_fraction(t: f64, n: usize) -> usize {
    let x = t * n as f64;
    let r = x.round();
    if (x - r).abs() <= 1e-9 * (n.max(1) as f64) {
        r.max(0.0) as usize
    } else {
        x.ceil().max(0.0) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_and_masks() {
        assert_eq!(complement(&[1, 3], 5), vec![0, 2, 4]);
        assert_eq!(complement(&[], 2), vec![0, 1]);
        assert_eq!(mask_to_set(0b1011), vec![0, 1, 3]);
        assert_eq!(set_to_mask(&[0, 1, 3]), 0b1011);
        assert_eq!(intersection_len(&[0, 2, 4, 6], &[1, 2, 3, 4]), 2);
        assert!(is_subset(&[2, 4], &[0, 2, 4]));
        assert!(!is_subset(&[2, 5], &[0, 2, 4]));
    }

    #[test]
    fn ceil_fraction_snaps_noise() {
        assert_eq!(ceil_fraction(0.07, 100), 7);
        assert_eq!(ceil_fraction(0.51, 100), 51);
        assert_eq!(ceil_fraction(0.5, 3), 2);
        assert_eq!(ceil_fraction(0.0, 10), 0);
        assert_eq!(ceil_fraction(1.0, 10), 10);
        assert_eq!(ceil_fraction(0.75, 4), 3);
        // every i/100 on the grid against exact integer arithmetic
        for g in 1..=30usize {
            for i in 0..=100usize {
                let t = i as f64 / 100.0;
                let exact = (i * g).div_ceil(100);
                assert_eq!(ceil_fraction(t, g), exact, "t={t} g={g}");
            }
        }
    }
}
