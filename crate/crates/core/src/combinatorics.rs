use alloc::vec::Vec;

pub(crate) fn binomial(n: u32, k: u32) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// `n (n-1) … (n-k+1)`.
pub(crate) fn falling(n: u32, k: u32) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128)
}

/// All permutations of `0..n` with their parity (`true` = even).
pub(crate) fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        out.push((idx.clone(), parity_even(&idx)));
        if !next_permutation(&mut idx) {
            break;
        }
    }
    out
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Parity of a sequence of distinct integers, `true` when even.
pub(crate) fn parity_even(seq: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    inversions.is_multiple_of(2)
}

/// Levi-Civita symbol on five indices with `ε_{01234} = +1`.
pub(crate) fn levi_civita(idx: &[usize]) -> i32 {
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if idx[i] == idx[j] {
                return 0;
            }
        }
    }
    if parity_even(idx) {
        1
    } else {
        -1
    }
}

pub(crate) fn epsilon3(j: usize, k: usize, l: usize) -> i32 {
    levi_civita(&[j, k, l])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(falling(4, 2), 12);
        assert_eq!(falling(2, 3), 0);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3).iter().filter(|p| p.1).count(), 3);
        assert_eq!(levi_civita(&[0, 1, 2, 3, 4]), 1);
        assert_eq!(levi_civita(&[1, 0, 2, 3, 4]), -1);
        assert_eq!(levi_civita(&[1, 2, 3, 4, 0]), 1);
        assert_eq!(levi_civita(&[1, 1, 2, 3, 4]), 0);
        assert_eq!(epsilon3(0, 1, 2), 1);
        assert_eq!(epsilon3(2, 1, 0), -1);
    }
}
