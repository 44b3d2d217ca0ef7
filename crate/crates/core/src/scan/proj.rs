//! Canonical representatives of `P^(n-1)(F_p)`: the first nonzero coordinate
//! is 1, and points are ordered lexicographically as tuples.

/// Number of points of `P^(n-1)(F_p)`.
pub fn projective_count(p: u32, n: usize) -> u64 {
    (0..n).map(|k| (p as u64).pow(k as u32)).sum()
}

/// Strata in lexicographic order: the leading 1 in position `n-1`, then `n-2`, ..., then 0.
/// Each stratum is `(lead, size)`.
pub fn strata(p: u32, n: usize) -> Vec<(usize, u64)> {
    (0..n)
        .rev()
        .map(|lead| (lead, (p as u64).pow((n - 1 - lead) as u32)))
        .collect()
}

/// The `index`-th point of the stratum with leading 1 at `lead`.
pub fn stratum_point(p: u32, n: usize, lead: usize, index: u64, out: &mut [u32]) {
    debug_assert_eq!(out.len(), n);
    out[..lead].fill(0);
    out[lead] = 1;
    let mut rest = index;
    for slot in out[lead + 1..].iter_mut().rev() {
        *slot = (rest % p as u64) as u32;
        rest /= p as u64;
    }
}

/// All canonical points, in lexicographic order.
pub fn projective_points(p: u32, n: usize) -> impl Iterator<Item = Vec<u32>> {
    strata(p, n).into_iter().flat_map(move |(lead, size)| {
        (0..size).map(move |i| {
            let mut v = vec![0; n];
            stratum_point(p, n, lead, i, &mut v);
            v
        })
    })
}

/// Scales a nonzero residue vector so its first nonzero entry is 1.
pub fn canonical(v: &[u32], p: u32) -> Option<Vec<u32>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = crate::linalg::field::inv_mod(lead, p).expect("nonzero residue");
    Some(
        v.iter()
            .map(|&x| crate::linalg::field::mul_mod(x, inv, p))
            .collect(),
    )
}
