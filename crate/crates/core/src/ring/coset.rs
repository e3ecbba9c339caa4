/// Cyclotomic coset of `v` modulo `2^k - 1`: the orbit of `v` under doubling,
/// in generation order starting from `v`.
pub fn cyclotomic_coset(v: u64, k: usize) -> Vec<u64> {
    let modulus = (1u64 << k) - 1;
    let v = v % modulus;
    let mut coset = vec![v];
    let mut cur = v * 2 % modulus;
    while cur != v {
        coset.push(cur);
        cur = cur * 2 % modulus;
    }
    coset
}

/// Smallest element of the coset containing `v`.
pub fn coset_leader(v: u64, k: usize) -> u64 {
    cyclotomic_coset(v, k).into_iter().min().unwrap_or(0)
}
