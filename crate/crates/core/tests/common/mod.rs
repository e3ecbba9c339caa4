//! Naive reference arithmetic shared by the integration tests. Nothing here
//! calls into the library's tables.
#![allow(dead_code)]

/// GF(2^n) as bit-packed polynomials modulo `g`.
#[derive(Clone, Copy, Debug)]
pub struct NaiveField {
    pub n: usize,
    pub g: u32,
}

impl NaiveField {
    pub fn mul(&self, mut a: u32, mut b: u32) -> u32 {
        let mut acc = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.n & 1 == 1 {
                a ^= self.g;
            }
        }
        acc
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert_ne!(a, 0);
        self.pow(a, (1u64 << self.n) - 2)
    }

    /// `sum_{i < n/d} a^(2^(d i))`, the trace onto GF(2^d).
    pub fn trace(&self, a: u32, d: usize) -> u32 {
        let mut acc = 0;
        let mut cur = a;
        for _ in 0..self.n / d {
            acc ^= cur;
            for _ in 0..d {
                cur = self.mul(cur, cur);
            }
        }
        acc
    }
}

/// Z4[x]/(f) with `f` monic of degree `n`, coefficients as `u8` in 0..4.
#[derive(Clone, Debug)]
pub struct NaiveRing {
    pub n: usize,
    /// `f` constant term first, length `n + 1`.
    pub f: Vec<u8>,
}

impl NaiveRing {
    pub fn add(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        a.iter().zip(b).map(|(x, y)| (x + y) & 3).collect()
    }

    pub fn mul(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let n = self.n;
        let mut prod = vec![0u32; 2 * n];
        for i in 0..n {
            for j in 0..n {
                prod[i + j] += a[i] as u32 * b[j] as u32;
            }
        }
        for k in (n..2 * n).rev() {
            let c = prod[k] % 4;
            prod[k] = 0;
            // x^k = x^(k-n) * (x^n) and x^n = -(f_0 + ... + f_(n-1) x^(n-1))
            for i in 0..n {
                prod[k - n + i] += 4 * 4 - c * self.f[i] as u32;
            }
        }
        prod[..n].iter().map(|&c| (c % 4) as u8).collect()
    }

    pub fn pow(&self, a: &[u8], mut k: u64) -> Vec<u8> {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    pub fn one(&self) -> Vec<u8> {
        let mut v = vec![0; self.n];
        v[0] = 1;
        v
    }

    pub fn x(&self) -> Vec<u8> {
        let mut v = vec![0; self.n];
        v[1] = 1;
        v
    }

    pub fn all(&self) -> Vec<Vec<u8>> {
        (0..1usize << (2 * self.n)).map(|k| (0..self.n).map(|i| ((k >> (2 * i)) & 3) as u8).collect()).collect()
    }
}

/// `g(x) g(-x)` over the integers has only even powers; reading it in `x^2`
/// and multiplying by `(-1)^n` gives the lift.
pub fn graeffe_lift(g: &[i64]) -> Vec<u8> {
    let n = g.len() - 1;
    let neg: Vec<i64> = g.iter().enumerate().map(|(i, &c)| if i % 2 == 1 { -c } else { c }).collect();
    let mut prod = vec![0i64; 2 * n + 1];
    for (i, &a) in g.iter().enumerate() {
        for (j, &b) in neg.iter().enumerate() {
            prod[i + j] += a * b;
        }
    }
    assert!(prod.iter().skip(1).step_by(2).all(|&c| c == 0));
    let sign = if n % 2 == 0 { 1 } else { -1 };
    (0..=n).map(|i| (sign * prod[2 * i]).rem_euclid(4) as u8).collect()
}

/// Bits of a binary polynomial, constant term first.
pub fn bits(g: u32, n: usize) -> Vec<i64> {
    (0..=n).map(|i| i64::from(g >> i & 1)).collect()
}

fn reproduces(s: &[u8], taps: &[u8]) -> bool {
    let l = taps.len();
    (l..s.len()).all(|t| taps.iter().enumerate().map(|(i, &c)| c as u32 * s[t - 1 - i] as u32).sum::<u32>() % 4 == s[t] as u32)
}

/// Shortest recurrence of degree at most `max_degree` by trying every tap vector
/// over Z4, or `None` if there is none that short.
pub fn exhaustive_complexity(s: &[u8], max_degree: usize) -> Option<usize> {
    for l in 0..=max_degree {
        if l >= s.len() {
            return Some(l);
        }
        let mut taps = vec![0u8; l];
        loop {
            if reproduces(s, &taps) {
                return Some(l);
            }
            // odometer over Z4^l
            let mut k = 0;
            while k < l && taps[k] == 3 {
                taps[k] = 0;
                k += 1;
            }
            if k == l {
                break;
            }
            taps[k] += 1;
        }
    }
    None
}

/// Random prefix of length `1..=max_len`: uniform half the time, otherwise
/// generated by a random recurrence of degree at most 4.
pub fn random_prefix<R: rand::Rng>(rng: &mut R, max_len: usize) -> Vec<u8> {
    let len = rng.gen_range(1..=max_len);
    if rng.gen_bool(0.5) {
        return (0..len).map(|_| rng.gen_range(0..4)).collect();
    }
    let l = rng.gen_range(0..=4usize);
    let taps: Vec<u8> = (0..l).map(|_| rng.gen_range(0..4)).collect();
    let mut s: Vec<u8> = (0..l.min(len)).map(|_| rng.gen_range(0..4)).collect();
    while s.len() < len {
        let t = s.len();
        s.push((taps.iter().enumerate().map(|(i, &c)| c as u32 * s[t - 1 - i] as u32).sum::<u32>() % 4) as u8);
    }
    s
}
