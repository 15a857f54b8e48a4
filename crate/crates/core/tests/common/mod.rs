//! Independent oracles used by the integration tests. Nothing here calls
//! into the library for the quantity being checked.

#![allow(dead_code)]

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_squarefree(n: u64) -> bool {
    (2..)
        .take_while(|p| p * p <= n)
        .all(|p| !n.is_multiple_of(p * p))
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_divisors(n).iter().fold(n, |acc, p| acc / p * (p - 1))
}

/// `|P¹(ℤ/N)|`: the primitive pairs `(c, d) mod N`, i.e. those with
/// `gcd(c, d, N) = 1`, counted exhaustively and divided by the free action
/// of `(ℤ/N)^×`.
pub fn p1_size(n: u64) -> u64 {
    let primes = prime_divisors(n);
    let mask: Vec<u8> = (0..n)
        .map(|x| {
            primes
                .iter()
                .enumerate()
                .filter(|(_, p)| x % **p == 0)
                .fold(0u8, |m, (i, _)| m | (1 << i))
        })
        .collect();
    let mut primitive = 0u64;
    for &mc in &mask {
        primitive += mask.iter().filter(|&&md| mc & md == 0).count() as u64;
    }
    assert_eq!(primitive % euler_phi(n), 0);
    primitive / euler_phi(n)
}

/// Orbits of `(ℤ/N)^×` on primitive pairs, by explicit marking.
pub fn p1_orbits(n: u64) -> u64 {
    let units: Vec<u64> = (1..=n)
        .filter(|&u| gcd(u % n, n) == 1)
        .map(|u| u % n)
        .collect();
    let mut seen = vec![false; (n * n) as usize];
    let mut orbits = 0;
    for c in 0..n {
        for d in 0..n {
            if gcd(gcd(c, d), n) != 1 || seen[(c * n + d) as usize] {
                continue;
            }
            orbits += 1;
            for &u in &units {
                seen[((u * c % n) * n + u * d % n) as usize] = true;
            }
        }
    }
    orbits
}

/// Solutions of `x² + 1 ≡ 0 (mod N)`.
pub fn nu2(n: u64) -> u64 {
    (0..n).filter(|x| (x * x + 1) % n == 0).count() as u64
}

/// Solutions of `x² + x + 1 ≡ 0 (mod N)`.
pub fn nu3(n: u64) -> u64 {
    (0..n).filter(|x| (x * x + x + 1) % n == 0).count() as u64
}

/// `Σ_{d | N} φ(gcd(d, N/d))`.
pub fn cusps(n: u64) -> u64 {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| euler_phi(gcd(d, n / d)))
        .sum()
}

// Bernoulli numbers B_2 … B_16
const B: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// `ζ(s)` for real `s > 1` by Euler–Maclaurin at cutoff 20.
pub fn zeta(s: f64) -> f64 {
    let n = 20.0f64;
    let mut sum: f64 = (1..20).map(|k| (k as f64).powf(-s)).sum();
    sum += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    // B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    for (k, b) in B.iter().enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        sum += b / fact * rising * n.powf(-s - two_k + 1.0);
        rising *= (s + two_k - 1.0) * (s + two_k);
        fact *= (two_k + 1.0) * (two_k + 2.0);
    }
    sum
}

/// `ζ'(2)` by Richardson extrapolation of central differences.
pub fn zeta_prime_2() -> f64 {
    let d = |h: f64| (zeta(2.0 + h) - zeta(2.0 - h)) / (2.0 * h);
    let (h1, h2, h3) = (0.02, 0.01, 0.005);
    let r1 = (4.0 * d(h2) - d(h1)) / 3.0;
    let r2 = (4.0 * d(h3) - d(h2)) / 3.0;
    (16.0 * r2 - r1) / 15.0
}

/// `ζ'(−1)` from the functional equation,
/// `ζ'(−1) = (1 − γ − log 2π)/12 + ζ'(2)/(2π²)`.
pub fn zeta_prime_minus_one() -> f64 {
    let euler_gamma = 0.577_215_664_901_532_9;
    let pi = std::f64::consts::PI;
    (1.0 - euler_gamma - (2.0 * pi).ln()) / 12.0 + zeta_prime_2() / (2.0 * pi * pi)
}

/// `κ = ½ζ(−1) + ζ'(−1)`.
pub fn kappa() -> f64 {
    -1.0 / 24.0 + zeta_prime_minus_one()
}

/// `κ` computed independently of both routes above and frozen.
pub const KAPPA_FROZEN: f64 = -0.207_087_810_367_117_6;

/// `τ(1), …, τ(m)` from Jacobi's identity
/// `∏(1 − qⁿ)³ = Σ_k (−1)^k (2k+1) q^{k(k+1)/2}` and `Δ = q (∏(1 − qⁿ)³)⁸`.
pub fn tau(m: usize) -> Vec<i128> {
    let mut jacobi = vec![0i128; m];
    let mut k = 0usize;
    while k * (k + 1) / 2 < m {
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        jacobi[k * (k + 1) / 2] = sign * (2 * k as i128 + 1);
        k += 1;
    }
    let mul = |a: &[i128], b: &[i128]| {
        let mut c = vec![0i128; m];
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in b[..m - i].iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        c
    };
    let j2 = mul(&jacobi, &jacobi);
    let j4 = mul(&j2, &j2);
    // entry k is τ(k + 1)
    mul(&j4, &j4)
}

/// `a_p` of `y² + y = x³ − x` by point counting, `p` an odd prime ≠ 37.
pub fn a_p_37a(p: i64) -> i64 {
    let mut count = 0;
    for x in 0..p {
        let rhs = (x * x % p * x - x).rem_euclid(p);
        for y in 0..p {
            if (y * y + y - rhs).rem_euclid(p) == 0 {
                count += 1;
            }
        }
    }
    p - count
}

pub fn data_37a() -> &'static str {
    include_str!("../data/37a.jsonl")
}
