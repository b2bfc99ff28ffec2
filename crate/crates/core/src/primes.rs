//! Small integer helpers: primality, factoring, prime-power enumeration.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as (prime, exponent) pairs in increasing order.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Splits q = p^n; `None` unless q is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = factor(q);
    match f.as_slice() {
        [(p, n)] => Some((*p, *n)),
        _ => None,
    }
}

/// All odd prime powers q = p^n with q_min <= q <= q_max and n <= max_degree,
/// sorted by q. Returned as (p, n, q).
pub fn odd_prime_powers(q_min: u64, q_max: u64, max_degree: u32) -> Vec<(u64, u32, u64)> {
    let mut out = Vec::new();
    for q in q_min.max(3)..=q_max {
        if q % 2 == 0 {
            continue;
        }
        if let Some((p, n)) = prime_power(q) {
            if n <= max_degree {
                out.push((p, n, q));
            }
        }
    }
    out
}
