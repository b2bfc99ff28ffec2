//! Arithmetic in F_q for q = p^n with p odd.
//!
//! F_q is modelled as F_p[x]/(f) where f is the lexicographically smallest
//! monic irreducible of degree n (coefficients compared from the constant
//! term upward). An element is stored as a single integer code
//! `sum c_i * p^(n-1-i)`, so the derived integer order on codes is exactly
//! the lexicographic order on coefficient vectors read low degree first.

mod ext2;
mod extension;

pub use ext2::{Ext2, Ext2Elem};
pub use extension::{multiplicative_order_mod, ExtElem, ExtField};

use crate::error::{Error, Result};
use crate::poly::{self, Poly};
use crate::primes;

/// Supported fields satisfy q < 2^31, so products of two residues fit in u64.
pub const ORDER_BOUND: u64 = 1 << 31;
const MAX_DEGREE: usize = 20;
const TABLE_LIMIT: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);

    /// Integer code of the element; also its rank in the canonical order.
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u64,
    n: u32,
    q: u64,
    modulus: Vec<u64>,
    top_place: u64,
    eps: i8,
    delta: FieldElem,
    two_adicity: u32,
    odd_part: u64,
    logs: Option<LogTables>,
    chi: Option<Vec<i8>>,
}

impl FieldCtx {
    /// Builds F_{p^n}. Rejects even p, composite p, n = 0 and q >= 2^31.
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if p.is_multiple_of(2) {
            return Err(Error::EvenCharacteristic(p));
        }
        if !primes::is_prime(p) {
            return Err(Error::CompositeCharacteristic(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = match p.checked_pow(n) {
            Some(q) if q < ORDER_BOUND => q,
            _ => return Err(Error::FieldTooLarge { p, n }),
        };
        let modulus = if n == 1 { vec![0, 1] } else { find_modulus(p, n)? };
        let mut odd_part = q - 1;
        let mut two_adicity = 0;
        while odd_part % 2 == 0 {
            odd_part /= 2;
            two_adicity += 1;
        }
        let mut ctx = FieldCtx {
            p,
            n,
            q,
            modulus,
            top_place: p.pow(n - 1),
            eps: if q % 4 == 1 { 1 } else { -1 },
            delta: FieldElem::ZERO,
            two_adicity,
            odd_part,
            logs: None,
            chi: None,
        };
        if n > 1 && q <= TABLE_LIMIT {
            ctx.logs = Some(ctx.build_logs());
        }
        if q <= TABLE_LIMIT {
            ctx.chi = Some(ctx.build_chi());
        }
        ctx.delta = ctx
            .elements()
            .find(|&a| ctx.legendre(a) == -1)
            .expect("odd field has a nonsquare");
        Ok(ctx)
    }

    /// Builds F_q from q itself.
    pub fn with_order(q: u64) -> Result<Self> {
        match primes::prime_power(q) {
            Some((p, n)) => Self::new(p, n),
            None if q.is_multiple_of(2) => Err(Error::EvenCharacteristic(q)),
            None => Err(Error::CompositeCharacteristic(q)),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Defining polynomial over F_p, low degree first, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// (-1)^((q-1)/2).
    pub fn eps(&self) -> i8 {
        self.eps
    }

    /// (q - eps) / 4.
    pub fn m(&self) -> u64 {
        (self.q as i64 - self.eps as i64) as u64 / 4
    }

    /// Smallest nonsquare of F_q; the generator of F_{q^2} squares to it.
    pub fn nonsquare(&self) -> FieldElem {
        self.delta
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(self.top_place as u32)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_i64(&self, x: i64) -> FieldElem {
        let r = x.rem_euclid(self.p as i64) as u64;
        FieldElem((r * self.top_place) as u32)
    }

    /// Element with the given coefficients, low degree first.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() > self.n as usize {
            return Err(Error::InvalidElement(format!("{coeffs:?}")));
        }
        let mut code = 0u64;
        for i in 0..self.n as usize {
            let c = coeffs.get(i).copied().unwrap_or(0);
            if c >= self.p {
                return Err(Error::InvalidElement(format!("{coeffs:?}")));
            }
            code = code * self.p + c;
        }
        Ok(FieldElem(code as u32))
    }

    pub fn coeffs(&self, a: FieldElem) -> Vec<u64> {
        self.digits(a)[..self.n as usize].to_vec()
    }

    pub fn from_code(&self, code: u64) -> Result<FieldElem> {
        if code < self.q {
            Ok(FieldElem(code as u32))
        } else {
            Err(Error::InvalidElement(code.to_string()))
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (0..self.q as u32).map(FieldElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (1..self.q as u32).map(FieldElem)
    }

    fn digits(&self, a: FieldElem) -> [u64; MAX_DEGREE] {
        let mut out = [0u64; MAX_DEGREE];
        let mut x = a.0 as u64;
        for i in (0..self.n as usize).rev() {
            out[i] = x % self.p;
            x /= self.p;
        }
        out
    }

    fn encode(&self, c: &[u64]) -> FieldElem {
        let mut code = 0u64;
        for &d in &c[..self.n as usize] {
            code = code * self.p + d;
        }
        FieldElem(code as u32)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.n == 1 {
            let s = a.0 as u64 + b.0 as u64;
            return FieldElem(if s >= self.p { s - self.p } else { s } as u32);
        }
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.n {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * place;
            place *= self.p;
            x /= self.p;
            y /= self.p;
        }
        FieldElem(out as u32)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.n == 1 {
            return FieldElem(if a.0 == 0 { 0 } else { (self.p - a.0 as u64) as u32 });
        }
        let mut x = a.0 as u64;
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.n {
            let d = (self.p - x % self.p) % self.p;
            out += d * place;
            place *= self.p;
            x /= self.p;
        }
        FieldElem(out as u32)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.n == 1 {
            return FieldElem(((a.0 as u64 * b.0 as u64) % self.p) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        match &self.logs {
            Some(t) => {
                let s = t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64;
                FieldElem(t.exp[(s % (self.q - 1)) as usize])
            }
            None => self.mul_poly(a, b),
        }
    }

    fn mul_poly(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let n = self.n as usize;
        let p = self.p;
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        for d in (n..2 * n - 1).rev() {
            let t = prod[d];
            if t == 0 {
                continue;
            }
            for i in 0..n {
                let s = (t * self.modulus[i]) % p;
                prod[d - n + i] = (prod[d - n + i] + p - s) % p;
            }
            prod[d] = 0;
        }
        self.encode(&prod)
    }

    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        if let (Some(t), false) = (&self.logs, a.is_zero()) {
            let l = t.log[a.0 as usize] as u128 * e as u128 % (self.q - 1) as u128;
            return FieldElem(t.exp[l as usize]);
        }
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Power with a signed exponent; negative exponents need a nonzero base.
    pub fn pow_i(&self, a: FieldElem, e: i64) -> Result<FieldElem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.n == 1 {
            let (mut r0, mut r1) = (self.p as i64, a.0 as i64);
            let (mut t0, mut t1) = (0i64, 1i64);
            while r1 != 0 {
                let k = r0 / r1;
                (r0, r1) = (r1, r0 - k * r1);
                (t0, t1) = (t1, t0 - k * t1);
            }
            return Ok(FieldElem(t0.rem_euclid(self.p as i64) as u32));
        }
        if let Some(t) = &self.logs {
            let l = t.log[a.0 as usize] as u64;
            return Ok(FieldElem(t.exp[((self.q - 1 - l) % (self.q - 1)) as usize]));
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn arith(&self, op: ArithOp, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
        })
    }

    /// Quadratic character (a|q) in {-1, 0, 1}.
    pub fn legendre(&self, a: FieldElem) -> i8 {
        if let Some(chi) = &self.chi {
            return chi[a.0 as usize];
        }
        self.legendre_by_power(a)
    }

    fn legendre_by_power(&self, a: FieldElem) -> i8 {
        if a.is_zero() {
            return 0;
        }
        if self.pow(a, (self.q - 1) / 2) == self.one() {
            1
        } else {
            -1
        }
    }

    pub fn is_square(&self, a: FieldElem) -> bool {
        self.legendre(a) >= 0
    }

    /// The smaller (in canonical order) of the two square roots of a, or
    /// `None` when a is a nonsquare.
    pub fn sqrt_canonical(&self, a: FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return Some(a);
        }
        if self.legendre(a) != 1 {
            return None;
        }
        let one = self.one();
        let t = self.odd_part;
        let mut m = self.two_adicity;
        let mut c = self.pow(self.delta, t);
        let mut tt = self.pow(a, t);
        let mut r = self.pow(a, t.div_ceil(2));
        while tt != one {
            let mut i = 0;
            let mut z = tt;
            while z != one {
                z = self.square(z);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.square(b);
            }
            m = i;
            c = self.square(b);
            tt = self.mul(tt, c);
            r = self.mul(r, b);
        }
        Some(r.min(self.neg(r)))
    }

    /// Decimal residue for prime fields, comma-separated coefficients
    /// (low degree first) otherwise.
    pub fn format(&self, a: FieldElem) -> String {
        if self.n == 1 {
            return a.0.to_string();
        }
        let d = self.digits(a);
        d[..self.n as usize]
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Inverse of [`FieldCtx::format`]. A bare (possibly negative) integer
    /// is also accepted and read as an element of the prime subfield.
    pub fn parse(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty element".into() });
        }
        if !s.contains(',') {
            return s.parse::<i64>().map(|x| self.from_i64(x)).map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad integer '{s}'"),
            });
        }
        let mut coeffs = Vec::new();
        let mut pos = 0;
        for part in s.split(',') {
            let c: u64 = part.trim().parse().map_err(|_| Error::Parse {
                pos,
                msg: format!("bad coefficient '{part}'"),
            })?;
            if c >= self.p {
                return Err(Error::Parse { pos, msg: format!("coefficient {c} >= p") });
            }
            coeffs.push(c);
            pos += part.len() + 1;
        }
        if coeffs.len() != self.n as usize {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("expected {} coefficients, got {}", self.n, coeffs.len()),
            });
        }
        self.from_coeffs(&coeffs)
    }

    pub fn ext2(&self) -> Ext2<'_> {
        Ext2::new(self)
    }

    fn build_logs(&self) -> LogTables {
        let q = self.q;
        let factors = primes::factor(q - 1);
        let one = self.one();
        let slow_pow = |a: FieldElem, mut e: u64| {
            let (mut base, mut acc) = (a, one);
            while e > 0 {
                if e & 1 == 1 {
                    acc = self.mul_poly(acc, base);
                }
                base = self.mul_poly(base, base);
                e >>= 1;
            }
            acc
        };
        let g = (1..q as u32)
            .map(FieldElem)
            .find(|&g| factors.iter().all(|&(r, _)| slow_pow(g, (q - 1) / r) != one))
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = one;
        for i in 0..q - 1 {
            exp.push(x.0);
            log[x.0 as usize] = i as u32;
            x = self.mul_poly(x, g);
        }
        LogTables { exp, log }
    }

    fn build_chi(&self) -> Vec<i8> {
        let mut chi = vec![-1i8; self.q as usize];
        chi[0] = 0;
        if let Some(t) = &self.logs {
            for (i, &x) in t.exp.iter().enumerate() {
                chi[x as usize] = if i % 2 == 0 { 1 } else { -1 };
            }
        } else {
            for x in 1..=(self.q / 2) as u32 {
                let s = self.mul(FieldElem(x), FieldElem(x));
                chi[s.0 as usize] = 1;
            }
        }
        chi
    }
}

/// Lexicographically smallest monic irreducible of degree n over F_p,
/// coefficients compared from the constant term upward.
fn find_modulus(p: u64, n: u32) -> Result<Vec<u64>> {
    let fp = FieldCtx::new(p, 1)?;
    let count = p.pow(n);
    // a zero constant term means x divides the candidate
    for idx in p.pow(n - 1)..count {
        let mut coeffs = vec![0u64; n as usize + 1];
        let mut x = idx;
        for i in (0..n as usize).rev() {
            coeffs[i] = x % p;
            x /= p;
        }
        coeffs[n as usize] = 1;
        let f = Poly::new(coeffs.iter().map(|&c| fp.from_i64(c as i64)).collect());
        if poly::is_irreducible(&fp, &f) {
            return Ok(coeffs);
        }
    }
    Err(Error::Inconsistent(format!("no irreducible of degree {n} over F_{p}")))
}
