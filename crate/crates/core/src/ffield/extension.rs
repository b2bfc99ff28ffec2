use super::{FieldCtx, FieldElem};
use crate::error::{Error, Result};
use crate::poly::{self, Poly};
use crate::primes;

/// Smallest e >= 1 with q^e = 1 mod d; `None` if gcd(q, d) > 1.
pub fn multiplicative_order_mod(q: u64, d: u64) -> Option<u32> {
    if d == 1 {
        return Some(1);
    }
    let mut x = q % d;
    for e in 1..=d as u32 {
        if x == 1 {
            return Some(e);
        }
        x = x * (q % d) % d;
    }
    None
}

/// Element of F_{q^e}: coefficients over F_q, low degree first, length e.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtElem(Vec<FieldElem>);

impl ExtElem {
    pub fn coeffs(&self) -> &[FieldElem] {
        &self.0
    }
}

/// F_{q^e} = F_q[y]/(g) for an irreducible g of degree e. Used where an
/// element lives beyond F_{q^2}; exponents are u128, so q^e < 2^127.
pub struct ExtField<'a> {
    base: &'a FieldCtx,
    e: usize,
    g: Poly,
    order: u128,
}

impl<'a> ExtField<'a> {
    pub fn new(base: &'a FieldCtx, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::ZeroDegree);
        }
        let order = (base.order() as u128)
            .checked_pow(e)
            .filter(|&o| o < 1u128 << 127)
            .ok_or_else(|| Error::Precondition(format!("q^{e} exceeds 2^127")))?;
        let g = first_irreducible(base, e as usize)?;
        Ok(ExtField { base, e: e as usize, g, order })
    }

    pub fn base(&self) -> &'a FieldCtx {
        self.base
    }

    pub fn degree(&self) -> u32 {
        self.e as u32
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    fn wrap(&self, p: Poly) -> ExtElem {
        let mut v = p.coeffs().to_vec();
        v.resize(self.e, FieldElem::ZERO);
        ExtElem(v)
    }

    fn unwrap(&self, x: &ExtElem) -> Poly {
        Poly::new(x.0.clone())
    }

    pub fn embed(&self, a: FieldElem) -> ExtElem {
        self.wrap(Poly::constant(a))
    }

    pub fn one(&self) -> ExtElem {
        self.embed(self.base.one())
    }

    pub fn to_base(&self, x: &ExtElem) -> Option<FieldElem> {
        x.0[1..].iter().all(|c| c.is_zero()).then_some(x.0[0])
    }

    pub fn add(&self, x: &ExtElem, y: &ExtElem) -> ExtElem {
        self.wrap(self.unwrap(x).add(self.base, &self.unwrap(y)))
    }

    pub fn sub(&self, x: &ExtElem, y: &ExtElem) -> ExtElem {
        self.wrap(self.unwrap(x).sub(self.base, &self.unwrap(y)))
    }

    pub fn mul(&self, x: &ExtElem, y: &ExtElem) -> ExtElem {
        let p = self.unwrap(x).mul_mod(self.base, &self.unwrap(y), &self.g);
        self.wrap(p.expect("modulus is nonzero"))
    }

    pub fn pow(&self, x: &ExtElem, e: u128) -> ExtElem {
        let p = self.unwrap(x).pow_mod(self.base, e, &self.g);
        self.wrap(p.expect("modulus is nonzero"))
    }

    pub fn inv(&self, x: &ExtElem) -> Result<ExtElem> {
        if x.0.iter().all(|c| c.is_zero()) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(x, self.order - 2))
    }

    /// u + 1/u.
    pub fn bracket(&self, u: &ExtElem) -> Result<ExtElem> {
        Ok(self.add(u, &self.inv(u)?))
    }

    /// An element of exact multiplicative order d, found by scanning
    /// candidates in a fixed order. Requires d | q^e - 1.
    pub fn primitive_root_of_unity(&self, d: u64) -> Result<ExtElem> {
        let d128 = d as u128;
        if !(self.order - 1).is_multiple_of(d128) {
            return Err(Error::Precondition(format!("{d} does not divide q^e - 1")));
        }
        let one = self.one();
        let factors = primes::factor(d);
        let q = self.base.order();
        for idx in 1u64.. {
            let mut v = Vec::with_capacity(self.e);
            let mut x = idx;
            for _ in 0..self.e {
                v.push(self.base.from_code(x % q)?);
                x /= q;
            }
            if x > 0 {
                break;
            }
            let z = self.pow(&ExtElem(v), (self.order - 1) / d128);
            if factors.iter().all(|&(r, _)| self.pow(&z, (d / r) as u128) != one) {
                return Ok(z);
            }
        }
        Err(Error::Inconsistent(format!("no element of order {d}")))
    }
}

fn first_irreducible(base: &FieldCtx, e: usize) -> Result<Poly> {
    let q = base.order();
    if e == 1 {
        return Ok(Poly::x(base));
    }
    let total = (q as u128).checked_pow(e as u32).unwrap_or(u128::MAX);
    let mut idx: u128 = 0;
    while idx < total {
        let mut v = Vec::with_capacity(e + 1);
        let mut x = idx;
        for _ in 0..e {
            v.push(base.from_code((x % q as u128) as u64)?);
            x /= q as u128;
        }
        v.push(base.one());
        let g = Poly::new(v);
        if poly::is_irreducible(base, &g) {
            return Ok(g);
        }
        idx += 1;
    }
    Err(Error::Inconsistent(format!("no irreducible of degree {e}")))
}
