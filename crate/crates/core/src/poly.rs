//! Dense univariate polynomials over F_q, coefficients low degree first.

use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, FieldElem};
use crate::primes;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl Poly {
    /// Trailing zero coefficients are dropped; the zero polynomial is empty.
    pub fn new(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElem) -> Self {
        Poly::new(vec![c])
    }

    pub fn x(ctx: &FieldCtx) -> Self {
        Poly::new(vec![ctx.zero(), ctx.one()])
    }

    /// Polynomial with small integer coefficients mapped into the prime field.
    pub fn from_ints(ctx: &FieldCtx, coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| ctx.from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<FieldElem> {
        self.coeffs.last().copied()
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|i| ctx.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|i| ctx.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, ctx: &FieldCtx, c: FieldElem) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// self * (x - b)
    pub fn mul_linear(&self, ctx: &FieldCtx, b: FieldElem) -> Poly {
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[i + 1] = ctx.add(out[i + 1], a);
            out[i] = ctx.sub(out[i], ctx.mul(a, b));
        }
        Poly::new(out)
    }

    pub fn div_rem(&self, ctx: &FieldCtx, d: &Poly) -> Result<(Poly, Poly)> {
        let dl = d.leading().ok_or(Error::DivisionByZero)?;
        let dinv = ctx.inv(dl)?;
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![FieldElem::ZERO; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let t = ctx.mul(r[k], dinv);
            if t.is_zero() {
                continue;
            }
            quot[k - dd] = t;
            for (i, &c) in d.coeffs.iter().enumerate() {
                r[k - dd + i] = ctx.sub(r[k - dd + i], ctx.mul(t, c));
            }
        }
        r.truncate(dd);
        Ok((Poly::new(quot), Poly::new(r)))
    }

    pub fn rem(&self, ctx: &FieldCtx, d: &Poly) -> Result<Poly> {
        Ok(self.div_rem(ctx, d)?.1)
    }

    pub fn monic(&self, ctx: &FieldCtx) -> Poly {
        match self.leading() {
            Some(l) => self.scale(ctx, ctx.inv(l).expect("nonzero leading coefficient")),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(ctx, &b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic(ctx)
    }

    pub fn mul_mod(&self, ctx: &FieldCtx, other: &Poly, m: &Poly) -> Result<Poly> {
        self.mul(ctx, other).rem(ctx, m)
    }

    pub fn pow_mod(&self, ctx: &FieldCtx, mut e: u128, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(ctx, m)?;
        let mut acc = Poly::constant(ctx.one()).rem(ctx, m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(ctx, &base, m)?;
            }
            base = base.mul_mod(ctx, &base, m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Horner evaluation.
    pub fn eval(&self, ctx: &FieldCtx, x: FieldElem) -> FieldElem {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
    }

    /// Space-separated coefficient texts, low degree first; "0" for zero.
    pub fn to_text(&self, ctx: &FieldCtx) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs.iter().map(|&c| ctx.format(c)).collect::<Vec<_>>().join(" ")
    }

    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Poly> {
        let mut coeffs = Vec::new();
        let mut offset = 0;
        for tok in s.split(' ') {
            if !tok.is_empty() {
                let c = ctx.parse(tok).map_err(|e| match e {
                    Error::Parse { pos, msg } => Error::Parse { pos: offset + pos, msg },
                    other => other,
                })?;
                coeffs.push(c);
            }
            offset += tok.len() + 1;
        }
        Ok(Poly::new(coeffs))
    }
}

/// Rabin's test: f of degree d is irreducible over F_Q iff x^(Q^d) = x mod f
/// and gcd(x^(Q^(d/r)) - x, f) = 1 for every prime r dividing d.
pub fn is_irreducible(ctx: &FieldCtx, f: &Poly) -> bool {
    let d = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(d) => d,
    };
    let x = Poly::x(ctx);
    let q = ctx.order() as u128;
    let mut frob = vec![x.rem(ctx, f).expect("f nonzero")];
    for i in 0..d {
        let next = frob[i].pow_mod(ctx, q, f).expect("f nonzero");
        frob.push(next);
    }
    if frob[d] != frob[0] {
        return false;
    }
    primes::factor(d as u64).iter().all(|&(r, _)| {
        let h = frob[d / r as usize].sub(ctx, &x);
        h.gcd(ctx, f).degree() == Some(0)
    })
}
