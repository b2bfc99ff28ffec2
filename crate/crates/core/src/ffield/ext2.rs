use super::{FieldCtx, FieldElem};
use crate::error::{Error, Result};

/// lo + hi*theta in F_{q^2}, where theta^2 is the smallest nonsquare of F_q.
/// The derived order (lo first, then hi) is the canonical order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ext2Elem {
    pub lo: FieldElem,
    pub hi: FieldElem,
}

/// Arithmetic view of F_{q^2} over a base field context.
#[derive(Clone, Copy)]
pub struct Ext2<'a> {
    f: &'a FieldCtx,
}

impl<'a> Ext2<'a> {
    pub fn new(f: &'a FieldCtx) -> Self {
        Ext2 { f }
    }

    pub fn base(&self) -> &'a FieldCtx {
        self.f
    }

    pub fn embed(&self, a: FieldElem) -> Ext2Elem {
        Ext2Elem { lo: a, hi: FieldElem::ZERO }
    }

    pub fn zero(&self) -> Ext2Elem {
        Ext2Elem::default()
    }

    pub fn one(&self) -> Ext2Elem {
        self.embed(self.f.one())
    }

    pub fn theta(&self) -> Ext2Elem {
        Ext2Elem { lo: FieldElem::ZERO, hi: self.f.one() }
    }

    /// Some(a) when x lies in F_q.
    pub fn to_base(&self, x: Ext2Elem) -> Option<FieldElem> {
        x.hi.is_zero().then_some(x.lo)
    }

    pub fn add(&self, x: Ext2Elem, y: Ext2Elem) -> Ext2Elem {
        Ext2Elem { lo: self.f.add(x.lo, y.lo), hi: self.f.add(x.hi, y.hi) }
    }

    pub fn sub(&self, x: Ext2Elem, y: Ext2Elem) -> Ext2Elem {
        Ext2Elem { lo: self.f.sub(x.lo, y.lo), hi: self.f.sub(x.hi, y.hi) }
    }

    pub fn neg(&self, x: Ext2Elem) -> Ext2Elem {
        Ext2Elem { lo: self.f.neg(x.lo), hi: self.f.neg(x.hi) }
    }

    pub fn conj(&self, x: Ext2Elem) -> Ext2Elem {
        Ext2Elem { lo: x.lo, hi: self.f.neg(x.hi) }
    }

    pub fn mul(&self, x: Ext2Elem, y: Ext2Elem) -> Ext2Elem {
        let f = self.f;
        let lo = f.add(f.mul(x.lo, y.lo), f.mul(f.mul(x.hi, y.hi), f.nonsquare()));
        let hi = f.add(f.mul(x.lo, y.hi), f.mul(x.hi, y.lo));
        Ext2Elem { lo, hi }
    }

    pub fn scale(&self, x: Ext2Elem, c: FieldElem) -> Ext2Elem {
        Ext2Elem { lo: self.f.mul(x.lo, c), hi: self.f.mul(x.hi, c) }
    }

    /// x * conj(x), an element of F_q.
    pub fn norm(&self, x: Ext2Elem) -> FieldElem {
        let f = self.f;
        f.sub(f.square(x.lo), f.mul(f.square(x.hi), f.nonsquare()))
    }

    pub fn inv(&self, x: Ext2Elem) -> Result<Ext2Elem> {
        let n = self.norm(x);
        let ninv = self.f.inv(n)?;
        Ok(self.scale(self.conj(x), ninv))
    }

    pub fn div(&self, x: Ext2Elem, y: Ext2Elem) -> Result<Ext2Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: Ext2Elem, mut e: u64) -> Ext2Elem {
        let mut base = x;
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

    pub fn pow_i(&self, x: Ext2Elem, e: i64) -> Result<Ext2Elem> {
        if e >= 0 {
            Ok(self.pow(x, e as u64))
        } else {
            Ok(self.pow(self.inv(x)?, e.unsigned_abs()))
        }
    }

    /// Angle bracket u + 1/u.
    pub fn bracket(&self, u: Ext2Elem) -> Result<Ext2Elem> {
        Ok(self.add(u, self.inv(u)?))
    }

    /// Canonical square root in F_{q^2} of a base-field element: the
    /// canonical root in F_q for squares, otherwise c*theta with c the
    /// canonical root of a/delta.
    pub fn sqrt_of_base(&self, a: FieldElem) -> Ext2Elem {
        let f = self.f;
        match f.sqrt_canonical(a) {
            Some(s) => self.embed(s),
            None => {
                let t = f.div(a, f.nonsquare()).expect("delta is nonzero");
                let c = f.sqrt_canonical(t).expect("a/delta is a square");
                Ext2Elem { lo: FieldElem::ZERO, hi: c }
            }
        }
    }

    /// The canonically smaller root u of u^2 - r u + 1 = 0, so that
    /// u + 1/u = r. Lies in F_q exactly when r^2 - 4 is a square.
    pub fn solve_unit(&self, r: FieldElem) -> Ext2Elem {
        let f = self.f;
        let disc = f.sub(f.square(r), f.from_i64(4));
        let s = self.sqrt_of_base(disc);
        let half = f.inv(f.from_i64(2)).expect("odd characteristic");
        let u1 = self.scale(self.add(self.embed(r), s), half);
        let u2 = self.scale(self.sub(self.embed(r), s), half);
        u1.min(u2)
    }

    /// Whether u^e equals the target sign (+1 or -1).
    pub fn unit_order_test(&self, u: Ext2Elem, e: i64, target: i8) -> Result<bool> {
        let t = match target {
            1 => self.one(),
            -1 => self.neg(self.one()),
            _ => return Err(Error::Precondition(format!("target {target} is not a sign"))),
        };
        Ok(self.pow_i(u, e)? == t)
    }

    pub fn format(&self, x: Ext2Elem) -> String {
        if x.hi.is_zero() {
            self.f.format(x.lo)
        } else {
            format!("({})+({})t", self.f.format(x.lo), self.f.format(x.hi))
        }
    }
}
