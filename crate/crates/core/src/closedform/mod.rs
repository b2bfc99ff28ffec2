//! Closed-form products over the character sets, without enumeration.
//!
//! Every `T_{j,l}` product is rescaled to the normalized line j + l = 4,
//! parametrised by tau = j/l in F_q or infinity, and then read off a
//! piecewise formula in tau. `S` products go through `T` via
//! `T_{j,l}^{e1,e2} = S_{-j,l}^{eps*e1,e2}`.

mod frame;
mod table;

pub use frame::{frame_from_pair, normalized_frame, Frame, ProjTau};
pub use table::{
    both_squares_row, class_row, closed_t_row, det_sqrt, det_sqrt_with_unit, plus_plus_class, prod_t_closed, table_rows,
    unit_product, DetRoot, RootCase, Rule, TRow, TableRow,
};

use crate::charsets::{SetFamily, Sign, SignPair};
use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, FieldElem};

/// Product of `S_k^sign = { a != 0 : (a+k|q) = sign }`.
pub fn prod_s_single(ctx: &FieldCtx, k: FieldElem, sign: Sign) -> FieldElem {
    let eps = ctx.from_i64(ctx.eps() as i64);
    let neg_eps = ctx.neg(eps);
    let two = ctx.from_i64(2);
    let over_2k = |c: FieldElem| ctx.div(c, ctx.mul(two, k)).expect("k is nonzero");
    match (sign, ctx.legendre(k)) {
        (Sign::Plus, 0) => neg_eps,
        (Sign::Plus, 1) => over_2k(eps),
        (Sign::Plus, _) => ctx.mul(neg_eps, two),
        (Sign::Minus, 0) => eps,
        (Sign::Minus, 1) => ctx.mul(eps, two),
        (Sign::Minus, _) => over_2k(neg_eps),
    }
}

/// Product over `T_{j',l'}^{e1,e2}` for any j' + l' != 0, by scaling to the
/// normalized line and correcting with a power of lambda = (j'+l')/4.
pub fn rescale_t(ctx: &FieldCtx, jp: FieldElem, lp: FieldElem, signs: SignPair) -> Result<FieldElem> {
    let sum = ctx.add(jp, lp);
    if sum.is_zero() {
        return Err(Error::OppositeShifts);
    }
    let lambda = ctx.div(sum, ctx.from_i64(4))?;
    let nu = ctx.legendre(sum);
    let j = ctx.div(jp, lambda)?;
    let l = ctx.div(lp, lambda)?;
    let frame = frame_from_pair(ctx, j, l)?;
    let (e1, e2) = (signs.e1.value(), signs.e2.value());
    let eps = ctx.eps();
    let beta = ctx.legendre(jp) == e1 && ctx.legendre(lp) == e2;
    let gamma = (nu == eps * e1 && nu == e2) || (-eps == nu * e1 && nu * e1 == 1);
    let exponent = ctx.m() as i64 - beta as i64 - gamma as i64;
    let inner = prod_t_closed(ctx, &frame, SignPair::new(signs.e1.times(nu), signs.e2.times(nu)))?;
    Ok(ctx.mul(ctx.pow_i(lambda, exponent)?, inner))
}

/// Product over `S_{k,l}^{e1,e2}`, k != l.
pub fn prod_s_pair(ctx: &FieldCtx, k: FieldElem, l: FieldElem, signs: SignPair) -> Result<FieldElem> {
    if k == l {
        return Err(Error::EqualShifts);
    }
    rescale_t(ctx, ctx.neg(k), l, SignPair::new(signs.e1.times(ctx.eps()), signs.e2))
}

/// Closed-form product for any family.
pub fn closed_product(ctx: &FieldCtx, fam: &SetFamily) -> Result<FieldElem> {
    fam.validate(ctx)?;
    match *fam {
        SetFamily::A { k, l, signs } => {
            if ctx.legendre(k) == signs.e1.value() && ctx.legendre(l) == signs.e2.value() {
                Ok(ctx.zero())
            } else {
                prod_s_pair(ctx, k, l, signs)
            }
        }
        SetFamily::S1 { k, sign } => Ok(prod_s_single(ctx, k, sign)),
        SetFamily::S2 { k, l, signs } => prod_s_pair(ctx, k, l, signs),
        SetFamily::T { j, l, signs } => rescale_t(ctx, j, l, signs),
    }
}

/// The four products over `S_{k,l}^{e1,e2}`, indexed by sign pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Quadruple(pub [FieldElem; 4]);

impl Quadruple {
    pub fn get(&self, s: SignPair) -> FieldElem {
        self.0[s.index()]
    }
}

/// Recovers all four `S_{k,l}` products from any one of them, using how the
/// single-shift sets `S_k^+`, `S_k^-`, `S_l^-` split into pair sets.
pub fn quadruple_from_one(
    ctx: &FieldCtx,
    k: FieldElem,
    l: FieldElem,
    known: SignPair,
    value: FieldElem,
) -> Result<Quadruple> {
    if k == l {
        return Err(Error::EqualShifts);
    }
    if value.is_zero() {
        return Err(Error::Precondition("a product of nonzero elements is nonzero".into()));
    }
    let corr = |cond: bool, x: FieldElem| if cond && !x.is_zero() { ctx.neg(x) } else { ctx.one() };
    let x1 = corr(ctx.legendre(ctx.sub(k, l)) == 1, l);
    let x2 = corr(ctx.legendre(ctx.sub(l, k)) == -1, k);
    let x3 = corr(ctx.legendre(ctx.sub(k, l)) == -1, l);
    let sk_plus = prod_s_single(ctx, k, Sign::Plus);
    let sl_minus = prod_s_single(ctx, l, Sign::Minus);
    let sk_minus = prod_s_single(ctx, k, Sign::Minus);
    // each link: whole = a * b * x
    let links = [
        (SignPair::PP, SignPair::PM, sk_plus, x1),
        (SignPair::MM, SignPair::PM, sl_minus, x2),
        (SignPair::MM, SignPair::MP, sk_minus, x3),
    ];
    let mut vals: [Option<FieldElem>; 4] = [None; 4];
    vals[known.index()] = Some(value);
    for _ in 0..3 {
        for &(a, b, whole, x) in &links {
            let (ia, ib) = (a.index(), b.index());
            match (vals[ia], vals[ib]) {
                (Some(va), None) => vals[ib] = Some(ctx.div(whole, ctx.mul(va, x))?),
                (None, Some(vb)) => vals[ia] = Some(ctx.div(whole, ctx.mul(vb, x))?),
                _ => {}
            }
        }
    }
    let out = vals.map(|v| v.expect("the links connect all four sign pairs"));
    Ok(Quadruple(out))
}

/// The sign relating `T_{l,j}^{mu,mu}` to `T_{j,l}^{mu,mu}`.
pub fn swap_factor(ctx: &FieldCtx, j: FieldElem, l: FieldElem, mu: Sign) -> Result<FieldElem> {
    let sum = ctx.add(j, l);
    if sum.is_zero() {
        return Err(Error::OppositeShifts);
    }
    let m = mu.value();
    let same = ctx.legendre(j) == m && ctx.legendre(l) == m;
    let s = if same { 1 } else { -1 } * m * ctx.legendre(ctx.from_i64(2)) * ctx.legendre(sum);
    Ok(ctx.from_i64(s as i64))
}

/// Product over `T_{l,j}^{mu,mu}` obtained from the one over `T_{j,l}^{mu,mu}`.
pub fn swap_t(ctx: &FieldCtx, j: FieldElem, l: FieldElem, mu: Sign) -> Result<FieldElem> {
    let base = rescale_t(ctx, j, l, SignPair::new(mu, mu))?;
    Ok(ctx.mul(swap_factor(ctx, j, l, mu)?, base))
}

/// Characters appearing in the identity for a^2 + b^2 = c^2 with ab != 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TripleVerdict {
    pub c_plus_a: i8,
    pub c_minus_a: i8,
    pub c_plus_b: i8,
    pub c_minus_b: i8,
    pub two: i8,
}

impl TripleVerdict {
    /// (c+a|q) = (2|q)(c+b|q) != 0, (c+a|q) = (c-a|q), (c+b|q) = (c-b|q).
    pub fn holds(&self) -> bool {
        self.c_plus_a != 0
            && self.c_plus_a == self.two * self.c_plus_b
            && self.c_plus_a == self.c_minus_a
            && self.c_plus_b == self.c_minus_b
    }
}

pub fn legendre_triple_identity(ctx: &FieldCtx, a: FieldElem, b: FieldElem, c: FieldElem) -> Result<TripleVerdict> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Precondition("ab must be nonzero".into()));
    }
    if ctx.add(ctx.square(a), ctx.square(b)) != ctx.square(c) {
        return Err(Error::Precondition("a^2 + b^2 != c^2".into()));
    }
    Ok(TripleVerdict {
        c_plus_a: ctx.legendre(ctx.add(c, a)),
        c_minus_a: ctx.legendre(ctx.sub(c, a)),
        c_plus_b: ctx.legendre(ctx.add(c, b)),
        c_minus_b: ctx.legendre(ctx.sub(c, b)),
        two: ctx.legendre(ctx.from_i64(2)),
    })
}

#[cfg(test)]
mod tests;
