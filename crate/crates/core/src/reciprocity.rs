//! Character values at nested quadratic irrationalities: the class of
//! 2 + sqrt 2, towers b_i = sqrt(2 + b_(i-1)), and T products at
//! (2 - b, 2 + b) for b = sqrt 2, sqrt 3, (1 - sqrt 5)/2 or u + 1/u.

use crate::charsets::{brute_product, SetFamily, Sign, SignPair};
use crate::closedform::rescale_t;
use crate::error::{Error, Result};
use crate::ffield::{multiplicative_order_mod, Ext2Elem, ExtField, FieldCtx, FieldElem};
use crate::primes;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RadicalBase {
    Sqrt2,
    Sqrt3,
    Golden,
    /// u + 1/u for u a primitive 2k-th root of unity.
    Bracket(u64),
}

impl RadicalBase {
    /// The k with b_0 = u_0 + 1/u_0, u_0 a primitive 2k-th root of unity.
    pub fn k(&self) -> u64 {
        match *self {
            RadicalBase::Sqrt2 => 4,
            RadicalBase::Sqrt3 => 6,
            RadicalBase::Golden => 5,
            RadicalBase::Bracket(k) => k,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            RadicalBase::Sqrt2 => "sqrt2".into(),
            RadicalBase::Sqrt3 => "sqrt3".into(),
            RadicalBase::Golden => "golden".into(),
            RadicalBase::Bracket(k) => format!("bracket{k}"),
        }
    }

    fn check_coprime(&self, ctx: &FieldCtx) -> Result<()> {
        let k = self.k();
        if k < 2 {
            return Err(Error::Precondition("k must be at least 2".into()));
        }
        if k.is_multiple_of(ctx.characteristic()) {
            return Err(Error::Precondition(format!("q shares a factor with 2k = {}", 2 * k)));
        }
        Ok(())
    }
}

fn plus_minus_one_mod(q: u64, d: u64) -> bool {
    q % d == 1 || q % d == d - 1
}

fn sign_pow(e: u64) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn both_roots(ctx: &FieldCtx, a: FieldElem) -> Option<[FieldElem; 2]> {
    ctx.sqrt_canonical(a).map(|s| [s, ctx.neg(s)])
}

/// Observed character values over all root choices next to the value
/// predicted from q alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelCheck {
    pub observed: Vec<i8>,
    pub predicted: i8,
}

impl LevelCheck {
    pub fn holds(&self) -> bool {
        !self.observed.is_empty() && self.observed.iter().all(|&x| x == self.predicted)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sqrt2Class {
    pub sqrt2_in_field: bool,
    /// (2 +- sqrt 2 | q) when 2 is a square.
    pub first: Option<LevelCheck>,
    /// (2 +- sqrt(2 + sqrt 2) | q) when q = eps mod 16.
    pub second: Option<LevelCheck>,
}

impl Sqrt2Class {
    pub fn holds(&self) -> bool {
        self.first.as_ref().is_none_or(LevelCheck::holds)
            && self.second.as_ref().is_none_or(LevelCheck::holds)
    }
}

pub fn sqrt2_tower_class(ctx: &FieldCtx) -> Sqrt2Class {
    let q = ctx.order();
    let two = ctx.from_i64(2);
    let Some(roots) = both_roots(ctx, two) else {
        return Sqrt2Class { sqrt2_in_field: false, first: None, second: None };
    };
    let mut observed = Vec::new();
    for s in roots {
        observed.push(ctx.legendre(ctx.add(two, s)));
        observed.push(ctx.legendre(ctx.sub(two, s)));
    }
    let predicted = if q % 8 == 1 { sign_pow((q - 1) / 8) } else { sign_pow((q + 1) / 8) } as i8;
    let first = Some(LevelCheck { observed, predicted });
    let eps = ctx.eps() as i64;
    let second = if (q as i64 - eps) % 16 == 0 {
        let mut observed = Vec::new();
        for s in roots {
            if let Some(ts) = both_roots(ctx, ctx.add(two, s)) {
                for t in ts {
                    observed.push(ctx.legendre(ctx.add(two, t)));
                    observed.push(ctx.legendre(ctx.sub(two, t)));
                }
            }
        }
        let predicted = if (q as i64 - eps) % 32 == 0 { 1 } else { -1 };
        Some(LevelCheck { observed, predicted })
    } else {
        None
    };
    Sqrt2Class { sqrt2_in_field: true, first, second }
}

/// An element of exact order d in F_{q^2}; requires d | q^2 - 1.
fn ext2_root_of_unity(ctx: &FieldCtx, d: u64) -> Option<Ext2Elem> {
    let e = ctx.ext2();
    let q = ctx.order();
    let order = q * q - 1;
    if !order.is_multiple_of(d) {
        return None;
    }
    let factors = primes::factor(d);
    ctx.elements()
        .flat_map(|hi| ctx.elements().map(move |lo| Ext2Elem { lo, hi }))
        .filter(|&x| x != e.zero())
        .map(|x| e.pow(x, order / d))
        .find(|&z| factors.iter().all(|&(r, _)| e.pow(z, d / r) != e.one()))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All values of b_0 over the admissible choices, with a flag telling
/// whether b_0 lies in F_q (the list is empty otherwise).
fn base_values(ctx: &FieldCtx, base: RadicalBase) -> Result<Vec<FieldElem>> {
    base.check_coprime(ctx)?;
    Ok(match base {
        RadicalBase::Sqrt2 => both_roots(ctx, ctx.from_i64(2)).map_or(vec![], |r| r.to_vec()),
        RadicalBase::Sqrt3 => both_roots(ctx, ctx.from_i64(3)).map_or(vec![], |r| r.to_vec()),
        RadicalBase::Golden => match both_roots(ctx, ctx.from_i64(5)) {
            Some(r) => r
                .iter()
                .map(|&s| ctx.div(ctx.sub(ctx.one(), s), ctx.from_i64(2)))
                .collect::<Result<_>>()?,
            None => vec![],
        },
        RadicalBase::Bracket(k) => {
            let e = ctx.ext2();
            match ext2_root_of_unity(ctx, 2 * k) {
                None => vec![],
                Some(z) => {
                    let mut out = Vec::new();
                    let mut in_field = Vec::new();
                    for j in (1..2 * k).filter(|&j| gcd(j, 2 * k) == 1) {
                        let b = e.bracket(e.pow(z, j))?;
                        in_field.push(e.to_base(b).is_some());
                        out.extend(e.to_base(b));
                    }
                    if in_field.iter().any(|&x| x) != in_field.iter().all(|&x| x) {
                        return Err(Error::Inconsistent("conjugate brackets disagree".into()));
                    }
                    out.sort();
                    out.dedup();
                    out
                }
            }
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerReport {
    /// b_i in F_q, computed by taking square roots level by level.
    pub computed: Vec<bool>,
    /// q = +-1 mod 2^(i+1) k.
    pub criterion: Vec<bool>,
    /// Every choice of roots gave the same membership at every level.
    pub branches_agree: bool,
}

impl TowerReport {
    pub fn agrees(&self) -> bool {
        self.branches_agree && self.computed == self.criterion
    }
}

/// Membership of b_0, ..., b_depth in F_q. Once some b_i leaves F_q all
/// later levels do too (b_(i-1) = b_i^2 - 2), so the walk stays in F_q and
/// follows every choice of square root.
pub fn radical_tower_membership(ctx: &FieldCtx, base: RadicalBase, depth: u32) -> Result<TowerReport> {
    let q = ctx.order();
    let k = base.k();
    let two = ctx.from_i64(2);
    let mut level = base_values(ctx, base)?;
    let mut computed = Vec::new();
    let mut branches_agree = true;
    for i in 0..=depth {
        if i > 0 {
            let mut next = Vec::new();
            let mut extends = Vec::new();
            for &b in &level {
                match both_roots(ctx, ctx.add(two, b)) {
                    Some(r) => {
                        extends.push(true);
                        next.extend(r);
                    }
                    None => extends.push(false),
                }
            }
            branches_agree &= extends.iter().all(|&x| x) || extends.iter().all(|&x| !x);
            next.sort();
            next.dedup();
            level = next;
        }
        computed.push(!level.is_empty());
    }
    let criterion = (0..=depth).map(|i| plus_minus_one_mod(q, (1 << (i + 1)) * k)).collect();
    Ok(TowerReport { computed, criterion, branches_agree })
}

/// Builds u_depth of order 2^(depth+1) k in the smallest extension holding
/// it, sets u_i = u_depth^(2^(depth-i)) and b_i = u_i + 1/u_i, checks
/// u_i^2 = u_(i-1), b_i^2 = 2 + b_(i-1) and the defining relation of b_0,
/// and reports which b_i lie in F_q.
pub fn tower_units(ctx: &FieldCtx, base: RadicalBase, depth: u32) -> Result<Vec<bool>> {
    base.check_coprime(ctx)?;
    let order = (1u64 << (depth + 1)) * base.k();
    let deg = multiplicative_order_mod(ctx.order(), order)
        .ok_or_else(|| Error::Precondition("q and 2k share a factor".into()))?;
    let ext = ExtField::new(ctx, deg)?;
    let top = ext.primitive_root_of_unity(order)?;
    let mut units = vec![top];
    for _ in 0..depth {
        let u = units.last().expect("nonempty");
        units.push(ext.mul(u, u));
    }
    units.reverse();
    let brackets = units.iter().map(|u| ext.bracket(u)).collect::<Result<Vec<_>>>()?;
    let two = ext.embed(ctx.from_i64(2));
    let b0 = &brackets[0];
    let b0sq = ext.mul(b0, b0);
    let base_ok = match base {
        RadicalBase::Sqrt2 => b0sq == two,
        RadicalBase::Sqrt3 => b0sq == ext.embed(ctx.from_i64(3)),
        RadicalBase::Golden => ext.sub(&ext.sub(&b0sq, b0), &ext.one()) == ext.embed(ctx.zero()),
        RadicalBase::Bracket(_) => true,
    };
    if !base_ok {
        return Err(Error::Inconsistent("b_0 does not satisfy its defining relation".into()));
    }
    for i in 1..brackets.len() {
        if ext.mul(&units[i], &units[i]) != units[i - 1] {
            return Err(Error::Inconsistent("u_i^2 != u_(i-1)".into()));
        }
        let b = &brackets[i];
        if ext.mul(b, b) != ext.add(&two, &brackets[i - 1]) {
            return Err(Error::Inconsistent("b_i^2 != 2 + b_(i-1)".into()));
        }
    }
    Ok(brackets.iter().map(|b| ext.to_base(b).is_some()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialBracket {
    /// Degree over F_q of the field where the root of unity was built.
    pub degree: u32,
    /// The bracket, when it lies in F_q.
    pub value: Option<FieldElem>,
    /// b^2 = 2 for d = 8, b^2 = 3 for d = 12, b^2 - b - 1 = 0 for d = 10.
    pub relation_holds: bool,
    /// q = +-1 mod d.
    pub criterion: bool,
}

impl SpecialBracket {
    pub fn agrees(&self) -> bool {
        self.relation_holds && self.value.is_some() == self.criterion
    }
}

/// u + 1/u for a primitive d-th root of unity u, d in {8, 10, 12}.
pub fn special_angle_bracket(ctx: &FieldCtx, d: u64) -> Result<SpecialBracket> {
    if ![8, 10, 12].contains(&d) {
        return Err(Error::Precondition(format!("d = {d} is not one of 8, 10, 12")));
    }
    let degree = multiplicative_order_mod(ctx.order(), d)
        .ok_or_else(|| Error::Precondition(format!("q shares a factor with {d}")))?;
    let ext = ExtField::new(ctx, degree)?;
    let z = ext.primitive_root_of_unity(d)?;
    let b = ext.bracket(&z)?;
    let b2 = ext.mul(&b, &b);
    let relation_holds = match d {
        8 => b2 == ext.embed(ctx.from_i64(2)),
        12 => b2 == ext.embed(ctx.from_i64(3)),
        _ => ext.sub(&ext.sub(&b2, &b), &ext.one()) == ext.embed(ctx.zero()),
    };
    Ok(SpecialBracket {
        degree,
        value: ext.to_base(&b),
        relation_holds,
        criterion: plus_minus_one_mod(ctx.order(), d),
    })
}

/// One evaluation of a product over T_{2-b, 2+b} for a fixed choice of b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrationalProduct {
    pub b: FieldElem,
    pub signs: SignPair,
    pub predicted: FieldElem,
    pub brute: FieldElem,
    pub closed: FieldElem,
}

impl IrrationalProduct {
    pub fn holds(&self) -> bool {
        self.predicted == self.brute && self.brute == self.closed
    }
}

/// Predicted products at (2 - b, 2 + b), evaluated for every admissible
/// choice of b and compared with enumeration and with the general closed
/// form. Each base carries its own congruence precondition on q.
pub fn prod_t_quadratic_irrational(ctx: &FieldCtx, base: RadicalBase) -> Result<Vec<IrrationalProduct>> {
    base.check_coprime(ctx)?;
    let q = ctx.order();
    let eps = ctx.eps() as i64;
    let int = |x: i64| ctx.from_i64(x);
    let need = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::Precondition(what.into()))
        }
    };
    // (b, signs, predicted) per choice
    let mut cases: Vec<(FieldElem, SignPair, FieldElem)> = Vec::new();
    match base {
        RadicalBase::Sqrt2 => {
            need(plus_minus_one_mod(q, 8), "q = +-1 mod 8")?;
            for s in base_values(ctx, base)? {
                if (q as i64 - eps) % 16 == 0 {
                    let pred = int(sign_pow(((q as i64 - eps) / 16) as u64) * 2);
                    cases.push((s, SignPair::MM, pred));
                } else {
                    let pred = ctx.mul(int(sign_pow(((q as i64 + 8 - eps) / 16) as u64)), s);
                    cases.push((s, SignPair::PP, pred));
                }
            }
        }
        RadicalBase::Sqrt3 => {
            need(plus_minus_one_mod(q, 12), "q = +-1 mod 12")?;
            let nu = Sign::Plus.times(sign_pow(((q as i64 - eps) / 12) as u64) as i8);
            let signs = SignPair::new(nu.flip(), nu.flip());
            for s in base_values(ctx, base)? {
                cases.push((s, signs, int(sign_pow((q + 1) / 24) * 2)));
            }
        }
        RadicalBase::Golden => {
            need(plus_minus_one_mod(q, 5), "q = +-1 mod 5")?;
            for r in base_values(ctx, base)? {
                if plus_minus_one_mod(q, 20) {
                    cases.push((r, SignPair::MM, int(2)));
                } else {
                    cases.push((r, SignPair::PP, ctx.mul(int(-eps), r)));
                }
            }
        }
        RadicalBase::Bracket(k) => {
            need((q as i64 - eps) % (4 * k as i64) == 0, "q = eps mod 4k")?;
            let mu = ((q as i64 - eps) / (4 * k as i64)) as u64;
            for b in base_values(ctx, base)? {
                cases.push((b, SignPair::MM, int(sign_pow((k + 1) * mu) * 2)));
            }
        }
    }
    if cases.is_empty() {
        return Err(Error::Inconsistent("no admissible value of b".into()));
    }
    let two = int(2);
    cases
        .into_iter()
        .map(|(b, signs, predicted)| {
            let (j, l) = (ctx.sub(two, b), ctx.add(two, b));
            let brute = brute_product(ctx, &SetFamily::T { j, l, signs })?.value;
            let closed = rescale_t(ctx, j, l, signs)?;
            Ok(IrrationalProduct { b, signs, predicted, brute, closed })
        })
        .collect()
}
