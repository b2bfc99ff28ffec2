//! Sets cut out by quadratic-character conditions, their enumeration,
//! brute-force products and closed-form cardinalities.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, FieldElem};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `None` for 0 (a Legendre value of 0 matches neither sign).
    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: i8) -> Sign {
        if other < 0 {
            self.flip()
        } else {
            self
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn parse(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SignPair {
    pub e1: Sign,
    pub e2: Sign,
}

impl SignPair {
    pub const PP: SignPair = SignPair { e1: Sign::Plus, e2: Sign::Plus };
    pub const PM: SignPair = SignPair { e1: Sign::Plus, e2: Sign::Minus };
    pub const MP: SignPair = SignPair { e1: Sign::Minus, e2: Sign::Plus };
    pub const MM: SignPair = SignPair { e1: Sign::Minus, e2: Sign::Minus };
    /// Column order used throughout: ++, +-, -+, --.
    pub const ALL: [SignPair; 4] = [Self::PP, Self::PM, Self::MP, Self::MM];

    pub fn new(e1: Sign, e2: Sign) -> Self {
        SignPair { e1, e2 }
    }

    pub fn index(self) -> usize {
        Self::ALL.iter().position(|&s| s == self).expect("listed")
    }

    pub fn parse(s: &str) -> Option<SignPair> {
        let mut it = s.chars();
        let e1 = Sign::parse(it.next()?)?;
        let e2 = Sign::parse(it.next()?)?;
        it.next().is_none().then_some(SignPair { e1, e2 })
    }
}

impl fmt::Display for SignPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.e1.symbol(), self.e2.symbol())
    }
}

/// The four set families.
///
/// * `A`:  a in F_q with (a+k|q)=e1, (a+l|q)=e2
/// * `S1`: a != 0 with (a+k|q)=e
/// * `S2`: a != 0 with (a+k|q)=e1, (a+l|q)=e2
/// * `T`:  a != 0 with (j-a|q)=e1, (l+a|q)=e2
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SetFamily {
    A { k: FieldElem, l: FieldElem, signs: SignPair },
    S1 { k: FieldElem, sign: Sign },
    S2 { k: FieldElem, l: FieldElem, signs: SignPair },
    T { j: FieldElem, l: FieldElem, signs: SignPair },
}

impl SetFamily {
    pub fn validate(&self, ctx: &FieldCtx) -> Result<()> {
        match *self {
            SetFamily::A { k, l, .. } | SetFamily::S2 { k, l, .. } if k == l => {
                Err(Error::EqualShifts)
            }
            SetFamily::T { j, l, .. } if ctx.add(j, l).is_zero() => Err(Error::OppositeShifts),
            _ => Ok(()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SetFamily::A { .. } => "A",
            SetFamily::S1 { .. } => "S1",
            SetFamily::S2 { .. } => "S2",
            SetFamily::T { .. } => "T",
        }
    }

    pub fn params(&self) -> Vec<FieldElem> {
        match *self {
            SetFamily::A { k, l, .. } | SetFamily::S2 { k, l, .. } => vec![k, l],
            SetFamily::S1 { k, .. } => vec![k],
            SetFamily::T { j, l, .. } => vec![j, l],
        }
    }

    pub fn signs_text(&self) -> String {
        match *self {
            SetFamily::S1 { sign, .. } => sign.symbol().to_string(),
            SetFamily::A { signs, .. } | SetFamily::S2 { signs, .. } | SetFamily::T { signs, .. } => {
                signs.to_string()
            }
        }
    }

    /// Human-readable form, e.g. `T 1 3 --`.
    pub fn describe(&self, ctx: &FieldCtx) -> String {
        let params: Vec<String> = self.params().iter().map(|&x| ctx.format(x)).collect();
        format!("{} {} {}", self.kind(), params.join(" "), self.signs_text())
    }

    pub fn contains(&self, ctx: &FieldCtx, a: FieldElem) -> bool {
        let is = |x: FieldElem, s: Sign| ctx.legendre(x) == s.value();
        match *self {
            SetFamily::A { k, l, signs } => {
                is(ctx.add(a, k), signs.e1) && is(ctx.add(a, l), signs.e2)
            }
            SetFamily::S1 { k, sign } => !a.is_zero() && is(ctx.add(a, k), sign),
            SetFamily::S2 { k, l, signs } => {
                !a.is_zero() && is(ctx.add(a, k), signs.e1) && is(ctx.add(a, l), signs.e2)
            }
            SetFamily::T { j, l, signs } => {
                !a.is_zero() && is(ctx.sub(j, a), signs.e1) && is(ctx.add(l, a), signs.e2)
            }
        }
    }
}

/// Members of the set in canonical order.
pub fn enumerate_family(ctx: &FieldCtx, fam: &SetFamily) -> Result<Vec<FieldElem>> {
    fam.validate(ctx)?;
    Ok(ctx.elements().filter(|&a| fam.contains(ctx, a)).collect())
}

pub const DEFAULT_MEMBER_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductReport {
    pub value: FieldElem,
    pub cardinality: u64,
    /// Members in canonical order; `None` when the set exceeds the cap.
    pub members: Option<Vec<FieldElem>>,
}

/// Product of all members (1 for the empty set), by enumeration.
pub fn brute_product(ctx: &FieldCtx, fam: &SetFamily) -> Result<ProductReport> {
    brute_product_capped(ctx, fam, DEFAULT_MEMBER_CAP)
}

pub fn brute_product_capped(ctx: &FieldCtx, fam: &SetFamily, cap: usize) -> Result<ProductReport> {
    fam.validate(ctx)?;
    let mut value = ctx.one();
    let mut cardinality = 0u64;
    let mut members = Vec::new();
    for a in ctx.elements().filter(|&a| fam.contains(ctx, a)) {
        value = ctx.mul(value, a);
        cardinality += 1;
        if members.len() <= cap {
            members.push(a);
        }
    }
    let members = (members.len() <= cap).then_some(members);
    Ok(ProductReport { value, cardinality, members })
}

/// One JSON-lines row describing a family and its product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductRow {
    pub q: u64,
    pub family: String,
    pub params: Vec<String>,
    pub signs: String,
    pub cardinality: u64,
    pub value: String,
}

impl ProductRow {
    pub fn new(ctx: &FieldCtx, fam: &SetFamily, report: &ProductReport) -> Self {
        ProductRow {
            q: ctx.order(),
            family: fam.kind().into(),
            params: fam.params().iter().map(|&x| ctx.format(x)).collect(),
            signs: fam.signs_text(),
            cardinality: report.cardinality,
            value: ctx.format(report.value),
        }
    }
}

/// |A_{k,l}^{e1,e2}| without enumeration: with nu = (l-k|q) the pair
/// (nu,nu) has m-1 members, (nu,-nu) has m, the other two m+(eps-1)/2.
fn card_a(ctx: &FieldCtx, k: FieldElem, l: FieldElem, s: SignPair) -> u64 {
    let m = ctx.m() as i64;
    let nu = ctx.legendre(ctx.sub(l, k));
    let c = if s.e1.value() == nu {
        if s.e2.value() == nu {
            m - 1
        } else {
            m
        }
    } else {
        m + (ctx.eps() as i64 - 1) / 2
    };
    c as u64
}

pub fn card_closed(ctx: &FieldCtx, fam: &SetFamily) -> Result<u64> {
    fam.validate(ctx)?;
    let q = ctx.order();
    let leg = |x: FieldElem, s: Sign| ctx.legendre(x) == s.value();
    Ok(match *fam {
        SetFamily::A { k, l, signs } => card_a(ctx, k, l, signs),
        SetFamily::S2 { k, l, signs } => {
            let base = card_a(ctx, k, l, signs);
            if leg(k, signs.e1) && leg(l, signs.e2) {
                base - 1
            } else {
                base
            }
        }
        SetFamily::T { j, l, signs } => {
            let shifted = SignPair::new(signs.e1.times(ctx.eps()), signs.e2);
            let base = card_a(ctx, ctx.neg(j), l, shifted);
            if leg(j, signs.e1) && leg(l, signs.e2) {
                base - 1
            } else {
                base
            }
        }
        SetFamily::S1 { k, sign } => {
            if leg(k, sign) {
                (q - 3) / 2
            } else {
                (q - 1) / 2
            }
        }
    })
}

/// prod_{b in A_{-2,2}^{e1,e2}} (x - b).
pub fn vanishing_poly(ctx: &FieldCtx, signs: SignPair) -> Poly {
    let fam = SetFamily::A { k: ctx.from_i64(-2), l: ctx.from_i64(2), signs };
    ctx.elements()
        .filter(|&b| fam.contains(ctx, b))
        .fold(Poly::constant(ctx.one()), |acc, b| acc.mul_linear(ctx, b))
}
