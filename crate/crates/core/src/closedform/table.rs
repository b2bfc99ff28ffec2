use super::frame::{normalized_frame, Frame, ProjTau};
use crate::charsets::{brute_product, SetFamily, Sign, SignPair};
use crate::error::{Error, Result};
use crate::ffield::{Ext2Elem, FieldCtx, FieldElem};

/// Square class of a generic tau, keyed by ((tau|q), (tau+1|q)).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootCase {
    /// (+,-): the root is sqrt(tau).
    PlusMinus,
    /// (-,+): the root is sqrt(tau+1).
    MinusPlus,
    /// (-,-): the root is sqrt(tau/(tau+1)).
    MinusMinus,
}

/// A square root fixed by the field data rather than by a choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DetRoot {
    pub case: RootCase,
    /// a1, a2 or a3.
    pub value: FieldElem,
    /// sqrt(tau) = 2/(a1 l), sqrt(tau+1) = 2/a2, or sqrt(tau/(tau+1)) = a3/2.
    pub root: FieldElem,
}

fn root_case(ctx: &FieldCtx, frame: &Frame) -> Option<RootCase> {
    let ProjTau::Finite(t) = frame.tau else { return None };
    match (ctx.legendre(t), ctx.legendre(ctx.add(t, ctx.one()))) {
        (1, -1) => Some(RootCase::PlusMinus),
        (-1, 1) => Some(RootCase::MinusPlus),
        (-1, -1) => Some(RootCase::MinusMinus),
        _ => None,
    }
}

pub fn det_sqrt(ctx: &FieldCtx, frame: &Frame, case: RootCase) -> Result<DetRoot> {
    let u = ctx.ext2().solve_unit(frame.r);
    det_sqrt_with_unit(ctx, frame, case, u)
}

/// Same as [`det_sqrt`] with the unit u (u + 1/u = r) supplied by the caller.
pub fn det_sqrt_with_unit(ctx: &FieldCtx, frame: &Frame, case: RootCase, u: Ext2Elem) -> Result<DetRoot> {
    if root_case(ctx, frame) != Some(case) {
        return Err(Error::ClassMismatch);
    }
    let e = ctx.ext2();
    if e.bracket(u)? != e.embed(frame.r) {
        return Err(Error::Precondition("u + 1/u must equal r".into()));
    }
    let ProjTau::Finite(tau) = frame.tau else { unreachable!("class implies finite tau") };
    let m = ctx.m();
    let two = ctx.from_i64(2);
    let base = |x: Ext2Elem| {
        e.to_base(x).ok_or_else(|| Error::Inconsistent("value left F_q".into()))
    };
    let (value, root, square, target) = match case {
        RootCase::PlusMinus => {
            let um = e.pow(u, m);
            let num = e.sub(um, e.inv(um)?);
            let den = e.sub(u, e.inv(u)?);
            let a1 = base(e.div(num, den)?)?;
            let r2m4 = ctx.sub(ctx.square(frame.r), ctx.from_i64(4));
            let expect = ctx.div(ctx.from_i64(-4), r2m4)?;
            if ctx.square(a1) != expect {
                return Err(Error::Inconsistent("a1^2 != -4/(r^2-4)".into()));
            }
            let root = ctx.div(two, ctx.mul(a1, frame.l))?;
            (a1, root, ctx.square(root), tau)
        }
        RootCase::MinusPlus => {
            let a2 = base(e.bracket(e.pow(u, m))?)?;
            if ctx.square(a2) != frame.l {
                return Err(Error::Inconsistent("a2^2 != l".into()));
            }
            let root = ctx.div(two, a2)?;
            (a2, root, ctx.square(root), ctx.add(tau, ctx.one()))
        }
        RootCase::MinusMinus => {
            let a3 = base(e.bracket(e.pow(e.neg(u), m))?)?;
            if ctx.square(a3) != frame.j {
                return Err(Error::Inconsistent("a3^2 != j".into()));
            }
            let root = ctx.div(a3, two)?;
            (a3, root, ctx.square(root), ctx.div(tau, ctx.add(tau, ctx.one()))?)
        }
    };
    if square != target {
        return Err(Error::Inconsistent("derived root does not square back".into()));
    }
    Ok(DetRoot { case, value, root })
}

/// Character of 1 + s*sqrt(l)/2 for (tau|q) = (tau+1|q) = 1, where the root
/// of l is the canonical one or its negative and s picks the sign of the
/// sum. All four choices agree.
pub fn plus_plus_class(ctx: &FieldCtx, frame: &Frame, root: Sign, s: Sign) -> Result<i8> {
    let rl = ctx
        .sqrt_canonical(frame.l)
        .ok_or_else(|| Error::Precondition("l must be a square".into()))?;
    let rl = if root == Sign::Plus { rl } else { ctx.neg(rl) };
    let half = ctx.div(rl, ctx.from_i64(2))?;
    let x = if s == Sign::Plus { ctx.add(ctx.one(), half) } else { ctx.sub(ctx.one(), half) };
    Ok(ctx.legendre(x))
}

/// Which piece of the closed form produced a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    TauZero,
    TauInfinity,
    TauOne,
    TauThree,
    TauThird,
    /// tau, tau+1 squares; `class` is the character of 1 +- sqrt(l)/2.
    BothSquares { class: i8 },
    /// (tau|q)=1, (tau+1|q)=-1 with c = (2|q) sqrt(tau).
    TauSquare { c: FieldElem },
    /// (tau|q)=-1, (tau+1|q)=1 with c = (2|q) sqrt(tau+1).
    TauPlusOneSquare { c: FieldElem },
    /// both nonsquares with c = sqrt(tau/(tau+1)).
    NeitherSquare { c: FieldElem },
}

impl Rule {
    pub fn label(&self) -> &'static str {
        match self {
            Rule::TauZero => "tau=0",
            Rule::TauInfinity => "tau=inf",
            Rule::TauOne => "tau=1",
            Rule::TauThree => "tau=3",
            Rule::TauThird => "tau=1/3",
            Rule::BothSquares { .. } => "(tau|q)=(tau+1|q)=1",
            Rule::TauSquare { .. } => "(tau|q)=1,(tau+1|q)=-1",
            Rule::TauPlusOneSquare { .. } => "(tau|q)=-1,(tau+1|q)=1",
            Rule::NeitherSquare { .. } => "(tau|q)=(tau+1|q)=-1",
        }
    }

    /// The root c carried by the three explicit-root classes.
    pub fn c(&self) -> Option<FieldElem> {
        match *self {
            Rule::TauSquare { c } | Rule::TauPlusOneSquare { c } | Rule::NeitherSquare { c } => Some(c),
            _ => None,
        }
    }

    /// Special values and the all-square class form the first group of
    /// rows, the three classes with an explicit root the second.
    pub fn is_generic_class(&self) -> bool {
        matches!(self, Rule::TauSquare { .. } | Rule::TauPlusOneSquare { .. } | Rule::NeitherSquare { .. })
    }
}

/// The four `T_{j,l}` products on the normalized line, ordered ++, +-, -+, --.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TRow {
    pub values: [FieldElem; 4],
    pub rule: Rule,
}

fn sign_pow(e: u64) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn closed_t_row(ctx: &FieldCtx, frame: &Frame) -> Result<TRow> {
    let q = ctx.order();
    let eps = ctx.eps() as i64;
    let two_ch = ctx.legendre(ctx.from_i64(2)) as i64;
    let mtwo_ch = ctx.legendre(ctx.from_i64(-2)) as i64;
    let int = |x: i64| ctx.from_i64(x);
    let frac = |a: i64, b: i64| ctx.div(ctx.from_i64(a), ctx.from_i64(b));
    let one = ctx.one();

    let tau = match frame.tau {
        ProjTau::Infinity => {
            return Ok(TRow { values: [frac(-eps, 4)?, frac(eps, 2)?, one, int(2)], rule: Rule::TauInfinity });
        }
        ProjTau::Finite(t) => t,
    };
    if tau.is_zero() {
        let values = [frac(mtwo_ch, 4)?, int(mtwo_ch), frac(two_ch, 2)?, int(2 * two_ch)];
        return Ok(TRow { values, rule: Rule::TauZero });
    }
    if tau == one {
        let s1 = sign_pow(q / 8);
        let s2 = sign_pow((q + 3) / 8);
        let values = if q % 8 == 1 || q % 8 == 7 {
            [frac(s1, 8)?, int(s1), int(s2), int(2 * s2)]
        } else {
            [int(s1), int(s1), int(s2), frac(s2, 4)?]
        };
        return Ok(TRow { values, rule: Rule::TauOne });
    }
    if ctx.characteristic() != 3 {
        let good = q % 12 == 1 || q % 12 == 11;
        if tau == int(3) {
            let values = if good {
                [frac(mtwo_ch, 6)?, int(mtwo_ch), int(two_ch), int(2 * two_ch)]
            } else {
                [int(-mtwo_ch), int(-2 * mtwo_ch), frac(-two_ch, 6)?, int(-two_ch)]
            };
            return Ok(TRow { values, rule: Rule::TauThree });
        }
        if tau == frac(1, 3)? {
            let values = if good {
                [frac(eps, 6)?, int(eps), one, int(2)]
            } else {
                [int(eps), frac(eps, 6)?, int(-2), int(-1)]
            };
            return Ok(TRow { values, rule: Rule::TauThird });
        }
    }
    class_row(ctx, frame)
}

/// The row of the square class of tau, for finite tau outside {0, -1}.
/// Agrees with `closed_t_row` wherever both apply.
pub fn class_row(ctx: &FieldCtx, frame: &Frame) -> Result<TRow> {
    let tau = match frame.tau {
        ProjTau::Finite(t) if !t.is_zero() => t,
        _ => return Err(Error::Precondition("square classes need tau outside {0, inf}".into())),
    };
    let eps = ctx.eps() as i64;
    let two_ch = ctx.legendre(ctx.from_i64(2)) as i64;
    let int = |x: i64| ctx.from_i64(x);
    let t1 = ctx.add(tau, ctx.one());
    let epsf = int(eps);
    match root_case(ctx, frame) {
        None => both_squares_row(ctx, frame),
        Some(case) => {
            let d = det_sqrt(ctx, frame, case)?;
            let (values, rule) = match case {
                RootCase::PlusMinus => {
                    let c = ctx.mul(int(two_ch), d.root);
                    let values = [
                        ctx.neg(ctx.div(t1, ctx.mul(int(2), c))?),
                        ctx.neg(c),
                        ctx.div(epsf, c)?,
                        ctx.div(ctx.mul(epsf, t1), ctx.mul(int(8), c))?,
                    ];
                    (values, Rule::TauSquare { c })
                }
                RootCase::MinusPlus => {
                    let c = ctx.mul(int(two_ch), d.root);
                    let values = [
                        ctx.div(ctx.mul(epsf, c), int(2))?,
                        ctx.mul(epsf, c),
                        ctx.div(ctx.mul(c, t1), ctx.mul(int(16), tau))?,
                        ctx.div(int(2), c)?,
                    ];
                    (values, Rule::TauPlusOneSquare { c })
                }
                RootCase::MinusMinus => {
                    let c = d.root;
                    let values = [
                        ctx.div(int(-eps), ctx.mul(int(2), c))?,
                        ctx.div(ctx.mul(epsf, t1), ctx.mul(int(-16), c))?,
                        ctx.inv(c)?,
                        ctx.mul(int(2), c),
                    ];
                    (values, Rule::NeitherSquare { c })
                }
            };
            Ok(TRow { values, rule })
        }
    }
}

/// The all-square row, applied whenever tau and tau+1 are nonzero squares,
/// including the special values that also have a row of their own.
pub fn both_squares_row(ctx: &FieldCtx, frame: &Frame) -> Result<TRow> {
    let eps = ctx.eps() as i64;
    let int = |x: i64| ctx.from_i64(x);
    let class = plus_plus_class(ctx, frame, Sign::Plus, Sign::Plus)?;
    let s = class as i64;
    let first = ctx.div(int(s * eps), ctx.mul(int(2), ctx.mul(frame.j, frame.l)))?;
    let values = [first, int(s * eps), int(s), int(2 * s)];
    Ok(TRow { values, rule: Rule::BothSquares { class } })
}

/// Closed-form product over `T_{j,l}^{signs}` for a normalized frame.
pub fn prod_t_closed(ctx: &FieldCtx, frame: &Frame, signs: SignPair) -> Result<FieldElem> {
    Ok(closed_t_row(ctx, frame)?.values[signs.index()])
}

/// Products over `S_{r-2,r+2}` expressed through a unit u with u + 1/u = r.
/// `signs` must be (-eps,-), giving <(-u)^m>, or (eps,+), giving
/// -((-u)^m - (-u)^-m)/(u - 1/u). Valid when r lies outside the matching
/// set A_{-2,2} (and r != +-2 for the second).
pub fn unit_product(ctx: &FieldCtx, u: Ext2Elem, signs: SignPair) -> Result<FieldElem> {
    let e = ctx.ext2();
    let eps = ctx.eps();
    let nu = e.pow(e.neg(u), ctx.m());
    let x = if signs == SignPair::new(Sign::Plus.times(-eps), Sign::Minus) {
        e.bracket(nu)?
    } else if signs == SignPair::new(Sign::Plus.times(eps), Sign::Plus) {
        let den = e.sub(u, e.inv(u)?);
        e.neg(e.div(e.sub(nu, e.inv(nu)?), den)?)
    } else {
        return Err(Error::Precondition(format!("sign pair {signs} has no unit form")));
    };
    e.to_base(x).ok_or_else(|| Error::Inconsistent("value left F_q".into()))
}

/// One rendered row of a product table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub tau: ProjTau,
    /// (j, l) for T tables, (k, l) for S tables.
    pub params: (FieldElem, FieldElem),
    pub rule: Rule,
    pub closed: [FieldElem; 4],
    pub brute: [FieldElem; 4],
}

/// Rows of table `id`: 1 and 3 list S products, 2 and 4 T products;
/// 1 and 2 cover special tau and the all-square class, 3 and 4 every tau
/// in the other three square classes, special values included.
pub fn table_rows(ctx: &FieldCtx, id: u8) -> Result<Vec<TableRow>> {
    if !(1..=4).contains(&id) {
        return Err(Error::Precondition(format!("table id {id} is not in 1..=4")));
    }
    let generic = id >= 3;
    let s_table = id % 2 == 1;
    let taus = ctx.elements().map(ProjTau::Finite).chain([ProjTau::Infinity]);
    let mut rows = Vec::new();
    for tau in taus {
        let frame = match normalized_frame(ctx, tau) {
            Ok(f) => f,
            Err(Error::TauMinusOne) => continue,
            Err(e) => return Err(e),
        };
        let row = if generic {
            if root_case(ctx, &frame).is_none() {
                continue;
            }
            class_row(ctx, &frame)?
        } else {
            let row = closed_t_row(ctx, &frame)?;
            if row.rule.is_generic_class() {
                continue;
            }
            row
        };
        let mut closed = [ctx.zero(); 4];
        let mut brute = [ctx.zero(); 4];
        for s in SignPair::ALL {
            let (fam, t_signs) = if s_table {
                let t_signs = SignPair::new(s.e1.times(ctx.eps()), s.e2);
                (SetFamily::S2 { k: frame.k, l: frame.l, signs: s }, t_signs)
            } else {
                (SetFamily::T { j: frame.j, l: frame.l, signs: s }, s)
            };
            closed[s.index()] = row.values[t_signs.index()];
            brute[s.index()] = brute_product(ctx, &fam)?.value;
        }
        let params = if s_table { (frame.k, frame.l) } else { (frame.j, frame.l) };
        rows.push(TableRow { tau, params, rule: row.rule, closed, brute });
    }
    Ok(rows)
}
