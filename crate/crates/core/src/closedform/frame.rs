use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, FieldElem};

/// A point of the projective line over F_q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjTau {
    Finite(FieldElem),
    Infinity,
}

impl ProjTau {
    pub fn format(&self, ctx: &FieldCtx) -> String {
        match self {
            ProjTau::Finite(t) => ctx.format(*t),
            ProjTau::Infinity => "inf".into(),
        }
    }
}

/// Normalized parameters attached to tau != -1:
/// k = -j = 4 tau/(tau+1), l = 4/(tau+1), r = k+2 = l-2 = 2-j, tau' = k/4.
/// At infinity (j, k, l) = (4, -4, 0) and tau' = -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Frame {
    pub tau: ProjTau,
    pub j: FieldElem,
    pub k: FieldElem,
    pub l: FieldElem,
    pub r: FieldElem,
    pub tau_prime: FieldElem,
}

pub fn normalized_frame(ctx: &FieldCtx, tau: ProjTau) -> Result<Frame> {
    let four = ctx.from_i64(4);
    let (j, l) = match tau {
        ProjTau::Infinity => (four, ctx.zero()),
        ProjTau::Finite(t) => {
            let t1 = ctx.add(t, ctx.one());
            if t1.is_zero() {
                return Err(Error::TauMinusOne);
            }
            let l = ctx.div(four, t1)?;
            (ctx.mul(t, l), l)
        }
    };
    let k = ctx.neg(j);
    let frame = Frame {
        tau,
        j,
        k,
        l,
        r: ctx.add(k, ctx.from_i64(2)),
        tau_prime: ctx.div(k, four)?,
    };
    debug_assert_eq!(frame.r, ctx.sub(l, ctx.from_i64(2)));
    Ok(frame)
}

/// Frame through (j, l) with j + l = 4.
pub fn frame_from_pair(ctx: &FieldCtx, j: FieldElem, l: FieldElem) -> Result<Frame> {
    if ctx.add(j, l) != ctx.from_i64(4) {
        return Err(Error::Precondition("j + l must equal 4".into()));
    }
    let tau = if l.is_zero() { ProjTau::Infinity } else { ProjTau::Finite(ctx.div(j, l)?) };
    normalized_frame(ctx, tau)
}
