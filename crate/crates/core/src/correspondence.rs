//! The dictionary between orbits {v, -v, 1/v, -1/v} of roots of unity in
//! mu_(2q-2) and mu_(2q+2), and elements tau of F_q, via
//! tau = (v - 1/v)^2 / 4 and v = sqrt(tau+1) + sqrt(tau).

use std::collections::BTreeMap;

use crate::charsets::{Sign, SignPair};
use crate::closedform::{normalized_frame, ProjTau};
use crate::error::{Error, Result};
use crate::ffield::{Ext2, Ext2Elem, FieldCtx, FieldElem};
use crate::primes;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Orbit {
    /// Canonically smallest member.
    pub rep: Ext2Elem,
    /// v, -v, 1/v, -1/v sorted canonically (with repetition when v^4 = 1).
    pub members: [Ext2Elem; 4],
}

fn orbit_of(e: &Ext2<'_>, v: Ext2Elem) -> Result<Orbit> {
    let vi = e.inv(v)?;
    let mut members = [v, e.neg(v), vi, e.neg(vi)];
    members.sort();
    Ok(Orbit { rep: members[0], members })
}

pub fn in_unit_groups(ctx: &FieldCtx, v: Ext2Elem) -> bool {
    let e = ctx.ext2();
    let q = ctx.order();
    v != e.zero() && (e.pow(v, 2 * q - 2) == e.one() || e.pow(v, 2 * q + 2) == e.one())
}

/// tau = (v - 1/v)^2 / 4 for v in mu_(2q-2) or mu_(2q+2).
pub fn tau_of_orbit(ctx: &FieldCtx, v: Ext2Elem) -> Result<FieldElem> {
    if !in_unit_groups(ctx, v) {
        return Err(Error::NotInUnitGroups);
    }
    let e = ctx.ext2();
    let d = e.sub(v, e.inv(v)?);
    let t = e.scale(e.mul(d, d), ctx.inv(ctx.from_i64(4))?);
    e.to_base(t).ok_or_else(|| Error::Inconsistent("tau left F_q".into()))
}

/// The orbit of v = sqrt(tau+1) + sqrt(tau), roots taken in F_{q^2}.
pub fn orbit_of_tau(ctx: &FieldCtx, tau: FieldElem) -> Result<Orbit> {
    let e = ctx.ext2();
    let v = e.add(e.sqrt_of_base(ctx.add(tau, ctx.one())), e.sqrt_of_base(tau));
    orbit_of(&e, v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauClass {
    /// tau in {0, -1}, where v^4 = 1.
    Degenerate,
    /// ((tau|q), (tau+1|q)) together with whether v^(q - ab) = b holds.
    Generic { signs: SignPair, order_test: bool },
}

pub fn classify_tau(ctx: &FieldCtx, tau: FieldElem) -> Result<TauClass> {
    let t1 = ctx.add(tau, ctx.one());
    if tau.is_zero() || t1.is_zero() {
        return Ok(TauClass::Degenerate);
    }
    let (a, b) = (ctx.legendre(tau), ctx.legendre(t1));
    let signs = SignPair::new(Sign::from_i8(a).unwrap(), Sign::from_i8(b).unwrap());
    let v = orbit_of_tau(ctx, tau)?.rep;
    let exponent = ctx.order() as i64 - (a * b) as i64;
    let order_test = ctx.ext2().unit_order_test(v, exponent, b)?;
    Ok(TauClass::Generic { signs, order_test })
}

/// A generator of the multiplicative group of F_{q^2}.
pub fn primitive_ext2(ctx: &FieldCtx) -> Ext2Elem {
    let e = ctx.ext2();
    let q = ctx.order();
    let order = q * q - 1;
    let factors = primes::factor(order);
    ctx.elements()
        .flat_map(|hi| ctx.elements().map(move |lo| Ext2Elem { lo, hi }))
        .find(|&g| g != e.zero() && factors.iter().all(|&(r, _)| e.pow(g, order / r) != e.one()))
        .expect("the multiplicative group is cyclic")
}

/// mu_d inside F_{q^2}, for d | q^2 - 1.
pub fn roots_of_unity(ctx: &FieldCtx, g: Ext2Elem, d: u64) -> Vec<Ext2Elem> {
    let e = ctx.ext2();
    let q = ctx.order();
    let h = e.pow(g, (q * q - 1) / d);
    let mut out = Vec::with_capacity(d as usize);
    let mut x = e.one();
    for _ in 0..d {
        out.push(x);
        x = e.mul(x, h);
    }
    out
}

/// mu_(2q-2) union mu_(2q+2), canonically sorted.
pub fn unit_group_elements(ctx: &FieldCtx) -> Vec<Ext2Elem> {
    let g = primitive_ext2(ctx);
    let q = ctx.order();
    let mut all = roots_of_unity(ctx, g, 2 * q - 2);
    all.extend(roots_of_unity(ctx, g, 2 * q + 2));
    all.sort();
    all.dedup();
    all
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub units: usize,
    pub orbits: usize,
    pub distinct_taus: usize,
    pub roundtrip: bool,
}

impl BijectionReport {
    pub fn is_bijection(&self, q: u64) -> bool {
        self.orbits as u64 == q && self.distinct_taus as u64 == q && self.roundtrip
    }
}

/// Groups the units into orbits, maps each orbit to tau and back.
pub fn check_bijection(ctx: &FieldCtx) -> Result<BijectionReport> {
    let e = ctx.ext2();
    let units = unit_group_elements(ctx);
    let mut orbits = BTreeMap::new();
    for &v in &units {
        let o = orbit_of(&e, v)?;
        orbits.entry(o.rep).or_insert(tau_of_orbit(ctx, v)?);
    }
    let mut taus: Vec<FieldElem> = orbits.values().copied().collect();
    taus.sort();
    taus.dedup();
    let mut roundtrip = true;
    for (rep, &tau) in &orbits {
        roundtrip &= orbit_of_tau(ctx, tau)?.rep == *rep;
    }
    Ok(BijectionReport { units: units.len(), orbits: orbits.len(), distinct_taus: taus.len(), roundtrip })
}

fn units_with_class(ctx: &FieldCtx, units: &[Ext2Elem], signs: SignPair) -> Vec<Ext2Elem> {
    let e = ctx.ext2();
    let (e1, e2) = (signs.e1.value(), signs.e2.value());
    let exponent = ctx.order() as i64 - (e1 * e2) as i64;
    units
        .iter()
        .copied()
        .filter(|&v| e.pow(v, 4) != e.one())
        .filter(|&v| e.unit_order_test(v, exponent, e2).expect("units are invertible"))
        .collect()
}

/// { (v - 1/v)^2/4 : v^(q - e1 e2) = e2, v^4 != 1 }, sorted and deduplicated.
pub fn a01_from_units(ctx: &FieldCtx, units: &[Ext2Elem], signs: SignPair) -> Result<Vec<FieldElem>> {
    let mut out = units_with_class(ctx, units, signs)
        .into_iter()
        .map(|v| tau_of_orbit(ctx, v))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// { v^2 + v^-2 : v^(q - e1 e2) = e2, v^4 != 1 }, sorted and deduplicated.
pub fn am22_from_units(ctx: &FieldCtx, units: &[Ext2Elem], signs: SignPair) -> Result<Vec<FieldElem>> {
    let e = ctx.ext2();
    let mut out = Vec::new();
    for v in units_with_class(ctx, units, signs) {
        let x = e.bracket(e.mul(v, v))?;
        out.push(e.to_base(x).ok_or_else(|| Error::Inconsistent("bracket left F_q".into()))?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// |A_{0,1}^{e1,e2}| counted on the unit side: the q + a solutions of
/// v^(q+a) = b (a = -e1 e2, b = e2) minus those of order dividing 4,
/// divided by the orbit size 4.
pub fn orbit_count_card(ctx: &FieldCtx, signs: SignPair) -> u64 {
    let e = ctx.ext2();
    let (e1, e2) = (signs.e1.value() as i64, signs.e2.value() as i64);
    let a = -e1 * e2;
    let total = ctx.order() as i64 + a;
    let i = e.sqrt_of_base(ctx.from_i64(-1));
    let mu4 = [e.one(), e.neg(e.one()), i, e.neg(i)];
    let fixed = mu4
        .iter()
        .filter(|&&v| e.unit_order_test(v, total, e2 as i8).expect("units are invertible"))
        .count() as i64;
    ((total - fixed) / 4) as u64
}

/// Branch choices realising w = (2 + i(v - 1/v)) / (v + 1/v).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VwBranch {
    pub v: Ext2Elem,
    pub i: Ext2Elem,
    pub w: Ext2Elem,
}

/// For tau outside {0, -1} with tau' = -tau/(tau+1), finds v in the orbit
/// of tau and a square root i of -1 such that the w above lies in the
/// orbit of tau' and w^2 + w^-2 = r. `None` if no branch works.
pub fn vw_relation(ctx: &FieldCtx, tau: FieldElem) -> Result<Option<VwBranch>> {
    let t1 = ctx.add(tau, ctx.one());
    if tau.is_zero() || t1.is_zero() {
        return Err(Error::Precondition("tau must avoid 0 and -1".into()));
    }
    let e = ctx.ext2();
    let frame = normalized_frame(ctx, ProjTau::Finite(tau))?;
    let w_orbit = orbit_of_tau(ctx, frame.tau_prime)?;
    let i0 = e.sqrt_of_base(ctx.from_i64(-1));
    let two = e.embed(ctx.from_i64(2));
    for v in orbit_of_tau(ctx, tau)?.members {
        let vi = e.inv(v)?;
        for i in [i0, e.neg(i0)] {
            let w = e.div(e.add(two, e.mul(i, e.sub(v, vi))), e.add(v, vi))?;
            let r = e.bracket(e.mul(w, w))?;
            if w_orbit.members.contains(&w) && r == e.embed(frame.r) {
                return Ok(Some(VwBranch { v, i, w }));
            }
        }
    }
    Ok(None)
}

/// For (tau|q) = (tau+1|q) = 1 and u + 1/u = r: returns (u^((q-eps)/4),
/// (1 + 1/c|q)) with c = sqrt(1 + 1/tau). The two agree.
pub fn quartic_unit_sign(ctx: &FieldCtx, tau: FieldElem, u: Ext2Elem, root: Sign) -> Result<(Ext2Elem, i8)> {
    let t1 = ctx.add(tau, ctx.one());
    if ctx.legendre(tau) != 1 || ctx.legendre(t1) != 1 {
        return Err(Error::ClassMismatch);
    }
    let e = ctx.ext2();
    let c = ctx.sqrt_canonical(ctx.div(t1, tau)?).expect("quotient of squares");
    let c = if root == Sign::Plus { c } else { ctx.neg(c) };
    let mu = ctx.legendre(ctx.add(ctx.one(), ctx.inv(c)?));
    Ok((e.pow(u, ctx.m()), mu))
}
