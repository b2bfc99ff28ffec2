//! Dickson polynomials of the first and second kind over F_q.
//!
//! D_0 = 2, D_1 = x, D_{k+2} = x D_{k+1} - D_k;
//! E_0 = 1, E_1 = x, E_{k+2} = x E_{k+1} - E_k.

use crate::ffield::{FieldCtx, FieldElem};
pub use crate::poly::Poly;

fn recurrence(ctx: &FieldCtx, k: u64, first: Poly) -> Poly {
    if k == 0 {
        return first;
    }
    let x = Poly::x(ctx);
    let (mut prev, mut cur) = (first, x.clone());
    for _ in 1..k {
        let next = x.mul(ctx, &cur).sub(ctx, &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// D_k, characterised by D_k(u + 1/u) = u^k + u^-k.
pub fn dickson_first(ctx: &FieldCtx, k: u64) -> Poly {
    recurrence(ctx, k, Poly::constant(ctx.from_i64(2)))
}

/// E_k, characterised by E_k(u + 1/u) = (u^(k+1) - u^-(k+1)) / (u - 1/u).
pub fn dickson_second(ctx: &FieldCtx, k: u64) -> Poly {
    recurrence(ctx, k, Poly::constant(ctx.one()))
}

pub fn eval(ctx: &FieldCtx, poly: &Poly, x: FieldElem) -> FieldElem {
    poly.eval(ctx, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charsets::{vanishing_poly, SignPair};
    use crate::ffield::Ext2Elem;

    #[test]
    fn small_cases_in_integers() {
        let f = FieldCtx::new(101, 1).unwrap();
        assert_eq!(dickson_first(&f, 3), Poly::from_ints(&f, &[0, -3, 0, 1]));
        assert_eq!(dickson_first(&f, 4), Poly::from_ints(&f, &[2, 0, -4, 0, 1]));
        assert_eq!(dickson_second(&f, 2), Poly::from_ints(&f, &[-1, 0, 1]));
        assert_eq!(dickson_second(&f, 5), Poly::from_ints(&f, &[0, 3, 0, -4, 0, 1]));
        assert_eq!(dickson_first(&f, 6), Poly::from_ints(&f, &[-2, 0, 9, 0, -6, 0, 1]));
        assert_eq!(dickson_first(&f, 0), Poly::from_ints(&f, &[2]));
        assert_eq!(dickson_second(&f, 0), Poly::from_ints(&f, &[1]));
    }

    #[test]
    fn vanishing_polys_at_13_and_23() {
        let f = FieldCtx::new(13, 1).unwrap();
        assert_eq!(vanishing_poly(&f, SignPair::PP), Poly::from_ints(&f, &[-1, 0, 1]));
        assert_eq!(vanishing_poly(&f, SignPair::MM), Poly::from_ints(&f, &[0, -3, 0, 1]));
        assert_eq!(vanishing_poly(&f, SignPair::PP), dickson_second(&f, 2));
        assert_eq!(vanishing_poly(&f, SignPair::MM), dickson_first(&f, 3));
        let f = FieldCtx::new(23, 1).unwrap();
        assert_eq!(vanishing_poly(&f, SignPair::MP), Poly::from_ints(&f, &[0, 3, 0, -4, 0, 1]));
        assert_eq!(vanishing_poly(&f, SignPair::PM), Poly::from_ints(&f, &[-2, 0, 9, 0, -6, 0, 1]));
        assert_eq!(vanishing_poly(&f, SignPair::MP), dickson_second(&f, 5));
        assert_eq!(vanishing_poly(&f, SignPair::PM), dickson_first(&f, 6));
    }

    #[test]
    fn functional_equations_in_quadratic_extension() {
        for q in [3u64, 5, 9, 13, 27, 49] {
            let f = FieldCtx::with_order(q).unwrap();
            let e = f.ext2();
            let units: Vec<Ext2Elem> = f
                .elements()
                .flat_map(|a| f.elements().map(move |b| Ext2Elem { lo: a, hi: b }))
                .filter(|&u| u != e.zero())
                .step_by(7)
                .collect();
            for k in 0..12u64 {
                let d = dickson_first(&f, k);
                let s = dickson_second(&f, k);
                for &u in &units {
                    let r = e.bracket(u).unwrap();
                    let Some(r) = e.to_base(r) else { continue };
                    let uk = e.pow(u, k);
                    let want = e.add(uk, e.inv(uk).unwrap());
                    assert_eq!(e.embed(eval(&f, &d, r)), want, "q={q} k={k}");
                    let diff = e.sub(u, e.inv(u).unwrap());
                    if diff != e.zero() {
                        let uk1 = e.pow(u, k + 1);
                        let num = e.sub(uk1, e.inv(uk1).unwrap());
                        assert_eq!(e.embed(eval(&f, &s, r)), e.div(num, diff).unwrap());
                    }
                }
            }
        }
    }
}
