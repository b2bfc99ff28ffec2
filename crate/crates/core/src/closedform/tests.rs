use super::*;
use crate::charsets::{brute_product, enumerate_family, SetFamily, Sign, SignPair};
use crate::ffield::FieldCtx;
use crate::primes::odd_prime_powers;
use proptest::prelude::*;

fn fields(qmax: u64) -> Vec<FieldCtx> {
    odd_prime_powers(3, qmax, 6).into_iter().map(|(p, n, _)| FieldCtx::new(p, n).unwrap()).collect()
}

fn taus(ctx: &FieldCtx) -> Vec<ProjTau> {
    let m1 = ctx.from_i64(-1);
    ctx.elements().filter(|&t| t != m1).map(ProjTau::Finite).chain([ProjTau::Infinity]).collect()
}

fn brute_t(ctx: &FieldCtx, j: FieldElem, l: FieldElem, s: SignPair) -> FieldElem {
    brute_product(ctx, &SetFamily::T { j, l, signs: s }).unwrap().value
}

#[test]
fn single_shift_products() {
    for f in fields(200) {
        for k in f.elements() {
            for s in Sign::BOTH {
                let brute = brute_product(&f, &SetFamily::S1 { k, sign: s }).unwrap().value;
                assert_eq!(prod_s_single(&f, k, s), brute, "q={} k={}", f.order(), f.format(k));
            }
        }
    }
}

#[test]
fn normalized_rows_match_enumeration() {
    for f in fields(130) {
        for tau in taus(&f) {
            let frame = normalized_frame(&f, tau).unwrap();
            let row = closed_t_row(&f, &frame).unwrap();
            for s in SignPair::ALL {
                assert_eq!(
                    row.values[s.index()],
                    brute_t(&f, frame.j, frame.l, s),
                    "q={} tau={} {s} {:?}",
                    f.order(),
                    tau.format(&f),
                    row.rule
                );
            }
        }
    }
}

#[test]
fn frame_relations() {
    for f in fields(60) {
        assert_eq!(normalized_frame(&f, ProjTau::Finite(f.from_i64(-1))), Err(Error::TauMinusOne));
        for tau in taus(&f) {
            let fr = normalized_frame(&f, tau).unwrap();
            assert_eq!(f.add(fr.j, fr.l), f.from_i64(4));
            assert_eq!(fr.r, f.sub(fr.l, f.from_i64(2)));
            assert_eq!(fr.r, f.sub(f.from_i64(2), fr.j));
            assert_eq!(frame_from_pair(&f, fr.j, fr.l).unwrap(), fr);
            if let ProjTau::Finite(t) = tau {
                let back = f.div(f.sub(f.from_i64(2), fr.r), f.add(f.from_i64(2), fr.r)).unwrap();
                assert_eq!(back, t);
            }
        }
    }
}

#[test]
fn rescaling_every_pair_small_fields() {
    for f in fields(32) {
        for jp in f.elements() {
            for lp in f.elements() {
                if f.add(jp, lp).is_zero() {
                    assert_eq!(rescale_t(&f, jp, lp, SignPair::PP), Err(Error::OppositeShifts));
                    continue;
                }
                for s in SignPair::ALL {
                    assert_eq!(rescale_t(&f, jp, lp, s).unwrap(), brute_t(&f, jp, lp, s), "q={}", f.order());
                }
            }
        }
    }
}

#[test]
fn rescaling_exponent_never_negative() {
    // m - beta - gamma counts a set, so the power of lambda is never
    // negative; q = 3 (m = 1) is the tightest case.
    for f in fields(60) {
        for jp in f.elements() {
            for lp in f.elements() {
                let sum = f.add(jp, lp);
                if sum.is_zero() {
                    continue;
                }
                let nu = f.legendre(sum);
                for s in SignPair::ALL {
                    let (e1, e2) = (s.e1.value(), s.e2.value());
                    let beta = f.legendre(jp) == e1 && f.legendre(lp) == e2;
                    let eps = f.eps();
                    let gamma = (nu == eps * e1 && nu == e2) || (-eps == nu * e1 && nu * e1 == 1);
                    let exponent = f.m() as i64 - beta as i64 - gamma as i64;
                    let card = enumerate_family(&f, &SetFamily::T { j: jp, l: lp, signs: s }).unwrap().len();
                    assert!(exponent >= 0);
                    // the exponent is the size of the normalized set
                    let lam = f.div(sum, f.from_i64(4)).unwrap();
                    let jn = f.div(jp, lam).unwrap();
                    let ln = f.div(lp, lam).unwrap();
                    let inner = SignPair::new(s.e1.times(nu), s.e2.times(nu));
                    let ncard = enumerate_family(&f, &SetFamily::T { j: jn, l: ln, signs: inner }).unwrap().len();
                    assert_eq!(card, ncard);
                    assert_eq!(exponent as usize, card, "q={}", f.order());
                }
            }
        }
    }
}

#[test]
fn pair_and_a_products() {
    for f in [FieldCtx::new(11, 1).unwrap(), FieldCtx::new(3, 2).unwrap(), FieldCtx::new(13, 1).unwrap()] {
        for k in f.elements() {
            for l in f.elements() {
                if k == l {
                    continue;
                }
                for s in SignPair::ALL {
                    for fam in [SetFamily::S2 { k, l, signs: s }, SetFamily::A { k, l, signs: s }] {
                        let want = brute_product(&f, &fam).unwrap().value;
                        assert_eq!(closed_product(&f, &fam).unwrap(), want);
                    }
                }
            }
        }
    }
}

#[test]
fn worked_values() {
    let f13 = FieldCtx::new(13, 1).unwrap();
    let t = |f: &FieldCtx, j, l, s| rescale_t(f, f.from_i64(j), f.from_i64(l), s).unwrap();
    assert_eq!(t(&f13, 1, 3, SignPair::MM), f13.from_i64(2));
    let f7 = FieldCtx::new(7, 1).unwrap();
    assert_eq!(t(&f7, 0, 4, SignPair::MM), f7.from_i64(2));
    assert_eq!(t(&f7, 1, 3, SignPair::MM), f7.from_i64(-1));
    let f5 = FieldCtx::new(5, 1).unwrap();
    assert_eq!(t(&f5, 1, 3, SignPair::MM), f5.from_i64(4));
    assert_eq!(swap_factor(&f5, f5.from_i64(1), f5.from_i64(3), Sign::Minus).unwrap(), f5.from_i64(-1));
    assert_eq!(swap_t(&f5, f5.from_i64(1), f5.from_i64(3), Sign::Minus).unwrap(), f5.from_i64(1));
    assert_eq!(t(&f5, 3, 1, SignPair::MM), f5.from_i64(1));
}

#[test]
fn quadruple_at_13() {
    let f = FieldCtx::new(13, 1).unwrap();
    let (k, l) = (f.zero(), f.from_i64(4));
    let quad = quadruple_from_one(&f, k, l, SignPair::PP, f.from_i64(3)).unwrap();
    let want = [3, 12, 6, 11].map(|x| f.from_i64(x));
    assert_eq!(quad.0, want);
    for s in SignPair::ALL {
        let brute = brute_product(&f, &SetFamily::S2 { k, l, signs: s }).unwrap().value;
        assert_eq!(quad.get(s), brute);
    }
}

#[test]
fn quadruple_solver_everywhere() {
    for f in fields(50) {
        for k in f.elements() {
            for l in f.elements().step_by(2) {
                if k == l {
                    continue;
                }
                let brute: Vec<_> = SignPair::ALL
                    .iter()
                    .map(|&s| brute_product(&f, &SetFamily::S2 { k, l, signs: s }).unwrap().value)
                    .collect();
                for s in SignPair::ALL {
                    let quad = quadruple_from_one(&f, k, l, s, brute[s.index()]).unwrap();
                    assert_eq!(quad.0.to_vec(), brute, "q={}", f.order());
                }
            }
        }
    }
}

#[test]
fn swap_everywhere() {
    for f in fields(40) {
        for j in f.elements() {
            for l in f.elements() {
                if f.add(j, l).is_zero() {
                    continue;
                }
                for mu in Sign::BOTH {
                    let s = SignPair::new(mu, mu);
                    assert_eq!(swap_t(&f, j, l, mu).unwrap(), brute_t(&f, l, j, s));
                }
            }
        }
    }
}

#[test]
fn deterministic_roots_at_7() {
    let f = FieldCtx::new(7, 1).unwrap();
    let fr = |t| normalized_frame(&f, ProjTau::Finite(f.from_i64(t))).unwrap();
    let d = det_sqrt(&f, &fr(2), RootCase::PlusMinus).unwrap();
    assert_eq!((d.value, d.root), (f.from_i64(4), f.from_i64(3)));
    let d = det_sqrt(&f, &fr(3), RootCase::MinusPlus).unwrap();
    assert_eq!(d.value, f.from_i64(6));
    assert_eq!(f.ext2().solve_unit(fr(3).r), f.ext2().embed(f.from_i64(2)));
    let d = det_sqrt(&f, &fr(5), RootCase::MinusMinus).unwrap();
    assert_eq!(d.value, f.from_i64(6));
    assert_eq!(det_sqrt(&f, &fr(1), RootCase::MinusMinus), Err(Error::ClassMismatch));
}

#[test]
fn deterministic_roots_ignore_unit_choice() {
    for f in fields(200) {
        let e = f.ext2();
        for tau in taus(&f) {
            let fr = normalized_frame(&f, tau).unwrap();
            for case in [RootCase::PlusMinus, RootCase::MinusPlus, RootCase::MinusMinus] {
                let Ok(d) = det_sqrt(&f, &fr, case) else { continue };
                let u = e.solve_unit(fr.r);
                let d2 = det_sqrt_with_unit(&f, &fr, case, e.inv(u).unwrap()).unwrap();
                assert_eq!(d, d2);
            }
        }
    }
}

#[test]
fn root_squares_of_the_generic_products() {
    for f in fields(200) {
        for tau in taus(&f) {
            let fr = normalized_frame(&f, tau).unwrap();
            let row = closed_t_row(&f, &fr).unwrap();
            if !row.rule.is_generic_class() {
                continue;
            }
            let (jc, lc) = (f.legendre(fr.j), f.legendre(fr.l));
            match (jc, lc) {
                (1, -1) => assert_eq!(f.square(row.values[3]), fr.j),
                (-1, 1) => assert_eq!(f.square(row.values[3]), fr.l),
                (-1, -1) => {
                    assert_eq!(f.square(row.values[1]), f.div(fr.j, fr.l).unwrap())
                }
                _ => {}
            }
        }
    }
}

#[test]
fn plus_plus_class_is_branch_free() {
    for f in fields(300) {
        for tau in taus(&f) {
            let ProjTau::Finite(t) = tau else { continue };
            if f.legendre(t) != 1 || f.legendre(f.add(t, f.one())) != 1 {
                continue;
            }
            let fr = normalized_frame(&f, tau).unwrap();
            let c = plus_plus_class(&f, &fr, Sign::Plus, Sign::Plus).unwrap();
            for root in Sign::BOTH {
                for s in Sign::BOTH {
                    assert_eq!(plus_plus_class(&f, &fr, root, s).unwrap(), c);
                }
            }
            // 1 +- 1/sqrt(1 + 1/tau) carries an extra (2|q)
            let c2 = f.sqrt_canonical(f.add(f.one(), f.inv(t).unwrap())).unwrap();
            let x = f.add(f.one(), f.inv(c2).unwrap());
            assert_eq!(f.legendre(x), f.legendre(f.from_i64(2)) * c);
        }
    }
}

#[test]
fn special_rows_agree_with_class_rows() {
    let mut overlaps = 0;
    for f in fields(400) {
        let m1 = f.from_i64(-1);
        for tau in f.nonzero_elements().filter(|&t| t != m1) {
            let fr = normalized_frame(&f, ProjTau::Finite(tau)).unwrap();
            let dispatched = closed_t_row(&f, &fr).unwrap();
            let class = class_row(&f, &fr).unwrap();
            assert_eq!(dispatched.values, class.values, "q={} tau={}", f.order(), f.format(tau));
            if dispatched.rule != class.rule {
                overlaps += 1;
            }
        }
    }
    assert!(overlaps > 100);
}

#[test]
fn character_identities() {
    for f in fields(300) {
        let two = f.legendre(f.from_i64(2));
        for t in f.nonzero_elements() {
            let t1 = f.add(t, f.one());
            let prod = f.mul(t, t1);
            if f.legendre(prod) == 1 {
                let s = f.sqrt_canonical(prod).unwrap();
                for root in [s, f.neg(s)] {
                    let x = f.add(f.add(f.mul(f.from_i64(2), t), f.one()), f.mul(f.from_i64(2), root));
                    assert_eq!(f.legendre(x), f.legendre(t));
                }
            }
        }
        // (2 +- sqrt j | q) = (2|q)(2 +- sqrt l | q) on j + l = 4
        for j in f.elements() {
            let l = f.sub(f.from_i64(4), j);
            let (Some(sj), Some(sl)) = (f.sqrt_canonical(j), f.sqrt_canonical(l)) else { continue };
            if j.is_zero() || l.is_zero() {
                continue;
            }
            for a in [sj, f.neg(sj)] {
                for b in [sl, f.neg(sl)] {
                    let lhs = f.legendre(f.add(f.from_i64(2), a));
                    let rhs = f.legendre(f.add(f.from_i64(2), b));
                    assert_eq!(lhs, two * rhs);
                }
            }
        }
    }
}

#[test]
fn pythagorean_character_identity() {
    for f in fields(150) {
        for a in f.nonzero_elements() {
            for b in f.nonzero_elements() {
                let c2 = f.add(f.square(a), f.square(b));
                let Some(c) = f.sqrt_canonical(c2) else { continue };
                for c in [c, f.neg(c)] {
                    let v = legendre_triple_identity(&f, a, b, c).unwrap();
                    assert!(v.holds(), "q={} {v:?}", f.order());
                }
            }
        }
    }
    let f = FieldCtx::new(7, 1).unwrap();
    assert!(legendre_triple_identity(&f, f.zero(), f.one(), f.one()).is_err());
    assert!(legendre_triple_identity(&f, f.one(), f.one(), f.one()).is_err());
}

#[test]
fn unit_forms_of_pair_products() {
    for f in fields(200) {
        let e = f.ext2();
        let eps = f.eps();
        let s1 = SignPair::new(Sign::Plus.times(-eps), Sign::Minus);
        let s2 = SignPair::new(Sign::Plus.times(eps), Sign::Plus);
        let (m2, p2) = (f.from_i64(-2), f.from_i64(2));
        for r in f.elements() {
            let u = e.solve_unit(r);
            let k = f.sub(r, p2);
            let l = f.add(r, p2);
            let in_a = |s: SignPair| SetFamily::A { k: m2, l: p2, signs: s }.contains(&f, r);
            if !in_a(s1) {
                let brute = brute_product(&f, &SetFamily::S2 { k, l, signs: s1 }).unwrap().value;
                assert_eq!(unit_product(&f, u, s1).unwrap(), brute);
                assert_eq!(unit_product(&f, e.inv(u).unwrap(), s1).unwrap(), brute);
            }
            if !in_a(s2) && r != p2 && r != m2 {
                let brute = brute_product(&f, &SetFamily::S2 { k, l, signs: s2 }).unwrap().value;
                assert_eq!(unit_product(&f, u, s2).unwrap(), brute);
            }
        }
    }
}

#[test]
fn tables_render_and_agree() {
    let f = FieldCtx::new(13, 1).unwrap();
    let rows = table_rows(&f, 1).unwrap();
    let zero = rows.iter().find(|r| r.tau == ProjTau::Finite(f.zero())).unwrap();
    assert_eq!(zero.closed, [3, 12, 6, 11].map(|x| f.from_i64(x)));
    for id in 1..=4 {
        for row in table_rows(&f, id).unwrap() {
            assert_eq!(row.closed, row.brute);
        }
    }
    let f7 = FieldCtx::new(7, 1).unwrap();
    let rows = table_rows(&f7, 4).unwrap();
    assert!(rows.iter().all(|r| r.rule.is_generic_class()));
    let taus: Vec<_> = rows.iter().map(|r| r.tau).collect();
    assert_eq!(taus, [2, 3, 4, 5].map(|t| ProjTau::Finite(f7.from_i64(t))));
    let tau1 = table_rows(&f7, 2).unwrap().into_iter().find(|r| r.tau == ProjTau::Finite(f7.one())).unwrap();
    assert_eq!(tau1.closed[SignPair::MM.index()], f7.from_i64(5));
    assert!(table_rows(&f7, 5).is_err());
}

proptest! {
    #[test]
    fn random_unnormalized_pairs(idx in 0usize..8, j in any::<u32>(), l in any::<u32>(), s in 0usize..4) {
        let q = [3u64, 9, 25, 27, 49, 81, 121, 343][idx];
        let f = FieldCtx::with_order(q).unwrap();
        let (j, l) = (f.from_code(j as u64 % q).unwrap(), f.from_code(l as u64 % q).unwrap());
        prop_assume!(!f.add(j, l).is_zero());
        let s = SignPair::ALL[s];
        prop_assert_eq!(rescale_t(&f, j, l, s).unwrap(), brute_t(&f, j, l, s));
    }
}
