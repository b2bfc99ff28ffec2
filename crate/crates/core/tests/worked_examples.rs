//! Small hand-checked values, each confirmed by enumeration mod q.

use wilson_core::charsets::{brute_product, card_closed, enumerate_family, vanishing_poly, SetFamily, Sign, SignPair};
use wilson_core::closedform::{
    det_sqrt, legendre_triple_identity, normalized_frame, prod_s_single, prod_t_closed, quadruple_from_one,
    rescale_t, swap_factor, swap_t, table_rows, ProjTau, RootCase,
};
use wilson_core::correspondence::{classify_tau, orbit_of_tau, primitive_ext2, roots_of_unity, tau_of_orbit, TauClass};
use wilson_core::dickson::{dickson_first, dickson_second, eval};
use wilson_core::reciprocity::{
    prod_t_quadratic_irrational, radical_tower_membership, special_angle_bracket, sqrt2_tower_class, RadicalBase,
};
use wilson_core::{FieldCtx, FieldElem, Poly};

fn f(p: u64) -> FieldCtx {
    FieldCtx::new(p, 1).unwrap()
}

fn els(ctx: &FieldCtx, xs: &[i64]) -> Vec<FieldElem> {
    let mut v: Vec<_> = xs.iter().map(|&x| ctx.from_i64(x)).collect();
    v.sort();
    v
}

#[test]
fn field_parameters() {
    let f13 = f(13);
    assert_eq!((f13.order(), f13.eps(), f13.m()), (13, 1, 3));
    let f7 = f(7);
    assert_eq!((f7.order(), f7.eps(), f7.m()), (7, -1, 2));
    let f9 = FieldCtx::new(3, 2).unwrap();
    assert_eq!((f9.order(), f9.eps(), f9.m()), (9, 1, 2));
    // x^2 + 1 is the first irreducible monic quadratic over F_3
    assert_eq!(f9.modulus(), &[1, 0, 1]);
}

#[test]
fn arithmetic_and_roots() {
    let (f13, f17) = (f(13), f(17));
    assert_eq!(f17.mul(f17.from_i64(6), f17.from_i64(6)), f17.from_i64(2));
    assert_eq!(f13.inv(f13.from_i64(4)).unwrap(), f13.from_i64(10));
    assert_eq!(f13.legendre(f13.from_i64(3)), 1);
    assert_eq!(f13.legendre(f13.from_i64(5)), -1);
    assert_eq!(f13.legendre(f13.zero()), 0);
    assert_eq!(f13.sqrt_canonical(f13.from_i64(4)), Some(f13.from_i64(2)));
    assert_eq!(f17.sqrt_canonical(f17.from_i64(2)), Some(f17.from_i64(6)));
    assert_eq!(f13.sqrt_canonical(f13.from_i64(5)), None);
}

#[test]
fn units_in_the_quadratic_extension() {
    let f7 = f(7);
    let e = f7.ext2();
    assert_eq!(e.solve_unit(f7.from_i64(2)), e.one());
    let i = e.solve_unit(f7.zero());
    assert_eq!(e.mul(i, i), e.embed(f7.from_i64(-1)));
    let u = e.solve_unit(f7.one());
    assert_eq!(u, e.embed(f7.from_i64(3)));
    assert!(e.unit_order_test(u, 3, -1).unwrap());
    assert!(e.unit_order_test(i, 2, -1).unwrap());
    assert!(e.unit_order_test(u, 6, 1).unwrap());
}

#[test]
fn dickson_polynomials() {
    let f13 = f(13);
    assert_eq!(dickson_first(&f13, 3), Poly::from_ints(&f13, &[0, -3, 0, 1]));
    assert_eq!(dickson_first(&f13, 6), Poly::from_ints(&f13, &[-2, 0, 9, 0, -6, 0, 1]));
    assert_eq!(dickson_first(&f13, 0), Poly::from_ints(&f13, &[2]));
    assert_eq!(dickson_second(&f13, 2), Poly::from_ints(&f13, &[-1, 0, 1]));
    assert_eq!(dickson_second(&f13, 5), Poly::from_ints(&f13, &[0, 3, 0, -4, 0, 1]));
    assert_eq!(dickson_second(&f13, 0), Poly::from_ints(&f13, &[1]));
    assert!(eval(&f13, &dickson_first(&f13, 3), f13.from_i64(4)).is_zero());
    assert!(eval(&f13, &dickson_second(&f13, 2), f13.one()).is_zero());
    assert_eq!(eval(&f13, &dickson_first(&f13, 0), f13.from_i64(9)), f13.from_i64(2));
    let f23 = f(23);
    assert_eq!(vanishing_poly(&f13, SignPair::PP), Poly::from_ints(&f13, &[-1, 0, 1]));
    assert_eq!(vanishing_poly(&f23, SignPair::PM), dickson_first(&f23, 6));
    assert_eq!(vanishing_poly(&f23, SignPair::MP), dickson_second(&f23, 5));
}

#[test]
fn sets_products_and_sizes() {
    let (f5, f7, f13) = (f(5), f(7), f(13));
    let x = |c: &FieldCtx, v| c.from_i64(v);
    let a = SetFamily::A { k: x(&f13, -2), l: x(&f13, 2), signs: SignPair::MM };
    assert_eq!(enumerate_family(&f13, &a).unwrap(), els(&f13, &[0, 4, 9]));
    let t = SetFamily::T { j: x(&f5, 2), l: x(&f5, 2), signs: SignPair::MP };
    assert_eq!(enumerate_family(&f5, &t).unwrap(), els(&f5, &[4]));
    let s = SetFamily::S1 { k: f7.zero(), sign: Sign::Plus };
    assert_eq!(enumerate_family(&f7, &s).unwrap(), els(&f7, &[1, 2, 4]));

    let wilson = |c: &FieldCtx| {
        Sign::BOTH.iter().fold(c.one(), |acc, &sign| {
            let fam = SetFamily::S1 { k: c.zero(), sign };
            c.mul(acc, brute_product(c, &fam).unwrap().value)
        })
    };
    for c in [&f5, &f7, &f13] {
        assert_eq!(wilson(c), c.from_i64(-1));
    }
    let t13 = brute_product(&f5, &SetFamily::T { j: x(&f5, 1), l: x(&f5, 3), signs: SignPair::MM }).unwrap();
    assert_eq!((t13.value, t13.cardinality), (x(&f5, 4), 1));
    // a, a+1 both squares with a != 0 is empty at q = 5
    let empty = brute_product(&f5, &SetFamily::S2 { k: f5.zero(), l: f5.one(), signs: SignPair::PP }).unwrap();
    assert_eq!((empty.value, empty.cardinality), (f5.one(), 0));

    let card = |c: &FieldCtx, fam| card_closed(c, &fam).unwrap();
    assert_eq!(card(&f13, SetFamily::A { k: f13.zero(), l: f13.one(), signs: SignPair::PP }), 2);
    assert_eq!(card(&f13, SetFamily::A { k: f13.zero(), l: f13.one(), signs: SignPair::PM }), 3);
    assert_eq!(card(&f7, SetFamily::A { k: f7.zero(), l: f7.one(), signs: SignPair::MM }), 1);
    assert_eq!(card(&f7, SetFamily::S1 { k: f7.one(), sign: Sign::Plus }), 2);
}

#[test]
fn single_shift_products() {
    let (f7, f13) = (f(7), f(13));
    assert_eq!(prod_s_single(&f13, f13.zero(), Sign::Plus), f13.from_i64(12));
    assert_eq!(prod_s_single(&f7, f7.one(), Sign::Plus), f7.from_i64(3));
    assert_eq!(prod_s_single(&f13, f13.one(), Sign::Plus), f13.from_i64(7));
}

#[test]
fn relation_solver() {
    let f13 = f(13);
    let (k, l) = (f13.zero(), f13.from_i64(4));
    let quad = quadruple_from_one(&f13, k, l, SignPair::PP, f13.from_i64(3)).unwrap();
    assert_eq!(quad.0, [3, 12, 6, 11].map(|v| f13.from_i64(v)));

    let f7 = f(7);
    let (k, l) = (f7.from_i64(-4), f7.zero());
    let brute = SignPair::ALL.map(|s| brute_product(&f7, &SetFamily::S2 { k, l, signs: s }).unwrap().value);
    let quad = quadruple_from_one(&f7, k, l, SignPair::MM, brute[SignPair::MM.index()]).unwrap();
    assert_eq!(quad.0, brute);
}

#[test]
fn frames() {
    let f7 = f(7);
    let fr = normalized_frame(&f7, ProjTau::Finite(f7.zero())).unwrap();
    assert_eq!([fr.j, fr.k, fr.l, fr.r], [0, 0, 4, 2].map(|v| f7.from_i64(v)));
    let fr = normalized_frame(&f7, ProjTau::Infinity).unwrap();
    assert_eq!([fr.j, fr.k, fr.l, fr.r], [4, -4, 0, -2].map(|v| f7.from_i64(v)));
    let fr = normalized_frame(&f7, ProjTau::Finite(f7.from_i64(5))).unwrap();
    assert_eq!([fr.j, fr.l, fr.r], [1, 3, 1].map(|v| f7.from_i64(v)));
}

#[test]
fn deterministic_roots() {
    let f7 = f(7);
    let frame = |t| normalized_frame(&f7, ProjTau::Finite(f7.from_i64(t))).unwrap();
    let a3 = det_sqrt(&f7, &frame(5), RootCase::MinusMinus).unwrap();
    assert_eq!(a3.value, f7.from_i64(6));
    assert_eq!(f7.square(a3.value), frame(5).j);
    let a2 = det_sqrt(&f7, &frame(3), RootCase::MinusPlus).unwrap();
    assert_eq!(a2.value, f7.from_i64(6));
    assert_eq!(f7.square(a2.value), frame(3).l);
    let a1 = det_sqrt(&f7, &frame(2), RootCase::PlusMinus).unwrap();
    assert_eq!((a1.value, a1.root), (f7.from_i64(4), f7.from_i64(3)));
    assert_eq!(f7.square(a1.root), f7.from_i64(2));
}

#[test]
fn normalized_and_rescaled_products() {
    let f7 = f(7);
    let (j, l) = (f7.from_i64(2), f7.from_i64(2));
    let fr = normalized_frame(&f7, ProjTau::Finite(f7.one())).unwrap();
    assert_eq!((fr.j, fr.l), (j, l));
    assert_eq!(prod_t_closed(&f7, &fr, SignPair::MM).unwrap(), f7.from_i64(5));
    let fr = normalized_frame(&f7, ProjTau::Finite(f7.zero())).unwrap();
    assert_eq!(prod_t_closed(&f7, &fr, SignPair::MM).unwrap(), f7.from_i64(2));
    let fr = normalized_frame(&f7, ProjTau::Finite(f7.from_i64(5))).unwrap();
    assert_eq!(prod_t_closed(&f7, &fr, SignPair::MM).unwrap(), f7.from_i64(6));
    assert_eq!(rescale_t(&f7, f7.from_i64(4), f7.from_i64(4), SignPair::MM).unwrap(), f7.from_i64(6));
}

#[test]
fn swapping_shifts() {
    let f5 = f(5);
    let (j, l) = (f5.one(), f5.from_i64(3));
    assert_eq!(swap_factor(&f5, j, l, Sign::Minus).unwrap(), f5.from_i64(-1));
    assert_eq!(swap_t(&f5, j, l, Sign::Minus).unwrap(), f5.one());
    let f7 = f(7);
    let two = f7.from_i64(2);
    for mu in Sign::BOTH {
        assert_eq!(swap_t(&f7, two, two, mu).unwrap(), rescale_t(&f7, two, two, SignPair::new(mu, mu)).unwrap());
    }
}

#[test]
fn pythagorean_triple() {
    let f11 = f(11);
    let v = legendre_triple_identity(&f11, f11.from_i64(3), f11.from_i64(4), f11.from_i64(5)).unwrap();
    assert!(v.holds());
    assert_eq!((v.c_plus_a, v.two, v.c_plus_b), (-1, -1, 1));
}

#[test]
fn orbits() {
    let f7 = f(7);
    let e = f7.ext2();
    assert_eq!(tau_of_orbit(&f7, e.one()).unwrap(), f7.zero());
    let g = primitive_ext2(&f7);
    let zeta8 = roots_of_unity(&f7, g, 8).into_iter().find(|&z| e.pow(z, 4) != e.one()).unwrap();
    assert_eq!(tau_of_orbit(&f7, zeta8).unwrap(), f7.div(f7.from_i64(-1), f7.from_i64(2)).unwrap());
    let omega = roots_of_unity(&f7, g, 3).into_iter().find(|&w| w != e.one()).unwrap();
    let minus_three_quarters = f7.div(f7.from_i64(-3), f7.from_i64(4)).unwrap();
    assert_eq!(minus_three_quarters, f7.one());
    assert_eq!(tau_of_orbit(&f7, omega).unwrap(), minus_three_quarters);
    let orbit = orbit_of_tau(&f7, minus_three_quarters).unwrap();
    assert!(orbit.members.contains(&e.neg(omega)));
    assert_eq!(tau_of_orbit(&f7, e.neg(omega)).unwrap(), f7.one());

    let zero = orbit_of_tau(&f7, f7.zero()).unwrap();
    let mut members = zero.members.to_vec();
    members.dedup();
    let mut want = vec![e.one(), e.neg(e.one())];
    want.sort();
    assert_eq!(members, want);
}

#[test]
fn tau_classes() {
    let f13 = f(13);
    let t = f13.div(f13.from_i64(-3), f13.from_i64(4)).unwrap();
    assert_eq!(classify_tau(&f13, t).unwrap(), TauClass::Generic { signs: SignPair::PP, order_test: true });
    for q in [11, 19] {
        let c = f(q);
        let t = c.div(c.from_i64(-1), c.from_i64(2)).unwrap();
        let signs = SignPair::new(
            Sign::from_i8(c.legendre(t)).unwrap(),
            Sign::from_i8(c.legendre(c.add(t, c.one()))).unwrap(),
        );
        assert_eq!(classify_tau(&c, t).unwrap(), TauClass::Generic { signs, order_test: true });
    }
}

#[test]
fn square_class_of_two_plus_root_two() {
    for (q, root) in [(17, 6), (7, 3), (23, 5)] {
        let c = sqrt2_tower_class(&f(q));
        assert!(c.sqrt2_in_field && c.holds(), "q={q}");
        let ctx = f(q);
        let r = ctx.from_i64(root);
        assert_eq!(ctx.square(r), ctx.from_i64(2));
        let predicted = if q % 16 == 1 || q % 16 == 15 { 1 } else { -1 };
        assert_eq!(ctx.legendre(ctx.add(ctx.from_i64(2), r)), predicted, "q={q}");
    }
}

#[test]
fn radical_towers() {
    let r = radical_tower_membership(&f(17), RadicalBase::Sqrt2, 2).unwrap();
    assert_eq!(r.computed, [true, true, false]);
    assert!(r.agrees());
    let r = radical_tower_membership(&f(11), RadicalBase::Sqrt3, 1).unwrap();
    assert_eq!(r.computed, [true, false]);
    assert!(r.agrees());
    let r = radical_tower_membership(&f(11), RadicalBase::Golden, 1).unwrap();
    assert_eq!(r.computed, [true, false]);
    assert!(r.agrees());
}

#[test]
fn brackets_of_special_angles() {
    let f7 = f(7);
    let b8 = special_angle_bracket(&f7, 8).unwrap();
    let v = b8.value.unwrap();
    assert!(v == f7.from_i64(3) || v == f7.from_i64(4));
    assert_eq!(f7.square(v), f7.from_i64(2));
    let b12 = special_angle_bracket(&f(5), 12).unwrap();
    assert_eq!(b12.value, None);
    assert!(b12.relation_holds && b12.agrees());
    let f11 = f(11);
    let b10 = special_angle_bracket(&f11, 10).unwrap();
    assert!(b10.agrees());
    let v = b10.value.unwrap();
    // the two primitive 10th-root brackets are the roots of x^2 - x - 1
    assert!(v == f11.from_i64(4) || v == f11.from_i64(8));
}

#[test]
fn products_with_quadratic_irrational_shifts() {
    let find = |q, base, s: SignPair| {
        prod_t_quadratic_irrational(&f(q), base).unwrap().into_iter().filter(|c| c.signs == s).collect::<Vec<_>>()
    };
    let f17 = f(17);
    for c in find(17, RadicalBase::Sqrt2, SignPair::MM) {
        assert!(c.holds());
        assert_eq!(c.brute, f17.from_i64(15));
    }
    let f41 = f(41);
    let cases = find(41, RadicalBase::Sqrt2, SignPair::PP);
    assert_eq!(cases.len(), 2);
    for c in cases {
        assert!(c.holds());
        assert_eq!(c.brute, f41.neg(c.b));
    }
    let f11 = f(11);
    let cases = find(11, RadicalBase::Golden, SignPair::PP);
    assert!(!cases.is_empty());
    for c in cases {
        assert!(c.holds());
        if c.b == f11.from_i64(4) {
            assert_eq!(c.brute, f11.from_i64(4));
        }
    }
}

#[test]
fn rendered_tables() {
    let f7 = f(7);
    let t2 = table_rows(&f7, 2).unwrap();
    let row = t2.iter().find(|r| r.tau == ProjTau::Finite(f7.one())).unwrap();
    assert_eq!((row.closed[3], row.brute[3]), (f7.from_i64(5), f7.from_i64(5)));
    let t4 = table_rows(&f7, 4).unwrap();
    assert!(t4.iter().all(|r| r.closed == r.brute));
    let f13 = f(13);
    let t1 = table_rows(&f13, 1).unwrap();
    let row = t1.iter().find(|r| r.tau == ProjTau::Finite(f13.zero())).unwrap();
    assert_eq!(row.closed, [3, 12, 6, 11].map(|v| f13.from_i64(v)));
}
