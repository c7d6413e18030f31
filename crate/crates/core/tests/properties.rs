//! Randomized laws for the exact arithmetic layers: ring and field
//! axioms, the adjoint anti-homomorphism, composition associativity
//! under truncation floors, square-root self-consistency, and the
//! transport certificates on polynomial potentials.

use kdvheat_core::scalar::{rat, Rational};
use kdvheat_core::{hadamard_table, sqrt_l, DiffOp, Floor, MPoly, PsiDo, RatFun, Sym};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn poly_in(syms: &'static [Sym], max_terms: usize, max_deg: u16) -> impl Strategy<Value = MPoly> {
    prop::collection::vec(
        (small_rat(), prop::collection::vec(0..=max_deg, syms.len())),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        let mut p = MPoly::zero();
        for (c, exps) in terms {
            let mut m = MPoly::one();
            for (s, e) in syms.iter().zip(exps) {
                m = &m * &MPoly::var_pow(*s, e);
            }
            p = &p + &m.scale(&c);
        }
        p
    })
}

const XY: &[Sym] = &[Sym::X, Sym::Y];
const X_ONLY: &[Sym] = &[Sym::X];

fn poly_xy() -> impl Strategy<Value = MPoly> {
    poly_in(XY, 4, 3)
}

fn nonzero_poly_xy() -> impl Strategy<Value = MPoly> {
    poly_xy().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfun_x() -> impl Strategy<Value = RatFun> {
    (
        poly_in(X_ONLY, 3, 2),
        poly_in(X_ONLY, 3, 2).prop_filter("nonzero", |p| !p.is_zero()),
    )
        .prop_map(|(n, d)| {
            RatFun::from_mpoly(n)
                .try_div(&RatFun::from_mpoly(d))
                .expect("nonzero denominator")
        })
}

fn poly_ratfun_x() -> impl Strategy<Value = RatFun> {
    poly_in(X_ONLY, 3, 2).prop_map(RatFun::from_mpoly)
}

fn diffop() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec(ratfun_x(), 1..=3).prop_map(DiffOp::new)
}

fn psido() -> impl Strategy<Value = PsiDo> {
    (diffop(), prop::option::of((1i64..=2, ratfun_x()))).prop_map(|(op, tail)| {
        let base = PsiDo::from_diffop(&op);
        match tail {
            None => base,
            Some((k, c)) => base.add(&PsiDo::monomial(-k, c).truncate(-3)),
        }
    })
}

/// Truncate both operands to the less informative of their floors so
/// equality compares only certified orders.
fn common_truncate(a: &PsiDo, b: &PsiDo) -> (PsiDo, PsiDo) {
    let floor_of = |p: &PsiDo| match p.floor() {
        Floor::Exact => None,
        Floor::Truncated(f) => Some(f),
    };
    match (floor_of(a), floor_of(b)) {
        (None, None) => (a.clone(), b.clone()),
        (Some(f), None) | (None, Some(f)) => (a.truncate(f), b.truncate(f)),
        (Some(fa), Some(fb)) => {
            let f = fa.max(fb);
            (a.truncate(f), b.truncate(f))
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn mpoly_ring_axioms(a in poly_xy(), b in poly_xy(), c in poly_xy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn mpoly_exact_division_roundtrip(a in poly_xy(), b in nonzero_poly_xy()) {
        let prod = &a * &b;
        prop_assert_eq!(prod.try_divexact(&b), Some(a));
    }

    #[test]
    fn mpoly_derivative_product_rule(a in poly_xy(), b in poly_xy()) {
        let lhs = (&a * &b).deriv_x();
        let rhs = &(&a.deriv_x() * &b) + &(&a * &b.deriv_x());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ratfun_field_axioms(a in ratfun_x(), b in ratfun_x(), c in ratfun_x()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            let q = a.try_div(&b).expect("nonzero divisor");
            prop_assert_eq!(&q * &b, a);
        }
    }

    #[test]
    fn ratfun_derivative_quotient_consistency(a in ratfun_x(), b in ratfun_x()) {
        let lhs = (&a * &b).dx();
        let rhs = &(&a.dx() * &b) + &(&a * &b.dx());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn adjoint_reverses_composition(p in diffop(), q in diffop()) {
        prop_assert_eq!(p.compose(&q).adjoint(), q.adjoint().compose(&p.adjoint()));
        prop_assert_eq!(p.adjoint().adjoint(), p);
    }

    #[test]
    fn psido_compose_associative(a in psido(), b in psido(), c in psido()) {
        let lhs = a.compose(&b).compose(&c);
        let rhs = a.compose(&b.compose(&c));
        let (l, r) = common_truncate(&lhs, &rhs);
        prop_assert_eq!(l, r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sqrt_l_self_consistency(u in ratfun_x(), depth in 2u32..=4) {
        let s = sqrt_l(&u, depth);
        prop_assert_eq!(s.floor(), Floor::Truncated(-(depth as i64)));
        let l = PsiDo::from_diffop(&DiffOp::schrodinger(&u));
        let defect = l.sub(&s.compose(&s));
        // every certified order of the defect vanishes
        prop_assert!(defect.iter().next().is_none());
    }

    #[test]
    fn transport_resubstitution(u in poly_ratfun_x()) {
        let table = hadamard_table(&u, 3).expect("polynomial potentials integrate");
        prop_assert!(table.verify_transport().is_ok());
    }

    #[test]
    fn hadamard_symmetry(u in poly_ratfun_x()) {
        let table = hadamard_table(&u, 3).expect("polynomial potentials integrate");
        prop_assert!(table.verify_symmetry().is_ok());
    }
}
