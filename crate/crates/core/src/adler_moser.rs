//! Polynomial chain, Wronskian tau functions and rational potentials.
//!
//! The chain starts at x and each step is a double integral of the last
//! with zero linear constants and a fresh free constant s3, s5, ... at the
//! bottom. Wronskians of initial segments give tau polynomials whose
//! second logarithmic derivative (times 2) is a rational potential. The
//! two-sided recursion between consecutive tau functions is certified
//! exactly on request.

use crate::mpoly::MPoly;
use crate::ratfun::RatFun;
use crate::scalar::{rat_int, Rational};
use crate::symbol::Sym;
use crate::wronskian::wronskian;

/// Largest chain index representable in the fixed symbol table.
pub const MAX_CHAIN: usize = 10;

/// First k chain polynomials: x, x^3/6 + s3, x^5/120 + s3 x^2/2 + s5, ...
/// Each entry satisfies f'' = previous entry.
pub fn chain(k: usize) -> Vec<MPoly> {
    assert!(k <= MAX_CHAIN, "chain index exceeds the symbol table");
    let mut fns: Vec<MPoly> = Vec::with_capacity(k);
    for j in 1..=k {
        let f = if j == 1 {
            MPoly::var(Sym::X)
        } else {
            let prev = &fns[j - 2];
            let dd = prev.integrate_var(Sym::X).integrate_var(Sym::X);
            &dd + &MPoly::var(Sym::s_const(2 * j - 1))
        };
        fns.push(f);
    }
    fns
}

/// Wronskian of the first k chain polynomials; k = 0 gives 1.
pub fn theta(k: usize) -> MPoly {
    wronskian(&chain(k))
}

/// Rational potential 2 (log theta_k)'' = 2 (theta'' theta - theta'^2) / theta^2.
pub fn potential(k: usize) -> RatFun {
    let t = theta(k);
    if t.is_constant() {
        return RatFun::zero();
    }
    let t1 = t.deriv_x();
    let t2 = t1.deriv_x();
    let num = (&(&t2 * &t) - &(&t1 * &t1)).scale(&rat_int(2));
    RatFun::from_factored(num, vec![(t, 2)]).expect("theta is nonzero")
}

/// The constant c with t_next' t_prev - t_next t_prev' = c * t_mid^2, if
/// the left side is an exact constant multiple of the right.
pub fn recursion_constant(t_prev: &MPoly, t_mid: &MPoly, t_next: &MPoly) -> Option<Rational> {
    let lhs = &(&t_next.deriv_x() * t_prev) - &(t_next * &t_prev.deriv_x());
    let sq = t_mid * t_mid;
    lhs.try_divexact(&sq)?.as_constant()
}

/// Rescale so the highest power of x has coefficient 1. The leading
/// x-coefficient of a tau polynomial is a rational number, never a
/// polynomial in the free constants.
pub fn monic_in_x(p: &MPoly) -> MPoly {
    let d = p.degree_in(Sym::X);
    let mut lead = rat_int(0);
    for (m, c) in p.iter() {
        if m.exponent(Sym::X) == d && u16::try_from(m.degree()).ok() == Some(d) {
            lead = c.clone();
        }
    }
    assert!(lead != rat_int(0), "no pure power of x at top degree");
    p.scale(&(rat_int(1) / lead))
}
