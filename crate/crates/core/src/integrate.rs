//! Exact integration of rational functions in one variable.
//!
//! The antiderivative of a rational function splits into a polynomial
//! part, a rational part, and a transcendental (logarithmic) part. This
//! module computes the first two exactly by Hermite reduction and reports a
//! typed obstruction when the logarithmic part is nonzero, instead of ever
//! approximating. The integration constant is fixed to zero.

use crate::error::ExactError;
use crate::ratfun::RatFun;
use crate::symbol::Sym;
use crate::unipoly::{split_ratfun, UniPoly};

/// Antiderivative of `f` with respect to `var`, if it is again a rational
/// function. Errors with [`ExactError::LogObstruction`] when a logarithmic
/// term would be required.
///
/// The input must not involve the jet symbols: they abbreviate unknown
/// functions of x, so a rational antiderivative in x cannot be formed for
/// them.
pub fn rational_integrate(f: &RatFun, var: Sym) -> Result<RatFun, ExactError> {
    for i in 0..=crate::symbol::MAX_JET {
        assert!(
            !f.depends_on(Sym::jet(i)),
            "rational integration over a jet symbol is not defined"
        );
    }
    if f.is_zero() {
        return Ok(RatFun::zero());
    }
    let (num, den) = split_ratfun(f, var);
    // monic denominator over the coefficient field
    let lc = den.leading().expect("denominator nonzero").clone();
    let lc_inv = lc.recip().expect("leading coefficient nonzero");
    let num = num.scale(&lc_inv);
    let den = den.monic();

    let (poly, mut a) = num.divrem(&den);
    let mut result = poly.integrate().to_ratfun();

    if a.is_zero() {
        return Ok(result);
    }

    // squarefree split of the denominator; Hermite reduction strips the
    // higher multiplicities one at a time
    let mut factors = den.squarefree();
    while let Some(pos) = factors.iter().position(|(_, m)| *m >= 2) {
        let (v, m) = factors[pos].clone();
        let mut u = UniPoly::one(var);
        for (i, (w, mw)) in factors.iter().enumerate() {
            let e = if i == pos { 0 } else { *mw };
            for _ in 0..e {
                u = u.mul(w);
            }
        }
        // one reduction step on a / (u v^m):
        //   a/(u v^m) = d/dx( -b / ((m-1) v^(m-1)) ) + a' / (u v^(m-1))
        // with b = a s mod v, s the inverse of u v' modulo v, and
        //   a' = c + b' u / (m-1),  c = (a - b u v') / v.
        let dv = v.deriv();
        let uv = u.mul(&dv).rem(&v);
        let (g, s, _) = uv.xgcd(&v);
        assert!(
            g.is_constant() && !g.is_zero(),
            "squarefree factor shares a root with its cofactor"
        );
        let s = s.scale(&g.coeff(0).recip().expect("nonzero"));
        let b = a.mul(&s).rem(&v);
        let c = a.sub(&b.mul(&u).mul(&dv)).divexact(&v);
        let m1 = RatFun::from_int((m - 1) as i64);
        let a_next = c.add(&b.deriv().mul(&u).scale(&m1.recip().expect("nonzero")));

        // accumulated rational part: -b / ((m-1) v^(m-1))
        let v_rf = v.to_ratfun();
        let mut v_pow = RatFun::one();
        for _ in 0..(m - 1) {
            v_pow = &v_pow * &v_rf;
        }
        let term = b
            .to_ratfun()
            .try_div(&(&m1 * &v_pow))
            .expect("denominator nonzero");
        result = &result - &term;

        a = a_next;
        factors[pos].1 = m - 1;
    }

    if a.is_zero() {
        return Ok(result);
    }
    // remaining proper part has a squarefree denominator; a nonzero
    // numerator means nonzero residues, hence logarithms
    Err(ExactError::LogObstruction)
}
