//! Multivariate gcd over the rationals.
//!
//! Strategy: strip monomial content, try exact-division quick paths (one
//! input dividing the other covers the very common power-of-a-factor case),
//! use dense Euclid when both inputs are univariate in the same symbol, and
//! fall back to a subresultant pseudo-remainder sequence in a chosen main
//! variable with contents handled by recursion in fewer variables. Before
//! the sequence runs, an integer evaluation probe settles the coprime case:
//! any common factor survives an evaluation that keeps a leading
//! coefficient alive, so a constant image gcd certifies that the primitive
//! parts share nothing.
//!
//! Results are monic: the leading coefficient under graded lex is 1. The
//! gcd of two zero polynomials is zero.

use crate::mpoly::MPoly;
use crate::scalar::{rat_int, Rational};
use crate::symbol::Sym;
use num::traits::Zero;

/// Scale to leading coefficient 1.
pub fn monic(p: &MPoly) -> MPoly {
    match p.leading() {
        None => MPoly::zero(),
        Some((_, c)) => {
            if *c == rat_int(1) {
                p.clone()
            } else {
                p.scale(&(rat_int(1) / c))
            }
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd_mpoly(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return monic(b);
    }
    if b.is_zero() {
        return monic(a);
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mc = ma.gcd(&mb);
    let a1 = a.divexact(&MPoly::term(ma, rat_int(1)));
    let b1 = b.divexact(&MPoly::term(mb, rat_int(1)));
    let g = gcd_stripped(&a1, &b1);
    monic(&g.mul_monomial(&mc))
}

fn gcd_stripped(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    if a.try_divexact(b).is_some() {
        return monic(b);
    }
    if b.try_divexact(a).is_some() {
        return monic(a);
    }
    let sa = a.support();
    let sb = b.support();
    let common: Vec<Sym> = sa.iter().copied().filter(|s| sb.contains(s)).collect();
    if common.is_empty() {
        return MPoly::one();
    }
    if sa.len() == 1 && sb == sa {
        return gcd_univariate(a, b, sa[0]);
    }
    // main variable: smallest divisor degree keeps the sequence short
    let v = *common
        .iter()
        .min_by_key(|s| a.degree_in(**s).min(b.degree_in(**s)))
        .expect("nonempty");
    let ca = a.as_univar(v);
    let cb = b.as_univar(v);
    let cont_a = content(&ca);
    let cont_b = content(&cb);
    let pp_a: Vec<MPoly> = ca.iter().map(|c| c.divexact(&cont_a)).collect();
    let pp_b: Vec<MPoly> = cb.iter().map(|c| c.divexact(&cont_b)).collect();
    let cont_g = gcd_mpoly(&cont_a, &cont_b);
    if coprime_by_evaluation(&pp_a, &pp_b) {
        return cont_g;
    }
    let g = prs(pp_a, pp_b, v);
    &g * &cont_g
}

/// Exact coprimality certificate for primitive coefficient vectors in a
/// shared main variable. A common factor g satisfies lc(g) | lc(a), so an
/// evaluation point with lc(a) alive keeps deg g intact in the image, and
/// the image gcd bounds it. A constant image gcd therefore forces g to be
/// free of the main variable, hence a unit by primitivity.
fn coprime_by_evaluation(pa: &[MPoly], pb: &[MPoly]) -> bool {
    for round in 0..3u64 {
        let pt = |s: Sym| -> Rational {
            const POINTS: [i64; 12] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
            let i = s.index() as u64;
            rat_int(POINTS[((i * 7 + round * 5) % POINTS.len() as u64) as usize])
        };
        let la = eval_mpoly(pa.last().expect("nonzero"), &pt);
        let lb = eval_mpoly(pb.last().expect("nonzero"), &pt);
        if la.is_zero() && lb.is_zero() {
            continue;
        }
        let fa: Vec<Rational> = pa.iter().map(|c| eval_mpoly(c, &pt)).collect();
        let fb: Vec<Rational> = pb.iter().map(|c| eval_mpoly(c, &pt)).collect();
        let g = dense_euclid(fa, fb);
        if g.len() == 1 {
            return true;
        }
    }
    false
}

fn eval_mpoly(p: &MPoly, pt: &dyn Fn(Sym) -> Rational) -> Rational {
    let mut acc = Rational::zero();
    for (m, c) in p.iter() {
        let mut t = c.clone();
        for s in Sym::all() {
            let e = m.exponent(s);
            if e > 0 {
                t *= num::pow::pow(pt(s), e as usize);
            }
        }
        acc += t;
    }
    acc
}

/// Gcd of the coefficient list, the content of a univariate view.
fn content(coeffs: &[MPoly]) -> MPoly {
    let mut g = MPoly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd_mpoly(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Subresultant pseudo-remainder sequence on primitive inputs; returns the
/// monic gcd of the two. The Brown divisors g h^d keep every division along
/// the sequence exact, so no content is ever computed on an intermediate
/// remainder; only the final element is freed of its content.
fn prs(mut a: Vec<MPoly>, mut b: Vec<MPoly>, v: Sym) -> MPoly {
    trim(&mut a);
    trim(&mut b);
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        let delta = deg(&a) - deg(&b);
        let r = prem(&a, &b, delta);
        if r.is_empty() {
            let bp = MPoly::from_univar(v, &b);
            return monic(&bp.divexact(&contents_of(&b)));
        }
        if deg(&r) == 0 {
            // both inputs are primitive, so a common divisor free of the
            // main variable must be trivial
            return MPoly::one();
        }
        let divisor = &g * &h.pow(delta as u32);
        let reduced: Vec<MPoly> = r.iter().map(|c| c.divexact(&divisor)).collect();
        a = b;
        b = reduced;
        g = a.last().expect("nonzero").clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32).divexact(&h.pow(delta as u32 - 1))
        };
    }
}

fn contents_of(coeffs: &[MPoly]) -> MPoly {
    let g = content(coeffs);
    if g.is_zero() {
        MPoly::one()
    } else {
        g
    }
}

fn deg(p: &[MPoly]) -> usize {
    p.len().saturating_sub(1)
}

fn trim(p: &mut Vec<MPoly>) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

/// Pseudo-remainder of a by b in the main variable, normalized to exactly
/// lc(b)^(delta + 1) * a mod b with delta = deg a - deg b. The subresultant
/// divisors assume this precise power, so a degree drop of more than one
/// per step is compensated at the end.
fn prem(a: &[MPoly], b: &[MPoly], delta: usize) -> Vec<MPoly> {
    let db = deg(b);
    let lb = b.last().expect("b nonzero").clone();
    let mut r: Vec<MPoly> = a.to_vec();
    trim(&mut r);
    let mut steps = 0usize;
    while !r.is_empty() && deg(&r) >= db {
        let dr = deg(&r);
        let lr = r.last().expect("r nonzero").clone();
        let shift = dr - db;
        // r = lb*r - lr * v^shift * b
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            let t = &lr * bc;
            r[i + shift] = &r[i + shift] - &t;
        }
        trim(&mut r);
        steps += 1;
        debug_assert!(r.is_empty() || deg(&r) < dr);
    }
    for _ in steps..=delta {
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
    }
    r
}

/// Dense Euclid over the rationals; returns the last nonzero remainder.
fn dense_euclid(mut f: Vec<Rational>, mut g: Vec<Rational>) -> Vec<Rational> {
    let dtrim = |p: &mut Vec<Rational>| {
        while p.last().map(|c| c.is_zero()).unwrap_or(false) {
            p.pop();
        }
    };
    dtrim(&mut f);
    dtrim(&mut g);
    while !g.is_empty() {
        let dg = g.len() - 1;
        let lg = g.last().expect("nonzero").clone();
        while f.len() >= g.len() && !f.is_empty() {
            let df = f.len() - 1;
            let q = f.last().expect("nonzero") / &lg;
            for i in 0..=dg {
                let t = &g[i] * &q;
                f[df - dg + i] -= t;
            }
            dtrim(&mut f);
        }
        std::mem::swap(&mut f, &mut g);
    }
    f
}

/// Dense Euclid for inputs univariate in one symbol.
fn gcd_univariate(a: &MPoly, b: &MPoly, v: Sym) -> MPoly {
    let to_dense = |p: &MPoly| -> Vec<Rational> {
        p.as_univar(v)
            .into_iter()
            .map(|c| c.as_constant().expect("univariate coefficient"))
            .collect()
    };
    let f = dense_euclid(to_dense(a), to_dense(b));
    let mut out = MPoly::zero();
    for (e, c) in f.iter().enumerate() {
        out.add_term(crate::monomial::Monomial::var_pow(v, e as u16), c.clone());
    }
    monic(&out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MPoly {
        MPoly::var(Sym::X)
    }
    fn y() -> MPoly {
        MPoly::var(Sym::Y)
    }

    #[test]
    fn shared_factor() {
        let p = &(&x() + &y()).pow(2) * &(&x() - &y());
        let q = &(&x() + &y()) * &(&x() - &y()).pow(2);
        let g = gcd_mpoly(&p, &q);
        assert_eq!(g, &(&x() + &y()) * &(&x() - &y()));
    }

    #[test]
    fn coprime() {
        let p = &x() + &MPoly::one();
        let q = &y() + &MPoly::one();
        assert_eq!(gcd_mpoly(&p, &q), MPoly::one());
    }

    #[test]
    fn power_quick_path() {
        let theta = &x().pow(3) - &MPoly::var(Sym::s_const(3)).scale(&rat_int(3));
        let g = gcd_mpoly(&theta.pow(3), &theta.pow(2));
        assert_eq!(g, monic(&theta.pow(2)));
    }

    #[test]
    fn univariate_euclid() {
        // (x^2 - 1) and (x^2 - 2x + 1) share (x - 1)
        let p = &x().pow(2) - &MPoly::one();
        let q = &(&x().pow(2) - &x().scale(&rat_int(2))) + &MPoly::one();
        assert_eq!(gcd_mpoly(&p, &q), &x() - &MPoly::one());
    }

    #[test]
    fn monomial_content_contributes() {
        let p = (&x().pow(2) * &y()).scale(&rat_int(4));
        let q = &x() * &y().pow(2);
        assert_eq!(gcd_mpoly(&p, &q), &x() * &y());
    }

    #[test]
    fn zero_conventions() {
        let p = x().scale(&rat_int(7));
        assert_eq!(gcd_mpoly(&MPoly::zero(), &p), x());
        assert_eq!(gcd_mpoly(&MPoly::zero(), &MPoly::zero()), MPoly::zero());
    }

    #[test]
    fn content_recursion_multivar() {
        // y*(x+y) and y^2*(x+y)^2 in two variables
        let p = &y() * &(&x() + &y());
        let q = &y().pow(2) * &(&x() + &y()).pow(2);
        assert_eq!(gcd_mpoly(&p, &q), &y() * &(&x() + &y()));
    }
}
