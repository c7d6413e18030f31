//! Rational functions in canonical reduced form.
//!
//! Canonical form: gcd(num, den) = 1, den monic under graded lex, zero is
//! 0/1. Structural equality is therefore mathematical equality.
//!
//! Alongside the expanded canonical denominator, each value carries a
//! multiplicative splitting of it (`factors`). The splitting is what keeps
//! reduction cheap: common factors between a numerator and a denominator
//! are discovered by gcds against the small factor bases instead of one
//! large polynomial gcd, and bases are refined (split) on the fly when a
//! gcd exposes structure. The splitting never influences the value or
//! equality; it is a certificate-preserving cache.

use crate::error::ExactError;
use crate::gcd::{gcd_mpoly, monic};
use crate::mpoly::MPoly;
use crate::scalar::{rat_int, Rational};
use crate::symbol::Sym;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

type Factors = Vec<(MPoly, u32)>;

#[derive(Clone, Debug)]
pub struct RatFun {
    num: MPoly,
    den: MPoly,
    factors: Factors,
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}
impl Eq for RatFun {}

impl RatFun {
    pub fn zero() -> RatFun {
        RatFun {
            num: MPoly::zero(),
            den: MPoly::one(),
            factors: Vec::new(),
        }
    }

    pub fn one() -> RatFun {
        RatFun::from_mpoly(MPoly::one())
    }

    pub fn from_int(n: i64) -> RatFun {
        RatFun::from_mpoly(MPoly::from_int(n))
    }

    pub fn from_rat(r: Rational) -> RatFun {
        RatFun::from_mpoly(MPoly::constant(r))
    }

    pub fn var(s: Sym) -> RatFun {
        RatFun::from_mpoly(MPoly::var(s))
    }

    pub fn from_mpoly(p: MPoly) -> RatFun {
        RatFun {
            num: p,
            den: MPoly::one(),
            factors: Vec::new(),
        }
    }

    /// General constructor; reduces to canonical form with one full gcd.
    pub fn new(num: MPoly, den: MPoly) -> Result<RatFun, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        RatFun::from_factored(num, vec![(den, 1)])
    }

    /// Constructor for a denominator with known multiplicative structure:
    /// den = prod base^exp. Reduction only ever gcds against the bases.
    pub fn from_factored(num: MPoly, factors: Factors) -> Result<RatFun, ExactError> {
        let mut scale = rat_int(1);
        let mut fac: Factors = Vec::new();
        for (base, e) in factors {
            if e == 0 {
                continue;
            }
            if base.is_zero() {
                return Err(ExactError::ZeroDenominator);
            }
            if let Some(c) = base.as_constant() {
                let mut cp = rat_int(1);
                for _ in 0..e {
                    cp *= &c;
                }
                scale *= cp;
                continue;
            }
            let lc = base.leading_coeff();
            if lc != rat_int(1) {
                let mut cp = rat_int(1);
                for _ in 0..e {
                    cp *= &lc;
                }
                scale *= cp;
                fac.push((monic(&base), e));
            } else {
                fac.push((base, e));
            }
        }
        let num = num.scale(&(rat_int(1) / scale));
        let mut out = RatFun {
            num,
            den: product_of(&fac),
            factors: fac,
        };
        out.reduce();
        Ok(out)
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Numerator viewed as a polynomial; None when a denominator remains.
    pub fn as_mpoly(&self) -> Option<&MPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn depends_on(&self, s: Sym) -> bool {
        self.num.depends_on(s) || self.den.depends_on(s)
    }

    /// Divide out every factor the numerator shares with the denominator's
    /// factor bases, splitting bases whenever a gcd exposes structure.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = MPoly::one();
            self.factors.clear();
            return;
        }
        let mut i = 0;
        while i < self.factors.len() {
            let base = self.factors[i].0.clone();
            let g = gcd_mpoly(&self.num, &base);
            if g.is_constant() {
                i += 1;
                continue;
            }
            if g == base {
                let e = self.factors[i].1;
                let mut m = 0;
                while m < e {
                    match self.num.try_divexact(&base) {
                        Some(q) => {
                            self.num = q;
                            m += 1;
                        }
                        None => break,
                    }
                }
                for _ in 0..m {
                    self.den = self.den.divexact(&base);
                }
                if m == e {
                    self.factors.remove(i);
                } else {
                    // the leftover numerator may still share a proper
                    // factor of this base; retry the same slot
                    self.factors[i].1 = e - m;
                }
            } else {
                // proper factor: split the base and retry against the part
                let h = base.divexact(&g);
                let e = self.factors[i].1;
                self.factors[i] = (g, e);
                self.factors.insert(i + 1, (monic(&h), e));
            }
        }
        debug_assert!(self.den.leading_coeff() == rat_int(1));
        debug_assert_eq!(product_of(&self.factors), self.den);
    }

    pub fn neg_ref(&self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
            factors: self.factors.clone(),
        }
    }

    fn add_impl(&self, other: &RatFun) -> RatFun {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFun::from_mpoly(&self.num + &other.num);
        }
        if self.den == other.den {
            let num = &self.num + &other.num;
            let mut out = RatFun {
                num,
                den: self.den.clone(),
                factors: self.factors.clone(),
            };
            out.reduce();
            return out;
        }
        let mut fa = self.factors.clone();
        let mut fb = other.factors.clone();
        refine_lists(&mut fa, &mut fb);
        // common part (the denominator gcd) base by base
        let mut b_over: MPoly = self.den.clone(); // b / d1
        let mut d_over: MPoly = other.den.clone(); // d / d1
        let mut merged: Factors = Vec::new();
        let mut fb_used = vec![0u32; fb.len()];
        for (base_a, ea) in &fa {
            let mut e_common = 0u32;
            for (j, (base_b, eb)) in fb.iter().enumerate() {
                if base_a == base_b {
                    let avail = *eb - fb_used[j];
                    let take = (*ea - e_common).min(avail);
                    fb_used[j] += take;
                    e_common += take;
                    if e_common == *ea {
                        break;
                    }
                }
            }
            for _ in 0..e_common {
                b_over = b_over.divexact(base_a);
            }
            merged.push((base_a.clone(), *ea));
        }
        for (j, (base_b, eb)) in fb.iter().enumerate() {
            for _ in 0..fb_used[j] {
                d_over = d_over.divexact(base_b);
            }
            let extra = *eb - fb_used[j];
            if extra > 0 {
                merge_factor(&mut merged, base_b, extra);
            }
        }
        // lcm denominator: den_a * (den_b / common)
        let num = &(&self.num * &d_over) + &(&other.num * &b_over);
        let den = &self.den * &d_over;
        let mut out = RatFun {
            num,
            den,
            factors: merged,
        };
        out.reduce();
        out
    }

    fn mul_impl(&self, other: &RatFun) -> RatFun {
        if self.is_zero() || other.is_zero() {
            return RatFun::zero();
        }
        // cross-reduce each numerator against the other denominator
        let mut a = RatFun {
            num: self.num.clone(),
            den: other.den.clone(),
            factors: other.factors.clone(),
        };
        a.reduce();
        let mut b = RatFun {
            num: other.num.clone(),
            den: self.den.clone(),
            factors: self.factors.clone(),
        };
        b.reduce();
        let num = &a.num * &b.num;
        let den = &a.den * &b.den;
        let mut factors = a.factors;
        for (base, e) in b.factors {
            merge_factor(&mut factors, &base, e);
        }
        RatFun { num, den, factors }
    }

    pub fn recip(&self) -> Result<RatFun, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        let lc = self.num.leading_coeff();
        let den = monic(&self.num);
        let num = self.den.scale(&(rat_int(1) / lc));
        let factors = if den.is_constant() {
            Vec::new()
        } else {
            vec![(den.clone(), 1)]
        };
        Ok(RatFun { num, den, factors })
    }

    pub fn try_div(&self, other: &RatFun) -> Result<RatFun, ExactError> {
        Ok(self.mul_impl(&other.recip()?))
    }

    pub fn pow(&self, k: u32) -> RatFun {
        if k == 0 {
            return RatFun::one();
        }
        RatFun {
            num: self.num.pow(k),
            den: self.den.pow(k),
            factors: self
                .factors
                .iter()
                .map(|(b, e)| (b.clone(), e * k))
                .collect(),
        }
    }

    pub fn pow_i(&self, k: i64) -> Result<RatFun, ExactError> {
        if k >= 0 {
            Ok(self.pow(k as u32))
        } else {
            Ok(self.recip()?.pow((-k) as u32))
        }
    }

    /// Derivative. For s = x this is the total derivative: jet symbols
    /// differentiate along the chain u<i> -> u<i+1>.
    pub fn deriv(&self, s: Sym) -> RatFun {
        let d = |p: &MPoly| -> MPoly {
            if s == Sym::X {
                p.deriv_x()
            } else {
                p.deriv_partial(s)
            }
        };
        if self.den.is_one() {
            return RatFun::from_mpoly(d(&self.num));
        }
        // (N / prod f^e)' = (N' R - N * sum e_i f_i' R/f_i) / (den * R)
        // with R the product of the bases taken once each
        let mut radical = MPoly::one();
        for (b, _) in &self.factors {
            radical = &radical * b;
        }
        let mut num = &d(&self.num) * &radical;
        for (i, (b, e)) in self.factors.iter().enumerate() {
            let db = d(b);
            if db.is_zero() {
                continue;
            }
            let mut cof = MPoly::one();
            for (j, (bj, _)) in self.factors.iter().enumerate() {
                if j != i {
                    cof = &cof * bj;
                }
            }
            let t = &(&self.num * &db) * &cof;
            num -= &t.scale(&rat_int(*e as i64));
        }
        let den = &self.den * &radical;
        let mut factors = self.factors.clone();
        for f in factors.iter_mut() {
            f.1 += 1;
        }
        let mut out = RatFun { num, den, factors };
        out.reduce();
        out
    }

    /// Total x-derivative, shorthand for deriv(x).
    pub fn dx(&self) -> RatFun {
        self.deriv(Sym::X)
    }

    /// Substitute a rational value for a symbol. Errors if the denominator
    /// vanishes under the substitution.
    pub fn subst_rat(&self, s: Sym, v: &Rational) -> Result<RatFun, ExactError> {
        let num = self.num.subst_rat(s, v);
        let factors: Factors = self
            .factors
            .iter()
            .map(|(b, e)| (b.subst_rat(s, v), *e))
            .collect();
        RatFun::from_factored(num, factors)
    }

    /// Replace one symbol by another everywhere, e.g. evaluate at x = y.
    /// Errors if the denominator collapses to zero.
    pub fn rename(&self, from: Sym, to: Sym) -> Result<RatFun, ExactError> {
        let num = self.num.rename(from, to);
        let factors: Factors = self
            .factors
            .iter()
            .map(|(b, e)| (b.rename(from, to), *e))
            .collect();
        RatFun::from_factored(num, factors)
    }

    /// Exchange two symbols. A bijective renaming cannot create new common
    /// factors, so only normalization is needed.
    pub fn swap_syms(&self, a: Sym, b: Sym) -> RatFun {
        let num = self.num.swap_syms(a, b);
        let factors: Factors = self
            .factors
            .iter()
            .map(|(base, e)| (base.swap_syms(a, b), *e))
            .collect();
        let mut scale = rat_int(1);
        let mut fac: Factors = Vec::new();
        for (base, e) in factors {
            let lc = base.leading_coeff();
            let mut cp = rat_int(1);
            for _ in 0..e {
                cp *= &lc;
            }
            scale *= cp;
            fac.push((monic(&base), e));
        }
        let den = self
            .den
            .swap_syms(a, b)
            .scale(&(rat_int(1) / scale.clone()));
        RatFun {
            num: num.scale(&(rat_int(1) / scale)),
            den,
            factors: fac,
        }
    }

    /// Divide by base^k with cheap per-base reduction.
    pub fn div_by_power(&self, base: &MPoly, k: u32) -> Result<RatFun, ExactError> {
        if base.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        let d = RatFun::from_factored(MPoly::one(), vec![(base.clone(), k)])?;
        Ok(self.mul_impl(&d))
    }
}

fn product_of(factors: &Factors) -> MPoly {
    let mut den = MPoly::one();
    for (b, e) in factors {
        for _ in 0..*e {
            den = &den * b;
        }
    }
    den
}

fn merge_factor(list: &mut Factors, base: &MPoly, e: u32) {
    for (b, ee) in list.iter_mut() {
        if b == base {
            *ee += e;
            return;
        }
    }
    list.push((base.clone(), e));
}

/// Refine two factor lists until every cross pair of bases is either equal
/// or coprime. Splitting a base never changes the product, so denominators
/// stay untouched.
fn refine_lists(fa: &mut Factors, fb: &mut Factors) {
    dedupe(fa);
    dedupe(fb);
    loop {
        let mut split_done = false;
        'scan: for i in 0..fa.len() {
            for j in 0..fb.len() {
                if fa[i].0 == fb[j].0 {
                    continue;
                }
                let g = gcd_mpoly(&fa[i].0, &fb[j].0);
                if g.is_constant() {
                    continue;
                }
                if g != fa[i].0 {
                    let h = monic(&fa[i].0.divexact(&g));
                    let e = fa[i].1;
                    fa[i] = (g.clone(), e);
                    if !h.is_constant() {
                        fa.push((h, e));
                    }
                }
                if g != fb[j].0 {
                    let h = monic(&fb[j].0.divexact(&g));
                    let e = fb[j].1;
                    fb[j] = (g, e);
                    if !h.is_constant() {
                        fb.push((h, e));
                    }
                }
                split_done = true;
                break 'scan;
            }
        }
        if !split_done {
            break;
        }
        dedupe(fa);
        dedupe(fb);
    }
}

fn dedupe(list: &mut Factors) {
    let mut i = 0;
    while i < list.len() {
        let mut j = i + 1;
        while j < list.len() {
            if list[i].0 == list[j].0 {
                list[i].1 += list[j].1;
                list.remove(j);
            } else {
                j += 1;
            }
        }
        i += 1;
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        self.add_impl(rhs)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self.add_impl(&rhs.neg_ref())
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        self.mul_impl(rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        self.neg_ref()
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::fmt_ratfun(self))
    }
}

impl FromStr for RatFun {
    type Err = crate::text::ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::text::parse_ratfun(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn x() -> RatFun {
        RatFun::var(Sym::X)
    }
    fn y() -> RatFun {
        RatFun::var(Sym::Y)
    }
    fn xp() -> MPoly {
        MPoly::var(Sym::X)
    }
    fn yp() -> MPoly {
        MPoly::var(Sym::Y)
    }

    #[test]
    fn construction_reduces() {
        // (x^2 - y^2) / (x - y) = x + y
        let f = RatFun::new(&xp().pow(2) - &yp().pow(2), &xp() - &yp()).unwrap();
        assert_eq!(f, &x() + &y());
        assert!(f.is_polynomial());
    }

    #[test]
    fn reduction_revisits_partially_divided_factor() {
        // (x-1)^2 (x+1) over (x^2-1)^2: one exact division by the base
        // leaves a numerator still sharing (x-1) with it
        let xm1 = &xp() - &MPoly::one();
        let xp1 = &xp() + &MPoly::one();
        let base = &xm1 * &xp1;
        let num = &xm1.pow(2) * &xp1;
        let f = RatFun::from_factored(num, vec![(base, 2)]).unwrap();
        assert_eq!(f, RatFun::from_mpoly(xp1).recip().unwrap());
    }

    #[test]
    fn den_is_monic() {
        // 1 / (2x) has canonical form (1/2)/x
        let f = RatFun::new(MPoly::one(), xp().scale(&rat_int(2))).unwrap();
        assert_eq!(f.den(), &xp());
        assert_eq!(f.num(), &MPoly::constant(rat(1, 2)));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RatFun::new(MPoly::one(), MPoly::zero()),
            Err(ExactError::ZeroDenominator)
        );
    }

    #[test]
    fn field_identities() {
        let f = RatFun::new(MPoly::one(), &xp() - &yp()).unwrap();
        let g = RatFun::new(xp(), &xp() + &yp()).unwrap();
        let s = &f + &g;
        assert_eq!(&s - &g, f);
        let p = &f * &g;
        assert_eq!(p.try_div(&g).unwrap(), f);
        assert_eq!(&f - &f, RatFun::zero());
        assert_eq!(f.try_div(&f).unwrap(), RatFun::one());
    }

    #[test]
    fn add_common_denominator_structure() {
        // 1/x + 1/y = (x + y)/(x*y)
        let f = RatFun::new(MPoly::one(), xp()).unwrap();
        let g = RatFun::new(MPoly::one(), yp()).unwrap();
        let s = &f + &g;
        assert_eq!(s.num(), &(&xp() + &yp()));
        assert_eq!(s.den(), &(&xp() * &yp()));
    }

    #[test]
    fn add_cancellation() {
        // x/(x-y) + y/(y-x) = (x - y)/(x - y) = 1
        let f = RatFun::new(xp(), &xp() - &yp()).unwrap();
        let g = RatFun::new(yp(), &yp() - &xp()).unwrap();
        assert_eq!(&f + &g, RatFun::one());
    }

    #[test]
    fn quotient_rule() {
        // d/dx (x/(x - y)) = -y/(x - y)^2
        let f = RatFun::new(xp(), &xp() - &yp()).unwrap();
        let d = f.deriv(Sym::X);
        let expect = RatFun::new(-&yp(), (&xp() - &yp()).pow(2)).unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn total_derivative_uses_jets() {
        // d/dx (1/u0) = -u1/u0^2
        let u0 = MPoly::var(Sym::jet(0));
        let f = RatFun::new(MPoly::one(), u0.clone()).unwrap();
        let d = f.dx();
        let expect = RatFun::new(-&MPoly::var(Sym::jet(1)), u0.pow(2)).unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn rename_detects_pole() {
        let f = RatFun::new(MPoly::one(), &xp() - &yp()).unwrap();
        assert_eq!(f.rename(Sym::X, Sym::Y), Err(ExactError::ZeroDenominator));
        let g = RatFun::new(MPoly::one(), &xp() * &yp()).unwrap();
        let gy = g.rename(Sym::X, Sym::Y).unwrap();
        assert_eq!(gy, RatFun::new(MPoly::one(), yp().pow(2)).unwrap());
    }

    #[test]
    fn swap_renormalizes() {
        // 1/(x + 2y) swapped is 1/(y + 2x): denominator re-monicized
        let f = RatFun::new(MPoly::one(), &xp() + &yp().scale(&rat_int(2))).unwrap();
        let g = f.swap_syms(Sym::X, Sym::Y);
        let expect = RatFun::new(MPoly::one(), &xp().scale(&rat_int(2)) + &yp()).unwrap();
        assert_eq!(g, expect);
    }

    #[test]
    fn subst_rat_pole() {
        let f = RatFun::new(MPoly::one(), &xp() - &MPoly::from_int(2)).unwrap();
        assert_eq!(
            f.subst_rat(Sym::X, &rat_int(2)),
            Err(ExactError::ZeroDenominator)
        );
        assert_eq!(f.subst_rat(Sym::X, &rat_int(3)).unwrap(), RatFun::one());
    }

    #[test]
    fn powers() {
        let f = RatFun::new(MPoly::one(), xp()).unwrap();
        let p = f.pow_i(-2).unwrap();
        assert_eq!(p, RatFun::from_mpoly(xp().pow(2)));
        let q = f.pow(3);
        assert_eq!(q.den(), &xp().pow(3));
    }

    #[test]
    fn div_by_power_reduces() {
        // (x - y)^3 / (x - y)^2 = x - y
        let f = RatFun::from_mpoly((&xp() - &yp()).pow(3));
        let g = f.div_by_power(&(&xp() - &yp()), 2).unwrap();
        assert_eq!(g, RatFun::from_mpoly(&xp() - &yp()));
    }

    #[test]
    fn factor_splitting_keeps_canonical() {
        // x*y/(x^2*y^2) built with an unsplit base x^2*y^2
        let f =
            RatFun::from_factored(&xp() * &yp(), vec![(&xp().pow(2) * &yp().pow(2), 1)]).unwrap();
        assert_eq!(f, RatFun::new(MPoly::one(), &xp() * &yp()).unwrap());
    }
}
