//! Sparse multivariate polynomials over the rationals with a canonical
//! graded lexicographic term order.

use crate::monomial::Monomial;
use crate::scalar::{rat_int, Rational};
use crate::symbol::{Sym, MAX_JET};
use num::traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// A polynomial in the fixed symbol table. Invariant: no stored coefficient
/// is zero, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> MPoly {
        MPoly::constant(rat_int(1))
    }

    pub fn constant(c: Rational) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MPoly { terms }
    }

    pub fn from_int(n: i64) -> MPoly {
        MPoly::constant(rat_int(n))
    }

    pub fn var(s: Sym) -> MPoly {
        MPoly::term(Monomial::var(s), rat_int(1))
    }

    pub fn var_pow(s: Sym, e: u16) -> MPoly {
        MPoly::term(Monomial::var_pow(s, e), rat_int(1))
    }

    pub fn term(m: Monomial, c: Rational) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rational)>) -> MPoly {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .map(|c| *c == rat_int(1))
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.contains_key(&Monomial::one()))
    }

    /// Constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::one()) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded lex order.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in descending graded lex order, the canonical display order.
    pub fn iter_desc(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, s: Sym) -> u16 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    pub fn depends_on(&self, s: Sym) -> bool {
        self.terms.keys().any(|m| m.exponent(s) > 0)
    }

    /// Symbols occurring with nonzero exponent anywhere in the polynomial.
    pub fn support(&self) -> Vec<Sym> {
        let mut seen = [false; crate::symbol::NSYM];
        for m in self.terms.keys() {
            for (s, _) in m.support() {
                seen[s.index()] = true;
            }
        }
        Sym::all().filter(|s| seen[s.index()]).collect()
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn scale_mut(&mut self, c: &Rational) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for a in self.terms.values_mut() {
            *a *= c;
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, a)| (mm.mul(m), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, a)| (mm.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to a single symbol.
    pub fn deriv_partial(&self, s: Sym) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(s);
            if e > 0 {
                let m2 = m
                    .try_div(&Monomial::var(s))
                    .expect("exponent checked nonzero");
                out.add_term(m2, c * rat_int(e as i64));
            }
        }
        out
    }

    /// Total derivative in x. Jet symbols follow the chain rule of a
    /// function of x: the derivative of `u<i>` is `u<i+1>`. Panics if the
    /// polynomial depends on the top jet symbol, whose derivative has no
    /// slot in the table.
    pub fn deriv_x(&self) -> MPoly {
        assert!(
            !self.depends_on(Sym::jet(MAX_JET)),
            "jet table exhausted: derivative of u{MAX_JET} has no symbol"
        );
        let mut out = self.deriv_partial(Sym::X);
        for i in 0..MAX_JET {
            let d = self.deriv_partial(Sym::jet(i));
            if !d.is_zero() {
                out += &(&d * &MPoly::var(Sym::jet(i + 1)));
            }
        }
        out
    }

    /// Substitute a rational value for a symbol.
    pub fn subst_rat(&self, s: Sym, v: &Rational) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(s);
            let m2 = m
                .try_div(&Monomial::var_pow(s, e))
                .expect("removing full exponent");
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff *= v;
            }
            out.add_term(m2, coeff);
        }
        out
    }

    /// Substitute a polynomial for a symbol. Powers of the replacement are
    /// cached, so repeated exponents cost one multiplication each.
    pub fn subst(&self, s: Sym, val: &MPoly) -> MPoly {
        let mut powers: BTreeMap<u16, MPoly> = BTreeMap::new();
        powers.insert(0, MPoly::one());
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(s);
            let m2 = m
                .try_div(&Monomial::var_pow(s, e))
                .expect("removing full exponent");
            if !powers.contains_key(&e) {
                let mut have = *powers.keys().next_back().expect("powers nonempty");
                let mut acc = powers[&have].clone();
                while have < e {
                    acc = &acc * val;
                    have += 1;
                    powers.insert(have, acc.clone());
                }
            }
            out += &powers[&e].mul_term(&m2, c);
        }
        out
    }

    /// Exchange two symbols everywhere.
    pub fn swap_syms(&self, a: Sym, b: Sym) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.swap(a, b), c.clone()))
                .collect(),
        }
    }

    /// Replace every occurrence of one symbol by another, merging exponents.
    pub fn rename(&self, from: Sym, to: Sym) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.rename(from, to), c.clone());
        }
        out
    }

    /// Greatest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => *m,
            None => return Monomial::one(),
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }

    /// Coefficients as a dense vector in one symbol, index = exponent.
    /// Entry polynomials are free of that symbol.
    pub fn as_univar(&self, s: Sym) -> Vec<MPoly> {
        let d = self.degree_in(s) as usize;
        let mut out = vec![MPoly::zero(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(s) as usize;
            let m2 = m
                .try_div(&Monomial::var_pow(s, e as u16))
                .expect("removing full exponent");
            out[e].add_term(m2, c.clone());
        }
        out
    }

    pub fn from_univar(s: Sym, coeffs: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            out += &c.mul_monomial(&Monomial::var_pow(s, e as u16));
        }
        out
    }

    /// Antiderivative in a plain polynomial symbol (no jet chain rule):
    /// x^n maps to x^{n+1}/(n+1). The integration constant is zero.
    pub fn integrate_var(&self, s: Sym) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(s);
            out.add_term(m.mul(&Monomial::var(s)), c / rat_int(e as i64 + 1));
        }
        out
    }

    /// Exact division. Returns None unless `d` divides `self` exactly.
    /// Works by leading-term elimination in graded lex order; for an exact
    /// quotient the leading monomial of every intermediate remainder is
    /// divisible by the divisor's, so a single failed step refutes
    /// divisibility.
    pub fn try_divexact(&self, d: &MPoly) -> Option<MPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&(rat_int(1) / c)));
        }
        let (dm, dc) = d.leading().expect("divisor nonzero");
        let dm = *dm;
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quo = MPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.try_div(&dm)?;
            let qc = rc / &dc;
            quo.add_term(qm, qc.clone());
            rem -= &d.mul_term(&qm, &qc);
        }
        Some(quo)
    }

    /// Quotient when divisibility is guaranteed by construction.
    pub fn divexact(&self, d: &MPoly) -> MPoly {
        self.try_divexact(d).expect("exact division must succeed")
    }
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        // iterate over the smaller factor outside
        let (small, big) = if self.num_terms() <= rhs.num_terms() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = MPoly::zero();
        for (m, c) in &small.terms {
            for (mm, cc) in &big.terms {
                out.add_term(m.mul(mm), c * cc);
            }
        }
        out
    }
}

impl MulAssign<&MPoly> for MPoly {
    fn mul_assign(&mut self, rhs: &MPoly) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::fmt_mpoly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn x() -> MPoly {
        MPoly::var(Sym::X)
    }
    fn y() -> MPoly {
        MPoly::var(Sym::Y)
    }

    #[test]
    fn ring_basics() {
        let p = &(&x() + &y()) * &(&x() - &y());
        let q = &(&x() * &x()) - &(&y() * &y());
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
    }

    #[test]
    fn pow_binomial() {
        let p = (&x() + &y()).pow(3);
        let mut expect = MPoly::zero();
        expect += &x().pow(3);
        expect += &x().pow(2).mul_term(&Monomial::var(Sym::Y), &rat_int(3));
        expect += &y().pow(2).mul_term(&Monomial::var(Sym::X), &rat_int(3));
        expect += &y().pow(3);
        assert_eq!(p, expect);
    }

    #[test]
    fn derivative_partial() {
        // d/dx (x^3 y) = 3 x^2 y
        let p = &x().pow(3) * &y();
        let d = p.deriv_partial(Sym::X);
        assert_eq!(d, x().pow(2).mul_term(&Monomial::var(Sym::Y), &rat_int(3)));
    }

    #[test]
    fn derivative_total_chain_rule() {
        // d/dx (x u0^2) = u0^2 + 2 x u0 u1
        let u0 = MPoly::var(Sym::jet(0));
        let u1 = MPoly::var(Sym::jet(1));
        let p = &x() * &u0.pow(2);
        let d = p.deriv_x();
        let expect = &u0.pow(2) + &(&(&x() * &u0) * &u1).scale(&rat_int(2));
        assert_eq!(d, expect);
    }

    #[test]
    fn substitution() {
        // (x^2 + y) with x -> y + 1 gives y^2 + 3y + 1
        let p = &x().pow(2) + &y();
        let val = &y() + &MPoly::one();
        let q = p.subst(Sym::X, &val);
        let mut expect = y().pow(2);
        expect += &y().scale(&rat_int(3));
        expect += &MPoly::one();
        assert_eq!(q, expect);
    }

    #[test]
    fn subst_rat_evaluates() {
        let p = &x().pow(2) + &y();
        let q = p.subst_rat(Sym::X, &rat(1, 2));
        let mut expect = y();
        expect += &MPoly::constant(rat(1, 4));
        assert_eq!(q, expect);
    }

    #[test]
    fn exact_division() {
        let a = &(&x() + &y()) * &(&x() - &y());
        let q = a.try_divexact(&(&x() + &y())).unwrap();
        assert_eq!(q, &x() - &y());
        assert!(a.try_divexact(&(&x() + &MPoly::one())).is_none());
    }

    #[test]
    fn univariate_round_trip() {
        let p = &(&x().pow(2) * &y()) + &(&x() * &y().pow(2));
        let coeffs = p.as_univar(Sym::X);
        assert_eq!(coeffs.len(), 3);
        assert_eq!(MPoly::from_univar(Sym::X, &coeffs), p);
    }

    #[test]
    fn integration_in_var() {
        // int x^2 y dx = x^3 y / 3
        let p = &x().pow(2) * &y();
        let q = p.integrate_var(Sym::X);
        assert_eq!(q.deriv_partial(Sym::X), p);
        assert_eq!(q, (&x().pow(3) * &y()).scale(&rat(1, 3)));
    }

    #[test]
    fn monomial_content_strips() {
        let p = &(&x().pow(2) * &y()) + &(&x() * &y().pow(2));
        let c = p.monomial_content();
        assert_eq!(c, Monomial::var(Sym::X).mul(&Monomial::var(Sym::Y)));
    }

    #[test]
    fn swap_symmetry() {
        let p = &x().pow(2) + &(&x() * &y());
        let q = p.swap_syms(Sym::X, Sym::Y);
        assert_eq!(q, &y().pow(2) + &(&x() * &y()));
        assert_eq!(q.swap_syms(Sym::X, Sym::Y), p);
    }
}
