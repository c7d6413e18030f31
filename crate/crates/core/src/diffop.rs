//! Ordinary and pseudo-differential operators in one variable with exact
//! rational-function coefficients.
//!
//! `DiffOp` is a polynomial in d/dx acting on functions of x; composition
//! uses the Leibniz rule and is exact. `PsiDo` extends the order to
//! negative powers of d/dx with the same floor discipline as Laurent
//! series: coefficients below the floor are unknown, and extraction below
//! the floor is a typed error. The extended Leibniz rule uses generalized
//! binomial coefficients, valid for negative operator orders.

use crate::error::OperatorError;
use crate::laurent::Floor;
use crate::ratfun::RatFun;
use crate::scalar::{binom_gen, rat_int, Rational};
use crate::symbol::Sym;
use std::collections::BTreeMap;
use std::fmt;

/// Differential operator sum c_j d^j with rational-function coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp {
    /// coeffs[j] multiplies d^j; trailing zeros trimmed.
    coeffs: Vec<RatFun>,
}

impl DiffOp {
    pub fn new(mut coeffs: Vec<RatFun>) -> DiffOp {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DiffOp { coeffs }
    }

    pub fn zero() -> DiffOp {
        DiffOp { coeffs: Vec::new() }
    }

    pub fn identity() -> DiffOp {
        DiffOp::new(vec![RatFun::one()])
    }

    /// The bare derivative d/dx.
    pub fn d() -> DiffOp {
        DiffOp::new(vec![RatFun::zero(), RatFun::one()])
    }

    /// Multiplication operator by a function.
    pub fn mult(f: &RatFun) -> DiffOp {
        DiffOp::new(vec![f.clone()])
    }

    /// d^2 + u, the one-dimensional Schrodinger operator without the sign
    /// flip: eigenfunctions satisfy psi'' + u psi = z^2 psi.
    pub fn schrodinger(u: &RatFun) -> DiffOp {
        DiffOp::new(vec![u.clone(), RatFun::zero(), RatFun::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order of the operator; None for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, j: usize) -> RatFun {
        self.coeffs.get(j).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn coeffs(&self) -> &[RatFun] {
        &self.coeffs
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            out.push(&self.coeff(j) + &other.coeff(j));
        }
        DiffOp::new(out)
    }

    pub fn neg(&self) -> DiffOp {
        DiffOp {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &DiffOp) -> DiffOp {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &RatFun) -> DiffOp {
        DiffOp::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Operator composition self . other via the Leibniz rule.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        if self.is_zero() || other.is_zero() {
            return DiffOp::zero();
        }
        let ja = self.coeffs.len() - 1;
        let jb = other.coeffs.len() - 1;
        let mut out = vec![RatFun::zero(); ja + jb + 1];
        // cache successive x-derivatives of the right coefficients
        let max_i = ja;
        let mut derivs: Vec<Vec<RatFun>> = Vec::with_capacity(jb + 1);
        for g in &other.coeffs {
            let mut row = Vec::with_capacity(max_i + 1);
            row.push(g.clone());
            for i in 1..=max_i {
                let next = row[i - 1].dx();
                row.push(next);
            }
            derivs.push(row);
        }
        for (j, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (k, row) in derivs.iter().enumerate() {
                for i in 0..=j {
                    let gi = &row[i];
                    if gi.is_zero() {
                        continue;
                    }
                    let b = binom_gen(j as i64, i as u64);
                    let term = &(f * gi) * &RatFun::from_rat(b);
                    out[j + k - i] = &out[j + k - i] + &term;
                }
            }
        }
        DiffOp::new(out)
    }

    pub fn commutator(&self, other: &DiffOp) -> DiffOp {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn pow(&self, n: u32) -> DiffOp {
        let mut out = DiffOp::identity();
        for _ in 0..n {
            out = out.compose(self);
        }
        out
    }

    /// Apply the operator to a function of x.
    pub fn apply(&self, f: &RatFun) -> RatFun {
        let mut out = RatFun::zero();
        let mut der = f.clone();
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                der = der.dx();
            }
            if !c.is_zero() {
                out = &out + &(c * &der);
            }
        }
        out
    }

    /// Formal adjoint: sum (-1)^j d^j . c_j.
    pub fn adjoint(&self) -> DiffOp {
        let mut out = DiffOp::zero();
        let mut dpow = DiffOp::identity();
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                dpow = dpow.compose(&DiffOp::d());
            }
            if c.is_zero() {
                continue;
            }
            let term = dpow.compose(&DiffOp::mult(c));
            if j % 2 == 0 {
                out = out.add(&term);
            } else {
                out = out.sub(&term);
            }
        }
        out
    }

    /// Substitute a rational value for a symbol in every coefficient.
    pub fn subst_rat(&self, s: Sym, v: &Rational) -> Result<DiffOp, crate::error::ExactError> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.subst_rat(s, v)?);
        }
        Ok(DiffOp::new(out))
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let dpart = match j {
                0 => String::new(),
                1 => "d".to_string(),
                _ => format!("d^{j}"),
            };
            if c.is_one() && j > 0 {
                write!(f, "{dpart}")?;
            } else if j == 0 {
                if c.is_one() {
                    write!(f, "1")?;
                } else {
                    write!(f, "({c})")?;
                }
            } else {
                write!(f, "({c})*{dpart}")?;
            }
        }
        Ok(())
    }
}

/// Pseudo-differential operator: finitely many stored coefficients of d^j
/// for integer j of either sign, plus a floor marking where knowledge ends.
#[derive(Clone, Debug, PartialEq)]
pub struct PsiDo {
    coeffs: BTreeMap<i64, RatFun>,
    floor: Floor,
}

impl PsiDo {
    pub fn zero() -> PsiDo {
        PsiDo {
            coeffs: BTreeMap::new(),
            floor: Floor::Exact,
        }
    }

    pub fn monomial(order: i64, c: RatFun) -> PsiDo {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(order, c);
        }
        PsiDo {
            coeffs,
            floor: Floor::Exact,
        }
    }

    pub fn from_diffop(op: &DiffOp) -> PsiDo {
        let mut coeffs = BTreeMap::new();
        for (j, c) in op.coeffs().iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(j as i64, c.clone());
            }
        }
        PsiDo {
            coeffs,
            floor: Floor::Exact,
        }
    }

    pub fn floor(&self) -> Floor {
        self.floor
    }

    pub fn is_exact(&self) -> bool {
        self.floor == Floor::Exact
    }

    pub fn is_zero(&self) -> bool {
        self.is_exact() && self.coeffs.is_empty()
    }

    /// Highest order with a nonzero stored coefficient.
    pub fn order(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn min_order(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    fn top_possible(&self) -> Option<i64> {
        let stored = self.order();
        match self.floor {
            Floor::Exact => stored,
            Floor::Truncated(f) => Some(stored.map(|t| t.max(f - 1)).unwrap_or(f - 1)),
        }
    }

    pub fn coeff(&self, order: i64) -> Result<RatFun, OperatorError> {
        if let Floor::Truncated(f) = self.floor {
            if order < f {
                return Err(OperatorError::Truncation {
                    want: order,
                    floor: f,
                });
            }
        }
        Ok(self
            .coeffs
            .get(&order)
            .cloned()
            .unwrap_or_else(RatFun::zero))
    }

    /// Stored nonzero terms, ascending in order.
    pub fn iter(&self) -> impl Iterator<Item = (&i64, &RatFun)> {
        self.coeffs.iter()
    }

    fn add_coeff(&mut self, order: i64, c: RatFun) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(order) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn truncate(&self, floor: i64) -> PsiDo {
        let mut out = self.clone();
        out.floor = out.floor.merge(Floor::Truncated(floor));
        if let Floor::Truncated(f) = out.floor {
            out.coeffs.retain(|e, _| *e >= f);
        }
        out
    }

    pub fn add(&self, other: &PsiDo) -> PsiDo {
        let floor = self.floor.merge(other.floor);
        let mut out = PsiDo {
            coeffs: BTreeMap::new(),
            floor,
        };
        for (e, c) in &self.coeffs {
            out.add_coeff(*e, c.clone());
        }
        for (e, c) in &other.coeffs {
            out.add_coeff(*e, c.clone());
        }
        if let Floor::Truncated(f) = floor {
            out.coeffs.retain(|e, _| *e >= f);
        }
        out
    }

    pub fn neg(&self) -> PsiDo {
        PsiDo {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
            floor: self.floor,
        }
    }

    pub fn sub(&self, other: &PsiDo) -> PsiDo {
        self.add(&other.neg())
    }

    /// Composition self . other with the extended Leibniz rule
    /// d^j . g = sum_i binom(j, i) g^(i) d^(j-i), where j may be negative
    /// and the sum over i is cut off at the result floor.
    ///
    /// Floor of the result: a truncated factor's unknown region smears up
    /// to its floor plus the other factor's top. An exact left factor with
    /// a negative stored order produces an infinite exact tail; we keep it
    /// down to min(self) + min(other) and mark the result truncated there.
    pub fn compose(&self, other: &PsiDo) -> PsiDo {
        if self.is_zero() || other.is_zero() {
            return PsiDo::zero();
        }
        let mut floor = Floor::Exact;
        if let Floor::Truncated(fa) = self.floor {
            let top_b = other.top_possible().expect("other nonzero");
            floor = floor.merge(Floor::Truncated(fa + top_b));
        }
        if let Floor::Truncated(fb) = other.floor {
            let top_a = self.top_possible().expect("self nonzero");
            floor = floor.merge(Floor::Truncated(fb + top_a));
        }
        if self.floor == Floor::Exact {
            let min_a = self
                .min_order()
                .expect("nonzero exact operator stores terms");
            if min_a < 0 {
                let min_b = match other.floor {
                    Floor::Exact => other
                        .min_order()
                        .expect("nonzero exact operator stores terms"),
                    Floor::Truncated(f) => f,
                };
                floor = floor.merge(Floor::Truncated(min_a + min_b));
            }
        }
        let mut out = PsiDo {
            coeffs: BTreeMap::new(),
            floor,
        };
        for (&j, f) in &self.coeffs {
            for (&k, g) in &other.coeffs {
                // orders j + k - i for i = 0, 1, ...
                let max_i = match floor {
                    Floor::Exact => {
                        debug_assert!(j >= 0, "exact compose requires nonnegative left orders");
                        j
                    }
                    Floor::Truncated(fl) => {
                        let cutoff = j + k - fl;
                        if j >= 0 {
                            j.min(cutoff)
                        } else {
                            cutoff
                        }
                    }
                };
                if max_i < 0 {
                    continue;
                }
                let mut gi = g.clone();
                for i in 0..=max_i {
                    if i > 0 {
                        gi = gi.dx();
                    }
                    if gi.is_zero() {
                        // derivatives of zero stay zero
                        break;
                    }
                    let b = binom_gen(j, i as u64);
                    if b == rat_int(0) {
                        continue;
                    }
                    let term = &(f * &gi) * &RatFun::from_rat(b);
                    out.add_coeff(j + k - i, term);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> PsiDo {
        let mut out = PsiDo::monomial(0, RatFun::one());
        for _ in 0..n {
            out = out.compose(self);
        }
        out
    }

    /// Projection onto nonnegative orders as a differential operator.
    /// Requires the floor to certify every order >= 0.
    pub fn plus_part(&self) -> Result<DiffOp, OperatorError> {
        if let Floor::Truncated(f) = self.floor {
            if f > 0 {
                return Err(OperatorError::Truncation { want: 0, floor: f });
            }
        }
        let top = self.order().unwrap_or(0).max(0);
        let mut coeffs = vec![RatFun::zero(); top as usize + 1];
        for (&j, c) in &self.coeffs {
            if j >= 0 {
                coeffs[j as usize] = c.clone();
            }
        }
        Ok(DiffOp::new(coeffs))
    }

    /// True when every stored coefficient at negative order vanishes. Only
    /// meaningful down to the floor.
    pub fn minus_part_is_zero(&self) -> bool {
        !self.coeffs.range(..0).any(|(_, c)| !c.is_zero())
    }
}

impl fmt::Display for PsiDo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        } else {
            let mut first = true;
            for (&j, c) in self.coeffs.iter().rev() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                let dpart = match j {
                    0 => String::new(),
                    1 => "d".to_string(),
                    _ => format!("d^{j}"),
                };
                if c.is_one() && j != 0 {
                    write!(f, "{dpart}")?;
                } else if j == 0 {
                    write!(f, "({c})")?;
                } else {
                    write!(f, "({c})*{dpart}")?;
                }
            }
        }
        if let Floor::Truncated(fl) = self.floor {
            write!(f, " + O(d^{})", fl - 1)?;
        }
        Ok(())
    }
}

/// Formal square root of d^2 + u as a pseudo-differential operator,
/// computed down to order -depth: S = d + a_1 d^-1 + a_2 d^-2 + ...
/// with S^2 = d^2 + u through all stored orders.
pub fn sqrt_l(u: &RatFun, depth: u32) -> PsiDo {
    let l = PsiDo::from_diffop(&DiffOp::schrodinger(u));
    let floor = -(depth as i64);
    let mut s = PsiDo::monomial(1, RatFun::one()).truncate(floor);
    let half = RatFun::from_rat(crate::scalar::rat(1, 2));
    for m in 0..=depth as i64 {
        let defect = l.sub(&s.compose(&s));
        let c = defect
            .coeff(1 - m)
            .expect("defect floor covers all correction orders");
        if !c.is_zero() {
            s = s.add(&PsiDo::monomial(-m, &c * &half).truncate(floor));
        }
    }
    s
}

/// Right-hand side of the order-j flow on d^2 + u: the commutator
/// [(S^j)_+, L], which must be a multiplication operator. Returns its
/// coefficient, the exact flow derivative of u.
pub fn kdv_flow(u: &RatFun, j: u32) -> Result<RatFun, OperatorError> {
    let s = sqrt_l(u, j + 1);
    let sj = s.pow(j);
    let p = sj.plus_part()?;
    let l = DiffOp::schrodinger(u);
    let c = p.commutator(&l);
    if let Some(ord) = c.order() {
        if ord > 0 {
            return Err(OperatorError::NotMultiplicationOperator { order: ord });
        }
    }
    Ok(c.coeff(0))
}

/// A commuting pair: L of order 2 and M of order 2k+1 with M^2 = L^(2k+1)
/// and [M, L] = 0, both certified exactly.
#[derive(Clone, Debug)]
pub struct BcPair {
    pub k: usize,
    pub l: DiffOp,
    pub m: DiffOp,
}

/// Construct and certify the odd-order partner of L = d^2 + u. Fails with
/// a typed error if u does not admit one at this k.
pub fn bc_pair(u: &RatFun, k: usize) -> Result<BcPair, OperatorError> {
    let depth = 2 * k as u32 + 2;
    let s = sqrt_l(u, depth);
    let sj = s.pow(2 * k as u32 + 1);
    if !sj.minus_part_is_zero() {
        return Err(OperatorError::FactorizationFailed(
            "odd power of the square root has a nonvanishing tail",
        ));
    }
    let m = sj.plus_part()?;
    let l = DiffOp::schrodinger(u);
    let m2 = m.compose(&m);
    let l_odd = l.pow(2 * k as u32 + 1);
    if m2 != l_odd {
        return Err(OperatorError::FactorizationFailed(
            "square of the odd partner does not match the odd power of L",
        ));
    }
    if !m.commutator(&l).is_zero() {
        return Err(OperatorError::FactorizationFailed(
            "odd partner does not commute with L",
        ));
    }
    Ok(BcPair { k, l, m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::symbol::Sym;

    fn x() -> RatFun {
        RatFun::var(Sym::X)
    }

    fn u_generic() -> RatFun {
        RatFun::var(Sym::jet(0))
    }

    #[test]
    fn compose_leibniz_order_one() {
        // d . f = f d + f'
        let d = DiffOp::d();
        let f = x().pow(2);
        let p = d.compose(&DiffOp::mult(&f));
        assert_eq!(p.coeff(1), f);
        assert_eq!(p.coeff(0), f.dx());
    }

    #[test]
    fn schrodinger_squared() {
        // (d^2 + u)^2 = d^4 + 2u d^2 + 2u' d + (u'' + u^2)
        let u = u_generic();
        let l = DiffOp::schrodinger(&u);
        let l2 = l.compose(&l);
        assert_eq!(l2.coeff(4), RatFun::one());
        assert_eq!(l2.coeff(3), RatFun::zero());
        assert_eq!(l2.coeff(2), &RatFun::from_int(2) * &u);
        assert_eq!(l2.coeff(1), &RatFun::from_int(2) * &u.dx());
        assert_eq!(l2.coeff(0), &u.dx().dx() + &u.pow(2));
    }

    #[test]
    fn apply_operator() {
        let l = DiffOp::schrodinger(&x());
        // (d^2 + x) x^3 = 6x + x^4
        let r = l.apply(&x().pow(3));
        assert_eq!(r, &(&RatFun::from_int(6) * &x()) + &x().pow(4));
    }

    #[test]
    fn adjoint_reverses_composition() {
        let a = DiffOp::new(vec![x(), RatFun::one()]);
        let b = DiffOp::new(vec![RatFun::one(), x().pow(2)]);
        let lhs = a.compose(&b).adjoint();
        let rhs = b.adjoint().compose(&a.adjoint());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn adjoint_involution() {
        let a = DiffOp::new(vec![x().pow(3), x(), RatFun::from_int(2)]);
        assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn display_layout() {
        let neg2 = RatFun::from_int(-2);
        let op = DiffOp::new(vec![
            &neg2 * &x().pow(2).recip().unwrap(),
            RatFun::zero(),
            RatFun::one(),
        ]);
        assert_eq!(op.to_string(), "d^2 + (-2/x^2)");
    }

    #[test]
    fn psido_negative_order_compose() {
        // d^-1 . f has infinitely many terms; request depth 3 and verify
        // against d^-1 . f = f d^-1 - f' d^-2 + f'' d^-3 - ...
        let dinv = PsiDo::monomial(-1, RatFun::one()).truncate(-3);
        let f = PsiDo::monomial(0, x().pow(3));
        let p = dinv.compose(&f);
        assert_eq!(p.floor(), Floor::Truncated(-3));
        assert_eq!(p.coeff(-1).unwrap(), x().pow(3));
        assert_eq!(p.coeff(-2).unwrap(), -&(&RatFun::from_int(3) * &x().pow(2)));
        assert_eq!(p.coeff(-3).unwrap(), &RatFun::from_int(6) * &x());
        // an exact left factor with negative order truncates at the
        // combined minimum instead of expanding forever
        let q = PsiDo::monomial(-1, RatFun::one()).compose(&f);
        assert_eq!(q.floor(), Floor::Truncated(-1));
        assert_eq!(q.coeff(-1).unwrap(), x().pow(3));
    }

    #[test]
    fn sqrt_l_squares_back() {
        let u = u_generic();
        let s = sqrt_l(&u, 4);
        // leading terms: d + (u/2) d^-1 - (u'/4) d^-2 + ...
        assert_eq!(s.coeff(1).unwrap(), RatFun::one());
        assert_eq!(s.coeff(0).unwrap(), RatFun::zero());
        assert_eq!(s.coeff(-1).unwrap(), &u * &RatFun::from_rat(rat(1, 2)));
        assert_eq!(
            s.coeff(-2).unwrap(),
            &u.dx() * &RatFun::from_rat(rat(-1, 4))
        );
        let defect = PsiDo::from_diffop(&DiffOp::schrodinger(&u)).sub(&s.compose(&s));
        for j in (1 - 4..=2).rev() {
            assert!(
                defect.coeff(j).unwrap().is_zero(),
                "defect at order {j} nonzero"
            );
        }
    }

    #[test]
    fn flow_order_three_on_generic_potential() {
        // [(S^3)_+, L] = (u'''/4 + 3/2 u u') for generic u
        let u = u_generic();
        let f = kdv_flow(&u, 3).unwrap();
        let expect = &(&u.dx().dx().dx() * &RatFun::from_rat(rat(1, 4)))
            + &(&(&u * &u.dx()) * &RatFun::from_rat(rat(3, 2)));
        assert_eq!(f, expect);
    }

    #[test]
    fn flow_order_one_is_translation() {
        let u = u_generic();
        let f = kdv_flow(&u, 1).unwrap();
        assert_eq!(f, u.dx());
    }

    #[test]
    fn flow_vanishes_on_simplest_rational_potential() {
        // u = -2/x^2 is stationary for the order-3 flow
        let u = &RatFun::from_int(-2) * &x().pow(2).recip().unwrap();
        let f = kdv_flow(&u, 3).unwrap();
        assert!(f.is_zero(), "got {f}");
    }

    #[test]
    fn bc_pair_simplest_case() {
        let u = &RatFun::from_int(-2) * &x().pow(2).recip().unwrap();
        let pair = bc_pair(&u, 1).unwrap();
        assert_eq!(pair.m.to_string(), "d^3 + (-3/x^2)*d + (3/x^3)");
    }

    #[test]
    fn bc_pair_rejects_generic_potential() {
        let u = u_generic();
        assert!(matches!(
            bc_pair(&u, 1),
            Err(OperatorError::FactorizationFailed(_))
        ));
    }
}
