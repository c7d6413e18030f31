//! Heat coefficient transport: the recursion that produces the t-expansion
//! coefficients of the heat kernel of d^2 + u relative to the Gaussian
//! factor, its termination detection, and the exact certificates attached
//! to every result.
//!
//! Off the diagonal the coefficients solve
//! (x - y) dH_n/dx + n H_n = (d^2/dx^2 + u(x)) H_{n-1},  H_0 = 1,
//! with the integration constant fixed by regularity at x = y. On the
//! diagonal the same recursion closes over the jet variables of a generic
//! potential, giving Taylor coefficients in (y - x) with jets evaluated
//! at x.

use crate::diffop::kdv_flow;
use crate::error::{HadamardError, OperatorError};
use crate::integrate::rational_integrate;
use crate::mpoly::MPoly;
use crate::ratfun::RatFun;
use crate::scalar::{odd_double_factorial, pow2, rat, rat_int};
use crate::symbol::Sym;

impl From<OperatorError> for HadamardError {
    fn from(_: OperatorError) -> Self {
        HadamardError::IdentityFailed("operator calculus failure")
    }
}

pub fn x_minus_y() -> MPoly {
    &MPoly::var(Sym::X) - &MPoly::var(Sym::Y)
}

/// One step of the transport recursion: H_n from H_{n-1}. The result is
/// certified by re-substitution into the transport equation before it is
/// returned.
pub fn transport_step(u: &RatFun, h_prev: &RatFun, n: usize) -> Result<RatFun, HadamardError> {
    assert!(n >= 1, "transport starts at n = 1");
    let rhs = &h_prev.dx().dx() + &(u * h_prev);
    if rhs.is_zero() {
        return Ok(RatFun::zero());
    }
    let xy = RatFun::from_mpoly(x_minus_y());
    let integrand = &xy.pow(n as u32 - 1) * &rhs;
    let f = rational_integrate(&integrand, Sym::X)?;
    let f_diag = f
        .rename(Sym::X, Sym::Y)
        .map_err(|_| HadamardError::SingularDiagonal { n })?;
    let h = (&f - &f_diag)
        .div_by_power(&x_minus_y(), n as u32)
        .map_err(|_| HadamardError::SingularDiagonal { n })?;
    if h.den().try_divexact(&x_minus_y()).is_some() {
        return Err(HadamardError::SingularDiagonal { n });
    }
    let residual = &(&(&xy * &h.dx()) + &(&RatFun::from_int(n as i64) * &h)) - &rhs;
    if !residual.is_zero() {
        return Err(HadamardError::ResidualNonzero { n });
    }
    Ok(h)
}

/// Heat coefficients H_0..H_N of d^2 + u with termination bookkeeping.
#[derive(Clone, Debug)]
pub struct HadamardTable {
    pub u: RatFun,
    /// coeffs[n] = H_n; coeffs[0] = 1.
    pub coeffs: Vec<RatFun>,
    /// Least n with H_n = 0, if one was found in the computed range.
    pub termination_index: Option<usize>,
}

/// Run the transport recursion up to order n_max.
pub fn hadamard_table(u: &RatFun, n_max: usize) -> Result<HadamardTable, HadamardError> {
    assert!(n_max >= 1);
    let mut coeffs = vec![RatFun::one()];
    let mut termination_index = None;
    for n in 1..=n_max {
        let h = transport_step(u, &coeffs[n - 1], n)?;
        if h.is_zero() && termination_index.is_none() {
            termination_index = Some(n);
        }
        coeffs.push(h);
    }
    Ok(HadamardTable {
        u: u.clone(),
        coeffs,
        termination_index,
    })
}

impl HadamardTable {
    pub fn max_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &RatFun {
        &self.coeffs[n]
    }

    /// H_n restricted to the diagonal y = x.
    pub fn diagonal(&self, n: usize) -> Result<RatFun, HadamardError> {
        self.coeffs[n]
            .rename(Sym::Y, Sym::X)
            .map_err(|_| HadamardError::SingularDiagonal { n })
    }

    /// Re-substitute every row into its transport equation.
    pub fn verify_transport(&self) -> Result<(), HadamardError> {
        let xy = RatFun::from_mpoly(x_minus_y());
        for n in 1..self.coeffs.len() {
            let rhs = &self.coeffs[n - 1].dx().dx() + &(&self.u * &self.coeffs[n - 1]);
            let h = &self.coeffs[n];
            let residual = &(&(&xy * &h.dx()) + &(&RatFun::from_int(n as i64) * h)) - &rhs;
            if !residual.is_zero() {
                return Err(HadamardError::ResidualNonzero { n });
            }
        }
        Ok(())
    }

    /// Exchange symmetry H_n(x,y) = H_n(y,x) for every row.
    pub fn verify_symmetry(&self) -> Result<(), HadamardError> {
        for (n, h) in self.coeffs.iter().enumerate() {
            if &h.swap_syms(Sym::X, Sym::Y) != h {
                return Err(HadamardError::SymmetryFailed { n });
            }
        }
        Ok(())
    }

    /// Exact heat equation for the terminated kernel. With P = sum H_n t^n
    /// the Gaussian factor conjugates (d/dt - d^2/dx^2 - u) to
    /// P_t + ((x-y)/t) P_x - P_xx - u P, which must vanish identically.
    pub fn verify_finite_kernel(&self) -> Result<(), HadamardError> {
        let Some(ell) = self.termination_index else {
            return Err(HadamardError::IdentityFailed(
                "kernel certificate requires a termination index",
            ));
        };
        let t = RatFun::var(Sym::T);
        let mut p = RatFun::zero();
        for (n, h) in self.coeffs.iter().enumerate() {
            p = &p + &(h * &t.pow(n as u32));
        }
        let p_x = p.deriv(Sym::X);
        let p_xx = p_x.deriv(Sym::X);
        let p_t = p.deriv(Sym::T);
        let xy = RatFun::from_mpoly(x_minus_y());
        let drift = (&xy * &p_x).try_div(&t).expect("t is not identically zero");
        let residual = &(&(&p_t + &drift) - &p_xx) - &(&self.u * &p);
        if !residual.is_zero() {
            return Err(HadamardError::ResidualNonzero { n: ell });
        }
        Ok(())
    }

    /// Exact equality of the diagonal derivative of H_k against the scaled
    /// order-(2k-1) flow of the potential.
    pub fn diagonal_identity(&self, k: usize) -> Result<(), HadamardError> {
        assert!(k >= 1 && k <= self.max_order());
        let lhs = self.diagonal(k)?.dx();
        let flow = kdv_flow(&self.u, 2 * k as u32 - 1)?;
        let scale = pow2(k as i64 - 1) / odd_double_factorial(k as u64);
        let rhs = &RatFun::from_rat(scale) * &flow;
        if lhs != rhs {
            return Err(HadamardError::IdentityFailed(
                "diagonal derivative does not match the scaled flow",
            ));
        }
        Ok(())
    }
}

/// Taylor coefficients of H_n around the diagonal for a generic potential:
/// entry [n][m] is the coefficient of (y - x)^m as a polynomial in the jet
/// variables of u at x. Row n is computed for m up to
/// m_top + 2 (n_max - n), the budget the recursion consumes.
pub fn diagonal_jet_series(n_max: usize, m_top: usize) -> Vec<Vec<MPoly>> {
    let u = MPoly::var(Sym::jet(0));
    let width = |n: usize| m_top + 2 * (n_max - n);
    let mut rows: Vec<Vec<MPoly>> = Vec::with_capacity(n_max + 1);
    let mut row0 = vec![MPoly::one()];
    row0.resize(width(0) + 3, MPoly::zero());
    rows.push(row0);
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let mut row: Vec<MPoly> = Vec::with_capacity(width(n) + 1);
        for m in 0..=width(n) {
            let mi = m as i64;
            let mut num = &(&prev[m].deriv_x().deriv_x()
                - &prev[m + 1].deriv_x().scale(&rat_int(2 * (mi + 1))))
                + &(&prev[m + 2].scale(&rat_int((mi + 2) * (mi + 1))) + &(&u * &prev[m]));
            if m > 0 {
                num = &num + &row[m - 1].deriv_x();
            }
            row.push(num.scale(&rat(1, (n as i64) + mi)));
        }
        rows.push(row);
    }
    rows
}

/// Substitute the jet variables in a polynomial by the successive total
/// x-derivatives of a concrete potential.
pub fn evaluate_jets(p: &MPoly, u: &RatFun) -> RatFun {
    let mut max_jet = 0usize;
    for (m, _) in p.iter() {
        for j in (0..=crate::symbol::MAX_JET).rev() {
            if m.exponent(Sym::jet(j)) > 0 {
                max_jet = max_jet.max(j);
                break;
            }
        }
    }
    let mut derivs = vec![u.clone()];
    for j in 1..=max_jet {
        let next = derivs[j - 1].dx();
        derivs.push(next);
    }
    let mut out = RatFun::zero();
    for (m, c) in p.iter() {
        let mut term = RatFun::from_rat(c.clone());
        for s in Sym::all() {
            let e = m.exponent(s);
            if e == 0 {
                continue;
            }
            let value = if s.is_jet() {
                derivs[s.jet_order().expect("jet symbol")].clone()
            } else {
                RatFun::var(s)
            };
            term = &term * &value.pow(e as u32);
        }
        out = &out + &term;
    }
    out
}

/// Diagonal identity for a generic symbolic potential: the x-derivative of
/// the diagonal jet coefficient h_{k,0} equals
/// 2^{k-1}/(2k-1)!! times the order-(2k-1) flow of the generic potential.
pub fn diagonal_identity_generic(k: usize) -> Result<(), HadamardError> {
    assert!(k >= 1);
    let rows = diagonal_jet_series(k, 0);
    let lhs = RatFun::from_mpoly(rows[k][0].deriv_x());
    let flow = kdv_flow(&RatFun::var(Sym::jet(0)), 2 * k as u32 - 1)?;
    let scale = pow2(k as i64 - 1) / odd_double_factorial(k as u64);
    let rhs = &RatFun::from_rat(scale) * &flow;
    if lhs != rhs {
        return Err(HadamardError::IdentityFailed(
            "generic diagonal derivative does not match the scaled flow",
        ));
    }
    Ok(())
}

/// Diagonal identity for a concrete rational potential, via the transport
/// table. Generic jet potentials go through the series recursion instead.
pub fn diagonal_identity_check(u: &RatFun, k: usize) -> Result<(), HadamardError> {
    let has_jets = (0..=crate::symbol::MAX_JET).any(|j| u.depends_on(Sym::jet(j)));
    if has_jets {
        if u != &RatFun::var(Sym::jet(0)) {
            return Err(HadamardError::IdentityFailed(
                "jet potentials are supported only in fully generic form",
            ));
        }
        return diagonal_identity_generic(k);
    }
    let table = hadamard_table(u, k)?;
    table.diagonal_identity(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adler_moser::potential;

    fn u1() -> RatFun {
        potential(1)
    }

    #[test]
    fn first_cell_first_coefficient() {
        let h1 = transport_step(&u1(), &RatFun::one(), 1).unwrap();
        assert_eq!(h1.to_string(), "-2/(x*y)");
    }

    #[test]
    fn first_cell_terminates_at_two() {
        let table = hadamard_table(&u1(), 3).unwrap();
        assert_eq!(table.termination_index, Some(2));
        assert!(table.coeff(2).is_zero());
        assert!(table.coeff(3).is_zero());
        table.verify_transport().unwrap();
        table.verify_symmetry().unwrap();
    }

    #[test]
    fn zero_potential_terminates_at_one() {
        let table = hadamard_table(&RatFun::zero(), 3).unwrap();
        assert_eq!(table.termination_index, Some(1));
        table.verify_finite_kernel().unwrap();
    }

    #[test]
    fn constant_potential_closed_form() {
        let c = RatFun::var(Sym::C);
        let table = hadamard_table(&c, 5).unwrap();
        assert_eq!(table.termination_index, None);
        let mut fact = rat_int(1);
        for n in 1..=5usize {
            fact *= &rat_int(n as i64);
            let expect = &c.pow(n as u32) * &RatFun::from_rat(rat_int(1) / &fact);
            assert_eq!(table.coeff(n), &expect, "n = {n}");
        }
    }

    #[test]
    fn second_cell_termination_symbolic() {
        let table = hadamard_table(&potential(2), 3).unwrap();
        assert_eq!(table.termination_index, Some(3));
        assert!(!table.coeff(2).is_zero());
        table.verify_symmetry().unwrap();
    }

    #[test]
    fn finite_kernel_certificate_first_cell() {
        let table = hadamard_table(&u1(), 2).unwrap();
        table.verify_finite_kernel().unwrap();
    }

    #[test]
    fn kernel_certificate_requires_termination() {
        let table = hadamard_table(&RatFun::var(Sym::C), 2).unwrap();
        assert!(table.verify_finite_kernel().is_err());
    }

    #[test]
    fn diagonal_jet_values() {
        let rows = diagonal_jet_series(2, 0);
        let u = MPoly::var(Sym::jet(0));
        assert_eq!(rows[1][0], u);
        // h_{1,1} = u'/2, h_{1,2} = u''/6
        assert_eq!(rows[1][1], u.deriv_x().scale(&rat(1, 2)));
        assert_eq!(rows[1][2], u.deriv_x().deriv_x().scale(&rat(1, 6)));
        // h_{2,0} = u^2/2 + u''/6
        let expect = &(&u * &u).scale(&rat(1, 2)) + &u.deriv_x().deriv_x().scale(&rat(1, 6));
        assert_eq!(rows[2][0], expect);
    }

    #[test]
    fn diagonal_identity_generic_small() {
        diagonal_identity_generic(1).unwrap();
        diagonal_identity_generic(2).unwrap();
    }

    #[test]
    fn diagonal_identity_rational_cells() {
        diagonal_identity_check(&u1(), 1).unwrap();
        diagonal_identity_check(&u1(), 2).unwrap();
        diagonal_identity_check(&potential(2), 2).unwrap();
    }

    #[test]
    fn jet_series_matches_transport_diagonal() {
        // substitute the jets of a concrete potential into the generic
        // diagonal coefficients and compare with the transport table
        let u = potential(2);
        let rows = diagonal_jet_series(3, 0);
        let table = hadamard_table(&u, 3).unwrap();
        for (n, row) in rows.iter().enumerate().skip(1) {
            let from_jets = evaluate_jets(&row[0], &u);
            let from_table = table.diagonal(n).unwrap();
            assert_eq!(from_jets, from_table, "n = {n}");
        }
    }

    #[test]
    fn transport_rejects_unsolvable_inputs() {
        // potential 1/x gives a logarithmic obstruction at the first step
        let u = RatFun::var(Sym::X).recip().unwrap();
        assert!(matches!(
            transport_step(&u, &RatFun::one(), 1),
            Err(HadamardError::LogObstruction)
        ));
    }
}
