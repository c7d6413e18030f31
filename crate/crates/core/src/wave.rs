//! Wave functions of the rational potential family, their adjoints, the
//! bilinear residue pairing, and the residue formula for heat
//! coefficients.
//!
//! Series work in the variable zeta = 1/z; the residue of f(z) dz is the
//! coefficient of zeta^1. A wave function is body(x, zeta) * e^{xz} with
//! body a polynomial in zeta of degree k and constant term 1; its
//! coefficients are rational in x over theta_k. The adjoint substitutes
//! x -> y and z -> -z, and every use is re-certified by the residue
//! pattern it is supposed to produce.

use crate::adler_moser::{chain, potential, theta};
use crate::diffop::DiffOp;
use crate::error::WaveError;
use crate::hadamard::x_minus_y;
use crate::laurent::LaurentSeries;
use crate::ratfun::RatFun;
use crate::scalar::{factorial, rat, rat_int, Rational};
use crate::symbol::Sym;
use crate::wronskian::wronskian_minor;

/// Wave function body: Psi(x,z) = body(zeta) e^{xz} with zeta = 1/z.
#[derive(Clone, Debug)]
pub struct WaveSeries {
    pub k: usize,
    pub body: LaurentSeries,
}

fn series_dx(s: &LaurentSeries) -> LaurentSeries {
    s.map_coeffs(|c| c.dx())
}

/// Conjugate a differential operator by e^{xz} and apply it to a body
/// series: each d/dx becomes z + d/dx, i.e. a shift down in zeta plus a
/// coefficient derivative.
pub fn apply_conjugated(op: &DiffOp, body: &LaurentSeries) -> LaurentSeries {
    let mut out = LaurentSeries::zero();
    let mut power = body.clone();
    for (j, c) in op.coeffs().iter().enumerate() {
        if j > 0 {
            power = power.shift(-1).add(&series_dx(&power));
        }
        if !c.is_zero() {
            out = out.add(&power.scale(c));
        }
    }
    out
}

/// Certify op(Psi) = z^power Psi exactly, working on the body series.
pub fn verify_wave_operator(op: &DiffOp, wave: &WaveSeries, power: i64) -> Result<(), WaveError> {
    let lhs = apply_conjugated(op, &wave.body);
    let rhs = wave.body.shift(-power);
    let diff = lhs.sub(&rhs);
    if let Some((order, _)) = diff.iter().next() {
        return Err(WaveError::EigenCheckFailed { order: *order });
    }
    Ok(())
}

/// Wave function of cell k from minors of the extended derivative matrix
/// of the chain: body coefficient i is (-1)^i M_{k-i} / theta_k. The
/// eigenfunction identity for d^2 + u_k is certified before returning.
pub fn baker(k: usize) -> Result<WaveSeries, WaveError> {
    let fns = chain(k);
    let th = theta(k);
    let mut terms = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let minor = wronskian_minor(&fns, k - i);
        let num = if i % 2 == 1 { -&minor } else { minor };
        let psi = RatFun::from_factored(num, vec![(th.clone(), 1)])?;
        terms.push((i as i64, psi));
    }
    let wave = WaveSeries {
        k,
        body: LaurentSeries::from_terms_exact(terms),
    };
    let u = potential(k);
    verify_wave_operator(&DiffOp::schrodinger(&u), &wave, 2)?;
    Ok(wave)
}

/// Adjoint wave body: x renamed to y and z negated, so coefficient i
/// picks up (-1)^i.
pub fn adjoint_baker(k: usize) -> Result<WaveSeries, WaveError> {
    let wave = baker(k)?;
    let mut terms = Vec::new();
    for (e, c) in wave.body.iter() {
        let cy = c.rename(Sym::X, Sym::Y)?;
        let signed = if e % 2 != 0 { -&cy } else { cy };
        terms.push((*e, signed));
    }
    Ok(WaveSeries {
        k,
        body: LaurentSeries::from_terms_exact(terms),
    })
}

/// Truncated expansion of e^{s z} in zeta: terms s^j / j! at zeta^{-j}
/// for j = 0..depth, floor certified at -depth.
pub fn exp_series(s: &RatFun, depth: i64) -> LaurentSeries {
    assert!(depth >= 0);
    let mut terms = Vec::with_capacity(depth as usize + 1);
    let mut p = RatFun::one();
    for j in 0..=depth {
        if j > 0 {
            p = &p * s;
        }
        terms.push((-j, &p * &RatFun::from_rat(rat_int(1) / factorial(j as u64))));
    }
    LaurentSeries::from_terms_truncated(terms, -depth)
}

/// Residue pattern of z^m Psi(x,z) Psi*(y,z) for m = 0..=m_max: the
/// residue must vanish when m is even or m >= 2k+1. Records, per m,
/// whether the residue vanished.
#[derive(Clone, Debug)]
pub struct BilinearReport {
    pub k: usize,
    /// (moment m, residue vanished)
    pub residues: Vec<(usize, bool)>,
}

pub fn bilinear_check(k: usize, m_max: usize) -> Result<BilinearReport, WaveError> {
    let wave = baker(k)?;
    let adj = adjoint_baker(k)?;
    let prod = wave.body.mul(&adj.body);
    let depth = 2 * k as i64 + m_max as i64 + 2;
    let e = exp_series(&RatFun::from_mpoly(x_minus_y()), depth);
    let total = prod.mul(&e);
    let mut residues = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let r = total.coeff(m as i64 + 1)?;
        let vanished = r.is_zero();
        let must_vanish = m % 2 == 0 || m > 2 * k;
        if must_vanish && !vanished {
            return Err(WaveError::ResidueNonzero { m: m as i64 });
        }
        residues.push((m, vanished));
    }
    Ok(BilinearReport { k, residues })
}

/// Taylor coefficients beta_0..beta_M of the kernel weight
/// g_n(z) = (-1)^(n-1) [sum_{k=0}^{n-1} (2n-k-2)!/(k!(n-k-1)!) z^k] e^{-z/2}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GnSeries {
    pub n: usize,
    pub beta: Vec<Rational>,
}

pub fn gn_series(n: usize, m_top: usize) -> GnSeries {
    assert!(n >= 1);
    let mut bracket = Vec::with_capacity(n);
    for k in 0..n {
        let b = factorial((2 * n - k - 2) as u64)
            / (factorial(k as u64) * factorial((n - k - 1) as u64));
        bracket.push(b);
    }
    GnSeries {
        n,
        beta: convolve_with_exp_half(&bracket, m_top, n.is_multiple_of(2)),
    }
}

/// The same series through the classical orthogonal-polynomial form:
/// (n-1)! L_{n-1}^{(-2n+1)}(z) e^{-z/2}, with the coefficient ratio taken
/// as a finite product so the negative upper parameter is harmless.
pub fn laguerre_gn_series(n: usize, m_top: usize) -> GnSeries {
    assert!(n >= 1);
    let alpha: i64 = -(2 * n as i64) + 1;
    let mut poly = Vec::with_capacity(n);
    for k in 0..n {
        let mut ratio = rat_int(1);
        for j in (k as i64 + 1)..=(n as i64 - 1) {
            ratio *= &rat_int(j + alpha);
        }
        let mut c =
            factorial(n as u64 - 1) * ratio / (factorial(k as u64) * factorial((n - 1 - k) as u64));
        if k % 2 == 1 {
            c = -c;
        }
        poly.push(c);
    }
    GnSeries {
        n,
        beta: convolve_with_exp_half(&poly, m_top, false),
    }
}

/// Multiply a polynomial (coefficient list) by e^{-z/2}, negating the
/// whole series when asked, keeping orders 0..=m_top.
fn convolve_with_exp_half(poly: &[Rational], m_top: usize, negate: bool) -> Vec<Rational> {
    let mut exp_half = Vec::with_capacity(m_top + 1);
    let mut p = rat_int(1);
    for j in 0..=m_top {
        if j > 0 {
            p = &p * &rat(-1, 2);
        }
        exp_half.push(&p / &factorial(j as u64));
    }
    let mut beta = Vec::with_capacity(m_top + 1);
    for m in 0..=m_top {
        let mut s = rat_int(0);
        for (k, b) in poly.iter().enumerate().take(m + 1) {
            s += b * &exp_half[m - k];
        }
        if negate {
            s = -s;
        }
        beta.push(s);
    }
    beta
}

impl GnSeries {
    pub fn order(&self) -> usize {
        self.beta.len() - 1
    }

    pub fn beta(&self, j: usize) -> &Rational {
        &self.beta[j]
    }

    /// Odd coefficients below 2n-1 vanish; the one at 2n-1 does not.
    pub fn verify_odd_vanishing(&self) -> Result<(), WaveError> {
        for j in 1..self.n {
            if self.beta[2 * j - 1] != rat_int(0) {
                return Err(WaveError::SeriesCheckFailed(
                    "low odd coefficient fails to vanish",
                ));
            }
        }
        if 2 * self.n - 1 <= self.order() && self.beta[2 * self.n - 1] == rat_int(0) {
            return Err(WaveError::SeriesCheckFailed(
                "first allowed odd coefficient vanishes",
            ));
        }
        Ok(())
    }

    /// Two-step recursion among odd coefficients:
    /// 8 (2j-1)(j-n) beta_{2j-1} = beta_{2j-3}.
    pub fn verify_recursion(&self) -> Result<(), WaveError> {
        let mut j = 2usize;
        while 2 * j - 1 <= self.order() {
            let lhs = rat_int(8 * (2 * j as i64 - 1) * (j as i64 - self.n as i64))
                * &self.beta[2 * j - 1];
            if lhs != self.beta[2 * j - 3] {
                return Err(WaveError::SeriesCheckFailed("odd recursion fails"));
            }
            j += 1;
        }
        Ok(())
    }

    /// Coefficient form of z g'' - 2(n-1) g' - z g / 4 = 0:
    /// (m+1)(m-2n+2) beta_{m+1} = beta_{m-1} / 4.
    pub fn verify_ode(&self) -> Result<(), WaveError> {
        for m in 0..self.order() {
            let lhs =
                rat_int((m as i64 + 1) * (m as i64 - 2 * self.n as i64 + 2)) * &self.beta[m + 1];
            let rhs = if m == 0 {
                rat_int(0)
            } else {
                &self.beta[m - 1] / &rat_int(4)
            };
            if lhs != rhs {
                return Err(WaveError::SeriesCheckFailed(
                    "series differential equation fails",
                ));
            }
        }
        Ok(())
    }

    /// Agreement with the orthogonal-polynomial form to all stored orders.
    pub fn verify_laguerre(&self) -> Result<(), WaveError> {
        let other = laguerre_gn_series(self.n, self.order());
        if self != &other {
            return Err(WaveError::SeriesCheckFailed(
                "finite-sum and orthogonal-polynomial forms disagree",
            ));
        }
        Ok(())
    }
}

/// Residue-formula heat coefficient from precomputed wave functions:
/// H_n = -2 res_z [ g_n(2(x-y)z) Psi(x,z) Psi*(y,z) ] / (x-y)^{2n-1}.
pub fn residue_from_waves(
    wave: &WaveSeries,
    adj: &WaveSeries,
    n: usize,
) -> Result<RatFun, WaveError> {
    assert!(n >= 1);
    let k = wave.k;
    let m_top = (n + k + 3).max(2 * k + 2);
    let gn = gn_series(n, m_top);
    let xy = RatFun::from_mpoly(x_minus_y());
    let two_xy = &RatFun::from_int(2) * &xy;
    let mut terms = Vec::with_capacity(m_top + 1);
    let mut p = RatFun::one();
    for (j, b) in gn.beta.iter().enumerate() {
        if j > 0 {
            p = &p * &two_xy;
        }
        terms.push((-(j as i64), &p * &RatFun::from_rat(b.clone())));
    }
    let weight = LaurentSeries::from_terms_truncated(terms, -(m_top as i64));
    let e = exp_series(&xy, m_top as i64);
    let prod = wave.body.mul(&adj.body);
    let total = weight.mul(&e).mul(&prod);
    let res = total.coeff(1)?;
    let scaled = &RatFun::from_int(-2) * &res;
    let h = scaled
        .div_by_power(&x_minus_y(), 2 * n as u32 - 1)
        .map_err(|_| WaveError::NonRationalResult)?;
    if h.den().try_divexact(&x_minus_y()).is_some() {
        return Err(WaveError::NonRationalResult);
    }
    Ok(h)
}

/// Residue-formula heat coefficient for cell k at order n.
pub fn hadamard_residue(k: usize, n: usize) -> Result<RatFun, WaveError> {
    let wave = baker(k)?;
    let adj = adjoint_baker(k)?;
    residue_from_waves(&wave, &adj, n)
}
