//! Fraction-free Wronskian determinants of polynomial function lists.

use crate::mpoly::MPoly;

/// Bareiss fraction-free determinant. Every division is exact by the
/// Sylvester identity, so the computation stays in the polynomial ring.
pub fn det_bareiss(mut m: Vec<Vec<MPoly>>) -> MPoly {
    let n = m.len();
    if n == 0 {
        return MPoly::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut negate = false;
    let mut prev = MPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return MPoly::zero();
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.divexact(&prev);
            }
            m[i][k] = MPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m.swap_remove(n - 1).swap_remove(n - 1);
    if negate {
        -&d
    } else {
        d
    }
}

/// Derivative rows d^0 f .. d^(rows-1) f for each function, as a matrix
/// with row index = derivative order and column index = function.
fn derivative_matrix(fns: &[MPoly], rows: usize) -> Vec<Vec<MPoly>> {
    let mut m: Vec<Vec<MPoly>> = Vec::with_capacity(rows);
    for r in 0..rows {
        let row = if r == 0 {
            fns.to_vec()
        } else {
            m[r - 1].iter().map(|p| p.deriv_x()).collect()
        };
        m.push(row);
    }
    m
}

/// Wronskian of a list of polynomials with respect to x. Empty list gives 1.
pub fn wronskian(fns: &[MPoly]) -> MPoly {
    det_bareiss(derivative_matrix(fns, fns.len()))
}

/// Minor of the extended derivative matrix: rows are d^0 f .. d^k f with
/// row `drop_row` removed, for k = fns.len(). Dropping the top row gives
/// the plain Wronskian back.
pub fn wronskian_minor(fns: &[MPoly], drop_row: usize) -> MPoly {
    let k = fns.len();
    debug_assert!(drop_row <= k);
    let full = derivative_matrix(fns, k + 1);
    let m: Vec<Vec<MPoly>> = full
        .into_iter()
        .enumerate()
        .filter(|(r, _)| *r != drop_row)
        .map(|(_, row)| row)
        .collect();
    det_bareiss(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::symbol::Sym;

    fn x() -> MPoly {
        MPoly::var(Sym::X)
    }

    #[test]
    fn empty_wronskian_is_one() {
        assert!(wronskian(&[]).is_one());
    }

    #[test]
    fn two_by_two() {
        // W(x, x^3) = x * 3x^2 - x^3 * 1 = 2x^3
        let w = wronskian(&[x(), x().pow(3)]);
        assert_eq!(w, &MPoly::from_int(2) * &x().pow(3));
    }

    #[test]
    fn three_by_three_with_pivot_swap() {
        // W(1, x, x^2) = 2; first column forces no swap, but
        // W(x^2, x, 1) tests the sign bookkeeping: determinant of a
        // column permutation flips by the permutation sign
        let a = wronskian(&[MPoly::one(), x(), x().pow(2)]);
        assert_eq!(a, MPoly::from_int(2));
        let b = wronskian(&[x().pow(2), x(), MPoly::one()]);
        assert_eq!(b, MPoly::from_int(-2));
    }

    #[test]
    fn singular_matrix_is_zero() {
        let w = wronskian(&[x(), &MPoly::constant(rat(2, 1)) * &x()]);
        assert!(w.is_zero());
    }

    #[test]
    fn minor_dropping_top_row_is_wronskian() {
        let fns = [x(), &x().pow(3) + &x()];
        assert_eq!(wronskian_minor(&fns, 2), wronskian(&fns));
    }

    #[test]
    fn minor_expansion_identity() {
        // for a single function f, minors of the 2-row matrix [f; f'] are
        // M_0 = f' (drop row 0) and M_1 = f (drop row 1)
        let f = &x().pow(2) + &MPoly::one();
        assert_eq!(wronskian_minor(std::slice::from_ref(&f), 0), f.deriv_x());
        assert_eq!(wronskian_minor(std::slice::from_ref(&f), 1), f);
    }
}
