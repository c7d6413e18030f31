//! Dense exponent vectors over the fixed symbol table, ordered graded
//! lexicographically.

use crate::symbol::{Sym, NSYM};
use std::cmp::Ordering;

/// A monomial: one exponent per table symbol. Comparison is graded lex,
/// total degree first, ties broken by exponents with table index 0 most
/// significant. This gives a term order compatible with multiplication.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub [u16; NSYM]);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial([0; NSYM])
    }

    pub fn var(s: Sym) -> Monomial {
        Monomial::var_pow(s, 1)
    }

    pub fn var_pow(s: Sym, e: u16) -> Monomial {
        let mut m = [0u16; NSYM];
        m[s.index()] = e;
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exponent(&self, s: Sym) -> u16 {
        self.0[s.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; NSYM];
        for (o, (&a, &b)) in out.iter_mut().zip(self.0.iter().zip(other.0.iter())) {
            *o = a.checked_add(b).expect("monomial exponent overflow");
        }
        Monomial(out)
    }

    /// Exact division, None if any exponent would go negative.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = [0u16; NSYM];
        for (o, (&a, &b)) in out.iter_mut().zip(self.0.iter().zip(other.0.iter())) {
            *o = a.checked_sub(b)?;
        }
        Some(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..NSYM).all(|i| self.0[i] <= other.0[i])
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; NSYM];
        for (o, (&a, &b)) in out.iter_mut().zip(self.0.iter().zip(other.0.iter())) {
            *o = a.min(b);
        }
        Monomial(out)
    }

    pub fn pow(&self, k: u16) -> Monomial {
        let mut out = [0u16; NSYM];
        for (o, &a) in out.iter_mut().zip(self.0.iter()) {
            *o = a.checked_mul(k).expect("monomial exponent overflow");
        }
        Monomial(out)
    }

    /// Symbols with nonzero exponent, in table order.
    pub fn support(&self) -> impl Iterator<Item = (Sym, u16)> + '_ {
        (0..NSYM)
            .filter(|&i| self.0[i] != 0)
            .map(|i| (Sym(i as u8), self.0[i]))
    }

    /// Monomial with the roles of two symbols exchanged.
    pub fn swap(&self, a: Sym, b: Sym) -> Monomial {
        let mut out = self.0;
        out.swap(a.index(), b.index());
        Monomial(out)
    }

    /// Monomial with symbol `from` replaced by `to`; exponents merge.
    pub fn rename(&self, from: Sym, to: Sym) -> Monomial {
        let mut out = self.0;
        let e = out[from.index()];
        out[from.index()] = 0;
        out[to.index()] += e;
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in 0..NSYM {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
