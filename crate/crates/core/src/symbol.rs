//! Fixed symbol table shared by every polynomial in the crate.
//!
//! The table is closed: all computations live in the ring
//! Q[x, y, t, u0..u12, c, s3, s5, ..., s21]. A fixed table keeps monomials
//! dense and comparison branch-free. Order is significant: it is the
//! precedence used by the graded lexicographic monomial order, with `x`
//! most significant.

use std::fmt;

/// Number of symbols in the table.
pub const NSYM: usize = 27;

/// Highest jet index available for the generic potential: u0..u12 are the
/// symbols u, u', ..., u^(12).
pub const MAX_JET: usize = 12;

/// A symbol, identified by its index in the fixed table.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Sym(pub u8);

impl Sym {
    /// Spatial variable x.
    pub const X: Sym = Sym(0);
    /// Second spatial point y.
    pub const Y: Sym = Sym(1);
    /// Time variable t.
    pub const T: Sym = Sym(2);
    /// Constant-potential symbol c.
    pub const C: Sym = Sym(16);

    /// Jet symbol u^(i), the i-th derivative of the generic potential.
    /// Panics if i exceeds [`MAX_JET`].
    pub fn jet(i: usize) -> Sym {
        assert!(i <= MAX_JET, "jet order {i} out of table range");
        Sym(3 + i as u8)
    }

    /// Integration constant s_{2j-1} of the potential chain, for odd
    /// 3 <= 2j-1 <= 21.
    pub fn s_const(odd: usize) -> Sym {
        assert!(
            odd % 2 == 1 && (3..=21).contains(&odd),
            "s constant index {odd} out of table range"
        );
        Sym(17 + ((odd - 3) / 2) as u8)
    }

    /// True for the jet symbols u0..u12.
    pub fn is_jet(self) -> bool {
        (3..=15).contains(&self.0)
    }

    /// Jet order if this is a jet symbol.
    pub fn jet_order(self) -> Option<usize> {
        if self.is_jet() {
            Some(self.0 as usize - 3)
        } else {
            None
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Canonical name used by the text format.
    pub fn name(self) -> &'static str {
        const NAMES: [&str; NSYM] = [
            "x", "y", "t", "u0", "u1", "u2", "u3", "u4", "u5", "u6", "u7", "u8", "u9", "u10",
            "u11", "u12", "c", "s3", "s5", "s7", "s9", "s11", "s13", "s15", "s17", "s19", "s21",
        ];
        NAMES[self.0 as usize]
    }

    /// Inverse of [`Sym::name`].
    pub fn from_name(name: &str) -> Option<Sym> {
        (0..NSYM as u8).map(Sym).find(|s| s.name() == name)
    }

    /// All symbols in table order.
    pub fn all() -> impl Iterator<Item = Sym> {
        (0..NSYM as u8).map(Sym)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_layout() {
        assert_eq!(Sym::X.index(), 0);
        assert_eq!(Sym::Y.index(), 1);
        assert_eq!(Sym::T.index(), 2);
        assert_eq!(Sym::jet(0).index(), 3);
        assert_eq!(Sym::jet(12).index(), 15);
        assert_eq!(Sym::C.index(), 16);
        assert_eq!(Sym::s_const(3).index(), 17);
        assert_eq!(Sym::s_const(21).index(), 26);
    }

    #[test]
    fn names_round_trip() {
        for s in Sym::all() {
            assert_eq!(Sym::from_name(s.name()), Some(s));
        }
        assert_eq!(Sym::from_name("bogus"), None);
    }

    #[test]
    fn jet_accessors() {
        assert!(Sym::jet(4).is_jet());
        assert_eq!(Sym::jet(4).jet_order(), Some(4));
        assert!(!Sym::X.is_jet());
        assert_eq!(Sym::C.jet_order(), None);
    }
}
