//! Laurent series with certified truncation floors.
//!
//! A series is a finite set of stored coefficients plus a floor state. An
//! `Exact` series is known everywhere: unstored coefficients are zero. A
//! `Truncated(f)` series is known only at exponents >= f; everything below
//! is unknown, and asking for it is a typed error rather than a silent
//! zero. Arithmetic propagates floors soundly: a result coefficient is
//! stored only when every contribution to it came from known coefficients.

use crate::error::ExactError;
use crate::ratfun::RatFun;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Floor {
    /// All coefficients are known; unstored ones are zero.
    Exact,
    /// Coefficients below this exponent are unknown.
    Truncated(i64),
}

impl Floor {
    pub fn merge(self, other: Floor) -> Floor {
        match (self, other) {
            (Floor::Exact, f) => f,
            (f, Floor::Exact) => f,
            (Floor::Truncated(a), Floor::Truncated(b)) => Floor::Truncated(a.max(b)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    coeffs: BTreeMap<i64, RatFun>,
    floor: Floor,
}

impl LaurentSeries {
    pub fn zero() -> LaurentSeries {
        LaurentSeries {
            coeffs: BTreeMap::new(),
            floor: Floor::Exact,
        }
    }

    pub fn one() -> LaurentSeries {
        LaurentSeries::monomial(0, RatFun::one())
    }

    pub fn monomial(exp: i64, c: RatFun) -> LaurentSeries {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LaurentSeries {
            coeffs,
            floor: Floor::Exact,
        }
    }

    pub fn from_terms_exact(terms: impl IntoIterator<Item = (i64, RatFun)>) -> LaurentSeries {
        let mut s = LaurentSeries::zero();
        for (e, c) in terms {
            s.add_coeff(e, c);
        }
        s
    }

    pub fn from_terms_truncated(
        terms: impl IntoIterator<Item = (i64, RatFun)>,
        floor: i64,
    ) -> LaurentSeries {
        let mut s = LaurentSeries::from_terms_exact(terms);
        s.coeffs.retain(|e, _| *e >= floor);
        s.floor = Floor::Truncated(floor);
        s
    }

    pub fn floor(&self) -> Floor {
        self.floor
    }

    pub fn is_exact(&self) -> bool {
        self.floor == Floor::Exact
    }

    /// Exactly the zero series (requires exactness: a truncated series is
    /// never known to be zero).
    pub fn is_zero(&self) -> bool {
        self.is_exact() && self.coeffs.is_empty()
    }

    /// Highest exponent with a (known) nonzero coefficient.
    pub fn top(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest stored exponent.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Highest exponent at which the series could be nonzero, counting the
    /// unknown region of a truncated series.
    fn top_possible(&self) -> Option<i64> {
        let stored = self.top();
        match self.floor {
            Floor::Exact => stored,
            Floor::Truncated(f) => Some(stored.map(|t| t.max(f - 1)).unwrap_or(f - 1)),
        }
    }

    fn add_coeff(&mut self, e: i64, c: RatFun) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(e) {
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

    /// Known coefficient at an exponent; an exponent below the floor is a
    /// truncation error.
    pub fn coeff(&self, e: i64) -> Result<RatFun, ExactError> {
        if let Floor::Truncated(f) = self.floor {
            if e < f {
                return Err(ExactError::Truncation { want: e, floor: f });
            }
        }
        Ok(self.coeffs.get(&e).cloned().unwrap_or_else(RatFun::zero))
    }

    /// Stored (known, nonzero) terms in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&i64, &RatFun)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        let floor = self.floor.merge(other.floor);
        let mut out = LaurentSeries {
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

    pub fn neg(&self) -> LaurentSeries {
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
            floor: self.floor,
        }
    }

    pub fn sub(&self, other: &LaurentSeries) -> LaurentSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &RatFun) -> LaurentSeries {
        if c.is_zero() {
            // scaling by zero erases even unknown coefficients
            return LaurentSeries::zero();
        }
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|(e, a)| (*e, a * c)).collect(),
            floor: self.floor,
        }
    }

    /// Multiply by a single power of the variable.
    pub fn shift(&self, k: i64) -> LaurentSeries {
        LaurentSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
            floor: match self.floor {
                Floor::Exact => Floor::Exact,
                Floor::Truncated(f) => Floor::Truncated(f + k),
            },
        }
    }

    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        if self.is_zero() || other.is_zero() {
            return LaurentSeries::zero();
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
        let mut out = LaurentSeries {
            coeffs: BTreeMap::new(),
            floor,
        };
        let keep = |e: i64| match floor {
            Floor::Exact => true,
            Floor::Truncated(f) => e >= f,
        };
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let e = ea + eb;
                if keep(e) {
                    out.add_coeff(e, ca * cb);
                }
            }
        }
        out
    }

    /// Apply a function to every stored coefficient, preserving the floor.
    pub fn map_coeffs(&self, f: impl Fn(&RatFun) -> RatFun) -> LaurentSeries {
        let mut out = LaurentSeries {
            coeffs: BTreeMap::new(),
            floor: self.floor,
        };
        for (e, c) in &self.coeffs {
            out.add_coeff(*e, f(c));
        }
        out
    }

    /// Raise the floor, discarding coefficients below it.
    pub fn truncate(&self, floor: i64) -> LaurentSeries {
        let mut out = self.clone();
        out.floor = out.floor.merge(Floor::Truncated(floor));
        if let Floor::Truncated(f) = out.floor {
            out.coeffs.retain(|e, _| *e >= f);
        }
        out
    }

    /// True when every known coefficient in [lo, hi] vanishes. Errors if
    /// part of the range is below the floor.
    pub fn known_zero_on(&self, lo: i64, hi: i64) -> Result<bool, ExactError> {
        if let Floor::Truncated(f) = self.floor {
            if lo < f {
                return Err(ExactError::Truncation { want: lo, floor: f });
            }
        }
        Ok(!self.coeffs.range(lo..=hi).any(|(_, c)| !c.is_zero()))
    }
}
