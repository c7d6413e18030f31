//! Dense univariate polynomials in one table symbol whose coefficients are
//! rational functions of the remaining symbols. This is the coefficient
//! field view needed by division, extended gcd and squarefree
//! decomposition during rational integration.

use crate::ratfun::RatFun;
use crate::symbol::Sym;

/// Invariants: no trailing zero coefficients (zero polynomial is an empty
/// vector), and no coefficient depends on the main variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    pub var: Sym,
    coeffs: Vec<RatFun>,
}

impl UniPoly {
    pub fn new(var: Sym, coeffs: Vec<RatFun>) -> UniPoly {
        let mut p = UniPoly { var, coeffs };
        p.trim();
        debug_assert!(p.coeffs.iter().all(|c| !c.depends_on(var)));
        p
    }

    pub fn zero(var: Sym) -> UniPoly {
        UniPoly {
            var,
            coeffs: Vec::new(),
        }
    }

    pub fn one(var: Sym) -> UniPoly {
        UniPoly::new(var, vec![RatFun::one()])
    }

    pub fn constant(var: Sym, c: RatFun) -> UniPoly {
        UniPoly::new(var, vec![c])
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree of the zero polynomial is None.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&RatFun> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> RatFun {
        self.coeffs.get(i).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn coeffs(&self) -> &[RatFun] {
        &self.coeffs
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(&self.coeff(i) + &other.coeff(i));
        }
        UniPoly::new(self.var, out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(&self.coeff(i) - &other.coeff(i));
        }
        UniPoly::new(self.var, out)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.var);
        }
        let mut out = vec![RatFun::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(self.var, out)
    }

    pub fn scale(&self, c: &RatFun) -> UniPoly {
        UniPoly::new(self.var, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Derivative in the main variable only; coefficients are constants
    /// of that variable by invariant.
    pub fn deriv(&self) -> UniPoly {
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c * &RatFun::from_int(i as i64));
        }
        UniPoly::new(self.var, out)
    }

    /// Termwise antiderivative with zero constant.
    pub fn integrate(&self) -> UniPoly {
        let mut out = vec![RatFun::zero()];
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c.try_div(&RatFun::from_int(i as i64 + 1)).expect("nonzero"));
        }
        UniPoly::new(self.var, out)
    }

    /// Division with remainder over the coefficient field.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().expect("nonzero");
        let lead = d.leading().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![RatFun::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let dr = rem.len() - 1;
            let q = rem[dr].try_div(&lead).expect("leading coeff nonzero");
            if !q.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    let t = &q * c;
                    rem[dr - dd + i] = &rem[dr - dd + i] - &t;
                }
                quo[dr - dd] = q;
            }
            rem.pop();
            while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
                rem.pop();
            }
        }
        (UniPoly::new(self.var, quo), UniPoly::new(self.var, rem))
    }

    pub fn divexact(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact univariate division");
        q
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).1
    }

    /// Monic form: leading coefficient 1 in the coefficient field.
    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.recip().expect("leading coeff nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Monic gcd by the Euclidean algorithm over the coefficient field.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended gcd: returns (g, s, t) with s*self + t*other = g, g monic.
    pub fn xgcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let var = self.var;
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = UniPoly::one(var);
        let mut s1 = UniPoly::zero(var);
        let mut t0 = UniPoly::zero(var);
        let mut t1 = UniPoly::one(var);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lc = r0.leading().expect("nonzero").clone();
        let inv = RatFun::one().try_div(&lc).expect("nonzero");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Yun squarefree decomposition of the monic part: returns pairwise
    /// coprime monic squarefree factors with multiplicities whose product
    /// of powers is self divided by its leading coefficient.
    pub fn squarefree(&self) -> Vec<(UniPoly, u32)> {
        let f = self.monic();
        if f.is_constant() {
            return Vec::new();
        }
        let df = f.deriv();
        let u = f.gcd(&df);
        if u.is_constant() {
            return vec![(f, 1)];
        }
        let mut v = f.divexact(&u);
        let mut w = df.divexact(&u);
        let mut out = Vec::new();
        let mut i: u32 = 1;
        let max_iter = f.degree().expect("nonconstant") as u32 + 1;
        while !v.is_constant() {
            assert!(i <= max_iter, "squarefree decomposition failed to converge");
            let z = w.sub(&v.deriv());
            let h = v.gcd(&z);
            if !h.is_constant() {
                out.push((h.clone(), i));
                v = v.divexact(&h);
                w = z.divexact(&h);
            } else {
                w = z;
            }
            i += 1;
        }
        out
    }

    /// Assemble back into a rational function of all symbols.
    pub fn to_ratfun(&self) -> RatFun {
        let mut acc = RatFun::zero();
        let v = RatFun::var(self.var);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(c * &v.pow(i as u32));
        }
        acc
    }
}

/// View a rational function as a quotient of univariate polynomials in one
/// symbol with coefficients free of it.
pub fn split_ratfun(f: &RatFun, var: Sym) -> (UniPoly, UniPoly) {
    let lift = |p: &crate::mpoly::MPoly| -> UniPoly {
        UniPoly::new(
            var,
            p.as_univar(var)
                .into_iter()
                .map(RatFun::from_mpoly)
                .collect(),
        )
    };
    (lift(f.num()), lift(f.den()))
}
