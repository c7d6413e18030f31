//! End-to-end acceptance checklist. Every check is exact rational
//! arithmetic with zero tolerance; each criterion prints one verdict
//! line (visible under --nocapture) and fails the build on any miss.

use kdvheat_core::scalar::{factorial, rat, rat_int, Rational};
use kdvheat_core::{
    adjoint_baker, baker, bc_pair, diagonal_identity_check, diagonal_identity_generic, gn_series,
    hadamard_table, kdv_flow, potential, residue_from_waves, sqrt_l, DiffOp, Floor, MPoly, PsiDo,
    RatFun, Sym,
};

fn verdict(number: usize, name: &str, result: Result<(), String>) {
    match &result {
        Ok(()) => println!("criterion {number} ({name}): PASS"),
        Err(e) => println!("criterion {number} ({name}): FAIL ({e})"),
    }
    if let Err(e) = result {
        panic!("criterion {number} ({name}) failed: {e}");
    }
}

#[test]
fn criterion_1_termination_indices() {
    verdict(
        1,
        "termination indices",
        (|| {
            for k in 0..=3usize {
                let u = potential(k);
                let table = hadamard_table(&u, k + 1).map_err(|e| format!("cell {k}: {e}"))?;
                if table.termination_index != Some(k + 1) {
                    return Err(format!(
                        "cell {k}: expected first vanishing coefficient at {}, got {:?}",
                        k + 1,
                        table.termination_index
                    ));
                }
            }
            Ok(())
        })(),
    );
}

#[test]
fn criterion_2_commuting_pair_certificates() {
    verdict(
        2,
        "commuting pair certificates",
        (|| {
            for k in 1..=3usize {
                let u = potential(k);
                let pair = bc_pair(&u, k).map_err(|e| format!("cell {k}: {e}"))?;
                if pair.m.order() != Some(2 * k + 1) {
                    return Err(format!("cell {k}: odd partner has wrong order"));
                }
                if k == 1 {
                    let shown = pair.m.to_string();
                    if shown != "d^3 + (-3/x^2)*d + (3/x^3)" {
                        return Err(format!("cell 1 partner mismatch: {shown}"));
                    }
                }
            }
            Ok(())
        })(),
    );
}

#[test]
fn criterion_3_residue_formula_matches_transport() {
    verdict(
        3,
        "residue formula matches transport",
        (|| {
            for k in 0..=3usize {
                let u = potential(k);
                let table = hadamard_table(&u, 4).map_err(|e| format!("cell {k}: {e}"))?;
                let wave = baker(k).map_err(|e| format!("cell {k}: {e}"))?;
                let adj = adjoint_baker(k).map_err(|e| format!("cell {k}: {e}"))?;
                for n in 1..=4usize {
                    let r = residue_from_waves(&wave, &adj, n)
                        .map_err(|e| format!("cell {k} order {n}: {e}"))?;
                    if &r != table.coeff(n) {
                        return Err(format!("cell {k} order {n}: methods disagree"));
                    }
                }
            }
            Ok(())
        })(),
    );
}

#[test]
fn criterion_4_kernel_weight_series() {
    verdict(
        4,
        "kernel weight series",
        (|| {
            for n in 1..=6usize {
                let g = gn_series(n, 2 * n + 6);
                g.verify_odd_vanishing()
                    .map_err(|e| format!("n = {n}: {e}"))?;
                g.verify_recursion().map_err(|e| format!("n = {n}: {e}"))?;
                g.verify_ode().map_err(|e| format!("n = {n}: {e}"))?;
                g.verify_laguerre().map_err(|e| format!("n = {n}: {e}"))?;
            }
            Ok(())
        })(),
    );
}

#[test]
fn criterion_5_diagonal_flow_identity() {
    verdict(
        5,
        "diagonal flow identity",
        (|| {
            for k in 1..=2usize {
                diagonal_identity_generic(k).map_err(|e| format!("generic k = {k}: {e}"))?;
            }
            for cell in 1..=3usize {
                let u = potential(cell);
                for k in 1..=3usize {
                    diagonal_identity_check(&u, k)
                        .map_err(|e| format!("cell {cell}, k = {k}: {e}"))?;
                }
            }
            Ok(())
        })(),
    );
}

#[test]
fn criterion_6_flow_stationarity_sharpness() {
    verdict(
        6,
        "flow stationarity sharpness",
        (|| {
            for k in 1..=3usize {
                let u = potential(k);
                let mut zero_orders = vec![2 * k as u32 + 1];
                if k <= 2 {
                    zero_orders.push(2 * k as u32 + 3);
                }
                for j in zero_orders {
                    let f = kdv_flow(&u, j).map_err(|e| format!("cell {k}, j = {j}: {e}"))?;
                    if !f.is_zero() {
                        return Err(format!("cell {k}: flow {j} should be stationary"));
                    }
                }
                let mut j = 3u32;
                while (j as usize) < 2 * k + 1 {
                    let f = kdv_flow(&u, j).map_err(|e| format!("cell {k}, j = {j}: {e}"))?;
                    if f.is_zero() {
                        return Err(format!("cell {k}: flow {j} should move the potential"));
                    }
                    j += 2;
                }
            }
            Ok(())
        })(),
    );
}

#[test]
fn criterion_7_finite_kernel_certificate() {
    verdict(
        7,
        "finite kernel certificate",
        (|| {
            for k in 0..=2usize {
                let u = potential(k);
                let table = hadamard_table(&u, k + 1).map_err(|e| format!("cell {k}: {e}"))?;
                table
                    .verify_finite_kernel()
                    .map_err(|e| format!("cell {k}: {e}"))?;
            }
            Ok(())
        })(),
    );
}

#[test]
fn criterion_8_constant_potential_series() {
    verdict(
        8,
        "constant potential series",
        (|| {
            let c = RatFun::var(Sym::C);
            let table = hadamard_table(&c, 5).map_err(|e| format!("{e}"))?;
            if table.termination_index.is_some() {
                return Err("constant potential must not terminate".into());
            }
            for n in 0..=5usize {
                let expected =
                    &c.pow(n as u32) * &RatFun::from_rat(rat_int(1) / factorial(n as u64));
                if table.coeff(n) != &expected {
                    return Err(format!("order {n} differs from c^n/n!"));
                }
            }
            Ok(())
        })(),
    );
}

struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }
    fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % ((hi - lo + 1) as u64)) as i64
    }
    fn rat(&mut self) -> Rational {
        rat(self.range(-6, 6), self.range(1, 4))
    }
    fn poly(&mut self, syms: &[Sym]) -> MPoly {
        let mut p = MPoly::zero();
        for _ in 0..self.range(0, 3) {
            let mut m = MPoly::one();
            for s in syms {
                m = &m * &MPoly::var_pow(*s, self.range(0, 2) as u16);
            }
            p = &p + &m.scale(&self.rat());
        }
        p
    }
    fn ratfun_x(&mut self) -> RatFun {
        let n = self.poly(&[Sym::X]);
        let mut d = self.poly(&[Sym::X]);
        while d.is_zero() {
            d = self.poly(&[Sym::X]);
        }
        RatFun::from_mpoly(n)
            .try_div(&RatFun::from_mpoly(d))
            .expect("nonzero denominator")
    }
    fn diffop(&mut self) -> DiffOp {
        let mut coeffs = Vec::new();
        for _ in 0..=self.range(0, 2) {
            coeffs.push(self.ratfun_x());
        }
        DiffOp::new(coeffs)
    }
    fn psido(&mut self) -> PsiDo {
        let base = PsiDo::from_diffop(&self.diffop());
        if self.range(0, 1) == 0 {
            base
        } else {
            let order = -self.range(1, 2);
            base.add(&PsiDo::monomial(order, self.ratfun_x()).truncate(-3))
        }
    }
}

fn common_truncate(a: &PsiDo, b: &PsiDo) -> (PsiDo, PsiDo) {
    let floor_of = |p: &PsiDo| match p.floor() {
        Floor::Exact => None,
        Floor::Truncated(f) => Some(f),
    };
    match (floor_of(a), floor_of(b)) {
        (None, None) => (a.clone(), b.clone()),
        (Some(f), None) | (None, Some(f)) => (a.truncate(f), b.truncate(f)),
        (Some(fa), Some(fb)) => {
            let f = fa.max(fb);
            (a.truncate(f), b.truncate(f))
        }
    }
}

#[test]
fn criterion_9_randomized_law_suites() {
    verdict(
        9,
        "randomized law suites",
        (|| {
            const CASES: u32 = 100;

            let mut rng = Lcg(1001);
            for i in 0..CASES {
                let a = rng.ratfun_x();
                let b = rng.ratfun_x();
                let c = rng.ratfun_x();
                let assoc = &(&a + &b) + &c == &a + &(&b + &c);
                let dist = &a * &(&b + &c) == &(&a * &b) + &(&a * &c);
                let massoc = &(&a * &b) * &c == &a * &(&b * &c);
                if !(assoc && dist && massoc) {
                    return Err(format!("ring axioms, instance {i}"));
                }
            }

            let mut rng = Lcg(1002);
            for i in 0..CASES {
                let p = rng.diffop();
                let q = rng.diffop();
                if p.compose(&q).adjoint() != q.adjoint().compose(&p.adjoint()) {
                    return Err(format!("adjoint anti-homomorphism, instance {i}"));
                }
            }

            let mut rng = Lcg(1003);
            for i in 0..CASES {
                let a = rng.psido();
                let b = rng.psido();
                let c = rng.psido();
                let (l, r) =
                    common_truncate(&a.compose(&b).compose(&c), &a.compose(&b.compose(&c)));
                if l != r {
                    return Err(format!("compose associativity, instance {i}"));
                }
            }

            let mut rng = Lcg(1004);
            for i in 0..CASES {
                let u = rng.ratfun_x();
                let depth = rng.range(2, 4) as u32;
                let s = sqrt_l(&u, depth);
                let defect = PsiDo::from_diffop(&DiffOp::schrodinger(&u)).sub(&s.compose(&s));
                if defect.iter().next().is_some() {
                    return Err(format!("square root self-consistency, instance {i}"));
                }
            }

            let mut rng = Lcg(1005);
            for i in 0..CASES {
                let u = RatFun::from_mpoly(rng.poly(&[Sym::X]));
                let table = hadamard_table(&u, 2)
                    .map_err(|e| format!("transport re-substitution, instance {i}: {e}"))?;
                table
                    .verify_transport()
                    .map_err(|e| format!("transport re-substitution, instance {i}: {e}"))?;
                table
                    .verify_symmetry()
                    .map_err(|e| format!("coefficient symmetry, instance {i}: {e}"))?;
            }

            Ok(())
        })(),
    );
}
