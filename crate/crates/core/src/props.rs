//! Seeded random checks of the algebraic laws the pipelines rely on.

use rand::Rng;

use crate::braid::{braid_equal, BraidWord, Letter};
use crate::error::Result;
use crate::invariants::{euler_characteristic, h1_of_total_space, meyer_cocycle, signature, spin_test};
use crate::mcg::{cyclic_rotate, hurwitz_move, Direction, Factorization};
use crate::symplectic::SpMatrix;
use crate::Int;

/// Outcome of a batch of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Product of `len` transvections along vectors with entries in `−2..=2`.
pub fn random_sp<R: Rng>(genus: usize, len: usize, rng: &mut R) -> Result<SpMatrix<Int>> {
    let mut m = SpMatrix::identity(genus);
    for _ in 0..len {
        let v: Vec<Int> = (0..2 * genus).map(|_| rng.gen_range(-2..=2)).collect();
        let k = if rng.gen_bool(0.5) { 1 } else { -1 };
        m = m.mul(&SpMatrix::transvection(&v, k)?)?;
    }
    Ok(m)
}

/// `τ(A,B) + τ(AB,C) − τ(A,BC) − τ(B,C)`.
pub fn cocycle_defect(a: &SpMatrix<Int>, b: &SpMatrix<Int>, c: &SpMatrix<Int>) -> Result<i64> {
    let ab = a.mul(b)?;
    let bc = b.mul(c)?;
    Ok(meyer_cocycle(a, b)? + meyer_cocycle(&ab, c)? - meyer_cocycle(a, &bc)? - meyer_cocycle(b, c)?)
}

/// Cocycle identity on `count` triples, alternating genus 1 and 2.
pub fn cocycle_checks<R: Rng>(count: usize, rng: &mut R) -> Result<Tally> {
    let mut t = Tally::default();
    for k in 0..count {
        let genus = 1 + k % 2;
        let len = rng.gen_range(1..=3);
        let (a, b, c) = (random_sp(genus, len, rng)?, random_sp(genus, len, rng)?, random_sp(genus, len, rng)?);
        let d = cocycle_defect(&a, &b, &c)?;
        t.record(d == 0, || format!("cocycle defect {d} on genus {genus} triple {k}"));
    }
    Ok(t)
}

pub fn random_braid<R: Rng>(strands: usize, len: usize, rng: &mut R) -> Result<BraidWord> {
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..strands);
            if rng.gen_bool(0.5) {
                Letter::pos(i)
            } else {
                Letter::neg(i)
            }
        })
        .collect();
    BraidWord::new(strands, letters)
}

/// A random defining relator of the braid group, as a word equal to 1.
fn random_relator<R: Rng>(strands: usize, rng: &mut R) -> Result<BraidWord> {
    let i = rng.gen_range(1..strands);
    let gens: Vec<i64> = if strands > 2 && rng.gen_bool(0.5) {
        let i = rng.gen_range(1..strands - 1) as i64;
        vec![i, i + 1, i, -(i + 1), -i, -(i + 1)]
    } else {
        let far: Vec<usize> = (1..strands).filter(|&j| j.abs_diff(i) > 1).collect();
        match far.get(rng.gen_range(0..far.len().max(1))) {
            Some(&j) => vec![i as i64, j as i64, -(i as i64), -(j as i64)],
            None => vec![i as i64, -(i as i64)],
        }
    };
    BraidWord::from_signed(strands, &gens)
}

/// Inserting a relator, or appending `w⁻¹`, must not change the action.
pub fn artin_checks<R: Rng>(count: usize, rng: &mut R) -> Result<Tally> {
    let mut t = Tally::default();
    for k in 0..count {
        let n = rng.gen_range(2..=8);
        let len = rng.gen_range(0..=50);
        let w = random_braid(n, len, rng)?;
        let cut = rng.gen_range(0..=w.len());
        let (head, tail) = w.letters().split_at(cut);
        let padded = BraidWord::new(n, head.to_vec())?.concat(&random_relator(n, rng)?)?.concat(&BraidWord::new(n, tail.to_vec())?)?;
        t.record(braid_equal(&w, &padded)?, || format!("relator insertion changed word {k}: {w}"));
        t.record(braid_equal(&w.concat(&w.inverse())?, &BraidWord::identity(n))?, || format!("w w^-1 acts nontrivially for word {k}"));
    }
    Ok(t)
}

/// `(e, σ, H₁, spin)` with spin kept as a result so undetermined cases compare too.
fn fingerprint(f: &Factorization) -> Result<(i64, i64, String, std::result::Result<bool, String>)> {
    Ok((euler_characteristic(f)?, signature(f)?, h1_of_total_space(f)?.to_string(), spin_test(f).map_err(|e| e.to_string())))
}

/// A random elementary transposition or cyclic rotation.
pub fn random_move<R: Rng>(f: &Factorization, rng: &mut R) -> Result<Factorization> {
    if f.mu() < 2 || rng.gen_bool(0.2) {
        return Ok(cyclic_rotate(f, rng.gen_range(-(f.mu() as i64)..=f.mu() as i64)));
    }
    let p = rng.gen_range(0..f.mu() - 1);
    let d = if rng.gen_bool(0.5) { Direction::Left } else { Direction::Right };
    hurwitz_move(f, p, d)
}

/// Walks restart from the base word once a class entry or an arc
/// conjugator outgrows these bounds. One move can cube an entry, so the
/// entry bound keeps every transvection inside `i64`.
pub const WALK_MAX_ENTRY: Int = 64;
pub const WALK_MAX_CONJUGATOR: usize = 400;

fn oversized(f: &Factorization) -> bool {
    f.twists.iter().any(|t| {
        t.curve.h1.iter().any(|x| x.abs() > WALK_MAX_ENTRY) || t.curve.arc.as_ref().is_some_and(|a| a.conjugator.len() > WALK_MAX_CONJUGATOR)
    })
}

/// Invariants stay fixed along random walks totalling `count` moves.
pub fn move_checks<R: Rng>(f: &Factorization, count: usize, rng: &mut R) -> Result<Tally> {
    let base = fingerprint(f)?;
    let mut t = Tally::default();
    let mut cur = f.clone();
    for k in 0..count {
        if oversized(&cur) {
            cur = f.clone();
        }
        cur = random_move(&cur, rng)?;
        let ok = cur.sp_product()?.is_identity() && fingerprint(&cur)? == base;
        t.record(ok, || format!("invariants changed after move {k}"));
    }
    Ok(t)
}
