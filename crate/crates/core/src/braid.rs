//! Braid words on the marked disk and the Artin action on the free group.
//!
//! Composition convention: a braid word acts left to right, so the first
//! letter acts first. For words `u` and `v`, acting by `uv` is acting by `u`
//! and then by `v`:
//!
//! ```text
//! artin_act(uv, x) == artin_act(v, artin_act(u, x))
//! ```
//!
//! The generator `σᵢ` sends `xᵢ ↦ xᵢ xᵢ₊₁ xᵢ⁻¹`, `xᵢ₊₁ ↦ xᵢ` and fixes the
//! other free generators. The action is faithful, which makes it an exact
//! oracle for equality in the braid group.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A signed generator. `index` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub index: usize,
    pub sign: i8,
}

impl Letter {
    pub fn pos(index: usize) -> Self {
        Letter { index, sign: 1 }
    }

    pub fn neg(index: usize) -> Self {
        Letter { index, sign: -1 }
    }

    pub fn inverse(self) -> Self {
        Letter { index: self.index, sign: -self.sign }
    }
}

/// A word in the free group of the given rank, always freely reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord { rank, letters: Vec::new() }
    }

    pub fn generator(rank: usize, index: usize) -> Result<Self> {
        if index == 0 || index > rank {
            return Err(Error::GeneratorOutOfRange { index, strands: rank });
        }
        Ok(FreeWord { rank, letters: vec![Letter::pos(index)] })
    }

    pub fn from_letters(rank: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let mut w = FreeWord::identity(rank);
        for l in letters {
            if l.index == 0 || l.index > rank || l.sign.abs() != 1 {
                return Err(Error::GeneratorOutOfRange { index: l.index, strands: rank });
            }
            w.push(l);
        }
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        for &l in &other.letters {
            out.push(l);
        }
        out
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Set of generator indices that occur in the word.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.letters.iter().map(|l| l.index).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Replace every generator by its image.
    fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let rank = images.first().map(|w| w.rank).unwrap_or(self.rank);
        let mut out = FreeWord::identity(rank);
        for l in &self.letters {
            let img = &images[l.index - 1];
            if l.sign > 0 {
                for &m in &img.letters {
                    out.push(m);
                }
            } else {
                for &m in img.letters.iter().rev() {
                    out.push(m.inverse());
                }
            }
        }
        out
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| if l.sign > 0 { format!("x{}", l.index) } else { format!("x{}^-1", l.index) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A word in the Artin generators of the braid group on `strands` strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::ZeroStrands);
        }
        for l in &letters {
            if l.index == 0 || l.index >= strands || l.sign.abs() != 1 {
                return Err(Error::GeneratorOutOfRange { index: l.index, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Build from signed integers: `3` is `σ₃`, `-3` is `σ₃⁻¹`.
    pub fn from_signed(strands: usize, gens: &[i64]) -> Result<Self> {
        let letters = gens
            .iter()
            .map(|&g| Letter { index: g.unsigned_abs() as usize, sign: if g > 0 { 1 } else { -1 } })
            .collect();
        BraidWord::new(strands, letters)
    }

    /// `σ₁σ₂…σ_{n−1}`.
    pub fn rotation(strands: usize) -> Self {
        BraidWord { strands, letters: (1..strands).map(Letter::pos).collect() }
    }

    /// The half twist `Δ` in its standard positive form.
    pub fn half_twist(strands: usize) -> Self {
        let mut letters = Vec::new();
        for top in (1..strands).rev() {
            for i in 1..=top {
                letters.push(Letter::pos(i));
            }
        }
        BraidWord { strands, letters }
    }

    /// The full twist `Δ²` raised to `k` (negative `k` gives inverses).
    pub fn full_twist(strands: usize, k: i64) -> Self {
        let base = BraidWord::rotation(strands).pow(strands as i64);
        base.pow(k)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::RankMismatch { left: self.strands, right: other.strands });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn pow(&self, k: i64) -> BraidWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// `w · self · w⁻¹`.
    pub fn conjugate_by(&self, w: &BraidWord) -> Result<BraidWord> {
        w.concat(self)?.concat(&w.inverse())
    }

    /// Remove adjacent `σᵢσᵢ⁻¹` pairs.
    pub fn freely_reduced(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign as i64).sum()
    }

    /// The induced permutation: strand starting at position `p` ends at `perm[p]` (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // at[pos] = strand
        for l in &self.letters {
            at.swap(l.index - 1, l.index);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Images of all free generators `x₁…xₙ` under the action of this word.
    pub fn generator_images(&self) -> Vec<FreeWord> {
        let n = self.strands;
        // Process letters right to left: images[k] holds Ψ(x_k) for the suffix
        // processed so far, and prepending a letter only touches two images.
        let mut images: Vec<FreeWord> = (1..=n).map(|k| FreeWord::generator(n, k).unwrap()).collect();
        for l in self.letters.iter().rev() {
            let i = l.index - 1;
            let a = images[i].clone();
            let b = images[i + 1].clone();
            if l.sign > 0 {
                images[i] = a.mul(&b).mul(&a.inverse());
                images[i + 1] = a;
            } else {
                images[i] = b.clone();
                images[i + 1] = b.inverse().mul(&a).mul(&b);
            }
        }
        images
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| if l.sign > 0 { format!("s{}", l.index) } else { format!("s{}^-1", l.index) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Parse the text form `s1 s2^-1 s3` on a given number of strands.
pub fn parse_braid(strands: usize, text: &str) -> Result<BraidWord> {
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        let body = tok
            .strip_prefix('s')
            .ok_or_else(|| Error::Parse(format!("token `{tok}` must start with `s`")))?;
        let (idx, sign) = match body.split_once('^') {
            Some((i, "-1")) => (i, -1),
            Some((i, "1")) => (i, 1),
            Some(_) => return Err(Error::Parse(format!("bad exponent in `{tok}`"))),
            None => (body, 1),
        };
        let index = usize::from_str(idx).map_err(|_| Error::Parse(format!("bad index in `{tok}`")))?;
        letters.push(Letter { index, sign });
    }
    BraidWord::new(strands, letters)
}

/// Image of `x` under the automorphism induced by `w`.
pub fn artin_act(w: &BraidWord, x: &FreeWord) -> Result<FreeWord> {
    if w.strands != x.rank {
        return Err(Error::RankMismatch { left: w.strands, right: x.rank });
    }
    Ok(x.substitute(&w.generator_images()))
}

/// Exact equality in the braid group.
pub fn braid_equal(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    if u.strands != v.strands {
        return Err(Error::RankMismatch { left: u.strands, right: v.strands });
    }
    Ok(u.generator_images() == v.generator_images())
}

/// The boundary word `x₁x₂…xₙ`.
pub fn boundary_word(rank: usize) -> FreeWord {
    FreeWord { rank, letters: (1..=rank).map(Letter::pos).collect() }
}

fn conjugation_images(rank: usize, gamma: &FreeWord, count: usize) -> Vec<FreeWord> {
    let gi = gamma.inverse();
    (1..=count)
        .map(|k| gamma.mul(&FreeWord::generator(rank, k).unwrap()).mul(&gi))
        .collect()
}

/// Returns `k` when `w = Δ^{2k}`, `None` otherwise.
pub fn full_twist_power(w: &BraidWord) -> Option<i64> {
    let n = w.strands as i64;
    if n <= 1 {
        return Some(0);
    }
    let e = w.exponent_sum();
    let per = n * (n - 1);
    if e % per != 0 {
        return None;
    }
    let k = e / per;
    // Δ^{2k} acts as conjugation by (x₁…xₙ)^k.
    let gamma = boundary_word(w.strands);
    let gamma = if k >= 0 {
        (0..k).fold(FreeWord::identity(w.strands), |acc, _| acc.mul(&gamma))
    } else {
        let gi = gamma.inverse();
        (0..-k).fold(FreeWord::identity(w.strands), |acc, _| acc.mul(&gi))
    };
    let expected = conjugation_images(w.strands, &gamma, w.strands);
    (w.generator_images() == expected).then_some(k)
}

/// Where the conjugating loop of a point push lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PushModel {
    /// Exact conjugation in the free group of the marked disk.
    Disk,
    /// Conjugation in π₁ of the marked sphere punctured at the reference
    /// point, where `x₁⋯xₙ = 1`; the loop is written over `x₁…x_{n−1}`.
    Sphere,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointPush {
    pub loop_word: FreeWord,
    pub model: PushModel,
}

/// Find `γ` with `images[k] = γ x_{k+1} γ⁻¹` for every `k`, in the free group of rank `rank`.
fn find_conjugator(rank: usize, images: &[FreeWord]) -> Option<FreeWord> {
    if images.is_empty() {
        return Some(FreeWord::identity(rank));
    }
    let u = &images[0];
    let len = u.len();
    if len.is_multiple_of(2) {
        return None;
    }
    let mid = len / 2;
    if u.letters[mid] != Letter::pos(1) {
        return None;
    }
    let p = FreeWord { rank, letters: u.letters[..mid].to_vec() };
    if p.mul(&FreeWord::generator(rank, 1).unwrap()).mul(&p.inverse()) != *u {
        return None;
    }
    // γ = p · x₁^m; recover m from the second image when there is one.
    let m: i64 = if images.len() > 1 {
        let inner = p.inverse().mul(&images[1]).mul(&p);
        let run = inner.letters.iter().take_while(|l| l.index == 1).count();
        let sign = inner.letters.first().map(|l| l.sign as i64).unwrap_or(0);
        sign * run as i64
    } else {
        0
    };
    let x1 = FreeWord::generator(rank, 1).unwrap();
    let power = if m >= 0 {
        (0..m).fold(FreeWord::identity(rank), |acc, _| acc.mul(&x1))
    } else {
        (0..-m).fold(FreeWord::identity(rank), |acc, _| acc.mul(&x1.inverse()))
    };
    let gamma = p.mul(&power);
    (conjugation_images(rank, &gamma, images.len()) == images).then_some(gamma)
}

/// Recognize `w` as a point push of the reference point: the action is
/// conjugation by a single loop. The disk model is tried first; failing that,
/// the sphere model (reference point off the disk) is tried.
pub fn point_push_check(w: &BraidWord) -> Option<PointPush> {
    let n = w.strands;
    if !w.is_pure() {
        return None;
    }
    let images = w.generator_images();
    if let Some(g) = find_conjugator(n, &images) {
        return Some(PointPush { loop_word: g, model: PushModel::Disk });
    }
    if n < 2 {
        return None;
    }
    // Sphere model: eliminate xₙ = (x₁⋯x_{n−1})⁻¹ and drop the last image.
    let r = n - 1;
    let mut subst: Vec<FreeWord> = (1..=r).map(|k| FreeWord::generator(r, k).unwrap()).collect();
    subst.push(boundary_word(r).inverse());
    let projected: Vec<FreeWord> = images[..r].iter().map(|img| img.substitute(&subst)).collect();
    let gamma = find_conjugator(r, &projected)?;
    Some(PointPush { loop_word: FreeWord { rank: n, letters: gamma.letters }, model: PushModel::Sphere })
}
