//! Dehn-twist factorizations with homology payloads.
//!
//! A word `t_{v₁} t_{v₂} ⋯ t_{v_μ}` is read as functional composition, so its
//! homology image is the matrix product `T_{v₁} T_{v₂} ⋯ T_{v_μ}` in word order
//! and `t_{f(c)} = f t_c f⁻¹`. Symmetric curves carry an arc descriptor
//! `(w, k)`: the curve is the lift of the half twist `w σ_k w⁻¹`, and its class
//! is `M_w [c_k]` where `M_w` is the word-order product of chain transvections.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::{parse_braid, BraidWord, Letter};
use crate::error::{Error, Result};
use crate::symplectic::{chain_classes, pairing, word_product, SpMatrix};
use crate::Int;

/// Half twist `w σ_k w⁻¹` on `strands` marked points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcDescriptor {
    pub conjugator: BraidWord,
    pub generator: usize,
}

#[derive(Serialize, Deserialize)]
struct ArcJson {
    strands: usize,
    conjugator: String,
    generator: usize,
}

impl Serialize for ArcDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ArcJson { strands: self.conjugator.strands(), conjugator: self.conjugator.to_string(), generator: self.generator }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ArcDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ArcJson::deserialize(d)?;
        let conjugator = parse_braid(j.strands, &j.conjugator).map_err(serde::de::Error::custom)?;
        if j.generator == 0 || j.generator >= j.strands {
            return Err(serde::de::Error::custom("arc generator out of range"));
        }
        Ok(ArcDescriptor { conjugator, generator: j.generator })
    }
}

impl ArcDescriptor {
    pub fn standard(strands: usize, generator: usize) -> Self {
        ArcDescriptor { conjugator: BraidWord::identity(strands), generator }
    }

    /// The half twist as a braid word.
    pub fn braid_word(&self) -> BraidWord {
        let core = BraidWord::new(self.conjugator.strands(), vec![Letter::pos(self.generator)]).expect("generator in range");
        core.conjugate_by(&self.conjugator).expect("same strand count")
    }
}

/// Homology image of a braid word under `σ_k ↦ T_{c_k}`.
pub fn braid_homology(g: usize, w: &BraidWord) -> Result<SpMatrix<Int>> {
    if w.strands() != 2 * g + 2 {
        return Err(Error::RankMismatch { left: w.strands(), right: 2 * g + 2 });
    }
    let c = chain_classes(g);
    let letters: Vec<(Vec<Int>, i64)> = w.letters().iter().map(|l| (c[l.index - 1].clone(), l.sign as i64)).collect();
    word_product(g, &letters)
}

/// A named simple closed curve on the fiber.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Curve {
    pub name: String,
    pub h1: Vec<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arc: Option<ArcDescriptor>,
    /// Class in `H₁(Σ_g²)` on the basis `c₁ … c_{2g+1}`, for curves that are
    /// not lifts of arcs. Arc curves derive it on demand.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub punctured: Option<Vec<Int>>,
}

impl Curve {
    pub fn new(name: impl Into<String>, h1: Vec<Int>) -> Self {
        Curve { name: name.into(), h1, arc: None, punctured: None }
    }

    /// A symmetric curve; its class is derived from the arc.
    pub fn symmetric(name: impl Into<String>, g: usize, arc: ArcDescriptor) -> Result<Self> {
        let m = braid_homology(g, &arc.conjugator)?;
        let base = &chain_classes(g)[arc.generator - 1];
        Ok(Curve { name: name.into(), h1: m.apply(base)?, arc: Some(arc), punctured: None })
    }

    /// Boundary-parallel curve, null-homologous.
    pub fn boundary(name: impl Into<String>, g: usize) -> Self {
        Curve::new(name, vec![0; 2 * g])
    }

    pub fn is_null_homologous(&self) -> bool {
        self.h1.iter().all(|&x| x == 0)
    }

    /// Class on the two-holed fiber, when known.
    pub fn punctured_class(&self, g: usize) -> Result<Option<Vec<Int>>> {
        if let Some(p) = &self.punctured {
            return Ok(Some(p.clone()));
        }
        match &self.arc {
            Some(a) => {
                let mut e = vec![0; 2 * g + 1];
                e[a.generator - 1] = 1;
                Ok(Some(punctured_braid_action(g, &a.conjugator, e)?))
            }
            None => Ok(None),
        }
    }

    /// Image under a mapping class given by its homology matrix, its braid word
    /// for symmetric classes, and a punctured twist `(class, power)` if known.
    fn pushed(&self, name: String, m: &SpMatrix<Int>, braid: Option<&BraidWord>, twist: Option<(Vec<Int>, i64)>) -> Result<Curve> {
        let arc = match (&self.arc, braid) {
            (Some(a), Some(b)) => Some(ArcDescriptor { conjugator: b.concat(&a.conjugator)?.freely_reduced(), generator: a.generator }),
            _ => None,
        };
        let g = self.h1.len() / 2;
        // arc curves rederive their class; others carry it explicitly
        let punctured = match (&arc, self.punctured_class(g)?, twist) {
            (None, Some(p), Some((u, k))) => Some(punctured_transvection(g, &p, &u, k)?),
            _ => None,
        };
        Ok(Curve { name, h1: m.apply(&self.h1)?, arc, punctured })
    }
}

/// Projection `H₁(Σ_g²) → H₁(Σ_g)`, `e_k ↦ [c_k]`.
pub fn cap_punctured(g: usize, v: &[Int]) -> Result<Vec<Int>> {
    if v.len() != 2 * g + 1 {
        return Err(Error::Dimension(format!("punctured class has length {}", v.len())));
    }
    let c = chain_classes(g);
    Ok((0..2 * g).map(|i| v.iter().zip(&c).map(|(x, ck)| x * ck[i]).sum()).collect())
}

/// Degenerate intersection pairing on `H₁(Σ_g²)`, pulled back from the capped surface.
pub fn punctured_pairing(g: usize, u: &[Int], v: &[Int]) -> Result<Int> {
    pairing(&cap_punctured(g, u)?, &cap_punctured(g, v)?)
}

fn punctured_transvection(g: usize, v: &[Int], u: &[Int], power: i64) -> Result<Vec<Int>> {
    let p = punctured_pairing(g, v, u)?;
    Ok(v.iter().zip(u).map(|(a, b)| a + power * p * b).collect())
}

/// Action of a braid word on `H₁(Σ_g²)`, letters applied right to left.
pub fn punctured_braid_action(g: usize, w: &BraidWord, mut v: Vec<Int>) -> Result<Vec<Int>> {
    if w.strands() != 2 * g + 2 {
        return Err(Error::RankMismatch { left: w.strands(), right: 2 * g + 2 });
    }
    for l in w.letters().iter().rev() {
        let mut e = vec![0; 2 * g + 1];
        e[l.index - 1] = 1;
        v = punctured_transvection(g, &v, &e, l.sign as i64)?;
    }
    Ok(v)
}

/// The boundary class `c₁ + c₃ + ⋯ + c_{2g+1}` of the two-holed fiber.
pub fn punctured_boundary(g: usize) -> Vec<Int> {
    (0..2 * g + 1).map(|k| if k % 2 == 0 { 1 } else { 0 }).collect()
}

/// The standard chain curves `c₁ … c_{2g+1}`, all symmetric.
pub fn chain_curves(g: usize) -> Vec<Curve> {
    let classes = chain_classes(g);
    classes
        .into_iter()
        .enumerate()
        .map(|(i, h1)| Curve { name: format!("c{}", i + 1), h1, arc: Some(ArcDescriptor::standard(2 * g + 2, i + 1)), punctured: None })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Twist {
    #[serde(flatten)]
    pub curve: Curve,
    pub sign: i8,
}

impl Twist {
    pub fn pos(curve: Curve) -> Self {
        Twist { curve, sign: 1 }
    }

    fn matrix(&self) -> Result<SpMatrix<Int>> {
        SpMatrix::transvection(&self.curve.h1, self.sign as i64)
    }

    /// Braid word of this twist, when the curve is symmetric.
    pub fn braid_word(&self) -> Option<BraidWord> {
        let w = self.curve.arc.as_ref()?.braid_word();
        Some(if self.sign > 0 { w } else { w.inverse() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Identity,
    BoundaryMultitwist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Section {
    pub square: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

/// An ordered twist word on a genus-`g` surface with `boundary_count` boundary
/// components, equal to `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub genus: usize,
    pub boundary_count: usize,
    pub target: Target,
    pub twists: Vec<Twist>,
    pub sections: Vec<Section>,
}

impl Factorization {
    /// Validates class lengths, the target/boundary pairing and the
    /// homological relation.
    pub fn new(genus: usize, boundary_count: usize, target: Target, twists: Vec<Twist>, sections: Vec<Section>) -> Result<Self> {
        let f = Factorization { genus, boundary_count, target, twists, sections };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        if self.genus == 0 {
            return Err(Error::GenusOutOfRange(0));
        }
        for t in &self.twists {
            if t.curve.h1.len() != 2 * self.genus {
                return Err(Error::Dimension(format!("class of {} has length {}", t.curve.name, t.curve.h1.len())));
            }
            if t.sign.abs() != 1 {
                return Err(Error::Invalid(format!("twist sign {} on {}", t.sign, t.curve.name)));
            }
        }
        if self.target == Target::BoundaryMultitwist && (self.boundary_count == 0 || self.sections.len() != self.boundary_count) {
            return Err(Error::Invalid("boundary multitwist needs one section per boundary component".into()));
        }
        if !self.sp_product()?.is_identity() {
            return Err(Error::NotARelator("homology product is not the identity".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: Factorization = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        f.validate()?;
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("factorization serializes")
    }

    pub fn mu(&self) -> usize {
        self.twists.len()
    }

    pub fn is_pencil(&self) -> bool {
        self.target == Target::BoundaryMultitwist
    }

    /// Word-order product of transvections. Boundary twists are null-homologous,
    /// so the target's image is always the identity.
    pub fn sp_product(&self) -> Result<SpMatrix<Int>> {
        let mut acc = SpMatrix::identity(self.genus);
        for t in &self.twists {
            acc = acc.mul(&t.matrix()?)?;
        }
        Ok(acc)
    }

    /// Prefix products `P₀ = I, P₁, …, P_μ`.
    pub fn prefix_products(&self) -> Result<Vec<SpMatrix<Int>>> {
        let mut out = Vec::with_capacity(self.twists.len() + 1);
        let mut acc = SpMatrix::identity(self.genus);
        out.push(acc.clone());
        for t in &self.twists {
            acc = acc.mul(&t.matrix()?)?;
            out.push(acc.clone());
        }
        Ok(out)
    }

    pub fn word_text(&self) -> String {
        self.twists
            .iter()
            .map(|t| if t.sign > 0 { t.curve.name.clone() } else { format!("{}^-1", t.curve.name) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "genus {} boundary {} mu {}: {}", self.genus, self.boundary_count, self.mu(), self.word_text())
    }
}

fn conjugated_name(base: &str) -> String {
    match base.rsplit_once('#') {
        Some((stem, k)) => match k.parse::<u64>() {
            Ok(k) => format!("{stem}#{}", k + 1),
            Err(_) => format!("{base}#1"),
        },
        None => format!("{base}#1"),
    }
}

/// Elementary transposition at `position, position+1`.
///
/// `Right`: `(t_a, t_b) ↦ (t_b, t_{t_b⁻¹(a)})`. `Left`: `(t_a, t_b) ↦ (t_{t_a(b)}, t_a)`.
/// The two are mutually inverse.
pub fn hurwitz_move(f: &Factorization, position: usize, direction: Direction) -> Result<Factorization> {
    if position + 1 >= f.twists.len() {
        return Err(Error::PositionOutOfRange { position, len: f.twists.len() });
    }
    let a = &f.twists[position];
    let b = &f.twists[position + 1];
    let (first, second) = match direction {
        Direction::Right => {
            let m = b.matrix()?.inverse()?;
            let braid = b.braid_word().map(|w| w.inverse());
            let moved = if pairing(&a.curve.h1, &b.curve.h1)? == 0 && braid.is_none() {
                a.curve.clone()
            } else {
                let tw = b.curve.punctured_class(f.genus)?.map(|u| (u, -(b.sign as i64)));
                a.curve.pushed(conjugated_name(&a.curve.name), &m, braid.as_ref(), tw)?
            };
            (b.clone(), Twist { curve: moved, sign: a.sign })
        }
        Direction::Left => {
            let m = a.matrix()?;
            let braid = a.braid_word();
            let moved = if pairing(&a.curve.h1, &b.curve.h1)? == 0 && braid.is_none() {
                b.curve.clone()
            } else {
                let tw = a.curve.punctured_class(f.genus)?.map(|u| (u, a.sign as i64));
                b.curve.pushed(conjugated_name(&b.curve.name), &m, braid.as_ref(), tw)?
            };
            (Twist { curve: moved, sign: b.sign }, a.clone())
        }
    };
    let mut out = f.clone();
    out.twists[position] = first;
    out.twists[position + 1] = second;
    Ok(out)
}

/// Cyclic permutation: the first `amount` twists move to the end. Valid for
/// both targets since the boundary multitwist is central.
pub fn cyclic_rotate(f: &Factorization, amount: i64) -> Factorization {
    let mut out = f.clone();
    let n = out.twists.len() as i64;
    if n > 0 {
        out.twists.rotate_left(amount.rem_euclid(n) as usize);
    }
    out
}

/// Cap every boundary component. Boundary-parallel twists disappear and each
/// section becomes an exceptional sphere of square −1.
pub fn cap_boundary(f: &Factorization) -> Result<Factorization> {
    if f.target != Target::BoundaryMultitwist {
        return Err(Error::NotAPencil);
    }
    let twists: Vec<Twist> = f.twists.iter().filter(|t| !(t.curve.is_null_homologous() && t.curve.name.starts_with('δ'))).cloned().collect();
    let sections = f.sections.iter().map(|_| Section { square: -1 }).collect();
    Factorization::new(f.genus, 0, Target::Identity, twists, sections)
}

/// A chain of `2h+1` curves and the two boundary curves of its neighborhood.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub curves: Vec<Curve>,
    pub b1: Curve,
    pub b2: Curve,
}

impl ChainSpec {
    /// Validates the intersection pattern and the homological chain identity.
    pub fn new(curves: Vec<Curve>, b1: Curve, b2: Curve) -> Result<Self> {
        if curves.len().is_multiple_of(2) {
            return Err(Error::ChainIdentity("chain length must be odd".into()));
        }
        for i in 0..curves.len() {
            for j in i + 1..curves.len() {
                let p = pairing(&curves[i].h1, &curves[j].h1)?;
                let ok = if j == i + 1 { p.abs() == 1 } else { p == 0 };
                if !ok {
                    return Err(Error::ChainIdentity(format!("⟨{}, {}⟩ = {p}", curves[i].name, curves[j].name)));
                }
            }
        }
        let spec = ChainSpec { curves, b1, b2 };
        if spec.chain_power()? != spec.boundary_product()? {
            return Err(Error::ChainIdentity("chain power differs from boundary product".into()));
        }
        Ok(spec)
    }

    /// Solve the boundary classes from the identity with `[b₂] = −[b₁]`.
    pub fn solve(curves: Vec<Curve>, b1_name: &str, b2_name: &str) -> Result<Self> {
        let genus = curves.first().map(|c| c.h1.len() / 2).ok_or_else(|| Error::ChainIdentity("empty chain".into()))?;
        let h = (curves.len() - 1) / 2;
        let mut m = SpMatrix::identity(genus);
        for c in &curves {
            m = m.mul(&SpMatrix::transvection(&c.h1, 1)?)?;
        }
        let m = m.pow(2 * h as i64 + 2)?;
        let v = rank_one_root(&m)?;
        let b1 = Curve::new(b1_name, v.clone());
        let b2 = Curve::new(b2_name, v.iter().map(|x| -x).collect());
        ChainSpec::new(curves, b1, b2)
    }

    /// Attach the punctured class of `b₁`; `b₂` gets its negative. The class
    /// must cap to `±[b₁]`, and the sign is matched to `[b₁]`.
    pub fn with_punctured(mut self, b1: Vec<Int>) -> Result<Self> {
        let g = self.b1.h1.len() / 2;
        let capped = cap_punctured(g, &b1)?;
        let neg: Vec<Int> = b1.iter().map(|x| -x).collect();
        let v = if capped == self.b1.h1 {
            b1
        } else if capped.iter().zip(&self.b1.h1).all(|(a, b)| *a == -b) {
            neg
        } else {
            return Err(Error::ChainIdentity(format!("punctured class does not cap to [{}]", self.b1.name)));
        };
        self.b2.punctured = Some(v.iter().map(|x| -x).collect());
        self.b1.punctured = Some(v);
        Ok(self)
    }

    pub fn h(&self) -> usize {
        (self.curves.len() - 1) / 2
    }

    pub fn word(&self) -> Vec<Twist> {
        let mut w = Vec::new();
        for _ in 0..2 * self.h() + 2 {
            w.extend(self.curves.iter().cloned().map(Twist::pos));
        }
        w
    }

    fn chain_power(&self) -> Result<SpMatrix<Int>> {
        let g = self.b1.h1.len() / 2;
        let mut m = SpMatrix::identity(g);
        for t in self.word() {
            m = m.mul(&t.matrix()?)?;
        }
        Ok(m)
    }

    fn boundary_product(&self) -> Result<SpMatrix<Int>> {
        SpMatrix::transvection(&self.b1.h1, 1)?.mul(&SpMatrix::transvection(&self.b2.h1, 1)?)
    }
}

/// Given `M = T_v T_{−v} = I + 2 v vᵀ Jᵀ`-shaped, return `v` with positive leading entry.
fn rank_one_root(m: &SpMatrix<Int>) -> Result<Vec<Int>> {
    let n = m.matrix().rows();
    let g = n / 2;
    if m.is_identity() {
        return Ok(vec![0; n]);
    }
    // (M − I)e_j = 2⟨e_j, v⟩v
    for j in 0..n {
        let col: Vec<Int> = (0..n).map(|i| m.matrix().get(i, j) - if i == j { 1 } else { 0 }).collect();
        if col.iter().all(|&x| x == 0) {
            continue;
        }
        let gcd = col.iter().fold(0i64, |a, &b| num_integer::gcd(a, b));
        let mut w: Vec<Int> = col.iter().map(|x| x / gcd).collect();
        if w.iter().find(|&&x| x != 0).copied().unwrap_or(1) < 0 {
            w.iter_mut().for_each(|x| *x = -*x);
        }
        // ⟨e_j, w⟩ = (Jw)_j
        let pj = if j < g { w[g + j] } else { -w[j - g] };
        let k = w.iter().position(|&x| x != 0).expect("nonzero");
        if pj == 0 || col[k] % (2 * pj * w[k]) != 0 {
            continue;
        }
        let lam2 = col[k] / (2 * pj * w[k]);
        let lam = (1..=lam2.max(0)).find(|l| l * l == lam2);
        if let Some(l) = lam {
            let v: Vec<Int> = w.iter().map(|x| x * l).collect();
            let check = SpMatrix::transvection(&v, 2)?;
            if &check == m {
                return Ok(v);
            }
        }
    }
    Err(Error::ChainIdentity("chain power is not a squared transvection".into()))
}

/// Replace the chain word starting at `position` by `t_{b₁} t_{b₂}`.
pub fn unchain(f: &Factorization, position: usize, spec: &ChainSpec) -> Result<Factorization> {
    let word = spec.word();
    let len = word.len();
    if position + len > f.twists.len() {
        return Err(Error::SubwordMismatch { position, detail: format!("needs {len} twists, word has {}", f.twists.len()) });
    }
    for (k, (have, want)) in f.twists[position..position + len].iter().zip(&word).enumerate() {
        if have.curve.name != want.curve.name || have.sign != 1 {
            return Err(Error::SubwordMismatch { position: position + k, detail: format!("found {}, expected {}", have.curve.name, want.curve.name) });
        }
    }
    if spec.chain_power()? != spec.boundary_product()? {
        return Err(Error::ChainIdentity("boundary classes do not satisfy the chain identity".into()));
    }
    let mut twists = f.twists[..position].to_vec();
    twists.push(Twist::pos(spec.b1.clone()));
    twists.push(Twist::pos(spec.b2.clone()));
    twists.extend_from_slice(&f.twists[position + len..]);
    let out = Factorization { twists, ..f.clone() };
    if out.sp_product()? != f.sp_product()? {
        return Err(Error::ChainIdentity("substitution changed the homology product".into()));
    }
    Ok(out)
}

/// Position of the leftmost occurrence of the chain word, if any.
pub fn find_chain(f: &Factorization, spec: &ChainSpec) -> Option<usize> {
    let full = spec.word();
    let word: Vec<&str> = full.iter().map(|t| t.curve.name.as_str()).collect();
    let names: Vec<&str> = f.twists.iter().map(|t| t.curve.name.as_str()).collect();
    names.windows(word.len()).position(|w| w == word.as_slice())
}

/// Descend a symmetric relator to the braid group on `2g+2` strands.
pub fn descend_to_braid(f: &Factorization) -> Result<BraidWord> {
    if f.target != Target::Identity {
        return Err(Error::Precondition("descent needs a relator".into()));
    }
    let mut w = BraidWord::identity(2 * f.genus + 2);
    for t in &f.twists {
        let b = t.braid_word().ok_or_else(|| Error::NotSymmetric(t.curve.name.clone()))?;
        w = w.concat(&b)?;
    }
    Ok(w)
}

/// Full chain on `Σ_g` with boundary curves `δ₁, δ₁′` of its two-holed neighborhood.
pub fn standard_chain(g: usize) -> Result<ChainSpec> {
    if g == 0 {
        return Err(Error::GenusOutOfRange(g));
    }
    ChainSpec::new(chain_curves(g), Curve::boundary("δ1", g), Curve::boundary("δ1'", g))
}

/// A relation between two products of twists, checked homologically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub name: String,
    pub left: Vec<Curve>,
    pub right: Vec<Curve>,
}

impl Relation {
    pub fn holds_homologically(&self) -> Result<bool> {
        let g = self.left.first().or(self.right.first()).map(|c| c.h1.len() / 2).unwrap_or(1);
        let prod = |cs: &[Curve]| -> Result<SpMatrix<Int>> {
            let mut m = SpMatrix::identity(g);
            for c in cs {
                m = m.mul(&SpMatrix::transvection(&c.h1, 1)?)?;
            }
            Ok(m)
        };
        Ok(prod(&self.left)? == prod(&self.right)?)
    }
}

/// Lantern on the four-holed sphere bounded by `c₁, c₃, c₅` and a fourth
/// curve `d₄` with `[d₄] = −[c₁] − [c₃] − [c₅]`.
pub fn lantern_quadruple(g: usize) -> Result<Relation> {
    if g < 2 {
        return Err(Error::GenusOutOfRange(g));
    }
    let c = chain_classes(g);
    let (d1, d2, d3) = (c[0].clone(), c[2].clone(), c[4].clone());
    let d4: Vec<Int> = (0..2 * g).map(|i| -(d1[i] + d2[i] + d3[i])).collect();
    let sum = |u: &[Int], v: &[Int]| u.iter().zip(v).map(|(a, b)| a + b).collect::<Vec<Int>>();
    let relation = Relation {
        name: "lantern".into(),
        left: vec![Curve::new("x", sum(&d1, &d2)), Curve::new("y", sum(&d2, &d3)), Curve::new("z", sum(&d1, &d3))],
        right: vec![Curve::new("d1", d1), Curve::new("d2", d2), Curve::new("d3", d3), Curve::new("d4", d4)],
    };
    if !relation.holds_homologically()? {
        return Err(Error::ChainIdentity("lantern classes".into()));
    }
    Ok(relation)
}
