//! Named constructions and the reference table they are checked against.
//!
//! `Z_g` is realized by an explicit positive word that is braid-equal to the
//! full twist on `2g+2` strands:
//!
//! ```text
//! W · (c₁c₂c₃)⁴ · (c₅ ⋯ c_{2g+1})^{2g−2}
//! ```
//!
//! where `W` is the full twist of a four-strand cable around a `(2g−2)`-strand
//! cable, written positively. Every twist is a standard chain curve, so the
//! word lifts to a relation in the mapping class group of the two-holed
//! fiber and descends to `Δ²`. Unchaining the long block gives `X_g(0)` and
//! then unchaining the genus-one block gives `X_g(1)`. `W` contains no
//! further genus-one blocks, so for `i ≥ 2` the catalog falls back on exact
//! substitution arithmetic (local Meyer sums of the two block types) for `e`
//! and `σ`, on the cover ledger for the spin flag, and reports `H₁` as
//! undetermined.

use serde::Serialize;

use crate::braid::BraidWord;
use crate::cover::{endgame_script, parse_script, replay, tracked_cover_invariants, CoverState, Start};
use crate::error::{Error, Result};
use crate::invariants::{blow_down, cocycle_sum, h1_of_total_space, signature, spin_test, AbelianGroup, InvariantVector};
use crate::mcg::{chain_curves, find_chain, standard_chain, unchain, ChainSpec, Curve, Factorization, Section, Target, Twist};
use crate::Int;

/// Smallest genus of the `X_g(i)` family.
pub const G_MIN: usize = 3;
/// Largest genus the report accepts.
pub const G_MAX: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kodaira {
    NegInfinity,
    Zero,
    One,
}

impl std::fmt::Display for Kodaira {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kodaira::NegInfinity => "-inf",
            Kodaira::Zero => "0",
            Kodaira::One => "1",
        })
    }
}

impl Serialize for Kodaira {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn check_range(g: usize, i: usize) -> Result<()> {
    if g < G_MIN {
        return Err(Error::GenusOutOfRange(g));
    }
    if i >= g {
        return Err(Error::IndexOutOfRange(format!("i = {i} for genus {g}")));
    }
    Ok(())
}

/// Symplectic Kodaira dimension of `X'_g(i)`, as a static lookup.
pub fn kodaira(g: usize, i: usize) -> Result<Kodaira> {
    check_range(g, i)?;
    Ok(if i + 1 == g {
        Kodaira::NegInfinity
    } else if i + 2 == g {
        Kodaira::Zero
    } else {
        Kodaira::One
    })
}

pub fn mu_x_closed_form(g: usize, i: usize) -> i64 {
    16 * g as i64 - 10 * i as i64 - 2
}

pub fn mu_z_closed_form(g: usize) -> i64 {
    (2 * g as i64 + 2) * (2 * g as i64 + 1)
}

/// Positive word for the full twist of the cable on strands `1..4` around the
/// cable on strands `5..2g+2`. Length `16(g−1)`.
pub fn fat_full_twist(g: usize) -> Result<BraidWord> {
    if g < 2 {
        return Err(Error::GenusOutOfRange(g));
    }
    let m = 2 * g as i64 - 2;
    let mut w = Vec::new();
    for k in (1..=4).rev() {
        w.extend(k..k + m);
    }
    for k in (1..=m).rev() {
        w.extend(k..k + 4);
    }
    BraidWord::from_signed(2 * g + 2, &w)
}

fn z_generators(g: usize) -> Result<Vec<usize>> {
    let mut gens: Vec<usize> = fat_full_twist(g)?.letters().iter().map(|l| l.index).collect();
    for _ in 0..4 {
        gens.extend([1, 2, 3]);
    }
    for _ in 0..2 * g - 2 {
        gens.extend(5..=2 * g + 1);
    }
    Ok(gens)
}

fn chain_word(g: usize, gens: &[usize]) -> Vec<Twist> {
    let c = chain_curves(g);
    gens.iter().map(|&k| Twist::pos(c[k - 1].clone())).collect()
}

fn odd_sum(g: usize, first: usize, last: usize) -> Vec<Int> {
    let mut v = vec![0; 2 * g + 1];
    for k in (first..=last).step_by(2) {
        v[k - 1] = 1;
    }
    v
}

/// `(c₁c₂c₃)⁴ = t_x t_x'` on the genus-one neighborhood of `c₁ ∪ c₂ ∪ c₃`.
pub fn genus_one_block(g: usize) -> Result<ChainSpec> {
    let c = chain_curves(g);
    ChainSpec::solve(c[0..3].to_vec(), "x1", "x1'")?.with_punctured(odd_sum(g, 1, 3))
}

/// `(c₅ ⋯ c_{2g+1})^{2g−2} = t_y t_y'` on the neighborhood of the long chain.
pub fn long_block(g: usize) -> Result<ChainSpec> {
    if g < 3 {
        return Err(Error::GenusOutOfRange(g));
    }
    let c = chain_curves(g);
    ChainSpec::solve(c[4..2 * g + 1].to_vec(), "x0", "x0'")?.with_punctured(odd_sum(g, 5, 2 * g + 1))
}

fn frame(g: usize, twists: Vec<Twist>, points: usize, blown_up: bool) -> Result<Factorization> {
    let sections = vec![Section { square: -1 }; points];
    if blown_up {
        Factorization::new(g, 0, Target::Identity, twists, sections)
    } else {
        Factorization::new(g, points, Target::BoundaryMultitwist, twists, sections)
    }
}

/// `(c₁ ⋯ c_{2g+1})^{2g+2} = t_{δ₁} t_{δ₁'}`: a pencil with two base points.
pub fn build_full_chain_pencil(g: usize) -> Result<Factorization> {
    let spec = standard_chain(g)?;
    frame(g, spec.word(), 2, false)
}

/// `Z_g` (fibration, two −1 sections) or the pencil `Z'_g`.
pub fn build_z(g: usize, blown_up: bool) -> Result<Factorization> {
    if g < G_MIN {
        return Err(Error::GenusOutOfRange(g));
    }
    frame(g, chain_word(g, &z_generators(g)?), 2, blown_up)
}

/// `X_g(i)` by literal unchaining. Only `i ≤ 1` is reachable from `Z_g`'s word,
/// and the pencil form exists only for `i = 0`: for `i = 1` the word exhibits
/// two of the four base points.
pub fn build_x(g: usize, i: usize, blown_up: bool) -> Result<Factorization> {
    check_range(g, i)?;
    if i >= 2 {
        return Err(Error::Undetermined(format!(
            "X_{g}({i}) needs {i} disjoint genus-one blocks; the explicit word for Z_{g} carries one"
        )));
    }
    if i == 1 && !blown_up {
        return Err(Error::Undetermined("the word for X_g(1) realizes two of the four base points".into()));
    }
    let z = build_z(g, blown_up)?;
    let long = long_block(g)?;
    let p = find_chain(&z, &long).ok_or_else(|| Error::SubwordMismatch { position: 0, detail: "long block".into() })?;
    let mut f = unchain(&z, p, &long)?;
    if i == 1 {
        let one = genus_one_block(g)?;
        let p = find_chain(&f, &one).ok_or_else(|| Error::SubwordMismatch { position: 0, detail: "genus-one block".into() })?;
        f = unchain(&f, p, &one)?;
    }
    if blown_up {
        f.sections = vec![Section { square: -1 }; 2 * (i + 1)];
    }
    f.validate()?;
    Ok(f)
}

fn torus_classes() -> (Curve, Curve) {
    (Curve::new("a", vec![1, 0]), Curve::new("b", vec![0, 1]))
}

/// `(t_a t_b)^{6n}` on the torus: `E(n)` with a section of square `−n`.
pub fn build_elliptic(n: usize) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Invalid("elliptic surface index must be positive".into()));
    }
    let (a, b) = torus_classes();
    let mut twists = Vec::with_capacity(12 * n);
    for _ in 0..6 * n {
        twists.push(Twist::pos(a.clone()));
        twists.push(Twist::pos(b.clone()));
    }
    Factorization::new(1, 0, Target::Identity, twists, vec![Section { square: -(n as i64) }])
}

/// `(c₁c₂c₃)^{4n}` on the torus.
pub fn build_elliptic_chain(n: usize) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Invalid("elliptic surface index must be positive".into()));
    }
    let block = standard_chain(1)?.word();
    let twists: Vec<Twist> = (0..n).flat_map(|_| block.iter().cloned()).collect();
    Factorization::new(1, 0, Target::Identity, twists, vec![Section { square: -(n as i64) }])
}

/// Word layout of `X_g(i)` in the form `D E (t_x t_x')^{i+1} (c₁c₂c₃)^{4(g−i)}`,
/// with `D` and `E` as opaque tokens of length `2g−2` each.
pub fn x_layout(g: usize, i: usize) -> Result<Vec<String>> {
    check_range(g, i)?;
    let mut out: Vec<String> = (1..=2 * g - 2).map(|k| format!("d{k}")).collect();
    out.extend((1..=2 * g - 2).map(|k| format!("e{k}")));
    for j in 0..=i {
        out.push(format!("x{j}"));
        out.push(format!("x{j}'"));
    }
    for _ in 0..4 * (g - i) {
        out.extend(["c1", "c2", "c3"].map(String::from));
    }
    Ok(out)
}

fn block_signature(g: usize, twists: &[Twist]) -> Result<i64> {
    let classes: Vec<&[Int]> = twists.iter().map(|t| t.curve.h1.as_slice()).collect();
    cocycle_sum(g, &classes)
}

/// Change in the cocycle sum when a chain block is replaced by its boundary
/// pair. Depends only on the block, because both sides have the same image.
pub fn unchaining_defect(spec: &ChainSpec) -> Result<i64> {
    let g = spec.b1.h1.len() / 2;
    let pair = [Twist::pos(spec.b1.clone()), Twist::pos(spec.b2.clone())];
    Ok(block_signature(g, &pair)? - block_signature(g, &spec.word())?)
}

/// Fibration invariants of `X_g(i)` from `Z_g` plus one long and `i` genus-one
/// substitutions. Conditional on a word that contains the blocks disjointly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Substitution {
    pub mu: i64,
    pub euler: i64,
    pub signature: i64,
}

pub fn substitution_invariants(g: usize, i: usize) -> Result<Substitution> {
    check_range(g, i)?;
    let z = build_z(g, true)?;
    let one = genus_one_block(g)?;
    let long = long_block(g)?;
    let mu = z.mu() as i64 - (long.word().len() as i64 - 2) - i as i64 * (one.word().len() as i64 - 2);
    Ok(Substitution {
        mu,
        euler: 4 - 4 * g as i64 + mu,
        signature: signature(&z)? + unchaining_defect(&long)? + i as i64 * unchaining_defect(&one)?,
    })
}

/// Cover-ledger states for `(g, i)`: the two-handle pencil stage and the end.
pub fn cover_states(g: usize, i: usize) -> Result<(CoverState, CoverState)> {
    let script = parse_script(&endgame_script(g, i)?)?;
    let trace = replay(&script, Start::Chain { g, i })?;
    let pencil = trace
        .iter()
        .find(|s| s.state.ledger.len() == 2)
        .ok_or_else(|| Error::Precondition("endgame never reaches two handles".into()))?;
    Ok((pencil.state.clone(), trace.last().expect("trace starts with the initial state").state.clone()))
}

pub fn expected_x_prime(g: usize, i: usize) -> Result<InvariantVector> {
    check_range(g, i)?;
    let m = (g - i) as i64;
    Ok(InvariantVector { euler: 12 * m, signature: -8 * m, h1: AbelianGroup(vec![]), spin: m % 2 == 0, base_points: 2 * (i as i64 + 1) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Invariants of an explicit factorization.
    Factorization,
    /// Substitution arithmetic on `Z_g`'s word.
    Substitution,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpinSource {
    /// Refinement on the two-holed fiber of the pencil.
    Pencil,
    /// Characteristic test on the cover ledger.
    Cover,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Computed {
    pub route: Route,
    pub mu: i64,
    pub euler: i64,
    pub signature: i64,
    pub h1: Option<AbelianGroup>,
    pub spin: bool,
    pub spin_source: SpinSource,
    pub cover_euler: i64,
    pub cover_signature: i64,
    pub cover_spin: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub quantity: &'static str,
    pub source: &'static str,
}

const PROVENANCE: [Provenance; 5] = [
    Provenance { quantity: "euler", source: "closed form 12(g-i) for the pencil total space" },
    Provenance { quantity: "signature", source: "closed form -8(g-i) for the pencil total space" },
    Provenance { quantity: "h1", source: "total space is simply connected" },
    Provenance { quantity: "spin", source: "spin exactly when g-i is even" },
    Provenance { quantity: "kodaira", source: "-inf for the rational case, 0 for K3, 1 otherwise" },
];

/// One row of the `X'_g(i)` table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub genus: usize,
    pub index: usize,
    pub recipe: Vec<String>,
    pub expected: InvariantVector,
    pub computed: Computed,
    pub kodaira: Kodaira,
    pub provenance: Vec<Provenance>,
}

impl CatalogEntry {
    /// `(quantity, expected, computed)` for every disagreement.
    pub fn mismatches(&self) -> Vec<(String, String, String)> {
        let e = &self.expected;
        let c = &self.computed;
        let mut out = Vec::new();
        let mut check = |q: &str, want: String, got: String| {
            if want != got {
                out.push((q.to_string(), want, got));
            }
        };
        check("mu", mu_x_closed_form(self.genus, self.index).to_string(), c.mu.to_string());
        check("euler", e.euler.to_string(), c.euler.to_string());
        check("signature", e.signature.to_string(), c.signature.to_string());
        check("h1", e.h1.to_string(), c.h1.as_ref().map_or("undetermined".to_string(), |h| h.to_string()));
        check("spin", e.spin.to_string(), c.spin.to_string());
        check("cover_euler", e.euler.to_string(), c.cover_euler.to_string());
        check("cover_signature", e.signature.to_string(), c.cover_signature.to_string());
        check("cover_spin", e.spin.to_string(), c.cover_spin.to_string());
        out
    }

    pub fn passes(&self) -> bool {
        self.mismatches().is_empty()
    }

    pub fn computed_vector(&self) -> Option<InvariantVector> {
        Some(InvariantVector {
            euler: self.computed.euler,
            signature: self.computed.signature,
            h1: self.computed.h1.clone()?,
            spin: self.computed.spin,
            base_points: self.expected.base_points,
        })
    }
}

/// Builds and evaluates the `X'_g(i)` row.
pub fn entry(g: usize, i: usize) -> Result<CatalogEntry> {
    let expected = expected_x_prime(g, i)?;
    let points = 2 * (i as i64 + 1);
    let (pencil, _) = cover_states(g, i)?;
    let cover = tracked_cover_invariants(&pencil.ledger, &pencil.ribbon)?;
    let cover_spin = pencil.ledger.cover_is_spin()?;
    let mut recipe = vec![format!("build_z({g})"), "unchain long block".to_string()];
    recipe.extend((0..i).map(|_| "unchain genus-one block".to_string()));
    recipe.push(format!("blow_down {points}"));
    let computed = if i <= 1 {
        let f = build_x(g, i, true)?;
        let v = blow_down(&InvariantVector::of(&f)?, points)?;
        let (spin, spin_source) = if i == 0 { (spin_test(&build_x(g, 0, false)?)?, SpinSource::Pencil) } else { (cover_spin, SpinSource::Cover) };
        Computed {
            route: Route::Factorization,
            mu: f.mu() as i64,
            euler: v.euler,
            signature: v.signature,
            h1: Some(h1_of_total_space(&f)?),
            spin,
            spin_source,
            cover_euler: cover.euler,
            cover_signature: cover.signature,
            cover_spin,
        }
    } else {
        let s = substitution_invariants(g, i)?;
        Computed {
            route: Route::Substitution,
            mu: s.mu,
            euler: s.euler - points,
            signature: s.signature + points,
            h1: None,
            spin: cover_spin,
            spin_source: SpinSource::Cover,
            cover_euler: cover.euler,
            cover_signature: cover.signature,
            cover_spin,
        }
    };
    Ok(CatalogEntry {
        name: format!("X'_{g}({i})"),
        genus: g,
        index: i,
        recipe,
        expected,
        computed,
        kodaira: kodaira(g, i)?,
        provenance: PROVENANCE.to_vec(),
    })
}

/// Rows ordered by `(g, i)` for `3 ≤ g ≤ gmax`.
pub fn table(gmax: usize) -> Result<Vec<CatalogEntry>> {
    if !(G_MIN..=G_MAX).contains(&gmax) {
        return Err(Error::GenusOutOfRange(gmax));
    }
    let mut rows = Vec::new();
    for g in G_MIN..=gmax {
        for i in 0..g {
            rows.push(entry(g, i)?);
        }
    }
    Ok(rows)
}

/// Buildable factorizations, with the parameters each one reads.
pub const NAMES: [(&str, &str); 9] = [
    ("empty", "empty relator on the genus-g surface (--g)"),
    ("full-chain", "full chain relator on the genus-g surface, capped (--g)"),
    ("full-chain-pencil", "full chain relation as a pencil with two base points (--g)"),
    ("z", "Z_g fibration (--g)"),
    ("z-pencil", "Z'_g pencil with two base points (--g)"),
    ("x", "X_g(i) fibration, i <= 1 (--g, --i)"),
    ("x-pencil", "X'_g(0) pencil (--g)"),
    ("elliptic", "(t_a t_b)^(6n) with n = --g"),
    ("elliptic-chain", "(c1 c2 c3)^(4n) on the torus with n = --g"),
];

pub fn build_named(name: &str, g: usize, i: usize) -> Result<Factorization> {
    match name {
        "empty" => Factorization::new(g, 0, Target::Identity, vec![], vec![]),
        "full-chain" => Factorization::new(g, 0, Target::Identity, standard_chain(g)?.word(), vec![]),
        "full-chain-pencil" => build_full_chain_pencil(g),
        "z" => build_z(g, true),
        "z-pencil" => build_z(g, false),
        "x" => build_x(g, i, true),
        "x-pencil" => build_x(g, 0, false),
        "elliptic" => build_elliptic(g),
        "elliptic-chain" => build_elliptic_chain(g),
        other => Err(Error::Invalid(format!("unknown catalog name `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::full_twist_power;
    use crate::mcg::descend_to_braid;

    #[test]
    fn z_word_is_the_full_twist() {
        for g in 3..=5 {
            let z = build_z(g, true).unwrap();
            assert_eq!(z.mu() as i64, mu_z_closed_form(g));
            assert_eq!(full_twist_power(&descend_to_braid(&z).unwrap()), Some(1));
            assert_eq!(fat_full_twist(g).unwrap().len(), 16 * (g - 1));
        }
    }

    #[test]
    fn x_words_count_and_close() {
        for g in 3..=5 {
            for i in 0..=1 {
                let f = build_x(g, i, true).unwrap();
                assert_eq!(f.mu() as i64, mu_x_closed_form(g, i));
                assert_eq!(f.sections.len(), 2 * (i + 1));
            }
            assert!(matches!(build_x(g, 2, true), Err(Error::Undetermined(_))));
            assert!(build_x(g, g, true).is_err());
        }
    }

    #[test]
    fn pencil_spin_parity() {
        for g in 3..=6 {
            let even = g % 2 == 0;
            assert_eq!(spin_test(&build_z(g, false).unwrap()).unwrap(), even, "Z'_{g}");
            assert_eq!(spin_test(&build_x(g, 0, false).unwrap()).unwrap(), even, "X'_{g}(0)");
            assert_eq!(spin_test(&build_full_chain_pencil(g).unwrap()).unwrap(), even);
            assert!(!spin_test(&build_z(g, true).unwrap()).unwrap());
        }
    }

    #[test]
    fn substitution_matches_literal_words() {
        for g in 3..=5 {
            for i in 0..=1 {
                let f = build_x(g, i, true).unwrap();
                let s = substitution_invariants(g, i).unwrap();
                assert_eq!((s.mu, s.euler, s.signature), (f.mu() as i64, crate::invariants::euler_characteristic(&f).unwrap(), signature(&f).unwrap()));
            }
        }
        assert_eq!(unchaining_defect(&genus_one_block(4).unwrap()).unwrap(), 6);
    }

    #[test]
    fn elliptic_words_agree() {
        for n in 1..=3 {
            let a = InvariantVector::of(&build_elliptic(n).unwrap()).unwrap();
            let b = InvariantVector::of(&build_elliptic_chain(n).unwrap()).unwrap();
            assert_eq!(a, b);
            assert_eq!((a.euler, a.signature, a.spin), (12 * n as i64, -8 * n as i64, n % 2 == 0));
        }
        assert!(build_elliptic(0).is_err());
    }

    #[test]
    fn kodaira_lookup() {
        assert_eq!(kodaira(5, 4).unwrap(), Kodaira::NegInfinity);
        assert_eq!(kodaira(5, 3).unwrap(), Kodaira::Zero);
        assert_eq!(kodaira(5, 0).unwrap(), Kodaira::One);
        assert!(kodaira(2, 0).is_err());
        assert_eq!(Kodaira::NegInfinity.to_string(), "-inf");
    }

    #[test]
    fn layout_counts() {
        for g in 3..=8 {
            for i in 0..g {
                assert_eq!(x_layout(g, i).unwrap().len() as i64, mu_x_closed_form(g, i));
            }
        }
    }
}
