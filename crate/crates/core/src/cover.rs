//! Double branched covers over framed-link bases.
//!
//! A base 4-manifold is a linking matrix over 2-handle ids. The branch
//! surface is tracked two ways: as the ribbon family counts (disks, caps,
//! bands) that give its Euler characteristic, and as an integer class in
//! the handle basis that gives its self-intersection.

use serde::Serialize;

use crate::linalg::{inertia, Matrix};
use crate::{Error, Int, Result};

/// Framed link presentation of a simply connected base, with the branch
/// class recorded in the handle basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseLedger {
    ids: Vec<usize>,
    meridian: Vec<bool>,
    linking: Matrix<Int>,
    branch: Vec<Int>,
    blown_up: usize,
    sections_removed: usize,
}

/// Serializable view of a ledger.
#[derive(Clone, Debug, Serialize)]
pub struct LedgerView {
    pub handles: Vec<HandleView>,
    pub linking: Vec<Vec<Int>>,
    pub blown_up: usize,
    pub sections_removed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HandleView {
    pub id: usize,
    pub framing: Int,
    pub meridian: bool,
    pub branch: Int,
}

impl BaseLedger {
    /// `handles` are `(id, framing)`; `links` are off-diagonal linking numbers.
    pub fn new(handles: &[(usize, Int)], links: &[(usize, usize, Int)]) -> Result<Self> {
        let n = handles.len();
        let ids: Vec<usize> = handles.iter().map(|h| h.0).collect();
        for (k, id) in ids.iter().enumerate() {
            if ids[..k].contains(id) {
                return Err(Error::Invalid(format!("duplicate handle id {id}")));
            }
        }
        let mut linking = Matrix::zeros(n, n);
        for (k, &(_, f)) in handles.iter().enumerate() {
            linking.set(k, k, f);
        }
        let mut ledger = BaseLedger {
            ids,
            meridian: vec![false; n],
            linking,
            branch: vec![0; n],
            blown_up: 0,
            sections_removed: 0,
        };
        for &(a, b, lk) in links {
            let (i, j) = (ledger.index(a)?, ledger.index(b)?);
            if i == j {
                return Err(Error::Invalid(format!("self-link on handle {a}")));
            }
            ledger.linking.set(i, j, lk);
            ledger.linking.set(j, i, lk);
        }
        Ok(ledger)
    }

    /// 𝔽_n as the Hopf pair: section handle 1 with framing n, fiber handle 2 with framing 0.
    pub fn hirzebruch(n: Int) -> Self {
        BaseLedger::new(&[(1, n), (2, 0)], &[(1, 2, 1)]).expect("fixed ids")
    }

    pub fn with_branch(mut self, coefficients: &[(usize, Int)]) -> Result<Self> {
        for &(id, c) in coefficients {
            let k = self.index(id)?;
            self.branch[k] = c;
        }
        Ok(self)
    }

    /// Flags `id` as an unknotted −1 circle whose blow-down is a legal move.
    pub fn mark_meridian(mut self, id: usize) -> Result<Self> {
        let k = self.index(id)?;
        self.meridian[k] = true;
        Ok(self)
    }

    fn index(&self, id: usize) -> Result<usize> {
        self.ids.iter().position(|&h| h == id).ok_or(Error::UnknownHandle(id))
    }

    pub fn handle_ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn framing(&self, id: usize) -> Result<Int> {
        let k = self.index(id)?;
        Ok(*self.linking.get(k, k))
    }

    pub fn linking_number(&self, a: usize, b: usize) -> Result<Int> {
        Ok(*self.linking.get(self.index(a)?, self.index(b)?))
    }

    pub fn is_meridian(&self, id: usize) -> Result<bool> {
        Ok(self.meridian[self.index(id)?])
    }

    pub fn linking_matrix(&self) -> &Matrix<Int> {
        &self.linking
    }

    pub fn blown_up(&self) -> usize {
        self.blown_up
    }

    pub fn sections_removed(&self) -> usize {
        self.sections_removed
    }

    /// Euler characteristic of the closed base: 0-handle, 2-handles, 4-handle.
    pub fn euler(&self) -> Int {
        2 + self.ids.len() as Int
    }

    pub fn signature(&self) -> Result<Int> {
        Ok(inertia(&self.linking.to_rational())?.signature())
    }

    pub fn determinant(&self) -> Result<Int> {
        if self.ids.is_empty() {
            return Ok(1);
        }
        self.linking.determinant()
    }

    /// Coefficient of the branch class on handle `id`.
    pub fn branch_coefficient(&self, id: usize) -> Result<Int> {
        Ok(self.branch[self.index(id)?])
    }

    /// [F]·[h] for the handle class of `id`.
    pub fn branch_pairing(&self, id: usize) -> Result<Int> {
        let k = self.index(id)?;
        let mut acc: Int = 0;
        for j in 0..self.len() {
            acc = acc
                .checked_add(self.linking.get(k, j).checked_mul(self.branch[j]).ok_or(Error::Overflow)?)
                .ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    pub fn branch_square(&self) -> Result<Int> {
        let q = self.linking.apply(&self.branch)?;
        let mut acc: Int = 0;
        for (c, v) in self.branch.iter().zip(&q) {
            acc = acc.checked_add(c.checked_mul(*v).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    /// A unimodular base admits a double cover branched over F iff [F] is even.
    pub fn branch_is_even(&self) -> bool {
        self.branch.iter().all(|c| c % 2 == 0)
    }

    /// The cover is spin iff [F]/2 is characteristic: x·[F]/2 ≡ x·x (mod 2).
    pub fn cover_is_spin(&self) -> Result<bool> {
        if !self.branch_is_even() {
            return Err(Error::OddBranchClass(self.branch.first().copied().unwrap_or(0), self.branch.get(1).copied().unwrap_or(0)));
        }
        let half: Vec<Int> = self.branch.iter().map(|c| c / 2).collect();
        let q = self.linking.apply(&half)?;
        Ok((0..self.len()).all(|k| (q[k] - self.linking.get(k, k)).rem_euclid(2) == 0))
    }

    /// Slides handle `h` over `over`: [h] ← [h] + sign·[over].
    pub fn handle_slide(&self, h: usize, over: usize, sign: i8) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::Invalid(format!("slide sign {sign}")));
        }
        let (i, o) = (self.index(h)?, self.index(over)?);
        if i == o {
            return Err(Error::Precondition(format!("cannot slide handle {h} over itself")));
        }
        let s = Int::from(sign);
        let mut next = self.clone();
        let fh = *self.linking.get(i, i);
        let fo = *self.linking.get(o, o);
        let lk = *self.linking.get(i, o);
        let framing = fh
            .checked_add(fo)
            .and_then(|x| x.checked_add(2 * s * lk))
            .ok_or(Error::Overflow)?;
        for j in 0..self.len() {
            if j == i {
                continue;
            }
            let v = self.linking.get(i, j) + s * self.linking.get(o, j);
            next.linking.set(i, j, v);
            next.linking.set(j, i, v);
        }
        next.linking.set(i, i, framing);
        // F = Σ c_k e_k is basis-independent; the coefficient on `over` absorbs the change.
        next.branch[o] = self.branch[o] - s * self.branch[i];
        Ok(next)
    }

    /// Blows down the −1 handle `h`; every other handle k gains lk(k,h)² framing.
    pub fn blow_down(&self, h: usize) -> Result<Self> {
        let k = self.index(h)?;
        let f = *self.linking.get(k, k);
        if f != -1 {
            return Err(Error::Precondition(format!("handle {h} has framing {f}, need -1")));
        }
        if !self.meridian[k] {
            return Err(Error::Precondition(format!("handle {h} is not flagged as an unknotted meridian")));
        }
        let meet = self.branch_pairing(h)?;
        if meet != 0 {
            return Err(Error::Precondition(format!(
                "branch surface meets the sphere of handle {h} ({meet} points); it would not lift to sections"
            )));
        }
        let keep: Vec<usize> = (0..self.len()).filter(|&j| j != k).collect();
        let mut linking = Matrix::zeros(keep.len(), keep.len());
        for (a, &p) in keep.iter().enumerate() {
            for (b, &q) in keep.iter().enumerate() {
                let v = self.linking.get(p, q) + self.linking.get(p, k) * self.linking.get(q, k);
                linking.set(a, b, v);
            }
        }
        Ok(BaseLedger {
            ids: keep.iter().map(|&j| self.ids[j]).collect(),
            meridian: keep.iter().map(|&j| self.meridian[j]).collect(),
            linking,
            branch: keep.iter().map(|&j| self.branch[j]).collect(),
            blown_up: self.blown_up + 1,
            sections_removed: self.sections_removed + 2,
        })
    }

    /// Reads the branch class off a Hopf-pair ledger presenting 𝔽_n.
    pub fn hirzebruch_class(&self) -> Result<BranchClass> {
        if self.len() != 2 {
            return Err(Error::Precondition(format!("ledger has {} handles, need a Hopf pair", self.len())));
        }
        let lk = *self.linking.get(0, 1);
        if lk.abs() != 1 {
            return Err(Error::Precondition(format!("handles link {lk} times, need ±1")));
        }
        let (section, fiber) = match (*self.linking.get(0, 0), *self.linking.get(1, 1)) {
            (_, 0) => (0, 1),
            (0, _) => (1, 0),
            (a, b) => {
                return Err(Error::Precondition(format!("no 0-framed fiber in framings ({a}, {b})")));
            }
        };
        // Reorient the fiber so that s·f = +1.
        BranchClass::new(self.branch[section], lk * self.branch[fiber], *self.linking.get(section, section))
    }

    pub fn view(&self) -> LedgerView {
        LedgerView {
            handles: (0..self.len())
                .map(|k| HandleView {
                    id: self.ids[k],
                    framing: *self.linking.get(k, k),
                    meridian: self.meridian[k],
                    branch: self.branch[k],
                })
                .collect(),
            linking: self.linking.to_rows(),
            blown_up: self.blown_up,
            sections_removed: self.sections_removed,
        }
    }
}

/// [F] = a·s + b·f in H2(𝔽_n), with s² = n, f² = 0, s·f = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BranchClass {
    pub a: Int,
    pub b: Int,
    pub n: Int,
}

impl BranchClass {
    pub fn new(a: Int, b: Int, n: Int) -> Result<Self> {
        if a % 2 != 0 || b % 2 != 0 {
            return Err(Error::OddBranchClass(a, b));
        }
        Ok(BranchClass { a, b, n })
    }

    pub fn square(&self) -> Int {
        self.a * self.a * self.n + 2 * self.a * self.b
    }

    /// Rewrites a class on 𝔽_{−m} in the basis of 𝔽_m (s' = s + m f).
    pub fn normalized(&self) -> Self {
        if self.n >= 0 {
            return *self;
        }
        let m = -self.n;
        BranchClass { a: self.a, b: self.b - self.a * m, n: m }
    }
}

/// Counts for the ribbon surface F(R, S, T) plus caps in the 4-handle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RibbonFamilyState {
    pub r: Int,
    pub s: Int,
    pub t: Int,
    pub band_count: Int,
    pub caps: Int,
    pub closing_framing: Int,
    /// Number of lemma rewrites applied so far.
    pub rewrites: Int,
}

impl RibbonFamilyState {
    pub fn new(r: Int, band_count: Int, caps: Int, closing_framing: Int) -> Self {
        RibbonFamilyState { r, s: 0, t: 0, band_count, caps, closing_framing, rewrites: 0 }
    }

    pub fn chi(&self) -> Int {
        self.r + self.caps - self.band_count
    }

    /// F(R, S, T) → F(R−4, S+1, T+4); four disks are absorbed, each with one band.
    pub fn lemma_rewrite(&self) -> Result<Self> {
        if self.r < 8 {
            return Err(Error::Precondition(format!("lemma rewrite needs R >= 8, have R = {}", self.r)));
        }
        if self.t % 4 != 0 {
            return Err(Error::Precondition(format!("lemma rewrite needs T divisible by 4, have T = {}", self.t)));
        }
        let next = RibbonFamilyState {
            r: self.r - 4,
            s: self.s + 1,
            t: self.t + 4,
            band_count: self.band_count - 4,
            rewrites: self.rewrites + 1,
            ..*self
        };
        debug_assert_eq!(next.chi(), self.chi());
        Ok(next)
    }

    /// 2-handle band dive: the framed circle picks up one more positive linking.
    pub fn band_dive(&self) -> Self {
        RibbonFamilyState { s: self.s + 1, ..*self }
    }

    /// One horizontal disk cancels against a band, leaving a trivial band.
    pub fn disk_step(&self) -> Result<Self> {
        if self.s < 1 || self.r < 2 || self.band_count < 1 {
            return Err(Error::Precondition(format!(
                "disk step needs S >= 1, R >= 2 and a band; have S = {}, R = {}, bands = {}",
                self.s, self.r, self.band_count
            )));
        }
        Ok(RibbonFamilyState { r: self.r - 1, t: self.t + 1, band_count: self.band_count - 1, ..*self })
    }

    /// Each cap cancels one trivial band.
    pub fn cancel_trivial_bands(&self, count: Int) -> Result<Self> {
        if count < 0 || count > self.t || count > self.caps {
            return Err(Error::Precondition(format!(
                "cannot cancel {count} bands with T = {}, caps = {}",
                self.t, self.caps
            )));
        }
        Ok(RibbonFamilyState {
            t: self.t - count,
            caps: self.caps - count,
            band_count: self.band_count - count,
            ..*self
        })
    }
}

/// Euler characteristic and signature of a closed 4-manifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoverInvariants {
    pub euler: Int,
    pub signature: Int,
}

/// e = 2e(X) − χ(F), σ = 2σ(X) − [F]²/2.
pub fn cover_invariants(
    base: &BaseLedger,
    state: &RibbonFamilyState,
    class: &BranchClass,
) -> Result<CoverInvariants> {
    if class.a % 2 != 0 || class.b % 2 != 0 {
        return Err(Error::OddBranchClass(class.a, class.b));
    }
    Ok(CoverInvariants {
        euler: 2 * base.euler() - state.chi(),
        signature: 2 * base.signature()? - class.square() / 2,
    })
}

/// Same formulas, reading [F] from the ledger's tracked coefficients.
pub fn tracked_cover_invariants(base: &BaseLedger, state: &RibbonFamilyState) -> Result<CoverInvariants> {
    if !base.branch_is_even() {
        let c = &base.branch;
        return Err(Error::OddBranchClass(c.first().copied().unwrap_or(0), c.get(1).copied().unwrap_or(0)));
    }
    Ok(CoverInvariants {
        euler: 2 * base.euler() - state.chi(),
        signature: 2 * base.signature()? - base.branch_square()? / 2,
    })
}

/// Ledger plus ribbon counts, with the handle that carries the closing framing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverState {
    pub ledger: BaseLedger,
    pub ribbon: RibbonFamilyState,
    pub closing: usize,
}

/// Handle ids used by [`CoverState::chain_state`].
pub const FIBER_HANDLE: usize = 1;
pub const SECTION_HANDLE: usize = 2;

fn box_handle(k: usize) -> usize {
    2 + k
}

impl CoverState {
    /// Z_g over 𝔽_1: 2g+2 horizontal disks capped in the 4-handle, one band per twist.
    pub fn z_state(g: usize) -> Result<Self> {
        if g < 1 {
            return Err(Error::GenusOutOfRange(g));
        }
        let r = 2 * g as Int + 2;
        let ledger = BaseLedger::new(&[(FIBER_HANDLE, 0), (SECTION_HANDLE, -1)], &[(FIBER_HANDLE, SECTION_HANDLE, 1)])?
            .with_branch(&[(FIBER_HANDLE, r), (SECTION_HANDLE, r)])?;
        let ribbon = RibbonFamilyState::new(r, r * (r - 1), r, 0);
        Ok(CoverState { ledger, ribbon, closing: FIBER_HANDLE })
    }

    /// X_g(i) over 𝔽_1 # (i+1)CP²-bar: one −1 circle around each unchained
    /// genus-one block and one around the long chain block.
    pub fn chain_state(g: usize, i: usize) -> Result<Self> {
        if g < 3 {
            return Err(Error::GenusOutOfRange(g));
        }
        if i >= g {
            return Err(Error::IndexOutOfRange(format!("i = {i} for genus {g}")));
        }
        let r = 2 * g as Int + 2;
        let long = box_handle(i + 1);
        let mut handles = vec![(FIBER_HANDLE, 0), (SECTION_HANDLE, -1)];
        handles.extend((1..=i + 1).map(|k| (box_handle(k), -1)));
        let mut ledger = BaseLedger::new(&handles, &[(FIBER_HANDLE, SECTION_HANDLE, 1)])?;
        let mut branch = vec![(FIBER_HANDLE, r), (SECTION_HANDLE, r), (long, -(r - 4))];
        branch.extend((1..=i).map(|k| (box_handle(k), -4)));
        ledger = ledger.with_branch(&branch)?.mark_meridian(SECTION_HANDLE)?;
        for k in 1..=i {
            ledger = ledger.mark_meridian(box_handle(k))?;
        }
        let bands = 16 * g as Int - 12 * i as Int - 4;
        let ribbon = RibbonFamilyState::new(r, bands, r, 0);
        Ok(CoverState { ledger, ribbon, closing: FIBER_HANDLE })
    }

    pub fn invariants(&self) -> Result<CoverInvariants> {
        tracked_cover_invariants(&self.ledger, &self.ribbon)
    }

    fn sync(mut self) -> Result<Self> {
        self.ribbon.closing_framing = self.ledger.framing(self.closing)?;
        Ok(self)
    }

    pub fn apply(&self, mv: &Move) -> Result<Self> {
        let next = match *mv {
            Move::Slide { handle, over, sign } => CoverState {
                ledger: self.ledger.handle_slide(handle, over, sign)?,
                ..self.clone()
            },
            Move::BlowDown(h) => {
                if h == self.closing {
                    return Err(Error::Precondition(format!("handle {h} carries the closing framing")));
                }
                CoverState { ledger: self.ledger.blow_down(h)?, ..self.clone() }
            }
            Move::Lemma => {
                let ribbon = self.ribbon.lemma_rewrite()?;
                let next = CoverState { ribbon, ..self.clone() };
                if next.invariants()? != self.invariants()? {
                    return Err(Error::Precondition("lemma rewrite changed the cover invariants".into()));
                }
                next
            }
            Move::Dive => CoverState { ribbon: self.ribbon.band_dive(), ..self.clone() },
            Move::Disk => CoverState { ribbon: self.ribbon.disk_step()?, ..self.clone() },
            Move::Cancel(n) => CoverState { ribbon: self.ribbon.cancel_trivial_bands(n)?, ..self.clone() },
            Move::Assert(ref checks) => {
                self.check(checks)?;
                self.clone()
            }
        };
        next.sync()
    }

    fn check(&self, checks: &[(Quantity, Int)]) -> Result<()> {
        let inv = self.invariants()?;
        for &(q, want) in checks {
            let have = match q {
                Quantity::Euler => inv.euler,
                Quantity::Signature => inv.signature,
                Quantity::Chi => self.ribbon.chi(),
                Quantity::Framing => self.ledger.framing(self.closing)?,
                Quantity::R => self.ribbon.r,
                Quantity::S => self.ribbon.s,
                Quantity::T => self.ribbon.t,
                Quantity::Caps => self.ribbon.caps,
                Quantity::Bands => self.ribbon.band_count,
                Quantity::Square => self.ledger.branch_square()?,
                Quantity::Handles => self.ledger.len() as Int,
            };
            if have != want {
                return Err(Error::Precondition(format!("assert {}={want} failed: have {have}", q.key())));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Euler,
    Signature,
    Chi,
    Framing,
    R,
    S,
    T,
    Caps,
    Bands,
    Square,
    Handles,
}

impl Quantity {
    const ALL: [Quantity; 11] = [
        Quantity::Euler,
        Quantity::Signature,
        Quantity::Chi,
        Quantity::Framing,
        Quantity::R,
        Quantity::S,
        Quantity::T,
        Quantity::Caps,
        Quantity::Bands,
        Quantity::Square,
        Quantity::Handles,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Quantity::Euler => "e",
            Quantity::Signature => "sig",
            Quantity::Chi => "chi",
            Quantity::Framing => "framing",
            Quantity::R => "R",
            Quantity::S => "S",
            Quantity::T => "T",
            Quantity::Caps => "caps",
            Quantity::Bands => "bands",
            Quantity::Square => "square",
            Quantity::Handles => "handles",
        }
    }

    fn parse(key: &str) -> Option<Self> {
        Quantity::ALL.into_iter().find(|q| q.key() == key)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    Slide { handle: usize, over: usize, sign: i8 },
    BlowDown(usize),
    Lemma,
    Dive,
    Disk,
    Cancel(Int),
    Assert(Vec<(Quantity, Int)>),
}

/// Which starting state a script replays from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Start {
    Chain { g: usize, i: usize },
    Z { g: usize },
}

impl Start {
    pub fn state(self) -> Result<CoverState> {
        match self {
            Start::Chain { g, i } => CoverState::chain_state(g, i),
            Start::Z { g } => CoverState::z_state(g),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub start: Option<Start>,
    /// `(line number, move)`, 1-based.
    pub moves: Vec<(usize, Move)>,
}

fn script_err(line: usize, detail: impl Into<String>) -> Error {
    Error::Script { line, detail: detail.into() }
}

fn parse_num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse().map_err(|_| script_err(line, format!("expected a number, got `{s}`")))
}

fn parse_key_values(line: usize, words: &[&str]) -> Result<Vec<(String, Int)>> {
    words
        .iter()
        .map(|w| {
            let (k, v) = w.split_once('=').ok_or_else(|| script_err(line, format!("expected key=value, got `{w}`")))?;
            Ok((k.to_string(), parse_num(line, v)?))
        })
        .collect()
}

/// Parses the line-oriented move format. `#` starts a comment.
pub fn parse_script(text: &str) -> Result<Script> {
    let mut script = Script { start: None, moves: Vec::new() };
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let words: Vec<&str> = body.split_whitespace().collect();
        let mv = match words[0].to_ascii_uppercase().as_str() {
            "INIT" => {
                if script.start.is_some() || !script.moves.is_empty() {
                    return Err(script_err(line, "INIT must be the first command"));
                }
                let kind = words.get(1).ok_or_else(|| script_err(line, "INIT needs a state name"))?;
                let kv = parse_key_values(line, &words[2..])?;
                let get = |key: &str| -> Result<usize> {
                    let v = kv
                        .iter()
                        .find(|(k, _)| k == key)
                        .map(|(_, v)| *v)
                        .ok_or_else(|| script_err(line, format!("INIT {kind} needs {key}=")))?;
                    usize::try_from(v).map_err(|_| script_err(line, format!("{key} must be non-negative")))
                };
                script.start = Some(match *kind {
                    "chain" => Start::Chain { g: get("g")?, i: get("i")? },
                    "z" => Start::Z { g: get("g")? },
                    other => return Err(script_err(line, format!("unknown state `{other}`"))),
                });
                continue;
            }
            "SLIDE" => {
                if words.len() != 4 || words[2] != "over" {
                    return Err(script_err(line, "expected `SLIDE h over s+` or `SLIDE h over s-`"));
                }
                let target = words[3];
                let (id, sign) = match target.strip_suffix('+') {
                    Some(id) => (id, 1),
                    None => match target.strip_suffix('-') {
                        Some(id) => (id, -1),
                        None => return Err(script_err(line, format!("slide target `{target}` lacks a sign"))),
                    },
                };
                Move::Slide { handle: parse_num(line, words[1])?, over: parse_num(line, id)?, sign }
            }
            "BLOWDOWN" => {
                if words.len() != 2 {
                    return Err(script_err(line, "expected `BLOWDOWN h`"));
                }
                Move::BlowDown(parse_num(line, words[1])?)
            }
            "LEMMA41" => Move::Lemma,
            "DIVE" => Move::Dive,
            "DISK" => Move::Disk,
            "CANCEL" => {
                if words.len() != 2 {
                    return Err(script_err(line, "expected `CANCEL n`"));
                }
                Move::Cancel(parse_num(line, words[1])?)
            }
            "ASSERT" => {
                let mut checks = Vec::new();
                for (key, v) in parse_key_values(line, &words[1..])? {
                    let q = Quantity::parse(&key).ok_or_else(|| script_err(line, format!("unknown quantity `{key}`")))?;
                    checks.push((q, v));
                }
                Move::Assert(checks)
            }
            other => return Err(script_err(line, format!("unknown command `{other}`"))),
        };
        script.moves.push((line, mv));
    }
    Ok(script)
}

/// One replay step: the line that produced it and the resulting state.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub line: usize,
    pub state: CoverState,
}

/// Replays `script` from its INIT state (or `default` when absent).
pub fn replay(script: &Script, default: Start) -> Result<Vec<TraceStep>> {
    let mut state = script.start.unwrap_or(default).state()?;
    let mut trace = vec![TraceStep { line: 0, state: state.clone() }];
    for (line, mv) in &script.moves {
        state = state.apply(mv).map_err(|e| match e {
            Error::Script { .. } => e,
            other => script_err(*line, other.to_string()),
        })?;
        trace.push(TraceStep { line: *line, state: state.clone() });
    }
    Ok(trace)
}

/// The full move sequence from X_g(i) to the genus-one endgame state.
pub fn endgame_script(g: usize, i: usize) -> Result<String> {
    if g < 3 {
        return Err(Error::GenusOutOfRange(g));
    }
    if i >= g {
        return Err(Error::IndexOutOfRange(format!("i = {i} for genus {g}")));
    }
    let (gi, ii) = (g as Int, i as Int);
    let m = gi - ii;
    let odd = g % 2 == 1;
    let k = (g - 1) / 2;
    let long = box_handle(i + 1);
    let mut out = String::new();
    let mut push = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    push(format!("# {} genus {g}, i = {i}", if odd { "odd" } else { "even" }));
    push(format!("INIT chain g={g} i={i}"));
    push(format!(
        "ASSERT e={} sig={} chi={} framing=0   # X_g(i) over F_1 # {}CP2-bar",
        12 * gi - 10 * ii + 2,
        -8 * gi + 6 * ii - 2,
        8 - 12 * gi + 12 * ii,
        i + 1
    ));
    for b in 1..=i {
        let h = box_handle(b);
        push(format!("SLIDE {h} over {long}+"));
        push(format!("SLIDE {h} over {FIBER_HANDLE}-"));
        push(format!("SLIDE {h} over {SECTION_HANDLE}-"));
    }
    push(format!("SLIDE {long} over {FIBER_HANDLE}-"));
    push(format!("BLOWDOWN {SECTION_HANDLE}"));
    for b in 1..=i {
        push(format!("BLOWDOWN {}", box_handle(b)));
    }
    push(format!("ASSERT handles=2 framing={} e={} sig={}   # X'_g(i) over F_{}", i + 1, 12 * m, -8 * m, i + 1));
    for _ in 0..k {
        push("LEMMA41".into());
    }
    let cancel = if odd {
        push(format!("ASSERT R=4 S={k} T={}", 4 * k));
        4 * k
    } else {
        push(format!("ASSERT R=6 S={k} T={}", 4 * k));
        push("DIVE".into());
        push("DISK".into());
        push("DISK".into());
        4 * k + 2
    };
    push(format!("CANCEL {cancel}"));
    push(format!("ASSERT R=4 caps=4 bands={}", 12 * m));
    for _ in 0..=k {
        push(format!("SLIDE {FIBER_HANDLE} over {long}+"));
    }
    let framing = if odd { -m } else { -(m - 1) };
    push(format!("ASSERT framing={framing} e={} sig={} chi={}", 12 * m, -8 * m, 8 - 12 * m));
    Ok(out)
}
