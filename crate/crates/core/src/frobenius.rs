//! The Frobenius algebra `A = R·v₊ ⊕ R·v₋`, its tensor powers, and the
//! λ-twisted calculus of maps between them.
//!
//! Tensor positions are counted from the right: position 1 is the rightmost
//! factor. A [`TensorWord`] stores one bit per position, set for `v₋`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::coeff::{lambda, ChronDegree, Monomial, RingElem, SDeg, Unit};
use crate::error::{Error, Result};

/// Longest supported tensor word.
pub const MAX_LEN: usize = 63;

/// A basis word `v_{i_k} ⊗ … ⊗ v_{i_1}` of `A^{⊗k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TensorWord {
    len: u8,
    minus: u64,
}

impl TensorWord {
    pub const EMPTY: TensorWord = TensorWord { len: 0, minus: 0 };

    /// The word of length `len` whose minus letters sit at the set bits of
    /// `minus` (bit `p - 1` for position `p`).
    pub fn from_bits(len: usize, minus: u64) -> Self {
        assert!(len <= MAX_LEN, "tensor word too long");
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        TensorWord { len: len as u8, minus: minus & mask }
    }

    pub fn all_plus(len: usize) -> Self {
        TensorWord::from_bits(len, 0)
    }

    pub fn len(self) -> usize {
        usize::from(self.len)
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn minus_bits(self) -> u64 {
        self.minus
    }

    /// True if the letter at 1-based position `p` is `v₋`.
    pub fn is_minus(self, p: usize) -> bool {
        debug_assert!(p >= 1 && p <= self.len());
        self.minus >> (p - 1) & 1 == 1
    }

    pub fn with_letter(self, p: usize, minus: bool) -> Self {
        let bit = 1u64 << (p - 1);
        let m = if minus { self.minus | bit } else { self.minus & !bit };
        TensorWord { len: self.len, minus: m }
    }

    pub fn plus_count(self) -> usize {
        self.len() - self.minus_count()
    }

    pub fn minus_count(self) -> usize {
        self.minus.count_ones() as usize
    }

    /// `left ⊗ right`: the letters of `left` move to the higher positions.
    pub fn concat(left: TensorWord, right: TensorWord) -> TensorWord {
        TensorWord::from_bits(left.len() + right.len(), left.minus << right.len | right.minus)
    }

    /// The subword at positions `lo .. lo + count` (1-based, counted from the right).
    pub fn slice(self, lo: usize, count: usize) -> TensorWord {
        TensorWord::from_bits(count, self.minus >> (lo - 1))
    }

    /// Replaces the `count` letters starting at position `lo` by `mid`.
    pub fn splice(self, lo: usize, count: usize, mid: TensorWord) -> TensorWord {
        let right = self.slice(1, lo - 1);
        let left = self.slice(lo + count, self.len() - (lo - 1) - count);
        TensorWord::concat(TensorWord::concat(left, mid), right)
    }

    /// Flips every letter.
    pub fn bar(self) -> TensorWord {
        TensorWord::from_bits(self.len(), !self.minus)
    }

    /// Every word of the given length, in increasing order.
    pub fn all(len: usize) -> impl Iterator<Item = TensorWord> {
        (0..1u64 << len).map(move |m| TensorWord::from_bits(len, m))
    }
}

impl fmt::Display for TensorWord {
    /// Renders the leftmost letter first, e.g. `-+` for `v₋ ⊗ v₊`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            return f.write_str("1");
        }
        for p in (1..=self.len()).rev() {
            f.write_str(if self.is_minus(p) { "-" } else { "+" })?;
        }
        Ok(())
    }
}

impl FromStr for TensorWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "1" {
            return Ok(TensorWord::EMPTY);
        }
        if s.len() > MAX_LEN {
            return Err(Error::parse(MAX_LEN, "tensor word too long"));
        }
        let mut minus = 0u64;
        for (i, c) in s.chars().enumerate() {
            minus <<= 1;
            match c {
                '+' => {}
                '-' => minus |= 1,
                _ => return Err(Error::parse(i, "expected `+` or `-`")),
            }
        }
        Ok(TensorWord::from_bits(s.len(), minus))
    }
}

/// Chronological degree of a word: `(#v₊, -#v₋)`.
pub fn chron_deg(w: TensorWord) -> ChronDegree {
    ChronDegree::new(w.plus_count() as i64, -(w.minus_count() as i64))
}

/// Splitting degree `(a mod 2, a)` with `a = -Σ_{v_i = v₋} i`.
pub fn sdeg(w: TensorWord) -> SDeg {
    let a: i64 = (1..=w.len()).filter(|&p| w.is_minus(p)).map(|p| -(p as i64)).sum();
    SDeg::new(a, a)
}

/// An element of `A^{⊗k}` for a fixed `k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorElem {
    terms: BTreeMap<TensorWord, RingElem>,
}

impl TensorElem {
    pub fn zero() -> Self {
        TensorElem::default()
    }

    pub fn word(w: TensorWord) -> Self {
        TensorElem::term(w, RingElem::one())
    }

    pub fn term(w: TensorWord, c: RingElem) -> Self {
        let mut e = TensorElem::zero();
        e.add_term(w, &c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorWord, &RingElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: TensorWord) -> RingElem {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: TensorWord, c: &RingElem) {
        if c.is_zero() {
            return;
        }
        if let Some(first) = self.terms.keys().next() {
            debug_assert_eq!(first.len(), w.len(), "mixed word lengths");
        }
        let entry = self.terms.entry(w).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&mut self, other: &TensorElem) {
        for (w, c) in &other.terms {
            self.add_term(*w, c);
        }
    }

    pub fn scale(&self, c: &RingElem) -> TensorElem {
        let mut out = TensorElem::zero();
        for (w, d) in &self.terms {
            out.add_term(*w, &(d * c));
        }
        out
    }

    pub fn scale_unit(&self, u: Unit) -> TensorElem {
        TensorElem { terms: self.terms.iter().map(|(w, c)| (*w, c.scale_unit(u))).collect() }
    }

    /// Splitting degree, if every term (word degree plus coefficient degree) agrees.
    pub fn sdeg(&self) -> Option<SDeg> {
        let mut it = self.terms.iter().map(|(w, c)| c.sdeg().map(|d| d + sdeg(*w)));
        let first = it.next()??;
        for d in it {
            if d? != first {
                return None;
            }
        }
        Some(first)
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| alloc::format!("({c})[{w}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A homogeneous R-linear map `A^{⊗dom} → A^{⊗cod}`, stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    dom: usize,
    cod: usize,
    deg: ChronDegree,
    cols: BTreeMap<TensorWord, TensorElem>,
}

impl LinearMap {
    pub fn zero(dom: usize, cod: usize, deg: ChronDegree) -> Self {
        LinearMap { dom, cod, deg, cols: BTreeMap::new() }
    }

    pub fn identity(len: usize) -> Self {
        LinearMap::from_fn(len, len, ChronDegree::ZERO, TensorElem::word)
    }

    /// Builds a map from the image of every basis word.
    pub fn from_fn(dom: usize, cod: usize, deg: ChronDegree, mut f: impl FnMut(TensorWord) -> TensorElem) -> Self {
        let mut m = LinearMap::zero(dom, cod, deg);
        for w in TensorWord::all(dom) {
            m.set_column(w, f(w));
        }
        m
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn deg(&self) -> ChronDegree {
        self.deg
    }

    pub fn set_column(&mut self, w: TensorWord, img: TensorElem) {
        debug_assert_eq!(w.len(), self.dom);
        if img.is_zero() {
            self.cols.remove(&w);
        } else {
            self.cols.insert(w, img);
        }
    }

    pub fn column(&self, w: TensorWord) -> TensorElem {
        self.cols.get(&w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    /// Nonzero entries as `(source, target, coefficient)`.
    pub fn entries(&self) -> impl Iterator<Item = (TensorWord, TensorWord, &RingElem)> {
        self.cols.iter().flat_map(|(s, img)| img.terms().map(move |(t, c)| (*s, *t, c)))
    }

    pub fn apply(&self, x: &TensorElem) -> TensorElem {
        let mut out = TensorElem::zero();
        for (w, c) in x.terms() {
            if let Some(img) = self.cols.get(w) {
                out.add(&img.scale(c));
            }
        }
        out
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &LinearMap) -> Result<LinearMap> {
        if first.cod != self.dom {
            return Err(Error::LengthMismatch { expected: self.dom, found: first.cod });
        }
        let mut out = LinearMap::zero(first.dom, self.cod, first.deg + self.deg);
        for (w, img) in &first.cols {
            out.set_column(*w, self.apply(img));
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RingElem) -> LinearMap {
        let mut out = LinearMap::zero(self.dom, self.cod, self.deg);
        for (w, img) in &self.cols {
            out.set_column(*w, img.scale(c));
        }
        out
    }

    pub fn scale_unit(&self, u: Unit) -> LinearMap {
        LinearMap {
            dom: self.dom,
            cod: self.cod,
            deg: self.deg,
            cols: self.cols.iter().map(|(w, img)| (*w, img.scale_unit(u))).collect(),
        }
    }

    /// The unit `c` with `self = c · other`, if one exists. Zero maps are
    /// proportional by `1`.
    pub fn unit_ratio(&self, other: &LinearMap) -> Option<Unit> {
        if self.dom != other.dom || self.cod != other.cod {
            return None;
        }
        let (s, t, c) = other.entries().next()?;
        let mine = self.cols.get(&s)?.coeff(t);
        unit_candidates(&mine, c).into_iter().find(|&cand| &other.scale_unit(cand) == self)
    }

    /// The splitting degree shift of the map, if it is homogeneous.
    pub fn sdeg_shift(&self) -> Option<SDeg> {
        let mut shift = None;
        for (s, img) in &self.cols {
            let d = img.sdeg()? - sdeg(*s);
            match shift {
                None => shift = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        Some(shift.unwrap_or(SDeg::ZERO))
    }
}

/// Units `u` that could satisfy `a = u · b`, judged from leading terms.
pub(crate) fn unit_candidates(a: &RingElem, b: &RingElem) -> Vec<Unit> {
    let mut out = Vec::new();
    let Some((mb, cb)) = b.terms().next() else { return out };
    for (ma, ca) in a.terms() {
        let negative = if ca == cb {
            false
        } else if *ca == -cb.clone() {
            true
        } else {
            continue;
        };
        let u = Unit::new(negative, *ma * mb.inv());
        if !out.contains(&u) {
            out.push(u);
        }
    }
    out
}

/// The symmetry `τ` acting on the letters at positions `p` and `p + 1`.
pub fn tau(w: TensorWord, p: usize) -> Result<TensorElem> {
    if p == 0 || p >= w.len() {
        return Err(Error::OutOfRange { position: p, len: w.len() });
    }
    let m = w.slice(p + 1, 1);
    let n = w.slice(p, 1);
    let c = lambda(chron_deg(m), chron_deg(n));
    let swapped = w.with_letter(p, m.is_minus(1)).with_letter(p + 1, n.is_minus(1));
    Ok(TensorElem::term(swapped, c.to_ring()))
}

/// `τ` at position `p` as a map on `A^{⊗len}`.
pub fn tau_map(len: usize, p: usize) -> Result<LinearMap> {
    if p == 0 || p >= len {
        return Err(Error::OutOfRange { position: p, len });
    }
    Ok(LinearMap::from_fn(len, len, ChronDegree::ZERO, |w| tau(w, p).expect("position checked")))
}

/// The generating cobordisms, evaluated by the TQFT.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Elementary {
    Merge { reversed: bool },
    Split { reversed: bool },
    Birth,
    Death,
}

impl Elementary {
    pub fn dom(self) -> usize {
        match self {
            Elementary::Merge { .. } => 2,
            Elementary::Split { .. } | Elementary::Death => 1,
            Elementary::Birth => 0,
        }
    }

    pub fn cod(self) -> usize {
        match self {
            Elementary::Split { .. } => 2,
            Elementary::Merge { .. } | Elementary::Birth => 1,
            Elementary::Death => 0,
        }
    }

    pub fn deg(self) -> ChronDegree {
        match self {
            Elementary::Merge { .. } => ChronDegree::new(-1, 0),
            Elementary::Split { .. } => ChronDegree::new(0, -1),
            Elementary::Birth => ChronDegree::new(1, 0),
            Elementary::Death => ChronDegree::new(0, 1),
        }
    }

    /// Splitting degree of the underlying cobordism.
    pub fn sdeg(self) -> SDeg {
        match self {
            Elementary::Merge { reversed } => SDeg::new(i64::from(reversed), 0),
            Elementary::Split { reversed } => SDeg::new(i64::from(reversed), -2),
            Elementary::Birth => SDeg::ZERO,
            Elementary::Death => SDeg::new(1, 1),
        }
    }

    /// Image of a basis word of length [`Elementary::dom`].
    pub fn image(self, w: TensorWord) -> TensorElem {
        let word = |s: &str| s.parse::<TensorWord>().expect("literal word");
        let mono = |m: Monomial| RingElem::from(m);
        match self {
            Elementary::Merge { reversed } => {
                let base = match (w.is_minus(2), w.is_minus(1)) {
                    (false, false) => TensorElem::word(word("+")),
                    (false, true) => TensorElem::word(word("-")),
                    (true, true) => TensorElem::zero(),
                    (true, false) => TensorElem::term(word("-"), mono(Monomial::new(1, 0, 1))),
                };
                if reversed {
                    base.scale_unit(Unit::mono(Monomial::X))
                } else {
                    base
                }
            }
            Elementary::Split { reversed } => {
                let base = if w.is_minus(1) {
                    TensorElem::word(word("--"))
                } else {
                    let mut e = TensorElem::word(word("-+"));
                    e.add_term(word("+-"), &mono(Monomial::new(0, 1, 1)));
                    e
                };
                if reversed {
                    base.scale_unit(Unit::mono(Monomial::Y))
                } else {
                    base
                }
            }
            Elementary::Birth => TensorElem::word(word("+")),
            Elementary::Death => {
                if w.is_minus(1) {
                    TensorElem::word(TensorWord::EMPTY)
                } else {
                    TensorElem::zero()
                }
            }
        }
    }

    pub fn to_map(self) -> LinearMap {
        LinearMap::from_fn(self.dom(), self.cod(), self.deg(), |w| self.image(w))
    }
}

pub fn elementary_merge(orient_reversed: bool) -> LinearMap {
    Elementary::Merge { reversed: orient_reversed }.to_map()
}

pub fn elementary_split(orient_reversed: bool) -> LinearMap {
    Elementary::Split { reversed: orient_reversed }.to_map()
}

/// Applies `id_{A^{⊗k}} ⊗ f ⊗ id_{A^{⊗l}}` to one basis word, where `k`
/// counts the factors to the left of `f` (higher positions) and `l` those to
/// the right. The twist is `λ(deg f, deg m₁)` for the left block `m₁`.
pub fn embed_word(f: &LinearMap, l: usize, w: TensorWord) -> TensorElem {
    let k = w.len() - l - f.dom();
    let right = w.slice(1, l);
    let mid = w.slice(l + 1, f.dom());
    let left = w.slice(l + f.dom() + 1, k);
    let twist = lambda(f.deg(), chron_deg(left));
    let mut out = TensorElem::zero();
    for (img, c) in f.column(mid).terms() {
        let word = TensorWord::concat(TensorWord::concat(left, *img), right);
        out.add_term(word, &c.scale_unit(twist));
    }
    out
}

/// `id_{A^{⊗k}} ⊗ f ⊗ id_{A^{⊗l}}` as a map.
pub fn embed(f: &LinearMap, k: usize, l: usize) -> LinearMap {
    LinearMap::from_fn(k + f.dom() + l, k + f.cod() + l, f.deg(), |w| embed_word(f, l, w))
}

/// Shape of a closed surface evaluated by [`composite_closed_surface`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedSurface {
    Sphere,
    Torus,
}

/// Evaluates a closed surface built from births, saddles and deaths.
pub fn composite_closed_surface(kind: ClosedSurface) -> RingElem {
    let birth = Elementary::Birth.to_map();
    let death = Elementary::Death.to_map();
    let map = match kind {
        ClosedSurface::Sphere => death.compose(&birth),
        ClosedSurface::Torus => elementary_split(false)
            .compose(&birth)
            .and_then(|m| elementary_merge(false).compose(&m))
            .and_then(|m| death.compose(&m)),
    }
    .expect("closed surface pieces compose");
    map.column(TensorWord::EMPTY).coeff(TensorWord::EMPTY)
}

/// Outcome of one identity in [`relation_suite`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: &'static str,
    pub holds: bool,
}

/// Evaluates the chronological relations on tensor powers of `A`: closed
/// sphere and torus, reversed saddles, stacked merges and splits, and the
/// merge/split interchange.
pub fn relation_suite() -> Vec<RelationCheck> {
    let m = elementary_merge(false);
    let s = elementary_split(false);
    let (x, y, z) = (RingElem::x(), RingElem::y(), RingElem::z());
    let eq = |a: Result<LinearMap>, b: Result<LinearMap>| matches!((a, b), (Ok(a), Ok(b)) if a == b);
    let torus = composite_closed_surface(ClosedSurface::Torus);
    vec![
        RelationCheck { name: "sphere = 0", holds: composite_closed_surface(ClosedSurface::Sphere).is_zero() },
        RelationCheck { name: "torus = Z(X+Y)", holds: torus == &z * &(&x + &y) },
        RelationCheck { name: "reversed merge = X merge", holds: elementary_merge(true) == m.scale(&x) },
        RelationCheck { name: "reversed split = Y split", holds: elementary_split(true) == s.scale(&y) },
        RelationCheck {
            name: "m(m x 1) = X m(1 x m)",
            holds: eq(m.compose(&embed(&m, 0, 1)), m.compose(&embed(&m, 1, 0)).map(|f| f.scale(&x))),
        },
        RelationCheck {
            name: "(D x 1)D = Y (1 x D)D",
            holds: eq(embed(&s, 0, 1).compose(&s), embed(&s, 1, 0).compose(&s).map(|f| f.scale(&y))),
        },
        RelationCheck {
            name: "(m x 1)(1 x D) = Z Dm",
            holds: eq(embed(&m, 0, 1).compose(&embed(&s, 1, 0)), s.compose(&m).map(|f| f.scale(&z))),
        },
        RelationCheck {
            name: "(1 x m)(D x 1) = Z Dm",
            holds: eq(embed(&m, 1, 0).compose(&embed(&s, 0, 1)), s.compose(&m).map(|f| f.scale(&z))),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn w(s: &str) -> TensorWord {
        s.parse().unwrap()
    }

    fn r(s: &str) -> RingElem {
        s.parse().unwrap()
    }

    #[test]
    fn table_one() {
        assert_eq!(chron_deg(w("++")), ChronDegree::new(2, 0));
        assert_eq!(chron_deg(w("+-")), ChronDegree::new(1, -1));
        assert_eq!(chron_deg(w("--")), ChronDegree::new(0, -2));
        assert_eq!(chron_deg(TensorWord::EMPTY), ChronDegree::ZERO);
        assert_eq!(sdeg(w("++")), SDeg::new(0, 0));
        assert_eq!(sdeg(w("+-")), SDeg::new(1, -1));
        assert_eq!(sdeg(w("-+")), SDeg::new(0, -2));
        assert_eq!(sdeg(w("--")), SDeg::new(1, -3));
        assert_eq!(sdeg(w("+++++")), SDeg::ZERO);
    }

    #[test]
    fn word_positions() {
        let x = w("-++-");
        assert!(x.is_minus(1) && x.is_minus(4) && !x.is_minus(2));
        assert_eq!(x.slice(2, 2), w("++"));
        assert_eq!(x.splice(2, 2, w("-")), w("---"));
        assert_eq!(TensorWord::concat(w("-"), w("+")), w("-+"));
        assert_eq!(x.bar(), w("+--+"));
        assert_eq!(x.to_string(), "-++-");
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(w("+-"), 1).unwrap(), TensorElem::term(w("-+"), r("Z^-1")));
        assert_eq!(tau(w("++"), 1).unwrap(), TensorElem::term(w("++"), r("X")));
        assert_eq!(tau(w("--"), 1).unwrap(), TensorElem::term(w("--"), r("Y")));
        assert!(tau(w("+-"), 2).is_err());
        let t = tau_map(2, 1).unwrap();
        assert_eq!(t.compose(&t).unwrap(), LinearMap::identity(2));
    }

    #[test]
    fn merge_and_split_tables() {
        let m = elementary_merge(false);
        assert_eq!(m.column(w("-+")), TensorElem::term(w("-"), r("X*Z")));
        assert_eq!(m.column(w("--")), TensorElem::zero());
        assert_eq!(elementary_merge(true).column(w("+-")), TensorElem::term(w("-"), r("X")));
        let d = elementary_split(false);
        let mut img = TensorElem::word(w("-+"));
        img.add_term(w("+-"), &r("Y*Z"));
        assert_eq!(d.column(w("+")), img);
        assert_eq!(elementary_split(true).column(w("-")), TensorElem::term(w("--"), r("Y")));
    }

    #[test]
    fn embed_examples() {
        let m = elementary_merge(false);
        assert_eq!(embed(&m, 0, 0), m);
        assert_eq!(embed(&m, 1, 0).column(w("-++")), TensorElem::term(w("-+"), r("Z")));
        let d = elementary_split(false);
        assert_eq!(embed(&d, 0, 1).column(w("-+")), TensorElem::word(w("--+")));
    }

    #[test]
    fn closed_surfaces() {
        assert!(composite_closed_surface(ClosedSurface::Sphere).is_zero());
        assert_eq!(composite_closed_surface(ClosedSurface::Torus), r("Z*X + Z*Y"));
    }

    #[test]
    fn relations_hold() {
        for r in relation_suite() {
            assert!(r.holds, "{}", r.name);
        }
    }

    #[test]
    fn unit_ratio_finds_scalar() {
        let m = elementary_merge(false);
        let c = Unit::new(true, Monomial::new(1, 1, -2));
        assert_eq!(m.scale_unit(c).unit_ratio(&m), Some(c));
        assert_eq!(m.unit_ratio(&elementary_split(false).compose(&m).unwrap()), None);
    }
}
