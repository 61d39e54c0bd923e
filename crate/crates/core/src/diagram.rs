//! Link diagrams given by planar diagram (PD) codes, and their resolutions.
//!
//! A crossing `X(a,b,c,d)` lists its arcs counterclockwise starting at the
//! incoming under-strand, so the under-strand runs `a → c`. The 0-resolution
//! joins `(a,b)` and `(c,d)`; the 1-resolution joins `(a,d)` and `(b,c)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

pub type Arc = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub arcs: [Arc; 4],
    /// `+1` or `-1`.
    pub sign: i8,
    /// Reverses the default arrow between the two arcs of the 0-resolution.
    pub arrow_flipped: bool,
}

impl Crossing {
    /// The two local arcs of the 0-resolution, `(a,b)` then `(c,d)`.
    pub fn zero_pieces(&self) -> [(Arc, Arc); 2] {
        let [a, b, c, d] = self.arcs;
        [(a, b), (c, d)]
    }

    /// The two local arcs of the 1-resolution, `(a,d)` then `(b,c)`.
    pub fn one_pieces(&self) -> [(Arc, Arc); 2] {
        let [a, b, c, d] = self.arcs;
        [(a, d), (b, c)]
    }

    /// True if the arrow starts on the 0-resolution arc `(a,b)`. By default it
    /// starts on the arc carrying the smaller label.
    pub fn arrow_from_ab(&self) -> bool {
        let [a, b, c, d] = self.arcs;
        let default = a.min(b) <= c.min(d);
        default != self.arrow_flipped
    }

    /// True if the over-strand runs from slot `b` to slot `d`.
    pub fn over_b_to_d(&self) -> bool {
        self.sign < 0
    }

    /// The same crossing with over- and under-strands exchanged.
    pub fn mirrored(&self) -> Crossing {
        let [a, b, c, d] = self.arcs;
        let arcs = if self.over_b_to_d() { [b, c, d, a] } else { [d, a, b, c] };
        Crossing { arcs, sign: -self.sign, arrow_flipped: self.arrow_flipped }
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.arcs;
        write!(f, "X({a},{b},{c},{d})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    pub crossings: Vec<Crossing>,
    pub n_arcs: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub free_circles: usize,
}

impl Diagram {
    /// Builds a diagram from raw crossings, deriving every sign from the
    /// orientation implied by the arc labels.
    pub fn from_crossings(arcs: &[[Arc; 4]], free_circles: usize) -> Result<Diagram> {
        let signs = orient(arcs)?;
        let crossings: Vec<Crossing> = arcs
            .iter()
            .zip(signs)
            .map(|(&arcs, sign)| Crossing { arcs, sign, arrow_flipped: false })
            .collect();
        let mut labels: Vec<Arc> = arcs.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        let n_plus = crossings.iter().filter(|c| c.sign > 0).count();
        Ok(Diagram { n_minus: crossings.len() - n_plus, n_plus, n_arcs: labels.len(), crossings, free_circles })
    }

    pub fn unknot() -> Diagram {
        Diagram { crossings: Vec::new(), n_arcs: 0, n_plus: 0, n_minus: 0, free_circles: 1 }
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// The writhe `n₊ - n₋`.
    pub fn writhe(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    /// Replaces the arrow choices; `flips[i]` reverses the arrow at crossing `i`.
    pub fn with_arrows(&self, flips: &[bool]) -> Result<Diagram> {
        if flips.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: flips.len() });
        }
        let mut d = self.clone();
        for (c, &f) in d.crossings.iter_mut().zip(flips) {
            c.arrow_flipped = f;
        }
        Ok(d)
    }

    /// Reorders crossings: the new crossing `k` is the old crossing `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Diagram> {
        let mut seen = vec![false; self.len()];
        if order.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: order.len() });
        }
        for &k in order {
            if k >= self.len() || core::mem::replace(&mut seen[k], true) {
                return Err(Error::parse(0, "crossing order is not a permutation"));
            }
        }
        let mut d = self.clone();
        d.crossings = order.iter().map(|&k| self.crossings[k].clone()).collect();
        Ok(d)
    }

    /// Renders the diagram back into PD text.
    pub fn to_pd(&self) -> String {
        let mut out = String::new();
        if self.free_circles > 0 {
            out.push_str(&format!("circles={}\n", self.free_circles));
        }
        let body: Vec<String> = self.crossings.iter().map(|c| format!("{c}")).collect();
        out.push_str(&body.join(" "));
        out
    }
}

/// Parses PD text: `X(a,b,c,d)` terms separated by whitespace or commas, an
/// optional `circles=k` header counting crossing-free unknotted components,
/// and `#` comments running to the end of the line.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut arcs: Vec<[Arc; 4]> = Vec::new();
    let mut free_circles = 0usize;
    let mut positions = Vec::new();
    while pos < bytes.len() {
        let b = bytes[pos];
        if b.is_ascii_whitespace() || b == b',' || b == b';' {
            pos += 1;
        } else if b == b'#' {
            while pos < bytes.len() && bytes[pos] != b'\n' {
                pos += 1;
            }
        } else if text[pos..].starts_with("circles=") {
            pos += "circles=".len();
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            free_circles = text[start..pos].parse().map_err(|_| Error::parse(start, "expected a circle count"))?;
        } else if b == b'X' || b == b'x' {
            let start = pos;
            pos += 1;
            if bytes.get(pos) != Some(&b'(') && bytes.get(pos) != Some(&b'[') {
                return Err(Error::parse(pos, "expected `(` after `X`"));
            }
            let close = if bytes[pos] == b'(' { b')' } else { b']' };
            pos += 1;
            let end = text[pos..]
                .bytes()
                .position(|c| c == close)
                .map(|k| pos + k)
                .ok_or_else(|| Error::parse(start, "unterminated crossing"))?;
            let fields: Vec<&str> = text[pos..end].split(',').map(str::trim).collect();
            if fields.len() != 4 {
                return Err(Error::parse(start, format!("crossing has {} arcs, expected 4", fields.len())));
            }
            let mut c = [0; 4];
            for (slot, f) in c.iter_mut().zip(&fields) {
                *slot = f.parse().map_err(|_| Error::parse(pos, format!("bad arc label `{f}`")))?;
            }
            arcs.push(c);
            positions.push(start);
            pos = end + 1;
        } else {
            return Err(Error::parse(pos, format!("unexpected character `{}`", b as char)));
        }
    }
    if arcs.is_empty() && free_circles == 0 {
        return Err(Error::parse(0, "empty diagram"));
    }
    let mut count: BTreeMap<Arc, usize> = BTreeMap::new();
    for c in &arcs {
        for &a in c {
            *count.entry(a).or_default() += 1;
        }
    }
    for (k, c) in arcs.iter().enumerate() {
        for &a in c {
            if count[&a] != 2 {
                return Err(Error::parse(positions[k], format!("arc {a} appears {} times, expected 2", count[&a])));
            }
        }
    }
    Diagram::from_crossings(&arcs, free_circles)
}

/// Orients every strand and returns the crossing signs.
///
/// Each arc has one slot where it ends and one where it starts. Under-strand
/// slots are fixed by the PD convention; over-strand directions are
/// propagated from them. Components that never pass under anything are
/// oriented along increasing labels.
fn orient(arcs: &[[Arc; 4]]) -> Result<Vec<i8>> {
    // over[i] = Some(true) if the over-strand at crossing i runs b → d.
    let mut over: Vec<Option<bool>> = vec![None; arcs.len()];
    // For every arc, its slots as (crossing, slot index).
    let mut slots: BTreeMap<Arc, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, c) in arcs.iter().enumerate() {
        for (s, &a) in c.iter().enumerate() {
            slots.entry(a).or_default().push((i, s));
        }
    }
    let inconsistent = |i: usize| Error::parse(0, format!("inconsistent orientation at crossing {}", i + 1));
    // Is the arc entering the crossing at (i, s)? None if not yet known.
    let entering = |over: &[Option<bool>], i: usize, s: usize| -> Option<bool> {
        match s {
            0 => Some(true),
            2 => Some(false),
            1 => over[i],
            _ => over[i].map(|bd| !bd),
        }
    };
    loop {
        let mut changed = true;
        while changed {
            changed = false;
            for sl in slots.values() {
                let [(i, s), (j, t)] = [sl[0], sl[1]];
                match (entering(&over, i, s), entering(&over, j, t)) {
                    (Some(x), Some(y)) => {
                        if x == y {
                            return Err(inconsistent(i));
                        }
                    }
                    (Some(x), None) => {
                        set_over(&mut over, j, t, !x).ok_or_else(|| inconsistent(j))?;
                        changed = true;
                    }
                    (None, Some(y)) => {
                        set_over(&mut over, i, s, !y).ok_or_else(|| inconsistent(i))?;
                        changed = true;
                    }
                    (None, None) => {}
                }
            }
        }
        let Some(i) = over.iter().position(Option::is_none) else { break };
        let [_, b, _, d] = arcs[i];
        if b == d {
            return Err(Error::parse(0, format!("ambiguous orientation at crossing {}", i + 1)));
        }
        let b_to_d = if b.abs_diff(d) == 1 { d > b } else { d < b };
        over[i] = Some(b_to_d);
    }
    Ok(over.into_iter().map(|o| if o == Some(true) { -1 } else { 1 }).collect())
}

/// Records that the arc at over-slot `(i, s)` enters (`true`) or leaves the
/// crossing. Returns `None` on contradiction.
fn set_over(over: &mut [Option<bool>], i: usize, s: usize, enters: bool) -> Option<()> {
    let b_to_d = match s {
        1 => enters,
        3 => !enters,
        _ => return None,
    };
    match over[i] {
        Some(v) if v != b_to_d => None,
        _ => {
            over[i] = Some(b_to_d);
            Some(())
        }
    }
}

/// The mirror image: every crossing has its strands exchanged.
pub fn mirror(d: &Diagram) -> Diagram {
    Diagram {
        crossings: d.crossings.iter().map(Crossing::mirrored).collect(),
        n_arcs: d.n_arcs,
        n_plus: d.n_minus,
        n_minus: d.n_plus,
        free_circles: d.free_circles,
    }
}

/// A circle of a resolution, given by its arcs in increasing order. Free
/// circles have no arcs.
pub type Circle = Vec<Arc>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub xi: Vec<bool>,
    /// Free circles first, then circles ordered by their smallest arc.
    pub circles: Vec<Circle>,
    pub weight: usize,
    arc_circle: BTreeMap<Arc, usize>,
}

impl Resolution {
    /// Index into `circles` of the circle through `arc`.
    pub fn circle_of(&self, arc: Arc) -> usize {
        self.arc_circle[&arc]
    }

    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }
}

/// Resolves every crossing according to `xi` and collects the circles.
pub fn resolve(d: &Diagram, xi: &[bool]) -> Result<Resolution> {
    if xi.len() != d.len() {
        return Err(Error::LengthMismatch { expected: d.len(), found: xi.len() });
    }
    let mut labels: Vec<Arc> = d.crossings.iter().flat_map(|c| c.arcs).collect();
    labels.sort_unstable();
    labels.dedup();
    let index = |a: Arc| labels.binary_search(&a).expect("known arc");
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (c, &bit) in d.crossings.iter().zip(xi) {
        let pieces = if bit { c.one_pieces() } else { c.zero_pieces() };
        for (p, q) in pieces {
            let (rp, rq) = (find(&mut parent, index(p)), find(&mut parent, index(q)));
            parent[rp.max(rq)] = rp.min(rq);
        }
    }
    let mut groups: BTreeMap<usize, Circle> = BTreeMap::new();
    for (k, &a) in labels.iter().enumerate() {
        let r = find(&mut parent, k);
        groups.entry(r).or_default().push(a);
    }
    let mut circles: Vec<Circle> = vec![Vec::new(); d.free_circles];
    let mut found: Vec<Circle> = groups.into_values().collect();
    found.sort();
    circles.extend(found);
    let mut arc_circle = BTreeMap::new();
    for (k, c) in circles.iter().enumerate() {
        for &a in c {
            arc_circle.insert(a, k);
        }
    }
    Ok(Resolution { xi: xi.to_vec(), circles, weight: xi.iter().filter(|&&b| b).count(), arc_circle })
}

/// Bits of a cube vertex index, crossing 0 in the lowest bit.
pub fn bits_of(v: usize, n: usize) -> Vec<bool> {
    (0..n).map(|i| v >> i & 1 == 1).collect()
}
