//! Integer linear algebra and homology tables.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coeff::{RingElem, SDeg, SpecVariant, ZPi, F2};
use crate::complex::{sdeg_block, Generator, GradedComplex, SparseMat};
use crate::error::{Error, Result};

/// A dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (c, v) in row.iter().enumerate() {
                m[(r, c)] = v.clone().into();
            }
        }
        m
    }

    pub fn from_sparse(s: &SparseMat<BigInt>) -> Self {
        let mut m = IntMatrix::zeros(s.rows, s.cols);
        for (r, c, v) in s.iter() {
            m[(r, c)] = v.clone();
        }
        m
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|k| self[(k, k)].clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] += k · row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = &self.data[src * self.cols + c] * k;
            if !v.is_zero() {
                self.data[dst * self.cols + c] += v;
            }
        }
    }

    /// `col[dst] += k · col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + src] * k;
            if !v.is_zero() {
                self.data[r * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = &mut self.data[r * self.cols + c];
            *v = -core::mem::take(v);
        }
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

/// `U · A · V = S` with `S` diagonal, `d₁ | d₂ | …`, all `dᵢ ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The nonzero invariant factors.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.s.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }

    /// Recomputes `U·A·V` and checks the divisibility chain.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        if self.u.mul(a).mul(&self.v) != self.s || !self.s.is_diagonal() {
            return false;
        }
        let d = self.s.diagonal();
        d.iter().all(|x| !x.is_negative()) && d.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) })
    }
}

/// Smith normal form with transformation matrices. The pivot is the
/// smallest-magnitude nonzero entry of the remaining block, ties broken in
/// row-major order.
pub fn smith(a: &IntMatrix) -> SmithForm {
    let mut s = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    reduce(&mut s, Some((&mut u, &mut v)));
    SmithForm { u, s, v }
}

/// Nonzero invariant factors only, without transformation matrices.
pub fn invariant_factors_dense(a: &IntMatrix) -> Vec<BigInt> {
    let mut s = a.clone();
    reduce(&mut s, None);
    s.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
}

fn smallest_entry(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..s.rows {
        for c in t..s.cols {
            let x = &s[(r, c)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(br, bc)| x.magnitude() < s[(br, bc)].magnitude()) {
                if x.magnitude().is_one() {
                    return Some((r, c));
                }
                best = Some((r, c));
            }
        }
    }
    best
}

fn reduce(s: &mut IntMatrix, mut uv: Option<(&mut IntMatrix, &mut IntMatrix)>) {
    let n = s.rows.min(s.cols);
    for t in 0..n {
        loop {
            let Some((r, c)) = smallest_entry(s, t) else { return };
            s.swap_rows(t, r);
            s.swap_cols(t, c);
            if let Some((u, v)) = uv.as_mut() {
                u.swap_rows(t, r);
                v.swap_cols(t, c);
            }
            let p = s[(t, t)].clone();
            let mut dirty = false;
            for r in t + 1..s.rows {
                if s[(r, t)].is_zero() {
                    continue;
                }
                let q = -(&s[(r, t)] / &p);
                s.add_row(r, t, &q);
                if let Some((u, _)) = uv.as_mut() {
                    u.add_row(r, t, &q);
                }
                dirty |= !s[(r, t)].is_zero();
            }
            for c in t + 1..s.cols {
                if s[(t, c)].is_zero() {
                    continue;
                }
                let q = -(&s[(t, c)] / &p);
                s.add_col(c, t, &q);
                if let Some((_, v)) = uv.as_mut() {
                    v.add_col(c, t, &q);
                }
                dirty |= !s[(t, c)].is_zero();
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..s.rows).find(|&r| (t + 1..s.cols).any(|c| !s[(r, c)].is_multiple_of(&p)));
            match bad {
                Some(r) => {
                    s.add_row(t, r, &BigInt::one());
                    if let Some((u, _)) = uv.as_mut() {
                        u.add_row(t, r, &BigInt::one());
                    }
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            if let Some((u, _)) = uv.as_mut() {
                u.negate_row(t);
            }
        }
    }
}

/// Nonzero invariant factors of a sparse matrix: unit pivots are eliminated
/// sparsely (fewest fill-in first), the remainder goes through dense Smith.
pub fn invariant_factors(a: &SparseMat<BigInt>) -> Vec<BigInt> {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); a.rows];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.cols];
    for (r, c, v) in a.iter() {
        rows[r].insert(c, v.clone());
        cols[c].insert(r);
    }
    let mut alive_rows: BTreeSet<usize> = (0..a.rows).filter(|&r| !rows[r].is_empty()).collect();
    let mut units = 0usize;
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for &r in &alive_rows {
            for (&c, v) in &rows[r] {
                if v.magnitude().is_one() {
                    let cost = (rows[r].len() - 1) * (cols[c].len() - 1);
                    if best.is_none_or(|b| cost < b.0) {
                        best = Some((cost, r, c));
                    }
                }
            }
            if best.is_some_and(|b| b.0 == 0) {
                break;
            }
        }
        let Some((_, pr, pc)) = best else { break };
        units += 1;
        let pivot_row = core::mem::take(&mut rows[pr]);
        let p = pivot_row[&pc].clone();
        alive_rows.remove(&pr);
        for &c in pivot_row.keys() {
            cols[c].remove(&pr);
        }
        let others: Vec<usize> = cols[pc].iter().copied().collect();
        for r in others {
            let k = -(&rows[r][&pc] * &p);
            for (&c, v) in &pivot_row {
                let e = rows[r].entry(c).or_insert_with(BigInt::zero);
                *e += v * &k;
                if e.is_zero() {
                    rows[r].remove(&c);
                    cols[c].remove(&r);
                } else {
                    cols[c].insert(r);
                }
            }
            if rows[r].is_empty() {
                alive_rows.remove(&r);
            }
        }
    }
    let mut out = vec![BigInt::one(); units];
    let rest: Vec<usize> = alive_rows.into_iter().collect();
    let rest_cols: Vec<usize> = (0..a.cols).filter(|&c| !cols[c].is_empty()).collect();
    if !rest.is_empty() {
        let cix: BTreeMap<usize, usize> = rest_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut m = IntMatrix::zeros(rest.len(), rest_cols.len());
        for (k, &r) in rest.iter().enumerate() {
            for (c, v) in &rows[r] {
                m[(k, cix[c])] = v.clone();
            }
        }
        out.extend(invariant_factors_dense(&m));
    }
    out.iter_mut().for_each(|d| *d = d.abs());
    out.sort();
    out
}

/// Rank over the two-element field.
pub fn rank_f2(a: &SparseMat<F2>) -> usize {
    let words = a.cols.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = vec![vec![0; words]; a.rows];
    for (r, c, v) in a.iter() {
        if v.0 {
            rows[r][c / 64] |= 1 << (c % 64);
        }
    }
    let mut rank = 0;
    for c in 0..a.cols {
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & bit != 0 {
                row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
            }
        }
        rank += 1;
    }
    rank
}

/// Splits `n` into sorted prime-power orders.
pub fn prime_power_decomposition(n: &BigInt) -> Result<Vec<u64>> {
    let mut m = n.abs().to_u64().ok_or_else(|| Error::internal(format!("torsion order {n} too large")))?;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut q = 1;
            while m % p == 0 {
                m /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out.sort_unstable();
    Ok(out)
}

/// One bidegree of a homology table.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomologyEntry {
    /// Free rank as an abelian group.
    pub free: usize,
    /// Torsion summands as sorted prime-power orders.
    pub torsion: Vec<u64>,
    /// For unified tables: rational rank of the `π = +1` eigenspace.
    pub pi_plus: Option<usize>,
    /// For unified tables: rational rank of the `π = −1` eigenspace.
    pub pi_minus: Option<usize>,
}

impl HomologyEntry {
    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyTable {
    pub variant: SpecVariant,
    /// Nonzero groups keyed by `(i, q)`.
    pub entries: BTreeMap<(i64, i64), HomologyEntry>,
}

impl HomologyTable {
    pub fn new(variant: SpecVariant) -> Self {
        HomologyTable { variant, entries: BTreeMap::new() }
    }

    pub fn get(&self, i: i64, q: i64) -> HomologyEntry {
        self.entries.get(&(i, q)).cloned().unwrap_or_default()
    }

    /// Same groups, ignoring the variant tag.
    pub fn same_groups(&self, other: &HomologyTable) -> bool {
        self.entries == other.entries
    }

    /// Free ranks and torsion only, dropping the π-eigenspace data.
    pub fn groups_only(&self) -> HomologyTable {
        let entries = self
            .entries
            .iter()
            .map(|(&k, e)| (k, HomologyEntry { pi_plus: None, pi_minus: None, ..e.clone() }))
            .collect();
        HomologyTable { variant: self.variant, entries }
    }

    /// `Σ (-1)^i free · q^q`.
    pub fn euler_characteristic(&self) -> BTreeMap<i64, i64> {
        let mut out: BTreeMap<i64, i64> = BTreeMap::new();
        for (&(i, q), e) in &self.entries {
            let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            *out.entry(q).or_default() += sign * e.free as i64;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Dimensions of homology with `F₂` coefficients predicted by universal
    /// coefficients: free rank plus 2-primary torsion of `H^i` and `H^{i+1}`.
    pub fn mod2_dimensions(&self) -> BTreeMap<(i64, i64), usize> {
        let mut out: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        for (&(i, q), e) in &self.entries {
            let two = e.torsion.iter().filter(|&&t| t % 2 == 0).count();
            *out.entry((i, q)).or_default() += e.free + two;
            if two > 0 {
                *out.entry((i - 1, q)).or_default() += two;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Free ranks per bidegree.
    pub fn dimensions(&self) -> BTreeMap<(i64, i64), usize> {
        self.entries.iter().filter(|(_, e)| e.free > 0).map(|(&k, e)| (k, e.free)).collect()
    }

    fn insert(&mut self, i: i64, q: i64, e: HomologyEntry) {
        if !e.is_zero() {
            self.entries.insert((i, q), e);
        }
    }
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "variant {}", self.variant)?;
        if self.entries.is_empty() {
            return writeln!(f, "(zero)");
        }
        for (&(i, q), e) in &self.entries {
            write!(f, "i={i:>3} q={q:>3}  ")?;
            let mut parts: Vec<String> = Vec::new();
            if e.free > 0 {
                parts.push(if e.free == 1 { String::from("Z") } else { format!("Z^{}", e.free) });
            }
            parts.extend(e.torsion.iter().map(|t| format!("Z/{t}")));
            write!(f, "{}", parts.join(" + "))?;
            if let (Some(p), Some(m)) = (e.pi_plus, e.pi_minus) {
                write!(f, "  [pi=+1: {p}, pi=-1: {m}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Generator indices of `gens` grouped by `q` (or all under `q = 0`).
fn q_groups(gens: &[Generator], graded_by_q: bool) -> BTreeMap<i64, Vec<usize>> {
    let mut out: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, g) in gens.iter().enumerate() {
        out.entry(if graded_by_q { g.q_deg } else { 0 }).or_default().push(k);
    }
    out
}

/// Rank and invariant factors of every `q`-block of every differential.
type BlockFactors = BTreeMap<(i64, i64), Vec<BigInt>>;

fn block_factors(
    c: &GradedComplex<BigInt>,
    graded_by_q: bool,
) -> (BlockFactors, BTreeMap<(i64, i64), usize>) {
    let mut factors = BTreeMap::new();
    let mut dims = BTreeMap::new();
    for i in c.degrees() {
        for (q, idx) in q_groups(c.generators(i), graded_by_q) {
            dims.insert((i, q), idx.len());
        }
    }
    for i in c.degrees() {
        let d = c.diff(i);
        let src = q_groups(c.generators(i), graded_by_q);
        let tgt = q_groups(c.generators(i + 1), graded_by_q);
        for (q, cols) in &src {
            let Some(rows) = tgt.get(q) else { continue };
            factors.insert((i, *q), invariant_factors(&d.submatrix(rows, cols)));
        }
    }
    (factors, dims)
}

/// Homology of an integer complex, per `(i, q)` when `graded_by_q`, else
/// with every group reported at `q = 0`.
pub fn homology_z(c: &GradedComplex<BigInt>, variant: SpecVariant, graded_by_q: bool) -> Result<HomologyTable> {
    let (factors, dims) = block_factors(c, graded_by_q);
    let mut t = HomologyTable::new(variant);
    for (&(i, q), &dim) in &dims {
        let out_rank = factors.get(&(i, q)).map_or(0, Vec::len);
        let incoming = factors.get(&(i - 1, q)).map(Vec::as_slice).unwrap_or(&[]);
        let free = dim.checked_sub(out_rank + incoming.len()).ok_or_else(|| Error::internal("negative homology rank"))?;
        let mut torsion = Vec::new();
        for d in incoming.iter().filter(|d| !d.is_one()) {
            torsion.extend(prime_power_decomposition(d)?);
        }
        torsion.sort_unstable();
        t.insert(i, q, HomologyEntry { free, torsion, pi_plus: None, pi_minus: None });
    }
    Ok(t)
}

/// Homology with coefficients in the two-element field, by rank alone.
pub fn homology_f2(c: &GradedComplex<F2>, graded_by_q: bool) -> HomologyTable {
    let mut ranks: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    let mut dims: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for i in c.degrees() {
        let src = q_groups(c.generators(i), graded_by_q);
        let tgt = q_groups(c.generators(i + 1), graded_by_q);
        let d = c.diff(i);
        for (q, cols) in &src {
            dims.insert((i, *q), cols.len());
            if let Some(rows) = tgt.get(q) {
                ranks.insert((i, *q), rank_f2(&d.submatrix(rows, cols)));
            }
        }
    }
    let mut t = HomologyTable::new(SpecVariant::Mod2);
    for (&(i, q), &dim) in &dims {
        let free = dim - ranks.get(&(i, q)).copied().unwrap_or(0) - ranks.get(&(i - 1, q)).copied().unwrap_or(0);
        t.insert(i, q, HomologyEntry { free, ..Default::default() });
    }
    t
}

/// Restriction of scalars from `Z_π` to `Z`: each generator `g` becomes the
/// pair `g, πg`, and `a + bπ` becomes `[[a, b], [b, a]]`.
pub fn restrict_to_z(c: &GradedComplex<ZPi>) -> GradedComplex<BigInt> {
    let gens = c.gens.iter().map(|(&i, gs)| (i, gs.iter().flat_map(|g| [*g, *g]).collect())).collect();
    let diffs = c
        .diffs
        .iter()
        .map(|(&i, d)| {
            let mut m = SparseMat::new(2 * d.rows, 2 * d.cols);
            for (r, col, v) in d.iter() {
                for (dr, dc, x) in [(0, 0, &v.a), (1, 1, &v.a), (0, 1, &v.b), (1, 0, &v.b)] {
                    m.add_to(2 * r + dr, 2 * col + dc, x.clone());
                }
            }
            (i, m)
        })
        .collect();
    GradedComplex { gens, diffs }
}

/// Homology over `Z_π` as abelian groups, with the rational ranks of the
/// `π = ±1` eigenspaces of the involution recorded per bidegree.
pub fn homology_unified(c: &GradedComplex<ZPi>) -> Result<HomologyTable> {
    let mut t = homology_z(&restrict_to_z(c), SpecVariant::Unified, true)?;
    let plus = homology_z(&c.map_coefficients(ZPi::at_plus), SpecVariant::Even, true)?;
    let minus = homology_z(&c.map_coefficients(ZPi::at_minus), SpecVariant::Odd, true)?;
    let keys: BTreeSet<(i64, i64)> = t.entries.keys().chain(plus.entries.keys()).chain(minus.entries.keys()).copied().collect();
    for k in keys {
        let (p, m) = (plus.get(k.0, k.1).free, minus.get(k.0, k.1).free);
        let e = t.entries.entry(k).or_default();
        if e.free != p + m {
            return Err(Error::internal(format!("π-eigenspaces do not span the free part at {k:?}")));
        }
        e.pi_plus = Some(p);
        e.pi_minus = Some(m);
        if e.is_zero() {
            t.entries.remove(&k);
        }
    }
    Ok(t)
}

/// Unified homology of every splitting-degree block `(a, b)`, `b ∈ depths`.
pub fn homology_blocks(
    c: &GradedComplex<RingElem>,
    depths: core::ops::RangeInclusive<i64>,
) -> Result<BTreeMap<SDeg, HomologyTable>> {
    let mut out = BTreeMap::new();
    for b in depths {
        for a in 0..2 {
            let s = SDeg::new(a, b);
            let mut t = homology_unified(&sdeg_block(c, s)?)?;
            t.variant = SpecVariant::Generalized;
            out.insert(s, t);
        }
    }
    Ok(out)
}

/// Outcome of a universal-coefficient duality comparison.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DualityReport {
    /// Failing bidegrees `(i, q)` of the mirror table, with a description.
    pub mismatches: Vec<((i64, i64), String)>,
}

impl DualityReport {
    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `H^{i,q}(mirror)` with `H^{-i,-q}(orig)` (free part) and
/// `H^{-i+1,-q}(orig)` (torsion).
pub fn check_duality(mirror: &HomologyTable, orig: &HomologyTable) -> DualityReport {
    let mut keys: BTreeSet<(i64, i64)> = mirror.entries.keys().copied().collect();
    for &(i, q) in orig.entries.keys() {
        keys.insert((-i, -q));
        keys.insert((1 - i, -q));
    }
    let mut report = DualityReport::default();
    for (i, q) in keys {
        let m = mirror.get(i, q);
        let free = orig.get(-i, -q).free;
        let torsion = orig.get(1 - i, -q).torsion;
        if m.free != free {
            report.mismatches.push(((i, q), format!("free rank {} vs {}", m.free, free)));
        }
        if m.torsion != torsion {
            report.mismatches.push(((i, q), format!("torsion {:?} vs {:?}", m.torsion, torsion)));
        }
    }
    report
}
