//! The graded generalized Khovanov complex: assembly from the cube,
//! coefficient specialization, splitting-degree blocks, dualization and the
//! mirror-duality map.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::coeff::{Monomial, RingElem, SDeg, Scalar, SpecVariant, Unit, ZPi, F2};
use crate::cube::{Cube, SignAssignment};
use crate::diagram::{mirror, Diagram};
use crate::error::{Error, Result};
use crate::frobenius::{sdeg, TensorWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub vertex: usize,
    pub word: TensorWord,
    pub hom_deg: i64,
    pub q_deg: i64,
    pub sdeg: SDeg,
}

/// A sparse matrix stored as a map from `(row, col)` to nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMat<C> {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), C>,
}

impl<C: Scalar> SparseMat<C> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMat::new(n, n);
        for k in 0..n {
            m.add_to(k, k, C::one());
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> C {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: C) {
        debug_assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            return;
        }
        match self.entries.remove(&(r, c)) {
            Some(old) => {
                let s = old + v;
                if !s.is_zero() {
                    self.entries.insert((r, c), s);
                }
            }
            None => {
                self.entries.insert((r, c), v);
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &C)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &SparseMat<C>) -> Result<SparseMat<C>> {
        if self.cols != rhs.rows {
            return Err(Error::LengthMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut by_col: Vec<Vec<(usize, &C)>> = vec![Vec::new(); self.cols];
        for (&(r, c), v) in &self.entries {
            by_col[c].push((r, v));
        }
        let mut out = SparseMat::new(self.rows, rhs.cols);
        for (&(k, c), v) in &rhs.entries {
            for &(r, u) in &by_col[k] {
                out.add_to(r, c, u.clone() * v.clone());
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> SparseMat<C> {
        SparseMat { rows: self.cols, cols: self.rows, entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect() }
    }

    pub fn map<T: Scalar>(&self, mut f: impl FnMut(&C) -> T) -> SparseMat<T> {
        let mut out = SparseMat::new(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            out.add_to(r, c, f(v));
        }
        out
    }

    pub fn neg(&self) -> SparseMat<C> {
        self.map(|v| -v.clone())
    }

    /// Restriction to the given rows and columns, reindexed in order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMat<C> {
        let rix: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        let cix: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut out = SparseMat::new(rows.len(), cols.len());
        for (&(r, c), v) in &self.entries {
            if let (Some(&r2), Some(&c2)) = (rix.get(&r), cix.get(&c)) {
                out.add_to(r2, c2, v.clone());
            }
        }
        out
    }
}

/// A cochain complex with generators and differentials `d^i : C^i → C^{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedComplex<C> {
    pub gens: BTreeMap<i64, Vec<Generator>>,
    pub diffs: BTreeMap<i64, SparseMat<C>>,
}

impl<C: Scalar> GradedComplex<C> {
    pub fn generators(&self, i: i64) -> &[Generator] {
        self.gens.get(&i).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn rank(&self, i: i64) -> usize {
        self.generators(i).len()
    }

    /// `d^i`, or the zero map if one side is empty.
    pub fn diff(&self, i: i64) -> SparseMat<C> {
        self.diffs.get(&i).cloned().unwrap_or_else(|| SparseMat::new(self.rank(i + 1), self.rank(i)))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.gens.keys().copied()
    }

    pub fn map_coefficients<T: Scalar>(&self, mut f: impl FnMut(&C) -> T) -> GradedComplex<T> {
        GradedComplex { gens: self.gens.clone(), diffs: self.diffs.iter().map(|(&i, m)| (i, m.map(&mut f))).collect() }
    }

    /// Checks `d^{i+1} ∘ d^i = 0` in every degree.
    pub fn check_d_squared(&self) -> Result<()> {
        for (&i, d) in &self.diffs {
            if let Some(next) = self.diffs.get(&(i + 1)) {
                if !next.mul(d)?.is_zero() {
                    return Err(Error::internal(format!("d∘d is nonzero starting in degree {i}")));
                }
            }
        }
        Ok(())
    }

    /// Checks that every nonzero entry connects generators of equal `q`.
    pub fn check_q_preserved(&self) -> Result<()> {
        for (&i, d) in &self.diffs {
            let (src, tgt) = (self.generators(i), self.generators(i + 1));
            for (r, c, _) in d.iter() {
                if src[c].q_deg != tgt[r].q_deg {
                    return Err(Error::internal(format!("differential changes q in degree {i}")));
                }
            }
        }
        Ok(())
    }

    /// Graded Euler characteristic `Σ (-1)^i q^{q_deg}` of the chain groups.
    pub fn euler_characteristic(&self) -> BTreeMap<i64, i64> {
        let mut out: BTreeMap<i64, i64> = BTreeMap::new();
        for (&i, gens) in &self.gens {
            for g in gens {
                *out.entry(g.q_deg).or_default() += if i.rem_euclid(2) == 0 { 1 } else { -1 };
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// The dual complex `(C*)^i = Hom(C^{-i}, ·)` with `(d*)^i = (-1)^i (d^{-i-1})ᵀ`.
    /// Dual generators carry negated gradings.
    pub fn dual(&self) -> GradedComplex<C> {
        let gens = self
            .gens
            .iter()
            .map(|(&i, gs)| {
                let dual = gs.iter().map(|g| Generator { hom_deg: -i, q_deg: -g.q_deg, sdeg: -g.sdeg, ..*g }).collect();
                (-i, dual)
            })
            .collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(&j, d)| {
                // d^j : C^j → C^{j+1} dualizes to degree i = -j - 1.
                let i = -j - 1;
                let t = d.transpose();
                (i, if i.rem_euclid(2) == 1 { t.neg() } else { t })
            })
            .collect();
        GradedComplex { gens, diffs }
    }

    /// Index of every generator within its homological degree.
    pub fn index(&self) -> BTreeMap<(usize, TensorWord), (i64, usize)> {
        let mut out = BTreeMap::new();
        for (&i, gs) in &self.gens {
            for (k, g) in gs.iter().enumerate() {
                out.insert((g.vertex, g.word), (i, k));
            }
        }
        out
    }
}

/// Assembles the complex of a cube: generators at vertex `ξ` are the words
/// of length `#circles(ξ)`; the differential is `Σ ε(ζ) W_ζ`.
pub fn complex_from_cube(cube: &Cube) -> Result<GradedComplex<RingElem>> {
    let d = &cube.diagram;
    let n = cube.n;
    let (n_plus, n_minus) = (d.n_plus as i64, d.n_minus as i64);
    let mut gens: BTreeMap<i64, Vec<Generator>> = BTreeMap::new();
    let mut offset = vec![0usize; 1 << n];
    let mut vertices: Vec<usize> = (0..1usize << n).collect();
    vertices.sort_by_key(|v| (v.count_ones(), *v));
    for &v in &vertices {
        let weight = i64::from(v.count_ones());
        let i = weight - n_minus;
        let list = gens.entry(i).or_default();
        offset[v] = list.len();
        for w in TensorWord::all(cube.resolutions[v].len()) {
            let q = w.plus_count() as i64 - w.minus_count() as i64 + weight + n_plus - 2 * n_minus;
            list.push(Generator { vertex: v, word: w, hom_deg: i, q_deg: q, sdeg: sdeg(w) - cube.shifts[v] });
        }
    }
    let mut diffs: BTreeMap<i64, SparseMat<RingElem>> = BTreeMap::new();
    for e in cube.edges.iter().flatten() {
        let i = i64::from(e.source.count_ones()) - n_minus;
        let (rows, cols) = (gens[&(i + 1)].len(), gens[&i].len());
        let m = diffs.entry(i).or_insert_with(|| SparseMat::new(rows, cols));
        let eps = cube.epsilon(e.source, e.direction).ok_or_else(|| Error::internal("edge without sign"))?;
        for (s, t, c) in e.map.entries() {
            let col = offset[e.source] + s.minus_bits() as usize;
            let row = offset[e.target()] + t.minus_bits() as usize;
            m.add_to(row, col, c.scale_unit(eps));
        }
    }
    let c = GradedComplex { gens, diffs };
    c.check_d_squared()?;
    c.check_q_preserved()?;
    check_sdeg_preserved(&c)?;
    Ok(c)
}

/// Builds the cube and complex of a diagram.
pub fn build_complex(d: &Diagram) -> Result<GradedComplex<RingElem>> {
    complex_from_cube(&Cube::build(d)?)
}

/// Checks that every entry `c` of `d` satisfies `sdeg(src) = sdeg c + sdeg(tgt)`.
pub fn check_sdeg_preserved(c: &GradedComplex<RingElem>) -> Result<()> {
    for (&i, d) in &c.diffs {
        let (src, tgt) = (c.generators(i), c.generators(i + 1));
        for (r, col, v) in d.iter() {
            let ok = v.sdeg().map(|s| src[col].sdeg == s + tgt[r].sdeg).unwrap_or(false);
            if !ok {
                return Err(Error::internal(format!("differential entry `{v}` in degree {i} breaks the splitting degree")));
            }
        }
    }
    Ok(())
}

/// A specialized complex, typed by its coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecializedComplex {
    Int(GradedComplex<BigInt>),
    ZPi(GradedComplex<ZPi>),
    F2(GradedComplex<F2>),
    Generalized(GradedComplex<RingElem>),
}

/// Applies a specialization entrywise.
pub fn specialize_complex(c: &GradedComplex<RingElem>, v: SpecVariant) -> SpecializedComplex {
    match v {
        SpecVariant::Even => SpecializedComplex::Int(c.map_coefficients(RingElem::to_even)),
        SpecVariant::Odd => SpecializedComplex::Int(c.map_coefficients(RingElem::to_odd)),
        SpecVariant::Negated => SpecializedComplex::Int(c.map_coefficients(RingElem::to_negated)),
        SpecVariant::Unified => SpecializedComplex::ZPi(c.map_coefficients(RingElem::to_unified)),
        SpecVariant::Mod2 => SpecializedComplex::F2(c.map_coefficients(RingElem::to_mod2)),
        SpecVariant::Generalized => SpecializedComplex::Generalized(c.clone()),
    }
}

/// Integer specialization (`even`, `odd`, `negated`).
pub fn specialize_int(c: &GradedComplex<RingElem>, v: SpecVariant) -> Result<GradedComplex<BigInt>> {
    match specialize_complex(c, v) {
        SpecializedComplex::Int(k) => Ok(k),
        _ => Err(Error::parse(0, format!("variant `{v}` does not specialize to the integers"))),
    }
}

/// The monomial `X^{(a - a_g) mod 2} Z^{b_g - b}` turning a generator of
/// splitting degree `(a_g, b_g)` into an element of degree `(a, b)`.
pub fn block_normalizer(block: SDeg, g: SDeg) -> Monomial {
    Monomial::new(i64::from(block.parity) - i64::from(g.parity), 0, g.depth - block.depth)
}

/// The block of splitting degree `block`: a complex over `Z_π` with basis
/// `e_g = X^{…} Z^{…} g` for every generator `g`.
pub fn sdeg_block(c: &GradedComplex<RingElem>, block: SDeg) -> Result<GradedComplex<ZPi>> {
    let mut diffs = BTreeMap::new();
    for (&i, d) in &c.diffs {
        let (src, tgt) = (c.generators(i), c.generators(i + 1));
        let mut m = SparseMat::new(d.rows, d.cols);
        for (r, col, v) in d.iter() {
            let ratio = block_normalizer(block, src[col].sdeg) * block_normalizer(block, tgt[r].sdeg).inv();
            let coeff = v.scale_unit(Unit::mono(ratio));
            let z = coeff.degree_zero_to_zpi().ok_or_else(|| {
                Error::internal(format!("entry `{v}` leaves block {block} in degree {i}"))
            })?;
            m.add_to(r, col, z);
        }
        diffs.insert(i, m);
    }
    Ok(GradedComplex { gens: c.gens.clone(), diffs })
}

/// Blocks for every splitting degree in the given range of depths.
pub fn sdeg_blocks(
    c: &GradedComplex<RingElem>,
    depths: core::ops::RangeInclusive<i64>,
) -> Result<BTreeMap<SDeg, GradedComplex<ZPi>>> {
    let mut out = BTreeMap::new();
    for b in depths {
        for a in 0..2 {
            let s = SDeg::new(a, b);
            out.insert(s, sdeg_block(c, s)?);
        }
    }
    Ok(out)
}

/// The matrix of multiplication by a monomial from block `from` to block
/// `to = from + sdeg(m)`, in the bases `e_g`. Fails if some image is not a
/// degree-zero multiple of the basis vector.
pub fn block_action(c: &GradedComplex<RingElem>, m: Monomial, from: SDeg) -> Result<BTreeMap<i64, SparseMat<ZPi>>> {
    let to = from + m.sdeg();
    let mut out = BTreeMap::new();
    for (&i, gs) in &c.gens {
        let mut a = SparseMat::new(gs.len(), gs.len());
        for (k, g) in gs.iter().enumerate() {
            let ratio = m * block_normalizer(from, g.sdeg) * block_normalizer(to, g.sdeg).inv();
            let z = RingElem::from(ratio)
                .degree_zero_to_zpi()
                .ok_or_else(|| Error::internal(format!("{m} does not map block {from} to {to}")))?;
            a.add_to(k, k, z);
        }
        out.insert(i, a);
    }
    Ok(out)
}

/// Checks that per-degree maps `f^i : A^i → B^i` commute with differentials.
pub fn check_chain_map<C: Scalar>(
    a: &GradedComplex<C>,
    b: &GradedComplex<C>,
    f: &BTreeMap<i64, SparseMat<C>>,
) -> Result<()> {
    let degrees: Vec<i64> = a.degrees().chain(b.degrees()).collect();
    for &i in &degrees {
        let fi = f.get(&i).cloned().unwrap_or_else(|| SparseMat::new(b.rank(i), a.rank(i)));
        let fj = f.get(&(i + 1)).cloned().unwrap_or_else(|| SparseMat::new(b.rank(i + 1), a.rank(i + 1)));
        let lhs = fj.mul(&a.diff(i))?;
        let rhs = b.diff(i).mul(&fi)?;
        if lhs != rhs {
            return Err(Error::internal(format!("not a chain map in degree {i}")));
        }
    }
    Ok(())
}

/// The rescaling `u ↦ (φ(X)/X)^a (φ(Z)/Z)^b u` for `φ` negating `X`, `Y`
/// and `Z`, specialized to the integers: a diagonal `±1` isomorphism from the
/// negated complex to the even one.
pub fn negation_isomorphism(c: &GradedComplex<RingElem>) -> BTreeMap<i64, SparseMat<BigInt>> {
    c.gens
        .iter()
        .map(|(&i, gs)| {
            let mut m = SparseMat::new(gs.len(), gs.len());
            for (k, g) in gs.iter().enumerate() {
                let e = i64::from(g.sdeg.parity) + g.sdeg.depth;
                m.add_to(k, k, BigInt::from(if e.rem_euclid(2) == 0 { 1 } else { -1 }));
            }
            (i, m)
        })
        .collect()
}

/// The explicit isomorphism `F Kh(D^!) → F Kh(D)*`.
#[derive(Debug, Clone)]
pub struct DualityMap {
    pub mirror_complex: GradedComplex<RingElem>,
    pub dual_complex: GradedComplex<RingElem>,
    /// Per homological degree: matrix from mirror generators to dual generators.
    pub map: BTreeMap<i64, SparseMat<RingElem>>,
    /// Sign assignment on the cube of `D` under which the map is diagonal.
    pub sign_assignment: SignAssignment,
}

impl DualityMap {
    /// Applies a specialization to both complexes and the map.
    pub fn specialize<T: Scalar>(
        &self,
        f: impl Fn(&RingElem) -> T + Copy,
    ) -> (GradedComplex<T>, GradedComplex<T>, BTreeMap<i64, SparseMat<T>>) {
        (
            self.mirror_complex.map_coefficients(f),
            self.dual_complex.map_coefficients(f),
            self.map.iter().map(|(&i, m)| (i, m.map(f))).collect(),
        )
    }
}

/// Realizes `u ↦ (XY)^a ū*` where `ū` flips every letter of `u` and `a` is
/// the parity of the splitting degree of `u` in the mirror complex.
///
/// The sign assignment of `D` is read off edge by edge from the mirror
/// complex. It must induce every face scalar of `D`, ladybug faces up to
/// their `XY` ambiguity, and the map is then checked to be a chain map.
pub fn duality_map(d: &Diagram) -> Result<DualityMap> {
    let cube_m = Cube::build(&mirror(d))?;
    let cube_d = Cube::build(d)?;
    let cm = complex_from_cube(&cube_m)?;
    let canonical = complex_from_cube(&cube_d)?.dual();
    let n = d.len();
    let full = (1usize << n) - 1;
    let idx_m = cm.index();
    let idx_d = canonical.index();
    let base = |g: &Generator| -> Result<(i64, usize, usize, Unit)> {
        let (i, row) = *idx_d.get(&(full ^ g.vertex, g.word.bar())).ok_or_else(|| Error::internal("unmatched generator"))?;
        let (_, col) = idx_m[&(g.vertex, g.word)];
        Ok((i, row, col, Unit::mono(Monomial::XY.pow(i64::from(g.sdeg.parity)))))
    };
    let mut eps = cube_d.eps.clone();
    let mut fixed = vec![false; eps.len()];
    for (&i, dm) in &cm.diffs {
        let (src, tgt) = (cm.generators(i), cm.generators(i + 1));
        let dd = canonical.diff(i);
        for (r, c, val) in dm.iter() {
            let dir = (src[c].vertex ^ tgt[r].vertex).trailing_zeros() as usize;
            let slot = (full ^ tgt[r].vertex) * n + dir;
            if fixed[slot] {
                continue;
            }
            let (_, row_s, _, u_s) = base(&src[c])?;
            let (_, row_t, _, u_t) = base(&tgt[r])?;
            let theirs = dd.get(row_t, row_s).scale_unit(u_s);
            let mine = val.scale_unit(u_t);
            let fix = crate::frobenius::unit_candidates(&mine, &theirs)
                .into_iter()
                .find(|&q| theirs.scale_unit(q) == mine)
                .ok_or_else(|| Error::internal(format!("mirror edge {:?} has no dual counterpart", (src[c].vertex, dir))))?;
            eps[slot] = eps[slot].map(|e| e * fix);
            fixed[slot] = true;
        }
    }
    let cube_d = cube_d.with_induced_sign_assignment(eps)?;
    let cd = complex_from_cube(&cube_d)?.dual();
    let mut map: BTreeMap<i64, SparseMat<RingElem>> = BTreeMap::new();
    for (&i, gs) in &cm.gens {
        let mut mat = SparseMat::new(cd.rank(i), gs.len());
        for g in gs {
            let (j, row, col, u) = base(g)?;
            if j != i {
                return Err(Error::internal("duality map changes homological degree"));
            }
            mat.add_to(row, col, u.to_ring());
        }
        map.insert(i, mat);
    }
    check_chain_map(&cm, &cd, &map)?;
    Ok(DualityMap { mirror_complex: cm, dual_complex: cd, map, sign_assignment: cube_d.eps })
}
