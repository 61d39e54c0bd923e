//! The cube of resolutions: saddle maps on every edge, the face scalars `ψ`,
//! a sign assignment `ε` with `δε = -ψ`, and the splitting-degree shifts of
//! the vertices.
//!
//! Vertices are bitmasks with crossing `i` in bit `i`. Circle `j` of a
//! resolution sits at tensor position `j + 1`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::{Monomial, SDeg, Unit};
use crate::diagram::{bits_of, resolve, Diagram, Resolution};
use crate::error::{Error, Result};
use crate::frobenius::{elementary_merge, elementary_split, embed_word, tau, LinearMap, TensorElem, TensorWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// Circles `circles.0 < circles.1` of the source merge into circle `into`.
    Merge { circles: (usize, usize), into: usize },
    /// Circle `circle` of the source splits into circles `into.0 < into.1`.
    Split { circle: usize, into: (usize, usize) },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeEdge {
    pub source: usize,
    pub direction: usize,
    pub kind: EdgeKind,
    pub reversed: bool,
    /// Number of `τ` moves used to bring circles into and out of place.
    pub twists: usize,
    pub map: LinearMap,
}

impl CubeEdge {
    pub fn target(&self) -> usize {
        self.source | 1 << self.direction
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceScalar {
    pub value: Unit,
    /// Both path composites are invariant under `XY`, so `value` is only
    /// determined up to that factor by the maps themselves.
    pub ambiguous: bool,
}

/// Key of a 2-face: base vertex and the two directions `i < j`.
pub type Face = (usize, usize, usize);

#[derive(Debug, Clone)]
pub struct Cube {
    pub diagram: Diagram,
    pub n: usize,
    pub resolutions: Vec<Resolution>,
    /// Indexed by `vertex * n + direction`; `None` when the bit is already set.
    pub edges: Vec<Option<CubeEdge>>,
    pub faces: BTreeMap<Face, FaceScalar>,
    pub eps: SignAssignment,
    /// Splitting-degree shift of every vertex.
    pub shifts: Vec<SDeg>,
}

/// Values of `ε` indexed like [`Cube::edges`].
pub type SignAssignment = Vec<Option<Unit>>;

enum Step {
    Tau(usize),
    Merge(usize),
    Split(usize),
}

fn apply_steps(w: TensorWord, steps: &[Step], merge: &LinearMap, split: &LinearMap) -> TensorElem {
    let mut cur = TensorElem::word(w);
    for step in steps {
        let mut next = TensorElem::zero();
        for (word, c) in cur.terms() {
            let img = match *step {
                Step::Tau(p) => tau(*word, p).expect("position in range"),
                Step::Merge(p) => embed_word(merge, p - 1, *word),
                Step::Split(p) => embed_word(split, p - 1, *word),
            };
            next.add(&img.scale(c));
        }
        cur = next;
    }
    cur
}

/// Adjacent transpositions sorting `order` (entry at index `k` is the target
/// circle sitting at position `k + 1`) into increasing order.
fn sort_steps(order: &mut [usize], steps: &mut Vec<Step>) {
    while let Some(k) = (0..order.len().saturating_sub(1)).find(|&k| order[k] > order[k + 1]) {
        order.swap(k, k + 1);
        steps.push(Step::Tau(k + 1));
    }
}

/// The saddle map along crossing `i` from `src` to `tgt`.
pub fn edge_map(d: &Diagram, src: &Resolution, tgt: &Resolution, source: usize, i: usize) -> Result<CubeEdge> {
    let c = &d.crossings[i];
    let [ab, cd] = c.zero_pieces();
    let k = src.len();
    let mut steps = Vec::new();
    let (kind, reversed, mut order) = if src.len() == tgt.len() + 1 {
        let (p, q) = (src.circle_of(ab.0), src.circle_of(cd.0));
        if p == q {
            return Err(Error::internal("merge edge with a single circle"));
        }
        let (lo, hi) = (p.min(q), p.max(q));
        let into = tgt.circle_of(ab.0);
        let tail = if c.arrow_from_ab() { p } else { q };
        let reversed = tail == hi;
        for pos in (lo + 2..=hi).rev() {
            steps.push(Step::Tau(pos));
        }
        steps.push(Step::Merge(lo + 1));
        let mut order: Vec<usize> = Vec::with_capacity(k - 1);
        for (j, circle) in src.circles.iter().enumerate() {
            if j == lo {
                order.push(into);
            } else if j != hi {
                order.push(matching(j, circle, tgt)?);
            }
        }
        (EdgeKind::Merge { circles: (lo, hi), into }, reversed, order)
    } else if src.len() + 1 == tgt.len() {
        let p = src.circle_of(ab.0);
        if p != src.circle_of(cd.0) {
            return Err(Error::internal("split edge touching two circles"));
        }
        let [ad, bc] = c.one_pieces();
        let (r_ad, r_bc) = (tgt.circle_of(ad.0), tgt.circle_of(bc.0));
        let (lo, hi) = (r_ad.min(r_bc), r_ad.max(r_bc));
        let tail = if c.arrow_from_ab() { r_bc } else { r_ad };
        let reversed = tail == hi;
        steps.push(Step::Split(p + 1));
        let mut order: Vec<usize> = Vec::with_capacity(k + 1);
        for (j, circle) in src.circles.iter().enumerate() {
            if j == p {
                order.push(lo);
                order.push(hi);
            } else {
                order.push(matching(j, circle, tgt)?);
            }
        }
        (EdgeKind::Split { circle: p, into: (lo, hi) }, reversed, order)
    } else {
        return Err(Error::internal(format!("edge along crossing {i} does not change the circle count by one")));
    };
    sort_steps(&mut order, &mut steps);
    let twists = steps.iter().filter(|s| matches!(s, Step::Tau(_))).count();
    let merge = elementary_merge(reversed);
    let split = elementary_split(reversed);
    let deg = match kind {
        EdgeKind::Merge { .. } => merge.deg(),
        EdgeKind::Split { .. } => split.deg(),
    };
    let map = LinearMap::from_fn(k, tgt.len(), deg, |w| apply_steps(w, &steps, &merge, &split));
    Ok(CubeEdge { source, direction: i, kind, reversed, twists, map })
}

/// Index in `tgt` of a circle untouched by the saddle.
fn matching(j: usize, circle: &[u32], tgt: &Resolution) -> Result<usize> {
    match circle.first() {
        Some(&a) => {
            let j = tgt.circle_of(a);
            if tgt.circles[j] != circle {
                return Err(Error::internal("inconsistent circle matching across an edge"));
            }
            Ok(j)
        }
        // Free circles keep their slots at the front.
        None => Ok(j),
    }
}

/// The unit `ψ` with `(i first) = ψ · (j first)` around the face.
pub fn face_scalar(cube_edges: &[Option<CubeEdge>], n: usize, face: Face) -> Result<FaceScalar> {
    let (v, i, j) = face;
    let edge = |v: usize, k: usize| cube_edges[v * n + k].as_ref().ok_or_else(|| Error::internal("missing edge"));
    let path_i = edge(v | 1 << i, j)?.map.compose(&edge(v, i)?.map)?;
    let path_j = edge(v | 1 << j, i)?.map.compose(&edge(v, j)?.map)?;
    let value = path_i
        .unit_ratio(&path_j)
        .ok_or_else(|| Error::internal(format!("face {face:?} does not commute up to a unit")))?;
    let xy = Unit::mono(Monomial::XY);
    let ambiguous = path_j.scale_unit(xy) == path_j;
    let value = if ambiguous && value.mono.y == 1 { value * xy } else { value };
    Ok(FaceScalar { value, ambiguous })
}

/// The six faces of the 3-cube `(v; i<j<k)`, split into the two routes that
/// must agree for `ψ` to be a cocycle.
fn three_cube_routes(v: usize, i: usize, j: usize, k: usize) -> ([Face; 3], [Face; 3]) {
    let (ei, ej, ek) = (1 << i, 1 << j, 1 << k);
    ([(v | ei, j, k), (v, i, k), (v | ek, i, j)], [(v, i, j), (v | ej, i, k), (v, j, k)])
}

fn for_each_three_cube(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> Result<()>) -> Result<()> {
    for v in 0..1usize << n {
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if v & (1 << i | 1 << j | 1 << k) == 0 {
                        f(v, i, j, k)?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Fixes the `XY` ambiguity of ladybug faces so that `ψ` becomes a cocycle.
///
/// Each ambiguous face gets a bit `t` and the value `ψ · (XY)^t`. Every 3-cube
/// gives one linear equation over `F₂`; free variables are set to zero.
pub fn resolve_ambiguous_faces(faces: &mut BTreeMap<Face, FaceScalar>, n: usize) -> Result<()> {
    let vars: Vec<Face> = faces.iter().filter(|(_, f)| f.ambiguous).map(|(k, _)| *k).collect();
    let index: BTreeMap<Face, usize> = vars.iter().enumerate().map(|(k, f)| (*f, k)).collect();
    let words = vars.len() / 64 + 1;
    let xy = Unit::mono(Monomial::XY);
    let mut rows: Vec<(Vec<u64>, bool)> = Vec::new();
    for_each_three_cube(n, |v, i, j, k| {
        let (r1, r2) = three_cube_routes(v, i, j, k);
        let mut ratio = Unit::ONE;
        let mut row = vec![0u64; words];
        for f in r1.iter().chain(&r2) {
            let s = faces[f];
            ratio = if r1.contains(f) { ratio * s.value } else { ratio * s.value.inv() };
            if let Some(&x) = index.get(f) {
                row[x / 64] ^= 1 << (x % 64);
            }
        }
        let rhs = if ratio == Unit::ONE {
            false
        } else if ratio == xy {
            true
        } else {
            return Err(Error::internal(format!("face scalars fail the cocycle condition at {:?}", (v, i, j, k))));
        };
        rows.push((row, rhs));
        Ok(())
    })?;
    let solution = solve_f2(rows, vars.len())
        .ok_or_else(|| Error::internal("no consistent choice of ladybug face scalars"))?;
    for (f, t) in vars.iter().zip(solution) {
        if t {
            let s = faces.get_mut(f).expect("known face");
            s.value = s.value * xy;
        }
    }
    Ok(())
}

/// Solves a linear system over `F₂` by Gaussian elimination.
fn solve_f2(mut rows: Vec<(Vec<u64>, bool)>, nvars: usize) -> Option<Vec<bool>> {
    let bit = |row: &[u64], x: usize| row[x / 64] >> (x % 64) & 1 == 1;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for x in 0..nvars {
        let Some(p) = (r..rows.len()).find(|&k| bit(&rows[k].0, x)) else { continue };
        rows.swap(r, p);
        let (prow, prhs) = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && bit(&row.0, x) {
                for (a, b) in row.0.iter_mut().zip(&prow) {
                    *a ^= b;
                }
                row.1 ^= prhs;
            }
        }
        pivots.push((r, x));
        r += 1;
    }
    if rows[r..].iter().any(|(_, rhs)| *rhs) {
        return None;
    }
    let mut sol = vec![false; nvars];
    for (row, x) in pivots {
        sol[x] = rows[row].1;
    }
    Some(sol)
}

/// Checks that `ψ` is a cocycle on every 3-cube.
pub fn check_cocycle(faces: &BTreeMap<Face, FaceScalar>, n: usize) -> Result<()> {
    for_each_three_cube(n, |v, i, j, k| {
        let (r1, r2) = three_cube_routes(v, i, j, k);
        let p1 = r1.iter().fold(Unit::ONE, |a, f| a * faces[f].value);
        let p2 = r2.iter().fold(Unit::ONE, |a, f| a * faces[f].value);
        if p1 != p2 {
            return Err(Error::internal(format!("cocycle condition fails at {:?}", (v, i, j, k))));
        }
        Ok(())
    })
}

/// `ε = ε₀ · η` with `ε₀(ξ,i) = (-1)^{ξ_1+…+ξ_{i-1}}` and `η(ξ,i)` the product
/// of the face scalars met when moving `i` into its place in the increasing
/// flip order of `ξ`.
pub fn sign_assignment(faces: &BTreeMap<Face, FaceScalar>, n: usize) -> Result<SignAssignment> {
    let mut eps = vec![None; n << n];
    for v in 0..1usize << n {
        for i in (0..n).filter(|&i| v >> i & 1 == 0) {
            let lower = v & ((1 << i) - 1);
            let mut u = if lower.count_ones() % 2 == 1 { Unit::MINUS_ONE } else { Unit::ONE };
            for j in (i + 1..n).filter(|&j| v >> j & 1 == 1) {
                let base = v & ((1 << j) - 1);
                let f = faces.get(&(base, i, j)).ok_or_else(|| Error::internal("missing face"))?;
                u = u * f.value;
            }
            eps[v * n + i] = Some(u);
        }
    }
    check_sign_assignment(faces, n, &eps)?;
    Ok(eps)
}

/// An independently constructed sign assignment. Vertices are processed by
/// weight; each picks a reference incoming edge by the priority `order` and
/// gives it the value `gauge(vertex)`, and every other incoming edge is solved
/// from the face it shares with the reference edge.
pub fn sign_assignment_from(
    faces: &BTreeMap<Face, FaceScalar>,
    n: usize,
    order: &[usize],
    mut gauge: impl FnMut(usize) -> Unit,
) -> Result<SignAssignment> {
    let mut eps: SignAssignment = vec![None; n << n];
    let mut vertices: Vec<usize> = (1..1usize << n).collect();
    vertices.sort_by_key(|v| (v.count_ones(), *v));
    for w in vertices {
        let r = *order.iter().find(|&&k| w >> k & 1 == 1).ok_or_else(|| Error::internal("bad order"))?;
        let reference = gauge(w);
        eps[(w ^ 1 << r) * n + r] = Some(reference);
        for i in (0..n).filter(|&i| i != r && w >> i & 1 == 1) {
            // Face (b; i, r); the unknown is ε(b + e_r, i).
            let b = w ^ 1 << i ^ 1 << r;
            let psi = faces.get(&(b, i.min(r), i.max(r))).ok_or_else(|| Error::internal("missing face"))?.value;
            let e_bi = known_for(&eps, n, b, i)?;
            let e_br = known_for(&eps, n, b, r)?;
            let unknown = if i < r {
                -(e_bi * reference * psi) * e_br.inv()
            } else {
                -(e_bi * reference) * (e_br * psi).inv()
            };
            eps[(b | 1 << r) * n + i] = Some(unknown);
        }
    }
    check_sign_assignment(faces, n, &eps)?;
    Ok(eps)
}

fn known_for(eps: &SignAssignment, n: usize, v: usize, i: usize) -> Result<Unit> {
    eps[v * n + i].ok_or_else(|| Error::internal("unsolved edge"))
}

/// Verifies `ε(ξ,i) ε(ξ+e_i,j) ψ = -ε(ξ,j) ε(ξ+e_j,i)` on every face.
pub fn check_sign_assignment(faces: &BTreeMap<Face, FaceScalar>, n: usize, eps: &SignAssignment) -> Result<()> {
    for (&(v, i, j), f) in faces {
        let e = |v: usize, k: usize| known_for(eps, n, v, k);
        let lhs = e(v, i)? * e(v | 1 << i, j)? * f.value;
        let rhs = -(e(v, j)? * e(v | 1 << j, i)?);
        if lhs != rhs {
            return Err(Error::internal(format!("face {:?} does not anticommute", (v, i, j))));
        }
    }
    Ok(())
}

/// Splitting degree of the corrected edge map `ε · W`.
pub fn edge_sdeg(edge: &CubeEdge, eps: Unit) -> Result<SDeg> {
    let s = edge.map.sdeg_shift().ok_or_else(|| Error::internal("edge map is not homogeneous"))?;
    Ok(s + eps.sdeg())
}

/// Vertex shifts summed along the increasing path, then checked on every edge.
pub fn vertex_shifts(edges: &[Option<CubeEdge>], eps: &SignAssignment, n: usize) -> Result<Vec<SDeg>> {
    let mut shifts = vec![SDeg::ZERO; 1 << n];
    for v in 1..1usize << n {
        let top = usize::BITS as usize - 1 - v.leading_zeros() as usize;
        let prev = v ^ 1 << top;
        let edge = edges[prev * n + top].as_ref().ok_or_else(|| Error::internal("missing edge"))?;
        shifts[v] = shifts[prev] + edge_sdeg(edge, eps[prev * n + top].unwrap_or(Unit::ONE))?;
    }
    for e in edges.iter().flatten() {
        let s = edge_sdeg(e, eps[e.source * n + e.direction].unwrap_or(Unit::ONE))?;
        if shifts[e.source] + s != shifts[e.target()] {
            return Err(Error::internal(format!("vertex shift depends on the path at edge {:?}", (e.source, e.direction))));
        }
    }
    Ok(shifts)
}

impl Cube {
    /// Builds every resolution, edge, face scalar and the sign assignment.
    pub fn build(d: &Diagram) -> Result<Cube> {
        let n = d.len();
        let resolutions: Vec<Resolution> =
            (0..1usize << n).map(|v| resolve(d, &bits_of(v, n))).collect::<Result<_>>()?;
        let mut edges = vec![None; n << n];
        for v in 0..1usize << n {
            for i in (0..n).filter(|&i| v >> i & 1 == 0) {
                let e = edge_map(d, &resolutions[v], &resolutions[v | 1 << i], v, i)?;
                edges[v * n + i] = Some(e);
            }
        }
        let mut faces = BTreeMap::new();
        for v in 0..1usize << n {
            for i in 0..n {
                for j in i + 1..n {
                    if v & (1 << i | 1 << j) == 0 {
                        faces.insert((v, i, j), face_scalar(&edges, n, (v, i, j))?);
                    }
                }
            }
        }
        resolve_ambiguous_faces(&mut faces, n)?;
        check_cocycle(&faces, n)?;
        let eps = sign_assignment(&faces, n)?;
        let shifts = vertex_shifts(&edges, &eps, n)?;
        Ok(Cube { diagram: d.clone(), n, resolutions, edges, faces, eps, shifts })
    }

    pub fn edge(&self, v: usize, i: usize) -> Option<&CubeEdge> {
        self.edges[v * self.n + i].as_ref()
    }

    pub fn epsilon(&self, v: usize, i: usize) -> Option<Unit> {
        self.eps[v * self.n + i]
    }

    pub fn vertex_shift(&self, v: usize) -> SDeg {
        self.shifts[v]
    }

    /// Replaces the sign assignment, recomputing the vertex shifts.
    pub fn with_sign_assignment(&self, eps: SignAssignment) -> Result<Cube> {
        check_sign_assignment(&self.faces, self.n, &eps)?;
        let shifts = vertex_shifts(&self.edges, &eps, self.n)?;
        Ok(Cube { eps, shifts, ..self.clone() })
    }

    /// Like [`Cube::with_sign_assignment`], but ladybug faces take whichever
    /// of their two admissible values `eps` induces.
    pub fn with_induced_sign_assignment(&self, eps: SignAssignment) -> Result<Cube> {
        let n = self.n;
        let xy = Unit::mono(Monomial::XY);
        let mut faces = self.faces.clone();
        for (&(v, i, j), f) in faces.iter_mut() {
            let e = |v: usize, k: usize| known_for(&eps, n, v, k);
            let induced = -(e(v, j)? * e(v | 1 << j, i)?) * (e(v, i)? * e(v | 1 << i, j)?).inv();
            if induced != f.value && !(f.ambiguous && induced == f.value * xy) {
                return Err(Error::internal(format!("sign assignment contradicts face {:?}", (v, i, j))));
            }
            f.value = induced;
        }
        check_cocycle(&faces, n)?;
        let shifts = vertex_shifts(&self.edges, &eps, n)?;
        Ok(Cube { faces, eps, shifts, ..self.clone() })
    }
}
