//! Independent oracles: a plain even Khovanov complex over `Z[x]/x²`, an
//! exterior-algebra odd complex for small diagrams, and the Jones polynomial
//! from the Kauffman bracket. Nothing here goes through `khovanov-core`
//! beyond the table type used for comparison.

#![allow(dead_code)]

use std::collections::BTreeMap;

use khovanov::core::coeff::SpecVariant;
use khovanov::core::homology::{HomologyEntry, HomologyTable};

/// Crossings as `[a, b, c, d]` plus crossingless circles.
#[derive(Debug, Clone)]
pub struct Pd {
    pub crossings: Vec<[usize; 4]>,
    pub circles: usize,
}

pub fn parse(text: &str) -> Pd {
    let body: String = text.lines().filter(|l| !l.trim_start().starts_with('#')).collect::<Vec<_>>().join(" ");
    let mut crossings = Vec::new();
    let mut circles = 0;
    for tok in body.split(')') {
        if let Some(rest) = tok.trim().strip_prefix("X(") {
            let v: Vec<usize> = rest.split(',').map(|s| s.trim().parse().unwrap()).collect();
            crossings.push([v[0], v[1], v[2], v[3]]);
        } else if let Some(k) = tok.trim().strip_prefix("circles=") {
            circles = k.trim().parse().unwrap();
        }
    }
    Pd { crossings, circles }
}

impl Pd {
    /// Signs from strand orientations: the under strand runs `a → c`; the
    /// crossing is positive when the over strand runs `d → b`.
    pub fn signs(&self) -> Vec<i64> {
        let n = self.crossings.len();
        // enters[(k, slot)]: whether the strand enters crossing k at slot.
        let mut enters: BTreeMap<(usize, usize), bool> = BTreeMap::new();
        let mut occurrences: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (k, x) in self.crossings.iter().enumerate() {
            for (slot, &e) in x.iter().enumerate() {
                occurrences.entry(e).or_default().push((k, slot));
            }
            enters.insert((k, 0), true);
            enters.insert((k, 2), false);
        }
        loop {
            let before = enters.len();
            for occ in occurrences.values() {
                let (p, q) = (occ[0], occ[1]);
                if let Some(&v) = enters.get(&p) {
                    enters.insert(q, !v);
                }
                if let Some(&v) = enters.get(&q) {
                    enters.insert(p, !v);
                }
            }
            for k in 0..n {
                if let Some(&v) = enters.get(&(k, 1)) {
                    enters.insert((k, 3), !v);
                }
                if let Some(&v) = enters.get(&(k, 3)) {
                    enters.insert((k, 1), !v);
                }
            }
            if enters.len() == before {
                break;
            }
        }
        (0..n).map(|k| if enters[&(k, 3)] { 1 } else { -1 }).collect()
    }

    pub fn n_plus_minus(&self) -> (i64, i64) {
        let s = self.signs();
        (s.iter().filter(|&&x| x > 0).count() as i64, s.iter().filter(|&&x| x < 0).count() as i64)
    }

    /// Circles of a resolution as sorted arc lists; 0-smoothing joins `a-b`
    /// and `c-d`, 1-smoothing joins `a-d` and `b-c`.
    pub fn circles(&self, state: usize) -> Vec<Vec<usize>> {
        let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
        fn find(p: &mut BTreeMap<usize, usize>, x: usize) -> usize {
            let r = *p.entry(x).or_insert(x);
            if r == x {
                x
            } else {
                let root = find(p, r);
                p.insert(x, root);
                root
            }
        }
        for (k, &[a, b, c, d]) in self.crossings.iter().enumerate() {
            let pairs = if state >> k & 1 == 0 { [(a, b), (c, d)] } else { [(a, d), (b, c)] };
            for (x, y) in pairs {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent.insert(rx.max(ry), rx.min(ry));
                }
            }
        }
        let arcs: Vec<usize> = parent.keys().copied().collect();
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for a in arcs {
            let r = find(&mut parent, a);
            groups.entry(r).or_default().push(a);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        // Crossingless circles get fresh labels after every arc.
        let top = out.iter().flatten().max().copied().unwrap_or(0);
        out.extend((1..=self.circles).map(|k| vec![top + k]));
        out
    }
}

fn circle_of(circles: &[Vec<usize>], arc: usize) -> usize {
    circles.iter().position(|c| c.contains(&arc)).unwrap()
}

/// Sparse integer matrix keyed by `(row, col)`.
type Mat = BTreeMap<(usize, usize), i128>;

/// A cochain complex with bigraded generators.
struct Complex {
    /// Per homological degree: q-degrees of the generators.
    gens: BTreeMap<i64, Vec<i64>>,
    /// `d[i]: C^i → C^{i+1}`.
    diffs: BTreeMap<i64, Mat>,
}

/// Rank and invariant factors of an integer matrix, by plain Smith reduction.
pub fn smith(mut a: Vec<Vec<i128>>) -> (usize, Vec<i128>) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if a[r][c] != 0 && best.is_none_or(|(br, bc)| a[r][c].abs() < a[br][bc].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for r in t + 1..rows {
                let f = a[r][t] / p;
                if f != 0 {
                    for c in t..cols {
                        a[r][c] -= f * a[t][c];
                    }
                }
                if a[r][t] != 0 {
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                let f = a[t][c] / p;
                if f != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[c] -= f * row[t];
                    }
                }
                if a[t][c] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // Enforce divisibility against the remaining block.
                let bad = (t + 1..rows).flat_map(|r| (t + 1..cols).map(move |c| (r, c))).find(|&(r, c)| a[r][c] % p != 0);
                match bad {
                    Some((r, _)) => {
                        for c in t..cols {
                            a[t][c] += a[r][c];
                        }
                    }
                    None => break,
                }
            }
            // Move the smallest entry of row/column t to the pivot.
            let mut best = (t, t);
            for r in t..rows {
                if a[r][t] != 0 && a[r][t].abs() < a[best.0][best.1].abs() {
                    best = (r, t);
                }
            }
            for c in t..cols {
                if a[t][c] != 0 && a[t][c].abs() < a[best.0][best.1].abs() {
                    best = (t, c);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    (diag.len(), diag)
}

fn prime_powers(mut n: i128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut q = 1;
        while n % p == 0 {
            n /= p;
            q *= p;
        }
        if q > 1 {
            out.push(q as u64);
        }
        p += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

fn homology(c: &Complex, variant: SpecVariant) -> HomologyTable {
    let mut t = HomologyTable::new(variant);
    let block = |i: i64, q: i64| -> Vec<usize> {
        c.gens.get(&i).map(|g| (0..g.len()).filter(|&k| g[k] == q).collect()).unwrap_or_default()
    };
    let dense = |i: i64, q: i64| -> Vec<Vec<i128>> {
        let (src, tgt) = (block(i, q), block(i + 1, q));
        let d = c.diffs.get(&i);
        tgt.iter().map(|&r| src.iter().map(|&s| d.and_then(|m| m.get(&(r, s))).copied().unwrap_or(0)).collect()).collect()
    };
    let qs: std::collections::BTreeSet<(i64, i64)> =
        c.gens.iter().flat_map(|(&i, g)| g.iter().map(move |&q| (i, q))).collect();
    for (i, q) in qs {
        let dim = block(i, q).len();
        let (out_rank, _) = smith(dense(i, q));
        let (in_rank, factors) = smith(dense(i - 1, q));
        let free = dim - out_rank - in_rank;
        let mut torsion: Vec<u64> = factors.into_iter().filter(|&f| f > 1).flat_map(prime_powers).collect();
        torsion.sort();
        if free > 0 || !torsion.is_empty() {
            t.entries.insert((i, q), HomologyEntry { free, torsion, pi_plus: None, pi_minus: None });
        }
    }
    t
}

/// Generators of a resolution: subsets of circles, bit set = labelled `x`.
fn vertex_offsets(pd: &Pd) -> (Vec<Vec<Vec<usize>>>, Vec<usize>, BTreeMap<i64, Vec<i64>>) {
    let n = pd.crossings.len();
    let (np, nm) = pd.n_plus_minus();
    let res: Vec<Vec<Vec<usize>>> = (0..1usize << n).map(|v| pd.circles(v)).collect();
    let mut offset = vec![0; 1 << n];
    let mut gens: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for v in 0..1usize << n {
        let h = v.count_ones() as i64;
        let list = gens.entry(h - nm).or_default();
        offset[v] = list.len();
        let k = res[v].len();
        for s in 0..1usize << k {
            let x = s.count_ones() as i64;
            list.push((k as i64 - 2 * x) + h + np - 2 * nm);
        }
    }
    (res, offset, gens)
}

/// Even Khovanov homology with signs `(-1)^{ξ_1+…+ξ_{i-1}}`.
pub fn even_homology(pd: &Pd) -> HomologyTable {
    let n = pd.crossings.len();
    let (_, nm) = pd.n_plus_minus();
    let (res, offset, gens) = vertex_offsets(pd);
    let mut diffs: BTreeMap<i64, Mat> = BTreeMap::new();
    for v in 0..1usize << n {
        for i in (0..n).filter(|&i| v >> i & 1 == 0) {
            let w = v | 1 << i;
            let sign: i128 = if (v & ((1 << i) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
            let m = diffs.entry(v.count_ones() as i64 - nm).or_default();
            let (src, tgt) = (&res[v], &res[w]);
            // Image of each source circle in the target.
            let img: Vec<usize> = src.iter().map(|c| circle_of(tgt, c[0])).collect();
            for s in 0..1usize << src.len() {
                let mut terms: Vec<(usize, i128)> = Vec::new();
                if tgt.len() < src.len() {
                    let mut t = 0usize;
                    let mut zero = false;
                    for (k, &j) in img.iter().enumerate() {
                        if s >> k & 1 == 1 {
                            zero |= t >> j & 1 == 1;
                            t |= 1 << j;
                        }
                    }
                    if !zero {
                        terms.push((t, 1));
                    }
                } else {
                    let [a, b, _, _] = pd.crossings[i];
                    let (c1, c2) = (circle_of(tgt, a), circle_of(tgt, b));
                    let split = (0..src.len()).find(|&k| img[k] == c1 || img[k] == c2).unwrap();
                    let mut t = 0usize;
                    for (k, &j) in img.iter().enumerate() {
                        if k != split && s >> k & 1 == 1 {
                            t |= 1 << j;
                        }
                    }
                    if s >> split & 1 == 1 {
                        terms.push((t | 1 << c1 | 1 << c2, 1));
                    } else {
                        terms.push((t | 1 << c1, 1));
                        terms.push((t | 1 << c2, 1));
                    }
                }
                for (t, c) in terms {
                    *m.entry((offset[w] + t, offset[v] + s)).or_default() += sign * c;
                }
            }
        }
    }
    homology(&Complex { gens, diffs }, SpecVariant::Even)
}

/// Re-sorts the indices `seq` into a bitmask; `None` if an index repeats.
fn sort_sign(seq: &[usize]) -> Option<(usize, i128)> {
    let mut mask = 0usize;
    let mut inversions = 0;
    for (k, &x) in seq.iter().enumerate() {
        if mask >> x & 1 == 1 {
            return None;
        }
        mask |= 1 << x;
        inversions += seq[..k].iter().filter(|&&y| y > x).count();
    }
    Some((mask, if inversions % 2 == 0 { 1 } else { -1 }))
}

fn members(s: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|&k| s >> k & 1 == 1).collect()
}

/// Edge map of the exterior-algebra complex, as `source → [(target, coeff)]`.
fn odd_edge(pd: &Pd, res: &[Vec<Vec<usize>>], v: usize, i: usize) -> BTreeMap<usize, BTreeMap<usize, i128>> {
    let w = v | 1 << i;
    let (src, tgt) = (&res[v], &res[w]);
    let img: Vec<usize> = src.iter().map(|c| circle_of(tgt, c[0])).collect();
    let mut out: BTreeMap<usize, BTreeMap<usize, i128>> = BTreeMap::new();
    for s in 0..1usize << src.len() {
        let entry = out.entry(s).or_default();
        if tgt.len() < src.len() {
            let seq: Vec<usize> = members(s).iter().map(|&k| img[k]).collect();
            if let Some((t, sign)) = sort_sign(&seq) {
                *entry.entry(t).or_default() += sign;
            }
        } else {
            let [a, b, _, _] = pd.crossings[i];
            let (c1, c2) = (circle_of(tgt, a), circle_of(tgt, b));
            let lift: Vec<usize> = members(s).iter().map(|&k| if img[k] == c2 { c1 } else { img[k] }).collect();
            for (head, coeff) in [(c1, 1), (c2, -1)] {
                let mut seq = vec![head];
                seq.extend(&lift);
                if let Some((t, sign)) = sort_sign(&seq) {
                    *entry.entry(t).or_default() += coeff * sign;
                }
            }
        }
        entry.retain(|_, c| *c != 0);
    }
    out
}

fn compose(
    f: &BTreeMap<usize, BTreeMap<usize, i128>>,
    g: &BTreeMap<usize, BTreeMap<usize, i128>>,
) -> BTreeMap<usize, BTreeMap<usize, i128>> {
    f.iter()
        .map(|(&s, img)| {
            let mut out: BTreeMap<usize, i128> = BTreeMap::new();
            for (&m, &c) in img {
                for (&t, &d) in &g[&m] {
                    *out.entry(t).or_default() += c * d;
                }
            }
            out.retain(|_, c| *c != 0);
            (s, out)
        })
        .collect()
}

/// Odd Khovanov homology from exterior algebras on the circles, with a sign
/// assignment found by exhaustive search. Limited to diagrams without
/// faces whose two composites both vanish.
pub fn odd_homology(pd: &Pd) -> HomologyTable {
    let n = pd.crossings.len();
    assert!(n <= 3, "odd oracle is exhaustive; keep it to three crossings");
    let (_, nm) = pd.n_plus_minus();
    let (res, offset, gens) = vertex_offsets(pd);
    let edges: Vec<(usize, usize)> =
        (0..1usize << n).flat_map(|v| (0..n).filter(move |&i| v >> i & 1 == 0).map(move |i| (v, i))).collect();
    let maps: BTreeMap<(usize, usize), _> = edges.iter().map(|&(v, i)| ((v, i), odd_edge(pd, &res, v, i))).collect();
    // Face (v; i, j): the composite through v+e_i equals s times the other.
    let mut faces = Vec::new();
    for v in 0..1usize << n {
        for i in 0..n {
            for j in i + 1..n {
                if v >> i & 1 == 1 || v >> j & 1 == 1 {
                    continue;
                }
                let p = compose(&maps[&(v, i)], &maps[&(v | 1 << i, j)]);
                let q = compose(&maps[&(v, j)], &maps[&(v | 1 << j, i)]);
                let neg: BTreeMap<usize, BTreeMap<usize, i128>> =
                    q.iter().map(|(&s, m)| (s, m.iter().map(|(&t, &c)| (t, -c)).collect())).collect();
                let zero = p.values().all(|m| m.is_empty());
                assert!(!zero || q.values().any(|m| !m.is_empty()), "ladybug face at {v}; oracle unsupported");
                let s = if p == q {
                    1
                } else if p == neg {
                    -1
                } else {
                    panic!("face {v} ({i}, {j}) neither commutes nor anticommutes");
                };
                faces.push((v, i, j, s));
            }
        }
    }
    let idx: BTreeMap<(usize, usize), usize> = edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let eps = (0..1u64 << edges.len())
        .find(|&bits| {
            let e = |v: usize, i: usize| if bits >> idx[&(v, i)] & 1 == 1 { -1 } else { 1 };
            faces.iter().all(|&(v, i, j, s)| e(v, i) * e(v | 1 << i, j) * s == -(e(v, j) * e(v | 1 << j, i)))
        })
        .expect("no sign assignment");
    let mut diffs: BTreeMap<i64, Mat> = BTreeMap::new();
    for &(v, i) in &edges {
        let sign: i128 = if eps >> idx[&(v, i)] & 1 == 1 { -1 } else { 1 };
        let m = diffs.entry(v.count_ones() as i64 - nm).or_default();
        let w = v | 1 << i;
        for (&s, img) in &maps[&(v, i)] {
            for (&t, &c) in img {
                *m.entry((offset[w] + t, offset[v] + s)).or_default() += sign * c;
            }
        }
    }
    homology(&Complex { gens, diffs }, SpecVariant::Odd)
}

/// Laurent polynomial as exponent → coefficient.
pub type Laurent = BTreeMap<i64, i64>;

fn mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (&i, &x) in a {
        for (&j, &y) in b {
            *out.entry(i + j).or_default() += x * y;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Unnormalized Jones polynomial in `q` from the Kauffman bracket with
/// `⟨O⟩ = -A² - A⁻²`, A-smoothing = 0-smoothing, and `A^e ↦ (-1)^{e/2} q^{-e/2}`.
pub fn jones(pd: &Pd) -> Laurent {
    let n = pd.crossings.len();
    let loop_value: Laurent = [(2, -1), (-2, -1)].into();
    let mut bracket = Laurent::new();
    for state in 0..1usize << n {
        let ones = state.count_ones() as i64;
        let mut term: Laurent = [(n as i64 - 2 * ones, 1)].into();
        for _ in 0..pd.circles(state).len() {
            term = mul(&term, &loop_value);
        }
        for (e, c) in term {
            *bracket.entry(e).or_default() += c;
        }
    }
    bracket.retain(|_, c| *c != 0);
    let w: i64 = pd.signs().iter().sum();
    let norm: Laurent = [(-3 * w, if w % 2 == 0 { 1 } else { -1 })].into();
    let f = mul(&bracket, &norm);
    let mut out = Laurent::new();
    for (e, c) in f {
        assert!(e % 2 == 0, "odd power of A");
        let sign = if (e / 2) % 2 == 0 { 1 } else { -1 };
        *out.entry(-e / 2).or_default() += sign * c;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `|J(i)|` of the normalized polynomial `Ĵ / (q + q⁻¹)`.
pub fn determinant(unnormalized: &Laurent) -> i64 {
    // Long division by q + q⁻¹ from the top degree down.
    let low = *unnormalized.keys().next().expect("nonzero polynomial");
    let mut rem = unnormalized.clone();
    let mut quot = Laurent::new();
    while let Some((&top, &c)) = rem.iter().next_back() {
        assert!(top - 1 > low, "not divisible by q + 1/q");
        quot.insert(top - 1, c);
        for e in [top, top - 2] {
            *rem.entry(e).or_default() -= c;
        }
        rem.retain(|_, c| *c != 0);
    }
    let (mut re, mut im) = (0i64, 0i64);
    for (&e, &c) in &quot {
        match e.rem_euclid(4) {
            0 => re += c,
            1 => im += c,
            2 => re -= c,
            _ => im -= c,
        }
    }
    let sq = re * re + im * im;
    let r = (sq as f64).sqrt().round() as i64;
    assert_eq!(r * r, sq, "|J(i)| is not an integer");
    r
}
