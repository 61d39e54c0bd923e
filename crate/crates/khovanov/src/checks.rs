//! Verification checks run by `khovanov verify`.

use std::fmt;
use std::str::FromStr;

use khovanov_core::coeff::{Monomial, RingElem, SpecVariant, Unit};
use khovanov_core::complex::{
    block_action, build_complex, check_chain_map, complex_from_cube, duality_map, negation_isomorphism, sdeg_block,
    specialize_int, GradedComplex,
};
use khovanov_core::cube::{sign_assignment_from, Cube};
use khovanov_core::diagram::{mirror, Diagram};
use khovanov_core::frobenius::relation_suite;
use khovanov_core::homology::{check_duality, homology_blocks, HomologyTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::compute::table;
use crate::corpus::CorpusEntry;
use crate::report::{CheckResult, DiagramReport};
use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Relations,
    Dsquared,
    Euler,
    Mod2,
    Negated,
    Duality,
    Decomposition,
    Invariance,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Relations,
        Check::Dsquared,
        Check::Euler,
        Check::Mod2,
        Check::Negated,
        Check::Duality,
        Check::Decomposition,
        Check::Invariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Relations => "relations",
            Check::Dsquared => "dsquared",
            Check::Euler => "euler",
            Check::Mod2 => "mod2",
            Check::Negated => "negated",
            Check::Duality => "duality",
            Check::Decomposition => "decomposition",
            Check::Invariance => "invariance",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Failure;
    fn from_str(s: &str) -> Result<Self, Failure> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Failure::Input(format!("unknown check `{s}`")))
    }
}

/// Parses a comma-separated list; `all` selects every check.
pub fn parse_checks(s: &str) -> Result<Vec<Check>, Failure> {
    if s.trim() == "all" {
        return Ok(Check::ALL.to_vec());
    }
    let mut out: Vec<Check> = s.split(',').map(str::parse).collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// A diagram to verify, with other presentations of the same link.
#[derive(Debug, Clone)]
pub struct Subject {
    pub name: String,
    pub diagram: Diagram,
    pub presentations: Vec<(String, Diagram)>,
}

/// One subject per entry; entries sharing a `variant-of` root are
/// presentations of each other.
pub fn subjects(entries: &[CorpusEntry]) -> Vec<Subject> {
    entries
        .iter()
        .map(|e| {
            let group = e.variant_of().unwrap_or(&e.name);
            let presentations = entries
                .iter()
                .filter(|o| o.name != e.name && o.variant_of().unwrap_or(&o.name) == group)
                .map(|o| (o.name.clone(), o.diagram.clone()))
                .collect();
            Subject { name: e.name.clone(), diagram: e.diagram.clone(), presentations }
        })
        .collect()
}

/// Splitting-degree depths covered by the decomposition check.
pub const BLOCK_DEPTHS: std::ops::RangeInclusive<i64> = -3..=3;

pub fn run(subject: &Subject, checks: &[Check], seed: u64) -> DiagramReport {
    let complex = build_complex(&subject.diagram);
    let checks = checks
        .iter()
        .map(|&check| {
            let outcome = match &complex {
                Err(e) if check != Check::Relations => Err(Failure::from(e.clone())),
                _ => run_one(check, subject, complex.as_ref().ok(), seed),
            };
            let (pass, detail) = match outcome {
                Ok(detail) => (true, detail),
                Err(e) => (false, e.to_string()),
            };
            CheckResult { check: check.name().to_string(), pass, detail }
        })
        .collect();
    DiagramReport { name: subject.name.clone(), checks }
}

fn fail(msg: impl Into<String>) -> Failure {
    Failure::Check(msg.into())
}

fn run_one(check: Check, s: &Subject, c: Option<&GradedComplex<RingElem>>, seed: u64) -> Result<String, Failure> {
    let c = || c.ok_or_else(|| Failure::Internal("complex unavailable".into()));
    match check {
        Check::Relations => relations(),
        Check::Dsquared => dsquared(c()?),
        Check::Euler => euler(&s.diagram, c()?),
        Check::Mod2 => mod2(c()?),
        Check::Negated => negated(c()?),
        Check::Duality => duality(&s.diagram, c()?),
        Check::Decomposition => decomposition(c()?),
        Check::Invariance => invariance(s, c()?, seed),
    }
}

fn relations() -> Result<String, Failure> {
    let results = relation_suite();
    let failed: Vec<&str> = results.iter().filter(|r| !r.holds).map(|r| r.name).collect();
    if failed.is_empty() {
        Ok(format!("{} identities hold, including sphere = 0 and torus = Z(X+Y)", results.len()))
    } else {
        Err(fail(format!("failing: {}", failed.join("; "))))
    }
}

fn dsquared(c: &GradedComplex<RingElem>) -> Result<String, Failure> {
    for v in [SpecVariant::Even, SpecVariant::Odd, SpecVariant::Negated] {
        specialize_int(c, v)?.check_d_squared()?;
    }
    c.map_coefficients(RingElem::to_unified).check_d_squared()?;
    c.map_coefficients(RingElem::to_mod2).check_d_squared()?;
    Ok("d∘d = 0 over R and every specialization; q and sdeg preserved".into())
}

fn euler(d: &Diagram, c: &GradedComplex<RingElem>) -> Result<String, Failure> {
    let chain = c.euler_characteristic();
    let homology = table(c, SpecVariant::Even)?.euler_characteristic();
    if chain != homology {
        return Err(fail("Euler characteristic of homology differs from that of the chain groups"));
    }
    let m = build_complex(&mirror(d))?.euler_characteristic();
    let flipped: std::collections::BTreeMap<i64, i64> = chain.iter().map(|(&q, &v)| (-q, v)).collect();
    if m != flipped {
        return Err(fail("mirror Euler characteristic is not the q ↦ 1/q image"));
    }
    Ok(format!("chain, homology and mirror Euler characteristics agree ({} terms)", chain.len()))
}

fn mod2(c: &GradedComplex<RingElem>) -> Result<String, Failure> {
    let even = table(c, SpecVariant::Even)?.mod2_dimensions();
    let odd = table(c, SpecVariant::Odd)?.mod2_dimensions();
    let direct = table(c, SpecVariant::Mod2)?.dimensions();
    if even != odd {
        return Err(fail("even and odd homology differ with F2 coefficients"));
    }
    if even != direct {
        return Err(fail("universal coefficients disagree with the direct F2 computation"));
    }
    Ok("even, odd and direct F2 dimensions agree".into())
}

fn negated(c: &GradedComplex<RingElem>) -> Result<String, Failure> {
    let neg = specialize_int(c, SpecVariant::Negated)?;
    let even = specialize_int(c, SpecVariant::Even)?;
    check_chain_map(&neg, &even, &negation_isomorphism(c))?;
    if !table(c, SpecVariant::Negated)?.same_groups(&table(c, SpecVariant::Even)?) {
        return Err(fail("negated and even tables differ"));
    }
    Ok("rescaling is a chain isomorphism; negated table equals even".into())
}

fn duality(d: &Diagram, c: &GradedComplex<RingElem>) -> Result<String, Failure> {
    let dm = duality_map(d)?;
    for (i, m) in &dm.map {
        let mut rows = vec![0usize; m.rows];
        let mut cols = vec![0usize; m.cols];
        for (r, col, v) in m.iter() {
            Unit::from_ring(v).map_err(|_| fail(format!("degree {i}: entry `{v}` is not a unit")))?;
            rows[r] += 1;
            cols[col] += 1;
        }
        if m.rows != m.cols || rows.iter().chain(&cols).any(|&k| k != 1) {
            return Err(fail(format!("degree {i}: map is not a bijection on generators")));
        }
    }
    let cm = &dm.mirror_complex;
    for v in [SpecVariant::Even, SpecVariant::Odd] {
        let report = check_duality(&table(cm, v)?, &table(c, v)?);
        if let Some(((i, q), msg)) = report.mismatches.first() {
            return Err(fail(format!("{v}: bidegree ({i}, {q}): {msg}")));
        }
    }
    Ok("explicit map is a bijective chain map; even and odd tables are dual".into())
}

fn decomposition(c: &GradedComplex<RingElem>) -> Result<String, Failure> {
    let unified = table(c, SpecVariant::Unified)?;
    let blocks = homology_blocks(c, BLOCK_DEPTHS)?;
    for (s, t) in &blocks {
        if t.entries != unified.entries {
            return Err(fail(format!("block ({}, {}) differs from unified homology", s.parity, s.depth)));
        }
    }
    let mut actions = 0;
    for &from in blocks.keys() {
        for m in [Monomial::X, Monomial::Z] {
            let to = from + m.sdeg();
            if !blocks.contains_key(&to) {
                continue;
            }
            let f = block_action(c, m, from)?;
            check_chain_map(&sdeg_block(c, from)?, &sdeg_block(c, to)?, &f)?;
            actions += 1;
        }
    }
    Ok(format!("{} blocks match unified homology; {actions} X/Z actions are chain isomorphisms", blocks.len()))
}

fn tables(c: &GradedComplex<RingElem>) -> Result<(HomologyTable, HomologyTable), Failure> {
    Ok((table(c, SpecVariant::Even)?, table(c, SpecVariant::Odd)?))
}

fn random_unit(rng: &mut ChaCha8Rng) -> Unit {
    let m = match rng.random_range(0..6) {
        0 => Monomial::ONE,
        1 => Monomial::X,
        2 => Monomial::Y,
        3 => Monomial::XY,
        4 => Monomial::Z,
        _ => Monomial::Z.inv(),
    };
    Unit::new(rng.random_bool(0.5), m)
}

fn invariance(s: &Subject, c: &GradedComplex<RingElem>, seed: u64) -> Result<String, Failure> {
    let base = tables(c)?;
    let d = &s.diagram;
    let n = d.len();
    let mut variants: Vec<(String, Diagram)> = Vec::new();
    let mut flip_sets: Vec<Vec<bool>> = (0..n).map(|k| (0..n).map(|j| j == k).collect()).collect();
    flip_sets.push(vec![true; n]);
    for flips in flip_sets.into_iter().filter(|_| n > 0) {
        let label: String = flips.iter().map(|&b| if b { '1' } else { '0' }).collect();
        variants.push((format!("arrows {label}"), d.with_arrows(&flips)?));
    }
    if n > 1 {
        let reversed: Vec<usize> = (0..n).rev().collect();
        let mut rotated: Vec<usize> = (0..n).collect();
        rotated.rotate_left(1);
        variants.push(("reversed numbering".into(), d.permuted(&reversed)?));
        variants.push(("rotated numbering".into(), d.permuted(&rotated)?));
    }
    variants.extend(s.presentations.iter().cloned());
    for (label, v) in &variants {
        if tables(&build_complex(v)?)? != base {
            return Err(fail(format!("tables differ for {label}")));
        }
    }
    let cube = Cube::build(d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.rotate_left(if n > 0 { rng.random_range(0..n) } else { 0 });
    let gauges: Vec<Unit> = (0..1usize << n).map(|_| random_unit(&mut rng)).collect();
    let eps = sign_assignment_from(&cube.faces, n, &order, |v| gauges[v])?;
    if tables(&complex_from_cube(&cube.with_sign_assignment(eps)?)?)? != base {
        return Err(fail("tables differ for an independently solved sign assignment"));
    }
    Ok(format!(
        "even and odd tables agree across {} presentations and a re-solved sign assignment",
        variants.len()
    ))
}
