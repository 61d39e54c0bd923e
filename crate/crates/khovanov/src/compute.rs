//! Homology tables for a diagram and variant.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use khovanov_core::coeff::{RingElem, SDeg, SpecVariant};
use khovanov_core::complex::{specialize_int, GradedComplex};
use khovanov_core::diagram::Diagram;
use khovanov_core::homology::{homology_blocks, homology_f2, homology_unified, homology_z, HomologyTable};

use crate::Failure;

/// Depth range used for `generalized` when no `--blocks` range is given.
pub const DEFAULT_BLOCKS: RangeInclusive<i64> = 0..=0;

/// Result of a computation: one table, or one table per splitting-degree block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Computed {
    Table(HomologyTable),
    Blocks(BTreeMap<SDeg, HomologyTable>),
}

/// Homology of a specialized complex.
pub fn table(c: &GradedComplex<RingElem>, variant: SpecVariant) -> Result<HomologyTable, Failure> {
    Ok(match variant {
        SpecVariant::Even | SpecVariant::Odd | SpecVariant::Negated => homology_z(&specialize_int(c, variant)?, variant, true)?,
        SpecVariant::Unified => homology_unified(&c.map_coefficients(RingElem::to_unified))?,
        SpecVariant::Mod2 => homology_f2(&c.map_coefficients(RingElem::to_mod2), true),
        SpecVariant::Generalized => {
            return Err(Failure::Input("the generalized variant is reported per block; use a block range".into()))
        }
    })
}

pub fn compute(
    c: &GradedComplex<RingElem>,
    variant: SpecVariant,
    blocks: Option<RangeInclusive<i64>>,
) -> Result<Computed, Failure> {
    match (variant, blocks) {
        (SpecVariant::Generalized, range) => Ok(Computed::Blocks(homology_blocks(c, range.unwrap_or(DEFAULT_BLOCKS))?)),
        (_, Some(_)) => Err(Failure::Input("block ranges apply only to the generalized variant".into())),
        (v, None) => Ok(Computed::Table(table(c, v)?)),
    }
}

/// Parses `a..b` (inclusive) or a single integer.
pub fn parse_range(s: &str) -> Result<RangeInclusive<i64>, Failure> {
    let bad = || Failure::Input(format!("invalid block range `{s}`; expected `a..b`"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().trim_start_matches('=').parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

/// Applies an arrow override given as a bitstring, one character per crossing.
pub fn apply_arrows(d: &Diagram, bits: &str) -> Result<Diagram, Failure> {
    let flips: Vec<bool> = bits
        .chars()
        .map(|ch| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Failure::Input(format!("arrow override `{bits}` must contain only 0 and 1"))),
        })
        .collect::<Result<_, _>>()?;
    if flips.len() != d.len() {
        return Err(Failure::Input(format!("arrow override has {} bits for {} crossings", flips.len(), d.len())));
    }
    Ok(d.with_arrows(&flips)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-2..2").unwrap(), -2..=2);
        assert_eq!(parse_range("1").unwrap(), 1..=1);
        assert_eq!(parse_range("0..=3").unwrap(), 0..=3);
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("x").is_err());
    }
}
