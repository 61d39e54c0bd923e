//! The coefficient ring `R = Z[X, Y, Z^{±1}] / (X² = 1, Y² = 1)`, its unit
//! monomials, the twist cocycle `λ`, and the ring homomorphisms onto the even,
//! odd, unified and mod-2 theories.
//!
//! Elements are finite integer combinations of monomials `X^a Y^b Z^c` with
//! `a, b ∈ {0, 1}` and `c ∈ Z`. Terms are kept in a `BTreeMap` keyed by
//! [`Monomial`], whose derived order `(x, y, z)` is the canonical term order.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Chronological degree `(#births - #merges, #deaths - #splits)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ChronDegree {
    pub alpha: i64,
    pub beta: i64,
}

impl ChronDegree {
    pub const ZERO: ChronDegree = ChronDegree { alpha: 0, beta: 0 };

    pub const fn new(alpha: i64, beta: i64) -> Self {
        ChronDegree { alpha, beta }
    }

    /// The weight `alpha - beta`; every tensor factor `v±` has weight 1.
    pub fn weight(self) -> i64 {
        self.alpha - self.beta
    }
}

impl Add for ChronDegree {
    type Output = ChronDegree;
    fn add(self, rhs: ChronDegree) -> ChronDegree {
        ChronDegree::new(self.alpha + rhs.alpha, self.beta + rhs.beta)
    }
}

impl Sub for ChronDegree {
    type Output = ChronDegree;
    fn sub(self, rhs: ChronDegree) -> ChronDegree {
        ChronDegree::new(self.alpha - rhs.alpha, self.beta - rhs.beta)
    }
}

impl Neg for ChronDegree {
    type Output = ChronDegree;
    fn neg(self) -> ChronDegree {
        ChronDegree::new(-self.alpha, -self.beta)
    }
}

impl core::iter::Sum for ChronDegree {
    fn sum<I: Iterator<Item = ChronDegree>>(iter: I) -> Self {
        iter.fold(ChronDegree::ZERO, Add::add)
    }
}

impl fmt::Display for ChronDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

/// Splitting degree, an element of `Z₂ × Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SDeg {
    pub parity: u8,
    pub depth: i64,
}

impl SDeg {
    pub const ZERO: SDeg = SDeg { parity: 0, depth: 0 };

    pub fn new(parity: i64, depth: i64) -> Self {
        SDeg { parity: parity.rem_euclid(2) as u8, depth }
    }
}

impl Add for SDeg {
    type Output = SDeg;
    fn add(self, rhs: SDeg) -> SDeg {
        SDeg { parity: (self.parity + rhs.parity) % 2, depth: self.depth + rhs.depth }
    }
}

impl Sub for SDeg {
    type Output = SDeg;
    fn sub(self, rhs: SDeg) -> SDeg {
        self + (-rhs)
    }
}

impl Neg for SDeg {
    type Output = SDeg;
    fn neg(self) -> SDeg {
        SDeg { parity: self.parity, depth: -self.depth }
    }
}

impl AddAssign for SDeg {
    fn add_assign(&mut self, rhs: SDeg) {
        *self = *self + rhs;
    }
}

impl fmt::Display for SDeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};{}]", self.parity, self.depth)
    }
}

/// A monomial `X^x Y^y Z^z` with `x, y ∈ {0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub x: u8,
    pub y: u8,
    pub z: i64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0, z: 0 };
    pub const X: Monomial = Monomial { x: 1, y: 0, z: 0 };
    pub const Y: Monomial = Monomial { x: 0, y: 1, z: 0 };
    pub const Z: Monomial = Monomial { x: 0, y: 0, z: 1 };
    pub const XY: Monomial = Monomial { x: 1, y: 1, z: 0 };

    /// Builds `X^x Y^y Z^z`, reducing the `X` and `Y` exponents mod 2.
    pub fn new(x: i64, y: i64, z: i64) -> Self {
        Monomial { x: x.rem_euclid(2) as u8, y: y.rem_euclid(2) as u8, z }
    }

    pub fn is_one(self) -> bool {
        self == Monomial::ONE
    }

    pub fn inv(self) -> Monomial {
        Monomial { x: self.x, y: self.y, z: -self.z }
    }

    pub fn sdeg(self) -> SDeg {
        SDeg::new(i64::from(self.x + self.y), -self.z)
    }

    /// Raises the monomial to an integer power (negative powers invert).
    pub fn pow(self, e: i64) -> Monomial {
        Monomial::new(i64::from(self.x) * e, i64::from(self.y) * e, self.z * e)
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial { x: self.x ^ rhs.x, y: self.y ^ rhs.y, z: self.z + rhs.z }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.x == 1 {
            parts.push("X".into());
        }
        if self.y == 1 {
            parts.push("Y".into());
        }
        match self.z {
            0 => {}
            1 => parts.push("Z".into()),
            z => parts.push(alloc::format!("Z^{z}")),
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// An invertible element `±X^a Y^b Z^c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Unit {
    pub negative: bool,
    pub mono: Monomial,
}

impl Unit {
    pub const ONE: Unit = Unit { negative: false, mono: Monomial::ONE };
    pub const MINUS_ONE: Unit = Unit { negative: true, mono: Monomial::ONE };

    pub const fn new(negative: bool, mono: Monomial) -> Self {
        Unit { negative, mono }
    }

    pub const fn mono(mono: Monomial) -> Self {
        Unit { negative: false, mono }
    }

    pub fn inv(self) -> Unit {
        Unit { negative: self.negative, mono: self.mono.inv() }
    }

    pub fn to_ring(self) -> RingElem {
        let c = if self.negative { -BigInt::one() } else { BigInt::one() };
        RingElem::term(c, self.mono)
    }

    /// Recognizes a single term with coefficient ±1.
    pub fn from_ring(r: &RingElem) -> Result<Unit> {
        if r.terms.len() == 1 {
            let (m, c) = r.terms.iter().next().expect("one term");
            if c.is_one() {
                return Ok(Unit::new(false, *m));
            }
            if (-c).is_one() {
                return Ok(Unit::new(true, *m));
            }
        }
        Err(Error::NotAUnit(r.to_string()))
    }

    pub fn sdeg(self) -> SDeg {
        self.mono.sdeg()
    }
}

impl Mul for Unit {
    type Output = Unit;
    fn mul(self, rhs: Unit) -> Unit {
        Unit { negative: self.negative ^ rhs.negative, mono: self.mono * rhs.mono }
    }
}

impl Neg for Unit {
    type Output = Unit;
    fn neg(self) -> Unit {
        Unit { negative: !self.negative, mono: self.mono }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-{}", self.mono)
        } else {
            write!(f, "{}", self.mono)
        }
    }
}

/// Splitting degree of a unit; the sign carries no degree.
pub fn sdeg_of_unit(u: Unit) -> SDeg {
    u.sdeg()
}

/// The twist cocycle `λ(a,b,a',b') = X^{aa'} Y^{bb'} Z^{ab'-a'b}`.
pub fn lambda(d: ChronDegree, e: ChronDegree) -> Unit {
    Unit::mono(Monomial::new(d.alpha * e.alpha, d.beta * e.beta, d.alpha * e.beta - e.alpha * d.beta))
}

/// An element of `R`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RingElem {
    terms: BTreeMap<Monomial, BigInt>,
}

impl RingElem {
    pub fn zero() -> Self {
        RingElem { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        RingElem::from(Monomial::ONE)
    }

    pub fn term(coeff: impl Into<BigInt>, mono: Monomial) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        RingElem { terms }
    }

    pub fn x() -> Self {
        RingElem::from(Monomial::X)
    }

    pub fn y() -> Self {
        RingElem::from(Monomial::Y)
    }

    pub fn z() -> Self {
        RingElem::from(Monomial::Z)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, mono: Monomial, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn scale_unit(&self, u: Unit) -> RingElem {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m * u.mono, if u.negative { -c } else { c.clone() }))
            .collect();
        RingElem { terms }
    }

    /// Multiplies every coefficient by an integer.
    pub fn scale_int(&self, k: &BigInt) -> RingElem {
        if k.is_zero() {
            return RingElem::zero();
        }
        RingElem { terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect() }
    }

    /// The splitting degree, if the element is homogeneous and nonzero.
    pub fn sdeg(&self) -> Option<SDeg> {
        let mut it = self.terms.keys().map(|m| m.sdeg());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Applies the ring homomorphism sending `X, Y, Z` to the given images.
    pub fn evaluate<T: Scalar>(&self, x: &T, y: &T, z: &T, z_inv: &T) -> T {
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = T::from_int(c);
            if m.x == 1 {
                t = t * x.clone();
            }
            if m.y == 1 {
                t = t * y.clone();
            }
            let zz = if m.z >= 0 { z } else { z_inv };
            for _ in 0..m.z.unsigned_abs() {
                t = t * zz.clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// Sum of coefficients with the sign `(-1)^{e·(x,y,z)}` for a parity mask.
    fn signed_sum(&self, sx: bool, sy: bool, sz: bool) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let odd = (sx && m.x == 1) ^ (sy && m.y == 1) ^ (sz && m.z.rem_euclid(2) == 1);
            if odd {
                acc -= c;
            } else {
                acc += c;
            }
        }
        acc
    }

    pub fn to_even(&self) -> BigInt {
        self.signed_sum(false, false, false)
    }

    pub fn to_odd(&self) -> BigInt {
        self.signed_sum(false, true, false)
    }

    pub fn to_negated(&self) -> BigInt {
        self.signed_sum(true, true, true)
    }

    pub fn to_unified(&self) -> ZPi {
        let mut out = ZPi::zero();
        for (m, c) in &self.terms {
            if m.y == 1 {
                out.b += c;
            } else {
                out.a += c;
            }
        }
        out
    }

    pub fn to_mod2(&self) -> F2 {
        F2::from_int(&self.to_even())
    }

    /// Rewrites a degree-zero element (a combination of `1` and `XY`) as an
    /// element of `Z_π` with `XY ↦ π`; `None` if some term has nonzero degree.
    pub fn degree_zero_to_zpi(&self) -> Option<ZPi> {
        let mut out = ZPi::zero();
        for (m, c) in &self.terms {
            match (m.x, m.y, m.z) {
                (0, 0, 0) => out.a += c,
                (1, 1, 0) => out.b += c,
                _ => return None,
            }
        }
        Some(out)
    }
}

impl From<Monomial> for RingElem {
    fn from(m: Monomial) -> Self {
        RingElem::term(1, m)
    }
}

impl From<Unit> for RingElem {
    fn from(u: Unit) -> Self {
        u.to_ring()
    }
}

impl From<i64> for RingElem {
    fn from(k: i64) -> Self {
        RingElem::term(k, Monomial::ONE)
    }
}

impl<'a> Add<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Add for RingElem {
    type Output = RingElem;
    fn add(self, rhs: RingElem) -> RingElem {
        &self + &rhs
    }
}

impl AddAssign<&RingElem> for RingElem {
    fn add_assign(&mut self, rhs: &RingElem) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c);
        }
    }
}

impl<'a> Sub<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        self + &(-rhs)
    }
}

impl Sub for RingElem {
    type Output = RingElem;
    fn sub(self, rhs: RingElem) -> RingElem {
        &self - &rhs
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

impl<'a> Mul<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        let mut out = RingElem::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(*m1 * *m2, &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for RingElem {
    type Output = RingElem;
    fn mul(self, rhs: RingElem) -> RingElem {
        &self * &rhs
    }
}

impl fmt::Display for RingElem {
    /// Renders terms in descending canonical order, e.g. `-X*Y*Z^-2 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for RingElem {
    type Err = Error;

    /// Parses the rendering produced by `Display`. Factors may repeat
    /// (`X*X` reduces to `1`) and integer factors may appear anywhere in a term.
    fn from_str(s: &str) -> Result<RingElem> {
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let mut out = RingElem::zero();
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let parse_int = |pos: &mut usize| -> Option<BigInt> {
            let start = *pos;
            if *pos < bytes.len() && bytes[*pos] == b'-' {
                *pos += 1;
            }
            let digits = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if *pos == digits {
                *pos = start;
                return None;
            }
            s[start..*pos].parse().ok()
        };
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(Error::parse(pos, "empty ring element"));
        }
        let mut first = true;
        while pos < bytes.len() {
            let mut negative = false;
            skip_ws(&mut pos);
            if pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
                negative = bytes[pos] == b'-';
                pos += 1;
            } else if !first {
                return Err(Error::parse(pos, "expected `+` or `-` between terms"));
            }
            first = false;
            skip_ws(&mut pos);
            let mut coeff = BigInt::one();
            let mut mono = Monomial::ONE;
            let mut factors = 0;
            loop {
                skip_ws(&mut pos);
                let Some(&b) = bytes.get(pos) else {
                    return Err(Error::parse(pos, "expected a factor"));
                };
                if b.is_ascii_digit() {
                    coeff *= parse_int(&mut pos).ok_or_else(|| Error::parse(pos, "bad integer"))?;
                } else if matches!(b, b'X' | b'Y' | b'Z') {
                    pos += 1;
                    let mut e = 1i64;
                    if bytes.get(pos) == Some(&b'^') {
                        pos += 1;
                        let k = parse_int(&mut pos).ok_or_else(|| Error::parse(pos, "bad exponent"))?;
                        e = k.to_i64().ok_or_else(|| Error::parse(pos, "exponent too large"))?;
                    }
                    let g = match b {
                        b'X' => Monomial::X,
                        b'Y' => Monomial::Y,
                        _ => Monomial::Z,
                    };
                    mono = mono * g.pow(e);
                } else {
                    return Err(Error::parse(pos, alloc::format!("unexpected character `{}`", b as char)));
                }
                factors += 1;
                skip_ws(&mut pos);
                if bytes.get(pos) == Some(&b'*') {
                    pos += 1;
                } else {
                    break;
                }
            }
            debug_assert!(factors > 0);
            if negative {
                coeff = -coeff;
            }
            out.add_term(mono, &coeff);
            skip_ws(&mut pos);
        }
        Ok(out)
    }
}

/// Minimal ring interface used by the generic matrix and complex code.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self> {
    fn from_int(k: &BigInt) -> Self;
}

impl Zero for RingElem {
    fn zero() -> Self {
        RingElem::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for RingElem {
    fn one() -> Self {
        RingElem::one()
    }
}

impl Scalar for RingElem {
    fn from_int(k: &BigInt) -> Self {
        RingElem::term(k.clone(), Monomial::ONE)
    }
}

impl Scalar for BigInt {
    fn from_int(k: &BigInt) -> Self {
        k.clone()
    }
}

/// An element `a + bπ` of `Z_π = Z[π]/(π² - 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ZPi {
    pub a: BigInt,
    pub b: BigInt,
}

impl ZPi {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        ZPi { a: a.into(), b: b.into() }
    }

    pub fn pi() -> Self {
        ZPi::new(0, 1)
    }

    /// The specialization `π ↦ 1` (even theory).
    pub fn at_plus(&self) -> BigInt {
        &self.a + &self.b
    }

    /// The specialization `π ↦ -1` (odd theory).
    pub fn at_minus(&self) -> BigInt {
        &self.a - &self.b
    }
}

impl Add for ZPi {
    type Output = ZPi;
    fn add(self, rhs: ZPi) -> ZPi {
        ZPi { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for ZPi {
    type Output = ZPi;
    fn sub(self, rhs: ZPi) -> ZPi {
        ZPi { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Mul for ZPi {
    type Output = ZPi;
    fn mul(self, rhs: ZPi) -> ZPi {
        ZPi { a: &self.a * &rhs.a + &self.b * &rhs.b, b: &self.a * &rhs.b + &self.b * &rhs.a }
    }
}

impl Neg for ZPi {
    type Output = ZPi;
    fn neg(self) -> ZPi {
        ZPi { a: -self.a, b: -self.b }
    }
}

impl Zero for ZPi {
    fn zero() -> Self {
        ZPi::default()
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for ZPi {
    fn one() -> Self {
        ZPi::new(1, 0)
    }
}

impl Scalar for ZPi {
    fn from_int(k: &BigInt) -> Self {
        ZPi { a: k.clone(), b: BigInt::zero() }
    }
}

impl fmt::Display for ZPi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*pi", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}*pi", self.a, -&self.b)
                } else {
                    write!(f, "{} + {}*pi", self.a, self.b)
                }
            }
        }
    }
}

/// An element of the two-element field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct F2(pub bool);

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for F2 {
    type Output = F2;
    fn add(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for F2 {
    type Output = F2;
    fn sub(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

impl Mul for F2 {
    type Output = F2;
    fn mul(self, rhs: F2) -> F2 {
        F2(self.0 && rhs.0)
    }
}

impl Neg for F2 {
    type Output = F2;
    fn neg(self) -> F2 {
        self
    }
}

impl Zero for F2 {
    fn zero() -> Self {
        F2(false)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for F2 {
    fn one() -> Self {
        F2(true)
    }
}

impl Scalar for F2 {
    fn from_int(k: &BigInt) -> Self {
        F2(k.is_odd())
    }
}

/// The coefficient systems a generalized complex can be specialized to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpecVariant {
    /// `X, Y, Z ↦ 1` over `Z`.
    Even,
    /// `X, Z ↦ 1`, `Y ↦ -1` over `Z`.
    Odd,
    /// `X, Z ↦ 1`, `Y ↦ π` over `Z_π`.
    Unified,
    /// The even specialization reduced mod 2.
    Mod2,
    /// The identity on `R`.
    Generalized,
    /// `X, Y, Z ↦ -1` over `Z`.
    Negated,
}

impl SpecVariant {
    pub const ALL: [SpecVariant; 6] = [
        SpecVariant::Even,
        SpecVariant::Odd,
        SpecVariant::Unified,
        SpecVariant::Mod2,
        SpecVariant::Generalized,
        SpecVariant::Negated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpecVariant::Even => "even",
            SpecVariant::Odd => "odd",
            SpecVariant::Unified => "unified",
            SpecVariant::Mod2 => "mod2",
            SpecVariant::Generalized => "generalized",
            SpecVariant::Negated => "negated",
        }
    }

    pub fn target_ring(self) -> &'static str {
        match self {
            SpecVariant::Even | SpecVariant::Odd | SpecVariant::Negated => "Z",
            SpecVariant::Unified => "Z[pi]/(pi^2-1)",
            SpecVariant::Mod2 => "F2",
            SpecVariant::Generalized => "Z[X,Y,Z^{+-1}]/(X^2-1,Y^2-1)",
        }
    }
}

impl fmt::Display for SpecVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpecVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SpecVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::parse(0, alloc::format!("unknown variant `{s}`")))
    }
}

/// A specialized ring element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Specialized {
    Int(BigInt),
    ZPi(ZPi),
    F2(F2),
    Generalized(RingElem),
}

pub fn specialize(r: &RingElem, v: SpecVariant) -> Specialized {
    match v {
        SpecVariant::Even => Specialized::Int(r.to_even()),
        SpecVariant::Odd => Specialized::Int(r.to_odd()),
        SpecVariant::Negated => Specialized::Int(r.to_negated()),
        SpecVariant::Unified => Specialized::ZPi(r.to_unified()),
        SpecVariant::Mod2 => Specialized::F2(r.to_mod2()),
        SpecVariant::Generalized => Specialized::Generalized(r.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn r(s: &str) -> RingElem {
        s.parse().unwrap()
    }

    #[test]
    fn x_squared_is_one() {
        assert_eq!(&RingElem::x() * &RingElem::x(), RingElem::one());
        assert_eq!(&RingElem::y() * &RingElem::y(), RingElem::one());
        assert_eq!(&RingElem::z() * &r("Z^-1"), RingElem::one());
    }

    #[test]
    fn identity_and_distributivity() {
        let a = r("Z*X + Z*Y");
        assert_eq!(&RingElem::one() * &a, a);
        assert_eq!(&r("X + Y") * &r("X - Y"), RingElem::zero());
    }

    #[test]
    fn x_plus_y_is_annihilated_by_one_minus_xy() {
        assert_eq!(&r("X + Y") * &r("1 - X*Y"), RingElem::zero());
    }

    #[test]
    fn lambda_examples() {
        let z = Unit::mono(Monomial::Z);
        assert_eq!(lambda(ChronDegree::new(1, 0), ChronDegree::new(0, 1)), z);
        assert_eq!(lambda(ChronDegree::ZERO, ChronDegree::new(3, -2)), Unit::ONE);
        assert_eq!(lambda(ChronDegree::new(-1, 0), ChronDegree::new(-1, 0)), Unit::mono(Monomial::X));
    }

    #[test]
    fn lambda_is_skew_and_biadditive_on_grid() {
        let range = -10..=10i64;
        let degs: Vec<ChronDegree> =
            range.clone().flat_map(|a| range.clone().map(move |b| ChronDegree::new(a, b))).collect();
        let probes = [ChronDegree::new(1, 0), ChronDegree::new(0, -1), ChronDegree::new(-3, 7)];
        for &d in &degs {
            for &e in &degs {
                assert_eq!(lambda(d, e) * lambda(e, d), Unit::ONE);
            }
            for &p in &probes {
                for &e in &probes {
                    assert_eq!(lambda(d + p, e), lambda(d, e) * lambda(p, e));
                    assert_eq!(lambda(e, d + p), lambda(e, d) * lambda(e, p));
                }
            }
        }
    }

    #[test]
    fn specialization_examples() {
        assert_eq!(specialize(&r("Z*X + Z*Y"), SpecVariant::Odd), Specialized::Int(BigInt::zero()));
        assert_eq!(specialize(&r("X*Y"), SpecVariant::Unified), Specialized::ZPi(ZPi::pi()));
        assert_eq!(specialize(&r("X + Y + Z"), SpecVariant::Negated), Specialized::Int(BigInt::from(-3)));
        assert_eq!(specialize(&r("3*X - Z^2"), SpecVariant::Mod2), Specialized::F2(F2(false)));
    }

    #[test]
    fn sdeg_examples() {
        assert_eq!(sdeg_of_unit(Unit::mono(Monomial::X)), SDeg::new(1, 0));
        assert_eq!(sdeg_of_unit(Unit::MINUS_ONE), SDeg::ZERO);
        assert_eq!(sdeg_of_unit(Unit::mono(Monomial::new(1, 1, -3))), SDeg::new(0, 3));
    }

    #[test]
    fn rendering() {
        let e = r("3 - X*Y*Z^-2");
        assert_eq!(e.to_string(), "-X*Y*Z^-2 + 3");
        assert_eq!(r("-X*Y*Z^-2 + 3"), e);
        assert_eq!(RingElem::zero().to_string(), "0");
        assert_eq!(r("2*Z*X + X*Z*Y*Y").to_string(), "3*X*Z");
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "X +", "X Y", "Q", "X^"] {
            assert!(bad.parse::<RingElem>().is_err(), "{bad}");
        }
    }

    #[test]
    fn unit_recognition() {
        assert_eq!(Unit::from_ring(&r("-X*Z")).unwrap(), Unit::new(true, Monomial::new(1, 0, 1)));
        assert!(Unit::from_ring(&r("2*X")).is_err());
        assert!(Unit::from_ring(&r("X + Y")).is_err());
        let _ = vec![0u8];
    }

    #[test]
    fn evaluate_matches_named_specializations() {
        let e = r("3*X*Y*Z^-2 - 2*Y*Z + X - 7");
        let one = BigInt::one();
        let m1 = -BigInt::one();
        assert_eq!(e.evaluate(&one, &one, &one, &one), e.to_even());
        assert_eq!(e.evaluate(&one, &m1, &one, &one), e.to_odd());
        assert_eq!(e.evaluate(&m1, &m1, &m1, &m1), e.to_negated());
        let pi = ZPi::pi();
        let o = ZPi::one();
        assert_eq!(e.evaluate(&o, &pi, &o, &o), e.to_unified());
    }
}
