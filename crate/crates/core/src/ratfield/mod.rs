//! Exact rational-function arithmetic over a fixed alphabet of commuting
//! generators.
//!
//! Every scalar in this crate is a [`RatFunc`]: a quotient of two sparse
//! integer polynomials kept in a canonical form, so that mathematical
//! equality is bit-for-bit equality of the representation.
//!
//! Invariants maintained by [`RatFunc`]:
//! - the denominator is nonzero and `gcd(num, den)` is a unit;
//! - the denominator's leading coefficient (graded-lex order) is positive;
//! - Laurent values are stored by clearing a common monomial into the
//!   numerator/denominator pair, so both stay genuine polynomials.
//!
//! The generator alphabet is fixed once and for all (`q`, `t`, `u`, the
//! half-power generators `Q`, `D` with `Q^2 = \mathfrak{q}`,
//! `D^2 = \mathfrak{d}`, the Fock parameter `v`, and the auxiliary variables
//! `z0..z15`). Monomials store only the generators they actually use, so any
//! computation context simply works inside the sub-alphabet it needs.

mod gcd;
pub mod series;

pub use gcd::{div_exact, poly_gcd};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Identifier of a generator in the fixed alphabet.
pub type GenId = u8;

/// `q` of the coefficient field.
pub const GEN_Q: GenId = 0;
/// `t` of the coefficient field.
pub const GEN_T: GenId = 1;
/// The auxiliary grading variable `u`.
pub const GEN_U: GenId = 2;
/// Half-power generator with `Q^2 = qt`-balanced parameter `\mathfrak{q}`.
pub const GEN_QQ: GenId = 3;
/// Half-power generator with `D^2 = \mathfrak{d}`.
pub const GEN_DD: GenId = 4;
/// Fock evaluation parameter `v`.
pub const GEN_V: GenId = 5;
/// First of the auxiliary `z` variables; `z_i` is `GEN_Z0 + i`.
pub const GEN_Z0: GenId = 6;

/// Number of `z` generators available.
pub const MAX_Z: usize = 16;

static GEN_NAMES: [&str; 6 + MAX_Z] = [
    "q", "t", "u", "Q", "D", "v", "z0", "z1", "z2", "z3", "z4", "z5", "z6", "z7", "z8", "z9",
    "z10", "z11", "z12", "z13", "z14", "z15",
];

/// The generator id of the auxiliary variable `z_i`.
pub fn z_gen(i: usize) -> GenId {
    assert!(i < MAX_Z, "z index {} out of range", i);
    GEN_Z0 + i as GenId
}

/// Printable name of a generator.
pub fn gen_name(g: GenId) -> &'static str {
    GEN_NAMES[g as usize]
}

/// A Laurent monomial: sorted list of (generator, nonzero exponent).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(GenId, i32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(g: GenId, e: i32) -> Self {
        if e == 0 {
            return Self::one();
        }
        Monomial { exps: vec![(g, e)] }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exps(&self) -> &[(GenId, i32)] {
        &self.exps
    }

    pub fn exponent(&self, g: GenId) -> i32 {
        self.exps
            .iter()
            .find(|(h, _)| *h == g)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.exps.iter().map(|(_, e)| *e as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (ga, ea) = self.exps[i];
            let (gb, eb) = other.exps[j];
            match ga.cmp(&gb) {
                Ordering::Less => {
                    exps.push((ga, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push((gb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    if ea + eb != 0 {
                        exps.push((ga, ea + eb));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Monomial { exps }
    }

    pub fn inv(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// Raise every exponent to the `n`-fold multiple: the image of the
    /// monomial under `p_n`-plethysm on character alphabets.
    pub fn power(&self, n: i32) -> Monomial {
        if n == 0 {
            return Self::one();
        }
        Monomial {
            exps: self.exps.iter().map(|&(g, e)| (g, e * n)).collect(),
        }
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|&(g, e)| other.exponent(g) >= e)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order over the fixed generator numbering.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Lexicographic on exponent vectors, earlier generators first.
        let (mut i, mut j) = (0, 0);
        loop {
            let a = self.exps.get(i);
            let b = other.exps.get(j);
            match (a, b) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => {
                    return if ea > 0 { Ordering::Greater } else { Ordering::Less }
                }
                (None, Some(&(_, eb))) => {
                    return if eb > 0 { Ordering::Less } else { Ordering::Greater }
                }
                (Some(&(ga, ea)), Some(&(gb, eb))) => match ga.cmp(&gb) {
                    Ordering::Less => {
                        if ea != 0 {
                            return if ea > 0 { Ordering::Greater } else { Ordering::Less };
                        }
                        i += 1;
                    }
                    Ordering::Greater => {
                        if eb != 0 {
                            return if eb > 0 { Ordering::Less } else { Ordering::Greater };
                        }
                        j += 1;
                    }
                    Ordering::Equal => {
                        match ea.cmp(&eb) {
                            Ordering::Equal => {}
                            ord => return ord,
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (k, (g, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{}", gen_name(*g))?;
            } else {
                write!(f, "{}^{}", gen_name(*g), e)?;
            }
        }
        Ok(())
    }
}

/// A sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. No zero coefficients are stored and the term map is keyed
/// by the fixed graded-lex monomial order, so the representation is
/// canonical.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    pub(crate) terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !n.is_zero() {
            terms.insert(Monomial::one(), n);
        }
        MultiPoly { terms }
    }

    pub fn from_term(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn var(g: GenId) -> Self {
        Self::from_term(Monomial::var(g, 1), BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// The constant coefficient.
    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::one()) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Leading term under the graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff_positive(&self) -> bool {
        self.leading().map(|(_, c)| c.is_positive()).unwrap_or(true)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(mm, cc)| (mm.mul(m), cc * c))
            .collect();
        MultiPoly { terms }
    }

    /// Generators that occur in this polynomial.
    pub fn vars(&self) -> Vec<GenId> {
        let mut vs: Vec<GenId> = Vec::new();
        for m in self.terms.keys() {
            for &(g, _) in m.exps() {
                if !vs.contains(&g) {
                    vs.push(g);
                }
            }
        }
        vs.sort();
        vs
    }

    pub fn degree_in(&self, g: GenId) -> i32 {
        self.terms
            .keys()
            .map(|m| m.exponent(g))
            .max()
            .unwrap_or(0)
    }

    pub fn min_exponent_in(&self, g: GenId) -> i32 {
        self.terms
            .keys()
            .map(|m| m.exponent(g))
            .min()
            .unwrap_or(0)
    }

    /// Integer content (gcd of coefficients), nonnegative.
    pub fn int_content(&self) -> BigInt {
        let mut c = BigInt::zero();
        for v in self.terms.values() {
            c = num_integer::Integer::gcd(&c, v);
            if c.is_one() {
                break;
            }
        }
        c
    }

    pub fn div_int(&self, d: &BigInt) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c / d)).collect();
        MultiPoly { terms }
    }

    /// Scale every exponent by `n`; the plethysm image of a character sum.
    pub fn power_exponents(&self, n: i32) -> MultiPoly {
        if n == 1 {
            return self.clone();
        }
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.power(n), c.clone());
        }
        out
    }

    /// Substitute each generator by a rational function.
    pub fn substitute(&self, map: &dyn Fn(GenId) -> Option<RatFunc>) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (m, c) in &self.terms {
            let mut term = RatFunc::from_bigint(c.clone());
            for &(g, e) in m.exps() {
                match map(g) {
                    Some(img) => term = term * img.pow(e as i64),
                    None => term = term * RatFunc::monomial(Monomial::var(g, e)),
                }
            }
            acc = acc + term;
        }
        acc
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let (small, big) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = MultiPoly::zero();
        for (m, c) in &small.terms {
            for (mm, cc) in &big.terms {
                out.add_term(m.mul(mm), c * cc);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c.clone()))
            .collect();
        MultiPoly { terms }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", abs, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical rational function: `num/den` with `gcd(num, den)` a unit and
/// the denominator sign-normalized. Equal values have identical
/// representations, which makes every identity check in this crate a plain
/// equality test.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    /// Canonicalize a numerator/denominator pair.
    ///
    /// Panics if `den` is zero.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "division by zero rational function");
        if num.is_zero() {
            return RatFunc {
                num: MultiPoly::zero(),
                den: MultiPoly::one(),
            };
        }
        // Clear Laurent exponents: shift so that every generator appears with
        // nonnegative exponents in both parts and no generator divides both.
        let mut shift = Monomial::one();
        let mut gens = num.vars();
        for g in den.vars() {
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        for g in gens {
            let m = num.min_exponent_in(g).min(den.min_exponent_in(g));
            if m != 0 {
                shift = shift.mul(&Monomial::var(g, -m));
            }
        }
        let mut num = num.mul_monomial(&shift, &BigInt::one());
        let mut den = den.mul_monomial(&shift, &BigInt::one());

        let g = poly_gcd(&num, &den);
        if !g.is_one() {
            num = div_exact(&num, &g).expect("gcd divides numerator");
            den = div_exact(&den, &g).expect("gcd divides denominator");
        }
        if !den.leading_coeff_positive() {
            num = -&num;
            den = -&den;
        }
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: MultiPoly::one(),
            den: MultiPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc {
            num: MultiPoly::from_int(n),
            den: MultiPoly::one(),
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        RatFunc {
            num: MultiPoly::from_bigint(n),
            den: MultiPoly::one(),
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn var(g: GenId) -> Self {
        Self::from_poly(MultiPoly::var(g))
    }

    /// The (possibly Laurent) monomial `m` as a rational function.
    pub fn monomial(m: Monomial) -> Self {
        let mut pos = Monomial::one();
        let mut neg = Monomial::one();
        for &(g, e) in m.exps() {
            if e > 0 {
                pos = pos.mul(&Monomial::var(g, e));
            } else {
                neg = neg.mul(&Monomial::var(g, -e));
            }
        }
        RatFunc {
            num: MultiPoly::from_term(pos, BigInt::one()),
            den: MultiPoly::from_term(neg, BigInt::one()),
        }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inv(&self) -> RatFunc {
        assert!(!self.is_zero(), "inverse of zero");
        let mut num = self.den.clone();
        let mut den = self.num.clone();
        if !den.leading_coeff_positive() {
            num = -&num;
            den = -&den;
        }
        RatFunc { num, den }
    }

    pub fn pow(&self, e: i64) -> RatFunc {
        if e == 0 {
            return RatFunc::one();
        }
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * base.clone();
        }
        acc
    }

    /// The image under `p_n`-plethysm of a character sum: every generator
    /// exponent is scaled by `n` in both numerator and denominator.
    pub fn power_exponents(&self, n: i32) -> RatFunc {
        if n == 1 {
            return self.clone();
        }
        // Exponent scaling preserves coprimality and sign normalization.
        RatFunc {
            num: self.num.power_exponents(n),
            den: self.den.power_exponents(n),
        }
    }

    /// Substitute generators by rational functions; generators not in the
    /// map are left alone.
    pub fn substitute(&self, map: &dyn Fn(GenId) -> Option<RatFunc>) -> RatFunc {
        let n = self.num.substitute(map);
        let d = self.den.substitute(map);
        assert!(
            !d.is_zero(),
            "substitution sends denominator identically to zero"
        );
        n / d
    }

    /// Substitute `q -> 1/q`, `t -> 1/t` (and leave every other generator
    /// fixed). This is the star-involution on character sums.
    pub fn invert_qt(&self) -> RatFunc {
        self.substitute(&|g| {
            if g == GEN_Q || g == GEN_T {
                Some(RatFunc::monomial(Monomial::var(g, -1)))
            } else {
                None
            }
        })
    }

    /// Evaluate with all generators mapped to rational constants, when
    /// possible (used only by tests).
    pub fn as_constant(&self) -> Option<(BigInt, BigInt)> {
        Some((self.num.as_constant()?, self.den.as_constant()?))
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if num.is_zero() {
                return RatFunc::zero();
            }
            return RatFunc::new(num, self.den);
        }
        let g = poly_gcd(&self.den, &rhs.den);
        let (db, dd) = if g.is_one() {
            (rhs.den.clone(), self.den.clone())
        } else {
            (
                div_exact(&rhs.den, &g).unwrap(),
                div_exact(&self.den, &g).unwrap(),
            )
        };
        let num = &(&self.num * &db) + &(&rhs.num * &dd);
        let den = &self.den * &db;
        RatFunc::new(num, den)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.is_one() {
            return rhs;
        }
        if rhs.is_one() {
            return self;
        }
        // Cross-reduce before multiplying; the factors stay coprime, so no
        // final gcd is needed.
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let a = if g1.is_one() {
            self.num
        } else {
            div_exact(&self.num, &g1).unwrap()
        };
        let d = if g1.is_one() {
            rhs.den
        } else {
            div_exact(&rhs.den, &g1).unwrap()
        };
        let c = if g2.is_one() {
            rhs.num
        } else {
            div_exact(&rhs.num, &g2).unwrap()
        };
        let b = if g2.is_one() {
            self.den
        } else {
            div_exact(&self.den, &g2).unwrap()
        };
        let mut num = &a * &c;
        let mut den = &b * &d;
        if !den.leading_coeff_positive() {
            num = -&num;
            den = -&den;
        }
        RatFunc { num, den }
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        self * rhs.inv()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::hash::Hash for RatFunc {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.to_string().hash(state);
    }
}

/// Canonicalize a numerator/denominator pair of polynomials.
///
/// This is the module's normal-form entry point; all arithmetic funnels
/// through it.
pub fn normalize(num: MultiPoly, den: MultiPoly) -> RatFunc {
    RatFunc::new(num, den)
}

/// Convenience: `1 - m` for a monomial `m`.
pub fn one_minus(m: Monomial) -> MultiPoly {
    let mut p = MultiPoly::one();
    p.add_term(m, BigInt::from(-1));
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RatFunc {
        RatFunc::var(GEN_Q)
    }
    fn t() -> RatFunc {
        RatFunc::var(GEN_T)
    }

    #[test]
    fn normalize_telescopes() {
        // (1-q^2)/(1-q) = 1+q
        let num = one_minus(Monomial::var(GEN_Q, 2));
        let den = one_minus(Monomial::var(GEN_Q, 1));
        let r = normalize(num, den);
        let expect = RatFunc::one() + q();
        assert_eq!(r, expect);
    }

    #[test]
    fn normalize_zero_numerator() {
        let num = &MultiPoly::var(GEN_Q) - &MultiPoly::var(GEN_Q);
        let r = normalize(num, MultiPoly::one());
        assert!(r.is_zero());
        assert!(r.den().is_one());
    }

    #[test]
    fn normalize_common_factor() {
        // (qt - q)/(t - 1) = q, checked by cross-multiplication.
        let qt = &MultiPoly::var(GEN_Q) * &MultiPoly::var(GEN_T);
        let num = &qt - &MultiPoly::var(GEN_Q);
        let den = &MultiPoly::var(GEN_T) - &MultiPoly::one();
        let r = normalize(num.clone(), den.clone());
        assert_eq!(r, q());
        // cross-multiplication oracle: num * den(r) == num(r) * den
        assert_eq!(&num * r.den(), &(r.num().clone()) * &den);
        // and a candidate with a spurious extra factor reduces the same way
        let r2 = normalize(&num * &den, &den * &den);
        assert_eq!(r2, q());
    }

    #[test]
    fn substitute_composes() {
        // f = 1/((1-q)(1-t)), q -> q^2, t -> t^2
        let f = RatFunc::new(
            MultiPoly::one(),
            &one_minus(Monomial::var(GEN_Q, 1)) * &one_minus(Monomial::var(GEN_T, 1)),
        );
        let g = f.substitute(&|g| match g {
            GEN_Q => Some(q().pow(2)),
            GEN_T => Some(t().pow(2)),
            _ => None,
        });
        let expect = RatFunc::new(
            MultiPoly::one(),
            &one_minus(Monomial::var(GEN_Q, 2)) * &one_minus(Monomial::var(GEN_T, 2)),
        );
        assert_eq!(g, expect);
    }

    #[test]
    fn substitute_laurent() {
        let g = q().substitute(&|g| {
            if g == GEN_Q {
                Some(q().inv())
            } else {
                None
            }
        });
        assert_eq!(g, q().inv());
        assert_eq!(g.to_string(), "(1)/(q)");
    }

    #[test]
    fn substitute_half_powers() {
        // (1-qt)/(1-q) with q -> Q^2 D^2, t -> Q^2 D^-2 gives (1-Q^4)/(1-Q^2 D^2).
        let qq = RatFunc::monomial(Monomial::var(GEN_QQ, 2)).clone();
        let num = one_minus(Monomial::var(GEN_Q, 1).mul(&Monomial::var(GEN_T, 1)));
        let den = one_minus(Monomial::var(GEN_Q, 1));
        let f = RatFunc::new(num, den);
        let g = f.substitute(&|g| match g {
            GEN_Q => Some(
                qq.clone() * RatFunc::monomial(Monomial::var(GEN_DD, 2)),
            ),
            GEN_T => Some(
                qq.clone() * RatFunc::monomial(Monomial::var(GEN_DD, -2)),
            ),
            _ => None,
        });
        // Brute-force expansion oracle.
        let expect = RatFunc::new(
            one_minus(Monomial::var(GEN_QQ, 4)),
            one_minus(Monomial::var(GEN_QQ, 2).mul(&Monomial::var(GEN_DD, 2))),
        );
        assert_eq!(g, expect);
    }

    #[test]
    fn field_axioms_random() {
        // Deterministic pseudo-random small rationals.
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        let rand_poly = |next: &mut dyn FnMut() -> u64| {
            let mut p = MultiPoly::zero();
            for _ in 0..3 {
                let e1 = (next() % 3) as i32;
                let e2 = (next() % 3) as i32;
                let c = (next() % 7) as i64 - 3;
                p.add_term(
                    Monomial::var(GEN_Q, e1).mul(&Monomial::var(GEN_T, e2)),
                    BigInt::from(c),
                );
            }
            p
        };
        for _ in 0..25 {
            let mut mk = |_: ()| loop {
                let n = rand_poly(&mut next);
                let d = rand_poly(&mut next);
                if !d.is_zero() {
                    return RatFunc::new(n, d);
                }
            };
            let a = mk(());
            let b = mk(());
            let c = mk(());
            assert_eq!(
                (a.clone() + b.clone()) + c.clone(),
                a.clone() + (b.clone() + c.clone())
            );
            assert_eq!(
                (a.clone() * b.clone()) * c.clone(),
                a.clone() * (b.clone() * c.clone())
            );
            assert_eq!(
                a.clone() * (b.clone() + c.clone()),
                a.clone() * b.clone() + a.clone() * c.clone()
            );
            if !a.is_zero() {
                assert!((a.clone() * a.inv()).is_one());
            }
            // Canonical-form uniqueness via two arithmetic routes.
            let r1 = (a.clone() + b.clone()) * c.clone();
            let r2 = a.clone() * c.clone() + b.clone() * c.clone();
            assert_eq!(r1, r2);
            assert_eq!(r1.to_string(), r2.to_string());
        }
    }
}
