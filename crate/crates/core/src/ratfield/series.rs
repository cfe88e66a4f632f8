//! Truncated (Laurent) power series in a chosen set of "small" generators,
//! with exact rational-function coefficients in the remaining generators.
//!
//! A [`TruncSeries`] stores the terms of total degree `<= order` in the
//! small variables; `order` is the precision: terms of total degree up to
//! and including it are exactly correct. Negative exponents are allowed
//! (Laurent windows), and multiplication tracks the resulting precision via
//! the factors' valuations.

use super::{GenId, Monomial, MultiPoly, RatFunc};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector over the small variables, in the order declared by the
/// series.
pub type SmallExp = Vec<i32>;

#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    /// Small variables, sorted ascending by generator id.
    pub small: Vec<GenId>,
    /// Terms of total degree `<= order` are exact.
    pub order: i32,
    /// Exponent vector -> coefficient (a rational function free of the
    /// small variables). No zero coefficients stored.
    pub terms: BTreeMap<SmallExp, RatFunc>,
}

fn total(e: &[i32]) -> i32 {
    e.iter().sum()
}

impl TruncSeries {
    pub fn zero(small: Vec<GenId>, order: i32) -> Self {
        TruncSeries {
            small,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(small: Vec<GenId>, order: i32, c: RatFunc) -> Self {
        let mut s = Self::zero(small, order);
        if !c.is_zero() && order >= 0 {
            s.terms.insert(vec![0; s.small.len()], c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest total degree with a nonzero term, or `order + 1` if empty.
    pub fn valuation(&self) -> i32 {
        self.terms
            .keys()
            .map(|e| total(e))
            .min()
            .unwrap_or(self.order + 1)
    }

    pub fn coefficient(&self, e: &[i32]) -> RatFunc {
        self.terms.get(e).cloned().unwrap_or_else(RatFunc::zero)
    }

    fn insert(&mut self, e: SmallExp, c: RatFunc) {
        if c.is_zero() || total(&e) > self.order {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        assert_eq!(self.small, other.small, "mismatched small-variable sets");
        let mut out = TruncSeries::zero(self.small.clone(), self.order.min(other.order));
        for (e, c) in &self.terms {
            out.insert(e.clone(), c.clone());
        }
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> TruncSeries {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> TruncSeries {
        if c.is_zero() {
            return TruncSeries::zero(self.small.clone(), self.order);
        }
        let mut out = TruncSeries::zero(self.small.clone(), self.order);
        for (e, v) in &self.terms {
            out.insert(e.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        assert_eq!(self.small, other.small, "mismatched small-variable sets");
        let order = (self.order + other.valuation()).min(other.order + self.valuation());
        let mut out = TruncSeries::zero(self.small.clone(), order);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                if total(ea) + total(eb) > order {
                    continue;
                }
                let e: SmallExp = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Truncate to a lower precision.
    pub fn truncate(&self, order: i32) -> TruncSeries {
        let mut out = TruncSeries::zero(self.small.clone(), order.min(self.order));
        for (e, c) in &self.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    /// Logarithm of a series with constant term 1, to this series' precision.
    pub fn log(&self) -> TruncSeries {
        let one = self.coefficient(&vec![0; self.small.len()]);
        assert!(one.is_one(), "log requires constant term 1");
        let mut x = self.clone();
        x.terms.remove(&vec![0; self.small.len()]);
        // log(1+x) = x - x^2/2 + x^3/3 - ...
        let mut out = TruncSeries::zero(self.small.clone(), self.order);
        let mut pow = x.clone();
        let mut k: i64 = 1;
        while !pow.is_zero() && k <= self.order as i64 {
            let coeff = RatFunc::from_int(if k % 2 == 1 { 1 } else { -1 })
                / RatFunc::from_int(k);
            out = out.add(&pow.scale(&coeff));
            pow = pow.mul(&x);
            k += 1;
        }
        out.order = self.order;
        out
    }

    /// Drop terms that involve *only* degree-zero exponent vectors? (No-op
    /// helper retained for clarity in callers that compare series.)
    pub fn nonzero_terms(&self) -> usize {
        self.terms.len()
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            for (k, (e, c)) in self.terms.iter().enumerate() {
                if k > 0 {
                    write!(f, " + ")?;
                }
                write!(f, "({})", c)?;
                for (g, ex) in self.small.iter().zip(e) {
                    if *ex != 0 {
                        write!(f, "*{}^{}", super::gen_name(*g), ex)?;
                    }
                }
            }
        }
        write!(f, " + O({})", self.order + 1)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Split a polynomial into (small-exponent vector) -> (coefficient free of
/// the small variables).
fn split_poly(p: &MultiPoly, small: &[GenId]) -> BTreeMap<SmallExp, MultiPoly> {
    let mut out: BTreeMap<SmallExp, MultiPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut e = vec![0; small.len()];
        let mut rest = Monomial::one();
        for &(g, ex) in m.exps() {
            if let Some(i) = small.iter().position(|&s| s == g) {
                e[i] = ex;
            } else {
                rest = rest.mul(&Monomial::var(g, ex));
            }
        }
        out.entry(e)
            .or_insert_with(MultiPoly::zero)
            .add_term(rest, c.clone());
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Expand an exact rational function as a truncated Laurent series in the
/// given small variables.
///
/// The denominator must be a unit in the series ring: after clearing a
/// common small-variable monomial, its small-degree-zero part must be
/// nonzero. Otherwise an error is returned.
pub fn series_expand(
    f: &RatFunc,
    small: &[GenId],
    order: i32,
) -> Result<TruncSeries, String> {
    let small: Vec<GenId> = {
        let mut s = small.to_vec();
        s.sort();
        s.dedup();
        s
    };
    if f.is_zero() {
        return Ok(TruncSeries::zero(small, order));
    }
    // Clear the largest small-monomial dividing the denominator.
    let mut shift = Monomial::one();
    for &g in &small {
        let m = f.den().min_exponent_in(g);
        if m != 0 {
            shift = shift.mul(&Monomial::var(g, m));
        }
    }
    let den = f.den().mul_monomial(&shift.inv(), &BigInt::one());
    let den_split = split_poly(&den, &small);
    let d0 = den_split
        .get(&vec![0; small.len()])
        .cloned()
        .unwrap_or_else(MultiPoly::zero);
    if d0.is_zero() {
        return Err(format!(
            "denominator {} is not a unit in the series ring over {:?}",
            f.den(),
            small.iter().map(|&g| super::gen_name(g)).collect::<Vec<_>>()
        ));
    }
    let d0inv = RatFunc::from_poly(d0.clone()).inv();

    // num / den = num * shift^{ -1 } ... : f = num / (shift * d), so
    // f = (num * shift^{-1}) * 1/d with d unit.
    let num_split = split_poly(f.num(), &small);
    let shift_exp: SmallExp = small.iter().map(|&g| -shift.exponent(g)).collect();
    let num_val: i32 = num_split.keys().map(|e| total(e)).min().unwrap_or(0) + total(&shift_exp);

    // Geometric expansion: 1/d = (1/d0) * sum_j ( -(d - d0)/d0 )^j.
    let mut rest = TruncSeries::zero(small.clone(), order - num_val);
    for (e, c) in &den_split {
        if total(e) == 0 {
            continue;
        }
        rest.insert(e.clone(), RatFunc::from_poly(c.clone()) * d0inv.clone() * RatFunc::from_int(-1));
    }
    let mut inv = TruncSeries::constant(small.clone(), order - num_val, d0inv.clone());
    let mut pow = rest.clone();
    let mut j = 0;
    while !pow.is_zero() && j <= order - num_val {
        inv = inv.add(&pow.scale(&d0inv));
        pow = pow.mul(&rest);
        j += 1;
    }
    inv.order = order - num_val;

    // The numerator is an exact Laurent polynomial, so its precision is
    // unbounded; the product's precision is then governed by `inv`.
    let mut numer = TruncSeries::zero(small.clone(), i32::MAX / 4);
    for (e, c) in &num_split {
        let ee: SmallExp = e.iter().zip(&shift_exp).map(|(a, b)| a + b).collect();
        numer.terms.insert(ee, RatFunc::from_poly(c.clone()));
    }
    let mut out = numer.mul(&inv);
    out = out.truncate(order);
    out.order = order;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::{one_minus, GEN_Q, GEN_T};

    #[test]
    fn geometric_series() {
        let f = RatFunc::new(MultiPoly::one(), one_minus(Monomial::var(GEN_Q, 1)));
        let s = series_expand(&f, &[GEN_Q], 3).unwrap();
        // 1 + q + q^2 + q^3
        assert_eq!(s.terms.len(), 4);
        for e in 0..=3 {
            assert!(s.coefficient(&[e]).is_one());
        }
    }

    #[test]
    fn two_variable_geometric() {
        let f = RatFunc::new(
            MultiPoly::one(),
            &one_minus(Monomial::var(GEN_Q, 1)) * &one_minus(Monomial::var(GEN_T, 1)),
        );
        let s = series_expand(&f, &[GEN_Q, GEN_T], 2).unwrap();
        // 1 + q + t + q^2 + qt + t^2
        assert_eq!(s.terms.len(), 6);
        for (e, c) in &s.terms {
            assert!(c.is_one(), "coefficient at {:?}", e);
        }
    }

    #[test]
    fn multiplication_matches_expansion() {
        // series(f) * series(g) = series(f*g), truncated; deterministic
        // pseudo-random f, g.
        let mut seed = 0xabcdef12345u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..10 {
            let mut mk = |_: ()| {
                let mut num = MultiPoly::zero();
                let mut den = MultiPoly::one();
                for _ in 0..3 {
                    let e1 = (next() % 3) as i32;
                    let e2 = (next() % 3) as i32;
                    let c = (next() % 5) as i64 - 2;
                    num.add_term(
                        Monomial::var(GEN_Q, e1).mul(&Monomial::var(GEN_T, e2)),
                        BigInt::from(c),
                    );
                    den.add_term(
                        Monomial::var(GEN_Q, e1 + 1).mul(&Monomial::var(GEN_T, e2)),
                        BigInt::from((next() % 3) as i64 - 1),
                    );
                }
                if num.is_zero() {
                    num = MultiPoly::one();
                }
                RatFunc::new(num, den)
            };
            let f = mk(());
            let g = mk(());
            let sf = series_expand(&f, &[GEN_Q, GEN_T], 5).unwrap();
            let sg = series_expand(&g, &[GEN_Q, GEN_T], 5).unwrap();
            let prod = series_expand(&(f * g), &[GEN_Q, GEN_T], 5).unwrap();
            let direct = sf.mul(&sg);
            let cap = direct.order.min(5);
            assert_eq!(direct.truncate(cap).terms, prod.truncate(cap).terms);
        }
    }

    #[test]
    fn laurent_expansion() {
        // 1/(q (1-q)) = q^{-1} + 1 + q + ...
        let f = RatFunc::new(
            MultiPoly::one(),
            &MultiPoly::var(GEN_Q) * &one_minus(Monomial::var(GEN_Q, 1)),
        );
        let s = series_expand(&f, &[GEN_Q], 2).unwrap();
        assert!(s.coefficient(&[-1]).is_one());
        assert!(s.coefficient(&[0]).is_one());
        assert!(s.coefficient(&[1]).is_one());
        assert!(s.coefficient(&[2]).is_one());
        assert_eq!(s.valuation(), -1);
    }

    #[test]
    fn non_unit_denominator_rejected() {
        // 1/(q - t) has no expansion with both q, t small.
        let f = RatFunc::new(
            MultiPoly::one(),
            &MultiPoly::var(GEN_Q) - &MultiPoly::var(GEN_T),
        );
        assert!(series_expand(&f, &[GEN_Q, GEN_T], 3).is_err());
    }

    #[test]
    fn log_of_product() {
        // log((1/(1-q))^2) = 2 log(1/(1-q))
        let f = RatFunc::new(MultiPoly::one(), one_minus(Monomial::var(GEN_Q, 1)));
        let s = series_expand(&f, &[GEN_Q], 6).unwrap();
        let s2 = series_expand(&(f.clone() * f), &[GEN_Q], 6).unwrap();
        let l = s.log();
        let l2 = s2.log();
        assert_eq!(l.scale(&RatFunc::from_int(2)).terms, l2.terms);
    }
}
