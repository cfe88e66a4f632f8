//! The ring of r-colored symmetric functions over the rational-function
//! field: sparse elements in the colored power-sum basis, matrix plethysm,
//! translation operators, colored evaluations, the Hall / star / modified
//! pairings, skewing, omega-series and Cauchy kernels.
//!
//! The internal canonical basis is the colored power sums
//! `p_{\vec\lambda} = \prod_i p_{\lambda^{(i)}}[X^{(i)}]`: it is
//! multiplicative, plethysm acts diagonally by degree, and evaluation at a
//! character sum is `O(support)`.

pub mod schur;

use crate::partitions::{multipartitions, ColoredCharSum, Partition};
use crate::ratfield::RatFunc;
use num_bigint::BigInt;
use num_traits::One;
use schur::z_of;
use std::collections::BTreeMap;
use std::fmt;

/// An r-tuple of partitions indexing a colored basis element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredIndex {
    tuple: Vec<Partition>,
}

impl ColoredIndex {
    pub fn new(tuple: Vec<Partition>) -> Self {
        ColoredIndex { tuple }
    }

    pub fn empty(r: usize) -> Self {
        ColoredIndex {
            tuple: vec![Partition::empty(); r],
        }
    }

    /// Single partition placed in one color.
    pub fn single(r: usize, color: usize, lambda: Partition) -> Self {
        let mut tuple = vec![Partition::empty(); r];
        tuple[color % r] = lambda;
        ColoredIndex { tuple }
    }

    pub fn r(&self) -> usize {
        self.tuple.len()
    }

    pub fn get(&self, i: i64) -> &Partition {
        &self.tuple[i.rem_euclid(self.r() as i64) as usize]
    }

    pub fn tuple(&self) -> &[Partition] {
        &self.tuple
    }

    pub fn degree(&self) -> u32 {
        self.tuple.iter().map(|p| p.size()).sum()
    }

    /// Merge part multisets colorwise (product of power-sum monomials).
    pub fn merge(&self, other: &ColoredIndex) -> ColoredIndex {
        let tuple = self
            .tuple
            .iter()
            .zip(&other.tuple)
            .map(|(a, b)| {
                let mut parts: Vec<u32> =
                    a.parts().iter().chain(b.parts()).copied().collect();
                parts.sort_unstable_by(|x, y| y.cmp(x));
                Partition::new(parts)
            })
            .collect();
        ColoredIndex { tuple }
    }

    /// Remap colors: the result's color-i entry is `self`'s color `f(i)`.
    pub fn remap(&self, f: impl Fn(i64) -> i64) -> ColoredIndex {
        let r = self.r();
        ColoredIndex {
            tuple: (0..r).map(|i| self.get(f(i as i64)).clone()).collect(),
        }
    }

    /// Total number of parts across colors.
    pub fn num_parts(&self) -> usize {
        self.tuple.iter().map(|p| p.len()).sum()
    }

    /// All colored indices of the given total degree.
    pub fn all(r: usize, n: u32) -> Vec<ColoredIndex> {
        multipartitions(n, r)
            .into_iter()
            .map(ColoredIndex::new)
            .collect()
    }

    /// `prod_i z_{lambda^{(i)}}`.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        for p in &self.tuple {
            z *= z_of(p);
        }
        z
    }
}

impl fmt::Display for ColoredIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.tuple.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            for (j, part) in p.parts().iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", part)?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ColoredIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A sparse element of the colored symmetric function ring, stored in the
/// colored power-sum basis. No zero coefficients are kept.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiSymFunc {
    r: usize,
    coeffs: BTreeMap<ColoredIndex, RatFunc>,
}

impl MultiSymFunc {
    pub fn zero(r: usize) -> Self {
        MultiSymFunc {
            r,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(r: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(ColoredIndex::empty(r), RatFunc::one());
        MultiSymFunc { r, coeffs }
    }

    pub fn constant(r: usize, c: RatFunc) -> Self {
        let mut out = Self::zero(r);
        out.add_term(ColoredIndex::empty(r), c);
        out
    }

    /// `p_n[X^{(color)}]`.
    pub fn p(r: usize, color: i64, n: u32) -> Self {
        let idx = ColoredIndex::single(
            r,
            color.rem_euclid(r as i64) as usize,
            Partition::new(vec![n]),
        );
        let mut out = Self::zero(r);
        out.add_term(idx, RatFunc::one());
        out
    }

    pub fn from_terms(
        r: usize,
        terms: impl IntoIterator<Item = (ColoredIndex, RatFunc)>,
    ) -> Self {
        let mut out = Self::zero(r);
        for (i, c) in terms {
            out.add_term(i, c);
        }
        out
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn coeffs(&self) -> &BTreeMap<ColoredIndex, RatFunc> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, idx: ColoredIndex, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiSymFunc) -> MultiSymFunc {
        assert_eq!(self.r, other.r);
        let mut out = self.clone();
        for (i, c) in &other.coeffs {
            out.add_term(i.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiSymFunc) -> MultiSymFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiSymFunc {
        MultiSymFunc {
            r: self.r,
            coeffs: self
                .coeffs
                .iter()
                .map(|(i, c)| (i.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &RatFunc) -> MultiSymFunc {
        if s.is_zero() {
            return Self::zero(self.r);
        }
        let mut out = Self::zero(self.r);
        for (i, c) in &self.coeffs {
            out.add_term(i.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn mul(&self, other: &MultiSymFunc) -> MultiSymFunc {
        assert_eq!(self.r, other.r);
        let mut out = Self::zero(self.r);
        for (ia, ca) in &self.coeffs {
            for (ib, cb) in &other.coeffs {
                out.add_term(ia.merge(ib), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn max_degree(&self) -> u32 {
        self.coeffs.keys().map(|i| i.degree()).max().unwrap_or(0)
    }

    /// Is the element concentrated in a single degree?
    pub fn is_homogeneous(&self) -> bool {
        let mut deg = None;
        for i in self.coeffs.keys() {
            match deg {
                None => deg = Some(i.degree()),
                Some(d) if d == i.degree() => {}
                _ => return false,
            }
        }
        true
    }

    /// The degree-n homogeneous component.
    pub fn component(&self, n: u32) -> MultiSymFunc {
        MultiSymFunc {
            r: self.r,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(i, _)| i.degree() == n)
                .map(|(i, c)| (i.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drop components of degree above n.
    pub fn truncate(&self, n: u32) -> MultiSymFunc {
        MultiSymFunc {
            r: self.r,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(i, _)| i.degree() <= n)
                .map(|(i, c)| (i.clone(), c.clone()))
                .collect(),
        }
    }

    /// Apply a substitution to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> MultiSymFunc {
        let mut out = Self::zero(self.r);
        for (i, c) in &self.coeffs {
            out.add_term(i.clone(), f(c));
        }
        out
    }

    /// Color reversal `p_n[X^{(i)}] -> p_n[X^{(-i)}]`.
    pub fn iota(&self) -> MultiSymFunc {
        let mut out = Self::zero(self.r);
        for (i, c) in &self.coeffs {
            out.add_term(i.remap(|j| -j), c.clone());
        }
        out
    }

    /// Color rotation `p_n[X^{(i)}] -> p_n[X^{(i+k)}]` (the sigma-power
    /// plethysm).
    pub fn sigma_shift(&self, k: i64) -> MultiSymFunc {
        let mut out = Self::zero(self.r);
        for (i, c) in &self.coeffs {
            // the image's color-(j+k) slot holds the original color-j parts
            out.add_term(i.remap(|j| j - k), c.clone());
        }
        out
    }

    /// The plethystic minus `p_n -> -p_n` in every color.
    pub fn pleth_neg(&self) -> MultiSymFunc {
        let mut out = Self::zero(self.r);
        for (i, c) in &self.coeffs {
            let sign = if i.num_parts() % 2 == 0 { 1 } else { -1 };
            out.add_term(i.clone(), c.clone() * RatFunc::from_int(sign));
        }
        out
    }

    /// The classical omega sign-twist per color: `p_n -> (-1)^{n+1} p_n`.
    pub fn omega(&self) -> MultiSymFunc {
        let mut out = Self::zero(self.r);
        for (i, c) in &self.coeffs {
            let mut sign = 1i64;
            for p in i.tuple() {
                for &part in p.parts() {
                    if part % 2 == 0 {
                        sign = -sign;
                    }
                }
            }
            out.add_term(i.clone(), c.clone() * RatFunc::from_int(sign));
        }
        out
    }

    /// Invert `q` and `t` in every coefficient.
    pub fn invert_qt(&self) -> MultiSymFunc {
        self.map_coeffs(|c| c.invert_qt())
    }
}

impl fmt::Display for MultiSymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})*p{}", c, i)?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiSymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An r-by-r matrix of rational functions acting by matrix plethysm:
/// `p_n[A X^{(j)}] = sum_i A_{ij}(q^n, t^n, u^n) p_n[X^{(i)}]`.
#[derive(Clone, PartialEq, Eq)]
pub struct PlethMatrix {
    r: usize,
    /// entries[i][j] = A_{ij}
    entries: Vec<Vec<RatFunc>>,
}

impl PlethMatrix {
    pub fn zero(r: usize) -> Self {
        PlethMatrix {
            r,
            entries: vec![vec![RatFunc::zero(); r]; r],
        }
    }

    pub fn identity(r: usize) -> Self {
        let mut m = Self::zero(r);
        for i in 0..r {
            m.entries[i][i] = RatFunc::one();
        }
        m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn entry(&self, i: i64, j: i64) -> &RatFunc {
        let r = self.r as i64;
        &self.entries[i.rem_euclid(r) as usize][j.rem_euclid(r) as usize]
    }

    pub fn set(&mut self, i: i64, j: i64, v: RatFunc) {
        let r = self.r as i64;
        self.entries[i.rem_euclid(r) as usize][j.rem_euclid(r) as usize] = v;
    }

    /// The color rotation `sigma^k`: `p_n[sigma^k X^{(i)}] = p_n[X^{(i+k)}]`.
    pub fn sigma(r: usize, k: i64) -> Self {
        let mut m = Self::zero(r);
        for j in 0..r as i64 {
            m.set(j + k, j, RatFunc::one());
        }
        m
    }

    /// The color reversal: `p_n[iota X^{(i)}] = p_n[X^{(-i)}]`.
    pub fn iota(r: usize) -> Self {
        let mut m = Self::zero(r);
        for j in 0..r as i64 {
            m.set(-j, j, RatFunc::one());
        }
        m
    }

    /// A circulant built from powers of sigma: `sum_k c_k sigma^k`.
    pub fn sigma_poly(r: usize, coeffs: &[(i64, RatFunc)]) -> Self {
        let mut m = Self::zero(r);
        for (k, c) in coeffs {
            for j in 0..r as i64 {
                let cur = m.entry(j + k, j).clone();
                m.set(j + k, j, cur + c.clone());
            }
        }
        m
    }

    /// `(1 - s sigma^dir)^{-1}` for a scalar `s` and `dir = +1/-1`:
    /// the geometric circulant `sum_{k=0}^{r-1} s^k sigma^{k dir} / (1-s^r)`.
    pub fn inv_one_minus(r: usize, s: &RatFunc, dir: i64) -> Self {
        let den = RatFunc::one() - s.pow(r as i64);
        let inv = den.inv();
        let coeffs: Vec<(i64, RatFunc)> = (0..r as i64)
            .map(|k| (k * dir, s.pow(k) * inv.clone()))
            .collect();
        Self::sigma_poly(r, &coeffs)
    }

    pub fn mul(&self, other: &PlethMatrix) -> PlethMatrix {
        assert_eq!(self.r, other.r);
        let mut m = Self::zero(self.r);
        for i in 0..self.r {
            for j in 0..self.r {
                let mut acc = RatFunc::zero();
                for k in 0..self.r {
                    acc = acc + self.entries[i][k].clone() * other.entries[k][j].clone();
                }
                m.entries[i][j] = acc;
            }
        }
        m
    }

    pub fn neg(&self) -> PlethMatrix {
        PlethMatrix {
            r: self.r,
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|c| -c.clone()).collect())
                .collect(),
        }
    }

    pub fn scale(&self, s: &RatFunc) -> PlethMatrix {
        PlethMatrix {
            r: self.r,
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|c| c.clone() * s.clone()).collect())
                .collect(),
        }
    }

    /// Entries evaluated at degree n (all generator exponents scaled).
    pub fn at_degree(&self, n: u32) -> PlethMatrix {
        PlethMatrix {
            r: self.r,
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|c| c.power_exponents(n as i32)).collect())
                .collect(),
        }
    }

    /// Column j as a colored family (used to feed omega-series).
    pub fn column(&self, j: i64) -> ColoredCharSum {
        let r = self.r;
        ColoredCharSum::from_components(
            (0..r as i64).map(|i| self.entry(i, j).clone()).collect(),
        )
    }
}

impl fmt::Debug for PlethMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            writeln!(f, "{:?}", row)?;
        }
        Ok(())
    }
}

/// Matrix plethysm: the ring homomorphism determined by
/// `p_n[X^{(j)}] -> sum_i A_{ij}(q^n,t^n,u^n) p_n[X^{(i)}]`.
pub fn pleth_apply(f: &MultiSymFunc, a: &PlethMatrix) -> MultiSymFunc {
    let r = f.r();
    assert_eq!(r, a.r());
    let mut out = MultiSymFunc::zero(r);
    for (idx, c) in f.coeffs() {
        // product over colors and parts of the image of p_n[X^{(j)}]
        let mut acc: Vec<(ColoredIndex, RatFunc)> =
            vec![(ColoredIndex::empty(r), c.clone())];
        for j in 0..r as i64 {
            for &n in idx.get(j).parts() {
                let an = a.at_degree(n);
                let mut next = Vec::new();
                for (cur_idx, cur_c) in &acc {
                    for i in 0..r as i64 {
                        let e = an.entry(i, j);
                        if e.is_zero() {
                            continue;
                        }
                        let pn = ColoredIndex::single(
                            r,
                            i.rem_euclid(r as i64) as usize,
                            Partition::new(vec![n]),
                        );
                        next.push((cur_idx.merge(&pn), cur_c.clone() * e.clone()));
                    }
                }
                acc = next;
            }
        }
        for (i, v) in acc {
            out.add_term(i, v);
        }
    }
    out
}

/// Translation on one color: `p_n[X^{(color)}] -> p_n[X^{(color)}] +
/// c(q^n, t^n, u^n)`, the plethysm `f[X^{(color)} + c]`.
pub fn pleth_translate(f: &MultiSymFunc, color: i64, c: &RatFunc) -> MultiSymFunc {
    let r = f.r();
    let color = color.rem_euclid(r as i64) as usize;
    let mut out = MultiSymFunc::zero(r);
    for (idx, coeff) in f.coeffs() {
        let lam = idx.get(color as i64).clone();
        // expand prod_j (p_{n_j} + c^{(n_j)}) over sub-multisets
        let mut parts_mult: BTreeMap<u32, u32> = BTreeMap::new();
        for &n in lam.parts() {
            *parts_mult.entry(n).or_insert(0) += 1;
        }
        let distinct: Vec<(u32, u32)> = parts_mult.into_iter().collect();
        let mut stack: Vec<(usize, Vec<u32>)> = vec![(0, Vec::new())];
        while let Some((k, choice)) = stack.pop() {
            if k == distinct.len() {
                let mut kept: Vec<u32> = Vec::new();
                let mut scalar = coeff.clone();
                for (idx_d, &(n, mult)) in distinct.iter().enumerate() {
                    let take = choice[idx_d];
                    for _ in 0..(mult - take) {
                        kept.push(n);
                    }
                    // binomial(mult, take) ways to pick the replaced copies
                    let mut binom = BigInt::one();
                    for x in 0..take {
                        binom = binom * BigInt::from(mult - x) / BigInt::from(x + 1);
                    }
                    scalar = scalar * RatFunc::from_bigint(binom);
                    for _ in 0..take {
                        scalar = scalar * c.power_exponents(n as i32);
                    }
                }
                kept.sort_unstable_by(|x, y| y.cmp(x));
                let mut tuple = idx.tuple().to_vec();
                tuple[color] = Partition::new(kept);
                out.add_term(ColoredIndex::new(tuple), scalar);
                continue;
            }
            let (_, mult) = distinct[k];
            for take in 0..=mult {
                let mut c2 = choice.clone();
                c2.push(take);
                stack.push((k + 1, c2));
            }
        }
    }
    out
}

/// Colored evaluation: `p_n[X^{(i)}] -> S^{(i)}` with all generator
/// exponents scaled by n, extended multiplicatively.
pub fn eval_colored(f: &MultiSymFunc, s: &ColoredCharSum) -> RatFunc {
    let mut acc = RatFunc::zero();
    for (idx, c) in f.coeffs() {
        let mut term = c.clone();
        'outer: for i in 0..f.r() as i64 {
            for &n in idx.get(i).parts() {
                let v = s.get(i).power_exponents(n as i32);
                if v.is_zero() {
                    term = RatFunc::zero();
                    break 'outer;
                }
                term = term * v;
            }
        }
        acc = acc + term;
    }
    acc
}

/// The Hall pairing: colored power sums are orthogonal with
/// `<p_lam, p_mu> = delta * prod_i z`.
pub fn hall(f: &MultiSymFunc, g: &MultiSymFunc) -> RatFunc {
    let mut acc = RatFunc::zero();
    let (small, big) = if f.coeffs().len() <= g.coeffs().len() {
        (f, g)
    } else {
        (g, f)
    };
    for (i, c) in small.coeffs() {
        if let Some(d) = big.coeffs().get(i) {
            acc = acc + c.clone() * d.clone() * RatFunc::from_bigint(i.z());
        }
    }
    acc
}

/// The iota-twisted Hall pairing `<f, g>* = <f[iota X], g>`.
pub fn star_pairing(f: &MultiSymFunc, g: &MultiSymFunc) -> RatFunc {
    hall(&f.iota(), g)
}

/// The matrix `(1 - q sigma^{-1})(t sigma - 1)` entering the modified
/// pairing.
pub fn pairing_twist(r: usize) -> PlethMatrix {
    let q = RatFunc::var(crate::ratfield::GEN_Q);
    let t = RatFunc::var(crate::ratfield::GEN_T);
    let qt = q.clone() * t.clone();
    PlethMatrix::sigma_poly(r, &[(1, t), (0, -(RatFunc::one() + qt)), (-1, q)])
}

/// Inverse of [`pairing_twist`]: `-(1-q sigma^{-1})^{-1} (1-t sigma)^{-1}`.
pub fn pairing_twist_inv(r: usize) -> PlethMatrix {
    let q = RatFunc::var(crate::ratfield::GEN_Q);
    let t = RatFunc::var(crate::ratfield::GEN_T);
    PlethMatrix::inv_one_minus(r, &q, -1)
        .mul(&PlethMatrix::inv_one_minus(r, &t, 1))
        .neg()
}

/// The modified wreath Macdonald pairing
/// `<f, g>' = <f[iota X], g[(1-q sigma^{-1})(t sigma - 1) X]>`.
pub fn qt_prime_pairing(f: &MultiSymFunc, g: &MultiSymFunc) -> RatFunc {
    hall(&f.iota(), &pleth_apply(g, &pairing_twist(f.r())))
}

/// Skewing by a single power sum: `n * d/d p_n[X^{(color)}]`.
pub fn skew_p(h: &MultiSymFunc, color: i64, n: u32) -> MultiSymFunc {
    let r = h.r();
    let color_u = color.rem_euclid(r as i64) as usize;
    let mut out = MultiSymFunc::zero(r);
    for (idx, c) in h.coeffs() {
        let lam = idx.get(color);
        let mult = lam.parts().iter().filter(|&&p| p == n).count() as i64;
        if mult == 0 {
            continue;
        }
        let mut parts = lam.parts().to_vec();
        let pos = parts.iter().position(|&p| p == n).unwrap();
        parts.remove(pos);
        let mut tuple = idx.tuple().to_vec();
        tuple[color_u] = Partition::new(parts);
        out.add_term(
            ColoredIndex::new(tuple),
            c.clone() * RatFunc::from_int(n as i64 * mult),
        );
    }
    out
}

/// The Hall-adjoint of multiplication by `f`, applied to `h`.
pub fn skew_by(f: &MultiSymFunc, h: &MultiSymFunc) -> MultiSymFunc {
    let r = f.r();
    let mut out = MultiSymFunc::zero(r);
    for (idx, c) in f.coeffs() {
        let mut cur = h.scale(c);
        for i in 0..r as i64 {
            for &n in idx.get(i).parts() {
                cur = skew_p(&cur, i, n);
            }
        }
        out = out.add(&cur);
    }
    out
}

/// Omega-series of a colored linear form, truncated to total degree N:
/// `Omega[sum_i X^{(i)} c_i] = exp(sum_{n>=1} sum_i c_i(q^n,t^n,u^n)
/// p_n[X^{(i)}] / n)`.
pub fn omega_series(c: &ColoredCharSum, r: usize, max_deg: u32) -> MultiSymFunc {
    let mut t = MultiSymFunc::zero(r);
    for n in 1..=max_deg {
        for i in 0..r as i64 {
            let v = c.get(i).power_exponents(n as i32);
            if v.is_zero() {
                continue;
            }
            t.add_term(
                ColoredIndex::single(r, i as usize, Partition::new(vec![n])),
                v / RatFunc::from_int(n as i64),
            );
        }
    }
    // exp, truncated by degree
    let mut out = MultiSymFunc::one(r);
    let mut pow = MultiSymFunc::one(r);
    let mut factorial = BigInt::one();
    for m in 1..=max_deg {
        pow = pow.mul(&t).truncate(max_deg);
        factorial *= BigInt::from(m);
        out = out.add(&pow.scale(&(RatFunc::one() / RatFunc::from_bigint(factorial.clone()))));
        if pow.is_zero() {
            break;
        }
    }
    out.truncate(max_deg)
}

/// Basis identifiers for conversions out of the power-sum basis.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Basis {
    /// Colored power sums (identity).
    P,
    /// Multi-Schur functions.
    S,
    /// Products of elementary symmetric functions; indices follow the
    /// transpose convention `e_lambda = prod e_{lambda'_j}` per color.
    E,
    /// Products of complete homogeneous symmetric functions.
    H,
}

/// Expand into the requested multiplicative basis, colorwise.
pub fn basis_convert(f: &MultiSymFunc, basis: Basis) -> BTreeMap<ColoredIndex, RatFunc> {
    match basis {
        Basis::P => f.coeffs().clone(),
        Basis::S => to_multi_schur(f),
        Basis::H => convert_by_color(f, schur::p_in_h, false),
        Basis::E => convert_by_color(f, schur::p_in_e, true),
    }
}

fn convert_by_color(
    f: &MultiSymFunc,
    expand_p: impl Fn(u32) -> BTreeMap<Partition, RatFunc>,
    transpose_keys: bool,
) -> BTreeMap<ColoredIndex, RatFunc> {
    let r = f.r();
    let mut out: BTreeMap<ColoredIndex, RatFunc> = BTreeMap::new();
    for (idx, c) in f.coeffs() {
        let mut acc: Vec<(Vec<Partition>, RatFunc)> =
            vec![(vec![Partition::empty(); r], c.clone())];
        for i in 0..r {
            for &n in idx.tuple()[i].parts() {
                let table = expand_p(n);
                let mut next = Vec::new();
                for (tuple, coeff) in &acc {
                    for (key, v) in &table {
                        let mut t2 = tuple.clone();
                        let mut parts: Vec<u32> =
                            t2[i].parts().iter().chain(key.parts()).copied().collect();
                        parts.sort_unstable_by(|x, y| y.cmp(x));
                        t2[i] = Partition::new(parts);
                        next.push((t2, coeff.clone() * v.clone()));
                    }
                }
                acc = next;
            }
        }
        for (tuple, v) in acc {
            let tuple = if transpose_keys {
                tuple.iter().map(|p| p.transpose()).collect()
            } else {
                tuple
            };
            let key = ColoredIndex::new(tuple);
            let entry = out.entry(key).or_insert_with(RatFunc::zero);
            *entry = entry.clone() + v;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Expansion in the multi-Schur basis (character-table route).
pub fn to_multi_schur(f: &MultiSymFunc) -> BTreeMap<ColoredIndex, RatFunc> {
    let r = f.r();
    let mut out: BTreeMap<ColoredIndex, RatFunc> = BTreeMap::new();
    for (idx, c) in f.coeffs() {
        let mut acc: Vec<(Vec<Partition>, RatFunc)> =
            vec![(vec![Partition::empty(); r], c.clone())];
        for i in 0..r {
            let mu = &idx.tuple()[i];
            if mu.is_empty() {
                continue;
            }
            let table = schur::p_in_schur(mu);
            let mut next = Vec::new();
            for (tuple, coeff) in &acc {
                for (lam, chi) in &table {
                    let mut t2 = tuple.clone();
                    t2[i] = lam.clone();
                    next.push((t2, coeff.clone() * RatFunc::from_bigint(chi.clone())));
                }
            }
            acc = next;
        }
        for (tuple, v) in acc {
            let key = ColoredIndex::new(tuple);
            let entry = out.entry(key).or_insert_with(RatFunc::zero);
            *entry = entry.clone() + v;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Reassemble an element from multi-Schur coefficients (Jacobi-Trudi
/// route).
pub fn from_multi_schur(r: usize, coeffs: &BTreeMap<ColoredIndex, RatFunc>) -> MultiSymFunc {
    let mut out = MultiSymFunc::zero(r);
    for (idx, c) in coeffs {
        let mut acc = MultiSymFunc::constant(r, c.clone());
        for i in 0..r {
            let lam = &idx.tuple()[i];
            if lam.is_empty() {
                continue;
            }
            let sp = schur::schur_in_p_jt(lam);
            let mut factor = MultiSymFunc::zero(r);
            for (mu, v) in sp {
                factor.add_term(ColoredIndex::single(r, i, mu), v);
            }
            acc = acc.mul(&factor);
        }
        out = out.add(&acc);
    }
    out
}

/// The multi-Schur function `s_{\vec\gamma}` as an element.
pub fn multi_schur(r: usize, idx: &ColoredIndex) -> MultiSymFunc {
    from_multi_schur(r, &BTreeMap::from([(idx.clone(), RatFunc::one())]))
}

/// `e_n` placed in a single color, in the power basis.
pub fn en_color(r: usize, color: i64, n: u32) -> MultiSymFunc {
    let mut out = MultiSymFunc::zero(r);
    for (mu, c) in schur::e_in_p(n) {
        out.add_term(
            ColoredIndex::single(r, color.rem_euclid(r as i64) as usize, mu),
            c,
        );
    }
    out
}

/// `h_n` placed in a single color, in the power basis.
pub fn hn_color(r: usize, color: i64, n: u32) -> MultiSymFunc {
    let mut out = MultiSymFunc::zero(r);
    for (mu, c) in schur::h_in_p(n) {
        out.add_term(
            ColoredIndex::single(r, color.rem_euclid(r as i64) as usize, mu),
            c,
        );
    }
    out
}

/// A finite sum of separable `X`/`Y` summands, the carrier of two-alphabet
/// kernels. Products of X- and Y-variables are never expanded into a
/// 2r-colored ring; only one alphabet is ever specialized.
#[derive(Clone)]
pub struct TwoAlphabetElem {
    pub r: usize,
    /// Truncation: summands of degree above this are absent.
    pub max_deg: u32,
    pub summands: Vec<(MultiSymFunc, MultiSymFunc)>,
}

impl TwoAlphabetElem {
    /// Canonical bilinear form: coefficients on pairs of power-sum indices.
    pub fn bilinear_form(&self) -> BTreeMap<(ColoredIndex, ColoredIndex), RatFunc> {
        let mut out: BTreeMap<(ColoredIndex, ColoredIndex), RatFunc> = BTreeMap::new();
        for (fx, fy) in &self.summands {
            for (ix, cx) in fx.coeffs() {
                for (iy, cy) in fy.coeffs() {
                    let key = (ix.clone(), iy.clone());
                    let v = cx.clone() * cy.clone();
                    let entry = out.entry(key).or_insert_with(RatFunc::zero);
                    *entry = entry.clone() + v;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn swap(&self) -> TwoAlphabetElem {
        TwoAlphabetElem {
            r: self.r,
            max_deg: self.max_deg,
            summands: self
                .summands
                .iter()
                .map(|(x, y)| (y.clone(), x.clone()))
                .collect(),
        }
    }

    pub fn map_x(&self, f: impl Fn(&MultiSymFunc) -> MultiSymFunc) -> TwoAlphabetElem {
        TwoAlphabetElem {
            r: self.r,
            max_deg: self.max_deg,
            summands: self
                .summands
                .iter()
                .map(|(x, y)| (f(x), y.clone()))
                .collect(),
        }
    }

    pub fn map_y(&self, f: impl Fn(&MultiSymFunc) -> MultiSymFunc) -> TwoAlphabetElem {
        TwoAlphabetElem {
            r: self.r,
            max_deg: self.max_deg,
            summands: self
                .summands
                .iter()
                .map(|(x, y)| (x.clone(), f(y)))
                .collect(),
        }
    }

    /// Specialize the Y alphabet at a colored character sum.
    pub fn eval_y(&self, s: &ColoredCharSum) -> MultiSymFunc {
        let mut out = MultiSymFunc::zero(self.r);
        for (fx, fy) in &self.summands {
            out = out.add(&fx.scale(&eval_colored(fy, s)));
        }
        out
    }

    /// Drop summand parts of degree above n (both alphabets).
    pub fn truncate(&self, n: u32) -> TwoAlphabetElem {
        TwoAlphabetElem {
            r: self.r,
            max_deg: n.min(self.max_deg),
            summands: self
                .summands
                .iter()
                .map(|(x, y)| (x.truncate(n), y.truncate(n)))
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .collect(),
        }
    }
}

/// The Cauchy kernel for the modified pairing, truncated by degree:
/// in each degree `sum p_{iota lam}[X] (x) p_lam[M Y] / z`, with `M` the
/// inverse pairing twist.
pub fn cauchy_kernel(r: usize, max_deg: u32) -> TwoAlphabetElem {
    let m = pairing_twist_inv(r);
    let mut summands = Vec::new();
    for n in 0..=max_deg {
        for idx in ColoredIndex::all(r, n) {
            let z = RatFunc::from_bigint(idx.z());
            let mut px = MultiSymFunc::zero(r);
            px.add_term(idx.remap(|j| -j), RatFunc::one() / z);
            let mut py = MultiSymFunc::zero(r);
            py.add_term(idx.clone(), RatFunc::one());
            summands.push((px, pleth_apply(&py, &m)));
        }
    }
    TwoAlphabetElem {
        r,
        max_deg,
        summands,
    }
}
