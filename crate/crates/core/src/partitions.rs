//! Partition and Maya-diagram combinatorics: r-cores, r-quotients, charges,
//! colored boxes, the longest-element and cyclic symmetries of quotient
//! diagrams, and colored character sums.
//!
//! Conventions (French):
//! - a box `(a, b)` sits in column `a`, row `b`, both 0-indexed, and carries
//!   the character `q^a t^b`;
//! - its content is `b - a` and its color is the content mod r;
//! - the Maya diagram of a partition has value `-1` exactly at the positions
//!   `(i-1) - lambda_i` for `i >= 1`, i.e. where the tilted boundary takes a
//!   "north" step, and `+1` elsewhere.

use crate::ratfield::{Monomial, RatFunc, GEN_Q, GEN_T};
#[cfg(test)]
use crate::ratfield::MultiPoly;
use std::collections::BTreeSet;
use std::fmt;

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "parts must be weakly decreasing: {:?}",
            parts
        );
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Part at 1-based index `i`, zero beyond the last row.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 || i > self.parts.len() {
            0
        } else {
            self.parts[i - 1]
        }
    }

    pub fn transpose(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Boxes `(a, b)` = (column, row), 0-indexed.
    pub fn boxes(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(b, &len)| (0..len).map(move |a| (a, b as u32)))
    }

    pub fn contains_box(&self, a: u32, b: u32) -> bool {
        (b as usize) < self.parts.len() && a < self.parts[b as usize]
    }

    /// Set containment of Young diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        other
            .parts
            .iter()
            .enumerate()
            .all(|(i, &p)| self.part(i + 1) >= p)
    }

    /// Dominance order on partitions of equal size.
    pub fn dominates(&self, other: &Partition) -> bool {
        debug_assert_eq!(self.size(), other.size());
        let mut a = 0u64;
        let mut b = 0u64;
        for i in 0..self.parts.len().max(other.parts.len()) {
            a += self.part(i + 1) as u64;
            b += other.part(i + 1) as u64;
            if a < b {
                return false;
            }
        }
        true
    }

    /// Addable corners `(a, b)`.
    pub fn addable(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for b in 0..=self.parts.len() {
            let here = self.part(b + 1);
            let above_ok = b == 0 || self.part(b) > here;
            if above_ok {
                out.push((here, b as u32));
            }
        }
        out
    }

    /// Removable corners `(a, b)`.
    pub fn removable(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for b in 0..self.parts.len() {
            let here = self.parts[b];
            let below = self.part(b + 2);
            if here > below {
                out.push((here - 1, b as u32));
            }
        }
        out
    }

    pub fn add_box(&self, a: u32, b: u32) -> Partition {
        let mut parts = self.parts.clone();
        if (b as usize) == parts.len() {
            parts.push(1);
            assert_eq!(a, 0);
        } else {
            assert_eq!(parts[b as usize], a);
            parts[b as usize] += 1;
        }
        Partition::new(parts)
    }

    /// Color of a box for a given r: content mod r, in `0..r`.
    pub fn color_of(a: u32, b: u32, r: usize) -> usize {
        (b as i64 - a as i64).rem_euclid(r as i64) as usize
    }

    /// All partitions of n, in a deterministic (lexicographically
    /// decreasing) order.
    pub fn all(n: u32) -> Vec<Partition> {
        fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition::new(cur.clone()));
                return;
            }
            let hi = max.min(n);
            for p in (1..=hi).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// The character `q^a t^b` of a box.
    pub fn box_char(a: u32, b: u32) -> RatFunc {
        RatFunc::monomial(Monomial::var(GEN_Q, a as i32).mul(&Monomial::var(GEN_T, b as i32)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A Maya diagram: a two-valued function on the integers that is `+1` far
/// to the left and `-1` far to the right, stored as the finite set of
/// positions where it deviates from the charge-0 vacuum (`+1` on negatives,
/// `-1` on nonnegatives).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MayaDiagram {
    flips: BTreeSet<i64>,
}

impl MayaDiagram {
    pub fn vacuum() -> Self {
        MayaDiagram::default()
    }

    /// Value at position `n`: `+1` (bead) or `-1` (gap).
    pub fn value(&self, n: i64) -> i8 {
        let vac: i8 = if n < 0 { 1 } else { -1 };
        if self.flips.contains(&n) {
            -vac
        } else {
            vac
        }
    }

    pub fn from_values(values: impl Fn(i64) -> i8, lo: i64, hi: i64) -> Self {
        let mut flips = BTreeSet::new();
        for n in lo..hi {
            let vac: i8 = if n < 0 { 1 } else { -1 };
            if values(n) != vac {
                flips.insert(n);
            }
        }
        MayaDiagram { flips }
    }

    /// Bead surplus right of the central line minus gap deficit left of it.
    pub fn charge(&self) -> i64 {
        let mut c = 0i64;
        for &n in &self.flips {
            if n >= 0 {
                c += 1; // bead where the vacuum has a gap
            } else {
                c -= 1; // gap where the vacuum has a bead
            }
        }
        c
    }

    /// Shift the central line: `shift(c).value(n) = self.value(n + c)`.
    pub fn shift(&self, c: i64) -> MayaDiagram {
        let lo = self.flips.iter().next().copied().unwrap_or(0).min(0) - c.abs() - 1;
        let hi = self.flips.iter().next_back().copied().unwrap_or(0).max(0) + c.abs() + 2;
        MayaDiagram::from_values(|n| self.value(n + c), lo, hi)
    }
}

/// The Maya diagram of a partition: gaps exactly at `(i-1) - lambda_i`.
pub fn maya_of(lambda: &Partition) -> MayaDiagram {
    let l = lambda.len() as i64;
    let extent = lambda.part(1) as i64 + l + 2;
    MayaDiagram::from_values(
        |n| {
            // gap (-1) iff n = (i-1) - lambda_i for some i >= 1
            for i in 1..=(l as usize) {
                if n == (i as i64 - 1) - lambda.part(i) as i64 {
                    return -1;
                }
            }
            if n >= l - 1 {
                // beyond the last nonzero part: lambda_i = 0, gap at i-1
                if n >= l {
                    return -1;
                }
                // n = l-1 could still be a gap via i = l (handled above) or
                // the first zero part i = l+1 at position l; not here.
            }
            1
        },
        -extent,
        extent,
    )
}

/// Inverse of [`maya_of`]; the diagram must have charge 0.
pub fn partition_of(m: &MayaDiagram) -> Result<Partition, String> {
    if m.charge() != 0 {
        return Err(format!("nonzero charge {}", m.charge()));
    }
    // Gaps listed in increasing order are w_i = (i-1) - lambda_i.
    let lo = m.flips.iter().next().copied().unwrap_or(0).min(0) - 1;
    let mut gaps = Vec::new();
    let mut n = lo;
    // Collect gaps until they settle into the vacuum tail.
    let hi = m.flips.iter().next_back().copied().unwrap_or(0).max(0) + 1;
    while n <= hi {
        if m.value(n) == -1 {
            gaps.push(n);
        }
        n += 1;
    }
    // Beyond hi the pattern is vacuum: gaps at every n >= max(hi+1, 0).
    let mut parts = Vec::new();
    for (i, w) in gaps.iter().enumerate() {
        let lam = (i as i64) - w; // lambda_i = (i-1) - w_i with i 1-based
        if lam < 0 {
            return Err("gap sequence does not encode a partition".into());
        }
        parts.push(lam as u32);
    }
    // Gaps in increasing order produce the parts largest-first.
    Ok(Partition::new(parts))
}

/// Charges of an r-core, summing to zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CoreLabel {
    charges: Vec<i64>,
}

impl CoreLabel {
    pub fn new(charges: Vec<i64>) -> Self {
        assert_eq!(
            charges.iter().sum::<i64>(),
            0,
            "core charges must sum to zero"
        );
        CoreLabel { charges }
    }

    pub fn zero(r: usize) -> Self {
        CoreLabel {
            charges: vec![0; r],
        }
    }

    pub fn r(&self) -> usize {
        self.charges.len()
    }

    pub fn charges(&self) -> &[i64] {
        &self.charges
    }

    /// Reversal of the coordinate vector.
    pub fn w0(&self) -> CoreLabel {
        let mut c = self.charges.clone();
        c.reverse();
        CoreLabel { charges: c }
    }

    /// Cyclic shift: `sigma(c)_0 = c_{r-1}`, `sigma(c)_i = c_{i-1}`.
    pub fn sigma(&self) -> CoreLabel {
        let r = self.r();
        let charges = (0..r)
            .map(|i| self.charges[(i + r - 1) % r])
            .collect();
        CoreLabel { charges }
    }

    pub fn sigma_pow(&self, k: i64) -> CoreLabel {
        let r = self.r() as i64;
        let k = k.rem_euclid(r);
        let mut out = self.clone();
        for _ in 0..k {
            out = out.sigma();
        }
        out
    }

    /// The r-core partition with these charges.
    pub fn to_partition(&self) -> Partition {
        from_core_quot(self, &vec![Partition::empty(); self.r()])
    }
}

impl fmt::Display for CoreLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.charges.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// The i-th quotient subdiagram `n -> m(i + n r)`, before recentering.
fn subdiagram(m: &MayaDiagram, i: usize, r: usize) -> MayaDiagram {
    let lo = m.flips.iter().next().copied().unwrap_or(0).min(0) / r as i64 - 2;
    let hi = m.flips.iter().next_back().copied().unwrap_or(0).max(0) / r as i64 + 2;
    MayaDiagram::from_values(|n| m.value(i as i64 + n * r as i64), lo, hi)
}

/// Core-quotient decomposition: returns the r-core, the r quotient
/// partitions, and the charge vector.
pub fn core_quot(lambda: &Partition, r: usize) -> (Partition, Vec<Partition>, CoreLabel) {
    assert!(r >= 1);
    let m = maya_of(lambda);
    let mut charges = Vec::with_capacity(r);
    let mut quots = Vec::with_capacity(r);
    for i in 0..r {
        let sub = subdiagram(&m, i, r);
        let c = sub.charge();
        charges.push(c);
        let centered = sub.shift(c);
        quots.push(partition_of(&centered).expect("recentered subdiagram has charge 0"));
    }
    let label = CoreLabel::new(charges);
    let core = label.to_partition();
    (core, quots, label)
}

/// Rebuild a partition from charges and quotient partitions.
pub fn from_core_quot(label: &CoreLabel, quots: &[Partition]) -> Partition {
    let r = label.r();
    assert_eq!(quots.len(), r);
    let subs: Vec<MayaDiagram> = quots
        .iter()
        .zip(label.charges())
        .map(|(q, &c)| maya_of(q).shift(-c))
        .collect();
    let extent: i64 = (0..r)
        .map(|i| {
            let f = &subs[i].flips;
            let a = f.iter().next().copied().unwrap_or(0).abs();
            let b = f.iter().next_back().copied().unwrap_or(0).abs();
            a.max(b) + 2
        })
        .max()
        .unwrap()
        * r as i64
        + r as i64;
    let m = MayaDiagram::from_values(
        |n| {
            let i = n.rem_euclid(r as i64) as usize;
            let k = (n - i as i64) / r as i64;
            subs[i].value(k)
        },
        -extent,
        extent,
    );
    partition_of(&m).expect("total charge is zero")
}

/// A permutation of `{0, .., r-1}` acting on quotient subdiagrams by
/// `m_i(pi . lambda) = m_{pi(i)}(lambda)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotPerm {
    map: Vec<usize>,
}

impl QuotPerm {
    pub fn new(map: Vec<usize>) -> Self {
        let mut seen = vec![false; map.len()];
        for &i in &map {
            assert!(i < map.len() && !seen[i], "not a permutation: {:?}", map);
            seen[i] = true;
        }
        QuotPerm { map }
    }

    pub fn identity(r: usize) -> Self {
        QuotPerm {
            map: (0..r).collect(),
        }
    }

    /// The long cycle: `pi(i) = i - 1 mod r`.
    pub fn sigma(r: usize) -> Self {
        QuotPerm {
            map: (0..r).map(|i| (i + r - 1) % r).collect(),
        }
    }

    /// The longest element: `pi(i) = r - 1 - i`.
    pub fn w0(r: usize) -> Self {
        QuotPerm {
            map: (0..r).rev().collect(),
        }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// Composition such that acting with `self.then(other)` equals acting
    /// with `other` after `self`.
    pub fn then(&self, other: &QuotPerm) -> QuotPerm {
        // (other ∘ self on diagrams): m_i((self.then(other)) λ) = m_{self(other(i))}(λ)
        QuotPerm {
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> QuotPerm {
        let mut out = QuotPerm::identity(self.map.len());
        for _ in 0..k {
            out = out.then(self);
        }
        out
    }
}

/// Act on a partition by permuting its quotient subdiagrams.
pub fn perm_act(lambda: &Partition, pi: &QuotPerm) -> Partition {
    let r = pi.map.len();
    let m = maya_of(lambda);
    let subs: Vec<MayaDiagram> = (0..r).map(|i| subdiagram(&m, pi.apply(i), r)).collect();
    let extent: i64 = {
        let f = &m.flips;
        let a = f.iter().next().copied().unwrap_or(0).abs();
        let b = f.iter().next_back().copied().unwrap_or(0).abs();
        (a.max(b) + 2 * r as i64) * 2
    };
    let new = MayaDiagram::from_values(
        |n| {
            let i = n.rem_euclid(r as i64) as usize;
            let k = (n - i as i64) / r as i64;
            subs[i].value(k)
        },
        -extent,
        extent,
    );
    partition_of(&new).expect("permutation preserves total charge")
}

pub fn sigma_act(lambda: &Partition, r: usize) -> Partition {
    perm_act(lambda, &QuotPerm::sigma(r))
}

pub fn w0_act(lambda: &Partition, r: usize) -> Partition {
    perm_act(lambda, &QuotPerm::w0(r))
}

pub fn sigma_act_pow(lambda: &Partition, r: usize, k: i64) -> Partition {
    let k = k.rem_euclid(r as i64) as usize;
    perm_act(lambda, &QuotPerm::sigma(r).pow(k))
}

/// All partitions with the given core and quotient size `n`, sorted
/// lexicographically by parts.
pub fn enumerate(label: &CoreLabel, n: u32) -> Vec<Partition> {
    let r = label.r();
    let mut out = Vec::new();
    for tuple in multipartitions(n, r) {
        out.push(from_core_quot(label, &tuple));
    }
    out.sort();
    out.dedup();
    out
}

/// All r-tuples of partitions with total size n (deterministic order).
pub fn multipartitions(n: u32, r: usize) -> Vec<Vec<Partition>> {
    fn rec(n: u32, r: usize, cur: &mut Vec<Partition>, out: &mut Vec<Vec<Partition>>) {
        if r == 1 {
            for p in Partition::all(n) {
                cur.push(p);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for k in 0..=n {
            for p in Partition::all(k) {
                cur.push(p);
                rec(n - k, r - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, r, &mut Vec::new(), &mut out);
    out
}

/// A color-indexed family of rational functions: one component per residue
/// class of box contents. Houses the colored box sums `B`, the critical
/// sums `D`, their star variants and the geometric components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColoredCharSum {
    components: Vec<RatFunc>,
}

impl ColoredCharSum {
    pub fn zero(r: usize) -> Self {
        ColoredCharSum {
            components: vec![RatFunc::zero(); r],
        }
    }

    pub fn from_components(components: Vec<RatFunc>) -> Self {
        ColoredCharSum { components }
    }

    pub fn r(&self) -> usize {
        self.components.len()
    }

    /// Component of color `i` (any integer; reduced mod r).
    pub fn get(&self, i: i64) -> &RatFunc {
        &self.components[i.rem_euclid(self.r() as i64) as usize]
    }

    pub fn add_to(&mut self, i: i64, v: RatFunc) {
        let r = self.r() as i64;
        let idx = i.rem_euclid(r) as usize;
        self.components[idx] = self.components[idx].clone() + v;
    }

    pub fn total(&self) -> RatFunc {
        self.components
            .iter()
            .cloned()
            .fold(RatFunc::zero(), |a, b| a + b)
    }

    pub fn neg(&self) -> ColoredCharSum {
        ColoredCharSum {
            components: self.components.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn add(&self, other: &ColoredCharSum) -> ColoredCharSum {
        assert_eq!(self.r(), other.r());
        ColoredCharSum {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    /// Index shift: the result's color-i component is `self`'s color-(i+k).
    pub fn shift(&self, k: i64) -> ColoredCharSum {
        let r = self.r();
        ColoredCharSum {
            components: (0..r).map(|i| self.get(i as i64 + k).clone()).collect(),
        }
    }

    /// Reverse colors: the result's color-i component is `self`'s color-(-i).
    pub fn iota(&self) -> ColoredCharSum {
        let r = self.r();
        ColoredCharSum {
            components: (0..r).map(|i| self.get(-(i as i64)).clone()).collect(),
        }
    }

    /// Invert `q` and `t` in every component (colors assigned beforehand).
    pub fn star(&self) -> ColoredCharSum {
        ColoredCharSum {
            components: self.components.iter().map(|c| c.invert_qt()).collect(),
        }
    }

    pub fn scale(&self, s: &RatFunc) -> ColoredCharSum {
        ColoredCharSum {
            components: self
                .components
                .iter()
                .map(|c| c.clone() * s.clone())
                .collect(),
        }
    }

    /// Colored division by `(1-q)(1-t)`: component `p` of `S/((1-q)(1-t))`
    /// equals `sum_{j,k=0}^{r-1} q^j t^k S^{(p+j-k)} / ((1-q^r)(1-t^r))`.
    pub fn div_one_minus_q_one_minus_t(&self) -> ColoredCharSum {
        let r = self.r();
        let den = RatFunc::from_poly(
            &crate::ratfield::one_minus(Monomial::var(GEN_Q, r as i32))
                * &crate::ratfield::one_minus(Monomial::var(GEN_T, r as i32)),
        );
        let mut components = Vec::with_capacity(r);
        for p in 0..r as i64 {
            let mut num = RatFunc::zero();
            for j in 0..r as i64 {
                for k in 0..r as i64 {
                    let mono = RatFunc::monomial(
                        Monomial::var(GEN_Q, j as i32).mul(&Monomial::var(GEN_T, k as i32)),
                    );
                    num = num + mono * self.get(p + j - k).clone();
                }
            }
            components.push(num / den.clone());
        }
        ColoredCharSum { components }
    }

    /// The geometric colored sum `1/((1-q)(1-t))` split by color.
    pub fn geometric(r: usize) -> ColoredCharSum {
        let mut one = ColoredCharSum::zero(r);
        one.add_to(0, RatFunc::one());
        one.div_one_minus_q_one_minus_t()
    }
}

/// The colored box sum `B` of a partition: component i collects `q^a t^b`
/// over boxes of color i.
pub fn b_sum(lambda: &Partition, r: usize) -> ColoredCharSum {
    let mut out = ColoredCharSum::zero(r);
    for (a, b) in lambda.boxes() {
        out.add_to(b as i64 - a as i64, Partition::box_char(a, b));
    }
    out
}

/// The colored sum `D = (1-q)(1-t) B - 1`, componentwise:
/// `D^{(i)} = (1+qt) B^{(i)} - q B^{(i+1)} - t B^{(i-1)} - delta_{i,0}`.
pub fn d_sum(lambda: &Partition, r: usize) -> ColoredCharSum {
    let b = b_sum(lambda, r);
    let q = RatFunc::var(GEN_Q);
    let t = RatFunc::var(GEN_T);
    let qt = q.clone() * t.clone();
    let mut components = Vec::with_capacity(r);
    for i in 0..r as i64 {
        let mut v = (RatFunc::one() + qt.clone()) * b.get(i).clone();
        v = v - q.clone() * b.get(i + 1).clone();
        v = v - t.clone() * b.get(i - 1).clone();
        if i == 0 {
            v = v - RatFunc::one();
        }
        components.push(v);
    }
    ColoredCharSum { components }
}

/// `D` via addable/removable corners: `qt * sum_{removable of color i} chi
/// - sum_{addable of color i} chi`.
pub fn d_sum_corners(lambda: &Partition, r: usize) -> ColoredCharSum {
    let qt = RatFunc::monomial(Monomial::var(GEN_Q, 1).mul(&Monomial::var(GEN_T, 1)));
    let mut out = ColoredCharSum::zero(r);
    for (a, b) in lambda.removable() {
        out.add_to(
            b as i64 - a as i64,
            qt.clone() * Partition::box_char(a, b),
        );
    }
    for (a, b) in lambda.addable() {
        out.add_to(b as i64 - a as i64, -Partition::box_char(a, b));
    }
    out
}

/// Colored box character sums of both kinds.
pub fn char_sums(lambda: &Partition, r: usize) -> (ColoredCharSum, ColoredCharSum) {
    (b_sum(lambda, r), d_sum(lambda, r))
}

/// Product of `(-chi)` over boxes of the given color in `lambda \ core`.
pub fn nabla_eigenvalue(lambda: &Partition, core: &Partition, r: usize, color: usize) -> RatFunc {
    let mut acc = RatFunc::one();
    for (a, b) in lambda.boxes() {
        if core.contains_box(a, b) {
            continue;
        }
        if Partition::color_of(a, b, r) == color {
            acc = acc * (-Partition::box_char(a, b));
        }
    }
    acc
}

/// Product of `(1 - u chi)` over boxes of the given color in
/// `lambda \ core` (used by the evaluation identities).
pub fn one_minus_u_chi_product(
    lambda: &Partition,
    core: &Partition,
    r: usize,
    color: usize,
) -> RatFunc {
    let u = RatFunc::var(crate::ratfield::GEN_U);
    let mut acc = RatFunc::one();
    for (a, b) in lambda.boxes() {
        if core.contains_box(a, b) {
            continue;
        }
        if Partition::color_of(a, b, r) == color {
            acc = acc * (RatFunc::one() - u.clone() * Partition::box_char(a, b));
        }
    }
    acc
}

/// Number of boxes of a given color.
pub fn color_count(lambda: &Partition, r: usize, color: usize) -> usize {
    lambda
        .boxes()
        .filter(|&(a, b)| Partition::color_of(a, b, r) == color)
        .count()
}

/// `q^a t^b` monomial set of the boxes of one color, for set comparisons.
pub fn color_boxes(lambda: &Partition, r: usize, color: usize) -> BTreeSet<(u32, u32)> {
    lambda
        .boxes()
        .filter(|&(a, b)| Partition::color_of(a, b, r) == color)
        .collect()
}

/// Is the partition an r-core (no removable ribbon of length r)?
pub fn is_core(lambda: &Partition, r: usize) -> bool {
    let (_, quots, _) = core_quot(lambda, r);
    quots.iter().all(|q| q.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn maya_of_empty_is_vacuum() {
        assert_eq!(maya_of(&Partition::empty()), MayaDiagram::vacuum());
    }

    #[test]
    fn maya_of_422_matches_bead_pattern() {
        // Gaps at 3, 0, -1, -4; beads at 2, 1, -2, -3, -5.
        let m = maya_of(&p(&[4, 2, 2]));
        for (n, v) in [
            (3, -1),
            (2, 1),
            (1, 1),
            (0, -1),
            (-1, -1),
            (-2, 1),
            (-3, 1),
            (-4, -1),
            (-5, 1),
            (4, -1),
            (-6, 1),
        ] {
            assert_eq!(m.value(n), v, "at position {}", n);
        }
        assert_eq!(m.charge(), 0);
    }

    #[test]
    fn maya_roundtrip_exhaustive() {
        for n in 0..=8u32 {
            for lam in Partition::all(n) {
                let m = maya_of(&lam);
                assert_eq!(m.charge(), 0);
                assert_eq!(partition_of(&m).unwrap(), lam);
            }
        }
    }

    #[test]
    fn partition_of_rejects_nonzero_charge() {
        let m = maya_of(&p(&[2, 1])).shift(1);
        assert!(partition_of(&m).is_err());
    }

    #[test]
    fn core_quot_422() {
        let (core, quots, label) = core_quot(&p(&[4, 2, 2]), 3);
        assert_eq!(core, p(&[1, 1]));
        assert_eq!(
            quots,
            vec![Partition::empty(), Partition::empty(), p(&[1, 1])]
        );
        assert_eq!(label.charges(), &[0, 1, -1]);
    }

    #[test]
    fn core_quot_empty() {
        for r in 1..=4 {
            let (core, quots, label) = core_quot(&Partition::empty(), r);
            assert!(core.is_empty());
            assert!(quots.iter().all(|q| q.is_empty()));
            assert_eq!(label, CoreLabel::zero(r));
        }
    }

    #[test]
    fn core_quot_roundtrip_and_size() {
        for r in [2usize, 3, 4] {
            for n in 0..=8u32 {
                for lam in Partition::all(n) {
                    let (core, quots, label) = core_quot(&lam, r);
                    let qsize: u32 = quots.iter().map(|q| q.size()).sum();
                    assert_eq!(lam.size(), core.size() + r as u32 * qsize);
                    assert_eq!(from_core_quot(&label, &quots), lam);
                    assert_eq!(label.to_partition(), core);
                }
            }
        }
    }

    #[test]
    fn charge_identity_addable_removable() {
        // #A_i - #R_i = delta_{i,0} + c_{i-1} - c_i
        for r in [2usize, 3, 4] {
            for n in 0..=8u32 {
                for lam in Partition::all(n) {
                    let (_, _, label) = core_quot(&lam, r);
                    let c = label.charges();
                    for i in 0..r {
                        let a = lam
                            .addable()
                            .iter()
                            .filter(|&&(x, y)| Partition::color_of(x, y, r) == i)
                            .count() as i64;
                        let rm = lam
                            .removable()
                            .iter()
                            .filter(|&&(x, y)| Partition::color_of(x, y, r) == i)
                            .count() as i64;
                        let delta = if i == 0 { 1 } else { 0 };
                        let prev = c[(i + r - 1) % r];
                        assert_eq!(a - rm, delta + prev - c[i], "r={} lam={} i={}", r, lam, i);
                    }
                }
            }
        }
    }

    #[test]
    fn perm_act_examples() {
        let lam = p(&[4, 2, 2]);
        assert_eq!(w0_act(&lam, 3), p(&[6, 4]));
        assert_eq!(sigma_act(&lam, 3), p(&[6, 4, 1]));
        assert_eq!(sigma_act_pow(&lam, 3, 2), p(&[5, 3]));
        assert_eq!(perm_act(&lam, &QuotPerm::identity(3)), lam);
    }

    #[test]
    fn perm_act_is_group_action() {
        let sigma = QuotPerm::sigma(3);
        let w0 = QuotPerm::w0(3);
        for n in 0..=6u32 {
            for lam in Partition::all(n) {
                // sigma^3 = id, w0^2 = id
                assert_eq!(sigma_act_pow(&lam, 3, 3), lam);
                assert_eq!(w0_act(&w0_act(&lam, 3), 3), lam);
                // composite = composed action
                let ab = perm_act(&perm_act(&lam, &sigma), &w0);
                assert_eq!(ab, perm_act(&lam, &sigma.then(&w0)));
                // cores transform with the same permutation
                let (_, _, label) = core_quot(&lam, 3);
                let (_, _, label_s) = core_quot(&sigma_act(&lam, 3), 3);
                assert_eq!(label_s, label.sigma());
                let (_, _, label_w) = core_quot(&w0_act(&lam, 3), 3);
                assert_eq!(label_w, label.w0());
            }
        }
    }

    #[test]
    fn sigma_w0_relation_on_cores() {
        // sigma . w0 = w0 . sigma^{-1} on charge vectors
        let label = CoreLabel::new(vec![2, -1, -1]);
        assert_eq!(label.w0().sigma(), label.sigma_pow(-1).w0());
    }

    #[test]
    fn color0_boxes_invariant_under_w0_and_sigma() {
        for n in 0..=8u32 {
            for lam in Partition::all(n) {
                let c0 = color_boxes(&lam, 3, 0);
                assert_eq!(color_boxes(&w0_act(&lam, 3), 3, 0), c0);
                assert_eq!(color_boxes(&sigma_act(&lam, 3), 3, 0), c0);
                // color-k boxes match for w0 sigma^{-k} = sigma^k w0
                for k in 1..3usize {
                    let tw = perm_act(
                        &lam,
                        &QuotPerm::w0(3).then(&QuotPerm::sigma(3).pow(k)),
                    );
                    let tw2 = perm_act(
                        &lam,
                        &QuotPerm::sigma(3).pow(3 - k).then(&QuotPerm::w0(3)),
                    );
                    assert_eq!(tw, tw2, "sigma^k w0 = w0 sigma^{{-k}} on partitions");
                    assert_eq!(color_boxes(&tw, 3, k), color_boxes(&lam, 3, k));
                }
            }
        }
    }

    #[test]
    fn adding_full_color_orbit_preserves_core() {
        // Adding one box of each color never changes the core.
        for n in 0..=6u32 {
            for lam in Partition::all(n) {
                let (core, _, _) = core_quot(&lam, 3);
                // add 3 boxes, one of each color, greedily when possible
                let mut cur = lam.clone();
                let mut got = [false; 3];
                let mut progress = true;
                while progress && !(got[0] && got[1] && got[2]) {
                    progress = false;
                    for (a, b) in cur.addable() {
                        let col = Partition::color_of(a, b, 3);
                        if !got[col] {
                            cur = cur.add_box(a, b);
                            got[col] = true;
                            progress = true;
                            break;
                        }
                    }
                }
                if got[0] && got[1] && got[2] {
                    let (core2, _, _) = core_quot(&cur, 3);
                    assert_eq!(core, core2, "lam={}", lam);
                }
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let e0 = enumerate(&CoreLabel::zero(3), 0);
        assert_eq!(e0, vec![Partition::empty()]);
        let e1 = enumerate(&CoreLabel::zero(3), 1);
        assert_eq!(e1.len(), 3);
        for lam in &e1 {
            assert_eq!(lam.size(), 3);
            let (core, quots, _) = core_quot(lam, 3);
            assert!(core.is_empty());
            assert_eq!(quots.iter().map(|q| q.size()).sum::<u32>(), 1);
        }
        // core (1,1): charges (0,1,-1)
        let label = CoreLabel::new(vec![0, 1, -1]);
        assert_eq!(label.to_partition(), p(&[1, 1]));
        let e11 = enumerate(&label, 1);
        assert_eq!(e11.len(), 3);
        for lam in &e11 {
            assert_eq!(lam.size(), 5);
        }
        // (4,2,2) has quotient size 2, so it appears at n = 2
        let e112 = enumerate(&label, 2);
        assert!(e112.contains(&p(&[4, 2, 2])));
        assert_eq!(e112.len(), 9); // multipartitions of 2 into 3 colors
    }

    #[test]
    fn d_sum_two_routes_agree() {
        for r in [1usize, 2, 3, 4] {
            for n in 0..=7u32 {
                for lam in Partition::all(n) {
                    assert_eq!(d_sum(&lam, r), d_sum_corners(&lam, r), "r={} lam={}", r, lam);
                }
            }
        }
    }

    #[test]
    fn d_sum_empty() {
        let d = d_sum(&Partition::empty(), 3);
        assert_eq!(d.get(0), &RatFunc::from_int(-1));
        assert!(d.get(1).is_zero());
        assert!(d.get(2).is_zero());
    }

    #[test]
    fn d_total_identity() {
        // sum_i D^{(i)} = (1-q)(1-t) sum_i B^{(i)} - 1
        let q = RatFunc::var(GEN_Q);
        let t = RatFunc::var(GEN_T);
        for lam in Partition::all(5) {
            let (b, d) = char_sums(&lam, 3);
            let lhs = d.total();
            let rhs = (RatFunc::one() - q.clone()) * (RatFunc::one() - t.clone()) * b.total()
                - RatFunc::one();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn b_sum_422_color0() {
        // Boxes of (4,2,2) with color 0 (r=3): (0,0), (3,0), (1,1).
        let b = b_sum(&p(&[4, 2, 2]), 3);
        let expect = RatFunc::one()
            + RatFunc::monomial(Monomial::var(GEN_Q, 3))
            + RatFunc::monomial(Monomial::var(GEN_Q, 1).mul(&Monomial::var(GEN_T, 1)));
        assert_eq!(b.get(0), &expect);
    }

    #[test]
    fn geometric_component_series() {
        use crate::ratfield::series::series_expand;
        // (1/((1-q)(1-t)))^{(i)} agrees with the order-12 expansion of the
        // full geometric sum, filtered by color.
        let r = 3usize;
        let geo = ColoredCharSum::geometric(r);
        let full = RatFunc::new(
            MultiPoly::one(),
            &crate::ratfield::one_minus(Monomial::var(GEN_Q, 1))
                * &crate::ratfield::one_minus(Monomial::var(GEN_T, 1)),
        );
        let s = series_expand(&full, &[GEN_Q, GEN_T], 12).unwrap();
        for i in 0..r {
            let comp = series_expand(geo.get(i as i64), &[GEN_Q, GEN_T], 12).unwrap();
            // collect the color-i part of the full expansion
            let mut expect = comp.clone();
            expect.terms.clear();
            for (e, c) in &s.terms {
                let color = (e[1] as i64 - e[0] as i64).rem_euclid(r as i64) as usize;
                if color == i {
                    expect.terms.insert(e.clone(), c.clone());
                }
            }
            assert_eq!(comp.terms, expect.terms, "color {}", i);
        }
    }

    #[test]
    fn is_core_examples() {
        assert!(is_core(&p(&[1, 1]), 3));
        assert!(is_core(&p(&[3, 1, 1]), 3));
        assert!(!is_core(&p(&[3]), 3));
        assert!(!is_core(&p(&[4, 2, 2]), 3));
    }
}
