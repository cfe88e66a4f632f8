//! The constant-term engine for the diagonal operator series: products of
//! a cyclic rational prefactor, an omega-multiplier, a translation with
//! inverse-variable arguments, and charge monomials, evaluated on labeled
//! symmetric functions and reduced to a prescribed coefficient in the
//! auxiliary variables.
//!
//! Everything is computed in series mode: the deformation parameters are
//! truncated in total degree at a configurable order (with an exact
//! rational coefficient at every retained term), and the auxiliary
//! exponents live in a window wide enough to provably contain every
//! contributing term; mass on the window boundary is a hard failure.

use crate::partitions::{ColoredCharSum, CoreLabel, Partition};
use crate::ratfield::series::{series_expand, TruncSeries};
use crate::ratfield::{Monomial, RatFunc, GEN_Q, GEN_T};
use crate::symfunc::{en_color, hn_color, ColoredIndex, MultiSymFunc};
use crate::wreath::WreathPoly;
use std::collections::BTreeMap;

/// A symmetric function with series coefficients: the output type of the
/// engine.
#[derive(Clone)]
pub struct SeriesSym {
    pub r: usize,
    pub order: i32,
    /// True when the series live in the inverted-parameter region (the
    /// stored exponents are powers of `1/q`, `1/t`).
    pub star: bool,
    pub terms: BTreeMap<ColoredIndex, TruncSeries>,
}

impl SeriesSym {
    pub fn zero(r: usize, order: i32, star: bool) -> Self {
        SeriesSym {
            r,
            order,
            star,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, idx: ColoredIndex, s: TruncSeries) {
        if s.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(s);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&s);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Compare to another series element up to total degree `order`.
    pub fn eq_to_order(&self, other: &SeriesSym, order: i32) -> bool {
        assert_eq!(self.star, other.star);
        let keys: std::collections::BTreeSet<_> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .cloned()
            .collect();
        for k in keys {
            let a = self
                .terms
                .get(&k)
                .cloned()
                .unwrap_or_else(|| TruncSeries::zero(vec![GEN_Q, GEN_T], order));
            let b = other
                .terms
                .get(&k)
                .cloned()
                .unwrap_or_else(|| TruncSeries::zero(vec![GEN_Q, GEN_T], order));
            assert!(
                a.order >= order && b.order >= order,
                "series precision too low for the requested comparison"
            );
            if a.truncate(order).terms != b.truncate(order).terms {
                return false;
            }
        }
        true
    }

    /// First mismatching coefficient against another element, for reports.
    pub fn first_mismatch(&self, other: &SeriesSym, order: i32) -> Option<String> {
        let keys: std::collections::BTreeSet<_> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .cloned()
            .collect();
        for k in keys {
            let a = self
                .terms
                .get(&k)
                .cloned()
                .unwrap_or_else(|| TruncSeries::zero(vec![GEN_Q, GEN_T], order));
            let b = other
                .terms
                .get(&k)
                .cloned()
                .unwrap_or_else(|| TruncSeries::zero(vec![GEN_Q, GEN_T], order));
            let ta = a.truncate(order);
            let tb = b.truncate(order);
            if ta.terms != tb.terms {
                for (e, c) in &ta.terms {
                    if tb.coefficient(e) != *c {
                        return Some(format!(
                            "index {} exponent {:?}: {} vs {}",
                            k,
                            e,
                            c,
                            tb.coefficient(e)
                        ));
                    }
                }
                for (e, c) in &tb.terms {
                    if ta.coefficient(e) != *c {
                        return Some(format!(
                            "index {} exponent {:?}: {} vs {}",
                            k,
                            e,
                            ta.coefficient(e),
                            c
                        ));
                    }
                }
            }
        }
        None
    }
}

/// Expand an exact rational function in the engine's region.
pub fn expand_region(f: &RatFunc, star: bool, order: i32) -> Result<TruncSeries, String> {
    let g = if star {
        f.substitute(&|g| {
            if g == GEN_Q || g == GEN_T {
                Some(RatFunc::monomial(Monomial::var(g, -1)))
            } else {
                None
            }
        })
    } else {
        f.clone()
    };
    series_expand(&g, &[GEN_Q, GEN_T], order)
}

/// Expand an exact element into series coefficients.
pub fn series_of_msf(f: &MultiSymFunc, star: bool, order: i32) -> Result<SeriesSym, String> {
    let mut out = SeriesSym::zero(f.r(), order, star);
    for (idx, c) in f.coeffs() {
        out.add_term(idx.clone(), expand_region(c, star, order)?);
    }
    Ok(out)
}

/// A one-current-per-color-per-slot constant-term operator.
#[derive(Clone)]
pub struct CtOperator {
    pub r: usize,
    /// Number of current slots; the auxiliary variables are indexed by
    /// `slot * r + color`.
    pub slots: usize,
    pub star: bool,
    /// Overall scalar prefactor.
    pub scalar: RatFunc,
    /// Fixed auxiliary monomial, exponent per variable.
    pub zmono: Vec<i32>,
    /// Geometric factors `1/(1 - m z_a / z_b)`, with `m` small in the
    /// operator's region.
    pub geom: Vec<(Monomial, usize, usize)>,
    /// Polynomial factors `(1 - m z_a / z_b)`.
    pub poly: Vec<(Monomial, usize, usize)>,
    /// Omega-multiplier sign: `true` for the negative alphabet (elementary
    /// expansion), `false` for the positive one (homogeneous expansion).
    pub omega_negative: bool,
    /// Translation items: color `j` is shifted by
    /// `sum_slots sum_items coeff * z_{j+shift, slot}^{-1}`.
    pub t_items: Vec<(RatFunc, i64)>,
    /// Charge-monomial sign: `+1` for inverse-charge exponents
    /// (`c_i - c_{i-1}` per variable of color i), `-1` for the reverse.
    pub h_sign: i64,
}

impl CtOperator {
    fn var(&self, color: i64, slot: usize) -> usize {
        slot * self.r + color.rem_euclid(self.r as i64) as usize
    }

    /// Add `1/(1 - m z_a/z_b)`, normalizing monomials that are large in the
    /// region into small ones by inverting the factor.
    fn push_geom(&mut self, m: RatFunc, a: usize, b: usize) {
        assert!(m.den().is_one() || m.num().is_one(), "monomial expected");
        // represent as a Laurent monomial with integer coefficient 1
        let mono = {
            let (nm, _nc) = m.num().leading().map(|(x, c)| (x.clone(), c.clone())).unwrap();
            let dm = m.den().leading().map(|(x, _)| x.clone()).unwrap();
            nm.mul(&dm.inv())
        };
        let mirrored: Vec<i32> = mono.exps().iter().map(|&(_, e)| if self.star { -e } else { e }).collect();
        if mirrored.iter().all(|&e| e >= 0) && mirrored.iter().any(|&e| e > 0) {
            self.geom.push((mono, a, b));
        } else if mirrored.iter().all(|&e| e <= 0) {
            // 1/(1 - m za/zb) = (-1/m)(zb/za) / (1 - (1/m) zb/za)
            let inv = mono.inv();
            self.scalar = self.scalar.clone() * (-RatFunc::monomial(inv.clone()));
            self.zmono[b] += 1;
            self.zmono[a] -= 1;
            self.geom.push((inv, b, a));
        } else {
            panic!("geometric monomial {} is neither small nor large", mono);
        }
    }
}

/// The principal diagonal-series operator (one current per color), in the
/// plain or inverted-parameter region.
pub fn dd_operator(r: usize, star: bool) -> CtOperator {
    let q = RatFunc::var(GEN_Q);
    let t = RatFunc::var(GEN_T);
    let qt = q.clone() * t.clone();
    let mut op = CtOperator {
        r,
        slots: 1,
        star,
        scalar: if star {
            (RatFunc::one() - qt.clone().inv()).pow(r as i64 - 1)
        } else {
            (RatFunc::one() - qt.clone()).pow(r as i64 - 1)
        },
        zmono: vec![0; r],
        geom: Vec::new(),
        poly: Vec::new(),
        omega_negative: !star,
        t_items: if star {
            vec![
                (-(RatFunc::one() + qt.clone().inv()), 0),
                (t.inv(), -1),
                (q.inv(), 1),
            ]
        } else {
            vec![(RatFunc::one() + qt.clone(), 0), (-q.clone(), -1), (-t.clone(), 1)]
        },
        h_sign: if star { -1 } else { 1 },
    };
    for i in 0..r as i64 {
        if star {
            op.push_geom(
                RatFunc::monomial(Monomial::var(GEN_T, -1)),
                op.var(i + 1, 0),
                op.var(i, 0),
            );
            op.push_geom(
                RatFunc::monomial(Monomial::var(GEN_Q, -1)),
                op.var(i, 0),
                op.var(i + 1, 0),
            );
        } else {
            op.push_geom(
                RatFunc::monomial(Monomial::var(GEN_Q, 1)),
                op.var(i + 1, 0),
                op.var(i, 0),
            );
            op.push_geom(
                RatFunc::monomial(Monomial::var(GEN_T, 1)),
                op.var(i, 0),
                op.var(i + 1, 0),
            );
        }
    }
    op
}

/// The column-type operator for `n` currents per color at distinguished
/// color `p`; `adjoint` selects the dual-basis variant.
pub fn column_operator(r: usize, n: usize, p: i64, adjoint: bool) -> CtOperator {
    let q = RatFunc::var(GEN_Q);
    let t = RatFunc::var(GEN_T);
    let qt = q.clone() * t.clone();
    let mut scalar = t.pow(n as i64);
    for k in 1..=n as i64 {
        scalar = scalar / (RatFunc::one() - qt.pow(k));
    }
    scalar = scalar * (RatFunc::one() - qt.clone()).pow((n * r) as i64);
    let mut op = CtOperator {
        r,
        slots: n,
        star: false,
        scalar,
        zmono: vec![0; r * n],
        geom: Vec::new(),
        poly: Vec::new(),
        omega_negative: true,
        t_items: vec![(RatFunc::one() + qt.clone(), 0), (-q.clone(), -1), (-t.clone(), 1)],
        h_sign: 1,
    };
    let qm = Monomial::var(GEN_Q, 1);
    let tm = Monomial::var(GEN_T, 1);
    let qtm = qm.mul(&tm);
    for a in 0..n {
        for i in 0..r as i64 {
            if i == p.rem_euclid(r as i64) {
                op.push_geom(RatFunc::monomial(tm.clone()), op.var(p, a), op.var(p + 1, a));
            } else {
                op.push_geom(RatFunc::monomial(tm.clone()), op.var(i, a), op.var(i + 1, a));
                op.push_geom(RatFunc::monomial(qm.clone()), op.var(i + 1, a), op.var(i, a));
            }
        }
        if adjoint {
            { let v = op.var(0, a); op.zmono[v] += 1; }
            { let v = op.var(p + 1, a); op.zmono[v] -= 1; }
        } else {
            { let v = op.var(p, a); op.zmono[v] += 1; }
            { let v = op.var(0, a); op.zmono[v] -= 1; }
        }
    }
    // cross factors between slots
    for a in 0..n {
        for b in (a + 1)..n {
            for i in 0..r as i64 {
                op.poly.push((Monomial::one(), op.var(i, a), op.var(i, b)));
                op.poly.push((qtm.clone(), op.var(i, a), op.var(i, b)));
                if i == p.rem_euclid(r as i64) {
                    op.push_geom(
                        RatFunc::monomial(tm.inv()),
                        op.var(p + 1, a),
                        op.var(p, b),
                    );
                    op.push_geom(RatFunc::monomial(tm.clone()), op.var(p - 1, a), op.var(p, b));
                } else {
                    op.push_geom(RatFunc::monomial(qm.clone()), op.var(i + 1, a), op.var(i, b));
                    op.push_geom(RatFunc::monomial(tm.clone()), op.var(i - 1, a), op.var(i, b));
                }
            }
        }
    }
    op
}

/// The row-type operator for `n` currents per color at distinguished color
/// `p`; `adjoint` selects the dual-basis variant.
pub fn row_operator(r: usize, n: usize, p: i64, adjoint: bool) -> CtOperator {
    let q = RatFunc::var(GEN_Q);
    let t = RatFunc::var(GEN_T);
    let qt = q.clone() * t.clone();
    let mut scalar = RatFunc::from_int(if n % 2 == 0 { 1 } else { -1 });
    for k in 1..=n as i64 {
        scalar = scalar / (RatFunc::one() - qt.pow(k));
    }
    scalar = scalar * (RatFunc::one() - qt.clone()).pow((n * r) as i64);
    let mut op = CtOperator {
        r,
        slots: n,
        star: false,
        scalar,
        zmono: vec![0; r * n],
        geom: Vec::new(),
        poly: Vec::new(),
        omega_negative: true,
        t_items: vec![(RatFunc::one() + qt.clone(), 0), (-q.clone(), -1), (-t.clone(), 1)],
        h_sign: 1,
    };
    let qm = Monomial::var(GEN_Q, 1);
    let tm = Monomial::var(GEN_T, 1);
    let qtm = qm.mul(&tm);
    // special color: p+1 for the plain variant, p for the adjoint
    let sp = if adjoint { p } else { p + 1 };
    for a in 0..n {
        for i in 0..r as i64 {
            if i == sp.rem_euclid(r as i64) {
                op.push_geom(RatFunc::monomial(qm.clone()), op.var(sp, a), op.var(sp - 1, a));
            } else {
                op.push_geom(RatFunc::monomial(qm.clone()), op.var(i, a), op.var(i - 1, a));
                op.push_geom(RatFunc::monomial(tm.clone()), op.var(i - 1, a), op.var(i, a));
            }
        }
        { let v = op.var(0, a); op.zmono[v] -= 1; }
        { let v = op.var(sp, a); op.zmono[v] += 1; }
        if adjoint {
            // (z_0/z_p): flip the monomial orientation
            { let v = op.var(0, a); op.zmono[v] += 2; }
            { let v = op.var(sp, a); op.zmono[v] -= 2; }
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            for i in 0..r as i64 {
                op.poly.push((Monomial::one(), op.var(i, a), op.var(i, b)));
                op.poly.push((qtm.clone(), op.var(i, a), op.var(i, b)));
                if i == sp.rem_euclid(r as i64) {
                    op.push_geom(RatFunc::monomial(qm.inv()), op.var(sp - 1, a), op.var(sp, b));
                    op.push_geom(RatFunc::monomial(qm.clone()), op.var(sp + 1, a), op.var(sp, b));
                } else {
                    op.push_geom(RatFunc::monomial(qm.clone()), op.var(i + 1, a), op.var(i, b));
                    op.push_geom(RatFunc::monomial(tm.clone()), op.var(i - 1, a), op.var(i, b));
                }
            }
        }
    }
    op
}

type State = BTreeMap<(ColoredIndex, Vec<i32>), TruncSeries>;

fn state_add(state: &mut State, key: (ColoredIndex, Vec<i32>), s: TruncSeries) {
    if s.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match state.entry(key) {
        Entry::Vacant(e) => {
            e.insert(s);
        }
        Entry::Occupied(mut e) => {
            let sum = e.get().add(&s);
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// Shift a series by an exact monomial in the deformation parameters
/// (region-aware): exponents are mirrored in the star region.
fn ts_mul_monomial(s: &TruncSeries, eq: i32, et: i32, star: bool) -> TruncSeries {
    let (eq, et) = if star { (-eq, -et) } else { (eq, et) };
    assert!(eq >= 0 && et >= 0, "monomial must be small in the region");
    let mut out = TruncSeries::zero(s.small.clone(), s.order + eq + et);
    for (e, c) in &s.terms {
        let mut e2 = e.clone();
        e2[0] += eq;
        e2[1] += et;
        if e2.iter().sum::<i32>() <= out.order {
            out.terms.insert(e2, c.clone());
        }
    }
    out
}

/// Apply the operator to a labeled element and extract the coefficient of
/// the prescribed auxiliary exponent vector, as series to the given order.
///
/// `window` bounds the auxiliary exponents during assembly; mass clipped or
/// resting on the boundary is a hard failure (the window was too small).
pub fn ct_apply(
    op: &CtOperator,
    f: &WreathPoly,
    target: &[i32],
    order: i32,
    window: Option<i32>,
) -> Result<SeriesSym, String> {
    let r = op.r;
    let nv = r * op.slots;
    assert_eq!(target.len(), nv, "target exponent vector length");
    let d = f.value.max_degree() as i32;
    let charges = f.core.charges();
    let charge_drift: i32 = (0..r)
        .map(|i| (charges[i] - charges[(i + r - 1) % r]).unsigned_abs() as i32)
        .sum();
    let zmono_drift: i32 = op.zmono.iter().map(|e| e.abs()).sum();
    let target_tot: i32 = target.iter().map(|e| e.abs()).sum();
    let window = window.unwrap_or(d + target_tot + order + charge_drift + zmono_drift + 2);
    let mut clipped = false;

    // initial state: expanded input coefficients at the charge + fixed
    // monomial exponents
    let mut state: State = BTreeMap::new();
    {
        let mut base = vec![0i32; nv];
        for slot in 0..op.slots {
            for i in 0..r {
                let e = charges[i] - charges[(i + r - 1) % r];
                base[slot * r + i] += op.h_sign as i32 * e as i32;
            }
        }
        for (v, e) in op.zmono.iter().enumerate() {
            base[v] += e;
        }
        for (idx, c) in f.value.coeffs() {
            let s = expand_region(c, op.star, order)?;
            state_add(&mut state, (idx.clone(), base.clone()), s);
        }
    }

    // translation: p_n[X^{(j)}] -> p_n[X^{(j)}] + sum_{slots, items}
    // coeff^{(n)} z^{-n}
    {
        let mut next: State = BTreeMap::new();
        for ((idx, zexp), series) in &state {
            // iterate over colors and parts, branching per part
            let mut acc: Vec<(ColoredIndex, Vec<i32>, TruncSeries)> =
                vec![(ColoredIndex::empty(r), zexp.clone(), series.clone())];
            for j in 0..r as i64 {
                for &n in idx.get(j).parts() {
                    let mut branched = Vec::new();
                    for (cur_idx, cur_z, cur_s) in &acc {
                        // keep the part
                        let kept = cur_idx.merge(&ColoredIndex::single(
                            r,
                            j.rem_euclid(r as i64) as usize,
                            Partition::new(vec![n]),
                        ));
                        branched.push((kept, cur_z.clone(), cur_s.clone()));
                        // or replace it by a translation item
                        for slot in 0..op.slots {
                            for (coeff, shift) in &op.t_items {
                                let cexp =
                                    expand_region(&coeff.power_exponents(n as i32), op.star, order)?;
                                let v = op.var(j + shift, slot);
                                let mut z2 = cur_z.clone();
                                z2[v] -= n as i32;
                                branched.push((cur_idx.clone(), z2, cur_s.mul(&cexp)));
                            }
                        }
                    }
                    acc = branched;
                }
            }
            for (i2, z2, s2) in acc {
                state_add(&mut next, (i2, z2), s2);
            }
        }
        state = next;
    }

    // omega multiplier: per term, the total auxiliary degree forces the
    // total omega degree exactly
    {
        let mut next: State = BTreeMap::new();
        // basis expansions cache: e_m or h_m per color
        let mut cache: BTreeMap<(usize, u32), Vec<(ColoredIndex, TruncSeries)>> = BTreeMap::new();
        let mut basis = |color: usize, m: u32, star: bool, order: i32| -> Result<Vec<(ColoredIndex, TruncSeries)>, String> {
            if let Some(v) = cache.get(&(color, m)) {
                return Ok(v.clone());
            }
            let f = if op.omega_negative {
                // h_m[-X] = (-1)^m e_m[X]
                en_color(r, color as i64, m).scale(&RatFunc::from_int(if m % 2 == 0 {
                    1
                } else {
                    -1
                }))
            } else {
                hn_color(r, color as i64, m)
            };
            let mut out = Vec::new();
            for (idx, c) in f.coeffs() {
                out.push((idx.clone(), expand_region(c, star, order)?));
            }
            cache.insert((color, m), out.clone());
            Ok(out)
        };
        for ((idx, zexp), series) in &state {
            let ztot: i32 = zexp.iter().sum();
            let m_needed = target.iter().sum::<i32>() - ztot;
            if m_needed < 0 {
                continue;
            }
            // compositions of m_needed over the nv variables
            let mut combos: Vec<(Vec<u32>, usize, i32)> = vec![(Vec::new(), 0, m_needed)];
            let mut full: Vec<Vec<u32>> = Vec::new();
            while let Some((partial, v, rem)) = combos.pop() {
                if v == nv {
                    if rem == 0 {
                        full.push(partial);
                    }
                    continue;
                }
                for take in 0..=rem {
                    let mut p2 = partial.clone();
                    p2.push(take as u32);
                    combos.push((p2, v + 1, rem - take));
                }
            }
            for combo in full {
                // multiply the omega factors for this composition
                let mut acc: Vec<(ColoredIndex, TruncSeries)> =
                    vec![(idx.clone(), series.clone())];
                for (v, &m) in combo.iter().enumerate() {
                    if m == 0 {
                        continue;
                    }
                    let color = v % r;
                    let parts = basis(color, m, op.star, order)?;
                    let mut branched = Vec::new();
                    for (cur_idx, cur_s) in &acc {
                        for (bi, bs) in &parts {
                            branched.push((cur_idx.merge(bi), cur_s.mul(bs)));
                        }
                    }
                    acc = branched;
                }
                let mut z2 = zexp.clone();
                for (v, &m) in combo.iter().enumerate() {
                    z2[v] += m as i32;
                }
                for (i2, s2) in acc {
                    state_add(&mut next, (i2, z2.clone()), s2);
                }
            }
        }
        state = next;
    }

    // polynomial factors (1 - m z_a/z_b)
    for (m, a, b) in &op.poly {
        let mut next: State = BTreeMap::new();
        let eq = m.exponent(GEN_Q);
        let et = m.exponent(GEN_T);
        for ((idx, zexp), series) in &state {
            state_add(&mut next, (idx.clone(), zexp.clone()), series.clone());
            let mut z2 = zexp.clone();
            z2[*a] += 1;
            z2[*b] -= 1;
            if z2.iter().any(|e| e.abs() > window) {
                clipped = true;
                continue;
            }
            let shifted = ts_mul_monomial(series, eq, et, op.star).neg();
            state_add(&mut next, (idx.clone(), z2), shifted);
        }
        state = next;
    }

    // geometric factors 1/(1 - m z_a/z_b) = sum_k m^k (z_a/z_b)^k
    for (m, a, b) in &op.geom {
        let eq = m.exponent(GEN_Q);
        let et = m.exponent(GEN_T);
        let step = if op.star { -(eq + et) } else { eq + et };
        assert!(step > 0, "geometric factor must carry positive degree");
        let mut next: State = BTreeMap::new();
        for ((idx, zexp), series) in &state {
            let kmax = ((order - (series.valuation().max(0))) / step).max(0);
            for k in 0..=kmax {
                let mut z2 = zexp.clone();
                z2[*a] += k;
                z2[*b] -= k;
                if z2.iter().any(|e| e.abs() > window) {
                    clipped = true;
                    break;
                }
                let s2 = ts_mul_monomial(series, eq * k, et * k, op.star);
                state_add(&mut next, (idx.clone(), z2), s2);
            }
        }
        state = next;
    }

    // overall scalar
    let scalar = expand_region(&op.scalar, op.star, order)?;

    // sentinel: boundary mass or clipping means the window was too small
    if clipped {
        return Err(format!("window {} too small: mass clipped", window));
    }
    for ((_, zexp), series) in &state {
        if !series.is_zero() && zexp.iter().any(|e| e.abs() >= window) {
            return Err(format!(
                "window {} too small: boundary mass at {:?}",
                window, zexp
            ));
        }
    }

    // extraction
    let mut out = SeriesSym::zero(r, order, op.star);
    for ((idx, zexp), series) in &state {
        if zexp == target {
            out.add_term(idx.clone(), series.mul(&scalar));
        }
    }
    Ok(out)
}

/// Apply the principal series operator with exponent vector `k`:
/// the coefficient of the inverse `k`-monomial in the series.
pub fn dd_apply(
    f: &WreathPoly,
    k: &[i64],
    star: bool,
    order: i32,
    window: Option<i32>,
) -> Result<SeriesSym, String> {
    let r = f.r();
    assert!(r >= 3, "the series operators assume rank at least 3");
    assert!(order >= 1);
    let op = dd_operator(r, star);
    let target: Vec<i32> = k.iter().map(|&x| -(x as i32)).collect();
    ct_apply(&op, f, &target, order, window)
}

/// Expected diagonal value of the principal operator at coordinate vector
/// `eps_p - eps_0`: the color-p component of `-D_lambda/((1-q)(1-t))`,
/// star-inverted for the inverted region.
pub fn dd_eigenvalue(lambda: &Partition, p: usize, star: bool, r: usize) -> RatFunc {
    let base = crate::partitions::d_sum(lambda, r)
        .neg()
        .div_one_minus_q_one_minus_t();
    if star {
        base.star().get(p as i64).clone()
    } else {
        base.get(p as i64).clone()
    }
}

/// Colored division by `1 - t`: component p of `S/(1-t)`.
pub fn div_one_minus_t(s: &ColoredCharSum) -> ColoredCharSum {
    let r = s.r();
    let t = RatFunc::var(GEN_T);
    let den = (RatFunc::one() - t.pow(r as i64)).inv();
    ColoredCharSum::from_components(
        (0..r as i64)
            .map(|p| {
                let mut acc = RatFunc::zero();
                for k in 0..r as i64 {
                    acc = acc + t.pow(k) * s.get(p - k).clone();
                }
                acc * den.clone()
            })
            .collect(),
    )
}

/// Colored division by `1 - q`: component p of `S/(1-q)`.
pub fn div_one_minus_q(s: &ColoredCharSum) -> ColoredCharSum {
    let r = s.r();
    let q = RatFunc::var(GEN_Q);
    let den = (RatFunc::one() - q.pow(r as i64)).inv();
    ColoredCharSum::from_components(
        (0..r as i64)
            .map(|p| {
                let mut acc = RatFunc::zero();
                for k in 0..r as i64 {
                    acc = acc + q.pow(k) * s.get(p + k).clone();
                }
                acc * den.clone()
            })
            .collect(),
    )
}

/// Apply the column (or row) operator with one current slot and extract
/// the constant term.
pub fn colrow_apply(
    f: &WreathPoly,
    p: i64,
    column: bool,
    adjoint: bool,
    order: i32,
    window: Option<i32>,
) -> Result<SeriesSym, String> {
    let r = f.r();
    assert!(r >= 3, "the series operators assume rank at least 3");
    let op = if column {
        column_operator(r, 1, p, adjoint)
    } else {
        row_operator(r, 1, p, adjoint)
    };
    ct_apply(&op, f, &vec![0; r], order, window)
}

/// Eigenvalue of the column operator at one current per color:
/// `t * e_1[(-D/(1-t))^{(p)}]` on the plain basis, with the reversed color
/// on the dual basis.
pub fn column_eigenvalue(lambda: &Partition, p: i64, adjoint: bool, r: usize) -> RatFunc {
    let d = crate::partitions::d_sum(lambda, r).neg();
    let t = RatFunc::var(GEN_T);
    let comp = if adjoint { -p - 1 } else { p };
    t * div_one_minus_t(&d).get(comp).clone()
}

/// Eigenvalue of the row operator at one current per color:
/// `h_1[(D/(1-q))^{(p)}]`.
pub fn row_eigenvalue(lambda: &Partition, p: i64, adjoint: bool, r: usize) -> RatFunc {
    let d = crate::partitions::d_sum(lambda, r);
    let comp = if adjoint { -p } else { p };
    div_one_minus_q(&d).get(comp).clone()
}

/// Scale every series coefficient by the expansion of an exact rational
/// function.
pub fn series_scale(
    s: &SeriesSym,
    c: &RatFunc,
    order: i32,
) -> Result<SeriesSym, String> {
    let cs = expand_region(c, s.star, order)?;
    let mut out = SeriesSym::zero(s.r, s.order, s.star);
    for (idx, v) in &s.terms {
        out.add_term(idx.clone(), v.mul(&cs));
    }
    Ok(out)
}

/// Multiply a series element by an exact element.
pub fn series_mul_exact(
    s: &SeriesSym,
    f: &MultiSymFunc,
    order: i32,
) -> Result<SeriesSym, String> {
    let mut out = SeriesSym::zero(s.r, s.order, s.star);
    for (fi, fc) in f.coeffs() {
        let fcs = expand_region(fc, s.star, order)?;
        for (si, sc) in &s.terms {
            out.add_term(si.merge(fi), sc.mul(&fcs));
        }
    }
    Ok(out)
}

/// Subtract two series elements.
pub fn series_sub(a: &SeriesSym, b: &SeriesSym) -> SeriesSym {
    let mut out = a.clone();
    for (idx, s) in &b.terms {
        out.add_term(idx.clone(), s.neg());
    }
    out
}

/// The dual pairing of a series-valued element (with label) against an
/// exact labeled element, coefficientwise in the series.
pub fn pair_series(
    a: &SeriesSym,
    a_core: &CoreLabel,
    b: &WreathPoly,
    order: i32,
) -> Result<TruncSeries, String> {
    if *a_core != b.core.w0() {
        return Ok(TruncSeries::zero(vec![GEN_Q, GEN_T], order));
    }
    let twisted = crate::symfunc::pleth_apply(&b.value, &crate::symfunc::pairing_twist(a.r));
    let mut acc = TruncSeries::zero(vec![GEN_Q, GEN_T], order);
    for (idx, s) in &a.terms {
        let gi = idx.remap(|j| -j);
        if let Some(gc) = twisted.coeffs().get(&gi) {
            let z = RatFunc::from_bigint(idx.z());
            let cs = expand_region(&(gc.clone() * z), a.star, order)?;
            acc = acc.add(&s.mul(&cs));
        }
    }
    Ok(acc)
}

/// The down-arrow image of a series element: mirror the region (the
/// parameters are inverted), negate the alphabet and reverse the colors.
pub fn series_down_arrow(s: &SeriesSym) -> SeriesSym {
    let mut out = SeriesSym::zero(s.r, s.order, !s.star);
    for (idx, v) in &s.terms {
        let sign = if idx.num_parts() % 2 == 0 { 1 } else { -1 };
        let flipped = if sign == 1 { v.clone() } else { v.neg() };
        out.add_term(idx.remap(|j| -j), flipped);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{core_quot, ColoredCharSum};
    use crate::wreath::Tables;

    #[test]
    fn dd_zero_vector_on_vacuum() {
        // On the trivial labeled element the principal operator acts by the
        // geometric colored sum, to every order.
        let r = 3usize;
        let f = WreathPoly::one(CoreLabel::zero(r));
        let got = dd_apply(&f, &[0, 0, 0], false, 4, None).unwrap();
        let ev = ColoredCharSum::geometric(r).get(0).clone();
        let mut expect = SeriesSym::zero(r, 4, false);
        expect.add_term(
            ColoredIndex::empty(r),
            expand_region(&ev, false, 4).unwrap(),
        );
        assert!(
            got.eq_to_order(&expect, 4),
            "mismatch: {:?}",
            got.first_mismatch(&expect, 4)
        );
    }

    #[test]
    fn dd_diagonal_on_h_grade1() {
        let r = 3usize;
        let label = CoreLabel::zero(r);
        let mut tables = Tables::new(r);
        tables.ensure(&label, 1).unwrap();
        let tab = tables.get(&label, 1).unwrap();
        let order = 3;
        for i in 0..tab.lambdas.len() {
            let lam = &tab.lambdas[i];
            let h = WreathPoly::new(tab.h[i].clone(), label.clone());
            for p in 0..r {
                let mut k = vec![0i64; r];
                k[p] += 1;
                k[0] -= 1;
                let got = dd_apply(&h, &k, false, order, None).unwrap();
                let ev = dd_eigenvalue(lam, p, false, r);
                let expect = series_of_msf(&tab.h[i].scale(&ev), false, order).unwrap();
                assert!(
                    got.eq_to_order(&expect, order),
                    "lam={} p={}: {:?}",
                    lam,
                    p,
                    got.first_mismatch(&expect, order)
                );
            }
        }
    }

    #[test]
    fn dd_star_diagonal_on_vacuum_grade0() {
        let r = 3usize;
        let label = CoreLabel::zero(r);
        let f = WreathPoly::one(label);
        for p in 0..r {
            let mut k = vec![0i64; r];
            k[0] += 1;
            k[p] -= 1;
            let got = dd_apply(&f, &k, true, 3, None).unwrap();
            let ev = dd_eigenvalue(&Partition::empty(), p, true, r);
            let mut expect = SeriesSym::zero(r, 3, true);
            expect.add_term(
                ColoredIndex::empty(r),
                expand_region(&ev, true, 3).unwrap(),
            );
            assert!(
                got.eq_to_order(&expect, 3),
                "p={}: {:?}",
                p,
                got.first_mismatch(&expect, 3)
            );
        }
    }

    #[test]
    fn window_sentinel_fires() {
        let r = 3usize;
        let f = WreathPoly::one(CoreLabel::zero(r));
        let err = dd_apply(&f, &[0, 0, 0], false, 4, Some(1));
        assert!(err.is_err());
    }

    #[test]
    fn column_operator_on_vacuum() {
        // lambda = empty core: the eigenvalue reduces to the core's colored
        // sum: t e_1[(1/(1-t))^{(p)} - shifted ...] with D = -delta_0.
        let r = 3usize;
        let label = CoreLabel::zero(r);
        let f = WreathPoly::one(label);
        let order = 3;
        for p in 0..r as i64 {
            let got = colrow_apply(&f, p, true, false, order, None).unwrap();
            let ev = column_eigenvalue(&Partition::empty(), p, false, r);
            let mut expect = SeriesSym::zero(r, order, false);
            expect.add_term(
                ColoredIndex::empty(r),
                expand_region(&ev, false, order).unwrap(),
            );
            assert!(
                got.eq_to_order(&expect, order),
                "p={}: {:?}",
                p,
                got.first_mismatch(&expect, order)
            );
        }
    }

    #[test]
    fn row_operator_on_vacuum() {
        let r = 3usize;
        let label = CoreLabel::zero(r);
        let f = WreathPoly::one(label);
        let order = 3;
        for p in 0..r as i64 {
            let got = colrow_apply(&f, p, false, false, order, None).unwrap();
            let ev = row_eigenvalue(&Partition::empty(), p, false, r);
            let mut expect = SeriesSym::zero(r, order, false);
            expect.add_term(
                ColoredIndex::empty(r),
                expand_region(&ev, false, order).unwrap(),
            );
            assert!(
                got.eq_to_order(&expect, order),
                "p={}: {:?}",
                p,
                got.first_mismatch(&expect, order)
            );
        }
    }

    #[test]
    fn column_operator_on_422() {
        let r = 3usize;
        let lam = Partition::new(vec![4, 2, 2]);
        let (_, _, label) = core_quot(&lam, r);
        let mut tables = Tables::new(r);
        tables.ensure(&label, 2).unwrap();
        let tab = tables.get(&label, 2).unwrap();
        let i = tab.index_of(&lam).unwrap();
        let h = WreathPoly::new(tab.h[i].clone(), label.clone());
        let order = 4;
        let got = colrow_apply(&h, 0, true, false, order, None).unwrap();
        let ev = column_eigenvalue(&lam, 0, false, r);
        let expect = series_of_msf(&tab.h[i].scale(&ev), false, order).unwrap();
        assert!(
            got.eq_to_order(&expect, order),
            "{:?}",
            got.first_mismatch(&expect, order)
        );
    }
}
