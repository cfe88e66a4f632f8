//! Wreath Macdonald polynomials and their operator calculus.
//!
//! For a fixed r-core (equivalently a charge vector `alpha`), the
//! polynomials `H_lambda` with `core(lambda) = alpha` form a basis of the
//! colored symmetric function ring. Each `H_lambda` is pinned down by two
//! plethystic triangularity conditions with respect to dominance order at
//! fixed core, normalized so the coefficient of `s_n[X^{(0)}]` is 1; the
//! construction here intersects the two spanning families by exact
//! nullspace computation over the rational-function field.
//!
//! On top of the grade tables this module builds the dual polynomials, the
//! biorthogonal norms, the nabla operators, delta-function series, the
//! Tesler-type map `V`, diagonal Delta operators, skew functions,
//! interpolation polynomials, Kostka coefficients, the Fourier pairing and
//! its reproducing kernels.

pub mod linalg;
pub mod verify;

use crate::partitions::{
    b_sum, core_quot, d_sum, enumerate, nabla_eigenvalue, ColoredCharSum, CoreLabel, Partition,
};
use crate::ratfield::RatFunc;
use crate::symfunc::{
    en_color, eval_colored, hn_color, multi_schur, omega_series, pairing_twist_inv, pleth_apply,
    pleth_translate, qt_prime_pairing, to_multi_schur, ColoredIndex, MultiSymFunc, PlethMatrix,
    TwoAlphabetElem,
};
use std::collections::BTreeMap;

/// A colored symmetric function together with its core label (the lattice
/// tensorand it lives over).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WreathPoly {
    pub value: MultiSymFunc,
    pub core: CoreLabel,
}

impl WreathPoly {
    pub fn new(value: MultiSymFunc, core: CoreLabel) -> Self {
        WreathPoly { value, core }
    }

    pub fn one(core: CoreLabel) -> Self {
        let r = core.r();
        WreathPoly {
            value: MultiSymFunc::one(r),
            core,
        }
    }

    pub fn r(&self) -> usize {
        self.core.r()
    }
}

/// The pairing on labeled elements: nonzero only when the labels are
/// reverses of each other.
pub fn pair_wreath(a: &WreathPoly, b: &WreathPoly) -> RatFunc {
    if a.core != b.core.w0() {
        return RatFunc::zero();
    }
    qt_prime_pairing(&a.value, &b.value)
}

/// The involution `f (x) e^alpha -> f[-iota X; 1/q, 1/t] (x) e^{w0 alpha}`.
pub fn down_arrow(f: &WreathPoly) -> WreathPoly {
    WreathPoly {
        value: dagger(&f.value),
        core: f.core.w0(),
    }
}

/// The dual of an unlabeled element: `f[-iota X; 1/q, 1/t]`.
pub fn dagger(f: &MultiSymFunc) -> MultiSymFunc {
    f.invert_qt().pleth_neg().iota()
}

/// Which modified generator family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EhKind {
    E,
    H,
}

/// `e`/`h`-products twisted by the inverted one-minus-sigma matrices; the
/// elementary case follows the transpose convention
/// `e_lambda = prod_j e_{lambda'_j}`.
pub fn modified_eh(r: usize, idx: &ColoredIndex, kind: EhKind) -> MultiSymFunc {
    let q = RatFunc::var(crate::ratfield::GEN_Q);
    let t = RatFunc::var(crate::ratfield::GEN_T);
    let m = match kind {
        EhKind::H => PlethMatrix::inv_one_minus(r, &q, -1),
        EhKind::E => PlethMatrix::inv_one_minus(r, &t.inv(), -1),
    };
    let mut acc = MultiSymFunc::one(r);
    for i in 0..r {
        let lam = &idx.tuple()[i];
        match kind {
            EhKind::H => {
                for &n in lam.parts() {
                    acc = acc.mul(&pleth_apply(&hn_color(r, i as i64, n), &m));
                }
            }
            EhKind::E => {
                for &n in lam.transpose().parts() {
                    acc = acc.mul(&pleth_apply(&en_color(r, i as i64, n), &m));
                }
            }
        }
    }
    acc
}

/// A full grade of wreath Macdonald data at one core.
pub struct HTable {
    pub r: usize,
    pub label: CoreLabel,
    pub n: u32,
    pub lambdas: Vec<Partition>,
    /// `H_lambda` in the power-sum basis.
    pub h: Vec<MultiSymFunc>,
    /// `H_lambda` in the multi-Schur basis.
    pub h_schur: Vec<BTreeMap<ColoredIndex, RatFunc>>,
    /// Dual polynomials `H_lambda[-iota X; 1/q, 1/t]`.
    pub hdag: Vec<MultiSymFunc>,
    pub hdag_schur: Vec<BTreeMap<ColoredIndex, RatFunc>>,
    /// Biorthogonal norms `N_lambda`.
    pub norms: Vec<RatFunc>,
    /// Nabla eigenvalues: `prod (-chi)` over color-0 boxes of
    /// `lambda \ core`.
    pub nabla_eig: Vec<RatFunc>,
}

impl HTable {
    pub fn index_of(&self, lambda: &Partition) -> Option<usize> {
        self.lambdas.iter().position(|l| l == lambda)
    }
}

/// Construct the grade-n table at a core by intersecting the two modified
/// spanning families.
///
/// Fails if any intersection is not one-dimensional; that signals an
/// arithmetic or ordering bug, never a legitimate state.
pub fn compute_h(r: usize, label: &CoreLabel, n: u32) -> Result<HTable, String> {
    assert_eq!(label.r(), r);
    let lambdas = enumerate(label, n);
    let gamma = ColoredIndex::all(r, n);
    let dim = gamma.len();
    assert_eq!(lambdas.len(), dim);
    let gamma_pos: BTreeMap<&ColoredIndex, usize> =
        gamma.iter().enumerate().map(|(i, g)| (g, i)).collect();

    let quots: Vec<ColoredIndex> = lambdas
        .iter()
        .map(|lam| ColoredIndex::new(core_quot(lam, r).1))
        .collect();

    let schur_vec = |f: &MultiSymFunc| -> Vec<RatFunc> {
        let mut v = vec![RatFunc::zero(); dim];
        for (idx, c) in to_multi_schur(f) {
            v[gamma_pos[&idx]] = c;
        }
        v
    };

    let ehat: Vec<Vec<RatFunc>> = quots
        .iter()
        .map(|qv| schur_vec(&modified_eh(r, qv, EhKind::E)))
        .collect();
    let hhat: Vec<Vec<RatFunc>> = quots
        .iter()
        .map(|qv| schur_vec(&modified_eh(r, qv, EhKind::H)))
        .collect();

    // Annihilator rows of the span of selected vectors.
    let annihilator = |cols: &[usize], vecs: &[Vec<RatFunc>]| -> Vec<Vec<RatFunc>> {
        let rows: Vec<Vec<RatFunc>> = cols.iter().map(|&c| vecs[c].clone()).collect();
        linalg::nullspace(&rows)
    };

    let norm_idx = if n == 0 {
        ColoredIndex::empty(r)
    } else {
        ColoredIndex::single(r, 0, Partition::new(vec![n]))
    };
    let norm_pos = gamma_pos[&norm_idx];

    let mut h = Vec::with_capacity(dim);
    let mut h_schur = Vec::with_capacity(dim);
    for lam in lambdas.iter() {
        let up: Vec<usize> = (0..dim)
            .filter(|&mi| lambdas[mi].dominates(lam))
            .collect();
        let down: Vec<usize> = (0..dim)
            .filter(|&mi| lam.dominates(&lambdas[mi]))
            .collect();
        // H_lambda spans span{hhat_mu : mu >= lam} /\ span{ehat_mu : mu <= lam}:
        // stack the two annihilators and take the joint nullspace.
        let mut constraints = annihilator(&up, &hhat);
        constraints.extend(annihilator(&down, &ehat));
        let sol = if constraints.is_empty() {
            vec![vec![RatFunc::one(); dim.max(1)]]
        } else {
            linalg::nullspace(&constraints)
        };
        if sol.len() != 1 {
            return Err(format!(
                "intersection at core {} grade {} for lambda {} has dimension {}",
                label,
                n,
                lam,
                sol.len()
            ));
        }
        let raw = &sol[0];
        let norm_coeff = raw[norm_pos].clone();
        if norm_coeff.is_zero() {
            return Err(format!(
                "vanishing normalization coefficient for lambda {} at core {}",
                lam, label
            ));
        }
        let inv = norm_coeff.inv();
        let coeffs: BTreeMap<ColoredIndex, RatFunc> = gamma
            .iter()
            .enumerate()
            .filter(|(i, _)| !raw[*i].is_zero())
            .map(|(i, g)| (g.clone(), raw[i].clone() * inv.clone()))
            .collect();
        h_schur.push(coeffs.clone());
        h.push(crate::symfunc::from_multi_schur(r, &coeffs));
    }

    let core_part = label.to_partition();
    let hdag: Vec<MultiSymFunc> = h.iter().map(dagger).collect();
    let hdag_schur: Vec<BTreeMap<ColoredIndex, RatFunc>> =
        hdag.iter().map(to_multi_schur).collect();
    let norms: Vec<RatFunc> = hdag
        .iter()
        .zip(&h)
        .map(|(d, hh)| qt_prime_pairing(d, hh))
        .collect();
    for (lam, nn) in lambdas.iter().zip(&norms) {
        if nn.is_zero() {
            return Err(format!("vanishing norm for lambda {}", lam));
        }
    }
    let nabla_eig: Vec<RatFunc> = lambdas
        .iter()
        .map(|lam| nabla_eigenvalue(lam, &core_part, r, 0))
        .collect();

    Ok(HTable {
        r,
        label: label.clone(),
        n,
        lambdas,
        h,
        h_schur,
        hdag,
        hdag_schur,
        norms,
        nabla_eig,
    })
}

/// A cache of grade tables, keyed by core and quotient size. Built during a
/// setup phase, then shared read-only.
pub struct Tables {
    pub r: usize,
    map: BTreeMap<(CoreLabel, u32), HTable>,
}

impl Tables {
    pub fn new(r: usize) -> Self {
        Tables {
            r,
            map: BTreeMap::new(),
        }
    }

    pub fn ensure(&mut self, label: &CoreLabel, max_n: u32) -> Result<(), String> {
        for n in 0..=max_n {
            let key = (label.clone(), n);
            if !self.map.contains_key(&key) {
                let t = compute_h(self.r, label, n)?;
                self.map.insert(key, t);
            }
        }
        Ok(())
    }

    pub fn get(&self, label: &CoreLabel, n: u32) -> Result<&HTable, String> {
        self.map
            .get(&(label.clone(), n))
            .ok_or_else(|| format!("missing table at core {} grade {}", label, n))
    }
}

/// Expansion of a (possibly inhomogeneous) element in the `H` basis at a
/// core: list of `(grade, position, coefficient)`.
pub fn expand_in_h(
    f: &MultiSymFunc,
    label: &CoreLabel,
    tables: &Tables,
) -> Result<Vec<(u32, usize, RatFunc)>, String> {
    let mut out = Vec::new();
    for n in 0..=f.max_degree() {
        let comp = f.component(n);
        if comp.is_zero() {
            continue;
        }
        let t = tables.get(label, n)?;
        for i in 0..t.lambdas.len() {
            let c = qt_prime_pairing(&t.hdag[i], &comp) / t.norms[i].clone();
            if !c.is_zero() {
                out.push((n, i, c));
            }
        }
    }
    Ok(out)
}

/// The nabla operator on labeled elements: diagonal on
/// `{H_lambda : core(lambda) = label}` with eigenvalue the product of
/// `(-chi)` over color-0 boxes of `lambda \ core`.
pub fn nabla(f: &WreathPoly, power: i64, tables: &Tables) -> Result<WreathPoly, String> {
    let mut value = MultiSymFunc::zero(f.r());
    for (n, i, c) in expand_in_h(&f.value, &f.core, tables)? {
        let t = tables.get(&f.core, n)?;
        value = value.add(&t.h[i].scale(&(c * t.nabla_eig[i].pow(power))));
    }
    Ok(WreathPoly {
        value,
        core: f.core.clone(),
    })
}

/// `nabla_alpha` on the dual family: diagonal on
/// `{H^dag_nu : core(nu) = w0 alpha}` with the same eigenvalues.
pub fn nabla_on_dual(
    f: &MultiSymFunc,
    alpha: &CoreLabel,
    power: i64,
    tables: &Tables,
) -> Result<MultiSymFunc, String> {
    let base = alpha.w0();
    let mut value = MultiSymFunc::zero(f.r());
    for n in 0..=f.max_degree() {
        let comp = f.component(n);
        if comp.is_zero() {
            continue;
        }
        let t = tables.get(&base, n)?;
        for i in 0..t.lambdas.len() {
            let c = qt_prime_pairing(&comp, &t.h[i]) / t.norms[i].clone();
            if !c.is_zero() {
                value = value.add(&t.hdag[i].scale(&(c * t.nabla_eig[i].pow(power))));
            }
        }
    }
    Ok(value)
}

/// The colored linear form `(D_lambda / ((1-q)(t-1)))` split by color:
/// equals `geometric - B_lambda` componentwise.
pub fn delta_form(lambda: &Partition, r: usize) -> ColoredCharSum {
    ColoredCharSum::geometric(r).add(&b_sum(lambda, r).neg())
}

/// The delta-function series truncated to degree N:
/// `Omega[sum_i X^{(i)} (D_lambda/((1-q)(t-1)))^{(i+k)}]`.
pub fn delta_fn(lambda: &Partition, r: usize, k: i64, max_deg: u32) -> MultiSymFunc {
    omega_series(&delta_form(lambda, r).shift(k), r, max_deg)
}

/// The star variant:
/// `Omega[sum_i X^{(-i)} ((-D_lambda/((1-q)(t-1)))_*)^{(i+k)}]`.
pub fn star_delta_fn(lambda: &Partition, r: usize, k: i64, max_deg: u32) -> MultiSymFunc {
    let t = delta_form(lambda, r).neg().star();
    omega_series(&t.shift(k).iota(), r, max_deg)
}

/// A labeled delta-function series.
#[derive(Clone)]
pub struct DeltaFn {
    pub lambda: Partition,
    pub shift: i64,
    pub series: MultiSymFunc,
    pub core: CoreLabel,
}

pub fn delta_fn_labeled(lambda: &Partition, r: usize, k: i64, max_deg: u32) -> DeltaFn {
    let (_, _, label) = core_quot(lambda, r);
    DeltaFn {
        lambda: lambda.clone(),
        shift: k,
        series: delta_fn(lambda, r, k, max_deg),
        core: label.sigma_pow(-k),
    }
}

/// The Tesler-type operator: nabla, then translation of color `-k` by one,
/// then multiplication by the omega-multiplier at color `-k`, then nabla;
/// truncated to degree N.
pub fn v_apply(
    f: &WreathPoly,
    k: i64,
    max_deg: u32,
    tables: &Tables,
) -> Result<WreathPoly, String> {
    let r = f.r();
    let g0 = nabla(f, 1, tables)?;
    let g1 = pleth_translate(&g0.value, -k, &RatFunc::one());
    let om = omega_series(&pairing_twist_inv(r).column(-k), r, max_deg);
    let g2 = om.mul(&g1).truncate(max_deg);
    nabla(
        &WreathPoly {
            value: g2,
            core: g0.core,
        },
        1,
        tables,
    )
}

/// The star variant of the Tesler-type operator:
/// `nabla^{-1} Omega[-X^{(k)}/((1-1/q sigma)(1/t sigma^{-1}-1))]
/// T[-X^{(k)}] nabla^{-1}`.
pub fn v_star_apply(
    f: &WreathPoly,
    k: i64,
    max_deg: u32,
    tables: &Tables,
) -> Result<WreathPoly, String> {
    let r = f.r();
    let g0 = nabla(f, -1, tables)?;
    let g1 = pleth_translate(&g0.value, k, &RatFunc::from_int(-1));
    // -(1 - q^{-1} sigma)^{-1} (t^{-1} sigma^{-1} - 1)^{-1} column k, negated
    // for the minus sign on the alphabet.
    let q = RatFunc::var(crate::ratfield::GEN_Q);
    let t = RatFunc::var(crate::ratfield::GEN_T);
    let m = PlethMatrix::inv_one_minus(r, &q.inv(), 1)
        .mul(&PlethMatrix::inv_one_minus(r, &t.inv(), -1))
        .neg();
    let om = omega_series(&m.column(k).neg(), r, max_deg);
    let g2 = om.mul(&g1).truncate(max_deg);
    nabla(
        &WreathPoly {
            value: g2,
            core: g0.core,
        },
        -1,
        tables,
    )
}

/// The diagonal operator attached to `eigarg`: on `H_lambda (x) e^{core}`
/// the eigenvalue is `eigarg[-D_lambda]`.
pub fn delta_op(
    f: &WreathPoly,
    eigarg: &MultiSymFunc,
    tables: &Tables,
) -> Result<WreathPoly, String> {
    let r = f.r();
    let mut value = MultiSymFunc::zero(r);
    for (n, i, c) in expand_in_h(&f.value, &f.core, tables)? {
        let t = tables.get(&f.core, n)?;
        let ev = eval_colored(eigarg, &d_sum(&t.lambdas[i], r).neg());
        value = value.add(&t.h[i].scale(&(c * ev)));
    }
    Ok(WreathPoly {
        value,
        core: f.core.clone(),
    })
}

/// The adjoint diagonal operator: diagonal on the dual family
/// `H^dag_mu (x) e^{w0 core(mu)}` with eigenvalue `eigarg[-D_mu]`.
pub fn delta_op_dagger(
    f: &WreathPoly,
    eigarg: &MultiSymFunc,
    tables: &Tables,
) -> Result<WreathPoly, String> {
    let r = f.r();
    let base = f.core.w0();
    let mut value = MultiSymFunc::zero(r);
    for n in 0..=f.value.max_degree() {
        let comp = f.value.component(n);
        if comp.is_zero() {
            continue;
        }
        let t = tables.get(&base, n)?;
        for i in 0..t.lambdas.len() {
            let c = qt_prime_pairing(&comp, &t.h[i]) / t.norms[i].clone();
            if c.is_zero() {
                continue;
            }
            let ev = eval_colored(eigarg, &d_sum(&t.lambdas[i], r).neg());
            value = value.add(&t.hdag[i].scale(&(c * ev)));
        }
    }
    Ok(WreathPoly {
        value,
        core: f.core.clone(),
    })
}

/// Skew polynomial `H_{lambda/mu^dag}`: nonzero only when the cores match
/// and `lambda` contains `mu`.
pub fn skew_h(
    lambda: &Partition,
    mu: &Partition,
    r: usize,
    tables: &Tables,
) -> Result<MultiSymFunc, String> {
    let (_, _, la) = core_quot(lambda, r);
    let (_, _, ma) = core_quot(mu, r);
    if la != ma {
        return Err(format!(
            "core mismatch: {} has core {}, {} has core {}",
            lambda, la, mu, ma
        ));
    }
    let nl = quot_size(lambda, r);
    let nm = quot_size(mu, r);
    let mut out = MultiSymFunc::zero(r);
    if nm > nl {
        return Ok(out);
    }
    let tl = tables.get(&la, nl)?;
    let tm = tables.get(&la, nm)?;
    let tn = tables.get(&la, nl - nm)?;
    let li = tl.index_of(lambda).ok_or("lambda not in table")?;
    let mi = tm.index_of(mu).ok_or("mu not in table")?;
    for ni in 0..tn.lambdas.len() {
        let prod = tm.hdag[mi].mul(&tn.hdag[ni]);
        let c = qt_prime_pairing(&prod, &tl.h[li]);
        if !c.is_zero() {
            out = out.add(&tn.h[ni].scale(&(c / tn.norms[ni].clone())));
        }
    }
    Ok(out)
}

/// Interpolation polynomial attached to `mu`: vanishes at the twisted
/// character sums of all strictly smaller partitions with the same core,
/// and takes value 1 at `mu` itself.
pub fn interpolation(mu: &Partition, r: usize, tables: &Tables) -> Result<MultiSymFunc, String> {
    let (_, _, label) = core_quot(mu, r);
    let nm = quot_size(mu, r);
    let tm = tables.get(&label, nm)?;
    let mi = tm.index_of(mu).ok_or("mu not in table")?;
    let shifted = pleth_translate(&tm.hdag[mi], 0, &RatFunc::from_int(-1));
    let twisted = nabla_on_dual(&shifted, &label.w0(), -1, tables)?;
    Ok(twisted.scale(&tm.norms[mi].inv()))
}

/// Evaluation at the reversed colored character sum: `f[iota D_lambda]`.
pub fn eval_iota_d(f: &MultiSymFunc, lambda: &Partition) -> RatFunc {
    eval_colored(f, &d_sum(lambda, f.r()).iota())
}

/// Evaluation at the shifted reversed sum: `f[sigma^k iota D_lambda]`.
pub fn eval_sigma_iota_d(f: &MultiSymFunc, lambda: &Partition, k: i64) -> RatFunc {
    eval_colored(f, &d_sum(lambda, f.r()).shift(k).iota())
}

/// Kostka coefficient, Schur-expansion route.
pub fn kostka_schur(
    gamma: &ColoredIndex,
    mu: &Partition,
    r: usize,
    tables: &Tables,
) -> Result<RatFunc, String> {
    let (_, _, label) = core_quot(mu, r);
    let n = quot_size(mu, r);
    if gamma.degree() != n {
        return Err(format!(
            "size mismatch: index {} has degree {}, quotient size is {}",
            gamma,
            gamma.degree(),
            n
        ));
    }
    let t = tables.get(&label, n)?;
    let mi = t.index_of(mu).ok_or("mu not in table")?;
    Ok(t.h_schur[mi]
        .get(gamma)
        .cloned()
        .unwrap_or_else(RatFunc::zero))
}

/// Kostka coefficient, plethystic route: the twisted Schur product with the
/// longest color-0 row removed, passed through the interpolation twist and
/// evaluated at `iota D_mu`.
pub fn kostka_plethystic(
    gamma: &ColoredIndex,
    mu: &Partition,
    r: usize,
    tables: &Tables,
) -> Result<RatFunc, String> {
    let (_, _, label) = core_quot(mu, r);
    let n = quot_size(mu, r);
    if gamma.degree() != n {
        return Err("size mismatch".to_string());
    }
    let m = pairing_twist_inv(r);
    let g0 = gamma.tuple()[0].clone();
    let g0_rest = if g0.is_empty() {
        Partition::empty()
    } else {
        Partition::new(g0.parts()[1..].to_vec())
    };
    // s_{gamma^{(0)}_{>1}}[M X^{(0)} - 1]: translate first, then twist.
    let mut prod = {
        let s = multi_schur(r, &ColoredIndex::single(r, 0, g0_rest));
        pleth_apply(&pleth_translate(&s, 0, &RatFunc::from_int(-1)), &m)
    };
    for i in 1..r {
        let s = multi_schur(
            r,
            &ColoredIndex::single(
                r,
                (-(i as i64)).rem_euclid(r as i64) as usize,
                gamma.tuple()[i].clone(),
            ),
        );
        prod = prod.mul(&pleth_apply(&s, &m));
    }
    let shifted = pleth_translate(&prod, 0, &RatFunc::from_int(-1));
    let twisted = nabla_on_dual(&shifted, &label.w0(), -1, tables)?;
    Ok(eval_iota_d(&twisted, mu))
}

/// The Fourier pairing at a core:
/// `<T[X^{(0)}] nabla_{w0 alpha} f, T[X^{(0)}] nabla_alpha g>'`.
pub fn fourier_pairing(
    f: &MultiSymFunc,
    g: &MultiSymFunc,
    alpha: &CoreLabel,
    tables: &Tables,
) -> Result<RatFunc, String> {
    let nf = nabla(&WreathPoly::new(f.clone(), alpha.w0()), 1, tables)?;
    let ng = nabla(&WreathPoly::new(g.clone(), alpha.clone()), 1, tables)?;
    let tf = pleth_translate(&nf.value, 0, &RatFunc::one());
    let tg = pleth_translate(&ng.value, 0, &RatFunc::one());
    Ok(qt_prime_pairing(&tf, &tg))
}

/// Reproducing kernel of the Fourier pairing, truncated by degree.
pub fn fourier_kernel(
    alpha: &CoreLabel,
    max_deg: u32,
    tables: &Tables,
) -> Result<TwoAlphabetElem, String> {
    let r = alpha.r();
    let base = alpha.w0();
    let mut summands = Vec::new();
    for n in 0..=max_deg {
        let t = tables.get(&base, n)?;
        for i in 0..t.lambdas.len() {
            // X-side: nabla_alpha^{-1} T[-X^{(0)}] H^dag_lambda / N_lambda
            let tx = pleth_translate(&t.hdag[i], 0, &RatFunc::from_int(-1));
            let fx = nabla_on_dual(&tx, alpha, -1, tables)?.scale(&t.norms[i].inv());
            // Y-side: nabla_{w0 alpha}^{-1} T[-Y^{(0)}] H_lambda
            let ty = pleth_translate(&t.h[i], 0, &RatFunc::from_int(-1));
            let fy = nabla(&WreathPoly::new(ty, base.clone()), -1, tables)?.value;
            summands.push((fx, fy));
        }
    }
    Ok(TwoAlphabetElem {
        r,
        max_deg,
        summands,
    })
}

/// The shifted global kernel, truncated by degree.
pub fn global_kernel(
    alpha: &CoreLabel,
    k: i64,
    max_deg: u32,
    tables: &Tables,
) -> Result<TwoAlphabetElem, String> {
    let r = alpha.r();
    let shifted = alpha.sigma_pow(-k);
    let base = shifted.w0(); // core of the expansion family
    let om_x = omega_series(&pairing_twist_inv(r).column(-k).neg(), r, max_deg);
    let om_y = omega_series(&pairing_twist_inv(r).column(0).neg(), r, max_deg);
    let mut summands = Vec::new();
    for n in 0..=max_deg {
        let t = tables.get(&base, n)?;
        for i in 0..t.lambdas.len() {
            // X-side: nabla^{-1} T[-X^{(-k)}] Omega[-X^{(-k)} M] nabla^{-1}
            // on H^dag_lambda / N_lambda
            let s0 = t.hdag[i].scale(&(t.norms[i].inv() * t.nabla_eig[i].inv()));
            let s1 = om_x.mul(&s0).truncate(max_deg);
            let s2 = pleth_translate(&s1, -k, &RatFunc::from_int(-1));
            let fx = nabla_on_dual(&s2, &shifted, -1, tables)?;
            // Y-side: nabla^{-1} T[-Y^{(0)}] Omega[-Y^{(0)} M] on H_lambda
            let y1 = om_y.mul(&t.h[i]).truncate(max_deg);
            let y2 = pleth_translate(&y1, 0, &RatFunc::from_int(-1));
            let fy = nabla(&WreathPoly::new(y2, base.clone()), -1, tables)?.value;
            summands.push((fx, fy));
        }
    }
    Ok(TwoAlphabetElem {
        r,
        max_deg,
        summands,
    })
}

/// Quotient size of a partition for a given r.
pub fn quot_size(lambda: &Partition, r: usize) -> u32 {
    let (core, _, _) = core_quot(lambda, r);
    (lambda.size() - core.size()) / r as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{from_core_quot, w0_act};
    use crate::ratfield::{GEN_Q, GEN_T};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn q() -> RatFunc {
        RatFunc::var(GEN_Q)
    }
    fn t() -> RatFunc {
        RatFunc::var(GEN_T)
    }

    #[test]
    fn modified_eh_trivial_and_r1() {
        let one = modified_eh(3, &ColoredIndex::empty(3), EhKind::E);
        assert_eq!(one, MultiSymFunc::one(3));
        // r=1: modified h_2 is h_2[X/(1-q)]
        let idx = ColoredIndex::single(1, 0, p(&[2]));
        let hh = modified_eh(1, &idx, EhKind::H);
        let c = hh.coeffs()[&ColoredIndex::single(1, 0, p(&[2]))].clone();
        let expect = (RatFunc::one() - q().pow(2)).inv() * RatFunc::from_int(2).inv();
        assert_eq!(c, expect);
    }

    #[test]
    fn modified_e1_colors() {
        // per-color coefficients (1, t^{-2}, t^{-1}) / (1 - t^{-3})
        let idx = ColoredIndex::single(3, 0, p(&[1]));
        let e = modified_eh(3, &idx, EhKind::E);
        let den = RatFunc::one() - t().inv().pow(3);
        let c0 = e.coeffs()[&ColoredIndex::single(3, 0, p(&[1]))].clone();
        let c1 = e.coeffs()[&ColoredIndex::single(3, 1, p(&[1]))].clone();
        let c2 = e.coeffs()[&ColoredIndex::single(3, 2, p(&[1]))].clone();
        assert_eq!(c0, den.clone().inv());
        assert_eq!(c1, t().inv().pow(2) / den.clone());
        assert_eq!(c2, t().inv() / den);
    }

    #[test]
    fn h_r1_degree2_matches_classical() {
        let mut tables = Tables::new(1);
        tables.ensure(&CoreLabel::zero(1), 2).unwrap();
        let t2 = tables.get(&CoreLabel::zero(1), 2).unwrap();
        assert_eq!(t2.lambdas, vec![p(&[1, 1]), p(&[2])]);
        let s2 = ColoredIndex::single(1, 0, p(&[2]));
        let s11 = ColoredIndex::single(1, 0, p(&[1, 1]));
        let h2 = &t2.h_schur[1];
        assert!(h2[&s2].is_one());
        assert_eq!(h2[&s11], q());
        let h11 = &t2.h_schur[0];
        assert!(h11[&s2].is_one());
        assert_eq!(h11[&s11], t());
    }

    #[test]
    fn h_grade0_is_one() {
        for label in [CoreLabel::zero(3), CoreLabel::new(vec![0, 1, -1])] {
            let t0 = compute_h(3, &label, 0).unwrap();
            assert_eq!(t0.h[0], MultiSymFunc::one(3));
            assert!(t0.norms[0].is_one());
        }
    }

    #[test]
    fn h_r3_biorthogonality_grade1() {
        let label = CoreLabel::new(vec![0, 1, -1]);
        let t1 = compute_h(3, &label, 1).unwrap();
        assert_eq!(t1.lambdas.len(), 3);
        for i in 0..3 {
            for j in 0..3 {
                let v = qt_prime_pairing(&t1.hdag[i], &t1.h[j]);
                if i == j {
                    assert!(!v.is_zero());
                } else {
                    assert!(v.is_zero(), "pairing {} {} = {}", i, j, v);
                }
            }
        }
    }

    #[test]
    fn triangularity_reverifies_r3() {
        // Both support conditions re-checked on the computed polynomials.
        let label = CoreLabel::zero(3);
        let t1 = compute_h(3, &label, 1).unwrap();
        let twist_up = PlethMatrix::sigma_poly(3, &[(0, RatFunc::one()), (-1, -q())]);
        let twist_down =
            PlethMatrix::sigma_poly(3, &[(0, RatFunc::one()), (-1, -t().inv())]);
        for (i, lam) in t1.lambdas.iter().enumerate() {
            for (idx, _) in to_multi_schur(&pleth_apply(&t1.h[i], &twist_up)) {
                let mu = from_core_quot(&label, idx.tuple());
                assert!(mu.dominates(lam), "up-support fails for {}", lam);
            }
            for (idx, _) in to_multi_schur(&pleth_apply(&t1.h[i], &twist_down)) {
                let mu = from_core_quot(&label, idx.tuple());
                assert!(lam.dominates(&mu), "down-support fails for {}", lam);
            }
        }
    }

    #[test]
    fn nabla_fixes_one_and_inverts() {
        let label = CoreLabel::new(vec![0, 1, -1]);
        let mut tables = Tables::new(3);
        tables.ensure(&label, 2).unwrap();
        let one = WreathPoly::one(label.clone());
        let n1 = nabla(&one, 1, &tables).unwrap();
        assert_eq!(n1.value, MultiSymFunc::one(3));
        let t2 = tables.get(&label, 2).unwrap();
        let f = WreathPoly::new(t2.h[0].add(&t2.h[3].scale(&q())), label.clone());
        let back = nabla(&nabla(&f, 1, &tables).unwrap(), -1, &tables).unwrap();
        assert_eq!(back.value, f.value);
    }

    #[test]
    fn nabla_eigenvalue_example() {
        // r=3, core zero, lambda=(3): one color-0 box at (0,0), eigenvalue -1.
        let label = CoreLabel::zero(3);
        let t1 = compute_h(3, &label, 1).unwrap();
        let i = t1.index_of(&p(&[3])).unwrap();
        assert_eq!(t1.nabla_eig[i], RatFunc::from_int(-1));
    }

    #[test]
    fn nabla_adjoint_is_w0() {
        let label = CoreLabel::new(vec![0, 1, -1]);
        let mut tables = Tables::new(3);
        tables.ensure(&label, 1).unwrap();
        tables.ensure(&label.w0(), 1).unwrap();
        let ta = tables.get(&label, 1).unwrap();
        let tb = tables.get(&label.w0(), 1).unwrap();
        for i in 0..ta.lambdas.len() {
            for j in 0..tb.lambdas.len() {
                let f = WreathPoly::new(ta.h[i].clone(), label.clone());
                let g = WreathPoly::new(tb.h[j].clone(), label.w0());
                let lhs = pair_wreath(&nabla(&f, 1, &tables).unwrap(), &g);
                let rhs = pair_wreath(&f, &nabla(&g, 1, &tables).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn down_arrow_involution_and_h() {
        let label = CoreLabel::new(vec![0, 1, -1]);
        let t1 = compute_h(3, &label, 1).unwrap();
        let f = WreathPoly::new(t1.h[1].clone(), label.clone());
        let d = down_arrow(&f);
        assert_eq!(d.value, t1.hdag[1]);
        assert_eq!(d.core, label.w0());
        assert_eq!(down_arrow(&d), f);
        // down nabla down = nabla^{-1}_{w0} on degree <= 1
        let mut tables = Tables::new(3);
        tables.ensure(&label, 1).unwrap();
        tables.ensure(&label.w0(), 1).unwrap();
        let lhs = down_arrow(&nabla(&down_arrow(&f), 1, &tables).unwrap());
        let rhs = nabla(&f, -1, &tables).unwrap();
        assert_eq!(lhs.value, rhs.value);
    }

    #[test]
    fn delta_fn_constant_term() {
        let e = delta_fn(&p(&[4, 2, 2]), 3, 0, 3);
        assert_eq!(e.component(0), MultiSymFunc::one(3));
        let s = star_delta_fn(&p(&[4, 2, 2]), 3, 1, 2);
        assert_eq!(s.component(0), MultiSymFunc::one(3));
    }

    #[test]
    fn w0_table_indexes_w0_partitions() {
        let label = CoreLabel::new(vec![0, 1, -1]);
        let t1 = compute_h(3, &label, 1).unwrap();
        let t1w = compute_h(3, &label.w0(), 1).unwrap();
        for lam in &t1.lambdas {
            assert!(t1w.lambdas.contains(&w0_act(lam, 3)));
        }
    }
}
