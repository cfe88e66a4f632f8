//! Fock-space matrix elements and Heisenberg eigenvalues, over the
//! half-power parameter field.
//!
//! The Fock space has basis vectors indexed by partitions. Raising and
//! lowering currents act with matrix elements given by products over
//! addable and removable corners of a fixed color; the diagonal currents
//! exponentiate Heisenberg generators whose eigenvalues are colored
//! character sums. Everything here is exact: the generators are `Q`, `D`
//! (with squares the two deformation parameters) and the evaluation
//! parameter `v`, and `q = Q^2 D^2`, `t = Q^2 D^{-2}`.

pub mod constterm;
pub mod dseries;

use crate::partitions::{color_count, d_sum, ColoredCharSum, Partition};
use crate::ratfield::series::{series_expand, TruncSeries};
use crate::ratfield::{Monomial, RatFunc, GEN_DD, GEN_Q, GEN_QQ, GEN_T, GEN_V};
use std::collections::BTreeMap;

/// The first deformation parameter, as the square of its half-power
/// generator.
pub fn qq() -> RatFunc {
    RatFunc::monomial(Monomial::var(GEN_QQ, 2))
}

/// The second deformation parameter.
pub fn dd() -> RatFunc {
    RatFunc::monomial(Monomial::var(GEN_DD, 2))
}

/// The Fock evaluation parameter `v`.
pub fn vv() -> RatFunc {
    RatFunc::var(GEN_V)
}

/// Rewrite a rational function of `q, t` in the half-power generators:
/// `q -> Q^2 D^2`, `t -> Q^2 D^{-2}`.
pub fn to_half_powers(f: &RatFunc) -> RatFunc {
    f.substitute(&|g| match g {
        GEN_Q => Some(RatFunc::monomial(
            Monomial::var(GEN_QQ, 2).mul(&Monomial::var(GEN_DD, 2)),
        )),
        GEN_T => Some(RatFunc::monomial(
            Monomial::var(GEN_QQ, 2).mul(&Monomial::var(GEN_DD, -2)),
        )),
        _ => None,
    })
}

/// Box character `q^a t^b` in the half-power generators.
pub fn chi_half(a: u32, b: u32) -> RatFunc {
    to_half_powers(&Partition::box_char(a, b))
}

/// The quantum integer `[k] = (x^k - x^{-k})/(x - x^{-1})` at the first
/// deformation parameter.
pub fn quantum_int(k: i64) -> RatFunc {
    let x = qq();
    (x.pow(k) - x.pow(-k)) / (x.clone() - x.inv())
}

/// A current matrix element: `coeff * delta(z / support)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FockMatrixElem {
    pub coeff: RatFunc,
    pub support: RatFunc,
}

/// Which current of the Fock action.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Current {
    /// Lowering between `lambda` and `lambda + box`.
    E,
    /// Raising between `lambda` and `lambda + box`.
    F,
}

/// Matrix element of a raising/lowering current between `lambda` and
/// `mu = lambda + box`; `None` when the shapes do not differ by one
/// addable box of the named color.
pub fn fock_current(
    kind: Current,
    i: usize,
    lambda: &Partition,
    mu: &Partition,
    r: usize,
) -> Option<FockMatrixElem> {
    let bx = lambda
        .addable()
        .into_iter()
        .find(|&(a, b)| Partition::color_of(a, b, r) == i && &lambda.add_box(a, b) == mu)?;
    let (ba, bb) = bx;
    let chi_box = chi_half(ba, bb);
    let d_next = color_count(lambda, r, (i + 1) % r) as i64;
    let support = chi_box.clone() * vv();
    let q2 = qq().pow(2);
    match kind {
        Current::E => {
            let mut coeff = (-dd()).pow(d_next);
            for (x, y) in lambda.removable() {
                if Partition::color_of(x, y, r) == i {
                    coeff = coeff * (chi_box.clone() - q2.clone() * chi_half(x, y));
                }
            }
            for (x, y) in lambda.addable() {
                if (x, y) == bx || Partition::color_of(x, y, r) != i {
                    continue;
                }
                coeff = coeff / (chi_box.clone() - chi_half(x, y));
            }
            Some(FockMatrixElem { coeff, support })
        }
        Current::F => {
            let mut coeff = (-dd()).pow(-d_next);
            for (x, y) in lambda.addable() {
                if (x, y) == bx || Partition::color_of(x, y, r) != i {
                    continue;
                }
                coeff = coeff * (qq() * chi_box.clone() - qq().inv() * chi_half(x, y));
            }
            for (x, y) in lambda.removable() {
                if Partition::color_of(x, y, r) == i {
                    coeff = coeff / (qq() * (chi_box.clone() - chi_half(x, y)));
                }
            }
            Some(FockMatrixElem { coeff, support })
        }
    }
}

/// Diagonal current eigenvalue as a rational function of `z`: a product
/// over addable and removable corners of color `i`.
pub fn psi_eigenvalue(lambda: &Partition, i: usize, r: usize, z: RatFunc) -> RatFunc {
    let mut acc = RatFunc::one();
    for (a, b) in lambda.addable() {
        if Partition::color_of(a, b, r) != i {
            continue;
        }
        let chi = chi_half(a, b) * vv();
        acc = acc * (qq() * z.clone() - qq().inv() * chi.clone()) / (z.clone() - chi);
    }
    for (a, b) in lambda.removable() {
        if Partition::color_of(a, b, r) != i {
            continue;
        }
        let chi = chi_half(a, b) * vv();
        acc = acc * (qq().inv() * z.clone() - qq() * chi.clone()) / (z.clone() - chi);
    }
    acc
}

/// Heisenberg eigenvalue for positive modes, closed form:
/// `v^k [k] / (qq^k k) * p_k[-D_lambda^{(i)}]`.
pub fn boson_eigen(lambda: &Partition, i: usize, k: u32, r: usize) -> RatFunc {
    let d = d_sum(lambda, r);
    let pk = to_half_powers(&(-d.get(i as i64).clone()).power_exponents(k as i32));
    vv().pow(k as i64) * quantum_int(k as i64) / (qq().pow(k as i64) * RatFunc::from_int(k as i64))
        * pk
}

/// Heisenberg eigenvalue for negative modes:
/// `qq^k [k] / (v^k k) * p_k[-(D^{(i)})_*]`.
pub fn boson_eigen_neg(lambda: &Partition, i: usize, k: u32, r: usize) -> RatFunc {
    let d = d_sum(lambda, r);
    let pk = to_half_powers(
        &(-d.get(i as i64).clone())
            .invert_qt()
            .power_exponents(k as i32),
    );
    qq().pow(k as i64) * quantum_int(k as i64)
        / (vv().pow(k as i64) * RatFunc::from_int(k as i64))
        * pk
}

/// Independent oracle: extract the Heisenberg eigenvalue as the degree-k
/// log-coefficient of the diagonal current's eigenvalue, expanded at
/// infinity and normalized by its limit there.
pub fn boson_eigen_by_log(
    lambda: &Partition,
    i: usize,
    k: u32,
    r: usize,
) -> Result<RatFunc, String> {
    let w = crate::ratfield::z_gen(0);
    let mut prod = TruncSeries::constant(vec![w], k as i32 + 1, RatFunc::one());
    let factors: Vec<(RatFunc, RatFunc)> = {
        let mut fs = Vec::new();
        for (a, b) in lambda.addable() {
            if Partition::color_of(a, b, r) == i {
                fs.push((qq(), chi_half(a, b) * vv()));
            }
        }
        for (a, b) in lambda.removable() {
            if Partition::color_of(a, b, r) == i {
                fs.push((qq().inv(), chi_half(a, b) * vv()));
            }
        }
        fs
    };
    for (lead, chi) in factors {
        // factor (lead z - lead^{-1} chi)/(z - chi) in w = 1/z, divided by
        // its value lead at infinity
        let f = (lead.clone() - lead.inv() * chi.clone() * RatFunc::var(w))
            / (RatFunc::one() - chi * RatFunc::var(w));
        let s = series_expand(&(f / lead), &[w], k as i32 + 1)?;
        prod = prod.mul(&s);
    }
    let lg = prod.log();
    let coeff = lg.coefficient(&[k as i32]);
    Ok(coeff / (qq() - qq().inv()))
}

/// The normalized dual-boson eigenvalue: the color-p component of
/// `-D_lambda / ((1-q)(1-t))`, plain for the positive mode and with
/// inverted characters for the negative mode. Returned in `q, t`.
pub fn dual_boson_eigen(lambda: &Partition, p: usize, positive: bool, r: usize) -> RatFunc {
    let base = d_sum(lambda, r).neg().div_one_minus_q_one_minus_t();
    if positive {
        base.get(p as i64).clone()
    } else {
        base.star().get(p as i64).clone()
    }
}

/// The colored family entering the dual-boson eigenvalues.
pub fn dual_boson_sum(lambda: &Partition, r: usize) -> ColoredCharSum {
    d_sum(lambda, r).neg().div_one_minus_q_one_minus_t()
}

/// A finite formal distribution supported on monomial loci: a sum of
/// `c * delta(z/a) delta(w/b)` terms, keyed by the canonical forms of the
/// supports.
pub type DeltaSupport = BTreeMap<(String, String), RatFunc>;

fn add_delta(map: &mut DeltaSupport, a: &RatFunc, b: &RatFunc, c: RatFunc) {
    let key = (a.to_string(), b.to_string());
    let entry = map.entry(key.clone()).or_insert_with(RatFunc::zero);
    *entry = entry.clone() + c;
    if entry.is_zero() {
        map.remove(&key);
    }
}

/// Both sides of the diagonal part of the raising/lowering commutation
/// relation on the vacuum, as delta-supported distributions.
pub fn ef_commutator_check(r: usize, i: usize, j: usize) -> (DeltaSupport, DeltaSupport) {
    let vac = Partition::empty();
    let mut lhs = DeltaSupport::new();
    // (qq - qq^{-1}) <0| e_i(z) f_j(w) |0>: f adds a box, e removes it.
    for (a, b) in vac.addable() {
        if Partition::color_of(a, b, r) != j {
            continue;
        }
        let mid = vac.add_box(a, b);
        let fe = fock_current(Current::F, j, &vac, &mid, r).unwrap();
        if let Some(ee) = fock_current(Current::E, i, &vac, &mid, r) {
            add_delta(
                &mut lhs,
                &ee.support,
                &fe.support,
                (qq() - qq().inv()) * ee.coeff * fe.coeff,
            );
        }
    }
    // f_j(w) e_i(z) kills the vacuum, so the commutator is one-sided.
    let mut rhs = DeltaSupport::new();
    if i == j {
        // delta(w/z)(psi^+ - psi^-): the expansion difference collects one
        // delta per simple pole of the eigenvalue, weighted by the residue.
        for (a, b) in vac.addable() {
            if Partition::color_of(a, b, r) != i {
                continue;
            }
            let chi = chi_half(a, b) * vv();
            let res = (qq() - qq().inv()) * chi.clone();
            add_delta(&mut rhs, &chi, &chi, res / chi.clone());
        }
    }
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn vacuum_e_element_is_plain_delta() {
        let el = fock_current(Current::E, 0, &Partition::empty(), &p(&[1]), 3).unwrap();
        assert!(el.coeff.is_one());
        assert_eq!(el.support, vv());
        assert!(fock_current(Current::E, 1, &Partition::empty(), &p(&[1]), 3).is_none());
    }

    #[test]
    fn vacuum_psi_is_single_ratio() {
        let z = RatFunc::var(crate::ratfield::z_gen(1));
        let got = psi_eigenvalue(&Partition::empty(), 0, 3, z.clone());
        let expect = (qq() * z.clone() - qq().inv() * vv()) / (z - vv());
        assert_eq!(got, expect);
    }

    #[test]
    fn boson_eigen_vacuum() {
        let v = boson_eigen(&Partition::empty(), 0, 1, 3);
        assert_eq!(v, vv() / qq());
    }

    #[test]
    fn boson_closed_form_matches_log_oracle() {
        let r = 3usize;
        for n in 0..=4u32 {
            for lam in Partition::all(n) {
                for i in 0..r {
                    for k in 1..=3u32 {
                        let closed = boson_eigen(&lam, i, k, r);
                        let logged = boson_eigen_by_log(&lam, i, k, r).unwrap();
                        assert_eq!(closed, logged, "lam={} i={} k={}", lam, i, k);
                    }
                }
            }
        }
    }

    #[test]
    fn psi_degree_balance() {
        // The eigenvalue tends to qq^{#A - #R} at infinity; by the charge
        // count identity this matches the zero-mode weight.
        let r = 3usize;
        for lam in Partition::all(5) {
            for i in 0..r {
                let na = lam
                    .addable()
                    .iter()
                    .filter(|&&(a, b)| Partition::color_of(a, b, r) == i)
                    .count() as i64;
                let nr = lam
                    .removable()
                    .iter()
                    .filter(|&&(a, b)| Partition::color_of(a, b, r) == i)
                    .count() as i64;
                let w = crate::ratfield::z_gen(2);
                let f = psi_eigenvalue(&lam, i, r, RatFunc::var(w));
                let fw = f.substitute(&|g| {
                    if g == w {
                        Some(RatFunc::monomial(Monomial::var(w, -1)))
                    } else {
                        None
                    }
                });
                let s = series_expand(&fw, &[w], 0).unwrap();
                assert_eq!(s.coefficient(&[0]), qq().pow(na - nr), "lam={} i={}", lam, i);
            }
        }
    }

    #[test]
    fn dual_boson_vacuum() {
        let got = dual_boson_eigen(&Partition::empty(), 0, true, 3);
        let expect = ColoredCharSum::geometric(3).get(0).clone();
        assert_eq!(got, expect);
    }

    #[test]
    fn dual_form_summation_oracle() {
        // The double-sum combination of plain eigenvalues reproduces the
        // normalized dual eigenvalue at levels n <= 2.
        let r = 3usize;
        let q = RatFunc::var(GEN_Q);
        let t = RatFunc::var(GEN_T);
        for lam in [Partition::empty(), p(&[1]), p(&[2, 1]), p(&[4, 2, 2])] {
            for pp in 0..r {
                for n in 1..=2i32 {
                    let mut combo = RatFunc::zero();
                    for j in 0..r as i64 {
                        for k in 0..r as i64 {
                            let b = boson_eigen(
                                &lam,
                                (pp as i64 + j - k).rem_euclid(r as i64) as usize,
                                n as u32,
                                r,
                            );
                            combo = combo
                                + to_half_powers(&(q.pow(j) * t.pow(k)).power_exponents(n)) * b;
                        }
                    }
                    let den = to_half_powers(
                        &((RatFunc::one() - q.pow(r as i64 * n as i64))
                            * (RatFunc::one() - t.pow(r as i64 * n as i64))),
                    );
                    let coeff = qq().pow(n as i64) * (qq() - qq().inv())
                        * RatFunc::from_int(n as i64)
                        / (den * quantum_int(n as i64));
                    let lhs = coeff * combo / ((qq() - qq().inv()) * vv().pow(n as i64));
                    let rhs =
                        to_half_powers(&dual_boson_eigen(&lam, pp, true, r).power_exponents(n));
                    assert_eq!(lhs, rhs, "lam={} p={} n={}", lam, pp, n);
                }
            }
        }
    }

    #[test]
    fn ef_commutator_diagonal_vacuum() {
        let (lhs, rhs) = ef_commutator_check(3, 0, 0);
        assert_eq!(lhs, rhs);
        let (lhs, rhs) = ef_commutator_check(3, 1, 0);
        assert!(lhs.is_empty());
        assert!(rhs.is_empty());
    }
}
