//! Single-color symmetric function conversions: symmetric group characters
//! by the ribbon recursion, Schur expansions, and the Newton recursions
//! between power sums and the e/h generators.
//!
//! The character tables are memoized per degree behind a mutex; fills are
//! idempotent, so concurrent use is safe.

use crate::partitions::{maya_of, partition_of, MayaDiagram, Partition};
use crate::ratfield::RatFunc;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// `z_lambda = prod k^{m_k} m_k!`, the centralizer order of the class.
pub fn z_of(lambda: &Partition) -> BigInt {
    let mut z = BigInt::one();
    let mut mult: BTreeMap<u32, u64> = BTreeMap::new();
    for &p in lambda.parts() {
        *mult.entry(p).or_insert(0) += 1;
    }
    for (k, m) in mult {
        for _ in 0..m {
            z *= BigInt::from(k);
        }
        for i in 1..=m {
            z *= BigInt::from(i);
        }
    }
    z
}

/// Remove every ribbon (rim hook) of length `k` from `lambda`; returns the
/// smaller partition and the ribbon height.
///
/// In Maya terms a length-`k` ribbon removal moves a bead from position `p`
/// to the gap at `p - k`; the height is the number of beads strictly
/// between.
pub fn remove_ribbons(lambda: &Partition, k: u32) -> Vec<(Partition, usize)> {
    let m = maya_of(lambda);
    let lo = -(lambda.part(1) as i64) - k as i64 - 2;
    let hi = lambda.len() as i64 + k as i64 + 2;
    let mut out = Vec::new();
    for p in lo..=hi {
        if m.value(p) == 1 && m.value(p - k as i64) == -1 {
            let m2 = MayaDiagram::from_values(
                |n| {
                    if n == p {
                        -1
                    } else if n == p - k as i64 {
                        1
                    } else {
                        m.value(n)
                    }
                },
                lo - 1,
                hi + 1,
            );
            let height = ((p - k as i64 + 1)..p).filter(|&n| m.value(n) == -1).count();
            out.push((partition_of(&m2).expect("ribbon removal keeps charge 0"), height));
        }
    }
    out
}

/// Character table of the symmetric group of degree `n`:
/// `table[(lambda, mu)] = chi^lambda(mu)`.
pub type CharTable = BTreeMap<(Partition, Partition), BigInt>;

fn char_value(lambda: &Partition, mu: &Partition, memo: &mut HashMap<(Partition, Partition), BigInt>) -> BigInt {
    if lambda.is_empty() && mu.is_empty() {
        return BigInt::one();
    }
    if let Some(v) = memo.get(&(lambda.clone(), mu.clone())) {
        return v.clone();
    }
    let k = mu.part(1);
    let rest = Partition::new(mu.parts()[1..].to_vec());
    let mut acc = BigInt::zero();
    for (smaller, height) in remove_ribbons(lambda, k) {
        let sign = if height % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        acc += sign * char_value(&smaller, &rest, memo);
    }
    memo.insert((lambda.clone(), mu.clone()), acc.clone());
    acc
}

/// Full character table for degree `n` (memoized globally).
pub fn char_table(n: u32) -> Arc<CharTable> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CharTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let mut table = CharTable::new();
    let mut memo = HashMap::new();
    let parts = Partition::all(n);
    for lam in &parts {
        for mu in &parts {
            table.insert((lam.clone(), mu.clone()), char_value(lam, mu, &mut memo));
        }
    }
    let arc = Arc::new(table);
    cache.lock().unwrap().insert(n, arc.clone());
    arc
}

/// Schur function in the power-sum basis:
/// `s_lambda = sum_mu chi^lambda(mu) / z_mu * p_mu`.
pub fn schur_in_p(lambda: &Partition) -> BTreeMap<Partition, RatFunc> {
    let n = lambda.size();
    let table = char_table(n);
    let mut out = BTreeMap::new();
    for mu in Partition::all(n) {
        let chi = table[&(lambda.clone(), mu.clone())].clone();
        if chi.is_zero() {
            continue;
        }
        let c = RatFunc::from_bigint(chi) / RatFunc::from_bigint(z_of(&mu));
        out.insert(mu, c);
    }
    out
}

/// Power sum in the Schur basis: `p_mu = sum_lambda chi^lambda(mu) s_lambda`.
pub fn p_in_schur(mu: &Partition) -> BTreeMap<Partition, BigInt> {
    let n = mu.size();
    let table = char_table(n);
    let mut out = BTreeMap::new();
    for lam in Partition::all(n) {
        let chi = table[&(lam.clone(), mu.clone())].clone();
        if !chi.is_zero() {
            out.insert(lam, chi);
        }
    }
    out
}

/// `h_n` in the power-sum basis: `sum_mu p_mu / z_mu`.
pub fn h_in_p(n: u32) -> BTreeMap<Partition, RatFunc> {
    Partition::all(n)
        .into_iter()
        .map(|mu| {
            let z = z_of(&mu);
            (mu, RatFunc::one() / RatFunc::from_bigint(z))
        })
        .collect()
}

/// `e_n` in the power-sum basis: `sum_mu (-1)^{n - l(mu)} p_mu / z_mu`.
pub fn e_in_p(n: u32) -> BTreeMap<Partition, RatFunc> {
    Partition::all(n)
        .into_iter()
        .map(|mu| {
            let sign = if (n as usize - mu.len()) % 2 == 0 { 1 } else { -1 };
            let z = z_of(&mu);
            (
                mu,
                RatFunc::from_int(sign) / RatFunc::from_bigint(z),
            )
        })
        .collect()
}

fn merge_parts(a: &Partition, b: &Partition) -> Partition {
    let mut parts: Vec<u32> = a.parts().iter().chain(b.parts()).copied().collect();
    parts.sort_unstable_by(|x, y| y.cmp(x));
    Partition::new(parts)
}

/// Multiply two expansions indexed by multisets of generator degrees
/// (products of `h`s, `e`s or `p`s).
pub fn mono_mul(
    a: &BTreeMap<Partition, RatFunc>,
    b: &BTreeMap<Partition, RatFunc>,
) -> BTreeMap<Partition, RatFunc> {
    let mut out: BTreeMap<Partition, RatFunc> = BTreeMap::new();
    for (la, ca) in a {
        for (lb, cb) in b {
            let key = merge_parts(la, lb);
            let v = ca.clone() * cb.clone();
            let entry = out.entry(key).or_insert_with(RatFunc::zero);
            *entry = entry.clone() + v;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Schur function as a polynomial in the `h_k` via the Jacobi-Trudi
/// determinant `s_lambda = det(h_{lambda_i - i + j})`; an independent route
/// from the character table. Keys are multisets of `h` indices.
pub fn schur_in_h(lambda: &Partition) -> BTreeMap<Partition, RatFunc> {
    let l = lambda.len();
    if l == 0 {
        return BTreeMap::from([(Partition::empty(), RatFunc::one())]);
    }
    let mut out: BTreeMap<Partition, RatFunc> = BTreeMap::new();
    // Expand the determinant over permutations of {0..l-1}.
    let mut perm: Vec<usize> = (0..l).collect();
    loop {
        // sign of perm
        let mut sign = 1i64;
        {
            let mut seen = vec![false; l];
            for s in 0..l {
                if seen[s] {
                    continue;
                }
                let mut len = 0;
                let mut cur = s;
                while !seen[cur] {
                    seen[cur] = true;
                    cur = perm[cur];
                    len += 1;
                }
                if len % 2 == 0 {
                    sign = -sign;
                }
            }
        }
        let mut degrees = Vec::with_capacity(l);
        let mut ok = true;
        for i in 0..l {
            let d = lambda.part(i + 1) as i64 - (i as i64) + perm[i] as i64;
            if d < 0 {
                ok = false;
                break;
            }
            degrees.push(d as u32);
        }
        if ok {
            let mut degrees: Vec<u32> = degrees.into_iter().filter(|&d| d > 0).collect();
            degrees.sort_unstable_by(|x, y| y.cmp(x));
            let key = Partition::new(degrees);
            let entry = out.entry(key).or_insert_with(RatFunc::zero);
            *entry = entry.clone() + RatFunc::from_int(sign);
        }
        // next permutation (lexicographic)
        let mut i = l as i64 - 2;
        while i >= 0 && perm[i as usize] >= perm[i as usize + 1] {
            i -= 1;
        }
        if i < 0 {
            break;
        }
        let i = i as usize;
        let mut j = l - 1;
        while perm[j] <= perm[i] {
            j -= 1;
        }
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Schur function in the power-sum basis via Jacobi-Trudi composed with the
/// `h -> p` expansion; independent of the character-table route.
pub fn schur_in_p_jt(lambda: &Partition) -> BTreeMap<Partition, RatFunc> {
    let hs = schur_in_h(lambda);
    let mut out: BTreeMap<Partition, RatFunc> = BTreeMap::new();
    for (hkey, c) in hs {
        let mut prod: BTreeMap<Partition, RatFunc> =
            BTreeMap::from([(Partition::empty(), c)]);
        for &k in hkey.parts() {
            prod = mono_mul(&prod, &h_in_p(k));
        }
        for (mu, v) in prod {
            let entry = out.entry(mu).or_insert_with(RatFunc::zero);
            *entry = entry.clone() + v;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `p_n` as a polynomial in the `h_k` (Newton): `p_n = n h_n - sum_{k<n}
/// h_k p_{n-k}` with keys multisets of `h` indices.
pub fn p_in_h(n: u32) -> BTreeMap<Partition, RatFunc> {
    assert!(n >= 1);
    let mut cache: Vec<BTreeMap<Partition, RatFunc>> = Vec::new();
    for m in 1..=n {
        let mut acc: BTreeMap<Partition, RatFunc> = BTreeMap::new();
        acc.insert(
            Partition::new(vec![m]),
            RatFunc::from_int(m as i64),
        );
        for k in 1..m {
            let hk = BTreeMap::from([(Partition::new(vec![k]), RatFunc::from_int(-1))]);
            let term = mono_mul(&hk, &cache[(m - k - 1) as usize]);
            for (key, v) in term {
                let entry = acc.entry(key).or_insert_with(RatFunc::zero);
                *entry = entry.clone() + v;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        cache.push(acc);
    }
    cache.pop().unwrap()
}

/// `p_n` as a polynomial in the `e_k` (Newton): keys are multisets of `e`
/// indices.
pub fn p_in_e(n: u32) -> BTreeMap<Partition, RatFunc> {
    assert!(n >= 1);
    let mut cache: Vec<BTreeMap<Partition, RatFunc>> = Vec::new();
    for m in 1..=n {
        let sign = if m % 2 == 1 { 1 } else { -1 };
        let mut acc: BTreeMap<Partition, RatFunc> = BTreeMap::new();
        acc.insert(
            Partition::new(vec![m]),
            RatFunc::from_int(sign * m as i64),
        );
        for k in 1..m {
            let s = if k % 2 == 1 { 1 } else { -1 };
            let ek = BTreeMap::from([(Partition::new(vec![k]), RatFunc::from_int(s))]);
            let term = mono_mul(&ek, &cache[(m - k - 1) as usize]);
            for (key, v) in term {
                let entry = acc.entry(key).or_insert_with(RatFunc::zero);
                *entry = entry.clone() + v;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        cache.push(acc);
    }
    cache.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn char_table_degree_3() {
        let t = char_table(3);
        // chi^{(3)} is trivial, chi^{(1,1,1)} is sign.
        assert_eq!(t[&(p(&[3]), p(&[1, 1, 1]))], BigInt::from(1));
        assert_eq!(t[&(p(&[3]), p(&[3]))], BigInt::from(1));
        assert_eq!(t[&(p(&[1, 1, 1]), p(&[2, 1]))], BigInt::from(-1));
        assert_eq!(t[&(p(&[2, 1]), p(&[1, 1, 1]))], BigInt::from(2));
        assert_eq!(t[&(p(&[2, 1]), p(&[3]))], BigInt::from(-1));
    }

    #[test]
    fn character_orthogonality() {
        // sum_mu chi^lam(mu) chi^nu(mu) / z_mu = delta
        for n in 1..=6u32 {
            let t = char_table(n);
            let parts = Partition::all(n);
            for a in &parts {
                for b in &parts {
                    let mut acc = RatFunc::zero();
                    for mu in &parts {
                        let x = t[&(a.clone(), mu.clone())].clone();
                        let y = t[&(b.clone(), mu.clone())].clone();
                        acc = acc
                            + RatFunc::from_bigint(x * y)
                                / RatFunc::from_bigint(z_of(mu));
                    }
                    let expect = if a == b { RatFunc::one() } else { RatFunc::zero() };
                    assert_eq!(acc, expect, "n={} a={} b={}", n, a, b);
                }
            }
        }
    }

    #[test]
    fn schur_routes_agree() {
        // Character-table route vs Jacobi-Trudi route.
        for n in 1..=6u32 {
            for lam in Partition::all(n) {
                assert_eq!(schur_in_p(&lam), schur_in_p_jt(&lam), "lam={}", lam);
            }
        }
    }

    #[test]
    fn newton_identities_consistent() {
        // p_n expressed in h then back through h_in_p must be p_n.
        for n in 1..=6u32 {
            let ph = p_in_h(n);
            let mut acc: BTreeMap<Partition, RatFunc> = BTreeMap::new();
            for (hkey, c) in ph {
                let mut prod: BTreeMap<Partition, RatFunc> =
                    BTreeMap::from([(Partition::empty(), c)]);
                for &k in hkey.parts() {
                    prod = mono_mul(&prod, &h_in_p(k));
                }
                for (mu, v) in prod {
                    let entry = acc.entry(mu).or_insert_with(RatFunc::zero);
                    *entry = entry.clone() + v;
                }
            }
            acc.retain(|_, c| !c.is_zero());
            assert_eq!(
                acc,
                BTreeMap::from([(p(&[n]), RatFunc::one())]),
                "n={}",
                n
            );
        }
    }

    #[test]
    fn z_values() {
        assert_eq!(z_of(&p(&[2])), BigInt::from(2));
        assert_eq!(z_of(&p(&[1, 1])), BigInt::from(2));
        assert_eq!(z_of(&p(&[3, 1, 1])), BigInt::from(6));
    }
}
