//! Multivariate polynomial gcd over the integers via the primitive
//! polynomial remainder sequence, plus exact sparse division.
//!
//! Inputs are ordinary polynomials (nonnegative exponents); canonical forms
//! in [`super::RatFunc`] depend on this gcd being exact, so everything here
//! works over `Z[x_1, ..., x_k]` with no rounding and no modular tricks.

use super::{GenId, Monomial, MultiPoly};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Exact division: returns `Some(a / b)` when `b` divides `a`, else `None`.
///
/// Standard sparse long division by the leading term under the graded-lex
/// order; the order is compatible with multiplication, so the loop
/// terminates.
pub fn div_exact(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(MultiPoly::zero());
    }
    if b.is_one() {
        return Some(a.clone());
    }
    let (lm, lc) = b.leading().unwrap();
    let mut rem = a.clone();
    let mut quo = MultiPoly::zero();
    while !rem.is_zero() {
        let (rm, rc) = rem.leading().unwrap();
        if !lm.divides(rm) {
            return None;
        }
        let (qc, r) = num_integer::Integer::div_rem(rc, lc);
        if !r.is_zero() {
            return None;
        }
        let qm = rm.mul(&lm.inv());
        quo.add_term(qm.clone(), qc.clone());
        rem = &rem - &b.mul_monomial(&qm, &qc);
    }
    Some(quo)
}

impl Monomial {
    pub(super) fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::new();
        for &(g, e) in self.exps() {
            let f = other.exponent(g);
            let m = e.min(f);
            if m != 0 {
                exps.push((g, m));
            }
        }
        Monomial { exps }
    }
}

/// Gcd of two polynomials over `Z`, including the integer content; the
/// result's leading coefficient is positive. `poly_gcd(0, b) = ±b`.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let g = poly_gcd_inner(a, b);
    if g.leading_coeff_positive() {
        g
    } else {
        -&g
    }
}

fn poly_gcd_inner(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    // Common monomial part, handled up front so the recursion sees
    // monomial-free inputs.
    let mono_a = common_monomial(a);
    let mono_b = common_monomial(b);
    let mono_g = mono_a.gcd(&mono_b);
    let a = a.mul_monomial(&mono_a.inv(), &BigInt::one());
    let b = b.mul_monomial(&mono_b.inv(), &BigInt::one());

    let ca = a.int_content();
    let cb = b.int_content();
    let cg = num_integer::Integer::gcd(&ca, &cb);
    let a = a.div_int(&ca);
    let b = b.div_int(&cb);

    let prim = if a.is_one() || b.is_one() || a == b {
        if a == b {
            a.clone()
        } else {
            MultiPoly::one()
        }
    } else {
        let mut vars = a.vars();
        for g in b.vars() {
            if !vars.contains(&g) {
                vars.push(g);
            }
        }
        if vars.is_empty() {
            MultiPoly::one()
        } else {
            // Main variable: minimize the larger of the two degrees.
            let main = *vars
                .iter()
                .min_by_key(|&&g| {
                    let da = a.degree_in(g).max(0) as i64;
                    let db = b.degree_in(g).max(0) as i64;
                    (da.max(db), g)
                })
                .unwrap();
            gcd_univar(&a, &b, main)
        }
    };
    prim.mul_monomial(&mono_g, &cg)
}

fn common_monomial(p: &MultiPoly) -> Monomial {
    let mut it = p.terms.keys();
    let mut acc = it.next().cloned().unwrap_or_default();
    for m in it {
        acc = acc.gcd(m);
        if acc.is_one() {
            break;
        }
    }
    acc
}

type UniPoly = BTreeMap<i32, MultiPoly>;

fn to_univar(p: &MultiPoly, v: GenId) -> UniPoly {
    let mut out: UniPoly = BTreeMap::new();
    for (m, c) in p.terms() {
        let e = m.exponent(v);
        let rest = m.mul(&Monomial::var(v, -e));
        out.entry(e)
            .or_insert_with(MultiPoly::zero)
            .add_term(rest, c.clone());
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn from_univar(p: &UniPoly, v: GenId) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for (e, c) in p {
        for (m, cc) in c.terms() {
            out.add_term(m.mul(&Monomial::var(v, *e)), cc.clone());
        }
    }
    out
}

fn uni_degree(p: &UniPoly) -> i32 {
    *p.keys().next_back().unwrap()
}

fn uni_content(p: &UniPoly) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for c in p.values() {
        acc = poly_gcd_inner(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn uni_primitive(p: &UniPoly) -> (UniPoly, MultiPoly) {
    let c = uni_content(p);
    if c.is_one() || c.is_zero() {
        return (p.clone(), c);
    }
    let prim = p
        .iter()
        .map(|(e, coeff)| (*e, div_exact(coeff, &c).expect("content divides")))
        .collect();
    (prim, c)
}

/// Pseudo-remainder of `f` by `g` (univariate view, polynomial coefficients).
fn uni_prem(f: &UniPoly, g: &UniPoly) -> UniPoly {
    let dg = uni_degree(g);
    let lg = g[&dg].clone();
    let mut r = f.clone();
    while !r.is_empty() && uni_degree(&r) >= dg {
        let dr = uni_degree(&r);
        let lr = r[&dr].clone();
        // r := lg * r - lr * x^(dr-dg) * g
        let mut next: UniPoly = BTreeMap::new();
        for (e, c) in &r {
            next.insert(*e, c * &lg);
        }
        for (e, c) in g {
            let ee = e + dr - dg;
            let sub = c * &lr;
            let entry = next.entry(ee).or_insert_with(MultiPoly::zero);
            *entry = &*entry - &sub;
        }
        next.retain(|_, c| !c.is_zero());
        r = next;
    }
    r
}

fn gcd_univar(a: &MultiPoly, b: &MultiPoly, v: GenId) -> MultiPoly {
    let ua = to_univar(a, v);
    let ub = to_univar(b, v);
    let (pa, ca) = uni_primitive(&ua);
    let (pb, cb) = uni_primitive(&ub);
    let content_gcd = poly_gcd_inner(&ca, &cb);

    let (mut f, mut g) = if uni_degree(&pa) >= uni_degree(&pb) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        let r = uni_prem(&f, &g);
        if r.is_empty() {
            break;
        }
        if uni_degree(&r) == 0 {
            // Nontrivial constant remainder: primitive parts are coprime.
            g = BTreeMap::from([(0, MultiPoly::one())]);
            break;
        }
        let (rp, _) = uni_primitive(&r);
        f = g;
        g = rp;
    }
    let (gp, _) = uni_primitive(&g);
    let gm = from_univar(&gp, v);
    let gm = if gm.leading_coeff_positive() { gm } else { -&gm };
    &gm * &content_gcd
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::{one_minus, GEN_Q, GEN_T};

    #[test]
    fn div_exact_basic() {
        let a = one_minus(Monomial::var(GEN_Q, 2));
        let b = one_minus(Monomial::var(GEN_Q, 1));
        let q = div_exact(&a, &b).unwrap();
        let mut expect = MultiPoly::one();
        expect.add_term(Monomial::var(GEN_Q, 1), BigInt::one());
        assert_eq!(q, expect);
        assert!(div_exact(&b, &a).is_none());
    }

    #[test]
    fn gcd_cyclotomic_products() {
        // gcd((1-q^6)(1-t), (1-q^4)) = q^2 - 1 up to the sign convention.
        let a = &one_minus(Monomial::var(GEN_Q, 6)) * &one_minus(Monomial::var(GEN_T, 1));
        let b = one_minus(Monomial::var(GEN_Q, 4));
        let g = poly_gcd(&a, &b);
        let expect = -&one_minus(Monomial::var(GEN_Q, 2));
        assert_eq!(g, expect);
        assert!(div_exact(&a, &g).is_some());
        assert!(div_exact(&b, &g).is_some());
    }

    #[test]
    fn gcd_with_content() {
        // gcd(2(1-q), 4(1-q)(1-t)) = 2(q-1) with positive leading term.
        let two = MultiPoly::from_int(2);
        let a = &two * &one_minus(Monomial::var(GEN_Q, 1));
        let b = &(&MultiPoly::from_int(4) * &one_minus(Monomial::var(GEN_Q, 1)))
            * &one_minus(Monomial::var(GEN_T, 1));
        let g = poly_gcd(&a, &b);
        assert_eq!(g, -&a);
    }

    #[test]
    fn gcd_bivariate() {
        // gcd((q-t)(q+t), (q-t)^2) = q-t
        let qmt = &MultiPoly::var(GEN_Q) - &MultiPoly::var(GEN_T);
        let qpt = &MultiPoly::var(GEN_Q) + &MultiPoly::var(GEN_T);
        let a = &qmt * &qpt;
        let b = &qmt * &qmt;
        assert_eq!(poly_gcd(&a, &b), qmt);
    }

    #[test]
    fn gcd_coprime() {
        let a = one_minus(Monomial::var(GEN_Q, 1));
        let b = one_minus(Monomial::var(GEN_T, 1));
        assert!(poly_gcd(&a, &b).is_one());
    }
}
