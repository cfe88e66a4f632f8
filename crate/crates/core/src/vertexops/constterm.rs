//! Constant-term extraction in one auxiliary variable at a time, with two
//! interchangeable methods: an exact residue sum over the simple poles that
//! are expanded in negative powers, and a brute-force window expansion.
//!
//! A problem is an expression `num / prod_j (z_{v_j} - P_j)` where `num` is
//! a Laurent polynomial over the auxiliary variables (with exact
//! rational-function coefficients in the parameters) and each pole `P_j` is
//! a monomial, possibly involving other auxiliary variables. The region
//! declaration marks which poles are "small" (`|P| < |z|`, expanded as
//! `z^{-1} sum (P/z)^n` and hence contributing to the constant term).

use crate::ratfield::{GenId, Monomial, RatFunc};

/// One pole factor `1/(z_var - value)` with its expansion region.
#[derive(Clone, Debug)]
pub struct Pole {
    pub var: GenId,
    pub value: RatFunc,
    /// Expanded as `z^{-1} sum (P/z)^n` when true (the pole contributes);
    /// as `-P^{-1} sum (z/P)^n` when false.
    pub small: bool,
}

/// A constant-term problem in several auxiliary variables.
#[derive(Clone, Debug)]
pub struct ConstTermProblem {
    /// Laurent polynomial numerator (must not involve the poles' variables
    /// in its denominators).
    pub num: RatFunc,
    pub poles: Vec<Pole>,
}

impl ConstTermProblem {
    pub fn new(num: RatFunc, poles: Vec<Pole>) -> Self {
        ConstTermProblem { num, poles }
    }

    /// Is the expression free of the given variable?
    pub fn free_of(&self, var: GenId) -> bool {
        self.num.num().degree_in(var) == 0
            && self.num.num().min_exponent_in(var) == 0
            && self.num.den().degree_in(var) == 0
            && self.poles.iter().all(|p| {
                p.var != var
                    && p.value.num().degree_in(var) == 0
                    && p.value.num().min_exponent_in(var) == 0
            })
    }
}

fn substitute_var(f: &RatFunc, var: GenId, value: &RatFunc) -> RatFunc {
    f.substitute(&|g| if g == var { Some(value.clone()) } else { None })
}

/// Reduce one variable by the residue method.
///
/// Requires the poles in `var` to be simple (pairwise distinct values);
/// returns the reduced problem over the remaining variables. The numerator
/// must have valuation at least 1 in `var` so that `num/z` expands in
/// nonnegative powers.
pub fn const_term_residue(
    problem: &ConstTermProblem,
    var: GenId,
) -> Result<ConstTermProblem, String> {
    let (mine, rest): (Vec<Pole>, Vec<Pole>) =
        problem.poles.iter().cloned().partition(|p| p.var == var);
    for (i, a) in mine.iter().enumerate() {
        for b in mine.iter().skip(i + 1) {
            if a.value == b.value {
                return Err(format!(
                    "pole {} is not simple in variable {}",
                    a.value,
                    crate::ratfield::gen_name(var)
                ));
            }
        }
    }
    // num / prod_j (z - P_j) = sum over small poles i of
    // (num(P_i)/P_i) / prod_{j != i} (P_i - P_j), provided num = z * F with
    // F a series in nonnegative powers of z.
    if problem.num.num().min_exponent_in(var) < 1 {
        return Err(format!(
            "numerator valuation in {} is below 1; the residue form needs z * F(z)",
            crate::ratfield::gen_name(var)
        ));
    }
    let mut acc = RatFunc::zero();
    for (i, p) in mine.iter().enumerate() {
        if !p.small {
            continue;
        }
        let mut term =
            substitute_var(&problem.num, var, &p.value) / p.value.clone();
        for (j, other) in mine.iter().enumerate() {
            if i == j {
                continue;
            }
            term = term / (p.value.clone() - other.value.clone());
        }
        acc = acc + term;
    }
    // the reduced problem: substitution may have introduced the remaining
    // variables into the numerator
    let rest = rest
        .into_iter()
        .map(|p| Pole {
            var: p.var,
            value: p.value,
            small: p.small,
        })
        .collect();
    Ok(ConstTermProblem::new(acc, rest))
}

/// Reduce one variable by brute-force window expansion; exact because the
/// numerator is a Laurent polynomial, so only finitely many series terms of
/// each pole factor can reach the constant term.
pub fn const_term_window(problem: &ConstTermProblem, var: GenId) -> ConstTermProblem {
    let (mine, rest): (Vec<Pole>, Vec<Pole>) =
        problem.poles.iter().cloned().partition(|p| p.var == var);
    // split the numerator into powers of `var`
    let mut by_exp: std::collections::BTreeMap<i32, RatFunc> = std::collections::BTreeMap::new();
    let den = problem.num.den().clone();
    for (m, c) in problem.num.num().terms() {
        let e = m.exponent(var);
        let rest_m = m.mul(&Monomial::var(var, -e));
        let v = RatFunc::new(
            crate::ratfield::MultiPoly::from_term(rest_m, c.clone()),
            den.clone(),
        );
        let entry = by_exp.entry(e).or_insert_with(RatFunc::zero);
        *entry = entry.clone() + v;
    }
    let lo = by_exp.keys().next().copied().unwrap_or(0);
    let hi = by_exp.keys().next_back().copied().unwrap_or(0);
    // expansion window: each small pole lowers the degree by at least 1,
    // each large pole keeps it; powers needed are bounded by the numerator
    // span.
    let span = (hi - lo).unsigned_abs() as usize + mine.len() + 1;
    // accumulate: for every choice of series term per pole, the var-degree
    // must cancel the numerator degree.
    let mut parts: Vec<Vec<(i32, RatFunc)>> = Vec::new();
    for p in &mine {
        let mut alts = Vec::new();
        if p.small {
            // 1/(z-P) = sum_{n>=0} P^n z^{-n-1}
            for n in 0..=span as i32 {
                alts.push((-n - 1, p.value.pow(n as i64)));
            }
        } else {
            // 1/(z-P) = -sum_{n>=0} z^n P^{-n-1}
            for n in 0..=span as i32 {
                alts.push((n, -p.value.pow(-(n as i64) - 1)));
            }
        }
        parts.push(alts);
    }
    let mut acc = RatFunc::zero();
    let mut stack: Vec<(usize, i32, RatFunc)> = vec![(0, 0, RatFunc::one())];
    while let Some((k, deg, coeff)) = stack.pop() {
        if k == parts.len() {
            if let Some(c) = by_exp.get(&(-deg)) {
                acc = acc + coeff * c.clone();
            }
            continue;
        }
        for (d, v) in &parts[k] {
            if v.is_zero() {
                continue;
            }
            stack.push((k + 1, deg + d, coeff.clone() * v.clone()));
        }
    }
    ConstTermProblem::new(acc, rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::{z_gen, GEN_Q, GEN_T};

    fn z(i: usize) -> RatFunc {
        RatFunc::var(z_gen(i))
    }
    fn q() -> RatFunc {
        RatFunc::var(GEN_Q)
    }
    fn t() -> RatFunc {
        RatFunc::var(GEN_T)
    }

    #[test]
    fn single_pole_evaluates() {
        // {z (1 + t z) / (z - q)}_0 = 1 + t q
        let num = z(0) * (RatFunc::one() + t() * z(0));
        let problem = ConstTermProblem::new(
            num,
            vec![Pole {
                var: z_gen(0),
                value: q(),
                small: true,
            }],
        );
        let reduced = const_term_residue(&problem, z_gen(0)).unwrap();
        assert_eq!(reduced.num, RatFunc::one() + t() * q());
        let windowed = const_term_window(&problem, z_gen(0));
        assert_eq!(windowed.num, reduced.num);
    }

    #[test]
    fn two_pole_case_matches_window() {
        // {z (1 + z^2) / ((z - q)(z - t))}_0 with both poles small
        let num = z(0) * (RatFunc::one() + z(0).pow(2));
        let problem = ConstTermProblem::new(
            num,
            vec![
                Pole {
                    var: z_gen(0),
                    value: q(),
                    small: true,
                },
                Pole {
                    var: z_gen(0),
                    value: t(),
                    small: true,
                },
            ],
        );
        let a = const_term_residue(&problem, z_gen(0)).unwrap();
        let b = const_term_window(&problem, z_gen(0));
        assert_eq!(a.num, b.num);
        // the residue value: (1+q^2)/(q-t) + (1+t^2)/(t-q)
        let expect = (RatFunc::one() + q().pow(2)) / (q() - t())
            + (RatFunc::one() + t().pow(2)) / (t() - q());
        assert_eq!(a.num, expect);
    }

    #[test]
    fn region_flip_changes_contributions() {
        // same expression, pole at t declared large: only q contributes to
        // the residue route; window route agrees.
        let num = z(0) * (RatFunc::one() + z(0).pow(2));
        let mk = |small_t: bool| {
            ConstTermProblem::new(
                num.clone(),
                vec![
                    Pole {
                        var: z_gen(0),
                        value: q(),
                        small: true,
                    },
                    Pole {
                        var: z_gen(0),
                        value: t(),
                        small: small_t,
                    },
                ],
            )
        };
        let both = const_term_residue(&mk(true), z_gen(0)).unwrap().num;
        let flipped = const_term_residue(&mk(false), z_gen(0)).unwrap().num;
        assert_ne!(both, flipped);
        assert_eq!(flipped, const_term_window(&mk(false), z_gen(0)).num);
        // with t large the only surviving evaluation is at q
        let expect = (RatFunc::one() + q().pow(2)) / (q() - t());
        assert_eq!(flipped, expect);
    }

    #[test]
    fn iterated_reduction_through_chained_poles() {
        // {z0 z1 / ((z0 - q z1)(z1 - t))}_0 over z0 then z1 = t q t = q t^2
        let num = z(0) * z(1);
        let problem = ConstTermProblem::new(
            num,
            vec![
                Pole {
                    var: z_gen(0),
                    value: q() * z(1),
                    small: true,
                },
                Pole {
                    var: z_gen(1),
                    value: t(),
                    small: true,
                },
            ],
        );
        let step1 = const_term_residue(&problem, z_gen(0)).unwrap();
        assert_eq!(step1.poles.len(), 1);
        assert_eq!(step1.num, z(1));
        let step2 = const_term_residue(&step1, z_gen(1)).unwrap();
        assert!(step2.poles.is_empty());
        assert!(step2.num.is_one());
        // window route agrees at both stages
        let w1 = const_term_window(&problem, z_gen(0));
        let w2 = const_term_window(&w1, z_gen(1));
        assert_eq!(w2.num, step2.num);
    }

    #[test]
    fn non_simple_pole_rejected() {
        let problem = ConstTermProblem::new(
            z(0),
            vec![
                Pole {
                    var: z_gen(0),
                    value: q(),
                    small: true,
                },
                Pole {
                    var: z_gen(0),
                    value: q(),
                    small: true,
                },
            ],
        );
        assert!(const_term_residue(&problem, z_gen(0)).is_err());
        // window route still reduces it
        let w = const_term_window(&problem, z_gen(0));
        assert!(w.poles.is_empty());
    }
}
