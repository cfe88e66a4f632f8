//! Exact linear algebra over the rational-function field: fraction-free
//! (Bareiss) elimination with per-row content stripping, rank and nullspace.
//!
//! Rows are cleared of denominators up front, so the elimination works with
//! polynomial entries throughout; the two-step Bareiss update keeps every
//! intermediate entry polynomial via exact division.

use crate::ratfield::{div_exact, poly_gcd, MultiPoly, RatFunc};

/// Row-reduce a matrix of rational functions; returns the echelon rows (as
/// polynomials), and the pivot column of each.
fn echelon(rows: &[Vec<RatFunc>]) -> (Vec<Vec<MultiPoly>>, Vec<usize>) {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    // Clear denominators per row, then strip content.
    let mut mat: Vec<Vec<MultiPoly>> = rows
        .iter()
        .map(|row| {
            let mut den = MultiPoly::one();
            for e in row {
                if !e.is_zero() {
                    let g = poly_gcd(&den, e.den());
                    den = &den * &div_exact(e.den(), &g).unwrap();
                }
            }
            let cleared: Vec<MultiPoly> = row
                .iter()
                .map(|e| {
                    if e.is_zero() {
                        MultiPoly::zero()
                    } else {
                        &(div_exact(&den, e.den()).unwrap()) * e.num()
                    }
                })
                .collect();
            strip_content(cleared)
        })
        .collect();

    let mut pivots = Vec::new();
    let mut echelon_rows: Vec<Vec<MultiPoly>> = Vec::new();
    let mut prev_pivot = MultiPoly::one();
    for col in 0..ncols {
        // smallest nonzero entry in this column for the pivot
        let cand = mat
            .iter()
            .enumerate()
            .filter(|(_, row)| !row[col].is_zero())
            .min_by_key(|(i, row)| (row[col].num_terms(), *i))
            .map(|(i, _)| i);
        let Some(pivot_row) = cand else { continue };
        let prow = mat.swap_remove(pivot_row);
        let pv = prow[col].clone();
        let mut next: Vec<Vec<MultiPoly>> = Vec::with_capacity(mat.len());
        for row in &mat {
            if row[col].is_zero() {
                // still divide by the previous pivot to keep sizes uniform?
                // Bareiss requires the update only on eliminated rows; rows
                // untouched keep their entries.
                next.push(row.clone());
                continue;
            }
            // Raw update: pv * row[j] - row[col] * prow[j].
            let raw: Vec<MultiPoly> = (0..ncols)
                .map(|j| {
                    if j <= col {
                        MultiPoly::zero()
                    } else {
                        &(&pv * &row[j]) - &(&row[col] * &prow[j])
                    }
                })
                .collect();
            // Bareiss division by the previous pivot, applied only when the
            // whole row divides (content stripping can break the pattern;
            // then the row is kept raw, scaled uniformly).
            let divided: Option<Vec<MultiPoly>> = raw
                .iter()
                .map(|e| {
                    if e.is_zero() {
                        Some(MultiPoly::zero())
                    } else {
                        div_exact(e, &prev_pivot)
                    }
                })
                .collect();
            next.push(strip_content(divided.unwrap_or(raw)));
        }
        prev_pivot = pv;
        pivots.push(col);
        echelon_rows.push(prow);
        mat = next;
        mat.retain(|row| row.iter().any(|e| !e.is_zero()));
        if mat.is_empty() {
            break;
        }
    }
    (echelon_rows, pivots)
}

fn strip_content(row: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let mut g = MultiPoly::zero();
    for e in &row {
        if !e.is_zero() {
            g = poly_gcd(&g, e);
            if g.is_one() {
                return row;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return row;
    }
    row.iter()
        .map(|e| {
            if e.is_zero() {
                MultiPoly::zero()
            } else {
                div_exact(e, &g).unwrap()
            }
        })
        .collect()
}

/// Rank of a matrix of rational functions.
pub fn rank(rows: &[Vec<RatFunc>]) -> usize {
    echelon(rows).1.len()
}

/// Basis of the right nullspace of the matrix `rows` (solutions of
/// `rows * x = 0`), as vectors of rational functions. Deterministic: one
/// basis vector per free column, in column order.
pub fn nullspace(rows: &[Vec<RatFunc>]) -> Vec<Vec<RatFunc>> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let (ech, pivots) = echelon(rows);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut x = vec![RatFunc::zero(); ncols];
        x[free] = RatFunc::one();
        // Solve the echelon system bottom-up.
        for (k, row) in ech.iter().enumerate().rev() {
            let pc = pivots[k];
            let mut acc = RatFunc::zero();
            for j in (pc + 1)..ncols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc = acc + RatFunc::from_poly(row[j].clone()) * x[j].clone();
                }
            }
            if acc.is_zero() {
                x[pc] = RatFunc::zero();
            } else {
                x[pc] = -(acc / RatFunc::from_poly(row[pc].clone()));
            }
        }
        basis.push(x);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::{GEN_Q, GEN_T};

    fn q() -> RatFunc {
        RatFunc::var(GEN_Q)
    }
    fn t() -> RatFunc {
        RatFunc::var(GEN_T)
    }

    #[test]
    fn rank_and_nullspace_simple() {
        // x + q y = 0 has a one-dimensional nullspace (-q, 1).
        let rows = vec![vec![RatFunc::one(), q()]];
        assert_eq!(rank(&rows), 1);
        let ns = nullspace(&rows);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert_eq!(v[0].clone() + q() * v[1].clone(), RatFunc::zero());
    }

    #[test]
    fn nullspace_of_rank_deficient() {
        // rows are multiples: rank 1, nullspace dim 2
        let rows = vec![
            vec![q(), t(), RatFunc::one()],
            vec![q() * t(), t() * t(), t()],
        ];
        assert_eq!(rank(&rows), 1);
        let ns = nullspace(&rows);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let acc = q() * v[0].clone() + t() * v[1].clone() + v[2].clone();
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn nullspace_full_rank_is_empty() {
        let rows = vec![
            vec![RatFunc::one(), q()],
            vec![t(), RatFunc::one()],
        ];
        assert_eq!(rank(&rows), 2);
        assert!(nullspace(&rows).is_empty());
    }

    #[test]
    fn random_consistency() {
        // A * x = 0 for every reported basis vector, pseudo-random A.
        let mut seed = 0xfeedbeefu64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..5 {
            let m = 3 + (next() % 3) as usize;
            let n = 4 + (next() % 3) as usize;
            let rows: Vec<Vec<RatFunc>> = (0..m)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let c = (next() % 5) as i64 - 2;
                            let eq = (next() % 3) as i64;
                            let et = (next() % 2) as i64;
                            RatFunc::from_int(c) * q().pow(eq) * t().pow(et)
                        })
                        .collect()
                })
                .collect();
            let ns = nullspace(&rows);
            assert_eq!(ns.len() + rank(&rows), n);
            for v in &ns {
                for row in &rows {
                    let mut acc = RatFunc::zero();
                    for (a, x) in row.iter().zip(v) {
                        acc = acc + a.clone() * x.clone();
                    }
                    assert!(acc.is_zero());
                }
            }
        }
    }
}
