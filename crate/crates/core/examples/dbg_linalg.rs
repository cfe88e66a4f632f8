use wm_core::ratfield::{RatFunc, GEN_Q, GEN_T};
use wm_core::wreath::linalg::{nullspace, rank};

fn main() {
    let q = || RatFunc::var(GEN_Q);
    let t = || RatFunc::var(GEN_T);
    let mut seed = 0xfeedbeefu64;
    let mut next = move || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        seed
    };
    for trial in 0..5 {
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
        println!("trial {} m={} n={} rank={} ns={}", trial, m, n, rank(&rows), ns.len());
        for (vi, v) in ns.iter().enumerate() {
            for (ri, row) in rows.iter().enumerate() {
                let mut acc = RatFunc::zero();
                for (a, x) in row.iter().zip(v) {
                    acc = acc + a.clone() * x.clone();
                }
                if !acc.is_zero() {
                    println!("  BAD: vec {} row {} -> {}", vi, ri, acc);
                    println!("  row: {:?}", row);
                    println!("  vec: {:?}", v);
                }
            }
        }
    }
}
