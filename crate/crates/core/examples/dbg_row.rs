use wm_core::partitions::{CoreLabel, Partition};
use wm_core::ratfield::{GEN_Q, GEN_T};
use wm_core::vertexops::dseries::*;
use wm_core::wreath::{Tables, WreathPoly};

fn main() {
    let r = 3usize;
    let label = CoreLabel::zero(r);
    let mut tables = Tables::new(r);
    tables.ensure(&label, 1).unwrap();
    let order = 3;
    // vacuum, plain row operator, engine vs eigenvalue candidates
    let f = WreathPoly::one(label.clone());
    for p in 0..r as i64 {
        let got = colrow_apply(&f, p, false, false, order, None).unwrap();
        for m in 0..r as i64 {
            let ev = {
                let d = wm_core::partitions::d_sum(&Partition::empty(), r);
                div_one_minus_q(&d).get(m).clone()
            };
            let mut expect = SeriesSym::zero(r, order, false);
            expect.add_term(
                wm_core::symfunc::ColoredIndex::empty(r),
                expand_region(&ev, false, order).unwrap(),
            );
            if got.eq_to_order(&expect, order) {
                println!("plain row p={} matches component m={}", p, m);
            }
        }
    }
    // diagonality + component on grade-1 H
    let tab = tables.get(&label, 1).unwrap();
    for p in 0..r as i64 {
        for i in 0..tab.lambdas.len() {
            let h = WreathPoly::new(tab.h[i].clone(), label.clone());
            let got = colrow_apply(&h, p, false, false, order, None).unwrap();
            for m in 0..r as i64 {
                let ev = {
                    let d = wm_core::partitions::d_sum(&tab.lambdas[i], r);
                    div_one_minus_q(&d).get(m).clone()
                };
                let expect = series_of_msf(&tab.h[i].scale(&ev), false, order).unwrap();
                if got.eq_to_order(&expect, order) {
                    println!("plain row p={} lam={} matches m={}", p, tab.lambdas[i], m);
                }
            }
        }
    }
    let _ = (GEN_Q, GEN_T);
}
