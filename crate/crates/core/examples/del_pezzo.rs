//! Coregularity on F1 and on del Pezzo surfaces of degree 7 and 6.

use coregularity::classify::{coreg_dp6, coreg_dp7, coreg_f1, Dp6Data, Dp7Data};
use coregularity::exact_arith::Cyclotomic;
use coregularity::matgroup::presets;
use coregularity::projclassify::ProjectivePoint;

fn point(v: [i64; 3]) -> ProjectivePoint {
    ProjectivePoint::new(&v.map(Cyclotomic::from_int)).expect("nonzero")
}

fn main() -> coregularity::Result<()> {
    for name in ["typeA_diag9", "typeB1_d6", "typeB2_tetra"] {
        let r = coreg_f1(&presets::group(name)?, None)?;
        println!("F1 / {name}: coreg {}", r.coregularity);
    }
    let g = presets::group("typeA_diag9")?;
    let r = coreg_dp7(&Dp7Data { group: g, points: [point([1, 0, 0]), point([0, 1, 0])] })?;
    println!("dP7 / typeA_diag9: coreg {}", r.coregularity);

    let r = coreg_dp6(&Dp6Data::full(&[4, 4]))?;
    println!("dP6 / C4^2 x D12: coreg {}, |G| = {}", r.coregularity, r.group_order);
    println!("{r}");
    Ok(())
}
