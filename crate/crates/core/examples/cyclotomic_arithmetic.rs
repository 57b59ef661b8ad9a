//! Exact arithmetic in cyclotomic fields.

use coregularity::exact_arith::{root_of_unity_order, sqrt_minus3, Cyclotomic};

fn main() -> coregularity::Result<()> {
    let w = Cyclotomic::zeta(3);
    // 1 + w + w^2 = 0
    let s = Cyclotomic::one() + &w + w.pow(2)?;
    println!("1 + w + w^2 = {s}");

    let r = sqrt_minus3();
    println!("sqrt(-3) = {r}, squared = {}", &r * &r);

    // i lives in Q(zeta_4); mixing with zeta_3 lands in Q(zeta_12)
    let i = Cyclotomic::zeta(4);
    let z = &i * &w;
    println!("i*w = {z} (conductor {}), order {:?}", z.conductor(), root_of_unity_order(&z));
    println!("as json: {}", serde_json::to_string(&z).unwrap());
    Ok(())
}
