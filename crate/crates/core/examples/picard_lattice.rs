//! (-1)-curves on blowups of P2 and anticanonical cycles.

use coregularity::picard::{is_anticanonical, neg_one_curves, pairing, SurfaceLattice};

fn main() -> coregularity::Result<()> {
    for k in 0..=3 {
        let lat = SurfaceLattice::blowup(k)?;
        let curves = neg_one_curves(&lat);
        println!("K^2 = {}: {} (-1)-curves", lat.degree(), curves.len());
        for c in &curves {
            let meets: Vec<i64> = curves.iter().map(|d| pairing(c, d, &lat)).collect::<coregularity::Result<_>>()?;
            println!("  {:?} meets {:?}", c.coords(), meets);
        }
    }
    let dp6 = SurfaceLattice::blowup(3)?;
    let hexagon: Vec<_> = neg_one_curves(&dp6).into_iter().map(|c| (c, 1)).collect();
    println!("hexagon is anticanonical: {}", is_anticanonical(&hexagon, &dp6, 1)?);
    Ok(())
}
