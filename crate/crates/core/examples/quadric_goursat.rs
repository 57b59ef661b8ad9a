//! Groups acting on P1 x P1: Goursat data and coregularity.

use coregularity::classify::{coreg_quadric, QuadricGroupData};
use coregularity::matgroup::presets;

fn main() -> coregularity::Result<()> {
    for name in presets::quadric_names() {
        let data = QuadricGroupData::new(&presets::pair_group(name)?)?;
        let s = &data.summary;
        let r = coreg_quadric(&data)?;
        println!(
            "{name:>18}: |G| = {:>4}, A1 = {:?}, A2 = {:?}, |K1| = {}, |K2| = {}, swap: {}, coreg {}",
            r.group_order, s.a1, s.a2, s.k1, s.k2, s.swaps_factors, r.coregularity
        );
    }
    Ok(())
}
