//! Closing generators to a finite group and lifting to SL_3.

use coregularity::matgroup::{presets, sl_lift, structure};

fn main() -> coregularity::Result<()> {
    for name in ["typeE36", "hessian216", "klein168", "valentiner"] {
        let g = presets::group(name)?;
        let lift = sl_lift(&g)?;
        let s = structure(g.abstract_group());
        println!(
            "{name:>11}: |G| = {:>3}, |lift| = {:>4}, conductor {:>2}, simple: {}",
            g.order(),
            lift.order(),
            g.conductor(),
            s.is_simple
        );
    }
    Ok(())
}
