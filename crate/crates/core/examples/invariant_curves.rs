//! Semi-invariant plane curves of low degree, with the character-sum check.

use coregularity::invariants::{character_sum_dimensions, semi_invariants};
use coregularity::matgroup::presets;

fn main() -> coregularity::Result<()> {
    for name in ["typeB2_tetra", "typeE36", "typeH60", "klein168"] {
        let g = presets::group(name)?;
        for d in 1..=4 {
            let r = semi_invariants(&g, d)?;
            let (inv, total) = character_sum_dimensions(&g, d)?;
            assert_eq!((r.invariant_dimension, r.total_dimension), (inv, total));
            print!("{name} d={d}: semi-invariant forms of dimension {}", r.total_dimension);
            if let Some(f) = r.unique_curve() {
                let terms: Vec<String> =
                    r.monomials.iter().zip(f).filter(|(_, c)| !c.is_zero()).map(|(m, c)| format!("({c}){m}")).collect();
                print!(", unique curve {}", terms.join(" + "));
            }
            println!();
        }
    }
    Ok(())
}
