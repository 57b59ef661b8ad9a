//! Type of a finite subgroup of PGL_3 with its geometric witness.

use coregularity::matgroup::presets;
use coregularity::projclassify::classify_p3;

fn main() -> coregularity::Result<()> {
    for name in presets::plane_names() {
        let t = classify_p3(&presets::group(name)?)?;
        let w = &t.witness;
        let detail = if let Some(p) = &w.fixed_point {
            format!("fixed point ({})", p.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" : "))
        } else if let Some(n) = &w.normal_subgroup {
            format!("normal diagonal subgroup {:?}", n.invariants)
        } else {
            "primitive".to_string()
        };
        println!("{name:>18}: {:<3} {detail}", t.kind.to_string());
    }
    Ok(())
}
