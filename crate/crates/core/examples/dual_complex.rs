//! Dual complexes of boundary curves and group actions on them.

use std::collections::BTreeMap;

use coregularity::dualcomplex::{act, coreg0_obstruction, corner_blowup, log_cy_topology, ActionSpec, CurveConfiguration, GeneratorSpec};

fn main() -> coregularity::Result<()> {
    let hexagon = CurveConfiguration::cycle(6);
    println!("hexagon: {:?}", log_cy_topology(&hexagon)?);

    let blown = corner_blowup(&hexagon, 0)?;
    println!("after a corner blowup: {:?}", log_cy_topology(&blown)?);

    // rotation and reflection, plus a C3 acting trivially on the complex
    let rot: BTreeMap<u32, u32> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    let refl: BTreeMap<u32, u32> = (0..6).map(|i| (i, (6 - i) % 6)).collect();
    let spec = ActionSpec {
        generators: vec![GeneratorSpec { components: rot, crossings: None }, GeneratorSpec { components: refl, crossings: None }],
        trivial_factor: vec![3],
    };
    let a = act(&hexagon, &spec)?;
    println!("{}", serde_json::to_string_pretty(&a.summary()).unwrap());
    println!("obstruction: {:?}", coreg0_obstruction(&a)?);
    Ok(())
}
