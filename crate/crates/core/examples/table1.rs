//! Coregularity, lct, exceptionality and rigidity for every type in PGL_3.

use coregularity::classify::{render_table, table1};

fn main() -> coregularity::Result<()> {
    let rows = table1()?;
    println!("{}", render_table(&rows));
    Ok(())
}
