//! Delta^p decompositions of Weyl characters for SL2 at p = 5.

use koszul_lab::sl2lab::characters::{delta_p_decomposition, weyl_character};

fn main() -> koszul_lab::error::Result<()> {
    for m in [4, 7, 12, 24, 30] {
        println!("Delta({m}) = {}: {:?}", weyl_character(m), delta_p_decomposition(m, 5)?);
    }
    Ok(())
}
