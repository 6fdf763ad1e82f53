//! Koszul and standard Q-Koszul verdicts on the Jantzen-region blocks of
//! S(2,5) over F_3.

use koszul_lab::koszul::{is_koszul, is_standard_qkoszul};
use koszul_lab::sl2lab::instances::schur_jantzen_blocks;

fn main() -> koszul_lab::error::Result<()> {
    for b in schur_jantzen_blocks(5, 3, true)? {
        let a = &b.block.algebra;
        let k = is_koszul(a, 4)?;
        let s = is_standard_qkoszul(a, &b.gq, 4)?;
        println!("{} (dim {}): koszul {}, standard Q-Koszul {}", b.block.name, a.dim(), k.holds, s.holds);
    }
    Ok(())
}
