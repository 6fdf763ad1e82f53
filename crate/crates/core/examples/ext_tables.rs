//! Graded Ext tables between simples of the radically graded regular block
//! of u(sl2) at p = 3.

use koszul_lab::fdalg::resolution::Projectives;
use koszul_lab::koszul::{ext_matrix, simple_modules};
use koszul_lab::sl2lab::instances::u_regular_blocks;

fn main() -> koszul_lab::error::Result<()> {
    let block = &u_regular_blocks(3)?[0];
    let proj = Projectives::new(&block.algebra)?;
    let simples = simple_modules(&block.algebra, &proj)?;
    let tables = ext_matrix(&block.algebra, &proj, &simples, &simples, 4)?;
    for (i, row) in tables.iter().enumerate() {
        for (j, t) in row.iter().enumerate() {
            let entries: Vec<_> = t.nonzero().collect();
            println!("ext(L{i}, L{j}<r>) as (n, r, dim): {entries:?}");
        }
    }
    Ok(())
}
