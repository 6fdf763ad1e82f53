//! Radical, blocks and Cartan matrix of u(sl2) at p = 3.

use koszul_lab::fdalg::structure::{blocks_and_basic, cartan_matrix, radical};
use koszul_lab::sl2lab::build_u;

fn main() -> koszul_lab::error::Result<()> {
    let u = build_u(3)?;
    let a = &u.algebra;
    let b = blocks_and_basic(a)?;
    println!("dim u = {}, dim rad = {}", a.dim(), radical(a).len());
    println!("simple dims {:?}, blocks {:?}", b.multiplicities, b.block_classes);
    println!("cartan {:?}", cartan_matrix(a, &b.idempotents));
    println!("basic algebra: dim {}, {} arrows", b.basic.algebra.dim(), b.basic.arrows.len());
    Ok(())
}
