//! Baby Verma modules of u(sl2) at p = 5 and weight recovery through the
//! coinduced module Phi.

use koszul_lab::fdalg::module::hom_space;
use koszul_lab::rootdata::Weight;
use koszul_lab::sl2lab::{baby_verma, build_u, coinduced_phi, simple_module, VermaKind};

fn main() -> koszul_lab::error::Result<()> {
    let u = build_u(5)?;
    let z = baby_verma(&u, 7, VermaKind::Z)?;
    println!("Z(7): dim {}, weights {:?}", z.dim, (0..z.dim).map(|i| z.weight(i)[0]).collect::<Vec<_>>());
    println!("L(3): dim {}", simple_module(&u, 3)?.dim);
    for nu in [-3, 1, 7] {
        let phi = coinduced_phi(&u, nu)?;
        let hom = hom_space(&u.algebra, &phi, &z, &(0, vec![0])).len();
        println!("dim Hom(Phi({nu}), Z(7)) = {hom}, dim Z(7)_{nu} = {}", z.weight_dim(&Weight(vec![nu])));
    }
    Ok(())
}
