//! Forced gradings: Z[x]/(x^2 - 5x) against its radical grading, and the
//! integral form of u(sl2) at p = 3.

use koszul_lab::forced::{compare_with_radical_grading, forced_grading, lattice_poly_quotient, x_compatibility_check};
use koszul_lab::sl2lab::build_u;

fn main() -> koszul_lab::error::Result<()> {
    let a = lattice_poly_quotient(5, &[0, -5])?;
    println!("Z[x]/(x^2-5x): {:?}", compare_with_radical_grading(&a)?);
    let u = build_u(3)?.lattice()?;
    println!("u(sl2,3): X-compatible {}", x_compatibility_check(&u)?.compatible);
    println!("u(sl2,3): forced grade dims {:?}", forced_grading(&u)?.dims);
    Ok(())
}
