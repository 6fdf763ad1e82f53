//! Alcove lengths and a stable ideal for A2 at p = 5.

use koszul_lab::alcove::{generate_ideal, ideal_report, is_p_regular, length, length_oracle, Order};
use koszul_lab::rootdata::{RootDatum, Weight};

fn main() -> koszul_lab::error::Result<()> {
    let rd = RootDatum::new("A2")?;
    let p = 5;
    for a in 0..8 {
        for b in 0..8 {
            let tau = Weight(vec![a, b]);
            if is_p_regular(&rd, &tau, p) {
                let l = length(&rd, &tau, p)?;
                assert_eq!(l, length_oracle(&rd, &tau, p)?);
                print!("{l:>3}");
            } else {
                print!("  .");
            }
        }
        println!();
    }
    let ideal = generate_ideal(&rd, &[Weight(vec![6, 1])], Order::RationalCone, p)?;
    println!("ideal of (6,1): {} weights, {:?}", ideal.elements.len(), ideal_report(&ideal)?);
    Ok(())
}
