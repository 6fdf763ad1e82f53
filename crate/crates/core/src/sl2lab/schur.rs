//! Schur algebras S(2,d) = End_{S_d}(V^{⊗d}), dim V = 2, on the basis of
//! orbit sums ξ_ω of S_d acting diagonally on pairs of index sequences.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{input, Result};
use crate::fdalg::algebra::{Algebra, AlgebraBuilder};
use crate::fdalg::module::Module;
use crate::fdalg::resolution::Projectives;
use crate::fdalg::structure::radical;
use crate::field::{Field, Fp};
use crate::forced::LatticeAlgebra;
use crate::koszul::{head, Labeling, Poset};
use crate::linalg::{rank, Vector};
use crate::rootdata::Weight;
use crate::sl2lab::characters::CharacterA1;

pub const MAX_D: usize = 12;

/// Orbit type (n11, n12, n21, n22): the number of positions k with
/// (i_k, j_k) equal to each pair.
pub type Orbit = [usize; 4];

#[derive(Clone, Debug)]
pub struct SchurAlgebra {
    pub d: usize,
    pub p: u64,
    pub orbits: Vec<Orbit>,
    pub algebra: Algebra<Fp>,
    sc: Vec<(usize, usize, usize, i64)>,
}

fn orbits(d: usize) -> Vec<Orbit> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            for c in (0..=d - a - b).rev() {
                out.push([a, b, c, d - a - b - c]);
            }
        }
    }
    out
}

/// Representative (i, j) as bitmasks, bit k set when the entry is 2.
fn representative(o: &Orbit) -> (u32, u32) {
    let (mut i, mut j) = (0u32, 0u32);
    let mut k = 0;
    for (t, &n) in o.iter().enumerate() {
        for _ in 0..n {
            if t >= 2 {
                i |= 1 << k;
            }
            if t % 2 == 1 {
                j |= 1 << k;
            }
            k += 1;
        }
    }
    (i, j)
}

fn orbit_of(d: usize, i: u32, j: u32) -> Orbit {
    let mut o = [0; 4];
    for k in 0..d {
        let t = 2 * ((i >> k) & 1) + ((j >> k) & 1);
        o[t as usize] += 1;
    }
    o
}

/// Weight wt(i) - wt(j) = 2(n12 - n21) of ξ_ω.
pub fn orbit_weight(o: &Orbit) -> i64 {
    2 * (o[1] as i64 - o[2] as i64)
}

fn label(o: &Orbit) -> String {
    format!("xi[{},{},{},{}]", o[0], o[1], o[2], o[3])
}

/// Integer structure constants: the coefficient of ξ_C in ξ_A ξ_B counts the
/// s with (i, s) ∈ A and (s, j) ∈ B for a representative (i, j) of C.
fn structure_constants(d: usize, orbs: &[Orbit]) -> Vec<(usize, usize, usize, i64)> {
    let index: HashMap<Orbit, usize> = orbs.iter().enumerate().map(|(k, o)| (*o, k)).collect();
    orbs.par_iter()
        .enumerate()
        .flat_map_iter(|(c, o)| {
            let (i, j) = representative(o);
            let mut counts: HashMap<(usize, usize), i64> = HashMap::new();
            for s in 0..(1u32 << d) {
                let a = index[&orbit_of(d, i, s)];
                let b = index[&orbit_of(d, s, j)];
                *counts.entry((a, b)).or_insert(0) += 1;
            }
            let mut v: Vec<_> = counts.into_iter().map(|((a, b), n)| (a, b, c, n)).collect();
            v.sort();
            v
        })
        .collect::<Vec<_>>()
}

/// S(2,d) over F_p, X-graded by wt(i) - wt(j).
pub fn schur_algebra(d: usize, p: u64) -> Result<SchurAlgebra> {
    if d > MAX_D {
        return input(format!("d = {d} exceeds the size guard {MAX_D}"));
    }
    let f = Fp::new(p)?;
    let orbs = orbits(d);
    let mut sc = structure_constants(d, &orbs);
    sc.sort();
    let mut b = AlgebraBuilder::new(&f, orbs.iter().map(label).collect());
    for &(i, j, k, n) in &sc {
        b.add(i, j, k, f.from_i64(n));
    }
    b.identity(orbs.iter().map(|o| (o[1] == 0 && o[2] == 0) as u64).collect());
    b.x_grading(orbs.iter().map(|o| Weight(vec![orbit_weight(o)])).collect());
    Ok(SchurAlgebra { d, p, orbits: orbs, algebra: b.build()?, sc })
}

impl SchurAlgebra {
    pub fn dim(&self) -> usize {
        self.orbits.len()
    }

    /// The integral form on the same basis.
    pub fn lattice(&self) -> Result<LatticeAlgebra> {
        let q = |n: i64| BigRational::from_integer(BigInt::from(n));
        LatticeAlgebra::new(
            self.p,
            self.orbits.iter().map(label).collect(),
            self.sc.iter().map(|&(i, j, k, n)| (i, j, k, q(n))).collect(),
            Some(self.orbits.iter().map(|o| q((o[1] == 0 && o[2] == 0) as i64)).collect()),
            Some(self.orbits.iter().map(|o| Weight(vec![orbit_weight(o)])).collect()),
        )
    }

    /// Weights d, d-2, ..., -d of V^{⊗d}.
    pub fn weights(&self) -> Vec<i64> {
        (0..=self.d as i64).map(|k| self.d as i64 - 2 * k).collect()
    }

    /// Dominant weights d, d-2, ..., d mod 2.
    pub fn dominant_weights(&self) -> Vec<i64> {
        self.weights().into_iter().filter(|&w| w >= 0).collect()
    }

    /// Weight idempotent ξ_μ, the orbit of pairs (i, i) with wt(i) = μ.
    pub fn weight_idempotent(&self, mu: i64) -> Vector<Fp> {
        self.orbits
            .iter()
            .map(|o| (o[1] == 0 && o[2] == 0 && o[0] as i64 - o[3] as i64 == mu) as u64)
            .collect()
    }

    /// Weight multiplicities dim ξ_μ M.
    pub fn character(&self, m: &Module<Fp>) -> CharacterA1 {
        let f = &self.algebra.field;
        let mut c = CharacterA1::default();
        for mu in self.weights() {
            let mat = m.action_matrix(&self.weight_idempotent(mu));
            let k = rank(f, &mat.to_rows());
            if k > 0 {
                c.0.insert(mu, k as i64);
            }
        }
        c
    }

    /// Highest weight of the simple head of each projective class.
    pub fn class_weights(&self, alg: &Algebra<Fp>, proj: &Projectives<Fp>, idem: &dyn Fn(i64) -> Vector<Fp>) -> Result<Vec<i64>> {
        let rad = radical(alg);
        let f = &alg.field;
        (0..proj.classes())
            .map(|c| {
                let p = proj.module(alg, c, &alg.zero_key(), crate::koszul::alg_mask(alg));
                let l = head(alg, &rad, &p)?;
                self.weights()
                    .into_iter()
                    .find(|&mu| rank(f, &l.action_matrix(&idem(mu)).to_rows()) > 0)
                    .ok_or_else(|| crate::Error::Structure(format!("class {c} has no weight")))
            })
            .collect()
    }

    /// Dominance poset on the dominant weights, labeled by the projective
    /// classes of S(2,d).
    pub fn qh_data(&self) -> Result<(Poset, Projectives<Fp>, Labeling<Fp>)> {
        let alg = &self.algebra;
        let proj = Projectives::new(alg)?;
        let cw = self.class_weights(alg, &proj, &|mu| self.weight_idempotent(mu))?;
        let (poset, classes) = dominance_poset(&cw)?;
        Ok((poset, proj, Labeling::Classes(classes)))
    }
}

/// Poset of the given class weights, highest first, ordered by dominance,
/// and the class of each poset element.
pub fn dominance_poset(class_weights: &[i64]) -> Result<(Poset, Vec<usize>)> {
    let mut order: Vec<usize> = (0..class_weights.len()).collect();
    order.sort_by_key(|&c| std::cmp::Reverse(class_weights[c]));
    let ws: Vec<i64> = order.iter().map(|&c| class_weights[c]).collect();
    if ws.windows(2).any(|w| w[0] == w[1]) {
        return input("two simple modules share a highest weight");
    }
    let poset = Poset::from_fn(ws.iter().map(|w| w.to_string()).collect(), |i, j| ws[i] <= ws[j])?;
    Ok((poset, order))
}
