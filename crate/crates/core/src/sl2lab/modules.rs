//! X-graded u(sl2)-modules: simples, baby Vermas, the coinduced modules Φ(λ)
//! and Weyl modules with their divided-power action.

use num_bigint::BigInt;
use num_integer::binomial;

use crate::error::{input, Result};
use crate::fdalg::constructions::dual_with_involution;
use crate::fdalg::module::{Module, SparseMat};
use crate::field::{Field, Fp};
use crate::linalg::{mat_mul, zero_matrix, Matrix};
use crate::rootdata::Weight;
use crate::sl2lab::characters::{weyl_character, CharacterA1};
use crate::sl2lab::u::{u_index, u_triple, UAlgebra};

/// Module with the given e and f matrices on a weight basis; 1_c acts as the
/// projection onto the weights congruent to c mod p.
pub fn u_module_from(u: &UAlgebra, e: &Matrix<u64>, f: &Matrix<u64>, weights: &[i64]) -> Result<Module<Fp>> {
    let fld = u.field();
    let n = weights.len();
    let p = u.p as usize;
    let identity = Matrix::from_fn(n, n, |r, c| if r == c { 1 } else { 0 });
    let powers = |m: &Matrix<u64>| {
        let mut out = vec![identity.clone()];
        for k in 1..p {
            out.push(mat_mul(fld, &out[k - 1], m));
        }
        out
    };
    let (ep, fp) = (powers(e), powers(f));
    let proj: Vec<Matrix<u64>> = (0..p)
        .map(|c| {
            Matrix::from_fn(n, n, |r, col| (r == col && weights[r].rem_euclid(p as i64) as usize == c) as u64)
        })
        .collect();
    let action = (0..u.dim())
        .map(|i| {
            let (a, c, b) = u_triple(u.p, i);
            let m = mat_mul(fld, &ep[a], &mat_mul(fld, &proj[c], &fp[b]));
            SparseMat::from_dense(fld, &m)
        })
        .collect();
    Module::new(&u.algebra, n, action, None, Some(weights.iter().map(|&w| Weight(vec![w])).collect()))
}

/// e and f on a string v_0..v_{n-1} of weights λ-2j with e v_j = ev(j) v_{j-1}
/// and f v_j = fv(j) v_{j+1}.
fn string_module(
    u: &UAlgebra,
    lambda: i64,
    n: usize,
    ev: impl Fn(i64) -> i64,
    fv: impl Fn(i64) -> i64,
) -> Result<Module<Fp>> {
    let fld = u.field();
    let mut e = zero_matrix(fld, n, n);
    let mut f = zero_matrix(fld, n, n);
    for j in 0..n {
        if j > 0 {
            e.set(j - 1, j, fld.from_i64(ev(j as i64)));
        }
        if j + 1 < n {
            f.set(j + 1, j, fld.from_i64(fv(j as i64)));
        }
    }
    let weights: Vec<i64> = (0..n as i64).map(|j| lambda - 2 * j).collect();
    u_module_from(u, &e, &f, &weights)
}

/// Restricted simple L(λ), 0 ≤ λ < p, with weights λ, λ-2, ..., -λ.
pub fn simple_module(u: &UAlgebra, lambda: i64) -> Result<Module<Fp>> {
    if lambda < 0 || lambda >= u.p as i64 {
        return input(format!("λ = {lambda} is not restricted for p = {}", u.p));
    }
    string_module(u, lambda, lambda as usize + 1, |j| j * (lambda - j + 1), |_| 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VermaKind {
    /// Induced from the positive Borel: generated by a highest weight vector.
    Z,
    /// Coinduced: cogenerated by its highest weight vector.
    ZPrime,
}

impl VermaKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "Z" | "z" => Ok(VermaKind::Z),
            "Z'" | "z'" | "Zprime" | "zprime" => Ok(VermaKind::ZPrime),
            _ => input(format!("unknown baby Verma kind {s:?}")),
        }
    }
}

/// Baby Verma module of highest weight λ: p weights λ, λ-2, ..., λ-2(p-1).
pub fn baby_verma(u: &UAlgebra, lambda: i64, kind: VermaKind) -> Result<Module<Fp>> {
    let n = u.p as usize;
    match kind {
        VermaKind::Z => string_module(u, lambda, n, |j| j * (lambda - j + 1), |_| 1),
        VermaKind::ZPrime => string_module(u, lambda, n, |_| 1, |j| (j + 1) * (lambda - j)),
    }
}

/// Φ(λ) = (ind_T^{G1T} -λ)*, of dimension p² with weights λ + 2(a-b).
/// ind -λ is the space of functionals on 1_{-λ} u with u acting by right
/// translation; its dual is taken through the antipode.
pub fn coinduced_phi(u: &UAlgebra, lambda: i64) -> Result<Module<Fp>> {
    let p = u.p as usize;
    let alg = &u.algebra;
    let fld = u.field();
    // y_k = e^a 1_{-λ-2a} f^b spans 1_{-λ} u, k = a p + b
    let ys: Vec<usize> = (0..p * p).map(|k| u_index(u.p, k / p, -lambda - 2 * (k / p) as i64, k % p)).collect();
    let mut pos = vec![usize::MAX; alg.dim()];
    for (k, &y) in ys.iter().enumerate() {
        pos[y] = k;
    }
    let action = (0..alg.dim())
        .map(|z| {
            // (z ψ_i)(y_j) = ψ_i(y_j z)
            let mut entries = Vec::new();
            for (j, &y) in ys.iter().enumerate() {
                for (k, c) in alg.product(y, z) {
                    debug_assert!(pos[*k] != usize::MAX);
                    entries.push((j, pos[*k], *c));
                }
            }
            SparseMat { rows: p * p, cols: p * p, entries }
        })
        .collect();
    let weights =
        (0..p * p).map(|k| Weight(vec![-lambda - 2 * ((k / p) as i64 - (k % p) as i64)])).collect();
    let ind = Module::new(alg, p * p, action, None, Some(weights))?;
    let _ = fld;
    Ok(dual_with_involution(alg, &ind, &u.antipode()))
}

/// Weyl module Δ(m) of SL2 over Z with basis v_j = f^(j) v_0:
/// f^(k) v_j = C(j+k, k) v_{j+k} and e^(k) v_j = C(m-j+k, k) v_{j-k}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylModule {
    pub m: i64,
}

pub fn weyl_module(m: i64) -> Result<WeylModule> {
    if m < 0 {
        return input("highest weight must be non-negative");
    }
    Ok(WeylModule { m })
}

impl WeylModule {
    pub fn dim(&self) -> usize {
        self.m as usize + 1
    }

    pub fn character(&self) -> CharacterA1 {
        weyl_character(self.m)
    }

    pub fn weights(&self) -> Vec<i64> {
        (0..=self.m).map(|j| self.m - 2 * j).collect()
    }

    /// f^(k) as (row, col, value) entries.
    pub fn divided_f(&self, k: i64) -> Vec<(usize, usize, BigInt)> {
        (0..=self.m - k)
            .map(|j| ((j + k) as usize, j as usize, binomial(BigInt::from(j + k), BigInt::from(k))))
            .collect()
    }

    /// e^(k) as (row, col, value) entries.
    pub fn divided_e(&self, k: i64) -> Vec<(usize, usize, BigInt)> {
        (k..=self.m)
            .map(|j| ((j - k) as usize, j as usize, binomial(BigInt::from(self.m - j + k), BigInt::from(k))))
            .collect()
    }

    /// Reduction mod p restricted to u, X-graded by the weights.
    pub fn over_u(&self, u: &UAlgebra) -> Result<Module<Fp>> {
        let fld = u.field();
        let n = self.dim();
        let dense = |entries: Vec<(usize, usize, BigInt)>| {
            let mut mat = zero_matrix(fld, n, n);
            for (r, c, v) in entries {
                let pm = BigInt::from(u.p);
                let x = ((v % &pm) + &pm) % &pm;
                mat.set(r, c, u64::try_from(x).expect("residue"));
            }
            mat
        };
        u_module_from(u, &dense(self.divided_e(1)), &dense(self.divided_f(1)), &self.weights())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdalg::constructions::dual_with_involution;
    use crate::fdalg::module::{hom_space, isomorphic};
    use crate::fdalg::resolution::ext_table;
    use crate::fdalg::structure::radical;
    use crate::koszul::head;
    use crate::sl2lab::u::build_u;

    fn zero_key() -> (i64, Vec<i64>) {
        (0, vec![0])
    }

    #[test]
    fn dimensions() {
        let u = build_u(5).unwrap();
        assert_eq!(simple_module(&u, 0).unwrap().dim, 1);
        assert_eq!(simple_module(&u, 2).unwrap().dim, 3);
        assert!(simple_module(&u, 5).is_err());
        for l in [-7, 0, 3, 12] {
            let z = baby_verma(&u, l, VermaKind::Z).unwrap();
            assert_eq!(z.dim, 5);
            let ws: Vec<i64> = z.x_grading.as_ref().unwrap().iter().map(|w| w.0[0]).collect();
            assert_eq!(ws, (0..5).map(|j| l - 2 * j).collect::<Vec<_>>());
        }
        assert_eq!(coinduced_phi(&u, 1).unwrap().dim, 25);
    }

    #[test]
    fn baby_verma_duality_and_heads() {
        let u = build_u(3).unwrap();
        let tau = u.chevalley();
        let rad = radical(&u.algebra);
        for l in -3..6 {
            let z = baby_verma(&u, l, VermaKind::Z).unwrap();
            let zp = baby_verma(&u, l, VermaKind::ZPrime).unwrap();
            assert!(isomorphic(&u.algebra, &dual_with_involution(&u.algebra, &zp, &tau), &z), "λ = {l}");
            assert_eq!(head(&u.algebra, &rad, &z).unwrap().dim, l.rem_euclid(3) as usize + 1, "λ = {l}");
        }
    }

    #[test]
    fn z0_composition_factors_at_p3() {
        // Z(0) has weights 0, -2, -4: L(0) on top, then L(-4 mod 3 twisted) of dim 2
        let u = build_u(3).unwrap();
        let rad = radical(&u.algebra);
        let z = baby_verma(&u, 0, VermaKind::Z).unwrap();
        let top = head(&u.algebra, &rad, &z).unwrap();
        assert_eq!(top.dim, 1);
        assert_eq!(z.dim - top.dim, 2);
    }

    #[test]
    fn phi_recovers_weight_spaces() {
        let u = build_u(3).unwrap();
        for l in -2..4 {
            let phi = coinduced_phi(&u, l).unwrap();
            let z = baby_verma(&u, l, VermaKind::Z).unwrap();
            assert_eq!(hom_space(&u.algebra, &phi, &z, &zero_key()).len(), 1);
            for theta in -1..=1i64 {
                let m = baby_verma(&u, l + 2, VermaKind::ZPrime).unwrap();
                let shifted = m.shift(0, Some(&Weight(vec![-2 * 3 * theta])));
                let want = m.weight_dim(&Weight(vec![l + 2 * 3 * theta]));
                assert_eq!(hom_space(&u.algebra, &phi, &shifted, &zero_key()).len(), want);
            }
        }
    }

    #[test]
    fn steinberg_is_projective() {
        let u = build_u(3).unwrap();
        let st = simple_module(&u, 2).unwrap();
        for l in 0..3 {
            let t = ext_table(&u.algebra, &st, &simple_module(&u, l).unwrap(), 1).unwrap();
            assert_eq!(t.total(1), 0);
        }
    }

    #[test]
    fn weyl_divided_powers() {
        let w = weyl_module(4).unwrap();
        assert_eq!(w.character().weights(), vec![4, 2, 0, -2, -4]);
        assert_eq!(weyl_module(0).unwrap().character().weights(), vec![0]);
        let f1 = w.divided_f(1);
        assert!(f1.contains(&(1, 0, BigInt::from(1))) && f1.contains(&(3, 2, BigInt::from(3))));
        let u = build_u(5).unwrap();
        // Δ(4) = L(4) over u(sl2, 5)
        assert!(isomorphic(&u.algebra, &w.over_u(&u).unwrap(), &simple_module(&u, 4).unwrap()));
        // Δ(5) over u: weights 5..-5, not simple
        let rad = radical(&u.algebra);
        let d5 = weyl_module(5).unwrap().over_u(&u).unwrap();
        assert!(head(&u.algebra, &rad, &d5).unwrap().dim < 6);
    }
}
