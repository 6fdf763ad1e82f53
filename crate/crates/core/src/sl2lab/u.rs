//! The restricted enveloping algebra u = u(sl2) over F_p with its adjoint
//! X-grading, and an integral form over Z_(p) reducing to it.
//!
//! Basis x(a,c,b) = e^a 1_c f^b with 0 ≤ a, b < p and c ∈ Z/p, where the 1_c
//! are the weight idempotents (h = Σ c 1_c). Over Z_(p) the relation
//! [e,f] = Σ φ(c) 1_c uses the symmetric lift φ(c) ∈ (-p/2, p/2); since
//! Σ_c φ(c) = 0 the relations e^p = f^p = 0 stay consistent in
//! characteristic zero and the lattice has rank p³.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{input, Result};
use crate::fdalg::algebra::{Algebra, AlgebraBuilder};
use crate::fdalg::constructions::Involution;
use crate::field::{is_prime, Field, Fp};
use crate::forced::LatticeAlgebra;
use crate::linalg::{unit, Vector};
use crate::rootdata::Weight;

/// Largest p accepted; dim u = p³.
pub const MAX_P: u64 = 7;

#[derive(Clone, Debug)]
pub struct UAlgebra {
    pub p: u64,
    pub algebra: Algebra<Fp>,
}

/// Symmetric lift of c mod p into (-p/2, p/2).
pub fn phi(p: u64, c: i64) -> i64 {
    let p = p as i64;
    let r = c.rem_euclid(p);
    if 2 * r > p {
        r - p
    } else {
        r
    }
}

fn residue(p: u64, c: i64) -> usize {
    c.rem_euclid(p as i64) as usize
}

/// Index of e^a 1_c f^b.
pub fn u_index(p: u64, a: usize, c: i64, b: usize) -> usize {
    let p = p as usize;
    (a * p + residue(p as u64, c)) * p + b
}

/// (a, c, b) of a basis index.
pub fn u_triple(p: u64, i: usize) -> (usize, usize, usize) {
    let p = p as usize;
    (i / (p * p), (i / p) % p, i % p)
}

type ZVec = BTreeMap<usize, i128>;

fn push(v: &mut ZVec, k: usize, c: i128) {
    if c == 0 {
        return;
    }
    let e = v.entry(k).or_insert(0);
    *e += c;
    if *e == 0 {
        v.remove(&k);
    }
}

fn apply_e(p: u64, v: &ZVec) -> ZVec {
    let mut out = ZVec::new();
    for (&i, &c) in v {
        let (a, cc, b) = u_triple(p, i);
        if a + 1 < p as usize {
            push(&mut out, u_index(p, a + 1, cc as i64, b), c);
        }
    }
    out
}

fn apply_idem(p: u64, d: usize, v: &ZVec) -> ZVec {
    v.iter()
        .filter(|(&i, _)| {
            let (a, c, _) = u_triple(p, i);
            residue(p, (c + 2 * a) as i64) == d
        })
        .map(|(&i, &c)| (i, c))
        .collect()
}

/// Σ_{k<a} φ(c + 2k): the scalar with [e^a, f] 1_c = s e^{a-1} 1_c.
fn commutator_scalar(p: u64, a: usize, c: i64) -> i128 {
    (0..a as i64).map(|k| phi(p, c + 2 * k) as i128).sum()
}

fn apply_f(p: u64, v: &ZVec) -> ZVec {
    let mut out = ZVec::new();
    for (&i, &coef) in v {
        let (a, c, b) = u_triple(p, i);
        let c = c as i64;
        // f e^a 1_c f^b = e^a 1_{c-2} f^{b+1} - s(a,c) e^{a-1} 1_c f^b
        if b + 1 < p as usize {
            push(&mut out, u_index(p, a, c - 2, b + 1), coef);
        }
        if a > 0 {
            push(&mut out, u_index(p, a - 1, c, b), -coef * commutator_scalar(p, a, c));
        }
    }
    out
}

/// Integer structure constants of the integral form.
pub fn integral_structure_constants(p: u64) -> Vec<(usize, usize, usize, i128)> {
    let n = (p * p * p) as usize;
    let mut sc = Vec::new();
    for i in 0..n {
        let (a, c, b) = u_triple(p, i);
        for j in 0..n {
            let mut v = ZVec::from([(j, 1i128)]);
            for _ in 0..b {
                v = apply_f(p, &v);
            }
            v = apply_idem(p, c, &v);
            for _ in 0..a {
                v = apply_e(p, &v);
            }
            sc.extend(v.into_iter().map(|(k, x)| (i, j, k, x)));
        }
    }
    sc
}

/// Adjoint weight 2(a-b) of e^a 1_c f^b.
pub fn u_weights(p: u64) -> Vec<Weight> {
    (0..(p * p * p) as usize)
        .map(|i| {
            let (a, _, b) = u_triple(p, i);
            Weight(vec![2 * (a as i64 - b as i64)])
        })
        .collect()
}

fn u_labels(p: u64) -> Vec<String> {
    (0..(p * p * p) as usize)
        .map(|i| {
            let (a, c, b) = u_triple(p, i);
            format!("e^{a}1_{c}f^{b}")
        })
        .collect()
}

/// u(sl2) over F_p, X-graded by e ↦ α, h ↦ 0, f ↦ -α.
pub fn build_u(p: u64) -> Result<UAlgebra> {
    if !is_prime(p) || p == 2 {
        return input(format!("p must be an odd prime, got {p}"));
    }
    if p > MAX_P {
        return input(format!("p = {p} exceeds the size guard {MAX_P}"));
    }
    let n = (p * p * p) as usize;
    let f = Fp::new(p)?;
    let sc = integral_structure_constants(p);
    let one: Vec<usize> = (0..p as i64).map(|c| u_index(p, 0, c, 0)).collect();
    let mut b = AlgebraBuilder::new(&f, u_labels(p));
    for &(i, j, k, x) in &sc {
        b.add(i, j, k, f.from_i64(x.rem_euclid(p as i128) as i64));
    }
    let mut id = vec![0u64; n];
    for &k in &one {
        id[k] = 1;
    }
    b.identity(id).x_grading(u_weights(p));
    Ok(UAlgebra { p, algebra: b.build()? })
}

impl UAlgebra {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// The integral form over Z_(p), with the adjoint X-grading.
    pub fn lattice(&self) -> Result<LatticeAlgebra> {
        let p = self.p;
        let q = |x: i128| BigRational::from_integer(BigInt::from(x));
        let mut qid = vec![q(0); self.dim()];
        for c in 0..p as i64 {
            qid[u_index(p, 0, c, 0)] = q(1);
        }
        let sc = integral_structure_constants(p).into_iter().map(|(i, j, k, x)| (i, j, k, q(x))).collect();
        LatticeAlgebra::new(p, u_labels(p), sc, Some(qid), Some(u_weights(p)))
    }

    pub fn field(&self) -> &Fp {
        &self.algebra.field
    }

    pub fn basis(&self, a: usize, c: i64, b: usize) -> Vector<Fp> {
        unit(self.field(), self.dim(), u_index(self.p, a, c, b))
    }

    fn sum_over_c(&self, a: usize, b: usize, coef: impl Fn(i64) -> i64) -> Vector<Fp> {
        let f = self.field();
        let mut v = self.algebra.zero();
        for c in 0..self.p as i64 {
            v[u_index(self.p, a, c, b)] = f.from_i64(coef(c));
        }
        v
    }

    pub fn e(&self) -> Vector<Fp> {
        self.sum_over_c(1, 0, |_| 1)
    }

    pub fn f(&self) -> Vector<Fp> {
        self.sum_over_c(0, 1, |_| 1)
    }

    pub fn h(&self) -> Vector<Fp> {
        self.sum_over_c(0, 0, |c| c)
    }

    /// Weight idempotent 1_c.
    pub fn idem(&self, c: i64) -> Vector<Fp> {
        self.basis(0, c, 0)
    }

    pub fn pow(&self, x: &[u64], k: usize) -> Vector<Fp> {
        let mut out = self.algebra.one().clone();
        for _ in 0..k {
            out = self.algebra.mul(&out, x);
        }
        out
    }

    /// Anti-involution e ↔ f fixing each 1_c: e^a 1_c f^b ↦ e^b 1_c f^a.
    pub fn chevalley(&self) -> Involution<Fp> {
        let images = (0..self.dim())
            .map(|i| {
                let (a, c, b) = u_triple(self.p, i);
                self.basis(b, c as i64, a)
            })
            .collect();
        Involution { images, negates_weights: true }
    }

    /// Antipode S(e) = -e, S(f) = -f, S(1_c) = 1_{-c}; an anti-automorphism
    /// preserving weights.
    pub fn antipode(&self) -> Involution<Fp> {
        let f = self.field();
        let (e, ff) = (self.e(), self.f());
        let images = (0..self.dim())
            .map(|i| {
                let (a, c, b) = u_triple(self.p, i);
                let x = self.algebra.mul(&self.pow(&ff, b), &self.idem(-(c as i64)));
                let x = self.algebra.mul(&x, &self.pow(&e, a));
                if (a + b) % 2 == 1 {
                    x.iter().map(|v| f.neg(v)).collect()
                } else {
                    x
                }
            })
            .collect();
        Involution { images, negates_weights: false }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdalg::structure::blocks_and_basic;
    use crate::linalg::sub_vec;

    #[test]
    fn lift_sums_to_zero() {
        for p in [3, 5, 7] {
            assert_eq!((0..p as i64).map(|c| phi(p, c)).sum::<i64>(), 0);
            assert!((0..p as i64).all(|c| phi(p, c).rem_euclid(p as i64) == c));
        }
    }

    #[test]
    fn relations_at_p3() {
        let u = build_u(3).unwrap();
        assert_eq!(u.dim(), 27);
        assert!(u.algebra.check_associative_exhaustive());
        let alg = &u.algebra;
        let (e, f, h) = (u.e(), u.f(), u.h());
        let fld = u.field();
        assert_eq!(sub_vec(fld, &alg.mul(&e, &f), &alg.mul(&f, &e)), h);
        assert_eq!(u.pow(&h, 3), h);
        assert!(u.pow(&e, 3).iter().all(|x| *x == 0));
        assert!(u.pow(&f, 3).iter().all(|x| *x == 0));
        let two_e: Vec<u64> = e.iter().map(|x| fld.from_i64(2 * *x as i64)).collect();
        assert_eq!(sub_vec(fld, &alg.mul(&h, &e), &alg.mul(&e, &h)), two_e);
        u.chevalley().validate(alg).unwrap();
        u.antipode().validate(alg).unwrap();
    }

    #[test]
    fn integral_form_is_associative_over_q() {
        let l = build_u(3).unwrap().lattice().unwrap();
        assert_eq!(l.rank(), 27);
        assert!(l.rational().check_associative_exhaustive());
        assert!(l.rational().x_grading.is_some());
        assert_eq!(l.reduction().unwrap().structure_constants(), build_u(3).unwrap().algebra.structure_constants());
    }

    #[test]
    fn rejects_two() {
        assert!(build_u(2).is_err());
        assert!(build_u(9).is_err());
        assert!(build_u(11).is_err());
    }

    #[test]
    fn block_counts() {
        let b3 = blocks_and_basic(&build_u(3).unwrap().algebra).unwrap();
        assert_eq!(b3.block_classes.len(), 2);
        let b5 = blocks_and_basic(&build_u(5).unwrap().algebra).unwrap();
        assert_eq!(b5.block_classes.len(), 3);
        let mut sizes: Vec<usize> = b5.block_classes.iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 2]);
    }
}
