//! Graded block algebras built from u(sl2) and from Schur algebras cut
//! down to the Jantzen region, ready for the Koszul-type checks.

use crate::error::{input, Error, Result};
use crate::fdalg::algebra::Algebra;
use crate::fdalg::constructions::{idempotent_truncate, quotient_by_trace_ideal, radically_graded, trace_ideal};
use crate::fdalg::module::Module;
use crate::fdalg::resolution::Projectives;
use crate::fdalg::structure::{blocks_and_basic, radical};
use crate::field::Fp;
use crate::koszul::{alg_mask, grade_zero, head, GradedQH, Labeling};
use crate::linalg::{add_vec, rank, Echelon, Vector};
use crate::rootdata::{RootDatum, Weight};
use crate::alcove::{is_p_regular, jantzen_contains};
use crate::sl2lab::schur::{dominance_poset, schur_algebra};
use crate::sl2lab::u::build_u;

/// A radically graded block algebra with the weights of its simples.
#[derive(Clone, Debug)]
pub struct GradedBlock {
    pub name: String,
    pub algebra: Algebra<Fp>,
    /// Highest weights of the simples, highest first.
    pub weights: Vec<i64>,
}

/// Restricted weights 0..p-1 split into the blocks {λ, p-2-λ} and {p-1}.
pub fn u_linkage_classes(p: u64) -> Vec<Vec<i64>> {
    let p = p as i64;
    let mut out: Vec<Vec<i64>> = (0..(p - 1) / 2).map(|l| vec![l, p - 2 - l]).collect();
    out.push(vec![p - 1]);
    out
}

/// Radically graded basic algebras of the blocks of u(sl2, p) with at
/// least two simples (the regular blocks).
pub fn u_regular_blocks(p: u64) -> Result<Vec<GradedBlock>> {
    let u = build_u(p)?;
    let alg = u.algebra.regraded(None, None)?;
    let bd = blocks_and_basic(&alg)?;
    let basic = &bd.basic;
    let mut out = Vec::new();
    for (b, classes) in bd.block_classes.iter().enumerate() {
        if classes.len() < 2 {
            continue;
        }
        let mut e = basic.algebra.zero();
        for &c in classes {
            e = add_vec(&alg.field, &e, &basic.vertices[c]);
        }
        let t = idempotent_truncate(&basic.algebra, &e)?;
        let (gr, _) = radically_graded(&t.algebra)?;
        out.push(GradedBlock { name: format!("u(sl2,{p}) block {b}"), algebra: gr, weights: vec![] });
    }
    Ok(out)
}

/// Dominant weights of S(2,d) inside the Jantzen region for p.
pub fn jantzen_weights(d: usize, p: u64) -> Result<Vec<i64>> {
    let rd = RootDatum::new("A1")?;
    Ok((0..=d as i64).rev().step_by(2).filter(|&l| jantzen_contains(&rd, &Weight(vec![l]), p)).collect())
}

/// A Schur block together with the graded quasi-hereditary data.
#[derive(Clone, Debug)]
pub struct SchurBlock {
    pub block: GradedBlock,
    pub gq: GradedQH<Fp>,
    /// Whether every weight of the block is p-regular.
    pub regular: bool,
}

type ElementMap = Box<dyn Fn(&[u64]) -> Vector<Fp>>;

/// Radically graded blocks of A_Γ = S(2,d) / (ξ_μ, μ ∉ ±Γ) for Γ the
/// dominant weights inside the Jantzen region, with the dominance order.
/// `graded_qh` also builds the graded standard and costandard modules.
pub fn schur_jantzen_blocks(d: usize, p: u64, graded_qh: bool) -> Result<Vec<SchurBlock>> {
    let s = schur_algebra(d, p)?;
    let gamma = jantzen_weights(d, p)?;
    if gamma.is_empty() {
        return input(format!("no weight of S(2,{d}) lies in the Jantzen region for p = {p}"));
    }
    let alg = s.algebra.regraded(None, None)?;
    let f = alg.field;
    let mut e = alg.zero();
    for mu in s.weights() {
        if !gamma.contains(&mu.abs()) {
            e = add_vec(&f, &e, &s.weight_idempotent(mu));
        }
    }
    // A_Γ and the image of an element of S in it
    let (a_gamma, to_gamma): (Algebra<Fp>, ElementMap) = if e.iter().all(|x| *x == 0) {
        (alg.clone(), Box::new(|v: &[u64]| v.to_vec()))
    } else {
        let (q, comp) = quotient_by_trace_ideal(&alg, &e)?;
        let ideal = trace_ideal(&alg, &e);
        (q, Box::new(move |v: &[u64]| {
            let r = ideal.reduce(v);
            comp.iter().map(|&c| r[c]).collect()
        }))
    };
    let rd = RootDatum::new("A1")?;
    let bd = blocks_and_basic(&a_gamma)?;
    let mut out = Vec::new();
    for (b, c) in bd.central.iter().enumerate() {
        let t = idempotent_truncate(&a_gamma, c)?;
        let mut coords = Echelon::tracking(&f, a_gamma.dim());
        for v in &t.basis {
            coords.insert(v.clone());
        }
        let (gr, filt) = radically_graded(&t.algebra)?;
        let (a0, _) = grade_zero(&gr)?;
        // ξ_μ in A_0 = gr_0 B, through A_Γ and the block
        let xi0 = |mu: i64| -> Vector<Fp> {
            let v = a_gamma.mul(c, &to_gamma(&s.weight_idempotent(mu)));
            let in_block = coords.coordinates(&v).expect("c A c contains c ξ");
            filt.class(0, &in_block)
        };
        let proj0 = Projectives::new(&a0)?;
        let rad0 = radical(&a0);
        let simples: Vec<Module<Fp>> = (0..proj0.classes())
            .map(|k| head(&a0, &rad0, &proj0.module(&a0, k, &a0.zero_key(), alg_mask(&a0))))
            .collect::<Result<_>>()?;
        let weights: Vec<i64> = simples
            .iter()
            .map(|l| {
                s.weights()
                    .into_iter()
                    .find(|&mu| rank(&f, &l.action_matrix(&xi0(mu)).to_rows()) > 0)
                    .ok_or_else(|| Error::Structure("simple module without a weight".into()))
            })
            .collect::<Result<_>>()?;
        let (poset, order) = dominance_poset(&weights)?;
        let ordered: Vec<Module<Fp>> = order.iter().map(|&k| simples[k].clone()).collect();
        let gq = GradedQH::new(&gr, &poset, Labeling::Simples(ordered), graded_qh)?;
        let ws: Vec<i64> = order.iter().map(|&k| weights[k]).collect();
        let regular = ws.iter().all(|&w| is_p_regular(&rd, &Weight(vec![w]), p));
        let name = format!("S(2,{d}) over F{p}, Γ = {gamma:?}, block {b} {ws:?}");
        out.push(SchurBlock { block: GradedBlock { name, algebra: gr, weights: ws }, gq, regular });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linkage() {
        assert_eq!(u_linkage_classes(5), vec![vec![0, 3], vec![1, 2], vec![4]]);
        assert_eq!(u_linkage_classes(3), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn u3_regular_block() {
        let bs = u_regular_blocks(3).unwrap();
        assert_eq!(bs.len(), 1);
        // two simples, each projective cover of Loewy length 3 and dim 4
        assert_eq!(bs[0].algebra.dim(), 8);
    }

    #[test]
    fn schur_blocks_at_p2() {
        assert_eq!(jantzen_weights(4, 2).unwrap(), vec![2, 0]);
        let bs = schur_jantzen_blocks(4, 2, true).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].block.weights, vec![2, 0]);
        assert!(bs[0].regular);
    }
}
