//! Forced gradings of p-local lattice algebras: grade n of the reduction
//! mod p is (L ∩ rad^n A_Q) / (L ∩ rad^{n+1} A_Q), L the lattice.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::fdalg::algebra::{Algebra, AlgebraBuilder};
use crate::fdalg::constructions::{associated_graded, associated_graded_module, Filtration};
use crate::fdalg::io::{AlgebraJson, ModuleJson};
use crate::fdalg::module::{Module, SparseMat};
use crate::fdalg::structure::radical_series;
use crate::field::{parse_ratio, Field, FieldSpec, Fp, Rationals};
use crate::linalg::{is_zero_vec, left_kernel, Echelon, Vector};
use crate::rootdata::Weight;

pub type QVec = Vec<BigRational>;

/// p-adic valuation of a nonzero rational.
pub fn valuation(p: u64, a: &BigRational) -> i64 {
    let pb = BigInt::from(p);
    let count = |n: &BigInt| {
        let mut n = n.abs();
        let mut k = 0;
        while !n.is_zero() && (&n % &pb).is_zero() {
            n /= &pb;
            k += 1;
        }
        k
    };
    count(a.numer()) - count(a.denom())
}

/// Image of a p-integral rational in F_p.
pub fn reduce_mod_p(f: &Fp, a: &BigRational) -> u64 {
    f.from_ratio(a.numer(), a.denom()).expect("denominator prime to p")
}

fn pow_p(p: u64, k: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(p));
    if k >= 0 {
        num_traits::pow(base, k as usize)
    } else {
        num_traits::pow(base.recip(), (-k) as usize)
    }
}

/// Scales a nonzero vector so that its smallest valuation is 0.
fn primitive(p: u64, v: &mut QVec) {
    let m = v.iter().filter(|x| !x.is_zero()).map(|x| valuation(p, x)).min().unwrap_or(0);
    if m != 0 {
        let s = pow_p(p, -m);
        for x in v.iter_mut() {
            *x = &*x * &s;
        }
    }
}

/// Basis of the saturated lattice L ∩ V, L = Z_(p)^n, for V the span of the
/// given vectors: rows are p-integral with linearly independent reductions.
/// Dependencies mod p are divided out one at a time, each step enlarging
/// the lattice, until the reductions are independent.
pub fn saturate(p: u64, vs: &[QVec]) -> Vec<QVec> {
    let f = Fp::new(p).expect("prime");
    let Some(n) = vs.first().map(|v| v.len()) else {
        return vec![];
    };
    let mut rows: Vec<QVec> = Echelon::from_vectors(&Rationals, n, vs.iter().cloned()).basis().to_vec();
    for r in rows.iter_mut() {
        primitive(p, r);
    }
    loop {
        let red: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| reduce_mod_p(&f, x)).collect()).collect();
        let Some(dep) = left_kernel(&f, &red).into_iter().next() else {
            return rows;
        };
        let i = dep.iter().position(|c| *c != 0).unwrap();
        let mut w = vec![BigRational::zero(); n];
        for (c, r) in dep.iter().zip(&rows) {
            if *c == 0 {
                continue;
            }
            let c = BigRational::from_integer(BigInt::from(*c));
            for (x, y) in w.iter_mut().zip(r) {
                *x += &c * y;
            }
        }
        primitive(p, &mut w);
        rows[i] = w;
    }
}

/// Algebra with structure constants in Z_(p) on the lattice basis.
#[derive(Clone, Debug)]
pub struct LatticeAlgebra {
    pub p: u64,
    pub labels: Vec<String>,
    pub sc: Vec<(usize, usize, usize, BigRational)>,
    pub identity: Option<QVec>,
    /// Weight labels of the basis; not required to be multiplicative.
    pub x_grading: Option<Vec<Weight>>,
    rational: Algebra<Rationals>,
}

impl LatticeAlgebra {
    pub fn new(
        p: u64,
        labels: Vec<String>,
        sc: Vec<(usize, usize, usize, BigRational)>,
        identity: Option<QVec>,
        x_grading: Option<Vec<Weight>>,
    ) -> Result<Self> {
        Fp::new(p)?;
        let n = labels.len();
        for (i, j, k, c) in &sc {
            if *i >= n || *j >= n || *k >= n {
                return input("structure constant index out of range");
            }
            if !c.is_zero() && valuation(p, c) < 0 {
                return input(format!("structure constant {c} is not {p}-integral"));
            }
        }
        if let Some(one) = &identity {
            if one.iter().any(|c| !c.is_zero() && valuation(p, c) < 0) {
                return input("identity is not p-integral");
            }
        }
        if x_grading.as_ref().is_some_and(|g| g.len() != n) {
            return input("x_grading length differs from rank");
        }
        let build = |graded: bool| {
            let mut b = AlgebraBuilder::new(&Rationals, labels.clone());
            for (i, j, k, c) in &sc {
                b.add(*i, *j, *k, c.clone());
            }
            if let Some(one) = &identity {
                b.identity(one.clone());
            }
            if graded {
                if let Some(g) = &x_grading {
                    b.x_grading(g.clone());
                }
            }
            b.build()
        };
        // a multiplicative X-grading keeps the rational computations sparse
        let rational = match build(x_grading.is_some()) {
            Ok(a) => a,
            Err(Error::Structure(_)) if x_grading.is_some() => build(false)?,
            Err(e) => return Err(e),
        };
        if rational.one().iter().any(|c| !c.is_zero() && valuation(p, c) < 0) {
            return input("identity is not p-integral");
        }
        Ok(LatticeAlgebra { p, labels, sc, identity: Some(rational.one().clone()), x_grading, rational })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// A ⊗ Q.
    pub fn rational(&self) -> &Algebra<Rationals> {
        &self.rational
    }

    /// A ⊗ F_p, ungraded.
    pub fn reduction(&self) -> Result<Algebra<Fp>> {
        let f = Fp::new(self.p)?;
        let mut b = AlgebraBuilder::new(&f, self.labels.clone());
        for (i, j, k, c) in &self.sc {
            b.add(*i, *j, *k, reduce_mod_p(&f, c));
        }
        b.identity(self.rational.one().iter().map(|c| reduce_mod_p(&f, c)).collect());
        b.build()
    }

    pub fn from_json(j: &AlgebraJson) -> Result<Self> {
        let FieldSpec::PLocal(p) = j.field_spec()? else {
            return input("lattice algebras use the field \"Zloc(p)\"");
        };
        let labels = if j.labels.is_empty() { (0..j.dim).map(|i| format!("b{i}")).collect() } else { j.labels.clone() };
        let q = |s: &str| -> Result<BigRational> {
            let (n, d) = parse_ratio(s)?;
            Ok(BigRational::new(n, d))
        };
        let sc = j.sc.iter().map(|(i, k, l, c)| Ok((*i, *k, *l, q(c)?))).collect::<Result<Vec<_>>>()?;
        let identity = j.identity.as_ref().map(|v| v.iter().map(|c| q(c)).collect::<Result<Vec<_>>>()).transpose()?;
        if j.grading.is_some() {
            return input("lattice algebras carry no Z-grading; it is what gets computed");
        }
        LatticeAlgebra::new(p, labels, sc, identity, j.x_grading.clone())
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            dim: self.rank(),
            labels: self.labels.clone(),
            sc: self.sc.iter().map(|(i, j, k, c)| (*i, *j, *k, Rationals.render(c))).collect(),
            field: format!("Zloc({})", self.p),
            identity: Some(self.rational.one().iter().map(|c| Rationals.render(c)).collect()),
            grading: None,
            x_grading: self.x_grading.clone(),
        }
    }

    /// Subspaces rad^n(A_Q), n = 0, 1, ..., ending with 0.
    pub fn rational_radical_series(&self) -> Vec<Vec<QVec>> {
        radical_series(&self.rational)
    }
}

/// Lattice module: action matrices with p-integral entries.
#[derive(Clone, Debug)]
pub struct LatticeModule {
    pub rank: usize,
    pub action: Vec<Vec<(usize, usize, BigRational)>>,
    pub x_grading: Option<Vec<Weight>>,
}

impl LatticeModule {
    pub fn new(alg: &LatticeAlgebra, rank: usize, action: Vec<Vec<(usize, usize, BigRational)>>, x_grading: Option<Vec<Weight>>) -> Result<Self> {
        if action.len() != alg.rank() {
            return input("one action matrix per algebra basis element expected");
        }
        for m in &action {
            for (r, c, v) in m {
                if *r >= rank || *c >= rank {
                    return input("action index out of range");
                }
                if !v.is_zero() && valuation(alg.p, v) < 0 {
                    return input("action does not preserve the lattice");
                }
            }
        }
        let lm = LatticeModule { rank, action, x_grading };
        // homomorphism property over Q
        lm.rational(alg)?;
        Ok(lm)
    }

    pub fn rational(&self, alg: &LatticeAlgebra) -> Result<Module<Rationals>> {
        let action = self.action.iter().map(|m| SparseMat { rows: self.rank, cols: self.rank, entries: m.clone() }).collect();
        let xg = if alg.rational.x_grading.is_some() { self.x_grading.clone() } else { None };
        Module::new(&alg.rational, self.rank, action, None, xg)
    }

    pub fn reduction(&self, alg: &LatticeAlgebra, ak: &Algebra<Fp>) -> Result<Module<Fp>> {
        let f = Fp::new(alg.p)?;
        let action = self
            .action
            .iter()
            .map(|m| SparseMat {
                rows: self.rank,
                cols: self.rank,
                entries: m.iter().map(|(r, c, v)| (*r, *c, reduce_mod_p(&f, v))).filter(|(_, _, v)| *v != 0).collect(),
            })
            .collect();
        let xg = if ak.x_grading.is_some() { self.x_grading.clone() } else { None };
        Module::new(ak, self.rank, action, None, xg)
    }

    pub fn from_json(alg: &LatticeAlgebra, j: &ModuleJson) -> Result<Self> {
        let mut action = vec![Vec::new(); alg.rank()];
        for (a, r, c, v) in &j.action {
            if *a >= alg.rank() {
                return input("action index out of range");
            }
            let (n, d) = parse_ratio(v)?;
            action[*a].push((*r, *c, BigRational::new(n, d)));
        }
        LatticeModule::new(alg, j.dim, action, j.x_grading.clone())
    }
}

/// The forced grading: a graded algebra over F_p together with the lattice
/// filtration it came from.
#[derive(Clone, Debug)]
pub struct ForcedGrading {
    pub algebra: Algebra<Fp>,
    /// Reduction of L ∩ rad^n(A_Q) in A_k, as a filtration of A_k.
    pub filtration: Filtration<Fp>,
    pub reduction: Algebra<Fp>,
    pub dims: Vec<usize>,
    /// Whether the output carries the X-grading.
    pub x_graded: bool,
}

fn weight_blocks(x: &Option<Vec<Weight>>, n: usize) -> BTreeMap<Weight, Vec<usize>> {
    let mut m: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let w = x.as_ref().map_or(Weight(vec![]), |g| g[i].clone());
        m.entry(w).or_default().push(i);
    }
    m
}

/// V ∩ (coordinate subspace on idx), for V spanned by vs.
fn restrict_to_coords(n: usize, vs: &[QVec], idx: &[usize]) -> Vec<QVec> {
    if vs.is_empty() {
        return vec![];
    }
    let outside: Vec<usize> = (0..n).filter(|i| !idx.contains(i)).collect();
    // combinations of vs vanishing outside idx
    let rows: Vec<QVec> = vs.iter().map(|v| outside.iter().map(|&i| v[i].clone()).collect()).collect();
    let combos = if outside.is_empty() {
        (0..vs.len()).map(|i| crate::linalg::unit(&Rationals, vs.len(), i)).collect()
    } else {
        left_kernel(&Rationals, &rows)
    };
    combos
        .into_iter()
        .map(|c| {
            let mut w = vec![BigRational::zero(); n];
            for (a, v) in c.iter().zip(vs) {
                if a.is_zero() {
                    continue;
                }
                for (x, y) in w.iter_mut().zip(v) {
                    *x += a * y;
                }
            }
            w
        })
        .collect()
}

/// Witness of X-incompatibility: at this grade, the weight spaces of
/// rad^n ∩ L span less than the whole.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct XCompatibility {
    pub compatible: bool,
    pub grade: Option<usize>,
    /// Rank of rad^n ∩ L against the sum of the ranks of its weight parts.
    pub rank: Option<usize>,
    pub weight_rank_sum: Option<usize>,
    pub weights: Option<Vec<(Weight, usize)>>,
}

/// Whether every L ∩ rad^n(A_Q) is the direct sum of its intersections with
/// the weight sublattices.
pub fn x_compatibility_check(alg: &LatticeAlgebra) -> Result<XCompatibility> {
    if alg.x_grading.is_none() {
        return input("x_compatibility_check needs an x_grading");
    }
    let n = alg.rank();
    let blocks = weight_blocks(&alg.x_grading, n);
    for (g, sp) in alg.rational_radical_series().iter().enumerate() {
        let total = sp.len();
        let parts: Vec<(Weight, usize)> =
            blocks.iter().map(|(w, idx)| (w.clone(), restrict_to_coords(n, sp, idx).len())).collect();
        let sum: usize = parts.iter().map(|(_, d)| d).sum();
        if sum != total {
            return Ok(XCompatibility {
                compatible: false,
                grade: Some(g),
                rank: Some(total),
                weight_rank_sum: Some(sum),
                weights: Some(parts.into_iter().filter(|(_, d)| *d > 0).collect()),
            });
        }
    }
    Ok(XCompatibility { compatible: true, grade: None, rank: None, weight_rank_sum: None, weights: None })
}

/// The forced grading of a lattice algebra.
pub fn forced_grading(alg: &LatticeAlgebra) -> Result<ForcedGrading> {
    let p = alg.p;
    let f = Fp::new(p)?;
    let n = alg.rank();
    let series = alg.rational_radical_series();
    let x_graded = alg.x_grading.is_some() && x_compatibility_check(alg)?.compatible;
    let blocks = weight_blocks(if x_graded { &alg.x_grading } else { &None }, n);
    let mut spaces: Vec<Vec<Vector<Fp>>> = Vec::new();
    for sp in &series {
        let mut red = Vec::new();
        for idx in blocks.values() {
            let part = if blocks.len() == 1 { sp.clone() } else { restrict_to_coords(n, sp, idx) };
            for v in saturate(p, &part) {
                red.push(v.iter().map(|x| reduce_mod_p(&f, x)).collect::<Vec<u64>>());
            }
        }
        debug_assert!(red.iter().all(|v| !is_zero_vec(&f, v)));
        spaces.push(red);
    }
    let mut reduction = alg.reduction()?;
    if x_graded {
        if let Ok(r) = reduction.regraded(None, alg.x_grading.clone()) {
            reduction = r;
        }
    }
    let filtration = Filtration::new(&f, n, &spaces);
    check_multiplicative(&reduction, &spaces)?;
    let (mut algebra, _) = associated_graded(&reduction, &filtration)?;
    if !x_graded {
        algebra.x_grading = None;
    }
    let dims = filtration.dims();
    debug_assert_eq!(dims.iter().sum::<usize>(), n);
    Ok(ForcedGrading { algebra, filtration, reduction, dims, x_graded })
}

fn check_multiplicative(a: &Algebra<Fp>, spaces: &[Vec<Vector<Fp>>]) -> Result<()> {
    let f = &a.field;
    let echs: Vec<Echelon<Fp>> = spaces.iter().map(|s| Echelon::from_vectors(f, a.dim(), s.iter().cloned())).collect();
    for (m, sm) in spaces.iter().enumerate() {
        for (k, sk) in spaces.iter().enumerate().skip(m) {
            let Some(target) = echs.get(m + k) else {
                // beyond the last level the product must vanish
                for x in sm {
                    for y in sk {
                        if !is_zero_vec(f, &a.mul(x, y)) || !is_zero_vec(f, &a.mul(y, x)) {
                            return Err(Error::Structure(format!("lattice filtration not multiplicative at ({m}, {k})")));
                        }
                    }
                }
                continue;
            };
            for x in sm {
                for y in sk {
                    if !target.contains(&a.mul(x, y)) || !target.contains(&a.mul(y, x)) {
                        return Err(Error::Structure(format!("lattice filtration not multiplicative at ({m}, {k})")));
                    }
                }
            }
        }
    }
    Ok(())
}

/// gr̃ M: the reduction of M graded by the images of (L ∩ rad^n) M.
pub fn forced_grading_module(alg: &LatticeAlgebra, forced: &ForcedGrading, m: &LatticeModule) -> Result<Module<Fp>> {
    let f = Fp::new(alg.p)?;
    let mk = m.reduction(alg, &forced.reduction)?;
    let mut levels: Vec<Vec<Vector<Fp>>> = Vec::new();
    let mut acc: Vec<Vector<Fp>> = Vec::new();
    for piece in forced.filtration.pieces.iter().rev() {
        acc.extend(piece.iter().cloned());
        levels.push(acc.clone());
    }
    levels.reverse();
    let spaces: Vec<Vec<Vector<Fp>>> = levels
        .iter()
        .map(|lvl| {
            let mut ech = Echelon::new(&f, mk.dim);
            for x in lvl {
                for j in 0..mk.dim {
                    let w = mk.act(&forced.reduction, x, &crate::linalg::unit(&f, mk.dim, j));
                    if !is_zero_vec(&f, &w) {
                        ech.insert(w);
                    }
                }
            }
            ech.basis().to_vec()
        })
        .collect();
    let mf = Filtration::new(&f, mk.dim, &spaces);
    associated_graded_module(&forced.reduction, &forced.algebra, &forced.filtration, &mk, &mf, 0)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GradingComparison {
    pub forced: Vec<usize>,
    pub radical: Vec<usize>,
    pub agree: bool,
}

/// Graded dimensions of the forced grading against those of the radical
/// grading of A_k.
pub fn compare_with_radical_grading(alg: &LatticeAlgebra) -> Result<GradingComparison> {
    let forced = forced_grading(alg)?.dims;
    let ak = alg.reduction()?;
    let series = radical_series(&ak);
    let radical = Filtration::new(&ak.field, ak.dim(), &series).dims();
    Ok(GradingComparison { agree: forced == radical, forced, radical })
}

/// Z[x]/(m(x)) for monic m, as a lattice algebra (lower coefficients).
pub fn lattice_poly_quotient(p: u64, lower: &[i64]) -> Result<LatticeAlgebra> {
    let n = lower.len();
    let mut sc = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut v = vec![BigInt::zero(); 2 * n];
            v[i + j] = BigInt::one();
            for d in (n..2 * n).rev() {
                let c = v[d].clone();
                if c.is_zero() {
                    continue;
                }
                v[d] = BigInt::zero();
                for (k, l) in lower.iter().enumerate() {
                    v[d - n + k] -= &c * l;
                }
            }
            for (k, c) in v.iter().take(n).enumerate() {
                if !c.is_zero() {
                    sc.push((i, j, k, BigRational::from_integer(c.clone())));
                }
            }
        }
    }
    LatticeAlgebra::new(p, (0..n).map(|i| format!("x^{i}")).collect(), sc, None, None)
}

/// Integer entries of a rational vector, for display.
pub fn as_integers(v: &[BigRational]) -> Option<Vec<i64>> {
    v.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn saturation_divides_out_p() {
        // span of (5, 5) and (1, 0): already all of Z_(5)^2
        let s = saturate(5, &[vec![q(5), q(5)], vec![q(1), q(0)]]);
        assert_eq!(s.len(), 2);
        // the line through (5, 10) saturates to (1, 2)
        let s = saturate(5, &[vec![q(5), q(10)]]);
        assert_eq!(as_integers(&s[0]), Some(vec![1, 2]));
        // rows (1,1,0), (1,6,5): dependent mod 5, lattice contains (0,1,1)
        let s = saturate(5, &[vec![q(1), q(1), q(0)], vec![q(1), q(6), q(5)]]);
        let f = Fp::new(5).unwrap();
        let red: Vec<Vec<u64>> = s.iter().map(|v| v.iter().map(|x| reduce_mod_p(&f, x)).collect()).collect();
        assert_eq!(crate::linalg::rank(&f, &red), 2);
    }

    #[test]
    fn forced_grading_examples() {
        let z = LatticeAlgebra::new(5, vec!["1".into()], vec![(0, 0, 0, q(1))], None, None).unwrap();
        assert_eq!(forced_grading(&z).unwrap().dims, vec![1]);
        let dual = lattice_poly_quotient(5, &[0, 0]).unwrap();
        let fg = forced_grading(&dual).unwrap();
        assert_eq!(fg.dims, vec![1, 1]);
        assert_eq!(fg.algebra.grading, Some(vec![0, 1]));
        // x^2 - 5x: semisimple over Q
        let split = lattice_poly_quotient(5, &[0, -5]).unwrap();
        assert_eq!(forced_grading(&split).unwrap().dims, vec![2]);
        let cmp = compare_with_radical_grading(&split).unwrap();
        assert_eq!(cmp.forced, vec![2]);
        assert_eq!(cmp.radical, vec![1, 1]);
        assert!(!cmp.agree);
        assert!(compare_with_radical_grading(&dual).unwrap().agree);
    }

    #[test]
    fn x_compatibility() {
        let mut a = lattice_poly_quotient(5, &[0, 0]).unwrap();
        a.x_grading = Some(vec![Weight(vec![0]), Weight(vec![2])]);
        assert!(x_compatibility_check(&a).unwrap().compatible);
        // x + 1 in a separate weight from 1 breaks compatibility of rad = (x)
        // when the basis is {1, 1 + x}
        let sc = vec![
            (0, 0, 0, q(1)),
            (0, 1, 1, q(1)),
            (1, 0, 1, q(1)),
            // (1+x)^2 = 1 + 2x = 2(1+x) - 1
            (1, 1, 1, q(2)),
            (1, 1, 0, q(-1)),
        ];
        let b = LatticeAlgebra::new(5, vec!["1".into(), "1+x".into()], sc, None, Some(vec![Weight(vec![0]), Weight(vec![2])])).unwrap();
        let r = x_compatibility_check(&b).unwrap();
        assert!(!r.compatible);
        assert_eq!(r.grade, Some(1));
    }
}
