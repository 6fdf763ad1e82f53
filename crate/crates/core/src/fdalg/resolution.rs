//! Minimal graded projective resolutions and graded Ext tables.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{input, Result};
use crate::fdalg::algebra::{add_keys, neg_key, Algebra, Key, KeyMask};
use crate::fdalg::module::{Module, SparseMat};
use crate::fdalg::structure::{peirce, primitive_idempotents, Idempotents};
use crate::field::Field;
use crate::linalg::{axpy_vec, is_zero_vec, kernel, rank, unit, zeros, Echelon, Vector};
use crate::rootdata::Weight;

/// A e for a primitive idempotent e, with a reduced echelon basis so that
/// coordinates are read off at the pivots.
#[derive(Clone, Debug)]
struct Indecomposable<F: Field> {
    basis: Vec<Vector<F>>,
    pivots: Vec<usize>,
    keys: Vec<Key>,
    generator: Vector<F>,
}

impl<F: Field> Indecomposable<F> {
    fn new(alg: &Algebra<F>, e: &[F::Elem]) -> Self {
        let ech = Echelon::from_vectors(&alg.field, alg.dim(), peirce(alg, alg.one(), e));
        let basis = ech.basis().to_vec();
        let pivots = ech.pivots().to_vec();
        let keys = basis.iter().map(|v| alg.key_of(v).expect("homogeneous idempotent")).collect();
        let mut ind = Indecomposable { basis, pivots, keys, generator: vec![] };
        ind.generator = ind.coords(e);
        ind
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn coords(&self, w: &[F::Elem]) -> Vector<F> {
        self.pivots.iter().map(|&p| w[p].clone()).collect()
    }

    fn element(&self, f: &F, c: &[F::Elem]) -> Vector<F> {
        let mut v = zeros(f, self.basis.first().map_or(0, |b| b.len()));
        for (x, b) in c.iter().zip(&self.basis) {
            if !f.is_zero(x) {
                axpy_vec(f, &mut v, x, b);
            }
        }
        v
    }
}

/// Projective indecomposables A e_c, one per simple class, shared by all
/// resolutions over one algebra.
#[derive(Clone, Debug)]
pub struct Projectives<F: Field> {
    pub idempotents: Idempotents<F>,
    indec: Vec<Indecomposable<F>>,
}

impl<F: Field> Projectives<F> {
    pub fn new(alg: &Algebra<F>) -> Result<Self> {
        let idempotents = primitive_idempotents(alg)?;
        Self::from_idempotents(alg, idempotents)
    }

    pub fn from_idempotents(alg: &Algebra<F>, idempotents: Idempotents<F>) -> Result<Self> {
        let zero = alg.zero_key();
        for c in 0..idempotents.classes() {
            if alg.key_of(idempotents.representative(c)) != Some(zero.clone()) {
                return input("primitive idempotents are not homogeneous of degree zero");
            }
        }
        let indec = (0..idempotents.classes()).map(|c| Indecomposable::new(alg, idempotents.representative(c))).collect();
        Ok(Projectives { idempotents, indec })
    }

    pub fn classes(&self) -> usize {
        self.indec.len()
    }

    /// A e_c shifted so that e_c sits at `key`, as a module.
    pub fn module(&self, alg: &Algebra<F>, c: usize, key: &Key, mask: KeyMask) -> Module<F> {
        let term = Term { summands: vec![(c, key.clone())], offsets: vec![0], dim: self.indec[c].dim() };
        self.term_module(alg, &term, mask)
    }

    fn term_module(&self, alg: &Algebra<F>, term: &Term, mask: KeyMask) -> Module<F> {
        let f = &alg.field;
        let action = (0..alg.dim())
            .map(|i| {
                let b = alg.basis(i);
                let cols: Vec<Vector<F>> = (0..term.dim).map(|j| self.act(alg, term, &b, &unit(f, term.dim, j))).collect();
                SparseMat::from_columns(f, term.dim, &cols)
            })
            .collect();
        let keys = self.term_keys(term, mask);
        let grading = mask.degree.then(|| keys.iter().map(|k| k.0).collect());
        let x_grading = mask.weight.then(|| keys.iter().map(|k| Weight(k.1.clone())).collect());
        Module::new_unchecked(alg, term.dim, action, grading, x_grading)
    }

    fn term_keys(&self, term: &Term, mask: KeyMask) -> Vec<Key> {
        let mut keys = Vec::with_capacity(term.dim);
        for (c, k) in &term.summands {
            for kb in &self.indec[*c].keys {
                keys.push(mask.project(&add_keys(k, kb)));
            }
        }
        keys
    }

    fn act(&self, alg: &Algebra<F>, term: &Term, a: &[F::Elem], v: &[F::Elem]) -> Vector<F> {
        let f = &alg.field;
        let mut out = zeros(f, term.dim);
        for (t, (c, _)) in term.summands.iter().enumerate() {
            let ind = &self.indec[*c];
            let o = term.offsets[t];
            let part = &v[o..o + ind.dim()];
            if is_zero_vec(f, part) {
                continue;
            }
            let w = alg.mul(a, &ind.element(f, part));
            for (x, y) in out[o..o + ind.dim()].iter_mut().zip(ind.coords(&w)) {
                *x = y;
            }
        }
        out
    }
}

/// Direct sum of shifted indecomposable projectives.
#[derive(Clone, Debug, Serialize)]
pub struct Term {
    /// (class, key of the generator e_class)
    pub summands: Vec<(usize, Key)>,
    #[serde(skip)]
    offsets: Vec<usize>,
    pub dim: usize,
}

impl Term {
    fn new<F: Field>(proj: &Projectives<F>, summands: Vec<(usize, Key)>) -> Term {
        let mut offsets = Vec::with_capacity(summands.len());
        let mut dim = 0;
        for (c, _) in &summands {
            offsets.push(dim);
            dim += proj.indec[*c].dim();
        }
        Term { summands, offsets, dim }
    }

    /// Generator degrees (Z-components of the generator keys).
    pub fn generator_degrees(&self) -> Vec<i64> {
        self.summands.iter().map(|(_, k)| k.0).collect()
    }
}

enum Ambient<'a, F: Field> {
    Module(&'a Module<F>),
    Term(&'a Term),
}

/// Minimal projective resolution P_n -> ... -> P_0 -> M.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub mask: KeyMask,
    pub terms: Vec<Term>,
    /// Images of the generators of P_n: in M for n = 0, in P_{n-1} else.
    pub images: Vec<Vec<Vector<F>>>,
    /// True when the last kernel vanished, so the resolution is finite.
    pub complete: bool,
}

impl<F: Field> Resolution<F> {
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn term_module(&self, alg: &Algebra<F>, proj: &Projectives<F>, n: usize) -> Module<F> {
        proj.term_module(alg, &self.terms[n], self.mask)
    }

    /// Components in A e_c of the image of generator s of P_n (n >= 1).
    fn components(&self, f: &F, proj: &Projectives<F>, n: usize, s: usize) -> Vec<Vector<F>> {
        let prev = &self.terms[n - 1];
        let v = &self.images[n][s];
        prev.summands
            .iter()
            .enumerate()
            .map(|(t, (c, _))| {
                let ind = &proj.indec[*c];
                let o = prev.offsets[t];
                ind.element(f, &v[o..o + ind.dim()])
            })
            .collect()
    }

    /// Whether each differential lands in rad P_{n-1}.
    pub fn is_minimal(&self, alg: &Algebra<F>, proj: &Projectives<F>) -> bool {
        let f = &alg.field;
        let rad = &proj.idempotents.radical;
        (1..self.terms.len()).all(|n| {
            let prev = &self.terms[n - 1];
            let mut rp = Echelon::new(f, prev.dim);
            for r in rad {
                for j in 0..prev.dim {
                    let w = proj.act(alg, prev, r, &unit(f, prev.dim, j));
                    if !is_zero_vec(f, &w) {
                        rp.insert(w);
                    }
                }
            }
            self.images[n].iter().all(|v| rp.contains(v))
        })
    }
}

impl<F: Field> Projectives<F> {
    /// Resolves M up to homological degree `n_max` (P_0..P_{n_max}).
    pub fn resolve(&self, alg: &Algebra<F>, m: &Module<F>, n_max: usize, mask: KeyMask) -> Result<Resolution<F>> {
        let f = &alg.field;
        let mask = mask.meet(m.mask());
        let rad = &self.idempotents.radical;
        let mut terms = Vec::new();
        let mut images = Vec::new();
        let mut ambient_term: Option<Term> = None;
        // X: the submodule still to be covered, as vectors in the ambient
        let mut x: Vec<Vector<F>> = (0..m.dim).map(|i| unit(f, m.dim, i)).collect();
        let mut complete = false;
        for _ in 0..=n_max {
            let amb = match &ambient_term {
                None => Ambient::Module(m),
                Some(t) => Ambient::Term(t),
            };
            let (amb_dim, amb_keys) = match &amb {
                Ambient::Module(m) => (m.dim, (0..m.dim).map(|i| mask.project(&m.key(i))).collect::<Vec<_>>()),
                Ambient::Term(t) => (t.dim, self.term_keys(t, mask)),
            };
            let act = |a: &[F::Elem], v: &[F::Elem]| -> Vector<F> {
                match &amb {
                    Ambient::Module(m) => m.act(alg, a, v),
                    Ambient::Term(t) => self.act(alg, t, a, v),
                }
            };
            if x.is_empty() {
                complete = true;
                break;
            }
            let key_of = |v: &[F::Elem]| -> Key {
                let i = v.iter().position(|c| !f.is_zero(c)).expect("nonzero vector");
                amb_keys[i].clone()
            };
            let mut top = Echelon::new(f, amb_dim);
            for r in rad {
                for v in &x {
                    let w = act(r, v);
                    if !is_zero_vec(f, &w) {
                        top.insert(w);
                    }
                }
            }
            let mut by_key: BTreeMap<Key, Vec<&Vector<F>>> = BTreeMap::new();
            for v in &x {
                by_key.entry(key_of(v)).or_default().push(v);
            }
            let mut summands = Vec::new();
            let mut gens = Vec::new();
            for (key, vs) in &by_key {
                for c in 0..self.classes() {
                    let e = self.idempotents.representative(c);
                    for v in vs {
                        let w = act(e, v);
                        if !is_zero_vec(f, &w) && top.insert(w.clone()) {
                            summands.push((c, key.clone()));
                            gens.push(w);
                        }
                    }
                }
            }
            let term = Term::new(self, summands);
            // images of the basis of the new term, grouped by key
            let keys = self.term_keys(&term, mask);
            let mut cols: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
            for (j, k) in keys.iter().enumerate() {
                cols.entry(k.clone()).or_default().push(j);
            }
            let mut rows_of_key: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
            for (i, k) in amb_keys.iter().enumerate() {
                rows_of_key.entry(k.clone()).or_default().push(i);
            }
            let mut next = Vec::new();
            for (key, idx) in &cols {
                let imgs: Vec<Vector<F>> = idx
                    .iter()
                    .map(|&j| {
                        let (t, local) = locate(&term, j);
                        let (c, _) = &term.summands[t];
                        let b = &self.indec[*c].basis[local];
                        act(b, &gens[t])
                    })
                    .collect();
                let rows: Vec<Vector<F>> = rows_of_key
                    .get(key)
                    .map(|ri| ri.iter().map(|&r| imgs.iter().map(|im| im[r].clone()).collect()).collect())
                    .unwrap_or_default();
                for sol in kernel(f, &rows, idx.len()) {
                    let mut v = zeros(f, term.dim);
                    for (&j, c) in idx.iter().zip(sol) {
                        v[j] = c;
                    }
                    next.push(v);
                }
            }
            terms.push(term.clone());
            images.push(gens);
            x = next;
            ambient_term = Some(term);
        }
        if x.is_empty() {
            complete = true;
        }
        Ok(Resolution { mask, terms, images, complete })
    }
}

fn locate(term: &Term, j: usize) -> (usize, usize) {
    let t = term.offsets.partition_point(|&o| o <= j) - 1;
    (t, j - term.offsets[t])
}

/// Minimal graded projective resolution to homological degree `n_max`.
pub fn minimal_resolution<F: Field>(alg: &Algebra<F>, m: &Module<F>, n_max: usize) -> Result<(Projectives<F>, Resolution<F>)> {
    let proj = Projectives::new(alg)?;
    let res = proj.resolve(alg, m, n_max, KeyMask::ALL)?;
    Ok((proj, res))
}

/// dim ext^n(M, N<r>) for n <= degree_bound, optionally refined by X-shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTable {
    pub degree_bound: usize,
    pub entries: BTreeMap<(usize, i64), usize>,
    pub x_entries: Option<BTreeMap<(usize, i64, Weight), usize>>,
}

#[derive(Serialize)]
struct ExtEntry {
    n: usize,
    r: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<Weight>,
    dim: usize,
}

impl ExtTable {
    pub fn get(&self, n: usize, r: i64) -> usize {
        self.entries.get(&(n, r)).copied().unwrap_or(0)
    }

    /// Ungraded Ext^n: the sum over all shifts.
    pub fn total(&self, n: usize) -> usize {
        self.entries.range((n, i64::MIN)..=(n, i64::MAX)).map(|(_, d)| d).sum()
    }

    /// Nonzero entries (n, r, dim) in order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, i64, usize)> + '_ {
        self.entries.iter().filter(|(_, &d)| d > 0).map(|(&(n, r), &d)| (n, r, d))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<ExtEntry> = match &self.x_entries {
            Some(xe) => xe.iter().map(|((n, r, x), d)| ExtEntry { n: *n, r: *r, x: Some(x.clone()), dim: *d }).collect(),
            None => self.entries.iter().map(|(&(n, r), &d)| ExtEntry { n, r, x: None, dim: d }).collect(),
        };
        serde_json::json!({ "degree_bound": self.degree_bound, "entries": rows })
    }
}

/// e_c N at one key, as reduced echelon rows.
struct Slice<F: Field> {
    rows: Vec<Vector<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Projectives<F> {
    /// Graded Ext table of (M, N) up to `n_max`, from the minimal resolution
    /// of M and the cohomology of the degree-preserving Hom complex.
    pub fn ext_table(&self, alg: &Algebra<F>, m: &Module<F>, n: &Module<F>, n_max: usize) -> Result<ExtTable> {
        let mask = m.mask().meet(n.mask());
        let res = self.resolve(alg, m, n_max + 1, mask)?;
        Ok(self.ext_from_resolution(alg, &res, n, n_max))
    }

    pub fn ext_from_resolution(&self, alg: &Algebra<F>, res: &Resolution<F>, n: &Module<F>, n_max: usize) -> ExtTable {
        let f = &alg.field;
        let mask = res.mask.meet(n.mask());
        // e_c N_key for every class and key
        let mut slices: BTreeMap<(usize, Key), Slice<F>> = BTreeMap::new();
        let mut nkeys: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
        for i in 0..n.dim {
            nkeys.entry(mask.project(&n.key(i))).or_default().push(i);
        }
        for c in 0..self.classes() {
            let e = self.idempotents.representative(c);
            for (k, idx) in &nkeys {
                let mut ech = Echelon::new(f, n.dim);
                for &i in idx {
                    let w = n.act(alg, e, &unit(f, n.dim, i));
                    if !is_zero_vec(f, &w) {
                        ech.insert(w);
                    }
                }
                if ech.dim() > 0 {
                    slices.insert((c, k.clone()), Slice { rows: ech.basis().to_vec(), pivots: ech.pivots().to_vec() });
                }
            }
        }
        let terms = res.terms.len();
        let gen_key = |k: usize, t: usize| mask.project(&res.terms[k].summands[t].1);
        // all shifts with a nonzero cochain group
        let mut shifts: BTreeMap<Key, ()> = BTreeMap::new();
        for term in res.terms.iter().take(n_max + 1) {
            for (c, k) in &term.summands {
                for (c2, nk) in slices.keys() {
                    if c2 == c {
                        shifts.insert(add_keys(&mask.project(k), &neg_key(nk)), ());
                    }
                }
            }
        }
        let components: Vec<Vec<Vec<Vector<F>>>> =
            (0..terms).map(|k| if k == 0 { vec![] } else { (0..res.terms[k].summands.len()).map(|s| res.components(f, self, k, s)).collect() }).collect();
        let slice = |k: usize, t: usize, shift: &Key| -> Option<&Slice<F>> {
            let c = res.terms[k].summands[t].0;
            slices.get(&(c, add_keys(&gen_key(k, t), &neg_key(shift))))
        };
        let cochain_dim = |k: usize, shift: &Key| -> usize {
            (0..res.terms[k].summands.len()).map(|t| slice(k, t, shift).map_or(0, |s| s.rows.len())).sum()
        };
        // rank of delta^k: C^k -> C^{k+1}
        let delta_rank = |k: usize, shift: &Key| -> usize {
            if k + 1 >= terms {
                return 0;
            }
            let mut cols = Vec::new();
            for t in 0..res.terms[k].summands.len() {
                let Some(sl) = slice(k, t, shift) else { continue };
                for w in &sl.rows {
                    let mut col = Vec::new();
                    for s in 0..res.terms[k + 1].summands.len() {
                        let Some(target) = slice(k + 1, s, shift) else { continue };
                        let u = &components[k + 1][s][t];
                        let img = if is_zero_vec(f, u) { zeros(f, n.dim) } else { n.act(alg, u, w) };
                        col.extend(target.pivots.iter().map(|&p| img[p].clone()));
                    }
                    cols.push(col);
                }
            }
            if cols.is_empty() || cols[0].is_empty() {
                0
            } else {
                rank(f, &cols)
            }
        };
        let shifts: Vec<Key> = shifts.into_keys().collect();
        let top = n_max.min(terms.saturating_sub(1));
        let per_shift: Vec<Vec<(usize, Key, usize)>> = shifts
            .par_iter()
            .map(|shift| {
                let ranks: Vec<usize> = (0..=top).map(|k| delta_rank(k, shift)).collect();
                (0..=top)
                    .map(|k| {
                        let d = cochain_dim(k, shift) - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 };
                        (k, shift.clone(), d)
                    })
                    .collect()
            })
            .collect();
        let mut entries = BTreeMap::new();
        let mut x_entries = BTreeMap::new();
        for (k, shift, d) in per_shift.into_iter().flatten() {
            if d == 0 {
                continue;
            }
            *entries.entry((k, shift.0)).or_insert(0) += d;
            *x_entries.entry((k, shift.0, Weight(shift.1.clone()))).or_insert(0) += d;
        }
        ExtTable { degree_bound: n_max, entries, x_entries: mask.weight.then_some(x_entries) }
    }
}

/// Graded Ext table of (M, N) up to `n_max`.
pub fn ext_table<F: Field>(alg: &Algebra<F>, m: &Module<F>, n: &Module<F>, n_max: usize) -> Result<ExtTable> {
    Projectives::new(alg)?.ext_table(alg, m, n, n_max)
}
