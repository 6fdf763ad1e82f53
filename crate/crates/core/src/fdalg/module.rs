use std::collections::BTreeMap;

use crate::error::{input, Error, Result};
use crate::field::Field;
use crate::fdalg::algebra::{add_keys, Algebra, Key, KeyMask};
use crate::linalg::{axpy_vec, is_zero_vec, kernel, unit, zeros, Echelon, Matrix, Vector};
use crate::rootdata::Weight;

/// Sparse matrix as (row, col, value) triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat<E> {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, E)>,
}

impl<E: Clone> SparseMat<E> {
    pub fn from_dense<F: Field<Elem = E>>(f: &F, m: &Matrix<E>) -> Self {
        let mut entries = Vec::new();
        for r in 0..m.rows {
            for c in 0..m.cols {
                let v = m.get(r, c);
                if !f.is_zero(v) {
                    entries.push((r, c, v.clone()));
                }
            }
        }
        SparseMat { rows: m.rows, cols: m.cols, entries }
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, f: &F) -> Matrix<E> {
        let mut m = Matrix { rows: self.rows, cols: self.cols, data: vec![f.zero(); self.rows * self.cols] };
        for (r, c, v) in &self.entries {
            let cur = m.get(*r, *c).clone();
            m.set(*r, *c, f.add(&cur, v));
        }
        m
    }

    pub fn apply<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let mut out = vec![f.zero(); self.rows];
        for (r, c, x) in &self.entries {
            if !f.is_zero(&v[*c]) {
                f.axpy(&mut out[*r], x, &v[*c]);
            }
        }
        out
    }

    /// Builds from columns: column c is the image of the c-th basis vector.
    pub fn from_columns<F: Field<Elem = E>>(f: &F, rows: usize, cols: &[Vec<E>]) -> Self {
        let mut entries = Vec::new();
        for (c, col) in cols.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                if !f.is_zero(v) {
                    entries.push((r, c, v.clone()));
                }
            }
        }
        SparseMat { rows, cols: cols.len(), entries }
    }
}

/// Left module given by the action matrix of every algebra basis element.
#[derive(Clone, Debug)]
pub struct Module<F: Field> {
    pub field: F,
    pub dim: usize,
    pub action: Vec<SparseMat<F::Elem>>,
    pub grading: Option<Vec<i64>>,
    pub x_grading: Option<Vec<Weight>>,
}

impl<F: Field> Module<F> {
    /// Validates the homomorphism property on the algebra generators, the
    /// unit, and compatibility of the gradings.
    pub fn new(
        alg: &Algebra<F>,
        dim: usize,
        action: Vec<SparseMat<F::Elem>>,
        grading: Option<Vec<i64>>,
        x_grading: Option<Vec<Weight>>,
    ) -> Result<Self> {
        let m = Module { field: alg.field.clone(), dim, action, grading, x_grading };
        m.validate(alg)?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        alg: &Algebra<F>,
        dim: usize,
        action: Vec<SparseMat<F::Elem>>,
        grading: Option<Vec<i64>>,
        x_grading: Option<Vec<Weight>>,
    ) -> Self {
        let m = Module { field: alg.field.clone(), dim, action, grading, x_grading };
        debug_assert!(m.validate(alg).is_ok(), "{:?}", m.validate(alg));
        m
    }

    pub fn validate(&self, alg: &Algebra<F>) -> Result<()> {
        let f = &self.field;
        if self.action.len() != alg.dim() {
            return input("one action matrix per algebra basis element expected");
        }
        if self.action.iter().any(|m| m.rows != self.dim || m.cols != self.dim) {
            return input("action matrices have the wrong size");
        }
        if self.grading.as_ref().is_some_and(|g| g.len() != self.dim)
            || self.x_grading.as_ref().is_some_and(|g| g.len() != self.dim)
        {
            return input("module grading length differs from dimension");
        }
        for c in 0..self.dim {
            let e = unit(f, self.dim, c);
            if self.act(alg, alg.one(), &e) != e {
                return Err(Error::Structure("identity does not act as 1".into()));
            }
        }
        for &s in alg.generators() {
            for j in 0..alg.dim() {
                let sbj = alg.basis_product(s, j);
                for c in 0..self.dim {
                    let v = self.act_basis(j, &unit(f, self.dim, c));
                    let lhs = self.act_basis(s, &v);
                    let rhs = self.act(alg, &sbj, &unit(f, self.dim, c));
                    if lhs != rhs {
                        return Err(Error::Structure(format!(
                            "action is not a homomorphism at ({}, {})",
                            alg.labels[s], alg.labels[j]
                        )));
                    }
                }
            }
        }
        for (i, m) in self.action.iter().enumerate() {
            let ki = self.mask().project(&alg.key(i));
            for (r, c, _) in &m.entries {
                if self.key(*r) != add_keys(&ki, &self.key(*c)) {
                    return Err(Error::Structure(format!(
                        "{} sends basis vector {c} outside its grade",
                        alg.labels[i]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.grading.as_ref().map_or(0, |g| g[i])
    }

    pub fn weight(&self, i: usize) -> Vec<i64> {
        self.x_grading.as_ref().map_or(vec![], |g| g[i].0.clone())
    }

    /// Gradings this module carries.
    pub fn mask(&self) -> KeyMask {
        KeyMask { degree: self.grading.is_some(), weight: self.x_grading.is_some() }
    }

    pub fn key(&self, i: usize) -> Key {
        (self.degree(i), self.weight(i))
    }

    pub fn key_of(&self, v: &[F::Elem]) -> Option<Key> {
        let mut key = None;
        for (i, c) in v.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            let k = self.key(i);
            match &key {
                None => key = Some(k),
                Some(k0) if *k0 != k => return None,
                _ => {}
            }
        }
        key
    }

    pub fn keys(&self) -> BTreeMap<Key, Vec<usize>> {
        let mut m: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
        for i in 0..self.dim {
            m.entry(self.key(i)).or_default().push(i);
        }
        m
    }

    pub fn act_basis(&self, i: usize, v: &[F::Elem]) -> Vector<F> {
        self.action[i].apply(&self.field, v)
    }

    pub fn act(&self, _alg: &Algebra<F>, a: &[F::Elem], v: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = zeros(f, self.dim);
        for (i, c) in a.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let w = self.act_basis(i, v);
            axpy_vec(f, &mut out, c, &w);
        }
        out
    }

    /// Matrix of the action of an algebra element.
    pub fn action_matrix(&self, a: &[F::Elem]) -> Matrix<F::Elem> {
        let f = &self.field;
        let mut m = Matrix { rows: self.dim, cols: self.dim, data: vec![f.zero(); self.dim * self.dim] };
        for (i, c) in a.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (r, col, x) in &self.action[i].entries {
                let cur = m.get(*r, *col).clone();
                m.set(*r, *col, f.add(&cur, &f.mul(c, x)));
            }
        }
        m
    }

    /// Left regular module.
    pub fn regular(alg: &Algebra<F>) -> Self {
        let n = alg.dim();
        let action = (0..n)
            .map(|i| {
                let mut entries = Vec::new();
                for j in 0..n {
                    for (k, c) in alg.product(i, j) {
                        entries.push((*k, j, c.clone()));
                    }
                }
                SparseMat { rows: n, cols: n, entries }
            })
            .collect();
        Module::new_unchecked(alg, n, action, alg.grading.clone(), alg.x_grading.clone())
    }

    /// Smallest submodule containing the given vectors.
    pub fn generated(&self, alg: &Algebra<F>, vs: &[Vector<F>]) -> Echelon<F> {
        let mut span = Echelon::new(&self.field, self.dim);
        let mut queue = Vec::new();
        for v in vs {
            if span.insert(v.clone()) {
                queue.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for &g in alg.generators() {
                let w = self.act_basis(g, &v);
                if span.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        span
    }

    /// Submodule on an invariant subspace with the given homogeneous basis.
    pub fn submodule(&self, alg: &Algebra<F>, basis: &[Vector<F>]) -> Result<Module<F>> {
        let f = &self.field;
        let mut ech = Echelon::tracking(f, self.dim);
        for v in basis {
            if !ech.insert(v.clone()) {
                return input("submodule basis is linearly dependent");
            }
        }
        let mut keys = Vec::new();
        for v in basis {
            match self.key_of(v) {
                Some(k) => keys.push(k),
                None if is_zero_vec(f, v) => return input("zero vector in submodule basis"),
                None => return input("submodule basis vector is not homogeneous"),
            }
        }
        let d = basis.len();
        let mut action = Vec::with_capacity(alg.dim());
        for i in 0..alg.dim() {
            let mut cols = Vec::with_capacity(d);
            for v in basis {
                let w = self.act_basis(i, v);
                let Some(c) = ech.coordinates(&w) else {
                    return input("subspace is not invariant");
                };
                cols.push(c);
            }
            action.push(SparseMat::from_columns(f, d, &cols));
        }
        let grading = self.grading.as_ref().map(|_| keys.iter().map(|k| k.0).collect());
        let x_grading = self.x_grading.as_ref().map(|_| keys.iter().map(|k| Weight(k.1.clone())).collect());
        Ok(Module::new_unchecked(alg, d, action, grading, x_grading))
    }

    /// Quotient by an invariant homogeneous subspace. The cosets of the
    /// standard basis vectors outside the echelon pivots form the basis.
    pub fn quotient(&self, alg: &Algebra<F>, sub: &[Vector<F>]) -> Result<(Module<F>, Vec<usize>)> {
        let f = &self.field;
        let ech = Echelon::from_vectors(f, self.dim, sub.iter().cloned());
        let comp = ech.complement_units();
        let d = comp.len();
        let mut action = Vec::with_capacity(alg.dim());
        for i in 0..alg.dim() {
            let mut cols = Vec::with_capacity(d);
            for &c in &comp {
                let w = ech.reduce(&self.act_basis(i, &unit(f, self.dim, c)));
                cols.push(comp.iter().map(|&k| w[k].clone()).collect::<Vec<_>>());
            }
            action.push(SparseMat::from_columns(f, d, &cols));
        }
        let grading = self.grading.as_ref().map(|g| comp.iter().map(|&c| g[c]).collect());
        let x_grading = self.x_grading.as_ref().map(|g| comp.iter().map(|&c| g[c].clone()).collect());
        let m = Module { field: f.clone(), dim: d, action, grading, x_grading };
        m.validate(alg)?;
        Ok((m, comp))
    }

    pub fn direct_sum(&self, other: &Module<F>) -> Module<F> {
        let d = self.dim + other.dim;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut entries = a.entries.clone();
                entries.extend(b.entries.iter().map(|(r, c, v)| (r + self.dim, c + self.dim, v.clone())));
                SparseMat { rows: d, cols: d, entries }
            })
            .collect();
        let grading = match (&self.grading, &other.grading) {
            (None, None) => None,
            _ => Some((0..self.dim).map(|i| self.degree(i)).chain((0..other.dim).map(|i| other.degree(i))).collect()),
        };
        let x_grading = match (&self.x_grading, &other.x_grading) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Module { field: self.field.clone(), dim: d, action, grading, x_grading }
    }

    /// M<r>: the grade-i part is M_{i-r}. X-weights are shifted by `x`
    /// when given.
    pub fn shift(&self, r: i64, x: Option<&Weight>) -> Module<F> {
        let mut m = self.clone();
        if self.grading.is_some() || r != 0 {
            m.grading = Some((0..self.dim).map(|i| self.degree(i) + r).collect());
        }
        if let (Some(xs), Some(g)) = (x, m.x_grading.as_mut()) {
            for w in g.iter_mut() {
                *w = &*w + xs;
            }
        }
        m
    }

    /// Forgets both gradings.
    pub fn ungraded(&self) -> Module<F> {
        let mut m = self.clone();
        m.grading = None;
        m.x_grading = None;
        m
    }

    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for i in 0..self.dim {
            *out.entry(self.degree(i)).or_insert(0) += 1;
        }
        out
    }

    /// dim of the weight space M_nu.
    pub fn weight_dim(&self, nu: &Weight) -> usize {
        (0..self.dim).filter(|&i| self.weight(i) == nu.0).count()
    }
}

/// Degree-preserving homomorphisms M -> N<shift>: basis vector j of N sits
/// in key key_N(j) + shift, so the entry (r, c) is allowed iff
/// key_N(r) + shift = key_M(c). Returns a basis of the hom space as
/// dim N x dim M matrices.
pub fn hom_space<F: Field>(alg: &Algebra<F>, m: &Module<F>, n: &Module<F>, shift: &Key) -> Vec<Matrix<F::Elem>> {
    let f = &alg.field;
    let mut vars = Vec::new();
    let mut var_of = BTreeMap::new();
    let mask = m.mask().meet(n.mask());
    for r in 0..n.dim {
        let kr = mask.project(&add_keys(&n.key(r), shift));
        for c in 0..m.dim {
            if kr == mask.project(&m.key(c)) {
                var_of.insert((r, c), vars.len());
                vars.push((r, c));
            }
        }
    }
    let nv = vars.len();
    if nv == 0 {
        return vec![];
    }
    let dm: Vec<Matrix<F::Elem>> = alg.generators().iter().map(|&s| m.action[s].to_dense(f)).collect();
    let dn: Vec<Matrix<F::Elem>> = alg.generators().iter().map(|&s| n.action[s].to_dense(f)).collect();
    let mut ech = Echelon::new(f, nv);
    for (am, an) in dm.iter().zip(&dn) {
        // (phi A_M - A_N phi)[r][c] = 0
        for r in 0..n.dim {
            for c in 0..m.dim {
                let mut row = zeros(f, nv);
                let mut nonzero = false;
                for k in 0..m.dim {
                    if let Some(&v) = var_of.get(&(r, k)) {
                        let a = am.get(k, c);
                        if !f.is_zero(a) {
                            row[v] = f.add(&row[v], a);
                            nonzero = true;
                        }
                    }
                }
                for k in 0..n.dim {
                    if let Some(&v) = var_of.get(&(k, c)) {
                        let a = an.get(r, k);
                        if !f.is_zero(a) {
                            row[v] = f.sub(&row[v], a);
                            nonzero = true;
                        }
                    }
                }
                if nonzero {
                    ech.insert(row);
                }
            }
        }
    }
    kernel(f, ech.basis(), nv)
        .into_iter()
        .map(|sol| {
            let mut mat = Matrix { rows: n.dim, cols: m.dim, data: vec![f.zero(); n.dim * m.dim] };
            for (v, (r, c)) in vars.iter().enumerate() {
                mat.set(*r, *c, sol[v].clone());
            }
            mat
        })
        .collect()
}

/// Whether M and N are isomorphic, by searching the degree-0 hom space for
/// an invertible element (random combinations, then basis elements).
pub fn isomorphic<F: Field>(alg: &Algebra<F>, m: &Module<F>, n: &Module<F>) -> bool {
    use rand::SeedableRng;
    if m.dim != n.dim {
        return false;
    }
    let mask = m.mask().meet(n.mask());
    let mut km: Vec<Key> = (0..m.dim).map(|i| mask.project(&m.key(i))).collect();
    let mut kn: Vec<Key> = (0..n.dim).map(|i| mask.project(&n.key(i))).collect();
    km.sort();
    kn.sort();
    if km != kn {
        return false;
    }
    let f = &alg.field;
    let homs = hom_space(alg, m, n, &(0, vec![]));
    if homs.is_empty() {
        return m.dim == 0;
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x15);
    for _ in 0..40 {
        let mut phi = Matrix { rows: n.dim, cols: m.dim, data: vec![f.zero(); n.dim * m.dim] };
        for h in homs.iter() {
            let c = if homs.len() == 1 { f.one() } else { f.random(&mut rng) };
            crate::linalg::mat_add_scaled(f, &mut phi, &c, h);
        }
        if crate::linalg::rank(f, &phi.to_rows()) == m.dim {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdalg::samples::{path_a2, truncated_poly};
    use crate::field::Fp;

    #[test]
    fn regular_module_and_projectives() {
        let f = Fp::new(5).unwrap();
        let a = path_a2(&f).unwrap();
        let reg = Module::regular(&a);
        reg.validate(&a).unwrap();
        // A e1 = span{e1, a}
        let p1 = reg.submodule(&a, &[a.basis(0), a.basis(2)]).unwrap();
        assert_eq!(p1.dim, 2);
        assert_eq!(p1.graded_dims(), BTreeMap::from([(0, 1), (1, 1)]));
        let (top, _) = reg.quotient(&a, &[a.basis(2), a.basis(1)]).unwrap();
        assert_eq!(top.dim, 1);
        assert!(reg.submodule(&a, &[a.basis(0)]).is_err());
    }

    #[test]
    fn hom_dimensions() {
        let f = Fp::new(5).unwrap();
        let a = truncated_poly(&f, 2, true).unwrap();
        let reg = Module::regular(&a);
        let (k, _) = reg.quotient(&a, &[a.basis(1)]).unwrap();
        assert_eq!(hom_space(&a, &reg, &reg, &(0, vec![])).len(), 1);
        assert_eq!(hom_space(&a, &reg, &reg, &(-1, vec![])).len(), 1);
        assert_eq!(hom_space(&a, &reg, &k, &(0, vec![])).len(), 1);
        assert_eq!(hom_space(&a, &k, &reg, &(-1, vec![])).len(), 1);
        assert_eq!(hom_space(&a, &k, &reg, &(0, vec![])).len(), 0);
        assert!(isomorphic(&a, &reg, &reg));
        assert!(!isomorphic(&a, &reg, &k.direct_sum(&k.shift(1, None))));
    }
}
