use std::collections::BTreeMap;

use crate::error::{input, Error, Result};
use crate::field::Field;
use crate::linalg::{axpy_vec, is_zero_vec, unit, zeros, Echelon, Matrix, Vector};
use crate::rootdata::Weight;

/// Grade key of a homogeneous element: (Z-degree, X-weight). The weight is
/// empty when the algebra carries no X-grading.
pub type Key = (i64, Vec<i64>);

pub fn neg_key(a: &Key) -> Key {
    (-a.0, a.1.iter().map(|x| -x).collect())
}

pub fn add_keys(a: &Key, b: &Key) -> Key {
    let w = if a.1.is_empty() {
        b.1.clone()
    } else if b.1.is_empty() {
        a.1.clone()
    } else {
        a.1.iter().zip(&b.1).map(|(x, y)| x + y).collect()
    };
    (a.0 + b.0, w)
}

/// Which components of a key a module carries; keys are compared after
/// dropping the components either side lacks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeyMask {
    pub degree: bool,
    pub weight: bool,
}

impl KeyMask {
    pub const ALL: KeyMask = KeyMask { degree: true, weight: true };

    pub fn project(&self, k: &Key) -> Key {
        (if self.degree { k.0 } else { 0 }, if self.weight { k.1.clone() } else { vec![] })
    }

    pub fn meet(self, o: KeyMask) -> KeyMask {
        KeyMask { degree: self.degree && o.degree, weight: self.weight && o.weight }
    }
}

/// table[i][j]: sparse b_i b_j.
type Table<E> = Vec<Vec<Vec<(usize, E)>>>;

/// Finite-dimensional associative unital algebra given by structure
/// constants on a basis b_0..b_{n-1}: b_i b_j = sum_k c_ijk b_k.
#[derive(Clone, Debug)]
pub struct Algebra<F: Field> {
    pub field: F,
    pub labels: Vec<String>,
    table: Table<F::Elem>,
    one: Vector<F>,
    generators: Vec<usize>,
    pub grading: Option<Vec<i64>>,
    pub x_grading: Option<Vec<Weight>>,
}

pub struct AlgebraBuilder<F: Field> {
    field: F,
    labels: Vec<String>,
    table: Table<F::Elem>,
    one: Option<Vector<F>>,
    grading: Option<Vec<i64>>,
    x_grading: Option<Vec<Weight>>,
}

impl<F: Field> AlgebraBuilder<F> {
    pub fn new(field: &F, labels: Vec<String>) -> Self {
        let n = labels.len();
        AlgebraBuilder {
            field: field.clone(),
            labels,
            table: vec![vec![Vec::new(); n]; n],
            one: None,
            grading: None,
            x_grading: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Adds c to the coefficient of b_k in b_i b_j.
    pub fn add(&mut self, i: usize, j: usize, k: usize, c: F::Elem) -> &mut Self {
        let f = &self.field;
        if f.is_zero(&c) {
            return self;
        }
        let entry = &mut self.table[i][j];
        if let Some(pos) = entry.iter().position(|(kk, _)| *kk == k) {
            let v = f.add(&entry[pos].1, &c);
            if f.is_zero(&v) {
                entry.remove(pos);
            } else {
                entry[pos].1 = v;
            }
        } else {
            entry.push((k, c));
        }
        self
    }

    /// Sets b_i b_j to the given vector.
    pub fn set_product(&mut self, i: usize, j: usize, v: &[F::Elem]) -> &mut Self {
        let f = &self.field;
        self.table[i][j] = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(k, c)| (k, c.clone()))
            .collect();
        self
    }

    pub fn identity(&mut self, one: Vector<F>) -> &mut Self {
        self.one = Some(one);
        self
    }

    pub fn grading(&mut self, g: Vec<i64>) -> &mut Self {
        self.grading = Some(g);
        self
    }

    pub fn x_grading(&mut self, g: Vec<Weight>) -> &mut Self {
        self.x_grading = Some(g);
        self
    }

    pub fn build(self) -> Result<Algebra<F>> {
        let n = self.labels.len();
        if n == 0 {
            return input("algebras have positive dimension");
        }
        if self.grading.as_ref().is_some_and(|g| g.len() != n)
            || self.x_grading.as_ref().is_some_and(|g| g.len() != n)
        {
            return input("grading length differs from dimension");
        }
        let mut table = self.table;
        for row in table.iter_mut() {
            for entry in row.iter_mut() {
                entry.sort_by_key(|(k, _)| *k);
            }
        }
        let mut alg = Algebra {
            field: self.field,
            labels: self.labels,
            table,
            one: vec![],
            generators: vec![],
            grading: self.grading,
            x_grading: self.x_grading,
        };
        alg.one = match self.one {
            Some(one) => one,
            None => alg.solve_identity()?,
        };
        alg.check_unit()?;
        alg.check_gradings()?;
        alg.generators = alg.greedy_generators();
        alg.check_associative()?;
        Ok(alg)
    }
}

impl<F: Field> Algebra<F> {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn one(&self) -> &Vector<F> {
        &self.one
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.table[i][j]
    }

    pub fn basis(&self, i: usize) -> Vector<F> {
        unit(&self.field, self.dim(), i)
    }

    pub fn zero(&self) -> Vector<F> {
        zeros(&self.field, self.dim())
    }

    pub fn is_graded(&self) -> bool {
        self.grading.is_some()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.grading.as_ref().map_or(0, |g| g[i])
    }

    pub fn weight(&self, i: usize) -> Vec<i64> {
        self.x_grading.as_ref().map_or(vec![], |g| g[i].0.clone())
    }

    pub fn key(&self, i: usize) -> Key {
        (self.degree(i), self.weight(i))
    }

    /// Key of the unit.
    pub fn zero_key(&self) -> Key {
        (0, self.x_grading.as_ref().map_or(vec![], |g| vec![0; g[0].rank()]))
    }

    /// Key of a homogeneous element, None for zero or inhomogeneous.
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

    /// Basis indices grouped by key.
    pub fn keys(&self) -> BTreeMap<Key, Vec<usize>> {
        let mut m: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
        for i in 0..self.dim() {
            m.entry(self.key(i)).or_default().push(i);
        }
        m
    }

    fn support(&self, v: &[F::Elem]) -> Vec<usize> {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let sx = self.support(x);
        let sy = self.support(y);
        let mut out = self.zero();
        for &i in &sx {
            for &j in &sy {
                let entry = &self.table[i][j];
                if entry.is_empty() {
                    continue;
                }
                let c = f.mul(&x[i], &y[j]);
                for (k, s) in entry {
                    f.axpy(&mut out[*k], &c, s);
                }
            }
        }
        out
    }

    /// b_i * y
    pub fn mul_basis_left(&self, i: usize, y: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = self.zero();
        for (j, c) in y.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (k, s) in &self.table[i][j] {
                f.axpy(&mut out[*k], c, s);
            }
        }
        out
    }

    /// x * b_j
    pub fn mul_basis_right(&self, x: &[F::Elem], j: usize) -> Vector<F> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, c) in x.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (k, s) in &self.table[i][j] {
                f.axpy(&mut out[*k], c, s);
            }
        }
        out
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vector<F> {
        let mut out = self.zero();
        for (k, s) in &self.table[i][j] {
            out[*k] = s.clone();
        }
        out
    }

    /// Matrix of y -> x y; column j is x b_j.
    pub fn left_mult_matrix(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        let n = self.dim();
        let cols: Vec<Vector<F>> = (0..n).map(|j| self.mul_basis_right(x, j)).collect();
        Matrix::from_fn(n, n, |r, c| cols[c][r].clone())
    }

    /// Matrix of y -> y x; column j is b_j x.
    pub fn right_mult_matrix(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        let n = self.dim();
        let cols: Vec<Vector<F>> = (0..n).map(|j| self.mul_basis_left(j, x)).collect();
        Matrix::from_fn(n, n, |r, c| cols[c][r].clone())
    }

    /// Trace of left multiplication by b_k, for every k.
    pub fn left_traces(&self) -> Vector<F> {
        let f = &self.field;
        (0..self.dim())
            .map(|k| {
                let mut t = f.zero();
                for j in 0..self.dim() {
                    for (m, s) in &self.table[k][j] {
                        if *m == j {
                            f.add_assign(&mut t, s);
                        }
                    }
                }
                t
            })
            .collect()
    }

    fn solve_identity(&self) -> Result<Vector<F>> {
        // sum_k c_k b_k b_j = b_j, fed until the solution is determined
        let f = &self.field;
        let n = self.dim();
        let mut ech = Echelon::new(f, n + 1);
        for j in 0..n {
            for l in 0..n {
                let mut row = zeros(f, n + 1);
                for k in 0..n {
                    for (m, s) in &self.table[k][j] {
                        if *m == l {
                            row[k] = s.clone();
                        }
                    }
                }
                row[n] = if l == j { f.one() } else { f.zero() };
                ech.insert(row);
            }
            if ech.dim() >= n {
                break;
            }
        }
        if ech.pivots().contains(&n) {
            return Err(Error::Structure("no left identity".into()));
        }
        if ech.dim() < n {
            return Err(Error::Structure("identity not determined by left unit equations".into()));
        }
        let mut one = zeros(f, n);
        for (row, &p) in ech.basis().iter().zip(ech.pivots()) {
            one[p] = row[n].clone();
        }
        Ok(one)
    }

    fn check_unit(&self) -> Result<()> {
        if self.one.len() != self.dim() {
            return input("identity has wrong length");
        }
        for j in 0..self.dim() {
            let b = self.basis(j);
            if self.mul(&self.one, &b) != b || self.mul(&b, &self.one) != b {
                return Err(Error::Structure(format!("identity fails on basis element {j}")));
            }
        }
        Ok(())
    }

    fn check_gradings(&self) -> Result<()> {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let kij = add_keys(&self.key(i), &self.key(j));
                for (k, _) in &self.table[i][j] {
                    if self.key(*k) != kij {
                        return Err(Error::Structure(format!(
                            "product b{i} b{j} leaves the grade {kij:?} (term b{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Closure of span{1} under left multiplication by the given basis
    /// elements.
    pub fn left_closure(&self, gens: &[usize], start: &[Vector<F>]) -> Echelon<F> {
        let mut span = Echelon::new(&self.field, self.dim());
        let mut queue: Vec<Vector<F>> = Vec::new();
        for v in start {
            if span.insert(v.clone()) {
                queue.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for &g in gens {
                let w = self.mul_basis_left(g, &v);
                if span.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        span
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by_key(|&i| (self.degree(i), i));
        let mut span = self.left_closure(&[], std::slice::from_ref(&self.one));
        for i in order {
            if span.dim() == self.dim() {
                break;
            }
            if span.contains(&self.basis(i)) {
                continue;
            }
            gens.push(i);
            let start: Vec<Vector<F>> = span.basis().to_vec();
            span = self.left_closure(&gens, &start);
        }
        gens
    }

    /// With 1 a two-sided unit and the left-nested words in S spanning A,
    /// (s b_j) b_k = s (b_j b_k) for s in S implies associativity: x -> L_x
    /// is then an injective homomorphism into End(A).
    fn check_associative(&self) -> Result<()> {
        let n = self.dim();
        for &s in &self.generators {
            for j in 0..n {
                let sbj = self.basis_product(s, j);
                for k in 0..n {
                    let lhs = self.mul_basis_right(&sbj, k);
                    let rhs = self.mul_basis_left(s, &self.basis_product(j, k));
                    if lhs != rhs {
                        return Err(Error::Structure(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[s], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Exhaustive associativity check on all basis triples.
    pub fn check_associative_exhaustive(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let bij = self.basis_product(i, j);
                (0..n).all(|k| self.mul_basis_right(&bij, k) == self.mul_basis_left(i, &self.basis_product(j, k)))
            })
        })
    }

    /// Minimal polynomial of x inside the unital subalgebra with unit e
    /// (x must satisfy e x = x e = x). Lowest degree first, monic.
    pub fn min_poly(&self, x: &[F::Elem], e: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut ech = Echelon::tracking(f, self.dim());
        let mut power = e.to_vec();
        let mut d = 0;
        loop {
            if let Some(c) = ech.coordinates(&power) {
                let mut poly: Vector<F> = c.iter().map(|v| f.neg(v)).collect();
                poly.push(f.one());
                debug_assert_eq!(poly.len(), d + 1);
                return poly;
            }
            ech.insert(power.clone());
            power = self.mul(&power, x);
            d += 1;
        }
    }

    /// Evaluates a polynomial at x with x^0 = e.
    pub fn eval_poly(&self, poly: &[F::Elem], x: &[F::Elem], e: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = self.zero();
        for c in poly.iter().rev() {
            out = self.mul(&out, x);
            axpy_vec(f, &mut out, c, e);
        }
        out
    }

    pub fn is_idempotent(&self, e: &[F::Elem]) -> bool {
        self.mul(e, e) == e
    }

    /// Span of {x y : x in xs, y in ys}.
    pub fn span_products(&self, xs: &[Vector<F>], ys: &[Vector<F>]) -> Echelon<F> {
        let mut ech = Echelon::new(&self.field, self.dim());
        for x in xs {
            for y in ys {
                let v = self.mul(x, y);
                if !is_zero_vec(&self.field, &v) {
                    ech.insert(v);
                }
            }
        }
        ech
    }

    /// All nonzero structure constants (i, j, k, c).
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, F::Elem)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                for (k, c) in &self.table[i][j] {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    /// Same algebra with the given gradings (validated).
    pub fn regraded(&self, grading: Option<Vec<i64>>, x_grading: Option<Vec<Weight>>) -> Result<Self> {
        let mut a = self.clone();
        a.grading = grading;
        a.x_grading = x_grading;
        if a.grading.as_ref().is_some_and(|g| g.len() != a.dim())
            || a.x_grading.as_ref().is_some_and(|g| g.len() != a.dim())
        {
            return input("grading length differs from dimension");
        }
        a.check_gradings()?;
        Ok(a)
    }

    /// A / I for a two-sided ideal I given by a spanning set of homogeneous
    /// vectors. The cosets of the basis vectors off the echelon pivots form
    /// the basis of the quotient; their indices are returned alongside.
    pub fn quotient_by_ideal(&self, ideal: &[Vector<F>]) -> Result<(Algebra<F>, Vec<usize>)> {
        let f = &self.field;
        let ech = Echelon::from_vectors(f, self.dim(), ideal.iter().cloned());
        let comp = ech.complement_units();
        if comp.is_empty() {
            return input("quotient by the whole algebra");
        }
        let pos: BTreeMap<usize, usize> = comp.iter().enumerate().map(|(a, &c)| (c, a)).collect();
        let labels = comp.iter().map(|&c| self.labels[c].clone()).collect();
        let mut b = AlgebraBuilder::new(f, labels);
        for (a, &i) in comp.iter().enumerate() {
            for (c, &j) in comp.iter().enumerate() {
                let v = ech.reduce(&self.basis_product(i, j));
                for (k, x) in v.iter().enumerate() {
                    if !f.is_zero(x) {
                        b.add(a, c, pos[&k], x.clone());
                    }
                }
            }
        }
        let one = ech.reduce(&self.one);
        b.identity(comp.iter().map(|&c| one[c].clone()).collect());
        if let Some(g) = &self.grading {
            b.grading(comp.iter().map(|&c| g[c]).collect());
        }
        if let Some(g) = &self.x_grading {
            b.x_grading(comp.iter().map(|&c| g[c].clone()).collect());
        }
        Ok((b.build()?, comp))
    }

    /// The subalgebra with the given basis (linearly independent, closed
    /// under multiplication) and unit. Gradings are inherited when all basis
    /// vectors are homogeneous.
    pub fn subalgebra(&self, basis: &[Vector<F>], one: &[F::Elem], labels: Vec<String>) -> Result<Algebra<F>> {
        let f = &self.field;
        let mut ech = Echelon::tracking(f, self.dim());
        for v in basis {
            if !ech.insert(v.clone()) {
                return input("subalgebra basis is linearly dependent");
            }
        }
        let mut b = AlgebraBuilder::new(f, labels);
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let Some(c) = ech.coordinates(&self.mul(x, y)) else {
                    return Err(Error::Structure("subspace is not closed under multiplication".into()));
                };
                b.set_product(i, j, &c);
            }
        }
        let Some(one) = ech.coordinates(one) else {
            return input("unit does not lie in the subalgebra");
        };
        b.identity(one);
        let keys: Option<Vec<Key>> = basis.iter().map(|v| self.key_of(v)).collect();
        if let Some(keys) = keys {
            if self.grading.is_some() {
                b.grading(keys.iter().map(|k| k.0).collect());
            }
            if self.x_grading.is_some() {
                b.x_grading(keys.iter().map(|k| Weight(k.1.clone())).collect());
            }
        }
        b.build()
    }

    /// Opposite algebra: b_i * b_j := b_j b_i.
    pub fn opposite(&self) -> Self {
        let n = self.dim();
        let mut table = vec![vec![Vec::new(); n]; n];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = self.table[j][i].clone();
            }
        }
        let mut a = Algebra {
            field: self.field.clone(),
            labels: self.labels.clone(),
            table,
            one: self.one.clone(),
            generators: vec![],
            grading: self.grading.clone(),
            x_grading: self.x_grading.clone(),
        };
        a.generators = a.greedy_generators();
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    /// F_p[x]/(x^n) with x in degree 1.
    pub fn truncated_poly(p: u64, n: usize) -> Algebra<Fp> {
        let f = Fp::new(p).unwrap();
        let labels = (0..n).map(|i| format!("x^{i}")).collect();
        let mut b = AlgebraBuilder::new(&f, labels);
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    b.add(i, j, i + j, 1);
                }
            }
        }
        b.grading((0..n as i64).collect());
        b.build().unwrap()
    }

    #[test]
    fn identity_is_solved() {
        let a = truncated_poly(5, 3);
        assert_eq!(a.one(), &vec![1, 0, 0]);
        assert!(a.check_associative_exhaustive());
        assert_eq!(a.generators(), &[1]);
    }

    #[test]
    fn nonassociative_rejected() {
        let f = Fp::new(3).unwrap();
        // basis 1, a, b with a a = b, a b = 0, b a = a (not associative)
        let mut b = AlgebraBuilder::new(&f, vec!["1".into(), "a".into(), "b".into()]);
        for i in 0..3 {
            b.add(0, i, i, 1);
            if i > 0 {
                b.add(i, 0, i, 1);
            }
        }
        b.add(1, 1, 2, 1);
        b.add(2, 1, 1, 1);
        assert!(b.build().is_err());
    }

    #[test]
    fn grading_violation_rejected() {
        let f = Fp::new(5).unwrap();
        let mut b = AlgebraBuilder::new(&f, vec!["1".into(), "x".into()]);
        b.add(0, 0, 0, 1).add(0, 1, 1, 1).add(1, 0, 1, 1).add(1, 1, 1, 1);
        b.grading(vec![0, 1]);
        assert!(b.build().is_err());
    }

    #[test]
    fn min_poly_of_nilpotent() {
        let a = truncated_poly(5, 3);
        let x = a.basis(1);
        assert_eq!(a.min_poly(&x, a.one()), vec![0, 0, 0, 1]);
    }
}
