//! Dense exact linear algebra over a [`Field`]: row reduction, kernels,
//! incremental echelon bases with optional coordinate tracking.

use crate::field::Field;

pub type Vector<F> = Vec<<F as Field>::Elem>;

pub fn zeros<F: Field>(f: &F, n: usize) -> Vector<F> {
    vec![f.zero(); n]
}

pub fn unit<F: Field>(f: &F, n: usize, i: usize) -> Vector<F> {
    let mut v = zeros(f, n);
    v[i] = f.one();
    v
}

pub fn is_zero_vec<F: Field>(f: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| f.is_zero(x))
}

pub fn add_vec<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn sub_vec<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub fn scale_vec<F: Field>(f: &F, c: &F::Elem, a: &[F::Elem]) -> Vector<F> {
    a.iter().map(|x| f.mul(c, x)).collect()
}

/// a += c * b
pub fn axpy_vec<F: Field>(f: &F, a: &mut [F::Elem], c: &F::Elem, b: &[F::Elem]) {
    if f.is_zero(c) {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !f.is_zero(y) {
            f.axpy(x, c, y);
        }
    }
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        if !f.is_zero(x) && !f.is_zero(y) {
            f.axpy(&mut acc, x, y);
        }
    }
    acc
}

/// Dense matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut g: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(g(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }
}

pub fn zero_matrix<F: Field>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix { rows, cols, data: vec![f.zero(); rows * cols] }
}

pub fn identity_matrix<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |r, c| if r == c { f.one() } else { f.zero() })
}

pub fn mat_vec<F: Field>(f: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Vector<F> {
    let mut out = zeros(f, m.rows);
    for (c, x) in v.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (r, o) in out.iter_mut().enumerate() {
            let a = m.get(r, c);
            if !f.is_zero(a) {
                f.axpy(o, a, x);
            }
        }
    }
    out
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows);
    let mut out = zero_matrix(f, a.rows, b.cols);
    for r in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(r, k);
            if f.is_zero(x) {
                continue;
            }
            for c in 0..b.cols {
                let y = b.get(k, c);
                if !f.is_zero(y) {
                    let idx = r * out.cols + c;
                    f.axpy(&mut out.data[idx], x, y);
                }
            }
        }
    }
    out
}

pub fn mat_add_scaled<F: Field>(f: &F, a: &mut Matrix<F::Elem>, c: &F::Elem, b: &Matrix<F::Elem>) {
    for (x, y) in a.data.iter_mut().zip(&b.data) {
        if !f.is_zero(y) {
            f.axpy(x, c, y);
        }
    }
}

pub fn trace<F: Field>(f: &F, m: &Matrix<F::Elem>) -> F::Elem {
    let mut acc = f.zero();
    for i in 0..m.rows.min(m.cols) {
        f.add_assign(&mut acc, m.get(i, i));
    }
    acc
}

/// Reduced row echelon form in place; zero rows are dropped. Returns the
/// pivot columns.
pub fn rref<F: Field>(f: &F, rows: &mut Vec<Vector<F>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !f.is_zero(&row[c]) {
                let factor = f.neg(&row[c]);
                axpy_vec(f, row, &factor, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Field>(f: &F, rows: &[Vector<F>]) -> usize {
    let mut e = Echelon::new(f, rows.first().map_or(0, |r| r.len()));
    for r in rows {
        e.insert(r.clone());
    }
    e.dim()
}

/// Basis of {x : M x = 0} where M has the given rows and `ncols` columns.
pub fn kernel<F: Field>(f: &F, rows: &[Vector<F>], ncols: usize) -> Vec<Vector<F>> {
    let mut m: Vec<Vector<F>> = rows.to_vec();
    if m.is_empty() {
        return (0..ncols).map(|i| unit(f, ncols, i)).collect();
    }
    let pivots = rref(f, &mut m);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = zeros(f, ncols);
        v[free] = f.one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = f.neg(&row[free]);
        }
        out.push(v);
    }
    out
}

/// Basis of {y : y^T M = 0}, i.e. linear relations among the rows.
pub fn left_kernel<F: Field>(f: &F, rows: &[Vector<F>]) -> Vec<Vector<F>> {
    if rows.is_empty() {
        return vec![];
    }
    let ncols = rows[0].len();
    let t: Vec<Vector<F>> = (0..ncols)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect();
    kernel(f, &t, rows.len())
}

/// An incrementally maintained reduced echelon basis of a subspace.
/// With tracking on, each row remembers its expression in terms of the
/// vectors that were successfully inserted, so coordinates with respect to
/// the inserted vectors can be recovered.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<Vector<F>>,
    pivots: Vec<usize>,
    track: bool,
    combos: Vec<Vector<F>>,
    inserted: usize,
}

impl<F: Field> Echelon<F> {
    pub fn new(f: &F, ncols: usize) -> Self {
        Echelon {
            field: f.clone(),
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            track: false,
            combos: Vec::new(),
            inserted: 0,
        }
    }

    pub fn tracking(f: &F, ncols: usize) -> Self {
        let mut e = Self::new(f, ncols);
        e.track = true;
        e
    }

    pub fn from_vectors(f: &F, ncols: usize, vs: impl IntoIterator<Item = Vector<F>>) -> Self {
        let mut e = Self::new(f, ncols);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn basis(&self) -> &[Vector<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of v after eliminating against the pivots; zero iff v lies
    /// in the span. Also returns the coefficients used (per row).
    fn eliminate(&self, v: &mut Vector<F>) -> Vec<F::Elem> {
        let f = &self.field;
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if !f.is_zero(&c) {
                axpy_vec(f, v, &f.neg(&c), row);
            }
            coeffs.push(c);
        }
        coeffs
    }

    pub fn reduce(&self, v: &[F::Elem]) -> Vector<F> {
        let mut w = v.to_vec();
        self.eliminate(&mut w);
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        is_zero_vec(&self.field, &self.reduce(v))
    }

    /// Inserts v; returns true if it enlarged the span.
    pub fn insert(&mut self, v: Vector<F>) -> bool {
        let f = self.field.clone();
        let mut w = v;
        let coeffs = self.eliminate(&mut w);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[p]);
        for x in w.iter_mut() {
            *x = f.mul(x, &inv);
        }
        let mut combo = Vec::new();
        if self.track {
            // w_raw = v - sum coeffs_i row_i, row_i = sum combos_i[j] v_j
            combo = zeros(&f, self.inserted + 1);
            combo[self.inserted] = f.one();
            for (c, rc) in coeffs.iter().zip(&self.combos) {
                if !f.is_zero(c) {
                    axpy_vec(&f, &mut combo, &f.neg(c), rc);
                }
            }
            combo = scale_vec(&f, &inv, &combo);
            for rc in self.combos.iter_mut() {
                rc.push(f.zero());
            }
        }
        // keep reduced form: clear column p from existing rows
        for (i, row) in self.rows.iter_mut().enumerate() {
            let c = row[p].clone();
            if !f.is_zero(&c) {
                let nc = f.neg(&c);
                axpy_vec(&f, row, &nc, &w);
                if self.track {
                    axpy_vec(&f, &mut self.combos[i], &nc, &combo);
                }
            }
        }
        // insert keeping pivots sorted
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, w);
        if self.track {
            self.combos.insert(pos, combo);
            self.inserted += 1;
        }
        true
    }

    /// Coordinates of v with respect to the successfully inserted vectors
    /// (tracking mode only), or None if v is not in the span.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vector<F>> {
        assert!(self.track, "coordinates need a tracking echelon");
        let f = &self.field;
        let mut w = v.to_vec();
        let coeffs = self.eliminate(&mut w);
        if !is_zero_vec(f, &w) {
            return None;
        }
        let mut out = zeros(f, self.inserted);
        for (c, rc) in coeffs.iter().zip(&self.combos) {
            axpy_vec(f, &mut out, c, rc);
        }
        Some(out)
    }

    /// Coordinates with respect to the echelon rows themselves.
    pub fn row_coordinates(&self, v: &[F::Elem]) -> Option<Vector<F>> {
        let mut w = v.to_vec();
        let coeffs = self.eliminate(&mut w);
        if is_zero_vec(&self.field, &w) {
            Some(coeffs)
        } else {
            None
        }
    }

    /// Basis vectors (standard unit vectors) completing this subspace to the
    /// full space.
    pub fn complement_units(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }
}

/// Intersection of two subspaces given by spanning sets.
pub fn intersect<F: Field>(f: &F, ncols: usize, a: &[Vector<F>], b: &[Vector<F>]) -> Vec<Vector<F>> {
    // x = sum s_i a_i = sum t_j b_j  <=> kernel of [a; -b] relations
    let ea = Echelon::from_vectors(f, ncols, a.iter().cloned());
    let eb = Echelon::from_vectors(f, ncols, b.iter().cloned());
    let mut rows: Vec<Vector<F>> = ea.basis().to_vec();
    let na = rows.len();
    rows.extend(eb.basis().iter().map(|v| v.iter().map(|x| f.neg(x)).collect()));
    let rel = left_kernel(f, &rows);
    let mut out = Echelon::new(f, ncols);
    for r in rel {
        let mut v = zeros(f, ncols);
        for (c, row) in r.iter().take(na).zip(ea.basis()) {
            axpy_vec(f, &mut v, c, row);
        }
        out.insert(v);
    }
    out.basis().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rationals};
    use proptest::prelude::*;

    #[test]
    fn kernel_of_small_matrix() {
        let f = Fp::new(5).unwrap();
        let rows = vec![vec![1, 2, 3], vec![2, 4, 2]];
        let k = kernel(&f, &rows, 3);
        assert_eq!(k.len(), 1);
        for r in &rows {
            assert_eq!(dot(&f, r, &k[0]), 0);
        }
    }

    #[test]
    fn tracking_coordinates() {
        let q = Rationals;
        let v = |xs: &[i64]| xs.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
        let mut e = Echelon::tracking(&q, 3);
        assert!(e.insert(v(&[1, 1, 0])));
        assert!(e.insert(v(&[0, 1, 1])));
        assert!(!e.insert(v(&[1, 2, 1])));
        let c = e.coordinates(&v(&[2, 5, 3])).unwrap();
        assert_eq!(c, v(&[2, 3]));
        assert!(e.coordinates(&v(&[0, 0, 1])).is_none());
    }

    #[test]
    fn intersection_dimension() {
        let f = Fp::new(3).unwrap();
        let a = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let b = vec![vec![0, 1, 0], vec![0, 0, 1]];
        let i = intersect(&f, 3, &a, &b);
        assert_eq!(i.len(), 1);
        assert_eq!(i[0], vec![0, 1, 0]);
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(0u64..7, 12)) {
            let f = Fp::new(7).unwrap();
            let rows: Vec<Vec<u64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            let r = rank(&f, &rows);
            let k = kernel(&f, &rows, 4);
            prop_assert_eq!(r + k.len(), 4);
            for v in &k {
                for row in &rows {
                    prop_assert_eq!(dot(&f, row, v), 0);
                }
            }
        }

        #[test]
        fn tracked_coordinates_reconstruct(entries in proptest::collection::vec(0u64..5, 15)) {
            let f = Fp::new(5).unwrap();
            let vs: Vec<Vec<u64>> = entries.chunks(5).map(|c| c.to_vec()).collect();
            let mut e = Echelon::tracking(&f, 5);
            let mut kept = Vec::new();
            for v in &vs {
                if e.insert(v.clone()) {
                    kept.push(v.clone());
                }
            }
            let target: Vec<u64> = vs.iter().fold(vec![0; 5], |acc, v| add_vec(&f, &acc, v));
            let c = e.coordinates(&target).unwrap();
            let mut rebuilt = vec![0; 5];
            for (ci, v) in c.iter().zip(&kept) {
                axpy_vec(&f, &mut rebuilt, ci, v);
            }
            prop_assert_eq!(rebuilt, target);
        }
    }
}
