//! Algebras and modules built from others: idempotent truncation, duals,
//! quotients by trace ideals and associated graded objects.

use crate::error::{input, Error, Result};
use crate::fdalg::algebra::{Algebra, AlgebraBuilder};
use crate::fdalg::module::{Module, SparseMat};
use crate::fdalg::structure::{peirce, radical_series, Idempotents};
use crate::field::Field;
use crate::linalg::{add_vec, is_zero_vec, unit, Echelon, Vector};
use crate::rootdata::Weight;

/// eAe for an idempotent e of grade zero, with its basis as elements of A.
#[derive(Clone, Debug)]
pub struct Truncation<F: Field> {
    pub e: Vector<F>,
    pub algebra: Algebra<F>,
    pub basis: Vec<Vector<F>>,
}

pub fn idempotent_truncate<F: Field>(alg: &Algebra<F>, e: &[F::Elem]) -> Result<Truncation<F>> {
    if !alg.is_idempotent(e) || is_zero_vec(&alg.field, e) {
        return input("truncation needs a nonzero idempotent");
    }
    if alg.key_of(e) != Some(alg.zero_key()) {
        return input("truncation idempotent must be homogeneous of grade zero");
    }
    let basis = peirce(alg, e, e);
    let labels = (0..basis.len()).map(|i| format!("t{i}")).collect();
    let algebra = alg.subalgebra(&basis, e, labels)?;
    Ok(Truncation { e: e.to_vec(), algebra, basis })
}

/// Sum of the primitive idempotents in the given classes.
pub fn class_idempotent<F: Field>(alg: &Algebra<F>, idem: &Idempotents<F>, classes: &[usize]) -> Vector<F> {
    let mut e = alg.zero();
    for (k, v) in idem.primitive.iter().enumerate() {
        if classes.contains(&idem.class_of[k]) {
            e = add_vec(&alg.field, &e, v);
        }
    }
    e
}

impl<F: Field> Truncation<F> {
    /// The eAe-module eM.
    pub fn apply(&self, alg: &Algebra<F>, m: &Module<F>) -> Module<F> {
        let f = &alg.field;
        let mut ech = Echelon::new(f, m.dim);
        for i in 0..m.dim {
            let w = m.act(alg, &self.e, &unit(f, m.dim, i));
            if !is_zero_vec(f, &w) {
                ech.insert(w);
            }
        }
        let rows = ech.basis().to_vec();
        let piv = ech.pivots().to_vec();
        let d = rows.len();
        let action = self
            .basis
            .iter()
            .map(|b| {
                let cols: Vec<Vector<F>> =
                    rows.iter().map(|v| m.act(alg, b, v)).map(|w| piv.iter().map(|&p| w[p].clone()).collect()).collect();
                SparseMat::from_columns(f, d, &cols)
            })
            .collect();
        let key = |v: &Vector<F>| {
            let i = v.iter().position(|c| !f.is_zero(c)).unwrap();
            m.key(i)
        };
        let grading = m.grading.as_ref().map(|_| rows.iter().map(|v| key(v).0).collect());
        let x_grading = m.x_grading.as_ref().map(|_| rows.iter().map(|v| Weight(key(v).1)).collect());
        Module::new_unchecked(&self.algebra, d, action, grading, x_grading)
    }
}

/// Linear dual as a module over the opposite algebra: a acts by the
/// transpose, grades and weights are negated.
pub fn dual<F: Field>(m: &Module<F>) -> Module<F> {
    let action = m
        .action
        .iter()
        .map(|s| SparseMat { rows: s.cols, cols: s.rows, entries: s.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())).collect() })
        .collect();
    Module {
        field: m.field.clone(),
        dim: m.dim,
        action,
        grading: m.grading.as_ref().map(|g| g.iter().map(|d| -d).collect()),
        x_grading: m.x_grading.as_ref().map(|g| g.iter().map(|w| -w).collect()),
    }
}

/// An anti-automorphism of A fixing grade, given by the images of the basis.
#[derive(Clone, Debug)]
pub struct Involution<F: Field> {
    pub images: Vec<Vector<F>>,
    /// Whether it sends weight nu to -nu (as the Chevalley involution
    /// e <-> f does); otherwise weights are preserved.
    pub negates_weights: bool,
}

impl<F: Field> Involution<F> {
    pub fn validate(&self, alg: &Algebra<F>) -> Result<()> {
        let f = &alg.field;
        if self.images.len() != alg.dim() {
            return input("involution needs one image per basis element");
        }
        let apply = |v: &[F::Elem]| -> Vector<F> {
            let mut out = alg.zero();
            for (c, im) in v.iter().zip(&self.images) {
                if !f.is_zero(c) {
                    crate::linalg::axpy_vec(f, &mut out, c, im);
                }
            }
            out
        };
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                if apply(&alg.basis_product(i, j)) != alg.mul(&self.images[j], &self.images[i]) {
                    return Err(Error::Structure(format!(
                        "not an anti-automorphism at ({}, {})",
                        alg.labels[i], alg.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Dual of M as an A-module through the anti-automorphism: a acts on M* by
/// the transpose of tau(a). Z-degrees are negated; X-weights are kept when
/// tau negates weights and negated otherwise.
pub fn dual_with_involution<F: Field>(alg: &Algebra<F>, m: &Module<F>, tau: &Involution<F>) -> Module<F> {
    let f = &alg.field;
    let action = tau
        .images
        .iter()
        .map(|im| {
            let mat = m.action_matrix(im);
            SparseMat::from_dense(f, &mat.transpose())
        })
        .collect();
    let x_grading = m
        .x_grading
        .as_ref()
        .map(|g| if tau.negates_weights { g.clone() } else { g.iter().map(|w| -w).collect() });
    Module::new_unchecked(alg, m.dim, action, m.grading.as_ref().map(|g| g.iter().map(|d| -d).collect()), x_grading)
}

/// The two-sided ideal AeA in reduced echelon form.
pub fn trace_ideal<F: Field>(alg: &Algebra<F>, e: &[F::Elem]) -> Echelon<F> {
    let f = &alg.field;
    let right = peirce(alg, e, alg.one());
    let mut ideal = Echelon::new(f, alg.dim());
    for i in 0..alg.dim() {
        for v in &right {
            let w = alg.mul_basis_left(i, v);
            if !is_zero_vec(f, &w) {
                ideal.insert(w);
            }
        }
    }
    ideal
}

/// A / AeA, with the indices of the surviving basis vectors. The image of
/// x in the quotient is `trace_ideal(alg, e).reduce(x)` read at those
/// indices.
pub fn quotient_by_trace_ideal<F: Field>(alg: &Algebra<F>, e: &[F::Elem]) -> Result<(Algebra<F>, Vec<usize>)> {
    alg.quotient_by_ideal(trace_ideal(alg, e).basis())
}

/// A descending filtration F^0 = V ⊇ F^1 ⊇ ... ⊇ 0 with a chosen
/// complement basis at each level.
#[derive(Clone, Debug)]
pub struct Filtration<F: Field> {
    /// Complement of F^{n+1} in F^n.
    pub pieces: Vec<Vec<Vector<F>>>,
    levels: Vec<(Echelon<F>, usize)>,
}

impl<F: Field> Filtration<F> {
    /// From the spaces F^0, F^1, ... (each spanning set nested in the
    /// previous; the last may be nonzero and is treated as followed by 0).
    pub fn new(f: &F, ncols: usize, spaces: &[Vec<Vector<F>>]) -> Self {
        let mut pieces = Vec::new();
        let mut levels = Vec::new();
        for (n, sp) in spaces.iter().enumerate() {
            let mut ech = Echelon::tracking(f, ncols);
            let mut below = 0;
            if let Some(next) = spaces.get(n + 1) {
                for v in next {
                    if ech.insert(v.clone()) {
                        below += 1;
                    }
                }
            }
            let mut piece = Vec::new();
            for v in sp {
                if ech.insert(v.clone()) {
                    piece.push(v.clone());
                }
            }
            if piece.is_empty() && n + 1 >= spaces.len() {
                break;
            }
            pieces.push(piece);
            levels.push((ech, below));
        }
        while pieces.last().is_some_and(|p| p.is_empty()) {
            pieces.pop();
            levels.pop();
        }
        Filtration { pieces, levels }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.len()).collect()
    }

    /// Class of w in F^n / F^{n+1} in the piece basis; zero beyond the last
    /// level. Panics when w is not in F^n.
    pub fn class(&self, n: usize, w: &[F::Elem]) -> Vector<F> {
        let Some((ech, below)) = self.levels.get(n) else {
            return vec![];
        };
        let c = ech.coordinates(w).expect("vector outside the filtration level");
        c[*below..].to_vec()
    }

    /// (level, class) of a vector, the level being the largest n with w in
    /// F^n.
    pub fn level_of(&self, f: &F, w: &[F::Elem]) -> Option<(usize, Vector<F>)> {
        if is_zero_vec(f, w) {
            return None;
        }
        for n in 0..self.pieces.len() {
            let c = self.class(n, w);
            if !is_zero_vec(f, &c) {
                return Some((n, c));
            }
        }
        None
    }
}

/// Graded algebra of a multiplicative filtration (F^m F^n ⊆ F^{m+n}),
/// graded by level. X-gradings are inherited when every piece vector is
/// homogeneous.
pub fn associated_graded<F: Field>(alg: &Algebra<F>, filt: &Filtration<F>) -> Result<(Algebra<F>, Vec<Vector<F>>)> {
    let f = &alg.field;
    let mut reps = Vec::new();
    let mut grading = Vec::new();
    for (n, piece) in filt.pieces.iter().enumerate() {
        for v in piece {
            reps.push(v.clone());
            grading.push(n as i64);
        }
    }
    let offsets: Vec<usize> =
        filt.pieces.iter().scan(0, |acc, p| {
            let o = *acc;
            *acc += p.len();
            Some(o)
        }).collect();
    let labels = (0..reps.len()).map(|i| format!("g{}_{}", grading[i], i)).collect();
    let mut b = AlgebraBuilder::new(f, labels);
    for (i, x) in reps.iter().enumerate() {
        for (j, y) in reps.iter().enumerate() {
            let lvl = (grading[i] + grading[j]) as usize;
            if lvl >= filt.pieces.len() {
                continue;
            }
            let w = alg.mul(x, y);
            let c = filt.class(lvl, &w);
            for (k, v) in c.iter().enumerate() {
                if !f.is_zero(v) {
                    b.add(i, j, offsets[lvl] + k, v.clone());
                }
            }
        }
    }
    let one = filt.class(0, alg.one());
    let mut unit_vec = vec![f.zero(); reps.len()];
    unit_vec[..one.len()].clone_from_slice(&one);
    b.identity(unit_vec);
    b.grading(grading);
    if alg.x_grading.is_some() {
        let ws: Option<Vec<Weight>> = reps.iter().map(|v| alg.key_of(v).map(|k| Weight(k.1))).collect();
        if let Some(ws) = ws {
            b.x_grading(ws);
        }
    }
    Ok((b.build()?, reps))
}

/// gr A for the radical filtration.
pub fn radically_graded<F: Field>(alg: &Algebra<F>) -> Result<(Algebra<F>, Filtration<F>)> {
    let series = radical_series(alg);
    let filt = Filtration::new(&alg.field, alg.dim(), &series);
    let (gr, _) = associated_graded(alg, &filt)?;
    Ok((gr, filt))
}

/// gr M over gr A for compatible filtrations (F^m G^n ⊆ G^{m+n}).
pub fn associated_graded_module<F: Field>(
    alg: &Algebra<F>,
    gr: &Algebra<F>,
    alg_filt: &Filtration<F>,
    m: &Module<F>,
    mod_filt: &Filtration<F>,
    shift: i64,
) -> Result<Module<F>> {
    let f = &alg.field;
    let mut reps = Vec::new();
    let mut level = Vec::new();
    for (n, piece) in mod_filt.pieces.iter().enumerate() {
        for v in piece {
            reps.push(v.clone());
            level.push(n);
        }
    }
    let offsets: Vec<usize> = mod_filt
        .pieces
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.len();
            Some(o)
        })
        .collect();
    let d = reps.len();
    let mut action = Vec::with_capacity(gr.dim());
    let mut gi = 0;
    for (la, piece) in alg_filt.pieces.iter().enumerate() {
        for x in piece {
            let mut entries = Vec::new();
            for (c, v) in reps.iter().enumerate() {
                let lvl = la + level[c];
                if lvl >= mod_filt.pieces.len() {
                    continue;
                }
                let w = m.act(alg, x, v);
                for (k, val) in mod_filt.class(lvl, &w).into_iter().enumerate() {
                    if !f.is_zero(&val) {
                        entries.push((offsets[lvl] + k, c, val));
                    }
                }
            }
            action.push(SparseMat { rows: d, cols: d, entries });
            gi += 1;
        }
    }
    debug_assert_eq!(gi, gr.dim());
    let grading = Some(level.iter().map(|&n| n as i64 + shift).collect());
    let x_grading = if gr.x_grading.is_some() && m.x_grading.is_some() {
        let ws: Option<Vec<Weight>> = reps.iter().map(|v| m.key_of(v).map(|k| Weight(k.1))).collect();
        ws
    } else {
        None
    };
    Module::new(gr, d, action, grading, x_grading)
}

/// Radical filtration rad^n M of a module.
pub fn radical_filtration_of_module<F: Field>(alg: &Algebra<F>, rad: &[Vector<F>], m: &Module<F>) -> Vec<Vec<Vector<F>>> {
    let f = &alg.field;
    let mut levels = vec![(0..m.dim).map(|i| unit(f, m.dim, i)).collect::<Vec<_>>()];
    loop {
        let cur = levels.last().unwrap();
        if cur.is_empty() {
            break;
        }
        let mut ech = Echelon::new(f, m.dim);
        for r in rad {
            for v in cur {
                let w = m.act(alg, r, v);
                if !is_zero_vec(f, &w) {
                    ech.insert(w);
                }
            }
        }
        levels.push(ech.basis().to_vec());
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdalg::module::isomorphic;
    use crate::fdalg::samples::{path_a2, poly_quotient, truncated_poly};
    use crate::fdalg::structure::primitive_idempotents;
    use crate::field::Fp;

    #[test]
    fn truncation_examples() {
        let f = Fp::new(5).unwrap();
        let a = path_a2(&f).unwrap();
        let t = idempotent_truncate(&a, &a.basis(1)).unwrap();
        assert_eq!(t.algebra.dim(), 1);
        let full = idempotent_truncate(&a, a.one()).unwrap();
        assert_eq!(full.algebra.dim(), 3);
        let reg = Module::regular(&a);
        assert_eq!(full.apply(&a, &reg).dim, 3);
        // e2 A = span{e2, a}
        assert_eq!(t.apply(&a, &reg).dim, 2);
        assert!(idempotent_truncate(&a, &a.basis(2)).is_err());
    }

    #[test]
    fn duals() {
        let f = Fp::new(5).unwrap();
        let a = truncated_poly(&f, 3, true).unwrap();
        let reg = Module::regular(&a);
        let dd = dual(&dual(&reg));
        assert!(isomorphic(&a, &reg, &dd));
        // commutative: identity is an anti-automorphism
        let tau = Involution { images: (0..3).map(|i| a.basis(i)).collect(), negates_weights: false };
        tau.validate(&a).unwrap();
        let d = dual_with_involution(&a, &reg, &tau);
        // k[x]/(x^3) is self-injective: the dual of A is A<-2>
        assert!(isomorphic(&a, &d, &reg.shift(-2, None)));
    }

    #[test]
    fn trace_ideal_quotient_and_graded() {
        let f = Fp::new(5).unwrap();
        let a = path_a2(&f).unwrap();
        let idem = primitive_idempotents(&a).unwrap();
        let e = class_idempotent(&a, &idem, &[1]);
        let (q, _) = quotient_by_trace_ideal(&a, &e).unwrap();
        assert_eq!(q.dim(), 1);
        // x^2 - 5x over F_5 is x^2: the radical grading is (1, 1)
        let b = poly_quotient(&f, &[0, 0]).unwrap();
        let (gr, filt) = radically_graded(&b).unwrap();
        assert_eq!(filt.dims(), vec![1, 1]);
        assert_eq!(gr.grading, Some(vec![0, 1]));
        let reg = Module::regular(&b);
        let rad = crate::fdalg::structure::radical(&b);
        let mf = Filtration::new(&f, 2, &radical_filtration_of_module(&b, &rad, &reg));
        let grm = associated_graded_module(&b, &gr, &filt, &reg, &mf, 0).unwrap();
        assert_eq!(grm.graded_dims().into_values().collect::<Vec<_>>(), vec![1, 1]);
    }
}
