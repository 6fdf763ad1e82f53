//! Radical, primitive idempotents, blocks and the basic algebra.

use std::collections::{BTreeMap, VecDeque};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fdalg::algebra::{neg_key, Algebra, Key};
use crate::field::Field;
use crate::linalg::{add_vec, axpy_vec, is_zero_vec, kernel, scale_vec, sub_vec, zeros, Echelon, Vector};
use crate::poly::{crt_idempotents_general, degree, linear_power, root_factorization, Poly};

/// Jacobson radical as a homogeneous basis. Over the rationals this is the
/// kernel of the trace form; over F_p the iterated trace kernels of
/// Cohen, Ivanyos and Wales (traces of p^i-th powers of integer lifts).
pub fn radical<F: Field>(alg: &Algebra<F>) -> Vec<Vector<F>> {
    if alg.field.characteristic() == 0 {
        radical_trace_form(alg)
    } else {
        radical_modular(alg)
    }
}

fn radical_trace_form<F: Field>(alg: &Algebra<F>) -> Vec<Vector<F>> {
    let f = &alg.field;
    let t = alg.left_traces();
    let keys = alg.keys();
    let mut out = Vec::new();
    for (key, idx) in &keys {
        let Some(dual) = keys.get(&neg_key(key)) else {
            out.extend(idx.iter().map(|&i| alg.basis(i)));
            continue;
        };
        // rows: y in the dual block; columns: x in this block
        let rows: Vec<Vector<F>> = dual
            .iter()
            .map(|&j| {
                idx.iter()
                    .map(|&i| {
                        let mut s = f.zero();
                        for (k, c) in alg.product(i, j) {
                            f.axpy(&mut s, c, &t[*k]);
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        for sol in kernel(f, &rows, idx.len()) {
            out.push(embed(f, alg.dim(), idx, &sol));
        }
    }
    out
}

fn embed<F: Field>(f: &F, n: usize, idx: &[usize], coeffs: &[F::Elem]) -> Vector<F> {
    let mut v = zeros(f, n);
    for (&i, c) in idx.iter().zip(coeffs) {
        v[i] = c.clone();
    }
    v
}

fn mod_mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], m: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut out = vec![vec![0u64; n]; n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i][k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = ((out[i][j] as u128 + x as u128 * b[k][j] as u128) % m as u128) as u64;
            }
        }
    }
    out
}

fn trace_of_power(a: Vec<Vec<u64>>, mut e: u64, m: u64) -> u64 {
    let n = a.len();
    let mut acc: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    let mut base = a;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mat_mul(&acc, &base, m);
        }
        e >>= 1;
        if e > 0 {
            base = mod_mat_mul(&base, &base, m);
        }
    }
    (0..n).fold(0, |s, i| (s + acc[i][i]) % m)
}

fn radical_modular<F: Field>(alg: &Algebra<F>) -> Vec<Vector<F>> {
    let f = &alg.field;
    let p = f.characteristic();
    let n = alg.dim() as u64;
    let keys = alg.keys();
    let zero = alg.zero_key();
    // I_{-1} = A, kept as a homogeneous basis per key
    let mut ideal: BTreeMap<Key, Vec<Vector<F>>> =
        keys.iter().map(|(k, idx)| (k.clone(), idx.iter().map(|&i| alg.basis(i)).collect())).collect();
    let mut pi = 1u64;
    while pi <= n {
        let modulus = pi * p;
        // g_i on the degree-zero part; homogeneous elements of other keys act
        // nilpotently and have g_i = 0
        let zero_basis = ideal.get(&zero).cloned().unwrap_or_default();
        let mut zero_ech = Echelon::tracking(f, alg.dim());
        let mut gvals = Vec::new();
        for v in &zero_basis {
            zero_ech.insert(v.clone());
            let mut g = 0u64;
            for idx in keys.values() {
                let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(a, &i)| (i, a)).collect();
                let mut block = vec![vec![0u64; idx.len()]; idx.len()];
                for (c, &j) in idx.iter().enumerate() {
                    let w = alg.mul_basis_right(v, j);
                    for (k, x) in w.iter().enumerate() {
                        if !f.is_zero(x) {
                            block[pos[&k]][c] = f.residue(x).expect("prime field");
                        }
                    }
                }
                g = (g + trace_of_power(block, pi, modulus)) % modulus;
            }
            debug_assert_eq!(g % pi, 0);
            gvals.push(f.from_i64((g / pi) as i64));
        }
        let g = |w: &Vector<F>| -> F::Elem {
            let c = zero_ech.coordinates(w).expect("product left the ideal");
            let mut s = f.zero();
            for (a, b) in c.iter().zip(&gvals) {
                f.axpy(&mut s, a, b);
            }
            s
        };
        let mut next = BTreeMap::new();
        for (key, basis) in &ideal {
            let Some(dual) = keys.get(&neg_key(key)) else {
                next.insert(key.clone(), basis.clone());
                continue;
            };
            let rows: Vec<Vector<F>> =
                dual.iter().map(|&j| basis.iter().map(|v| g(&alg.mul_basis_right(v, j))).collect()).collect();
            let sols = kernel(f, &rows, basis.len());
            let vs: Vec<Vector<F>> = sols
                .iter()
                .map(|s| {
                    let mut w = alg.zero();
                    for (c, v) in s.iter().zip(basis) {
                        axpy_vec(f, &mut w, c, v);
                    }
                    w
                })
                .collect();
            if !vs.is_empty() {
                next.insert(key.clone(), Echelon::from_vectors(f, alg.dim(), vs).basis().to_vec());
            }
        }
        ideal = next;
        pi *= p;
    }
    ideal.into_values().flatten().collect()
}

/// rad^0 = A, rad^1, rad^2, ... down to (and including) 0, each as a
/// homogeneous echelon basis.
pub fn radical_series<F: Field>(alg: &Algebra<F>) -> Vec<Vec<Vector<F>>> {
    let f = &alg.field;
    let rad = Echelon::from_vectors(f, alg.dim(), radical(alg)).basis().to_vec();
    let mut series = vec![(0..alg.dim()).map(|i| alg.basis(i)).collect::<Vec<_>>()];
    let mut cur = rad.clone();
    loop {
        let done = cur.is_empty();
        series.push(cur.clone());
        if done {
            break;
        }
        cur = alg.span_products(&cur, &rad).basis().to_vec();
    }
    series
}

/// Basis of x A y for idempotents x, y.
pub fn peirce<F: Field>(alg: &Algebra<F>, x: &[F::Elem], y: &[F::Elem]) -> Vec<Vector<F>> {
    let f = &alg.field;
    let mut ech = Echelon::new(f, alg.dim());
    for j in 0..alg.dim() {
        let w = alg.mul(x, &alg.mul_basis_left(j, y));
        if !is_zero_vec(f, &w) {
            ech.insert(w);
        }
    }
    ech.basis().to_vec()
}

/// Splits the idempotent e of a semisimple algebra by a polynomial in some
/// element of eAe. Fails when no splitting element turns up, which for a
/// split semisimple algebra only happens if e is already primitive.
fn split_once<F: Field>(a: &Algebra<F>, e: &[F::Elem], cands: &[Vector<F>], rng: &mut ChaCha8Rng) -> Result<Vec<Vector<F>>> {
    let f = &a.field;
    let mut queue: VecDeque<Vector<F>> = cands.iter().cloned().collect();
    let mut randoms = 0;
    let mut tried = 0;
    let mut irreducible = false;
    loop {
        let x = match queue.pop_front() {
            Some(x) => x,
            None if randoms < 64 => {
                randoms += 1;
                let mut x = a.zero();
                for c in cands {
                    axpy_vec(f, &mut x, &f.random(rng), c);
                }
                x
            }
            None => break,
        };
        tried += 1;
        if tried > 4000 {
            break;
        }
        let mp = a.min_poly(&x, e);
        let (roots, cof) = root_factorization(f, &mp);
        let mut moduli: Vec<Poly<F>> = roots.iter().map(|(c, m)| linear_power(f, c, *m)).collect();
        if degree(f, &cof).unwrap_or(0) > 0 {
            irreducible = true;
            moduli.push(cof);
        }
        if moduli.len() >= 2 {
            let polys = crt_idempotents_general(f, &moduli);
            return Ok(polys.iter().map(|q| a.eval_poly(q, &x, e)).collect());
        }
        if roots.len() == 1 && roots[0].1 > 1 && queue.len() < 4000 {
            // x - c e is nilpotent and nonzero
            let y = sub_vec(f, &x, &scale_vec(f, &roots[0].0, e));
            for c in cands {
                queue.push_back(a.mul(&y, c));
                queue.push_back(a.mul(c, &y));
            }
        }
    }
    Err(Error::NonSplit(if irreducible {
        "an endomorphism ring has an element without eigenvalues".into()
    } else {
        "no splitting element found".into()
    }))
}

/// Complete set of primitive orthogonal idempotents of a semisimple algebra,
/// each with eAe one-dimensional. Degree-zero idempotents are preferred.
fn semisimple_idempotents<F: Field>(a: &Algebra<F>) -> Result<Vec<Vector<F>>> {
    let f = &a.field;
    let zero = a.zero_key();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1de_0707);
    let mut todo = vec![a.one().clone()];
    let mut done = Vec::new();
    while let Some(e) = todo.pop() {
        let corner = peirce(a, &e, &e);
        if corner.len() == 1 {
            done.push(e);
            continue;
        }
        let homogeneous = a.key_of(&e).is_some_and(|k| k == zero);
        let level: Vec<Vector<F>> =
            corner.iter().filter(|v| homogeneous && a.key_of(v) == Some(zero.clone())).cloned().collect();
        let parts = if level.len() > 1 {
            split_once(a, &e, &level, &mut rng).or_else(|_| split_once(a, &e, &corner, &mut rng))?
        } else {
            split_once(a, &e, &corner, &mut rng)?
        };
        todo.extend(parts.into_iter().filter(|v| !is_zero_vec(f, v)));
    }
    Ok(done)
}

/// Primitive idempotents of A: a complete orthogonal set, grouped into
/// isomorphism classes of the projectives A e.
#[derive(Clone, Debug)]
pub struct Idempotents<F: Field> {
    pub primitive: Vec<Vector<F>>,
    pub class_of: Vec<usize>,
    /// One idempotent index per class.
    pub representatives: Vec<usize>,
    pub radical: Vec<Vector<F>>,
}

impl<F: Field> Idempotents<F> {
    pub fn classes(&self) -> usize {
        self.representatives.len()
    }

    pub fn representative(&self, class: usize) -> &Vector<F> {
        &self.primitive[self.representatives[class]]
    }

    /// Number of primitive idempotents per class, which is the dimension of
    /// the corresponding simple module.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.classes()];
        for &c in &self.class_of {
            m[c] += 1;
        }
        m
    }
}

/// Primitive idempotents of A/rad lifted to A by e <- 3e^2 - 2e^3, each
/// lifted inside the corner orthogonal to the previous ones. Fails with
/// NonSplit unless every simple module has one-dimensional endomorphisms.
pub fn primitive_idempotents<F: Field>(alg: &Algebra<F>) -> Result<Idempotents<F>> {
    let f = &alg.field;
    let rad = radical(alg);
    let (bar, comp) = if rad.is_empty() {
        (alg.clone(), (0..alg.dim()).collect())
    } else {
        alg.quotient_by_ideal(&rad)?
    };
    let mut bars = semisimple_idempotents(&bar)?;
    // classes: e_i Abar e_j != 0
    let nb = bars.len();
    let mut class_of = vec![usize::MAX; nb];
    let mut reps = Vec::new();
    // deterministic order: by support, lowest index first
    bars.sort_by_key(|v| v.iter().position(|c| !f.is_zero(c)));
    for i in 0..nb {
        if class_of[i] != usize::MAX {
            continue;
        }
        class_of[i] = reps.len();
        for j in i + 1..nb {
            if class_of[j] == usize::MAX && !peirce(&bar, &bars[i], &bars[j]).is_empty() {
                class_of[j] = reps.len();
            }
        }
        reps.push(i);
    }
    let mut primitive = Vec::with_capacity(nb);
    let mut sum = alg.zero();
    for (i, eb) in bars.iter().enumerate() {
        let e = if i + 1 == nb {
            sub_vec(f, alg.one(), &sum)
        } else {
            let c = sub_vec(f, alg.one(), &sum);
            let x = embed(f, alg.dim(), &comp, eb);
            lift_idempotent(alg, alg.mul(&c, &alg.mul(&x, &c)))?
        };
        sum = add_vec(f, &sum, &e);
        primitive.push(e);
    }
    Ok(Idempotents { primitive, class_of, representatives: reps, radical: rad })
}

fn lift_idempotent<F: Field>(alg: &Algebra<F>, mut x: Vector<F>) -> Result<Vector<F>> {
    let f = &alg.field;
    let (two, three) = (f.from_i64(2), f.from_i64(3));
    for _ in 0..64 {
        let x2 = alg.mul(&x, &x);
        if x2 == x {
            return Ok(x);
        }
        let x3 = alg.mul(&x2, &x);
        x = sub_vec(f, &scale_vec(f, &three, &x2), &scale_vec(f, &two, &x3));
    }
    Err(Error::Structure("idempotent lifting did not converge".into()))
}

/// Center of A, as a homogeneous basis.
pub fn center<F: Field>(alg: &Algebra<F>) -> Vec<Vector<F>> {
    let f = &alg.field;
    let mut out = Vec::new();
    for idx in alg.keys().values() {
        let mut rows = Vec::new();
        for &g in alg.generators() {
            let cols: Vec<Vector<F>> =
                idx.iter().map(|&i| sub_vec(f, &alg.basis_product(i, g), &alg.basis_product(g, i))).collect();
            for l in 0..alg.dim() {
                if cols.iter().any(|c| !f.is_zero(&c[l])) {
                    rows.push(cols.iter().map(|c| c[l].clone()).collect());
                }
            }
        }
        for sol in kernel(f, &rows, idx.len()) {
            out.push(embed(f, alg.dim(), idx, &sol));
        }
    }
    out
}

/// Cartan matrix: entry (i, j) is dim e_i A e_j = [A e_j : L_i].
pub fn cartan_matrix<F: Field>(alg: &Algebra<F>, idem: &Idempotents<F>) -> Vec<Vec<usize>> {
    (0..idem.classes())
        .map(|i| (0..idem.classes()).map(|j| peirce(alg, idem.representative(i), idem.representative(j)).len()).collect())
        .collect()
}

#[derive(Clone, Debug)]
pub struct Arrow<F: Field> {
    pub source: usize,
    pub target: usize,
    /// Element of e_target rad e_source in the basic algebra.
    pub element: Vector<F>,
}

/// Linear combination of paths; a path lists arrow indices in the order
/// they are traversed.
pub type Relation<F> = Vec<(Vec<usize>, <F as Field>::Elem)>;

#[derive(Clone, Debug)]
pub struct BasicAlgebra<F: Field> {
    pub algebra: Algebra<F>,
    /// Vertex idempotents in the basis of `algebra`.
    pub vertices: Vec<Vector<F>>,
    pub arrows: Vec<Arrow<F>>,
    /// None when the path enumeration exceeded its cap.
    pub relations: Option<Vec<Relation<F>>>,
}

#[derive(Clone, Debug)]
pub struct BlockDecomposition<F: Field> {
    pub idempotents: Idempotents<F>,
    /// Central primitive idempotents.
    pub central: Vec<Vector<F>>,
    /// Simple classes in each block.
    pub block_classes: Vec<Vec<usize>>,
    pub basic: BasicAlgebra<F>,
    /// Dimension of each simple module.
    pub multiplicities: Vec<usize>,
}

const PATH_CAP: usize = 5000;

/// Blocks from the linkage of primitive idempotents, and the basic algebra
/// fAf for f the sum of one idempotent per class.
pub fn blocks_and_basic<F: Field>(alg: &Algebra<F>) -> Result<BlockDecomposition<F>> {
    let f = &alg.field;
    let idem = primitive_idempotents(alg)?;
    let nc = idem.classes();
    let mut parent: Vec<usize> = (0..nc).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    let mut pieces: BTreeMap<(usize, usize), Vec<Vector<F>>> = BTreeMap::new();
    for i in 0..nc {
        for j in 0..nc {
            let piece = peirce(alg, idem.representative(i), idem.representative(j));
            if !piece.is_empty() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
            pieces.insert((i, j), piece);
        }
    }
    let mut block_of_root = BTreeMap::new();
    let mut block_classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..nc {
        let r = find(&mut parent, i);
        let b = *block_of_root.entry(r).or_insert_with(|| {
            block_classes.push(Vec::new());
            block_classes.len() - 1
        });
        block_classes[b].push(i);
    }
    let central: Vec<Vector<F>> = block_classes
        .iter()
        .map(|cls| {
            let mut c = alg.zero();
            for (k, e) in idem.primitive.iter().enumerate() {
                if cls.contains(&idem.class_of[k]) {
                    c = add_vec(f, &c, e);
                }
            }
            c
        })
        .collect();
    for c in &central {
        for &g in alg.generators() {
            let b = alg.basis(g);
            if alg.mul(c, &b) != alg.mul(&b, c) {
                return Err(Error::Structure("block idempotent is not central".into()));
            }
        }
    }
    let basic = basic_algebra(alg, &idem, &pieces)?;
    let multiplicities = idem.multiplicities();
    Ok(BlockDecomposition { idempotents: idem, central, block_classes, basic, multiplicities })
}

fn basic_algebra<F: Field>(
    alg: &Algebra<F>,
    idem: &Idempotents<F>,
    pieces: &BTreeMap<(usize, usize), Vec<Vector<F>>>,
) -> Result<BasicAlgebra<F>> {
    let f = &alg.field;
    let nc = idem.classes();
    let mut fsum = alg.zero();
    for i in 0..nc {
        fsum = add_vec(f, &fsum, idem.representative(i));
    }
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for ((i, j), piece) in pieces {
        for (k, v) in piece.iter().enumerate() {
            basis.push(v.clone());
            labels.push(format!("e{}Ae{}[{}]", i + 1, j + 1, k));
        }
    }
    let b = alg.subalgebra(&basis, &fsum, labels)?;
    let mut ech = Echelon::tracking(f, alg.dim());
    for v in &basis {
        ech.insert(v.clone());
    }
    let vertices: Vec<Vector<F>> = (0..nc)
        .map(|i| ech.coordinates(idem.representative(i)).expect("idempotent in fAf"))
        .collect();
    let rad = radical(&b);
    let rad2 = b.span_products(&rad, &rad);
    let mut arrows = Vec::new();
    for s in 0..nc {
        for t in 0..nc {
            let mut span = rad2.clone();
            for r in &rad {
                let w = b.mul(&vertices[t], &b.mul(r, &vertices[s]));
                if !is_zero_vec(f, &w) && span.insert(w.clone()) {
                    arrows.push(Arrow { source: s, target: t, element: w });
                }
            }
        }
    }
    let relations = path_relations(&b, &arrows);
    Ok(BasicAlgebra { algebra: b, vertices, arrows, relations })
}

fn path_relations<F: Field>(b: &Algebra<F>, arrows: &[Arrow<F>]) -> Option<Vec<Relation<F>>> {
    let f = &b.field;
    // paths of length >= 2 whose proper prefixes are nonzero
    let mut frontier: Vec<(Vec<usize>, Vector<F>)> =
        arrows.iter().enumerate().map(|(i, a)| (vec![i], a.element.clone())).collect();
    let mut long: Vec<(Vec<usize>, Vector<F>)> = Vec::new();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (p, v) in &frontier {
            let end = arrows[*p.last().unwrap()].target;
            for (i, a) in arrows.iter().enumerate() {
                if a.source != end {
                    continue;
                }
                let mut q = p.clone();
                q.push(i);
                let w = b.mul(&a.element, v);
                if !is_zero_vec(f, &w) {
                    next.push((q.clone(), w.clone()));
                }
                long.push((q, w));
                if long.len() > PATH_CAP {
                    return None;
                }
            }
        }
        frontier = next;
    }
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (k, (p, _)) in long.iter().enumerate() {
        let s = arrows[p[0]].source;
        let t = arrows[*p.last().unwrap()].target;
        groups.entry((s, t)).or_default().push(k);
    }
    let mut out = Vec::new();
    for idx in groups.values() {
        // columns are path values; kernel gives the relations
        let rows: Vec<Vector<F>> =
            (0..b.dim()).map(|r| idx.iter().map(|&k| long[k].1[r].clone()).collect()).collect();
        for sol in kernel(f, &rows, idx.len()) {
            let rel: Relation<F> = idx
                .iter()
                .zip(&sol)
                .filter(|(_, c)| !f.is_zero(c))
                .map(|(&k, c)| (long[k].0.clone(), c.clone()))
                .collect();
            out.push(rel);
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdalg::samples::{matrix_algebra, path_a2, poly_quotient, truncated_poly};
    use crate::field::{Fp, Rationals};

    fn dims<T>(s: &[Vec<T>]) -> Vec<usize> {
        s.iter().map(|b| b.len()).collect()
    }

    #[test]
    fn radical_series_examples() {
        let f = Fp::new(5).unwrap();
        assert_eq!(dims(&radical_series(&truncated_poly(&f, 3, true).unwrap())), vec![3, 2, 1, 0]);
        assert_eq!(dims(&radical_series(&truncated_poly(&f, 3, false).unwrap())), vec![3, 2, 1, 0]);
        assert_eq!(dims(&radical_series(&matrix_algebra(&f, 2).unwrap())), vec![4, 0]);
        assert_eq!(dims(&radical_series(&path_a2(&f).unwrap())), vec![3, 1, 0]);
        let q = Rationals;
        assert_eq!(dims(&radical_series(&truncated_poly(&q, 4, false).unwrap())), vec![4, 3, 2, 1, 0]);
    }

    #[test]
    fn modular_radical_needs_higher_traces() {
        // F_2[x]/(x^2 - 1) = F_2[x]/(x+1)^2: the trace form vanishes
        // identically but the radical is one-dimensional
        let f = Fp::new(2).unwrap();
        let a = poly_quotient(&f, &[f.from_i64(-1), 0]).unwrap();
        assert_eq!(radical(&a).len(), 1);
        // F_3[x]/(x^3): ungraded, all traces of x^k vanish
        let f3 = Fp::new(3).unwrap();
        let b = truncated_poly(&f3, 3, false).unwrap();
        assert_eq!(radical(&b).len(), 2);
        // group algebra F_3[Z/3] = F_3[x]/(x^3 - 1)
        let c = poly_quotient(&f3, &[f3.from_i64(-1), 0, 0]).unwrap();
        assert_eq!(radical(&c).len(), 2);
    }

    #[test]
    fn idempotents_and_blocks() {
        let f = Fp::new(5).unwrap();
        // x^2 - x
        let a = poly_quotient(&f, &[0, f.from_i64(-1)]).unwrap();
        let d = blocks_and_basic(&a).unwrap();
        assert_eq!(d.central.len(), 2);
        assert_eq!(d.basic.algebra.dim(), 2);
        let m = matrix_algebra(&f, 2).unwrap();
        let d = blocks_and_basic(&m).unwrap();
        assert_eq!(d.central.len(), 1);
        assert_eq!(d.multiplicities, vec![2]);
        assert_eq!(d.basic.algebra.dim(), 1);
        let p = path_a2(&f).unwrap();
        let d = blocks_and_basic(&p).unwrap();
        assert_eq!(d.central.len(), 1);
        assert_eq!(d.basic.arrows.len(), 1);
        assert_eq!(d.basic.relations.as_ref().unwrap().len(), 0);
        let t = truncated_poly(&f, 3, true).unwrap();
        let d = blocks_and_basic(&t).unwrap();
        assert_eq!(d.basic.arrows.len(), 1);
        // x^3 = 0 is the only relation
        assert_eq!(d.basic.relations.as_ref().unwrap().len(), 1);
    }

    #[test]
    fn non_split_is_reported() {
        // F_5[x]/(x^2 - 2) is a field extension
        let f = Fp::new(5).unwrap();
        let a = poly_quotient(&f, &[f.from_i64(-2), 0]).unwrap();
        assert!(matches!(primitive_idempotents(&a), Err(Error::NonSplit(_))));
    }

    #[test]
    fn matrix_idempotents_over_rationals() {
        let a = matrix_algebra(&Rationals, 3).unwrap();
        let idem = primitive_idempotents(&a).unwrap();
        assert_eq!(idem.primitive.len(), 3);
        assert_eq!(idem.classes(), 1);
        for (i, e) in idem.primitive.iter().enumerate() {
            assert!(a.is_idempotent(e));
            for (j, g) in idem.primitive.iter().enumerate() {
                if i != j {
                    assert!(is_zero_vec(&Rationals, &a.mul(e, g)));
                }
            }
        }
        assert_eq!(center(&a).len(), 1);
    }
}
