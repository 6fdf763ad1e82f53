//! Small reference algebras used by tests, examples and the CLI.

use crate::error::Result;
use crate::field::Field;
use crate::fdalg::algebra::{Algebra, AlgebraBuilder};

/// k[x]/(x^n), optionally graded with x in degree 1.
pub fn truncated_poly<F: Field>(f: &F, n: usize, graded: bool) -> Result<Algebra<F>> {
    let labels = (0..n).map(|i| format!("x^{i}")).collect();
    let mut b = AlgebraBuilder::new(f, labels);
    for i in 0..n {
        for j in 0..n - i {
            b.add(i, j, i + j, f.one());
        }
    }
    if graded {
        b.grading((0..n as i64).collect());
    }
    b.build()
}

/// k[x]/(m(x)) for a monic polynomial m given lowest degree first
/// (without the leading 1).
pub fn poly_quotient<F: Field>(f: &F, lower: &[F::Elem]) -> Result<Algebra<F>> {
    let n = lower.len();
    let labels = (0..n).map(|i| format!("x^{i}")).collect();
    // x^n = -sum lower_i x^i
    let reduce = |deg: usize| -> Vec<F::Elem> {
        let mut v = vec![f.zero(); 2 * n];
        v[deg] = f.one();
        for d in (n..2 * n).rev() {
            let c = v[d].clone();
            if f.is_zero(&c) {
                continue;
            }
            v[d] = f.zero();
            for (i, l) in lower.iter().enumerate() {
                let t = f.mul(&c, l);
                v[d - n + i] = f.sub(&v[d - n + i], &t);
            }
        }
        v.truncate(n);
        v
    };
    let mut b = AlgebraBuilder::new(f, labels);
    for i in 0..n {
        for j in 0..n {
            b.set_product(i, j, &reduce(i + j));
        }
    }
    b.build()
}

/// Path algebra of the quiver 1 -> 2, basis e1, e2, a with a = e2 a e1, so
/// P(1) = span{e1, a} has radical L(2). Radical grading: a in degree 1.
pub fn path_a2<F: Field>(f: &F) -> Result<Algebra<F>> {
    let mut b = AlgebraBuilder::new(f, vec!["e1".into(), "e2".into(), "a".into()]);
    let one = f.one();
    b.add(0, 0, 0, one.clone())
        .add(1, 1, 1, one.clone())
        .add(1, 2, 2, one.clone())
        .add(2, 0, 2, one);
    b.grading(vec![0, 0, 1]);
    b.build()
}

/// Full matrix algebra M_n(k), basis E_ij at index i*n + j, trivial grading.
pub fn matrix_algebra<F: Field>(f: &F, n: usize) -> Result<Algebra<F>> {
    let mut labels = Vec::new();
    for i in 0..n {
        for j in 0..n {
            labels.push(format!("E{}{}", i + 1, j + 1));
        }
    }
    let mut b = AlgebraBuilder::new(f, labels);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                b.add(i * n + j, j * n + k, i * n + k, f.one());
            }
        }
    }
    b.grading(vec![0; n * n]);
    b.build()
}

/// k^n with orthogonal idempotent basis, in degree 0.
pub fn split_semisimple<F: Field>(f: &F, n: usize) -> Result<Algebra<F>> {
    let mut b = AlgebraBuilder::new(f, (0..n).map(|i| format!("e{}", i + 1)).collect());
    for i in 0..n {
        b.add(i, i, i, f.one());
    }
    b.grading(vec![0; n]);
    b.build()
}
