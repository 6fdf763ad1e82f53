//! Univariate polynomials over a field, coefficients lowest degree first.

use crate::field::Field;

pub type Poly<F> = Vec<<F as Field>::Elem>;

pub fn trim<F: Field>(f: &F, p: &mut Poly<F>) {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
}

pub fn degree<F: Field>(f: &F, p: &[F::Elem]) -> Option<usize> {
    p.iter().rposition(|c| !f.is_zero(c))
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            f.axpy(&mut out[i + j], x, y);
        }
    }
    trim(f, &mut out);
    out
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| f.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| f.zero());
        out.push(f.sub(&x, &y));
    }
    trim(f, &mut out);
    out
}

/// (quotient, remainder); panics on division by zero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F>, Poly<F>) {
    let db = degree(f, b).expect("division by zero polynomial");
    let mut r: Poly<F> = a.to_vec();
    trim(f, &mut r);
    if r.len() <= db {
        return (vec![], r);
    }
    let lead_inv = f.inv(&b[db]);
    let mut q = vec![f.zero(); r.len() - db];
    while let Some(dr) = degree(f, &r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            let t = f.mul(&c, bc);
            r[i + shift] = f.sub(&r[i + shift], &t);
        }
        q[shift] = c;
        trim(f, &mut r);
    }
    trim(f, &mut q);
    (q, r)
}

/// (g, s, t) with s a + t b = g, g monic.
pub fn ext_gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F>, Poly<F>, Poly<F>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(f, &mut r0);
    trim(f, &mut r1);
    let (mut s0, mut s1) = (vec![f.one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![f.one()]);
    while degree(f, &r1).is_some() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if let Some(d) = degree(f, &r0) {
        let inv = f.inv(&r0[d]);
        let sc = |p: &mut Poly<F>| {
            for c in p.iter_mut() {
                *c = f.mul(c, &inv);
            }
        };
        sc(&mut r0);
        sc(&mut s0);
        sc(&mut t0);
    }
    (r0, s0, t0)
}

/// (t - c)^m
pub fn linear_power<F: Field>(f: &F, c: &F::Elem, m: usize) -> Poly<F> {
    let lin = vec![f.neg(c), f.one()];
    let mut out = vec![f.one()];
    for _ in 0..m {
        out = mul(f, &out, &lin);
    }
    out
}

/// Splits a polynomial into (root, multiplicity) pairs over the field.
/// Returns the cofactor with no roots in the field as the second component.
pub fn root_factorization<F: Field>(f: &F, p: &[F::Elem]) -> (Vec<(F::Elem, usize)>, Poly<F>) {
    let mut rest = p.to_vec();
    trim(f, &mut rest);
    let roots = f.roots(&rest);
    let mut out = Vec::new();
    for c in roots {
        let lin = vec![f.neg(&c), f.one()];
        let mut m = 0;
        loop {
            let (q, r) = divrem(f, &rest, &lin);
            if degree(f, &r).is_some() {
                break;
            }
            rest = q;
            m += 1;
        }
        out.push((c, m));
    }
    (out, rest)
}

/// Polynomials e_i with e_i = 1 mod m_i and e_i = 0 mod m_j (j != i), for
/// pairwise coprime moduli m_i; reduced modulo the product.
pub fn crt_idempotents_general<F: Field>(f: &F, moduli: &[Poly<F>]) -> Vec<Poly<F>> {
    let mut all = vec![f.one()];
    for m in moduli {
        all = mul(f, &all, m);
    }
    let mut out = Vec::new();
    for (i, mi) in moduli.iter().enumerate() {
        let mut q = vec![f.one()];
        for (j, mj) in moduli.iter().enumerate() {
            if j != i {
                q = mul(f, &q, mj);
            }
        }
        let (g, s, _) = ext_gcd(f, &q, mi);
        debug_assert_eq!(g, vec![f.one()], "moduli not coprime");
        out.push(divrem(f, &mul(f, &s, &q), &all).1);
    }
    out
}

/// Idempotent polynomials for the primary factors (t - c)^m.
pub fn crt_idempotents<F: Field>(f: &F, factors: &[(F::Elem, usize)]) -> Vec<Poly<F>> {
    let moduli: Vec<Poly<F>> = factors.iter().map(|(c, m)| linear_power(f, c, *m)).collect();
    crt_idempotents_general(f, &moduli)
}
