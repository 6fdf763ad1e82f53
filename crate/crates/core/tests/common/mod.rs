//! Independent oracles for integration tests. They use their own modular
//! linear algebra and never call the library's resolution code.

#![allow(dead_code)]

use koszul_lab::fdalg::algebra::Algebra;
use koszul_lab::fdalg::module::Module;
use koszul_lab::field::{Field, Fp};

pub struct Modp {
    pub p: u64,
}

impl Modp {
    fn inv(&self, a: u64) -> u64 {
        let mut r = 1u64;
        let (mut b, mut e) = (a % self.p, self.p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }

    /// Row reduction in place; returns pivot columns.
    pub fn rref(&self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let p = self.p;
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
            rows.swap(r, k);
            let s = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = *x * s % p;
            }
            let pivot = rows[r].clone();
            for (k, row) in rows.iter_mut().enumerate() {
                if k != r && row[c] != 0 {
                    let m = row[c];
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x = (*x + p * p - m * y) % p;
                    }
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

    pub fn rank(&self, rows: &[Vec<u64>]) -> usize {
        self.rref(&mut rows.to_vec()).len()
    }

    /// Null space of the matrix with the given rows.
    pub fn kernel(&self, rows: &[Vec<u64>], ncols: usize) -> Vec<Vec<u64>> {
        let mut m = rows.to_vec();
        let pivots = self.rref(&mut m);
        let mut out = Vec::new();
        for free in (0..ncols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0; ncols];
            v[free] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = (self.p - row[free]) % self.p;
            }
            out.push(v);
        }
        out
    }
}

/// Structure constants and module actions as plain residues.
pub struct PlainAlgebra {
    pub p: u64,
    pub dim: usize,
    /// products[i][j] = b_i b_j as a dense vector
    pub products: Vec<Vec<Vec<u64>>>,
}

impl PlainAlgebra {
    pub fn new(alg: &Algebra<Fp>) -> Self {
        let f = &alg.field;
        let p = f.characteristic();
        let n = alg.dim();
        let mut products = vec![vec![vec![0u64; n]; n]; n];
        for (i, j, k, c) in alg.structure_constants() {
            products[i][j][k] = (products[i][j][k] + f.residue(&c).unwrap()) % p;
        }
        PlainAlgebra { p, dim: n, products }
    }

    fn mul_basis_left(&self, i: usize, y: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.dim];
        for (j, &c) in y.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(&self.products[i][j]) {
                *o = (*o + c * v) % self.p;
            }
        }
        out
    }
}

pub struct PlainModule {
    pub dim: usize,
    /// action[i] as dense rows
    pub action: Vec<Vec<Vec<u64>>>,
}

impl PlainModule {
    pub fn new(m: &Module<Fp>) -> Self {
        let f = &m.field;
        let p = f.characteristic();
        let action = m
            .action
            .iter()
            .map(|s| {
                let mut a = vec![vec![0u64; m.dim]; m.dim];
                for (r, c, v) in &s.entries {
                    a[*r][*c] = (a[*r][*c] + f.residue(v).unwrap()) % p;
                }
                a
            })
            .collect();
        PlainModule { dim: m.dim, action }
    }

    fn act_basis(&self, p: u64, i: usize, v: &[u64]) -> Vec<u64> {
        self.action[i].iter().map(|row| row.iter().zip(v).fold(0, |s, (a, b)| (s + a * b) % p)).collect()
    }

    fn act(&self, p: u64, a: &[u64], v: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.dim];
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, w) in out.iter_mut().zip(self.act_basis(p, i, v)) {
                *o = (*o + c * w) % p;
            }
        }
        out
    }
}

type Action<'a> = Box<dyn Fn(usize, &[u64]) -> Vec<u64> + 'a>;

/// A submodule K of a space W on which A acts through `act`.
struct Target<'a> {
    dim: usize,
    ops: usize,
    basis: Vec<Vec<u64>>,
    act: Action<'a>,
}

/// Incremental reduced echelon form over F_p.
struct Span {
    p: u64,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Span {
    fn reduce(&self, v: &mut [u64]) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let m = v[c];
            if m != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + self.p * self.p - m * y) % self.p;
                }
            }
        }
    }

    fn insert(&mut self, mut v: Vec<u64>, ring: &Modp) {
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else { return };
        let s = ring.inv(v[c]);
        for x in v.iter_mut() {
            *x = *x * s % self.p;
        }
        for row in self.rows.iter_mut() {
            let m = row[c];
            if m != 0 {
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = (*x + self.p * self.p - m * y) % self.p;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(c);
    }
}

/// Greedy cover of K by a free module A^g: returns the generators. Random
/// combinations of the basis generate large submodules, which keeps g close
/// to the minimal number of generators.
fn greedy_generators(ring: &Modp, t: &Target) -> Vec<Vec<u64>> {
    let mut span = Span { p: ring.p, rows: vec![], pivots: vec![] };
    let mut gens = Vec::new();
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state % ring.p
    };
    let n = t.basis.first().map_or(0, |b| b.len());
    let mut fallback = t.basis.iter();
    while span.rows.len() < t.basis.len() {
        let mut v = vec![0u64; n];
        for b in &t.basis {
            let c = next();
            for (x, y) in v.iter_mut().zip(b) {
                *x = (*x + c * y) % ring.p;
            }
        }
        let mut w = v.clone();
        span.reduce(&mut w);
        if w.iter().all(|&x| x == 0) {
            // unlucky draw; fall back to the next basis vector outside the span
            let Some(b) = fallback.by_ref().find(|b| {
                let mut w = (*b).clone();
                span.reduce(&mut w);
                w.iter().any(|&x| x != 0)
            }) else {
                break;
            };
            v = b.clone();
        }
        for i in 0..t.ops {
            span.insert((t.act)(i, &v), ring);
        }
        gens.push(v);
    }
    gens
}

/// dim Ext^n_A(M, N) for n ≤ n_max, from a non-minimal free resolution
/// built greedily, ignoring every grading.
pub fn ungraded_ext_oracle(alg: &Algebra<Fp>, m: &Module<Fp>, n: &Module<Fp>, n_max: usize) -> Vec<usize> {
    let a = PlainAlgebra::new(alg);
    let (pm, pn) = (PlainModule::new(m), PlainModule::new(n));
    let p = a.p;
    let ring = Modp { p };
    let da = a.dim;
    // generators of each free term, as elements of the previous term
    let mut gens_per_term: Vec<Vec<Vec<u64>>> = Vec::new();
    let first = Target {
        dim: pm.dim,
        ops: da,
        basis: (0..pm.dim).map(|j| (0..pm.dim).map(|k| (k == j) as u64).collect()).collect(),
        act: Box::new(|i, v| pm.act_basis(p, i, v)),
    };
    let mut gens = greedy_generators(&ring, &first);
    let mut prev_dim = pm.dim;
    let image_of = |gens: &[Vec<u64>], prev_dim: usize, act: &dyn Fn(usize, &[u64]) -> Vec<u64>| -> Vec<Vec<u64>> {
        // columns: basis (t, j) of A^g maps to b_j · gens[t]
        let mut cols = Vec::new();
        for g in gens {
            for j in 0..da {
                cols.push(act(j, g));
            }
        }
        (0..prev_dim).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
    };
    let free_act = |g: usize| {
        let a = &a;
        move |i: usize, v: &[u64]| -> Vec<u64> {
            let mut out = Vec::with_capacity(g * da);
            for t in 0..g {
                out.extend(a.mul_basis_left(i, &v[t * da..(t + 1) * da]));
            }
            out
        }
    };
    for k in 0..=n_max + 1 {
        gens_per_term.push(gens.clone());
        if k == n_max + 1 {
            break;
        }
        let g = gens.len();
        let rows = if k == 0 {
            image_of(&gens, prev_dim, &|i, v| pm.act_basis(p, i, v))
        } else {
            let g_prev = gens_per_term[k - 1].len();
            image_of(&gens, prev_dim, &free_act(g_prev))
        };
        let kernel = ring.kernel(&rows, g * da);
        let act = free_act(g);
        let t = Target { dim: g * da, ops: da, basis: kernel, act: Box::new(act) };
        prev_dim = t.dim;
        gens = greedy_generators(&ring, &t);
    }
    // cochains Hom(F_k, N) = N^{g_k}; δ^k sends (n_t) to (Σ_t a_{s,t} n_t)_s
    let g: Vec<usize> = gens_per_term.iter().map(|v| v.len()).collect();
    let delta = |k: usize| -> Vec<Vec<u64>> {
        let src = g[k] * pn.dim;
        let tgt = g[k + 1] * pn.dim;
        let mut cols = Vec::with_capacity(src);
        for t in 0..g[k] {
            for c in 0..pn.dim {
                let mut col = vec![0u64; tgt];
                for (s, u) in gens_per_term[k + 1].iter().enumerate() {
                    let coeff = &u[t * da..(t + 1) * da];
                    let e: Vec<u64> = (0..pn.dim).map(|r| (r == c) as u64).collect();
                    let img = pn.act(p, coeff, &e);
                    col[s * pn.dim..(s + 1) * pn.dim].copy_from_slice(&img);
                }
                cols.push(col);
            }
        }
        (0..tgt).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
    };
    let ranks: Vec<usize> = (0..=n_max).map(|k| if g[k + 1] == 0 || g[k] == 0 { 0 } else { ring.rank(&delta(k)) }).collect();
    (0..=n_max).map(|k| g[k] * pn.dim - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }).collect()
}

/// The S_d-equivariant endomorphisms of (F_p^2)^{⊗d}, by brute force: the
/// kernel of X ↦ σX − Xσ over adjacent transpositions σ.
pub fn centralizer_dim(d: usize, p: u64) -> usize {
    let n = 1usize << d;
    let ring = Modp { p };
    let swap = |s: usize, i: usize| -> usize {
        let (a, b) = ((i >> s) & 1, (i >> (s + 1)) & 1);
        (i & !(0b11 << s)) | (b << s) | (a << (s + 1))
    };
    let mut rows = Vec::new();
    for s in 0..d.saturating_sub(1) {
        // (σX)_{ij} = X_{σ(i) j}, (Xσ)_{ij} = X_{i σ(j)}
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![0u64; n * n];
                row[swap(s, i) * n + j] += 1;
                let c = i * n + swap(s, j);
                row[c] = (row[c] + p - 1) % p;
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    n * n - ring.rank(&rows)
}

/// The matrix on (F_p^2)^{⊗d} of the orbit sum through (i, j), where bit k
/// set in i means the k-th tensor factor is the second basis vector.
pub fn orbit_matrix(d: usize, i0: usize, j0: usize) -> Vec<Vec<u64>> {
    let n = 1usize << d;
    let sig = |i: usize, j: usize| {
        let mut v: Vec<(usize, usize)> = (0..d).map(|k| ((i >> k) & 1, (j >> k) & 1)).collect();
        v.sort();
        v
    };
    let target = sig(i0, j0);
    (0..n).map(|i| (0..n).map(|j| (sig(i, j) == target) as u64).collect()).collect()
}

/// Dimension of A / rad A computed from the simple dimensions of a split
/// algebra, for the radical cross-check.
pub fn semisimple_quotient_dim(simple_dims: &[usize]) -> usize {
    simple_dims.iter().map(|d| d * d).sum()
}
