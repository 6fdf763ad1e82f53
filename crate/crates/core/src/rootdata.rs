//! Finite root systems of small rank: pairings, dominance orders and the
//! (dot) action of the Weyl group.
//!
//! Weights are stored in fundamental-weight coordinates, roots in
//! simple-root coordinates and coroots in simple-coroot coordinates. The
//! Cartan matrix entry `a[i][j]` is `<alpha_j, alpha_i^vee>`, so the simple
//! root `alpha_j` written in fundamental coordinates is column `j`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn scale(&self, k: i64) -> Self {
        Weight(self.0.iter().map(|x| x * k).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConeOrder {
    /// mu <= lambda iff lambda - mu is a sum of positive roots.
    Dominance,
    /// mu <= lambda iff lambda - mu is a nonnegative rational combination of
    /// positive roots.
    RationalCone,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub label: String,
    pub cartan: Vec<Vec<i64>>,
    /// Simple-root coordinates.
    pub positive_roots: Vec<Vec<i64>>,
    /// Simple-coroot coordinates, aligned with `positive_roots`.
    pub positive_coroots: Vec<Vec<i64>>,
    pub coxeter_number: i64,
    /// Highest short root, simple-root coordinates.
    pub highest_short_root: Vec<i64>,
    /// Its coroot (the highest coroot), simple-coroot coordinates.
    pub alpha0_check: Vec<i64>,
    /// (alpha_i, alpha_i) for the simple roots, normalized so short roots
    /// of simply-laced types have length 2.
    simple_lengths: Vec<i64>,
    det: i64,
    /// det * A^{-1}
    adj: Vec<Vec<i64>>,
}

struct TypeTable {
    cartan: &'static [&'static [i64]],
    lengths: &'static [i64],
    roots: &'static [&'static [i64]],
    h: i64,
}

fn table(label: &str) -> Option<TypeTable> {
    Some(match label {
        "A1" => TypeTable { cartan: &[&[2]], lengths: &[2], roots: &[&[1]], h: 2 },
        "A2" => TypeTable {
            cartan: &[&[2, -1], &[-1, 2]],
            lengths: &[2, 2],
            roots: &[&[1, 0], &[0, 1], &[1, 1]],
            h: 3,
        },
        "B2" => TypeTable {
            cartan: &[&[2, -1], &[-2, 2]],
            lengths: &[2, 1],
            roots: &[&[1, 0], &[0, 1], &[1, 1], &[1, 2]],
            h: 4,
        },
        "G2" => TypeTable {
            cartan: &[&[2, -3], &[-1, 2]],
            lengths: &[2, 6],
            roots: &[&[1, 0], &[0, 1], &[1, 1], &[2, 1], &[3, 1], &[3, 2]],
            h: 6,
        },
        "A3" => TypeTable {
            cartan: &[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]],
            lengths: &[2, 2, 2],
            roots: &[
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1],
                &[1, 1, 0],
                &[0, 1, 1],
                &[1, 1, 1],
            ],
            h: 4,
        },
        _ => return None,
    })
}

fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|c| {
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * det(&minor(m, 0, c))
        })
        .sum()
}

fn minor(m: &[Vec<i64>], r: usize, c: usize) -> Vec<Vec<i64>> {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != r)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|&(j, _)| j != c)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

impl RootDatum {
    /// One of "A1", "A2", "B2", "G2", "A3".
    pub fn new(label: &str) -> Result<Self> {
        let Some(t) = table(label) else {
            return input(format!("unsupported root datum {label:?} (expected A1, A2, B2, G2, A3)"));
        };
        let cartan: Vec<Vec<i64>> = t.cartan.iter().map(|r| r.to_vec()).collect();
        let n = cartan.len();
        let lengths = t.lengths.to_vec();
        let positive_roots: Vec<Vec<i64>> = t.roots.iter().map(|r| r.to_vec()).collect();
        let d = det(&cartan);
        let adj: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if n == 1 {
                            return 1;
                        }
                        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                        sign * det(&minor(&cartan, j, i))
                    })
                    .collect()
            })
            .collect();
        let mut rd = RootDatum {
            label: label.to_string(),
            cartan,
            positive_roots,
            positive_coroots: vec![],
            coxeter_number: t.h,
            highest_short_root: vec![],
            alpha0_check: vec![],
            simple_lengths: lengths,
            det: d,
            adj,
        };
        rd.positive_coroots = rd.positive_roots.iter().map(|r| rd.coroot_of(r)).collect();
        // highest short root: among roots of minimal length, maximal height
        let min_len = rd.positive_roots.iter().map(|r| rd.root_length(r)).min().unwrap();
        let (idx, _) = rd
            .positive_roots
            .iter()
            .enumerate()
            .filter(|(_, r)| rd.root_length(r) == min_len)
            .max_by_key(|(_, r)| r.iter().sum::<i64>())
            .unwrap();
        rd.highest_short_root = rd.positive_roots[idx].clone();
        rd.alpha0_check = rd.positive_coroots[idx].clone();
        rd.validate()?;
        Ok(rd)
    }

    fn validate(&self) -> Result<()> {
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                let a = self.cartan[i][j];
                if (i == j && a != 2) || (i != j && a > 0) {
                    return input("malformed Cartan matrix");
                }
            }
        }
        let rho = self.rho();
        if self.pairing_unchecked(&rho, &self.alpha0_check) != self.coxeter_number - 1 {
            return input("<rho, alpha0^vee> != h - 1");
        }
        // positive roots closed under simple reflections up to sign
        let set: HashSet<&Vec<i64>> = self.positive_roots.iter().collect();
        for r in &self.positive_roots {
            for i in 0..n {
                let s = self.reflect_root(i, r);
                let neg: Vec<i64> = s.iter().map(|x| -x).collect();
                if !set.contains(&s) && !set.contains(&neg) {
                    return input("positive root table not closed under reflections");
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// (beta, beta) in the normalization of `simple_lengths`.
    pub fn root_length(&self, k: &[i64]) -> i64 {
        let n = self.rank();
        let mut acc = 0;
        for i in 0..n {
            for j in 0..n {
                // (alpha_i, alpha_j) = a_ij (alpha_i, alpha_i) / 2
                acc += k[i] * k[j] * self.cartan[i][j] * self.simple_lengths[i];
            }
        }
        acc / 2
    }

    /// Coroot of a root given in simple-root coordinates, as simple-coroot
    /// coordinates.
    pub fn coroot_of(&self, k: &[i64]) -> Vec<i64> {
        let len = self.root_length(k);
        k.iter()
            .zip(&self.simple_lengths)
            .map(|(c, l)| c * l / len)
            .collect()
    }

    /// Simple root alpha_j in fundamental-weight coordinates.
    pub fn simple_root(&self, j: usize) -> Weight {
        Weight(self.cartan.iter().map(|row| row[j]).collect())
    }

    /// Root-lattice vector (simple-root coordinates) as a weight.
    pub fn root_to_weight(&self, k: &[i64]) -> Weight {
        let n = self.rank();
        Weight((0..n).map(|i| (0..n).map(|j| self.cartan[i][j] * k[j]).sum()).collect())
    }

    /// Rational simple-root coordinates of a weight.
    pub fn root_coords(&self, w: &Weight) -> Vec<Ratio<i64>> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                let num: i64 = (0..n).map(|j| self.adj[i][j] * w.0[j]).sum();
                Ratio::new(num, self.det)
            })
            .collect()
    }

    /// Integer simple-root coordinates when the weight lies in the root
    /// lattice.
    pub fn root_lattice_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        self.root_coords(w)
            .into_iter()
            .map(|r| r.is_integer().then(|| r.to_integer()))
            .collect()
    }

    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.root_lattice_coords(w).is_some()
    }

    /// Index of connection [X : ZR].
    pub fn connection_index(&self) -> i64 {
        self.det.abs()
    }

    fn pairing_unchecked(&self, w: &Weight, coroot: &[i64]) -> i64 {
        w.0.iter().zip(coroot).map(|(a, b)| a * b).sum()
    }

    /// <lambda, beta^vee> for a coroot in simple-coroot coordinates.
    pub fn pairing(&self, w: &Weight, coroot: &[i64]) -> Result<i64> {
        if w.rank() != self.rank() || coroot.len() != self.rank() {
            return input(format!(
                "dimension mismatch: weight {w}, coroot of length {}, rank {}",
                coroot.len(),
                self.rank()
            ));
        }
        Ok(self.pairing_unchecked(w, coroot))
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return input(format!("weight {w} does not have rank {}", self.rank()));
        }
        Ok(())
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        w.0.iter().all(|&x| x >= 0)
    }

    /// Sum over positive coroots of <theta, alpha^vee>.
    pub fn coroot_sum_pairing(&self, w: &Weight) -> i64 {
        self.positive_coroots.iter().map(|c| self.pairing_unchecked(w, c)).sum()
    }

    pub fn dominance_leq(&self, mu: &Weight, lambda: &Weight, order: ConeOrder) -> bool {
        let coords = self.root_coords(&(lambda - mu));
        match order {
            ConeOrder::Dominance => coords.iter().all(|c| c.is_integer() && *c >= Ratio::from(0)),
            // The cone spanned by the positive roots is the simplicial cone
            // on the simple roots.
            ConeOrder::RationalCone => coords.iter().all(|c| *c >= Ratio::from(0)),
        }
    }

    /// Simple reflection s_i on a weight.
    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let c = w.0[i];
        Weight(w.0.iter().zip(&self.cartan).map(|(x, row)| x - c * row[i]).collect())
    }

    fn reflect_root(&self, i: usize, k: &[i64]) -> Vec<i64> {
        // s_i(beta) = beta - <beta, alpha_i^vee> alpha_i
        let pair: i64 = (0..self.rank()).map(|j| k[j] * self.cartan[i][j]).sum();
        let mut out = k.to_vec();
        out[i] -= pair;
        out
    }

    /// s_i on a coroot in simple-coroot coordinates.
    pub fn reflect_coroot(&self, i: usize, c: &[i64]) -> Vec<i64> {
        // s_i(beta^vee) = beta^vee - <alpha_i, beta^vee> alpha_i^vee
        let pair: i64 = (0..self.rank()).map(|j| c[j] * self.cartan[j][i]).sum();
        let mut out = c.to_vec();
        out[i] -= pair;
        out
    }

    fn check_word(&self, word: &[usize]) -> Result<()> {
        if let Some(&bad) = word.iter().find(|&&i| i >= self.rank()) {
            return input(format!("invalid generator index {bad} for rank {}", self.rank()));
        }
        Ok(())
    }

    /// w(lambda), the word read as a product applied right to left.
    pub fn act(&self, word: &[usize], w: &Weight) -> Result<Weight> {
        self.check_word(word)?;
        self.check_weight(w)?;
        Ok(word.iter().rev().fold(w.clone(), |acc, &i| self.reflect(i, &acc)))
    }

    pub fn act_coroot(&self, word: &[usize], c: &[i64]) -> Result<Vec<i64>> {
        self.check_word(word)?;
        Ok(word.iter().rev().fold(c.to_vec(), |acc, &i| self.reflect_coroot(i, &acc)))
    }

    /// w . lambda = w(lambda + rho) - rho
    pub fn dot_action(&self, word: &[usize], w: &Weight) -> Result<Weight> {
        let rho = self.rho();
        Ok(&self.act(word, &(w + &rho))? - &rho)
    }

    /// Canonical reduced word of the Weyl group element sending rho to the
    /// given regular weight v = w(rho): strip the smallest left descent.
    pub fn word_from_image(&self, v: &Weight) -> Vec<usize> {
        let mut v = v.clone();
        let mut word = Vec::new();
        while let Some(i) = v.0.iter().position(|&x| x < 0) {
            word.push(i);
            v = self.reflect(i, &v);
        }
        word
    }

    pub fn reduced_word(&self, word: &[usize]) -> Result<Vec<usize>> {
        let v = self.act(word, &self.rho())?;
        Ok(self.word_from_image(&v))
    }

    pub fn coxeter_length(&self, word: &[usize]) -> Result<usize> {
        Ok(self.reduced_word(word)?.len())
    }

    /// Canonical reduced words of all elements of W, shortest first.
    pub fn weyl_elements(&self) -> Vec<Vec<usize>> {
        let rho = self.rho();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([rho.clone()]);
        seen.insert(rho);
        let mut out = Vec::new();
        while let Some(v) = queue.pop_front() {
            out.push(self.word_from_image(&v));
            for i in 0..self.rank() {
                let u = self.reflect(i, &v);
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    pub fn longest_word(&self) -> Vec<usize> {
        self.word_from_image(&-&self.rho())
    }

    /// lambda* = -w0(lambda)
    pub fn opposition(&self, w: &Weight) -> Result<Weight> {
        Ok(-&self.act(&self.longest_word(), w)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all() -> Vec<RootDatum> {
        ["A1", "A2", "B2", "G2", "A3"].iter().map(|l| RootDatum::new(l).unwrap()).collect()
    }

    #[test]
    fn table_sizes_and_rho_pairing() {
        let counts = [1, 3, 4, 6, 6];
        let orders = [2, 6, 8, 12, 24];
        for ((rd, &c), &o) in all().iter().zip(&counts).zip(&orders) {
            assert_eq!(rd.positive_roots.len(), c, "{}", rd.label);
            assert_eq!(rd.weyl_elements().len(), o, "{}", rd.label);
            assert_eq!(rd.pairing(&rd.rho(), &rd.alpha0_check).unwrap(), rd.coxeter_number - 1);
            assert_eq!(rd.longest_word().len(), c);
        }
    }

    #[test]
    fn alpha0_check_from_brute_force() {
        // <rho, alpha0^vee> as the sum of simple-coroot coefficients
        let a2 = RootDatum::new("A2").unwrap();
        assert_eq!(a2.alpha0_check, vec![1, 1]);
        assert_eq!(a2.alpha0_check.iter().sum::<i64>(), 2);
        assert_eq!(RootDatum::new("B2").unwrap().alpha0_check, vec![2, 1]);
        assert_eq!(RootDatum::new("G2").unwrap().alpha0_check, vec![2, 3]);
    }

    #[test]
    fn pairing_examples() {
        let a1 = RootDatum::new("A1").unwrap();
        assert_eq!(a1.pairing(&Weight(vec![7]), &[1]).unwrap(), 7);
        assert_eq!(a1.pairing(&Weight(vec![0]), &[1]).unwrap(), 0);
        assert!(a1.pairing(&Weight(vec![1, 2]), &[1]).is_err());
    }

    #[test]
    fn dominance_examples() {
        let a1 = RootDatum::new("A1").unwrap();
        let w = |x: i64| Weight(vec![x]);
        assert!(a1.dominance_leq(&w(1), &w(7), ConeOrder::Dominance));
        assert!(!a1.dominance_leq(&w(2), &w(7), ConeOrder::Dominance));
        assert!(a1.dominance_leq(&w(2), &w(7), ConeOrder::RationalCone));
        let a2 = RootDatum::new("A2").unwrap();
        // oracle: enumerate small nonnegative integer combinations
        let target = Weight(vec![1, 1]);
        let found = (0..4).any(|a| {
            (0..4).any(|b| &a2.simple_root(0).scale(a) + &a2.simple_root(1).scale(b) == target)
        });
        assert!(found);
        assert!(a2.dominance_leq(&Weight(vec![0, 0]), &target, ConeOrder::Dominance));
    }

    #[test]
    fn dot_action_examples() {
        let a1 = RootDatum::new("A1").unwrap();
        for m in -5..10 {
            assert_eq!(a1.dot_action(&[0], &Weight(vec![m])).unwrap(), Weight(vec![-m - 2]));
            assert_eq!(a1.dot_action(&[], &Weight(vec![m])).unwrap(), Weight(vec![m]));
        }
        assert!(a1.dot_action(&[1], &Weight(vec![0])).is_err());
        let a2 = RootDatum::new("A2").unwrap();
        assert_eq!(a2.opposition(&Weight(vec![1, 1])).unwrap(), Weight(vec![1, 1]));
        assert_eq!(a2.opposition(&Weight(vec![1, 0])).unwrap(), Weight(vec![0, 1]));
    }

    #[test]
    fn dot_action_equivariance() {
        for rd in all().iter().filter(|r| r.rank() <= 2) {
            let rho = rd.rho();
            for w in rd.weyl_elements() {
                let inv: Vec<usize> = w.iter().rev().cloned().collect();
                for a in -3..4 {
                    for b in -3..4 {
                        let lam = Weight([a, b][..rd.rank()].to_vec());
                        let lhs_w = &rd.dot_action(&w, &lam).unwrap() + &rho;
                        for c in &rd.positive_coroots {
                            let lhs = rd.pairing(&lhs_w, c).unwrap();
                            let rhs = rd
                                .pairing(&(&lam + &rho), &rd.act_coroot(&inv, c).unwrap())
                                .unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dominance_is_partial_order_on_box() {
        let a2 = RootDatum::new("A2").unwrap();
        let pts: Vec<Weight> = (-2..3).flat_map(|a| (-2..3).map(move |b| Weight(vec![a, b]))).collect();
        for x in &pts {
            assert!(a2.dominance_leq(x, x, ConeOrder::Dominance));
            for y in &pts {
                if x != y {
                    assert!(
                        !(a2.dominance_leq(x, y, ConeOrder::Dominance)
                            && a2.dominance_leq(y, x, ConeOrder::Dominance))
                    );
                }
                for z in &pts {
                    if a2.dominance_leq(x, y, ConeOrder::Dominance)
                        && a2.dominance_leq(y, z, ConeOrder::Dominance)
                    {
                        assert!(a2.dominance_leq(x, z, ConeOrder::Dominance));
                    }
                }
            }
        }
    }
}
