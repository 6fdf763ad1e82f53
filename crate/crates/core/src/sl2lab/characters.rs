//! Characters of SL2-modules as weight multisets, with Steinberg tensor
//! products, Frobenius twists and greedy highest-weight decompositions.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{input, Error, Result};

/// Finite multiset of integer weights.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CharacterA1(pub BTreeMap<i64, i64>);

impl CharacterA1 {
    pub fn from_weights(ws: impl IntoIterator<Item = i64>) -> Self {
        let mut c = CharacterA1::default();
        for w in ws {
            c.add_weight(w, 1);
        }
        c
    }

    fn add_weight(&mut self, w: i64, k: i64) {
        let e = self.0.entry(w).or_insert(0);
        *e += k;
        if *e == 0 {
            self.0.remove(&w);
        }
    }

    pub fn mult(&self, w: i64) -> i64 {
        self.0.get(&w).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether every multiplicity is nonnegative.
    pub fn is_effective(&self) -> bool {
        self.0.values().all(|&m| m >= 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().all(|(&w, &m)| self.mult(-w) == m)
    }

    pub fn highest(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    pub fn add(&self, o: &CharacterA1) -> CharacterA1 {
        let mut c = self.clone();
        for (&w, &m) in &o.0 {
            c.add_weight(w, m);
        }
        c
    }

    pub fn sub_scaled(&self, o: &CharacterA1, k: i64) -> CharacterA1 {
        let mut c = self.clone();
        for (&w, &m) in &o.0 {
            c.add_weight(w, -k * m);
        }
        c
    }

    pub fn product(&self, o: &CharacterA1) -> CharacterA1 {
        let mut c = CharacterA1::default();
        for (&a, &m) in &self.0 {
            for (&b, &n) in &o.0 {
                c.add_weight(a + b, m * n);
            }
        }
        c
    }

    /// Frobenius twist: weight w becomes p·w.
    pub fn frobenius(&self, p: u64) -> CharacterA1 {
        CharacterA1(self.0.iter().map(|(&w, &m)| (w * p as i64, m)).collect())
    }

    /// Inverse twist; fails when a weight is not divisible by p.
    pub fn untwist(&self, p: u64) -> Result<CharacterA1> {
        let p = p as i64;
        let mut out = BTreeMap::new();
        for (&w, &m) in &self.0 {
            if w % p != 0 {
                return input(format!("weight {w} is not divisible by {p}"));
            }
            out.insert(w / p, m);
        }
        Ok(CharacterA1(out))
    }

    /// Weights listed with multiplicity, highest first.
    pub fn weights(&self) -> Vec<i64> {
        self.0.iter().rev().flat_map(|(&w, &m)| std::iter::repeat_n(w, m.max(0) as usize)).collect()
    }
}

impl fmt::Display for CharacterA1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.0.iter().rev().map(|(w, m)| if *m == 1 { w.to_string() } else { format!("{w}^{m}") }).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// χ(Δ(m)) = χ(∇(m)) = {m, m-2, ..., -m}.
pub fn weyl_character(m: i64) -> CharacterA1 {
    if m < 0 {
        return CharacterA1::default();
    }
    CharacterA1::from_weights((0..=m).map(|j| m - 2 * j))
}

/// (γ0, γ1) with γ = γ0 + p γ1 and 0 ≤ γ0 < p.
pub fn restricted_split(gamma: i64, p: u64) -> (i64, i64) {
    let p = p as i64;
    (gamma.rem_euclid(p), gamma.div_euclid(p))
}

/// χ(L(λ)) by the Steinberg tensor product theorem; restricted simples of
/// SL2 have the Weyl character.
pub fn simple_character(lambda: i64, p: u64) -> CharacterA1 {
    if lambda < 0 {
        return CharacterA1::default();
    }
    if lambda < p as i64 {
        return weyl_character(lambda);
    }
    let (l0, l1) = restricted_split(lambda, p);
    weyl_character(l0).product(&simple_character(l1, p).frobenius(p))
}

/// χ(Δᵖ(γ)) = χ(L(γ0))·χ(Δ(γ1))^[1].
pub fn delta_p_character(gamma: i64, p: u64) -> CharacterA1 {
    let (g0, g1) = restricted_split(gamma, p);
    weyl_character(g0).product(&weyl_character(g1).frobenius(p))
}

/// Greedy highest-weight-first decomposition of χ into the characters
/// `basis(γ)`, whose highest weight is γ with multiplicity one. Returns the
/// multiplicities and the remainder once no positive top weight is left.
fn greedy(chi: &CharacterA1, basis: impl Fn(i64) -> CharacterA1) -> (BTreeMap<i64, i64>, CharacterA1) {
    let mut rest = chi.clone();
    let mut mults = BTreeMap::new();
    while let Some(top) = rest.highest() {
        let k = rest.mult(top);
        if k < 0 || top < 0 {
            break;
        }
        rest = rest.sub_scaled(&basis(top), k);
        *mults.entry(top).or_insert(0) += k;
    }
    (mults, rest)
}

/// Labels γ (with multiplicity) such that Σ χ(Δᵖ(γ)) = χ(Δ(m)).
pub fn delta_p_decomposition(m: i64, p: u64) -> Result<Vec<(i64, i64)>> {
    if m < 0 {
        return input("m must be non-negative");
    }
    let (mults, rest) = greedy(&weyl_character(m), |g| delta_p_character(g, p));
    if !rest.is_empty() || mults.values().any(|&k| k < 0) {
        return Err(Error::Structure(format!("χ(Δ({m})) leaves remainder {rest} after Δᵖ subtraction")));
    }
    Ok(mults.into_iter().rev().collect())
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NablaTest {
    pub passes: bool,
    pub multiplicities: Vec<(i64, i64)>,
    pub remainder: CharacterA1,
}

/// Greedy decomposition into χ(∇(m)), m ≥ 0, with nonnegative
/// multiplicities; passes iff nothing remains.
pub fn nabla_character_test(chi: &CharacterA1) -> NablaTest {
    let (mults, rest) = greedy(chi, weyl_character);
    let passes = rest.is_empty() && mults.values().all(|&k| k >= 0);
    NablaTest { passes, multiplicities: mults.into_iter().rev().collect(), remainder: rest }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_characters() {
        assert_eq!(weyl_character(0).weights(), vec![0]);
        assert_eq!(weyl_character(7).weights(), vec![7, 5, 3, 1, -1, -3, -5, -7]);
        assert!(weyl_character(6).is_symmetric());
    }

    #[test]
    fn steinberg_products() {
        // L(7) at p = 5: L(2) ⊗ L(1)^[1]
        assert_eq!(simple_character(7, 5).weights(), vec![7, 5, 3, -3, -5, -7]);
        assert_eq!(simple_character(4, 5), weyl_character(4));
        assert_eq!(simple_character(30, 5).dim(), 2 * 2);
    }

    #[test]
    fn delta_p_examples() {
        assert_eq!(delta_p_decomposition(3, 5).unwrap(), vec![(3, 1)]);
        assert_eq!(delta_p_decomposition(7, 5).unwrap(), vec![(7, 1), (1, 1)]);
        assert_eq!(delta_p_decomposition(4, 5).unwrap(), vec![(4, 1)]);
        assert_eq!(delta_p_character(7, 5).weights(), vec![7, 5, 3, -3, -5, -7]);
    }

    #[test]
    fn nabla_examples() {
        let chi = weyl_character(2).add(&weyl_character(0));
        let t = nabla_character_test(&chi);
        assert!(t.passes);
        assert_eq!(t.multiplicities, vec![(2, 1), (0, 1)]);
        assert!(!nabla_character_test(&CharacterA1::from_weights([1, 1, -1])).passes);
    }
}
