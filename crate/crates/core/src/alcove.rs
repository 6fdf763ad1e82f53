//! Alcove combinatorics of the affine Weyl group W_p: alcove addresses,
//! lengths, parity, poset ideals of p-regular dominant weights, the Jantzen
//! region and the alcove count a(Gamma).
//!
//! W_p acts on weights through the dot action; in the shifted coordinates
//! x = lambda + rho it is generated by reflections in the hyperplanes
//! <x, beta^vee> = kp. The bottom alcove C+ is 0 < <x, beta^vee> < p.

use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::rootdata::{ConeOrder, RootDatum, Weight};

/// z = t_{p theta} w acting by z . lambda = w . lambda + p theta.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineWeylElement {
    /// Simple-root coordinates.
    pub theta: Vec<i64>,
    /// Canonical reduced word (smallest-index left descent first).
    pub w: Vec<usize>,
}

/// An alcove address together with the base point in C+.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlcoveAddress {
    pub z: AffineWeylElement,
    pub lambda0: Weight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Order {
    Dominance,
    #[serde(alias = "cone")]
    RationalCone,
    Bruhat,
}

impl Order {
    pub fn parse(s: &str) -> Result<Order> {
        match s {
            "dominance" => Ok(Order::Dominance),
            "cone" | "rational-cone" => Ok(Order::RationalCone),
            "bruhat" => Ok(Order::Bruhat),
            _ => input(format!("unknown order {s:?} (dominance, cone, bruhat)")),
        }
    }
}

pub fn is_p_regular(rd: &RootDatum, lambda: &Weight, p: u64) -> bool {
    let x = lambda + &rd.rho();
    rd.positive_coroots
        .iter()
        .all(|c| rd.pairing(&x, c).map(|v| v.rem_euclid(p as i64) != 0).unwrap_or(false))
}

fn require_regular(rd: &RootDatum, lambda: &Weight, p: u64) -> Result<()> {
    rd.check_weight(lambda)?;
    if !is_p_regular(rd, lambda, p) {
        return Err(Error::Singular { weight: lambda.0.clone(), p });
    }
    Ok(())
}

/// gamma = gamma0 + p gamma1 with gamma0 restricted.
pub fn restricted_decompose(rd: &RootDatum, gamma: &Weight, p: u64) -> Result<(Weight, Weight)> {
    rd.check_weight(gamma)?;
    if !rd.is_dominant(gamma) {
        return input(format!("{gamma} is not dominant"));
    }
    let p = p as i64;
    Ok((
        Weight(gamma.0.iter().map(|x| x % p).collect()),
        Weight(gamma.0.iter().map(|x| x / p).collect()),
    ))
}

/// Whether x = lambda + rho lies in the interior of the bottom alcove.
fn in_bottom_alcove(rd: &RootDatum, x: &Weight, p: i64) -> bool {
    rd.positive_coroots.iter().all(|c| {
        let v = rd.pairing(x, c).unwrap();
        0 < v && v < p
    })
}

/// Solves tau = z . lambda0 with lambda0 in C+ by exhaustive search over
/// the finitely many translations compatible with |<tau + rho, alpha_i^vee>|
/// and all of W.
pub fn alcove_address_full(rd: &RootDatum, tau: &Weight, p: u64) -> Result<AlcoveAddress> {
    require_regular(rd, tau, p)?;
    let pi = p as i64;
    let x = tau + &rd.rho();
    // <p theta, alpha_i^vee> lies strictly within p of <x, alpha_i^vee>
    let ranges: Vec<(i64, i64)> = x
        .0
        .iter()
        .map(|&t| ((t - pi).div_euclid(pi), (t + pi).div_euclid(pi) + 1))
        .collect();
    let weyl = rd.weyl_elements();
    let mut found: Vec<AlcoveAddress> = Vec::new();
    let mut m = ranges.iter().map(|r| r.0).collect::<Vec<_>>();
    loop {
        let theta_w = Weight(m.clone());
        if let Some(theta) = rd.root_lattice_coords(&theta_w) {
            let y = &x - &theta_w.scale(pi);
            for w in &weyl {
                let inv: Vec<usize> = w.iter().rev().cloned().collect();
                let x0 = rd.act(&inv, &y)?;
                if in_bottom_alcove(rd, &x0, pi) {
                    found.push(AlcoveAddress {
                        z: AffineWeylElement { theta: theta.clone(), w: w.clone() },
                        lambda0: &x0 - &rd.rho(),
                    });
                }
            }
        }
        // odometer over the box
        let mut i = 0;
        loop {
            if i == m.len() {
                return match found.len() {
                    1 => Ok(found.pop().unwrap()),
                    n => Err(Error::Structure(format!("alcove search found {n} solutions for {tau}"))),
                };
            }
            m[i] += 1;
            if m[i] <= ranges[i].1 {
                break;
            }
            m[i] = ranges[i].0;
            i += 1;
        }
    }
}

pub fn alcove_address(rd: &RootDatum, tau: &Weight, p: u64) -> Result<AffineWeylElement> {
    Ok(alcove_address_full(rd, tau, p)?.z)
}

/// -l(w) + sum over positive coroots of <theta, alpha^vee>.
pub fn length(rd: &RootDatum, tau: &Weight, p: u64) -> Result<i64> {
    let z = alcove_address(rd, tau, p)?;
    Ok(z_length(rd, &z))
}

pub fn z_length(rd: &RootDatum, z: &AffineWeylElement) -> i64 {
    let theta = rd.root_to_weight(&z.theta);
    rd.coroot_sum_pairing(&theta) - z.w.len() as i64
}

/// Largest |coordinate| accepted by the brute-force oracle.
pub const ORACLE_BOUND: i64 = 10_000;

/// Signed count of the hyperplanes <x, beta^vee> = kp crossed on the way
/// from C+ to the alcove of tau: +1 when C+ is on the negative side.
pub fn length_oracle(rd: &RootDatum, tau: &Weight, p: u64) -> Result<i64> {
    require_regular(rd, tau, p)?;
    if rd.rank() > 2 || tau.0.iter().any(|x| x.abs() > ORACLE_BOUND) {
        return input("length_oracle supports rank <= 2 and |coordinates| <= 10000");
    }
    if (p as i64) < rd.coxeter_number {
        return input("length_oracle needs p >= h so that 0 lies in C+");
    }
    let pi = p as i64;
    let start = rd.rho();
    let end = tau + &rd.rho();
    let mut total = 0;
    for c in &rd.positive_coroots {
        let a = rd.pairing(&start, c)?;
        let b = rd.pairing(&end, c)?;
        let (lo, hi) = (a.min(b), a.max(b));
        let kmin = lo.div_euclid(pi) - 1;
        let kmax = hi.div_euclid(pi) + 1;
        for k in kmin..=kmax {
            let wall = k * pi;
            if lo < wall && wall < hi {
                total += if k >= 1 { 1 } else { -1 };
            }
        }
    }
    Ok(total)
}

/// l(tau) = l(tau + p theta) mod 2, theta given as a weight in ZR.
pub fn parity_check(rd: &RootDatum, tau: &Weight, theta: &Weight, p: u64) -> Result<bool> {
    rd.check_weight(theta)?;
    if !rd.in_root_lattice(theta) {
        return input(format!("{theta} is not in the root lattice"));
    }
    let shifted = tau + &theta.scale(p as i64);
    let a = length(rd, tau, p)?;
    let b = length(rd, &shifted, p)?;
    Ok((a - b).rem_euclid(2) == 0)
}

/// <lambda + rho, alpha0^vee> <= p (p - h + 2)
pub fn jantzen_contains(rd: &RootDatum, lambda: &Weight, p: u64) -> bool {
    let p = p as i64;
    let v = rd.pairing(&(lambda + &rd.rho()), &rd.alpha0_check).unwrap_or(i64::MAX);
    v <= p * (p - rd.coxeter_number + 2)
}

/// The affine Weyl group W_p as a Coxeter group, elements identified with
/// the orbit point z(rho) in shifted coordinates. Generators 0..rank are the
/// finite simple reflections, generator `rank` is the affine reflection in
/// <x, alpha0^vee> = p.
pub struct AffineCoxeter {
    rd: RootDatum,
    p: i64,
    alpha0: Weight,
    memo: Mutex<HashMap<(Weight, Weight), bool>>,
}

impl AffineCoxeter {
    pub fn new(rd: &RootDatum, p: u64) -> Result<Self> {
        if (p as i64) < rd.coxeter_number {
            return input("Bruhat order on W_p needs p >= h");
        }
        Ok(AffineCoxeter {
            rd: rd.clone(),
            p: p as i64,
            alpha0: rd.root_to_weight(&rd.highest_short_root),
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn point(&self, z: &AffineWeylElement) -> Weight {
        let w_rho = self.rd.act(&z.w, &self.rd.rho()).unwrap();
        &w_rho + &self.rd.root_to_weight(&z.theta).scale(self.p)
    }

    pub fn apply(&self, s: usize, y: &Weight) -> Weight {
        if s < self.rd.rank() {
            self.rd.reflect(s, y)
        } else {
            let v = self.rd.pairing(y, &self.rd.alpha0_check).unwrap();
            y - &self.alpha0.scale(v - self.p)
        }
    }

    /// Smallest-index left descent of the element with point y.
    pub fn left_descent(&self, y: &Weight) -> Option<usize> {
        if let Some(i) = y.0.iter().position(|&v| v < 0) {
            return Some(i);
        }
        let v = self.rd.pairing(y, &self.rd.alpha0_check).unwrap();
        (v > self.p).then_some(self.rd.rank())
    }

    pub fn reduced_word(&self, y: &Weight) -> Vec<usize> {
        let mut y = y.clone();
        let mut word = Vec::new();
        while let Some(s) = self.left_descent(&y) {
            word.push(s);
            y = self.apply(s, &y);
        }
        word
    }

    pub fn length(&self, y: &Weight) -> usize {
        self.reduced_word(y).len()
    }

    /// u <= v in the Bruhat order, by descent recursion: for a left descent
    /// s of v, u <= v iff min(u, su) <= sv.
    pub fn bruhat_leq(&self, u: &Weight, v: &Weight) -> bool {
        if u == v {
            return true;
        }
        let key = (u.clone(), v.clone());
        if let Some(&b) = self.memo.lock().unwrap().get(&key) {
            return b;
        }
        let ans = match self.left_descent(v) {
            None => false,
            Some(s) => {
                let sv = self.apply(s, v);
                let su = self.apply(s, u);
                let lower = if self.left_descent_is(u, s) { su } else { u.clone() };
                self.bruhat_leq(&lower, &sv)
            }
        };
        self.memo.lock().unwrap().insert(key, ans);
        ans
    }

    fn left_descent_is(&self, y: &Weight, s: usize) -> bool {
        if s < self.rd.rank() {
            y.0[s] < 0
        } else {
            self.rd.pairing(y, &self.rd.alpha0_check).unwrap() > self.p
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetIdeal {
    #[serde(rename = "type")]
    pub root_type: String,
    pub p: u64,
    pub order: Order,
    pub elements: BTreeSet<Weight>,
}

fn leq(
    rd: &RootDatum,
    cox: Option<&AffineCoxeter>,
    p: u64,
    mu: &Weight,
    lambda: &Weight,
    order: Order,
) -> Result<bool> {
    Ok(match order {
        Order::Dominance => rd.dominance_leq(mu, lambda, ConeOrder::Dominance),
        Order::RationalCone => rd.dominance_leq(mu, lambda, ConeOrder::RationalCone),
        Order::Bruhat => {
            let a = alcove_address_full(rd, mu, p)?;
            let b = alcove_address_full(rd, lambda, p)?;
            let cox = cox.expect("Bruhat comparison without Coxeter data");
            a.lambda0 == b.lambda0 && cox.bruhat_leq(&cox.point(&a.z), &cox.point(&b.z))
        }
    })
}

/// Dominant weights mu with <mu, alpha0^vee> <= bound.
fn dominant_box(rd: &RootDatum, bound: i64) -> Vec<Weight> {
    let n = rd.rank();
    let mut out = Vec::new();
    let mut m = vec![0i64; n];
    loop {
        let w = Weight(m.clone());
        if rd.pairing(&w, &rd.alpha0_check).unwrap() <= bound {
            out.push(w);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            m[i] += 1;
            if m[i] <= bound {
                break;
            }
            m[i] = 0;
            i += 1;
        }
    }
}

/// Downward closure of the generators within the p-regular dominant
/// weights. Every order used here refines the pairing with the dominant
/// coweight alpha0^vee, so the search stays in a finite box.
pub fn generate_ideal(rd: &RootDatum, generators: &[Weight], order: Order, p: u64) -> Result<PosetIdeal> {
    if generators.is_empty() {
        return input("an ideal needs at least one generator");
    }
    for g in generators {
        require_regular(rd, g, p)?;
        if !rd.is_dominant(g) {
            return input(format!("generator {g} is not dominant"));
        }
    }
    let cox = match order {
        Order::Bruhat => Some(AffineCoxeter::new(rd, p)?),
        _ => None,
    };
    let bound = generators
        .iter()
        .map(|g| rd.pairing(g, &rd.alpha0_check).unwrap())
        .max()
        .unwrap();
    let mut elements = BTreeSet::new();
    for mu in dominant_box(rd, bound) {
        if !is_p_regular(rd, &mu, p) {
            continue;
        }
        for g in generators {
            if leq(rd, cox.as_ref(), p, &mu, g, order)? {
                elements.insert(mu.clone());
                break;
            }
        }
    }
    Ok(PosetIdeal { root_type: rd.label.clone(), p, order, elements })
}

impl PosetIdeal {
    /// Validates a given set: nonempty, p-regular, dominant, downward closed.
    pub fn new(rd: &RootDatum, p: u64, order: Order, elements: BTreeSet<Weight>) -> Result<Self> {
        if elements.is_empty() {
            return input("poset ideals are nonempty");
        }
        let gens: Vec<Weight> = elements.iter().cloned().collect();
        let closure = generate_ideal(rd, &gens, order, p)?;
        if closure.elements != elements {
            return input("set is not downward closed in the declared order");
        }
        Ok(closure)
    }

    pub fn root_datum(&self) -> Result<RootDatum> {
        RootDatum::new(&self.root_type)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealReport {
    pub stable: bool,
    pub a: usize,
    pub inside_jantzen: bool,
    pub prime_bound_ok: bool,
}

pub fn ideal_report(ideal: &PosetIdeal) -> Result<IdealReport> {
    let rd = ideal.root_datum()?;
    let p = ideal.p;
    let mut stable = true;
    let mut alcoves = BTreeSet::new();
    let mut inside = true;
    for g in &ideal.elements {
        let (g0, _) = restricted_decompose(&rd, g, p)?;
        stable &= ideal.elements.contains(&g0);
        alcoves.insert(alcove_address(&rd, g, p)?);
        inside &= jantzen_contains(&rd, g, p);
    }
    let a = alcoves.len();
    let bound = 6 * a as i64 + 3 * rd.coxeter_number - 4;
    Ok(IdealReport { stable, a, inside_jantzen: inside, prime_bound_ok: (p as i64) > bound })
}

/// Representatives of X / pX inside omega + ZR.
pub fn coset_reps(rd: &RootDatum, omega: &Weight, p: u64) -> Result<Vec<Weight>> {
    rd.check_weight(omega)?;
    if rd.connection_index() % p as i64 == 0 {
        return input(format!("p = {p} divides the index of connection"));
    }
    let n = rd.rank();
    let mut out = Vec::new();
    let mut c = vec![0i64; n];
    loop {
        out.push(omega + &rd.root_to_weight(&c));
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            c[i] += 1;
            if c[i] < p as i64 {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> RootDatum {
        RootDatum::new("A1").unwrap()
    }
    fn w(x: i64) -> Weight {
        Weight(vec![x])
    }

    #[test]
    fn regularity_examples() {
        assert!(!is_p_regular(&a1(), &w(4), 5));
        assert!(is_p_regular(&a1(), &w(7), 5));
        let a2 = RootDatum::new("A2").unwrap();
        assert!(is_p_regular(&a2, &Weight(vec![1, 1]), 5));
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(restricted_decompose(&a1(), &w(13), 5).unwrap(), (w(3), w(2)));
        assert_eq!(restricted_decompose(&a1(), &w(4), 5).unwrap(), (w(4), w(0)));
        let a2 = RootDatum::new("A2").unwrap();
        assert_eq!(
            restricted_decompose(&a2, &Weight(vec![4, 5]), 3).unwrap(),
            (Weight(vec![1, 2]), Weight(vec![1, 1]))
        );
        assert!(restricted_decompose(&a1(), &w(-1), 5).is_err());
    }

    #[test]
    fn address_examples() {
        let r = a1();
        let z = alcove_address_full(&r, &w(1), 5).unwrap();
        assert_eq!(z.z, AffineWeylElement { theta: vec![0], w: vec![] });
        let z = alcove_address_full(&r, &w(7), 5).unwrap();
        assert_eq!(z.z, AffineWeylElement { theta: vec![1], w: vec![0] });
        assert_eq!(z.lambda0, w(1));
        // oracle: solve 2kp - 2 - m over k and w in {e, s}
        let brute = (-3..4)
            .flat_map(|k| [(k, false), (k, true)])
            .filter(|&(k, s)| {
                let l0 = if s { 2 * k * 5 - 2 - 7 } else { 7 - 2 * k * 5 };
                (0..3).contains(&l0)
            })
            .collect::<Vec<_>>();
        assert_eq!(brute, vec![(1, true)]);
        let z = alcove_address_full(&r, &w(11), 5).unwrap();
        assert_eq!(z.z, AffineWeylElement { theta: vec![1], w: vec![] });
        assert!(alcove_address(&r, &w(4), 5).is_err());
    }

    #[test]
    fn length_examples() {
        let r = a1();
        assert_eq!(length(&r, &w(1), 5).unwrap(), 0);
        assert_eq!(length(&r, &w(11), 5).unwrap(), 2);
        assert_eq!(length(&r, &w(7), 5).unwrap(), 1);
        assert_eq!(length_oracle(&r, &w(11), 5).unwrap(), 2);
        assert_eq!(length_oracle(&r, &w(7), 5).unwrap(), 1);
        assert_eq!(length_oracle(&r, &w(1), 5).unwrap(), 0);
        assert!(length_oracle(&RootDatum::new("A3").unwrap(), &Weight(vec![0, 0, 0]), 5).is_err());
    }

    #[test]
    fn parity_examples() {
        let r = a1();
        let alpha = r.simple_root(0);
        assert!(parity_check(&r, &w(1), &alpha, 5).unwrap());
        assert_eq!(length(&r, &w(17), 5).unwrap(), 3);
        assert!(parity_check(&r, &w(7), &alpha, 5).unwrap());
        assert!(parity_check(&r, &w(7), &w(0), 5).unwrap());
        assert!(parity_check(&r, &w(7), &w(1), 5).is_err());
    }

    #[test]
    fn jantzen_examples() {
        let r = a1();
        assert!(jantzen_contains(&r, &w(24), 5));
        assert!(!jantzen_contains(&r, &w(25), 5));
        assert!(jantzen_contains(&r, &w(0), 5));
        assert!(jantzen_contains(&RootDatum::new("A2").unwrap(), &Weight(vec![1, 1]), 5));
    }

    fn set(xs: &[i64]) -> BTreeSet<Weight> {
        xs.iter().map(|&x| w(x)).collect()
    }

    #[test]
    fn ideal_examples() {
        let r = a1();
        assert_eq!(generate_ideal(&r, &[w(7)], Order::Dominance, 5).unwrap().elements, set(&[1, 3, 5, 7]));
        assert_eq!(
            generate_ideal(&r, &[w(7)], Order::RationalCone, 5).unwrap().elements,
            set(&[0, 1, 2, 3, 5, 6, 7])
        );
        assert_eq!(generate_ideal(&r, &[w(1)], Order::Dominance, 5).unwrap().elements, set(&[1]));
        assert_eq!(generate_ideal(&r, &[w(7)], Order::Bruhat, 5).unwrap().elements, set(&[1, 7]));
        assert!(generate_ideal(&r, &[w(4)], Order::Dominance, 5).is_err());
        assert!(PosetIdeal::new(&r, 5, Order::Dominance, BTreeSet::new()).is_err());
        assert!(PosetIdeal::new(&r, 5, Order::Dominance, set(&[3, 7])).is_err());
    }

    #[test]
    fn report_examples() {
        let r = a1();
        let g = PosetIdeal::new(&r, 5, Order::Dominance, set(&[1, 3, 5, 7])).unwrap();
        let rep = ideal_report(&g).unwrap();
        assert!(!rep.stable);
        assert_eq!(rep.a, 2);
        let g = PosetIdeal::new(&r, 5, Order::RationalCone, set(&[0, 1, 2, 3, 5, 6, 7])).unwrap();
        assert_eq!(
            ideal_report(&g).unwrap(),
            IdealReport { stable: true, a: 2, inside_jantzen: true, prime_bound_ok: false }
        );
        let g = PosetIdeal::new(&r, 5, Order::Dominance, set(&[0])).unwrap();
        let rep = ideal_report(&g).unwrap();
        assert!(rep.stable && !rep.prime_bound_ok);
        assert_eq!(rep.a, 1);
    }

    #[test]
    fn coset_examples() {
        let r = a1();
        assert_eq!(coset_reps(&r, &w(0), 3).unwrap(), vec![w(0), w(2), w(4)]);
        assert_eq!(coset_reps(&r, &w(1), 3).unwrap(), vec![w(1), w(3), w(5)]);
        assert!(coset_reps(&r, &w(0), 2).is_err());
        let a2 = RootDatum::new("A2").unwrap();
        let reps = coset_reps(&a2, &Weight(vec![0, 0]), 5).unwrap();
        assert_eq!(reps.len(), 25);
        let classes: BTreeSet<Vec<i64>> = reps.iter().map(|v| v.0.iter().map(|x| x.rem_euclid(5)).collect()).collect();
        assert_eq!(classes.len(), 25);
    }

    #[test]
    fn dominant_alcoves_have_coxeter_length() {
        // For dominant z . C+, the alcove length equals the Coxeter length in W_p.
        for label in ["A1", "A2"] {
            let rd = RootDatum::new(label).unwrap();
            for p in [5u64, 7] {
                let cox = AffineCoxeter::new(&rd, p).unwrap();
                for mu in dominant_box(&rd, 3 * p as i64) {
                    if !is_p_regular(&rd, &mu, p) {
                        continue;
                    }
                    let a = alcove_address_full(&rd, &mu, p).unwrap();
                    assert_eq!(z_length(&rd, &a.z), cox.length(&cox.point(&a.z)) as i64, "{mu}");
                }
            }
        }
    }

    #[test]
    fn bruhat_sanity() {
        let rd = RootDatum::new("A2").unwrap();
        let cox = AffineCoxeter::new(&rd, 5).unwrap();
        let e = rd.rho();
        let s0 = cox.apply(2, &e);
        let s1s0 = cox.apply(0, &s0);
        assert!(cox.bruhat_leq(&e, &s1s0));
        assert!(cox.bruhat_leq(&s0, &s1s0));
        assert!(!cox.bruhat_leq(&s1s0, &s0));
        assert!(!cox.bruhat_leq(&cox.apply(1, &e), &s1s0));
    }
}
