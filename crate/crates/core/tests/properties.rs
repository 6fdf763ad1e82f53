//! Property tests for the invariants of each layer.

mod common;

use proptest::prelude::*;

use koszul_lab::alcove::{generate_ideal, ideal_report, is_p_regular, length, length_oracle, parity_check, Order};
use koszul_lab::fdalg::constructions::Filtration;
use koszul_lab::fdalg::module::{hom_space, isomorphic, Module};
use koszul_lab::fdalg::resolution::{ext_table, Projectives};
use koszul_lab::fdalg::samples::{poly_quotient, truncated_poly};
use koszul_lab::fdalg::structure::{blocks_and_basic, radical, radical_series};
use koszul_lab::field::Fp;
use koszul_lab::forced::{forced_grading, lattice_poly_quotient};
use koszul_lab::koszul::{is_koszul, is_qkoszul, simple_modules, truncate_shift, GradedQH, Labeling, Poset};
use koszul_lab::linalg::Echelon;
use koszul_lab::rootdata::{RootDatum, Weight};
use koszul_lab::sl2lab::characters::{delta_p_character, delta_p_decomposition, weyl_character, CharacterA1};

fn root_type() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("A1"), Just("A2"), Just("B2")]
}

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(5u64), Just(7), Just(11)]
}

fn dominant(rd: &RootDatum, coords: &[i64]) -> Weight {
    Weight(coords[..rd.rank()].to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn length_agrees_with_oracle(t in root_type(), p in prime(), c in proptest::collection::vec(0i64..30, 2)) {
        let rd = RootDatum::new(t).unwrap();
        let tau = dominant(&rd, &c);
        prop_assume!(is_p_regular(&rd, &tau, p));
        prop_assert_eq!(length(&rd, &tau, p).unwrap(), length_oracle(&rd, &tau, p).unwrap());
    }

    #[test]
    fn parity_holds_for_regular_pairs(
        t in prop_oneof![Just("A1"), Just("A2")],
        p in prime(),
        c in proptest::collection::vec(0i64..25, 2),
        k in proptest::collection::vec(-3i64..=3, 2),
    ) {
        let rd = RootDatum::new(t).unwrap();
        let tau = dominant(&rd, &c);
        let theta = rd.root_to_weight(&k[..rd.rank()]);
        let shifted = &tau + &theta.scale(p as i64);
        prop_assume!(is_p_regular(&rd, &tau, p) && is_p_regular(&rd, &shifted, p));
        prop_assert!(parity_check(&rd, &tau, &theta, p).unwrap());
    }

    #[test]
    fn rational_cone_ideals_are_stable(
        t in prop_oneof![Just("A1"), Just("A2")],
        p in prop_oneof![Just(5u64), Just(7)],
        gens in proptest::collection::vec(proptest::collection::vec(0i64..15, 2), 1..4),
    ) {
        let rd = RootDatum::new(t).unwrap();
        let gens: Vec<Weight> = gens.iter().map(|g| dominant(&rd, g)).filter(|w| is_p_regular(&rd, w, p)).collect();
        prop_assume!(!gens.is_empty());
        let ideal = generate_ideal(&rd, &gens, Order::RationalCone, p).unwrap();
        prop_assert!(ideal_report(&ideal).unwrap().stable);
    }

    #[test]
    fn delta_p_pieces_sum_to_weyl_character(m in 0i64..200, p in prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]) {
        let labels = delta_p_decomposition(m, p).unwrap();
        let mut sum = CharacterA1::default();
        for (g, k) in labels {
            for _ in 0..k {
                sum = sum.add(&delta_p_character(g, p));
            }
        }
        prop_assert_eq!(sum, weyl_character(m));
    }

    #[test]
    fn weyl_characters_are_symmetric(m in 0i64..60) {
        let ch = weyl_character(m);
        prop_assert!(ch.is_symmetric());
        prop_assert_eq!(ch.dim(), m + 1);
    }

    #[test]
    fn forced_grading_conserves_rank(
        p in prop_oneof![Just(2u64), Just(3), Just(5)],
        lower in proptest::collection::vec(-6i64..6, 1..4),
    ) {
        let alg = lattice_poly_quotient(p, &lower).unwrap();
        let fg = forced_grading(&alg).unwrap();
        prop_assert_eq!(fg.dims.iter().sum::<usize>(), alg.rank());
        // grade dimensions equal those of the radical grading over Q
        let aq = alg.rational();
        let q = Filtration::new(&aq.field, aq.dim(), &radical_series(aq)).dims();
        prop_assert_eq!(fg.dims, q);
    }

    #[test]
    fn radical_series_is_multiplicative(
        p in prop_oneof![Just(2u64), Just(3), Just(5)],
        lower in proptest::collection::vec(0u64..5, 1..5),
    ) {
        let f = Fp::new(p).unwrap();
        let lower: Vec<u64> = lower.iter().map(|c| c % p).collect();
        let a = poly_quotient(&f, &lower).unwrap();
        let series = radical_series(&a);
        for (m, sm) in series.iter().enumerate() {
            for (n, sn) in series.iter().enumerate() {
                let prod = a.span_products(sm, sn);
                match series.get(m + n) {
                    Some(target) => {
                        let t = Echelon::from_vectors(&f, a.dim(), target.iter().cloned());
                        prop_assert!(prod.basis().iter().all(|v| t.contains(v)));
                    }
                    None => prop_assert_eq!(prod.dim(), 0),
                }
            }
        }
        // A / rad A is split semisimple when the field splits the algebra
        if let Ok(b) = blocks_and_basic(&a) {
            prop_assert_eq!(a.dim() - radical(&a).len(), common::semisimple_quotient_dim(&b.multiplicities));
        }
    }

    #[test]
    fn ext_row_sums_match_oracle(
        p in prop_oneof![Just(2u64), Just(3), Just(5)],
        lower in proptest::collection::vec(0u64..5, 1..5),
    ) {
        let f = Fp::new(p).unwrap();
        let lower: Vec<u64> = lower.iter().map(|c| c % p).collect();
        let a = poly_quotient(&f, &lower).unwrap();
        let proj = match Projectives::new(&a) {
            Ok(pr) => pr,
            Err(_) => return Ok(()),
        };
        let mut mods = simple_modules(&a, &proj).unwrap();
        mods.push(Module::regular(&a));
        for m in &mods {
            for n in &mods {
                let t = ext_table(&a, m, n, 3).unwrap();
                let o = common::ungraded_ext_oracle(&a, m, n, 3);
                for (k, d) in o.iter().enumerate() {
                    prop_assert_eq!(t.total(k), *d);
                }
                prop_assert_eq!(t.total(0), hom_space(&a, m, n, &a.zero_key()).len());
            }
        }
    }

    #[test]
    fn truncations_compose(n in 2usize..6, i in 0i64..4, j in 0i64..4, r in 0i64..3) {
        let f = Fp::new(5).unwrap();
        let a = truncated_poly(&f, n, true).unwrap();
        let m = Module::regular(&a).shift(r, None).direct_sum(&Module::regular(&a));
        let two = truncate_shift(&a, &truncate_shift(&a, &m, i).unwrap(), j).unwrap();
        let one = truncate_shift(&a, &m, i + j).unwrap();
        prop_assert_eq!(two.graded_dims(), one.graded_dims());
        prop_assert!(isomorphic(&a, &two, &one));
    }

    #[test]
    fn koszul_implies_qkoszul_with_simples(n in 2usize..5, p in prop_oneof![Just(2u64), Just(3)]) {
        let f = Fp::new(p).unwrap();
        let a = truncated_poly(&f, n, true).unwrap();
        let k = is_koszul(&a, 4).unwrap();
        let gq = GradedQH::new(&a, &Poset::chain(vec!["0".into()]), Labeling::Classes(vec![0]), false).unwrap();
        prop_assert!(gq.delta0.iter().zip(&gq.simple).all(|(d, l)| isomorphic(&a, d, l)));
        let q = is_qkoszul(&a, &gq, 4).unwrap();
        prop_assert!(!k.holds || q.holds);
        prop_assert_eq!(k.holds, n == 2);
    }
}
