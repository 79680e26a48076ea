use proptest::prelude::*;

use weylnorm::blasiak::{blasiak_normal_order, BosonString};
use weylnorm::cahill_glauber::weyl_via_cg;
use weylnorm::closed::{h_coeff, weyl_normal_form, WeylSpec};
use weylnorm::enumerate::{distinct_orderings, weyl_bruteforce};
use weylnorm::normal::NormalPoly;
use weylnorm::quantize::{quantize_side, QpPoly};
use weylnorm::scalar::{ratio, Rational, Scalar};
use weylnorm::textio::{parse_boson_word, parse_qp_poly, render, render_boson_word, render_qp_poly, Format};
use weylnorm::word::{expand_qp_word, normal_order_word, BosonWord, Ladder, QPWord, Quadrature};

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| ratio(n, d))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (rational(), rational(), rational(), rational()).prop_map(|(a, b, c, d)| Scalar::new(a, b, c, d))
}

fn boson_word(max_len: usize) -> impl Strategy<Value = BosonWord> {
    prop::collection::vec(prop_oneof![Just(Ladder::Create), Just(Ladder::Annihilate)], 0..=max_len).prop_map(BosonWord)
}

fn qp_word(max_len: usize) -> impl Strategy<Value = QPWord> {
    prop::collection::vec(prop_oneof![Just(Quadrature::Q), Just(Quadrature::P)], 0..=max_len).prop_map(QPWord)
}

fn normal_poly() -> impl Strategy<Value = NormalPoly> {
    prop::collection::vec(((0u32..4, 0u32..4), scalar()), 0..5).prop_map(NormalPoly::from_terms)
}

fn qp_poly() -> impl Strategy<Value = QpPoly> {
    prop::collection::btree_map((0u32..5, 0u32..5), rational(), 0..6)
}

proptest! {
    #[test]
    fn scalar_ring_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn conj_is_ring_involution(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), a.conj() * b.conj());
        prop_assert_eq!((&a + &b).conj(), a.conj() + b.conj());
    }

    #[test]
    fn normal_ordering_is_multiplicative(w1 in boson_word(7), w2 in boson_word(7)) {
        let joined = normal_order_word(&w1.concat(&w2));
        prop_assert_eq!(joined, normal_order_word(&w1).mul_poly(&normal_order_word(&w2)));
    }

    #[test]
    fn np_mul_is_associative(f in normal_poly(), g in normal_poly(), h in normal_poly()) {
        prop_assert_eq!(f.mul_poly(&g).mul_poly(&h), f.mul_poly(&g.mul_poly(&h)));
    }

    #[test]
    fn adjoint_reverses_qp_words(w in qp_word(8)) {
        prop_assert_eq!(expand_qp_word(&w).adjoint(), expand_qp_word(&w.reversed()));
    }

    #[test]
    fn qp_word_degree_parity(w in qp_word(9)) {
        let len = w.len() as u32;
        for (&(m, n), _) in expand_qp_word(&w).iter() {
            prop_assert!(m + n <= len);
            prop_assert_eq!((len - m - n) % 2, 0);
        }
    }

    #[test]
    fn blasiak_matches_rewriting(w in boson_word(12)) {
        prop_assert_eq!(blasiak_normal_order(&BosonString::blockify(&w)), normal_order_word(&w));
    }

    #[test]
    fn blasiak_conserves_excess(w in boson_word(10)) {
        let block = BosonString::blockify(&w);
        let d = block.excess().total();
        for (&(m, n), _) in blasiak_normal_order(&block).iter() {
            prop_assert_eq!(m as i64 - n as i64, d);
        }
    }

    #[test]
    fn qp_poly_render_round_trip(p in qp_poly()) {
        let p: QpPoly = p.into_iter().filter(|(_, c)| c != &ratio(0, 1)).collect();
        let text = render_qp_poly(&p);
        prop_assert_eq!(parse_qp_poly(&text).unwrap(), p, "{}", text);
    }

    #[test]
    fn boson_word_render_round_trip(w in boson_word(12)) {
        prop_assert_eq!(parse_boson_word(&render_boson_word(&w)).unwrap(), w);
    }

    #[test]
    fn render_is_injective(f in normal_poly(), g in normal_poly()) {
        for format in [Format::Plain, Format::Latex, Format::Structured] {
            prop_assert_eq!(render(&f, format) == render(&g, format), f == g);
        }
    }

    #[test]
    fn parse_never_panics(text in "[qpad0-9/^+* -]{0,16}") {
        let _ = parse_qp_poly(&text);
        let _ = parse_boson_word(&text);
    }

    #[test]
    fn quantizer_is_linear(f in qp_poly(), g in qp_poly(), alpha in rational(), beta in rational()) {
        let mut combo = QpPoly::new();
        for (key, c) in &f {
            *combo.entry(*key).or_insert_with(|| ratio(0, 1)) += &alpha * c;
        }
        for (key, c) in &g {
            *combo.entry(*key).or_insert_with(|| ratio(0, 1)) += &beta * c;
        }
        let lhs = quantize_side(&combo);
        let rhs = quantize_side(&f).scale_rational(&alpha) + quantize_side(&g).scale_rational(&beta);
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn canonical_commutator() {
    let qp = expand_qp_word(&QPWord(vec![Quadrature::Q, Quadrature::P]));
    let pq = expand_qp_word(&QPWord(vec![Quadrature::P, Quadrature::Q]));
    assert_eq!(qp - pq, NormalPoly::constant(Scalar::i()));
}

#[test]
fn averaging_is_order_independent() {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for spec in [WeylSpec::new(3, 2), WeylSpec::new(2, 4), WeylSpec::new(5, 1)] {
        let mut words: Vec<_> = distinct_orderings(spec).collect();
        let forward: NormalPoly = words.iter().map(expand_qp_word).sum();
        words.shuffle(&mut rng);
        let shuffled: NormalPoly = words.iter().rev().map(expand_qp_word).sum();
        assert_eq!(forward, shuffled);
    }
}

#[test]
fn distinct_orderings_are_unique_and_counted() {
    use std::collections::BTreeSet;
    use weylnorm::closed::binom;
    for spec in WeylSpec::up_to_degree(10) {
        let words: Vec<_> = distinct_orderings(spec).collect();
        let unique: BTreeSet<_> = words.iter().cloned().collect();
        assert_eq!(unique.len(), words.len());
        assert_eq!(num_bigint::BigInt::from(words.len()), binom(spec.degree() as i64, spec.j as i64));
    }
}

#[test]
fn closed_form_matches_other_routes_through_degree_eight() {
    for spec in WeylSpec::up_to_degree(8) {
        let closed = weyl_normal_form(spec);
        assert_eq!(closed, weyl_bruteforce(spec), "{spec}");
        assert_eq!(closed, weyl_via_cg(spec), "{spec}");
    }
}

#[test]
fn odd_degree_coefficients_live_in_sqrt2_component() {
    for spec in WeylSpec::up_to_degree(9).filter(|s| s.degree() % 2 == 1) {
        for (u, v) in spec.slots() {
            let h = h_coeff(spec.j, spec.k, u, v);
            assert!(h.x_re == ratio(0, 1) && h.x_im == ratio(0, 1), "{spec} u={u} v={v}");
        }
    }
}
