use khovanov_core::coeff::{lambda, ChronDegree, Monomial, RingElem, SDeg, Unit, ZPi, F2};
use khovanov_core::frobenius::{
    chron_deg, embed, relation_suite, sdeg, tau, tau_map, Elementary, TensorElem, TensorWord,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn monomial() -> impl Strategy<Value = Monomial> {
    (0i64..2, 0i64..2, -3i64..=3).prop_map(|(x, y, z)| Monomial::new(x, y, z))
}

fn ring_elem() -> impl Strategy<Value = RingElem> {
    prop::collection::vec((-5i64..=5, monomial()), 0..5).prop_map(|terms| {
        terms.into_iter().fold(RingElem::zero(), |acc, (c, m)| &acc + &RingElem::term(c, m))
    })
}

fn word(max_len: usize) -> impl Strategy<Value = TensorWord> {
    (0..=max_len).prop_flat_map(|n| (Just(n), 0u64..(1 << n))).prop_map(|(n, bits)| TensorWord::from_bits(n, bits))
}

fn degree() -> impl Strategy<Value = ChronDegree> {
    (-4i64..=4, -4i64..=4).prop_map(|(a, b)| ChronDegree::new(a, b))
}

/// Splitting degree of `m ⊗ n` from the parts: `sdeg m + sdeg n + (βw, βw)`
/// with `deg m = (α, β)` and `w` the weight of `n`.
fn sdeg_of_tensor(left: TensorWord, right: TensorWord) -> SDeg {
    let beta = chron_deg(left).beta;
    let w = chron_deg(right).weight();
    sdeg(left) + sdeg(right) + SDeg::new(beta * w, beta * w)
}

/// The same, built one letter at a time from single-letter degrees.
fn sdeg_of_letters(w: TensorWord) -> SDeg {
    let n = w.len();
    let mut acc = SDeg::ZERO;
    for p in (1..=n).rev() {
        let beta = chron_deg(w.slice(p + 1, n - p)).beta;
        let letter = if w.is_minus(p) { SDeg::new(1, -1) } else { SDeg::ZERO };
        acc = acc + letter + SDeg::new(beta, beta);
    }
    acc
}

proptest! {
    #[test]
    fn ring_is_commutative_and_associative(a in ring_elem(), b in ring_elem(), c in ring_elem()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn specializations_are_ring_maps(a in ring_elem(), b in ring_elem()) {
        let ab = &a * &b;
        let sum = &a + &b;
        prop_assert_eq!(ab.to_even(), a.to_even() * b.to_even());
        prop_assert_eq!(ab.to_odd(), a.to_odd() * b.to_odd());
        prop_assert_eq!(ab.to_negated(), a.to_negated() * b.to_negated());
        prop_assert_eq!(ab.to_unified(), a.to_unified() * b.to_unified());
        prop_assert_eq!(ab.to_mod2(), a.to_mod2() * b.to_mod2());
        prop_assert_eq!(sum.to_unified(), a.to_unified() + b.to_unified());
        prop_assert_eq!(a.to_unified().at_plus(), a.to_even());
        prop_assert_eq!(a.to_unified().at_minus(), a.to_odd());
    }

    #[test]
    fn display_round_trips(a in ring_elem()) {
        let back: RingElem = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn lambda_is_a_bicharacter(d in degree(), e in degree(), f in degree()) {
        prop_assert_eq!(lambda(d, e) * lambda(e, d), Unit::ONE);
        prop_assert_eq!(lambda(d + e, f), lambda(d, f) * lambda(e, f));
        prop_assert_eq!(lambda(d, e + f), lambda(d, e) * lambda(d, f));
    }

    #[test]
    fn sdeg_closed_form_matches_tensor_rule(w in word(6), cut in 0usize..=6) {
        let cut = cut.min(w.len());
        let right = w.slice(1, cut);
        let left = w.slice(cut + 1, w.len() - cut);
        prop_assert_eq!(sdeg(w), sdeg_of_tensor(left, right));
        prop_assert_eq!(sdeg(w), sdeg_of_letters(w));
    }

    #[test]
    fn tau_is_an_involution(w in word(5), p in 1usize..5) {
        prop_assume!(p < w.len());
        let once = tau(w, p).unwrap();
        let mut twice = TensorElem::zero();
        for (v, c) in once.terms() {
            twice.add(&tau(*v, p).unwrap().scale(c));
        }
        prop_assert_eq!(twice, TensorElem::word(w));
    }
}

#[test]
fn tau_has_splitting_degree_one_zero() {
    for len in 2..=5 {
        for p in 1..len {
            assert_eq!(tau_map(len, p).unwrap().sdeg_shift(), Some(SDeg::new(1, 0)));
        }
    }
}

#[test]
fn embedding_shifts_splitting_degree() {
    let pieces = [
        Elementary::Merge { reversed: false },
        Elementary::Merge { reversed: true },
        Elementary::Split { reversed: false },
        Elementary::Split { reversed: true },
        Elementary::Birth,
        Elementary::Death,
    ];
    for e in pieces {
        let f = e.to_map();
        let base = f.sdeg_shift().unwrap();
        assert_eq!(base, e.sdeg());
        let (alpha, beta) = (f.deg().alpha, f.deg().beta);
        for k in 0..=3usize {
            for l in 0..=3usize {
                if k + l + f.dom().max(f.cod()) > 5 {
                    continue;
                }
                let (k, l) = (k as i64, l as i64);
                let expected = base + SDeg::new(k * alpha + l * beta, (k + l) * beta);
                let g = embed(&f, k as usize, l as usize);
                assert_eq!(g.sdeg_shift(), Some(expected), "{e:?} with k={k} l={l}");
            }
        }
    }
}

#[test]
fn relation_suite_holds() {
    for r in relation_suite() {
        assert!(r.holds, "{}", r.name);
    }
}

#[test]
fn coefficient_rings() {
    let pi = ZPi::pi();
    assert_eq!(pi.clone() * pi, ZPi::new(1, 0));
    assert_eq!(F2(true) + F2(true), F2(false));
    assert_eq!(RingElem::from(Monomial::XY).to_unified(), ZPi::new(0, 1));
    assert_eq!(RingElem::from(Monomial::XY).degree_zero_to_zpi(), Some(ZPi::new(0, 1)));
    assert_eq!(RingElem::x().degree_zero_to_zpi(), None);
    assert_eq!(RingElem::term(-3, Monomial::ONE).to_even(), BigInt::from(-3));
}
