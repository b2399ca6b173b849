//! Randomized invariants.

use proptest::prelude::*;
use sl2share::diagrams::{ChordDiagram, Label, Share, SimpleGraph};
use sl2share::exactalg::{expand_rational_series, PolyC, PolyCY, Rational};
use sl2share::genfun::{gen_series, reconstruct_selem};
use sl2share::graphs::{canonical_form, local_complement, GraphCanon};
use sl2share::rewrite::{four_term_terms, normal_form, wsl2_diagram};
use sl2share::share_space::{pairing, sigma, Basis, SElem};

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

fn poly_c() -> impl Strategy<Value = PolyC> {
    prop::collection::vec(rational(), 0..4).prop_map(PolyC::from_coeffs)
}

fn poly_cy() -> impl Strategy<Value = PolyCY> {
    prop::collection::vec(poly_c(), 0..4).prop_map(PolyCY::from_coeffs)
}

fn basis() -> impl Strategy<Value = Basis> {
    prop::sample::select(Basis::ALL.to_vec())
}

fn selem(max_len: usize) -> impl Strategy<Value = SElem> {
    (basis(), prop::collection::vec(poly_c(), 0..=max_len)).prop_map(|(b, c)| SElem::new(b, c))
}

/// A random share: each label twice, shuffled, cut into two strands.
fn share(max_chords: usize) -> impl Strategy<Value = Share> {
    (0..=max_chords)
        .prop_flat_map(|n| {
            let word: Vec<Label> = (0..n as Label).flat_map(|l| [l, l]).collect();
            (Just(word).prop_shuffle(), 0..=2 * n)
        })
        .prop_map(|(w, cut)| Share::new(&w[..cut], &w[cut..]).unwrap())
}

fn graph(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, bits)| {
            let mut g = SimpleGraph::empty(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
}

fn brute_canon(g: &SimpleGraph) -> GraphCanon {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    perms(g.n())
        .into_iter()
        .map(|p| {
            // vertex p[i] is placed at position i
            let mut inv = vec![0; p.len()];
            for (i, &v) in p.iter().enumerate() {
                inv[v] = i;
            }
            let h = g.permuted(&inv);
            let mut bits = vec![0u64; 1];
            let mut idx = 0;
            for u in 0..g.n() {
                for v in u + 1..g.n() {
                    if h.has_edge(u, v) {
                        bits[0] |= 1 << (63 - idx);
                    }
                    idx += 1;
                }
            }
            GraphCanon { n: g.n(), bits }
        })
        .min()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_c_ring_axioms(a in poly_c(), b in poly_c(), c in poly_c()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn poly_cy_ring_axioms(a in poly_cy(), b in poly_cy(), c in poly_cy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn series_truncation_is_consistent(num in prop::collection::vec(poly_cy(), 1..3), tail in prop::collection::vec(poly_cy(), 0..3), k in 1usize..6) {
        let mut den = vec![PolyCY::one()];
        den.extend(tail);
        let long = expand_rational_series(&num, &den, k).unwrap();
        let short = expand_rational_series(&num, &den, k - 1).unwrap();
        prop_assert_eq!(long.truncate(k - 1), short);
    }

    #[test]
    fn share_text_roundtrip(s in share(5)) {
        prop_assert_eq!(s.to_string().parse::<Share>().unwrap(), s);
    }

    #[test]
    fn strand_reversal_is_an_involution(s in share(5)) {
        prop_assert_eq!(s.reverse_strand().reverse_strand(), s.clone());
        prop_assert_eq!(s.swap_strands().swap_strands(), s);
    }

    #[test]
    fn closure_graph_reverses_a_strand(s in share(5)) {
        let closed = s.closure().intersection_graph();
        let flipped = s.reverse_strand().two_colored_graph().graph;
        prop_assert_eq!(canonical_form(&closed), canonical_form(&flipped));
    }

    #[test]
    fn rotation_does_not_change_values(s in share(4), r in 0usize..8) {
        let d: ChordDiagram = s.closure();
        let r = r % d.word().len().max(1);
        prop_assert_eq!(wsl2_diagram(&d.rotated(r)), wsl2_diagram(&d));
    }

    #[test]
    fn four_term_combinations_vanish(s in share(4).prop_filter("needs a chord", |s| s.n_chords() > 0), pick in any::<prop::sample::Index>(), strand in 0usize..2, at in any::<prop::sample::Index>()) {
        let b = pick.index(s.n_chords()) as Label;
        let len = if strand == 0 { s.strand1().len() } else { s.strand2().len() };
        let slot = (strand, at.index(len + 1));
        let mut acc = sl2share::exactalg::PolyC1C2X::zero();
        for (k, t) in four_term_terms(&s, b, slot) {
            acc = &acc + &normal_form(&t).scale(&Rational::from_int(k));
        }
        prop_assert!(acc.is_zero());
    }

    #[test]
    fn strand_swap_swaps_casimirs(s in share(4)) {
        prop_assert_eq!(normal_form(&s.swap_strands()), normal_form(&s).swap_strands());
    }

    #[test]
    fn canonical_form_decides_isomorphism(g in graph(6), h in graph(6), perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let p: Vec<usize> = perm.into_iter().filter(|&v| v < g.n()).collect();
        prop_assert_eq!(canonical_form(&g.permuted(&p)), canonical_form(&g));
        prop_assert_eq!(canonical_form(&g) == canonical_form(&h), brute_canon(&g) == brute_canon(&h));
    }

    #[test]
    fn local_complement_is_an_involution(g in graph(7), v in any::<prop::sample::Index>()) {
        let v = v.index(g.n());
        prop_assert_eq!(local_complement(&local_complement(&g, v), v), g);
    }

    #[test]
    fn basis_changes_roundtrip(v in selem(5), target in basis()) {
        prop_assert_eq!(v.to_basis(target).to_basis(v.basis()), v);
    }

    #[test]
    fn pairing_is_symmetric(a in selem(4), b in selem(4)) {
        prop_assert_eq!(pairing(&a, &b), pairing(&b, &a));
    }

    #[test]
    fn sigma_is_an_involution(v in selem(6)) {
        prop_assert_eq!(sigma(&sigma(&v)), v);
    }

    #[test]
    fn reconstruction_inverts_series(v in selem(6)) {
        prop_assert_eq!(reconstruct_selem(&gen_series(&v)).unwrap(), v.to_basis(Basis::Y));
    }
}
