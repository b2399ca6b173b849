//! Generating functions computed along two independent routes.

use sl2share::diagrams::{enumerate_shares, Share};
use sl2share::exactalg::PolyC;
use sl2share::genfun::{cb_series, dual_rseries, gen_series, series_values, split_series};
use sl2share::rewrite::wsl2_share_x;
use sl2share::share_space::{Basis, SElem};

fn share_elem(s: &Share) -> SElem {
    SElem::from_poly(Basis::X, wsl2_share_x(s))
}

#[test]
fn recurrences_match_eigen_decomposition() {
    for m in 0..=6 {
        assert_eq!(cb_series(m), gen_series(&SElem::basis_element(Basis::Y, m)), "bipartite {m}");
        assert_eq!(split_series(m), gen_series(&SElem::basis_element(Basis::X, m)), "split {m}");
    }
}

#[test]
fn bipartite_values_are_symmetric() {
    for m in 0..=5 {
        for n in 0..=5u32 {
            let a = series_values(&SElem::basis_element(Basis::Y, m), n);
            let b = series_values(&SElem::basis_element(Basis::Y, n as usize), m as u32);
            assert_eq!(a, b, "K_({m},{n})");
        }
    }
}

#[test]
fn strand_reversal_dualizes_series() {
    for n in 0..=5 {
        for s in enumerate_shares(n, 8).unwrap().into_iter().filter(Share::is_arch_free) {
            let plain = gen_series(&share_elem(&s));
            let reversed = gen_series(&share_elem(&s.reverse_strand()));
            assert_eq!(reversed, dual_rseries(&plain, n).unwrap(), "{s}");
        }
    }
}

#[test]
fn first_value_is_the_closure() {
    for n in 0..=4 {
        for s in enumerate_shares(n, 8).unwrap() {
            let v = series_values(&share_elem(&s), 0);
            assert_eq!(v, sl2share::rewrite::wsl2_diagram(&s.closure()), "{s}");
        }
    }
    assert_eq!(series_values(&SElem::one(Basis::Y), 2), PolyC::c().pow(2));
}
