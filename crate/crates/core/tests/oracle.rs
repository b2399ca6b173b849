//! The rewrite engine against the representation oracle.

use sl2share::diagrams::{enumerate_diagrams, enumerate_shares};
use sl2share::rewrite::{normal_form, wsl2_diagram};
use sl2share::sl2rep::{oracle_check_nf, oracle_wsl2_diagram, separating_reps};

#[test]
fn diagrams_up_to_five_chords() {
    for n in 0..=5 {
        for d in enumerate_diagrams(n, 8).unwrap() {
            assert_eq!(wsl2_diagram(&d), oracle_wsl2_diagram(&d, 6).unwrap(), "{d}");
        }
    }
}

#[test]
fn shares_up_to_four_chords() {
    let reps = separating_reps(4);
    for n in 0..=4 {
        for s in enumerate_shares(n, 8).unwrap() {
            let nf = normal_form(&s);
            assert!(oracle_check_nf(&s, &nf, &reps, 6).unwrap(), "{s} -> {nf}");
        }
    }
}
