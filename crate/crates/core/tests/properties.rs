use proptest::prelude::*;

use semirigid::constructions::{from_matrix, simplex_system, to_matrix, tn2, tn2p, zadori};
use semirigid::io::{parse_latin, parse_points, parse_system, points_to_json, system_to_json};
use semirigid::lattice::{are_isomorphic, census, is_m3, CensusMode};
use semirigid::nets::{evans_extend, is_3net, latin_to_3net, to_partial_latin, PartialLatinSquare};
use semirigid::planar::{induced_system, maintheo_certificate, normalize, PlanarSet, Point};
use semirigid::{endomorphisms, is_reduced, is_semirigid, System};

fn grid_subset(side: i64, max: usize) -> impl Strategy<Value = PlanarSet> {
    prop::collection::vec((0..side, 0..side), 1..=max)
        .prop_map(|v| v.into_iter().map(|(x, y)| Point::new(x, y)).collect())
}

#[test]
fn zadori_matches_the_planar_bands() {
    for n in 2..=5 {
        let odd = induced_system(&tn2(n).unwrap()).unwrap();
        let even = induced_system(&tn2p(n).unwrap()).unwrap();
        assert!(are_isomorphic(&odd, &zadori(2 * n as usize + 1).unwrap(), true).unwrap().is_some());
        assert!(are_isomorphic(&even, &zadori(2 * n as usize + 2).unwrap(), true).unwrap().is_some());
    }
}

#[test]
fn census_five_up_to_isomorphism() {
    let iso = census(5, CensusMode::UpToIso { permute_relations: false }).unwrap();
    assert_eq!(iso.count, 4);
    let coarse = census(5, CensusMode::UpToIso { permute_relations: true }).unwrap();
    assert_eq!(coarse.count, 2);
    let z = zadori(5).unwrap();
    let mut like_zadori = 0;
    for labels in &iso.representatives {
        let m = System::from_label_vectors(5, labels).unwrap();
        assert!(is_semirigid(&m).semirigid);
        assert!(is_m3(&m).unwrap());
        if are_isomorphic(&m, &z, true).unwrap().is_some() {
            like_zadori += 1;
        }
    }
    assert!(like_zadori >= 1);
}

#[test]
fn simplex_four_one_has_only_trivial_endomorphisms() {
    let s = simplex_system(4, 1).unwrap();
    assert_eq!(s.n(), 4);
    assert_eq!(endomorphisms(&s, None).maps.len(), 5);
}

#[test]
fn matrix_and_json_round_trips() {
    for n in [3, 5, 6, 9] {
        let z = zadori(n).unwrap();
        assert_eq!(from_matrix(&to_matrix(&z)).unwrap(), z);
        assert_eq!(parse_system(&system_to_json(&z)).unwrap(), z);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificate_is_sound(c in grid_subset(6, 9)) {
        if maintheo_certificate(&c).unwrap().is_certified() {
            prop_assert!(is_semirigid(&induced_system(&c).unwrap()).semirigid);
        }
    }

    #[test]
    fn semirigid_systems_on_three_or_more_points_are_reduced(c in grid_subset(5, 8)) {
        let m = induced_system(&c).unwrap();
        if m.n() >= 3 && is_semirigid(&m).semirigid {
            prop_assert!(is_reduced(&m));
        }
    }

    #[test]
    fn normalization_preserves_semirigidity(c in grid_subset(6, 7)) {
        let a = is_semirigid(&induced_system(&c).unwrap()).semirigid;
        let b = is_semirigid(&induced_system(&normalize(&c)).unwrap()).semirigid;
        prop_assert_eq!(a, b);
        prop_assert_eq!(parse_points(&points_to_json(&c)).unwrap(), c);
    }

    #[test]
    fn partial_latin_squares_complete_to_nets(
        order in 1usize..5,
        picks in prop::collection::vec((0usize..5, 0usize..5, 0usize..5), 0..12),
    ) {
        let mut rows = vec![vec![None; order]; order];
        for (r, c, s) in picks {
            let (r, c, s) = (r % order, c % order, s % order);
            let clash = (0..order).any(|k| rows[r][k] == Some(s) || rows[k][c] == Some(s));
            if rows[r][c].is_none() && !clash {
                rows[r][c] = Some(s);
            }
        }
        let p = PartialLatinSquare::from_rows(rows).unwrap();
        let text = semirigid::io::format_latin(&p);
        prop_assert_eq!(&parse_latin(&text).unwrap(), &p);
        let full = evans_extend(&p).unwrap();
        prop_assert!(full.order() <= 2 * order.max(1));
        prop_assert!(full.contains(&p));
        let net = latin_to_3net(&full);
        prop_assert!(is_3net(&net).unwrap());
        let (back, _) = to_partial_latin(&net).unwrap();
        prop_assert_eq!(back.filled(), full.order() * full.order());
    }
}
