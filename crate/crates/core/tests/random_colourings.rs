//! Properties of surfaces built from randomly coloured right-angled polygons,
//! each checked against a count or search that does not share code with the
//! construction.

use std::sync::Arc;

use proptest::prelude::*;

use geobound_core::complex::{isomorphic, quotient, realize};
use geobound_core::gf2::BitVector;
use geobound_core::groups::coset_enumerate;
use geobound_core::isometry::{has_invariant_cell, IsometryGroup};
use geobound_core::polytope::build_polygon;
use geobound_core::{Colouring, Presentation};

/// A proper colouring of an `m`-gon in rank `k`: consecutive colours differ
/// and are nonzero, and together they span.
fn colourings() -> impl Strategy<Value = Colouring> {
    (5usize..11, 2usize..4)
        .prop_flat_map(|(m, k)| (Just(m), Just(k), proptest::collection::vec(1u8..(1 << k), m)))
        .prop_filter_map("not proper or not spanning", |(m, k, bits)| {
            let colours: Vec<BitVector> = bits.iter().map(|&b| BitVector::new(b, k).unwrap()).collect();
            if (0..m).any(|i| colours[i] == colours[(i + 1) % m]) {
                return None;
            }
            Colouring::new(Arc::new(build_polygon(m).ok()?), k, colours).ok()
        })
}

/// Whether some linear functional takes the value 1 on every colour, by
/// trying all `2^k` of them.
fn has_unit_functional(lambda: &Colouring) -> bool {
    let k = lambda.rank();
    BitVector::all(k).any(|f| lambda.colours().iter().all(|c| f.dot(c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_characteristic_counts_copies(lambda in colourings()) {
        let c = realize(&lambda).unwrap();
        let (m, copies) = (lambda.polytope().facet_count() as i64, 1i64 << lambda.rank());
        // every corner of every copy is shared by four copies, every side by two
        prop_assert_eq!(c.cell_counts(), vec![(m * copies / 4) as usize, (m * copies / 2) as usize, copies as usize]);
        prop_assert_eq!(c.euler(), copies * (4 - m) / 4);
        prop_assert!(c.is_closed_pseudomanifold());
        prop_assert_eq!(c.analyze().components, 1);
    }

    #[test]
    fn orientable_iff_unit_functional(lambda in colourings()) {
        let c = realize(&lambda).unwrap();
        prop_assert_eq!(c.analyze().orientable, has_unit_functional(&lambda));
    }

    #[test]
    fn fixed_points_match_brute_force(lambda in colourings(), pick in any::<prop::sample::Index>()) {
        let lambda = Arc::new(lambda);
        let group = IsometryGroup::new(lambda.clone()).unwrap();
        let c = realize(&lambda).unwrap();
        let i = pick.index(group.order());
        prop_assert_eq!(group.has_fixed_point(i), has_invariant_cell(&group.element(i), &lambda, &c));
    }

    #[test]
    fn free_involutions_halve_euler_characteristic(lambda in colourings()) {
        let lambda = Arc::new(lambda);
        let group = IsometryGroup::new(lambda.clone()).unwrap();
        let c = group.complex();
        for i in 1..group.order() {
            if group.mul(i, i) == 0 && !group.has_fixed_point(i) {
                let q = quotient(c, &[group.flag_map(i)]).unwrap();
                prop_assert_eq!(2 * q.euler(), c.euler());
                prop_assert_eq!(q.flag_count() * 2, c.flag_count());
            }
        }
    }

    #[test]
    fn rotating_the_labels_gives_an_isomorphic_surface(lambda in colourings(), shift in 1usize..10) {
        let m = lambda.polytope().facet_count();
        let rotated: Vec<BitVector> = (0..m).map(|i| lambda.colour((i + shift) % m)).collect();
        let other = Colouring::new(lambda.polytope_arc().clone(), lambda.rank(), rotated).unwrap();
        prop_assert!(isomorphic(&realize(&lambda).unwrap(), &realize(&other).unwrap()).is_some());
    }

    #[test]
    fn dihedral_groups_enumerate(n in 2usize..60) {
        let pres: Presentation = format!("r, s | r^{n} = 1, s^2 = 1, s r s r = 1").parse().unwrap();
        prop_assert_eq!(coset_enumerate(&pres, &[], 1_000_000).unwrap(), 2 * n);
    }
}
