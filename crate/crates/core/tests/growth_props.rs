use std::sync::Arc;

use graphcat::corpus;
use graphcat::graph::morphism::contract_edges;
use graphcat::graph::{
    enumerate_contractions, DirectedEdge, Family, OrderedInjection, OrderedInjectionTuple,
};
use graphcat::growth::{
    dimension_table, factor_through_family, factors_nontrivially, grid_points, Functional,
};
use proptest::prelude::*;

fn check_table(functional: Functional, family: &Family, axes: &[(usize, usize)]) {
    let table = dimension_table(&functional, family, axes).unwrap();
    assert_eq!(table.cells.len(), grid_points(axes).len());
    for cell in &table.cells {
        let member = family.member(&cell.sizes).unwrap();
        assert_eq!(
            cell.value,
            functional.evaluate(&member.graph),
            "{} at {:?}",
            functional.name(),
            cell.sizes
        );
    }
}

#[test]
fn tables_match_direct_evaluation() {
    let theta = Family::subdivision(
        Arc::new(corpus::melon()),
        vec![DirectedEdge::forward(0), DirectedEdge::forward(1)],
    )
    .unwrap();
    check_table(
        Functional::UconfBetti { i: 1, n: 2 },
        &theta,
        &[(1, 3), (1, 4)],
    );
    check_table(
        Functional::KlCoefficient { i: 1 },
        &theta,
        &[(1, 4), (2, 3)],
    );
    let star = Family::sprout(Arc::new(corpus::star(3)), vec![0, 1]).unwrap();
    check_table(Functional::OsDimension { i: 2 }, &star, &[(0, 3), (1, 2)]);
    let loops =
        Family::subdivision(Arc::new(corpus::rose(2)), vec![DirectedEdge::forward(0)]).unwrap();
    check_table(
        Functional::HomCount {
            target: Arc::new(corpus::melon()),
        },
        &loops,
        &[(1, 4)],
    );
}

fn theta_family() -> Family {
    Family::subdivision(
        Arc::new(corpus::melon()),
        (0..3).map(DirectedEdge::forward).collect(),
    )
    .unwrap()
}

#[test]
fn family_morphisms_factor() {
    let family = theta_family();
    let member = family.member(&[3, 2, 2]).unwrap();
    let f = OrderedInjectionTuple(vec![
        OrderedInjection::new(vec![1, 3], 3).unwrap(),
        OrderedInjection::identity(2),
        OrderedInjection::new(vec![2], 2).unwrap(),
    ]);
    let phi = family.morphism(&f).unwrap();
    let fac = factor_through_family(&family, &member, &phi)
        .unwrap()
        .expect("factors");
    assert_eq!(fac.rest.compose(&fac.step).unwrap(), phi);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Post-composing a contraction that factors through the family keeps it
    /// factoring.
    #[test]
    fn factoring_is_closed_under_postcomposition(
        sizes in prop::collection::vec(1usize..=3, 3),
        pick in any::<prop::sample::Index>(),
        edge in any::<prop::sample::Index>(),
    ) {
        let family = theta_family();
        let member = family.member(&sizes).unwrap();
        let target = Arc::new(corpus::theta(&[1, 1, 2]));
        let phis = enumerate_contractions(&member.graph, &target).unwrap();
        prop_assume!(!phis.is_empty());
        let phi = &phis[pick.index(phis.len())];
        let e = edge.index(target.edge_count());
        prop_assume!(!target.edge(e).is_loop());
        let psi = contract_edges(&target, &[e]).unwrap();
        let both = psi.compose(phi).unwrap();
        if factors_nontrivially(&family, &member, phi).unwrap() {
            prop_assert!(factors_nontrivially(&family, &member, &both).unwrap());
        }
        // every edge of a subdivided melon lies on a site
        prop_assert_eq!(factors_nontrivially(&family, &member, phi).unwrap(), !phi.contracted_edges().is_empty());
    }
}
