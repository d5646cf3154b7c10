mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::fixture::*;
use edgefem::convert::{edgend, local_edges, node_to_edge, EdgeConverter, Slot};
use edgefem::error::Error;
use edgefem::mesh::{detect_boundary, Element, ElementKind, NodalMesh};
use proptest::prelude::*;

#[test]
fn fixture_edgecon_and_edgenode() {
    let m = fixture();
    let em = node_to_edge(&m).unwrap();
    let rows: Vec<Vec<i64>> = EDGECON.iter().map(|r| r.to_vec()).collect();
    assert_eq!(em.edgecon(), rows.as_slice());
    let ends: Vec<(usize, usize)> = em.registry().edgenodes().iter().map(|&(a, b)| (a + 1, b + 1)).collect();
    assert_eq!(ends, EDGENODE);
}

#[test]
fn fixture_registry_after_first_element() {
    let m = fixture();
    let mut conv = EdgeConverter::new(&m).unwrap();
    assert!(conv.step().unwrap());
    let reg = conv.registry();
    assert_eq!(reg.last_edge(), 4);
    assert_eq!(reg.nodeedgenum(), &[2, 2, 0, 2, 2, 0, 0, 0, 0]);
    for (n, row) in NODEEDGE_AFTER_FIRST.iter().enumerate() {
        assert_eq!(&reg.paper_nodeedge_row(n), row, "node {}", n + 1);
    }
}

#[test]
fn fixture_final_nodeedge() {
    let m = fixture();
    let em = node_to_edge(&m).unwrap();
    let reg = em.registry();
    assert_eq!(reg.nodeedgenum(), &NODEEDGENUM_FINAL);
    for (n, row) in NODEEDGE_FINAL.iter().enumerate() {
        assert_eq!(&reg.paper_nodeedge_row(n), row, "node {}", n + 1);
    }
    assert_eq!(reg.nndexn(), 0);
    reg.check_invariants().unwrap();
}

#[test]
fn published_node2_is_a_reordering() {
    let m = fixture();
    let em = node_to_edge(&m).unwrap();
    let pairs = |row: &[i64]| {
        let mut p: Vec<(i64, i64)> = row.chunks(2).map(|c| (c[0], c[1])).filter(|&(e, _)| e != 0).collect();
        p.sort_unstable();
        p
    };
    let published = [-3, 1, 2, 5, 6, 3, 0, 0];
    assert_eq!(pairs(&em.registry().paper_nodeedge_row(1)), pairs(&published));
}

#[test]
fn edgend_on_fixture() {
    let m = fixture();
    let el = &m.elements()[1];
    // Local edge 2 of the second element joins its local nodes 4 and 3.
    assert_eq!(edgend(2, &el.nodes, el.kind).unwrap(), (2, 5));
    assert!(matches!(edgend(5, &el.nodes, el.kind), Err(Error::IndexOutOfRange { index: 5, .. })));
}

#[test]
fn fan_hub_spills_into_overflow_rows() {
    let m = fan(8);
    let em = node_to_edge(&m).unwrap();
    let reg = em.registry();
    assert_eq!(reg.nodeedgenum()[0], 8);
    assert_eq!(reg.ndexn(), &[0]);
    let oracle = brute_force_incidence(reg.edgenodes(), 0);
    assert_eq!(oracle.len(), 8);
    let primary: Vec<Slot> = reg.nodeedge(0).iter().flatten().copied().collect();
    let extra: Vec<Slot> = reg.nodeedgeexn(0).iter().flatten().copied().collect();
    assert_eq!(primary, oracle[..4]);
    assert_eq!(extra, oracle[4..]);
    // Spoke k > 1 is first created as the closing edge rim -> hub of triangle k - 1.
    assert_eq!(extra.iter().map(|s| s.edge).collect::<Vec<_>>(), vec![-9, -11, -13, -15]);
    let row = reg.paper_nodeedgeexn_row(0);
    assert_eq!(&row[..8], &[-9, 6, -11, 7, -13, 8, -15, 9]);
    assert!(row[8..].iter().all(|&v| v == 0));
    reg.check_invariants().unwrap();
}

#[test]
fn fan_with_thirteen_spokes_overflows() {
    assert!(node_to_edge(&fan(12)).is_ok());
    assert!(matches!(node_to_edge(&fan(13)), Err(Error::EdgeOverflow(1))));
}

#[test]
fn second_order_kinds_register_all_local_edges() {
    for (kind, coords, nodes) in [
        (
            ElementKind::Tri6,
            vec![[0.0, 0.0], [2.0, 0.0], [0.0, 2.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
            vec![0, 1, 2, 3, 4, 5],
        ),
        (
            ElementKind::Quad9,
            (0..9).map(|k| [(k % 3) as f64, (k / 3) as f64]).collect(),
            (0..9).collect(),
        ),
    ] {
        let m = NodalMesh::from_coords(&coords, vec![Element::new(kind, nodes)]).unwrap();
        let em = node_to_edge(&m).unwrap();
        assert_eq!(em.num_edges(), kind.edges_per_element());
        assert_eq!(em.element_edges(0), (1..=kind.edges_per_element() as i64).collect::<Vec<_>>());
        let b = detect_boundary(&em).unwrap();
        assert_eq!(b.interior_edges().len(), if kind == ElementKind::Tri6 { 2 } else { 4 });
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn registry_matches_brute_force(m in common::arb_mesh()) {
        let em = node_to_edge(&m).unwrap();
        let reg = em.registry();
        prop_assert!(reg.check_invariants().is_ok());
        // Distinct undirected node pairs over all local edges.
        let mut pairs = BTreeSet::new();
        for el in m.elements() {
            for &(a, b) in local_edges(el.kind) {
                let (u, v) = (el.nodes[a - 1], el.nodes[b - 1]);
                pairs.insert((u.min(v), u.max(v)));
            }
        }
        prop_assert_eq!(pairs.len(), em.num_edges());
        for node in 0..m.num_nodes() {
            let slots: Vec<Slot> = reg.slots(node).collect();
            prop_assert_eq!(slots, brute_force_incidence(reg.edgenodes(), node));
        }
        // Each signed entry points along its local edge.
        for (e, el) in m.elements().iter().enumerate() {
            for (i, &s) in em.element_edges(e).iter().enumerate() {
                let (a, b) = local_edges(el.kind)[i];
                let (u, v) = (el.nodes[a - 1], el.nodes[b - 1]);
                let (p, q) = em.edgenode(s.unsigned_abs() as usize);
                prop_assert_eq!(if s > 0 { (p, q) } else { (q, p) }, (u, v));
            }
        }
    }

    #[test]
    fn euler_characteristic_of_first_order_meshes(m in common::arb_first_order_mesh()) {
        let em = node_to_edge(&m).unwrap();
        let chi = m.num_nodes() as i64 - em.num_edges() as i64 + m.num_elements() as i64;
        prop_assert_eq!(chi, 1);
    }

    #[test]
    fn boundary_is_invariant_under_renumbering((m, perm, order) in common::with_shuffles(common::arb_mesh())) {
        let boundary_pairs = |mesh: &NodalMesh, relabel: &dyn Fn(usize) -> usize| {
            let em = node_to_edge(mesh).unwrap();
            let b = detect_boundary(&em).unwrap();
            b.boundary_edges()
                .into_iter()
                .map(|e| {
                    let (u, v) = em.edgenode(e);
                    let (u, v) = (relabel(u), relabel(v));
                    (u.min(v), u.max(v))
                })
                .collect::<BTreeSet<_>>()
        };
        let shuffled = m.permuted(&perm, &order).unwrap();
        let before = boundary_pairs(&m, &|n| perm[n]);
        let after = boundary_pairs(&shuffled, &|n| n);
        prop_assert_eq!(before, after);
    }

    #[test]
    fn incidence_counts_classify_boundary(m in common::arb_mesh()) {
        let em = node_to_edge(&m).unwrap();
        let b = detect_boundary(&em).unwrap();
        let mut count = BTreeMap::new();
        for row in em.edgecon() {
            for s in row {
                *count.entry(s.unsigned_abs() as usize).or_insert(0) += 1;
            }
        }
        for e in b.boundary_edges() {
            prop_assert_eq!(count[&e], 1);
        }
        for e in b.interior_edges() {
            prop_assert!(count[&e] >= 1 && count[&e] <= 2);
        }
    }
}
