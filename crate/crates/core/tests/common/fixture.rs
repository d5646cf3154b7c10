use edgefem::convert::Slot;
use edgefem::mesh::{parse_mesh, Element, ElementKind, NodalMesh};

/// 3 x 3 node grid numbered column by column, four quadrilaterals.
pub const FIXTURE: &str = "\
mesh2d v1
nodes 9
1 0 0
2 0 1
3 0 2
4 1 0
5 1 1
6 1 2
7 2 0
8 2 1
9 2 2
elements 4
1 quad4 1 4 5 2
2 quad4 2 5 6 3
3 quad4 4 7 8 5
4 quad4 5 8 9 6
end
";

pub const EDGECON: [[i64; 4]; 4] = [[1, 2, 3, 4], [2, 5, 6, 7], [8, 9, 4, 10], [9, 11, 7, 12]];
pub const EDGENODE: [(usize, usize); 12] = [
    (1, 4),
    (2, 5),
    (1, 2),
    (4, 5),
    (3, 6),
    (2, 3),
    (5, 6),
    (4, 7),
    (5, 8),
    (7, 8),
    (6, 9),
    (8, 9),
];
// Slots are kept in creation order. The published listing differs in two
// entries: node 2 lists edge 3 ahead of edge 2 although edge 2 is created
// first, and node 8 gives 8 (itself) as the far end of edge 7 -> 8.
pub const NODEEDGE_AFTER_FIRST: [[i64; 8]; 9] = [
    [1, 4, 3, 2, 0, 0, 0, 0],
    [2, 5, -3, 1, 0, 0, 0, 0],
    [0; 8],
    [-1, 1, 4, 5, 0, 0, 0, 0],
    [-2, 2, -4, 4, 0, 0, 0, 0],
    [0; 8],
    [0; 8],
    [0; 8],
    [0; 8],
];
pub const NODEEDGE_FINAL: [[i64; 8]; 9] = [
    [1, 4, 3, 2, 0, 0, 0, 0],
    [2, 5, -3, 1, 6, 3, 0, 0],
    [5, 6, -6, 2, 0, 0, 0, 0],
    [-1, 1, 4, 5, 8, 7, 0, 0],
    [-2, 2, -4, 4, 7, 6, 9, 8],
    [-5, 3, -7, 5, 11, 9, 0, 0],
    [-8, 4, 10, 8, 0, 0, 0, 0],
    [-9, 5, -10, 7, 12, 9, 0, 0],
    [-11, 6, -12, 8, 0, 0, 0, 0],
];
pub const NODEEDGENUM_FINAL: [usize; 9] = [2, 3, 2, 3, 4, 3, 2, 3, 2];

pub fn fixture() -> NodalMesh {
    parse_mesh(FIXTURE).unwrap()
}

/// Hub node 0 with `k` rim nodes; triangle `t` is (hub, rim t, rim t+1).
pub fn fan(k: usize) -> NodalMesh {
    let mut coords = vec![[0.0, 0.0]];
    for t in 0..k {
        let a = std::f64::consts::TAU * t as f64 / k as f64;
        coords.push([a.cos(), a.sin()]);
    }
    let elements = (0..k)
        .map(|t| Element::new(ElementKind::Tri3, vec![0, 1 + t, 1 + (t + 1) % k]))
        .collect();
    NodalMesh::from_coords(&coords, elements).unwrap()
}

/// Incident (signed edge, other node) pairs from edgenode alone, in edge order.
pub fn brute_force_incidence(ends: &[(usize, usize)], node: usize) -> Vec<Slot> {
    ends.iter()
        .enumerate()
        .filter_map(|(k, &(a, b))| {
            let e = k as i64 + 1;
            if a == node {
                Some(Slot { edge: e, other: b })
            } else if b == node {
                Some(Slot { edge: -e, other: a })
            } else {
                None
            }
        })
        .collect()
}
