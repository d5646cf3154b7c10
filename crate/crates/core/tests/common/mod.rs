#![allow(dead_code)]

pub mod checks;
pub mod fixture;

use std::f64::consts::PI;

use edgefem::mesh::NodalMesh;
use edgefem::meshgen::{gen_disk, gen_square_with, Diagonal, DiskParams, ElementFamily};
use proptest::prelude::*;

pub const SINGLE_FAMILIES: [ElementFamily; 4] = [ElementFamily::T3, ElementFamily::Q4, ElementFamily::T8, ElementFamily::Q12];

/// Smooth interior-preserving warp of the unit square; `amp` below 0.08
/// keeps every element valid.
pub fn warp(amp: f64) -> impl Fn([f64; 2]) -> [f64; 2] {
    move |[x, y]| {
        let s = (PI * x).sin() * (PI * y).sin();
        [x + amp * s, y + 0.5 * amp * s * (2.0 * PI * x).cos()]
    }
}

/// Warped structured square of side 1.
pub fn warped_square(n: usize, family: ElementFamily, alternating: bool, amp: f64) -> NodalMesh {
    let diagonal = if alternating { Diagonal::Alternating } else { Diagonal::Uniform };
    gen_square_with(n, 1.0, family, diagonal).unwrap().map_coords(warp(amp))
}

pub fn arb_square() -> impl Strategy<Value = NodalMesh> {
    (1usize..=3, 0usize..4, any::<bool>(), -0.07f64..0.07)
        .prop_map(|(n, f, alt, amp)| warped_square(n, SINGLE_FAMILIES[f], alt, amp))
}

pub fn arb_disk() -> impl Strategy<Value = NodalMesh> {
    (3usize..=12, 1usize..=3, any::<bool>()).prop_map(|(core, rings, second)| {
        let family = if second { ElementFamily::Mixed2 } else { ElementFamily::Mixed1 };
        gen_disk(&DiskParams::new(core, rings), family).unwrap()
    })
}

/// Any small valid mesh: warped squares of every family and mixed disks.
pub fn arb_mesh() -> impl Strategy<Value = NodalMesh> {
    prop_oneof![3 => arb_square(), 1 => arb_disk()]
}

pub fn arb_first_order_mesh() -> impl Strategy<Value = NodalMesh> {
    prop_oneof![
        (2usize..=4, any::<bool>(), any::<bool>(), -0.07f64..0.07).prop_map(|(n, quad, alt, amp)| {
            let f = if quad { ElementFamily::Q4 } else { ElementFamily::T3 };
            warped_square(n, f, alt, amp)
        }),
        (3usize..=12, 1usize..=3).prop_map(|(c, r)| gen_disk(&DiskParams::new(c, r), ElementFamily::Mixed1).unwrap()),
    ]
}

/// A mesh with a random node permutation (`perm[old] = new`) and element order.
pub fn with_shuffles(mesh: impl Strategy<Value = NodalMesh>) -> impl Strategy<Value = (NodalMesh, Vec<usize>, Vec<usize>)> {
    mesh.prop_flat_map(|m| {
        let perm = Just((0..m.num_nodes()).collect::<Vec<_>>()).prop_shuffle();
        let order = Just((0..m.num_elements()).collect::<Vec<_>>()).prop_shuffle();
        (Just(m), perm, order)
    })
}

pub fn rotate(theta: f64) -> impl Fn([f64; 2]) -> [f64; 2] {
    let (s, c) = theta.sin_cos();
    move |[x, y]| [c * x - s * y, s * x + c * y]
}
