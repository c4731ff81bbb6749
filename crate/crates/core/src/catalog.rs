//! Ready-made descriptors for well-understood singular varieties.

use std::collections::BTreeMap;

use crate::analysis::{product_stringy, ExceptionalFiberDescriptor, FiberComponent, PairCount};
use crate::hodge::HodgeDiamond;
use crate::sncweights::SncComplexData;
use crate::stringy::{Component, ResolutionDescriptor};

fn diagonal(dim: u32, diag: &[u64]) -> HodgeDiamond {
    HodgeDiamond::from_entries(dim, diag.iter().enumerate().map(|(p, &h)| ((p as u32, p as u32), h)))
        .expect("diagonal diamonds are symmetric")
}

pub fn smooth_p3() -> ResolutionDescriptor {
    ResolutionDescriptor::smooth("P^3", HodgeDiamond::projective_space(3)).expect("valid")
}

/// Quadric cone over `P^1 x P^1` in `P^4`, resolved by blowing up the node.
/// The exceptional divisor is `P^1 x P^1` with discrepancy 1.
pub fn node_blowup() -> ResolutionDescriptor {
    node_with_discrepancy(1, "nodal quadric threefold, blow-up of the node")
}

/// The same blow-up with the discrepancy deliberately set to 2.
pub fn node_blowup_mislabeled() -> ResolutionDescriptor {
    node_with_discrepancy(2, "nodal quadric threefold, blow-up with wrong discrepancy 2")
}

fn node_with_discrepancy(a: u32, label: &str) -> ResolutionDescriptor {
    ResolutionDescriptor::from_parts(
        3,
        label,
        vec![Component::new(1, a)],
        [
            (vec![], diagonal(3, &[1, 3, 3, 1])),
            (vec![1], HodgeDiamond::quadric_surface()),
        ],
    )
    .expect("valid")
}

/// Small resolution of the nodal quadric threefold: crepant, no exceptional divisor.
pub fn node_small_resolution() -> ResolutionDescriptor {
    ResolutionDescriptor::smooth("nodal quadric threefold, small resolution", diagonal(3, &[1, 2, 2, 1]))
        .expect("valid")
}

/// Blow-up of a smooth point of `P^3`; the exceptional `P^2` has discrepancy 2.
pub fn blowup_point_p3() -> ResolutionDescriptor {
    ResolutionDescriptor::from_parts(
        3,
        "P^3 resolved by blowing up a point",
        vec![Component::new(1, 2)],
        [
            (vec![], diagonal(3, &[1, 2, 2, 1])),
            (vec![1], HodgeDiamond::projective_space(2)),
        ],
    )
    .expect("valid")
}

/// Burkhardt quartic threefold: 45 nodes, each blown up to a `P^1 x P^1` of
/// discrepancy 1, with `h^{1,1}(Y_0) = 61` and `h^{2,0}(Y_0) = 0`.
///
/// The 45 disjoint divisors are grouped into one component.
pub fn burkhardt_x0() -> ResolutionDescriptor {
    ResolutionDescriptor::from_parts(
        3,
        "Burkhardt quartic",
        vec![Component::new(1, 1)],
        [
            (vec![], diagonal(3, &[1, 61, 61, 1])),
            (vec![1], HodgeDiamond::quadric_surface().copies(45)),
        ],
    )
    .expect("valid")
}

pub fn burkhardt_times_p1() -> ResolutionDescriptor {
    let d = product_stringy(&burkhardt_x0(), &HodgeDiamond::projective_space(1)).expect("P^1 is smooth");
    d.map_strata(d.dim(), "Burkhardt quartic x P^1", |_, h| h.clone())
}

/// A fourfold whose only exceptional divisor has discrepancy 2 and large
/// `h^{1,1}`, so that `a_{2,2} = 1 - 5 < 0`. Not claimed to be geometric.
pub fn synthetic_negative_fourfold() -> ResolutionDescriptor {
    ResolutionDescriptor::from_parts(
        4,
        "synthetic fourfold with negative a_{2,2}",
        vec![Component::new(1, 2)],
        [
            (vec![], diagonal(4, &[1, 1, 1, 1, 1])),
            (vec![1], diagonal(3, &[1, 5, 5, 1])),
        ],
    )
    .expect("valid")
}

/// Three `P^1 x P^1` of discrepancy 1 meeting pairwise in a line, with no
/// triple point: the dual complex is a hollow triangle.
pub fn triangle_descriptor() -> ResolutionDescriptor {
    let line = HodgeDiamond::projective_space(1);
    ResolutionDescriptor::from_parts(
        3,
        "cycle of three quadric surfaces",
        (1..=3).map(|id| Component::new(id, 1)).collect(),
        [
            (vec![], diagonal(3, &[1, 4, 4, 1])),
            (vec![1], HodgeDiamond::quadric_surface()),
            (vec![2], HodgeDiamond::quadric_surface()),
            (vec![3], HodgeDiamond::quadric_surface()),
            (vec![1, 2], line.clone()),
            (vec![1, 3], line.clone()),
            (vec![2, 3], line),
        ],
    )
    .expect("valid")
}

fn quadric_complex(simplices: &[Vec<u32>]) -> SncComplexData {
    SncComplexData::from_dual_complex(simplices, |ids| match ids.len() {
        1 => HodgeDiamond::quadric_surface(),
        2 => HodgeDiamond::projective_space(1),
        _ => HodgeDiamond::point(),
    })
    .expect("valid complex")
}

/// SNC data of [`triangle_descriptor`]'s exceptional set.
pub fn triangle_snc() -> SncComplexData {
    quadric_complex(&[vec![1], vec![2], vec![3], vec![1, 2], vec![1, 3], vec![2, 3]])
}

/// Two quadric surfaces meeting along a line.
pub fn chain_snc() -> SncComplexData {
    quadric_complex(&[vec![1], vec![2], vec![1, 2]])
}

pub fn single_component_snc() -> SncComplexData {
    quadric_complex(&[vec![1]])
}

/// An ordinary double point: one `P^1 x P^1` of discrepancy 1.
pub fn node_fiber() -> ExceptionalFiberDescriptor {
    ExceptionalFiberDescriptor::new(
        "node",
        vec![FiberComponent {
            id: 1,
            discrepancy: 1,
            diamond: HodgeDiamond::quadric_surface(),
        }],
        vec![],
    )
    .expect("valid")
}

/// A `P^2` of discrepancy 2, as over a smooth point.
pub fn plane_fiber() -> ExceptionalFiberDescriptor {
    ExceptionalFiberDescriptor::new(
        "smooth point",
        vec![FiberComponent {
            id: 1,
            discrepancy: 2,
            diamond: HodgeDiamond::projective_space(2),
        }],
        vec![],
    )
    .expect("valid")
}

pub fn two_quadrics_fiber() -> ExceptionalFiberDescriptor {
    two_quadrics_fiber_with_ids(1, 2)
}

/// Two `P^1 x P^1` of discrepancy 1 meeting along one curve.
pub fn two_quadrics_fiber_with_ids(a: u32, b: u32) -> ExceptionalFiberDescriptor {
    let comp = |id| FiberComponent {
        id,
        discrepancy: 1,
        diamond: HodgeDiamond::quadric_surface(),
    };
    ExceptionalFiberDescriptor::new(
        "two quadrics",
        vec![comp(a), comp(b)],
        vec![PairCount { a, b, count: 1 }],
    )
    .expect("valid")
}

/// Every descriptor in the catalog, keyed by a short name.
pub fn all() -> BTreeMap<&'static str, ResolutionDescriptor> {
    BTreeMap::from([
        ("smooth_p3", smooth_p3()),
        ("node_blowup", node_blowup()),
        ("node_small", node_small_resolution()),
        ("node_mislabeled", node_blowup_mislabeled()),
        ("blowup_point_p3", blowup_point_p3()),
        ("burkhardt_x0", burkhardt_x0()),
        ("burkhardt_times_p1", burkhardt_times_p1()),
        ("negative_fourfold", synthetic_negative_fourfold()),
        ("triangle", triangle_descriptor()),
    ])
}
