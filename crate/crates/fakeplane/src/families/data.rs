//! Frozen golden data: recorded presentation matrices and dual-graph states.
//!
//! Graphs that the constructions must reproduce are written out here as
//! data. Self-intersections and adjacencies were derived with the blow-up
//! engine itself where the published pictures leave an edge ambiguous; the
//! recorded values for the matrices are the published ones.

use crate::exactalg::IntMatrix;
use crate::moves::{ConfigCurve, CurveConfig};
use crate::surface::{DualGraph, GraphEdge, GraphNode};

pub fn node(label: &str, self_int: i64) -> GraphNode {
    GraphNode {
        label: label.into(),
        self_int,
        real: true,
    }
}

pub fn pair_node(label: &str, self_int: i64) -> GraphNode {
    GraphNode {
        label: label.into(),
        self_int,
        real: false,
    }
}

pub fn edge(a: &str, b: &str) -> GraphEdge {
    GraphEdge {
        a: a.into(),
        b: b.into(),
        weight: 1,
    }
}

/// Resolution graph of the cuspidal-cubic pair together with the fiber
/// tangent: a chain B - C - E5 - E4 - E3 with E1 attached to E3 and the
/// branch E3 - E2 - T.
pub fn cuspidal_cubic_resolution_graph() -> DualGraph {
    DualGraph {
        nodes: vec![
            node("B", 0),
            node("C", -1),
            node("E1", -3),
            node("E2", -2),
            node("E3", -2),
            node("E4", -2),
            node("E5", -2),
            node("T", -1),
        ],
        edges: vec![
            edge("B", "C"),
            edge("C", "E5"),
            edge("E5", "E4"),
            edge("E4", "E3"),
            edge("E3", "E1"),
            edge("E3", "E2"),
            edge("E2", "T"),
        ],
    }
}

/// Boundary tree of the Hirzebruch-based construction: the two sections meet
/// once, the conjugate fiber pair hangs on the negative section and the
/// conjugate exceptional pair on the positive one.
pub fn h2p_boundary_graph(p: i64) -> DualGraph {
    DualGraph {
        nodes: vec![
            node("C0", -2 * p),
            node("C1", 2 * p),
            pair_node("l", -2),
            pair_node("l_bar", -2),
            pair_node("E", -2),
            pair_node("E_bar", -2),
        ],
        edges: vec![
            edge("C0", "C1"),
            edge("C0", "l"),
            edge("C0", "l_bar"),
            edge("C1", "E"),
            edge("C1", "E_bar"),
        ],
    }
}

/// Boundary tree of the line-configuration construction: the untouched line
/// is the hub, each of the other lines carries the exceptional curve it
/// still meets.
pub fn y333_boundary_graph() -> DualGraph {
    DualGraph {
        nodes: vec![
            node("l0", 1),
            node("l1", -2),
            node("l2", -2),
            node("l3", -2),
            node("E12", -2),
            node("E23", -2),
            node("E13", -2),
        ],
        edges: vec![
            edge("l0", "l1"),
            edge("l0", "l2"),
            edge("l0", "l3"),
            edge("l1", "E13"),
            edge("l2", "E12"),
            edge("l3", "E23"),
        ],
    }
}

/// Boundary tree of the conjugate-chain construction with one pair,
/// multiplicities (2, 3) and a length-one real chain.
pub fn kod1_conjugate_default_boundary_graph() -> DualGraph {
    DualGraph {
        nodes: vec![
            node("C0", -1),
            node("C1", -1),
            node("E0_0", -1),
            pair_node("E1_0", -2),
            pair_node("E1_0_bar", -2),
            pair_node("E1_1", -3),
            pair_node("E1_1_bar", -3),
            pair_node("E1_2", -2),
            pair_node("E1_2_bar", -2),
        ],
        edges: vec![
            edge("C0", "E0_0"),
            edge("C0", "E1_0"),
            edge("C0", "E1_0_bar"),
            edge("C1", "E0_0"),
            edge("C1", "E1_1"),
            edge("C1", "E1_1_bar"),
            edge("E1_0", "E1_2"),
            edge("E1_0_bar", "E1_2_bar"),
        ],
    }
}

/// Endpoint of the first pair-move sequence on the cuspidal-cubic
/// resolution: the boundary transform only.
pub fn theta1_endpoint_graph() -> DualGraph {
    DualGraph {
        nodes: vec![node("B", -1), node("E1", 1), node("E2", -2), node("E3", -1)],
        edges: vec![edge("B", "E3"), edge("E1", "E3"), edge("E2", "E3")],
    }
}

/// Start state for the contraction sequence after the pair moves: the four
/// boundary-transform curves of the cuspidal cubic.
pub fn theta2_start_config() -> CurveConfig {
    CurveConfig {
        curves: vec![
            ConfigCurve {
                label: "B".into(),
                self_int: -1,
                pair: None,
            },
            ConfigCurve {
                label: "E1".into(),
                self_int: 1,
                pair: None,
            },
            ConfigCurve {
                label: "E2".into(),
                self_int: -2,
                pair: None,
            },
            ConfigCurve {
                label: "E3".into(),
                self_int: -1,
                pair: None,
            },
        ],
        inter: vec![
            ("B".into(), "E3".into(), 1),
            ("E1".into(), "E3".into(), 1),
            ("E2".into(), "E3".into(), 1),
        ],
        picard_rank: 8,
    }
}

/// Endpoint of that sequence: a fiber and a section meeting once.
pub fn theta2_endpoint_graph() -> DualGraph {
    DualGraph {
        nodes: vec![node("E1", 0), node("D1", 1)],
        edges: vec![edge("E1", "D1")],
    }
}

/// Start state for the contraction sequence on the cubic-surface side: a
/// chain B' - E5' - E3' - E2' - E1' with E4' attached to E3'. The adjacency
/// is forced by the recorded contraction order and endpoint.
pub fn theta2_prime_start_config() -> CurveConfig {
    CurveConfig {
        curves: vec![
            ConfigCurve {
                label: "Bp".into(),
                self_int: -1,
                pair: None,
            },
            ConfigCurve {
                label: "E5p".into(),
                self_int: -2,
                pair: None,
            },
            ConfigCurve {
                label: "E3p".into(),
                self_int: -2,
                pair: None,
            },
            ConfigCurve {
                label: "E4p".into(),
                self_int: -2,
                pair: None,
            },
            ConfigCurve {
                label: "E2p".into(),
                self_int: -2,
                pair: None,
            },
            ConfigCurve {
                label: "E1p".into(),
                self_int: 0,
                pair: None,
            },
        ],
        inter: vec![
            ("Bp".into(), "E5p".into(), 1),
            ("E5p".into(), "E3p".into(), 1),
            ("E3p".into(), "E2p".into(), 1),
            ("E3p".into(), "E4p".into(), 1),
            ("E2p".into(), "E1p".into(), 1),
        ],
        picard_rank: 7,
    }
}

/// Endpoint: two rulings of a quadric, meeting once.
pub fn theta2_prime_endpoint_graph() -> DualGraph {
    DualGraph {
        nodes: vec![node("E1p", 0), node("E2p", 0)],
        edges: vec![edge("E1p", "E2p")],
    }
}

/// Endpoint of the Cremona-companion move for (mu, nu) = (3, 1): the conic
/// transform becomes a fiber, the new exceptional curve a section of
/// self-intersection two, and the old chain tail a second ruling direction.
pub fn tricuspidal_companion_endpoint_graph() -> DualGraph {
    DualGraph {
        nodes: vec![node("Dt", 0), node("G", 2), node("Et3", 0)],
        edges: vec![edge("Dt", "G"), edge("Et3", "G"), edge("Dt", "Et3")],
    }
}

/// Recorded block presentation of the inclusion map for the cubic-surface
/// construction: identity on the five resolution classes, multiplication by
/// three on the last; the unconstrained off-diagonal block is recorded as
/// zero since the cokernel does not depend on it.
pub fn e6_presentation_matrix() -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![1, 0, 0, 0, 0, 0],
        vec![0, 1, 0, 0, 0, 0],
        vec![0, 0, 1, 0, 0, 0],
        vec![0, 0, 0, 1, 0, 0],
        vec![0, 0, 0, 0, 1, 0],
        vec![0, 0, 0, 0, 0, 3],
    ])
}

/// Recorded presentation of the inclusion map for the Hirzebruch-based
/// construction in the proper-transform basis (C0, fiber, E, E_bar, F,
/// F_bar), columns (C0, C1, l, l_bar, E, E_bar).
pub fn h2p_presentation_matrix(p: i64) -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![1, 1, 0, 0, 0, 0],
        vec![0, 2 * p + 1, 1, 1, 0, 0],
        vec![0, -1, -1, 0, 1, 0],
        vec![0, -1, 0, -1, 0, 1],
        vec![0, -1, -2, 0, 0, 0],
        vec![0, -1, 0, -2, 0, 0],
    ])
}

/// Recorded presentation of the inclusion map for the line-configuration
/// construction in the proper-transform basis (l0, E12, E23, E13, E1, E2,
/// E3), columns (l0, l1, l2, l3, E12, E23, E13). Its determinant is -9.
pub fn y333_presentation_matrix() -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![1, 1, 1, 1, 0, 0, 0],
        vec![0, -1, -1, 0, 1, 0, 0],
        vec![0, 0, -1, -1, 0, 1, 0],
        vec![0, -1, 0, -1, 0, 0, 1],
        vec![0, -2, -1, 0, 0, 0, 0],
        vec![0, 0, -2, -1, 0, 0, 0],
        vec![0, -1, 0, -2, 0, 0, 0],
    ])
}

/// Recorded presentation of the inclusion map shared by the three
/// general-type quartic constructions, in the bases (T, F1, F2, D) and
/// (T, F1, F2, A).
pub fn gentype_presentation_matrix() -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![1, 0, 0, 4],
        vec![0, 1, 0, 3],
        vec![0, 0, 1, 2],
        vec![0, 0, 0, 1],
    ])
}

/// Recorded presentation for the second quartic construction in the natural
/// basis (line class, exceptional class): determinant -3.
pub fn quartic_kod1_presentation_matrix() -> IntMatrix {
    IntMatrix::from_rows(&[vec![4, 1], vec![-1, -1]])
}
