//! Blow-up engine over minimal models.
//!
//! A [`SurfaceModel`] tracks the divisor class lattice of a surface obtained
//! from a minimal model (the projective plane or a Hirzebruch surface) by a
//! sequence of blow-ups, together with a registry of named curves and a
//! designated boundary. The basis convention is "minimal-model generators
//! plus total-transform exceptional classes": each blow-up appends one (or,
//! for a conjugate pair of centers, two) orthogonal (-1)-classes, and the
//! proper transform of a curve through the center is obtained by subtracting
//! multiplicity times the new class. Dual-graph weights are always derived
//! from the intersection form, never stored.
//!
//! Blow-ups return new values; models are immutable once built.

use std::collections::BTreeMap;
use std::sync::Arc;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{solve_integer_linear, IntMatrix};
use crate::lattice::{pair, DivisorClass, LatticeError, RealLattice};

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("unknown curve '{0}'")]
    UnknownCurve(String),
    #[error("curve '{0}' already exists")]
    DuplicateCurve(String),
    #[error("class of '{0}' is not compatible with its realness tag")]
    RealnessMismatch(String),
    #[error("a real point cannot lie on '{0}' without lying on its conjugate '{1}'")]
    RealPointOnHalfPair(String, String),
    #[error("incidence multiplicities must be positive")]
    BadMultiplicity,
    #[error("curves '{0}' and '{1}' do not meet (pairing {2})")]
    CurvesDoNotMeet(String, String, BigInt),
    #[error("chain target ({0}, {1}) must be coprime with 1 <= low <= high")]
    BadChainTarget(BigInt, BigInt),
    #[error("boundary curves '{0}' and '{1}' have negative intersection {2}")]
    NegativeBoundaryIntersection(String, String, BigInt),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Realness of a registered curve. Conjugate pairs point at each other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Realness {
    Real,
    ConjugateOf(String),
}

#[derive(Debug, Clone)]
pub struct Curve {
    pub class: DivisorClass,
    pub realness: Realness,
}

/// Where a blow-up center sits: a real point or a conjugate pair of points.
#[derive(Debug, Clone)]
pub enum PointSpec {
    Real {
        exceptional: String,
        incidences: Vec<(String, u32)>,
    },
    /// Blows up a point together with its conjugate. `incidences` lists the
    /// curves through the unbarred point; the conjugate point automatically
    /// lies on their conjugates.
    Pair {
        exceptional: String,
        conjugate: String,
        incidences: Vec<(String, u32)>,
    },
}

#[derive(Debug, Clone)]
pub struct BlowUpRecord {
    pub exceptionals: Vec<String>,
    pub incidences: Vec<(String, u32)>,
    pub real: bool,
}

#[derive(Debug, Clone)]
pub struct SurfaceModel {
    lattice: Arc<RealLattice>,
    curves: IndexMap<String, Curve>,
    boundary: Vec<String>,
    history: Vec<BlowUpRecord>,
    minimal_rank: usize,
}

impl SurfaceModel {
    /// The projective plane: rank-one lattice spanned by the line class `H`,
    /// canonical class -3H, trivial involution.
    pub fn projective_plane() -> Self {
        let lattice = RealLattice::new(
            vec!["H".to_string()],
            IntMatrix::from_rows(&[vec![1]]),
            vec![BigInt::from(-3)],
            vec![0],
        )
        .expect("plane lattice is valid");
        SurfaceModel {
            lattice,
            curves: IndexMap::new(),
            boundary: Vec::new(),
            history: Vec::new(),
            minimal_rank: 1,
        }
    }

    /// The Hirzebruch surface with a section of self-intersection -n: basis
    /// (C0, F), Gram [[-n, 1], [1, 0]], canonical -2 C0 - (n + 2) F. The
    /// negative section and a fiber are not registered as curves; add them
    /// with [`SurfaceModel::add_real_curve`] when they are needed.
    pub fn hirzebruch(n: u32) -> Self {
        let n = i64::from(n);
        let lattice = RealLattice::new(
            vec!["C0".to_string(), "F".to_string()],
            IntMatrix::from_rows(&[vec![-n, 1], vec![1, 0]]),
            vec![BigInt::from(-2), BigInt::from(-(n + 2))],
            vec![0, 1],
        )
        .expect("hirzebruch lattice is valid");
        SurfaceModel {
            lattice,
            curves: IndexMap::new(),
            boundary: Vec::new(),
            history: Vec::new(),
            minimal_rank: 2,
        }
    }

    pub fn lattice(&self) -> &Arc<RealLattice> {
        &self.lattice
    }

    pub fn picard_rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn minimal_rank(&self) -> usize {
        self.minimal_rank
    }

    pub fn history(&self) -> &[BlowUpRecord] {
        &self.history
    }

    pub fn curve_labels(&self) -> impl Iterator<Item = &String> {
        self.curves.keys()
    }

    pub fn curve(&self, label: &str) -> Result<&Curve, SurfaceError> {
        self.curves
            .get(label)
            .ok_or_else(|| SurfaceError::UnknownCurve(label.to_string()))
    }

    pub fn class_of(&self, label: &str) -> Result<DivisorClass, SurfaceError> {
        Ok(self.curve(label)?.class.clone())
    }

    pub fn canonical_class(&self) -> DivisorClass {
        self.lattice.canonical_class()
    }

    pub fn k_squared(&self) -> BigInt {
        let k = self.canonical_class();
        pair(&k, &k).expect("canonical pairs with itself")
    }

    pub fn boundary(&self) -> &[String] {
        &self.boundary
    }

    /// Registers a real curve with the given class coefficients.
    pub fn add_real_curve(
        mut self,
        label: &str,
        coeffs: Vec<BigInt>,
    ) -> Result<Self, SurfaceError> {
        if self.curves.contains_key(label) {
            return Err(SurfaceError::DuplicateCurve(label.to_string()));
        }
        let class = self.lattice.class_from_coeffs(coeffs)?;
        if class.conjugate() != class {
            return Err(SurfaceError::RealnessMismatch(label.to_string()));
        }
        self.curves.insert(
            label.to_string(),
            Curve {
                class,
                realness: Realness::Real,
            },
        );
        Ok(self)
    }

    /// Registers a conjugate pair of curves; the conjugate's class must be
    /// the involution image of the first.
    pub fn add_conjugate_pair(
        mut self,
        label: &str,
        label_bar: &str,
        coeffs: Vec<BigInt>,
        coeffs_bar: Vec<BigInt>,
    ) -> Result<Self, SurfaceError> {
        for l in [label, label_bar] {
            if self.curves.contains_key(l) {
                return Err(SurfaceError::DuplicateCurve(l.to_string()));
            }
        }
        let class = self.lattice.class_from_coeffs(coeffs)?;
        let class_bar = self.lattice.class_from_coeffs(coeffs_bar)?;
        if class.conjugate() != class_bar {
            return Err(SurfaceError::RealnessMismatch(label.to_string()));
        }
        self.curves.insert(
            label.to_string(),
            Curve {
                class,
                realness: Realness::ConjugateOf(label_bar.to_string()),
            },
        );
        self.curves.insert(
            label_bar.to_string(),
            Curve {
                class: class_bar,
                realness: Realness::ConjugateOf(label.to_string()),
            },
        );
        Ok(self)
    }

    /// Marks curves as boundary components. The boundary must be closed
    /// under conjugation; the conjugate of a listed pair member is added
    /// automatically.
    pub fn mark_boundary(mut self, labels: &[&str]) -> Result<Self, SurfaceError> {
        for &l in labels {
            let curve = self
                .curves
                .get(l)
                .ok_or_else(|| SurfaceError::UnknownCurve(l.to_string()))?;
            let partner = match &curve.realness {
                Realness::Real => None,
                Realness::ConjugateOf(p) => Some(p.clone()),
            };
            if !self.boundary.iter().any(|b| b == l) {
                self.boundary.push(l.to_string());
            }
            if let Some(p) = partner {
                if !self.boundary.iter().any(|b| b == &p) {
                    self.boundary.push(p);
                }
            }
        }
        Ok(self)
    }

    fn conjugate_label(&self, label: &str) -> String {
        match &self.curves[label].realness {
            Realness::Real => label.to_string(),
            Realness::ConjugateOf(p) => p.clone(),
        }
    }

    /// Blows up a point (or a conjugate pair of points). Incident curve
    /// classes drop by multiplicity times the new exceptional class, their
    /// conjugates by the conjugate class; the canonical class gains the new
    /// class(es). Returns the new model and the new exceptional labels.
    pub fn blow_up(self, spec: &PointSpec) -> Result<(Self, Vec<String>), SurfaceError> {
        let (names, incidences, real) = match spec {
            PointSpec::Real {
                exceptional,
                incidences,
            } => (vec![exceptional.clone()], incidences.clone(), true),
            PointSpec::Pair {
                exceptional,
                conjugate,
                incidences,
            } => (
                vec![exceptional.clone(), conjugate.clone()],
                incidences.clone(),
                false,
            ),
        };
        for n in &names {
            if self.curves.contains_key(n) || self.lattice.basis_index(n).is_some() {
                return Err(SurfaceError::DuplicateCurve(n.clone()));
            }
        }
        for (label, mult) in &incidences {
            if *mult == 0 {
                return Err(SurfaceError::BadMultiplicity);
            }
            let curve = self
                .curves
                .get(label)
                .ok_or_else(|| SurfaceError::UnknownCurve(label.clone()))?;
            if real {
                // A real point lying on a non-real curve lies on its
                // conjugate as well; demand that the caller says so.
                if let Realness::ConjugateOf(partner) = &curve.realness {
                    let listed = incidences.iter().any(|(l, m)| l == partner && m == mult);
                    if !listed {
                        return Err(SurfaceError::RealPointOnHalfPair(
                            label.clone(),
                            partner.clone(),
                        ));
                    }
                }
            }
        }

        let old_rank = self.lattice.rank();
        let added = names.len();
        let new_rank = old_rank + added;

        let mut basis: Vec<String> = self.lattice.basis().to_vec();
        basis.extend(names.iter().cloned());

        let mut gram = IntMatrix::zero(new_rank, new_rank);
        for i in 0..old_rank {
            for j in 0..old_rank {
                gram[(i, j)] = self.lattice.gram()[(i, j)].clone();
            }
        }
        for t in 0..added {
            gram[(old_rank + t, old_rank + t)] = BigInt::from(-1);
        }

        let mut involution: Vec<usize> = self.lattice.involution().to_vec();
        if real {
            involution.push(old_rank);
        } else {
            involution.push(old_rank + 1);
            involution.push(old_rank);
        }

        let mut canonical: Vec<BigInt> = self.lattice.canonical_class().coeffs().to_vec();
        canonical.extend(std::iter::repeat_n(BigInt::one(), added));

        let new_lattice = RealLattice::new(basis, gram, canonical, involution)?;

        // Extend every class by zeros, then subtract the center contributions.
        let mut new_coeffs: IndexMap<String, Vec<BigInt>> = IndexMap::new();
        for (label, curve) in &self.curves {
            let mut c = curve.class.coeffs().to_vec();
            c.extend(std::iter::repeat_n(BigInt::zero(), added));
            new_coeffs.insert(label.clone(), c);
        }
        let e_idx = old_rank;
        let ebar_idx = old_rank + 1;
        for (label, mult) in &incidences {
            let m = BigInt::from(*mult);
            new_coeffs[label][e_idx] -= &m;
            if !real {
                let partner = self.conjugate_label(label);
                new_coeffs[&partner][ebar_idx] -= &m;
            }
        }

        let mut curves: IndexMap<String, Curve> = IndexMap::new();
        for (label, curve) in &self.curves {
            let class = new_lattice.class_from_coeffs(new_coeffs[label].clone())?;
            curves.insert(
                label.clone(),
                Curve {
                    class,
                    realness: curve.realness.clone(),
                },
            );
        }
        // Register the exceptional curve(s).
        let mut e_coeffs = vec![BigInt::zero(); new_rank];
        e_coeffs[e_idx] = BigInt::one();
        if real {
            curves.insert(
                names[0].clone(),
                Curve {
                    class: new_lattice.class_from_coeffs(e_coeffs)?,
                    realness: Realness::Real,
                },
            );
        } else {
            let mut ebar_coeffs = vec![BigInt::zero(); new_rank];
            ebar_coeffs[ebar_idx] = BigInt::one();
            curves.insert(
                names[0].clone(),
                Curve {
                    class: new_lattice.class_from_coeffs(e_coeffs)?,
                    realness: Realness::ConjugateOf(names[1].clone()),
                },
            );
            curves.insert(
                names[1].clone(),
                Curve {
                    class: new_lattice.class_from_coeffs(ebar_coeffs)?,
                    realness: Realness::ConjugateOf(names[0].clone()),
                },
            );
        }

        let mut history = self.history.clone();
        history.push(BlowUpRecord {
            exceptionals: names.clone(),
            incidences,
            real,
        });

        Ok((
            SurfaceModel {
                lattice: new_lattice,
                curves,
                boundary: self.boundary.clone(),
                history,
                minimal_rank: self.minimal_rank,
            },
            names,
        ))
    }

    /// Pairing of two registered curves.
    pub fn pairing(&self, a: &str, b: &str) -> Result<BigInt, SurfaceError> {
        let ca = self.curve(a)?;
        let cb = self.curve(b)?;
        Ok(pair(&ca.class, &cb.class)?)
    }

    pub fn self_intersection(&self, label: &str) -> Result<BigInt, SurfaceError> {
        self.pairing(label, label)
    }

    /// Coefficients of the exceptional proper transforms in the pullback of
    /// the original class of `label` (its class at registration time). The
    /// pullback decomposes as the current proper transform plus a unique
    /// integer combination of exceptional proper transforms; this solves for
    /// that combination. Returns pairs in blow-up order.
    pub fn total_transform_coefficients(
        &self,
        label: &str,
    ) -> Result<Vec<(String, BigInt)>, SurfaceError> {
        let curve = self.curve(label)?;
        let rank = self.lattice.rank();
        // The pullback keeps only the minimal-model coordinates.
        let mut pullback = curve.class.coeffs().to_vec();
        for c in pullback.iter_mut().skip(self.minimal_rank) {
            *c = BigInt::zero();
        }
        let diff: Vec<BigInt> = pullback
            .iter()
            .zip(curve.class.coeffs())
            .map(|(p, c)| p - c)
            .collect();
        let exceptional_labels: Vec<String> = self
            .history
            .iter()
            .flat_map(|r| r.exceptionals.iter().cloned())
            .collect();
        let cols: Vec<Vec<BigInt>> = exceptional_labels
            .iter()
            .map(|l| self.curves[l].class.coeffs().to_vec())
            .collect();
        let m = IntMatrix::from_columns(rank, &cols);
        let x = solve_integer_linear(&m, &diff)
            .expect("pullback decomposes over exceptional transforms");
        Ok(exceptional_labels.into_iter().zip(x).collect())
    }

    /// Chain of blow-ups over the intersection of `c1` and `c2` driven by the
    /// mediant (Stern-Brocot) descent toward the target coefficients: the
    /// last exceptional appears with coefficient `target.0` in the pullback
    /// of `c1` and `target.1` in the pullback of `c2`, and the exceptional
    /// locus over the point is a chain with a unique (-1)-curve. When
    /// `conjugate_pairs` is true the whole chain is blown up in conjugate
    /// pairs, the stated incidences naming the unbarred side.
    ///
    /// Targets must be coprime with `1 <= target.0 <= target.1`; the
    /// degenerate target (1, 1) is the single blow-up of the intersection
    /// point.
    pub fn euclid_chain_blow_up(
        self,
        c1: &str,
        c2: &str,
        target: (u64, u64),
        prefix: &str,
        conjugate_pairs: bool,
    ) -> Result<(Self, Vec<String>), SurfaceError> {
        let (t_lo, t_hi) = (BigInt::from(target.0), BigInt::from(target.1));
        let ok_order = target.0 >= 1 && (target.0 < target.1 || (target.0 == 1 && target.1 == 1));
        if !ok_order || gcd_u64(target.0, target.1) != 1 {
            return Err(SurfaceError::BadChainTarget(t_lo, t_hi));
        }
        let mut model = self;
        // Current flanking curves with their (coeff in c1-pullback, coeff in
        // c2-pullback) pairs; the proper transforms of c1 and c2 themselves
        // carry (1, 0) and (0, 1).
        let mut lo: (String, (u64, u64)) = (c1.to_string(), (1, 0));
        let mut hi: (String, (u64, u64)) = (c2.to_string(), (0, 1));
        let mut created: Vec<String> = Vec::new();
        let mut step = 0usize;
        loop {
            let meet = model.pairing(&lo.0, &hi.0)?;
            if meet < BigInt::one() {
                return Err(SurfaceError::CurvesDoNotMeet(
                    lo.0.clone(),
                    hi.0.clone(),
                    meet,
                ));
            }
            step += 1;
            let mediant = (lo.1 .0 + hi.1 .0, lo.1 .1 + hi.1 .1);
            let name = format!("{}{}", prefix, step);
            let spec = if conjugate_pairs {
                PointSpec::Pair {
                    exceptional: name.clone(),
                    conjugate: format!("{}_bar", name),
                    incidences: vec![(lo.0.clone(), 1), (hi.0.clone(), 1)],
                }
            } else {
                PointSpec::Real {
                    exceptional: name.clone(),
                    incidences: vec![(lo.0.clone(), 1), (hi.0.clone(), 1)],
                }
            };
            let (next, names) = model.blow_up(&spec)?;
            model = next;
            created.extend(names);
            if mediant == (target.0, target.1) {
                break;
            }
            // cross(mediant, target) > 0 puts the target between the mediant
            // and the hi side.
            let cross =
                (mediant.0 as i128) * (target.1 as i128) - (mediant.1 as i128) * (target.0 as i128);
            if cross > 0 {
                lo = (name, mediant);
            } else {
                hi = (name, mediant);
            }
        }
        Ok((model, created))
    }

    /// Weighted dual graph of a set of registered curves. Self-intersections
    /// come from the form; edges are the pairwise intersection numbers, which
    /// must be non-negative for distinct curves (a negative value means the
    /// construction script was inconsistent).
    pub fn dual_graph(&self, subset: &[&str]) -> Result<DualGraph, SurfaceError> {
        let mut nodes = Vec::new();
        for &l in subset {
            let curve = self.curve(l)?;
            let self_int = pair(&curve.class, &curve.class)?;
            nodes.push(GraphNode {
                label: l.to_string(),
                self_int: big_to_i64(&self_int),
                real: matches!(curve.realness, Realness::Real),
            });
        }
        let mut edges = Vec::new();
        for i in 0..subset.len() {
            for j in i + 1..subset.len() {
                let w = self.pairing(subset[i], subset[j])?;
                if w.is_negative() {
                    return Err(SurfaceError::NegativeBoundaryIntersection(
                        subset[i].to_string(),
                        subset[j].to_string(),
                        w,
                    ));
                }
                if !w.is_zero() {
                    edges.push(GraphEdge {
                        a: subset[i].to_string(),
                        b: subset[j].to_string(),
                        weight: big_to_i64(&w),
                    });
                }
            }
        }
        Ok(DualGraph { nodes, edges })
    }

    pub fn boundary_dual_graph(&self) -> Result<DualGraph, SurfaceError> {
        let subset: Vec<&str> = self.boundary.iter().map(|s| s.as_str()).collect();
        self.dual_graph(&subset)
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

fn big_to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("intersection number fits in i64")
}

/// Weighted dual graph: nodes carry self-intersections and realness, edges
/// carry intersection multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub label: String,
    pub self_int: i64,
    #[serde(default = "default_true")]
    pub real: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub a: String,
    pub b: String,
    #[serde(default = "default_one")]
    pub weight: i64,
}

fn default_one() -> i64 {
    1
}

impl DualGraph {
    pub fn node(&self, label: &str) -> Option<&GraphNode> {
        self.nodes.iter().find(|n| n.label == label)
    }

    pub fn edge_weight(&self, a: &str, b: &str) -> i64 {
        self.edges
            .iter()
            .find(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a))
            .map_or(0, |e| e.weight)
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.nodes.len()];
        let index: BTreeMap<&str, usize> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.label.as_str(), i))
            .collect();
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            let label = &self.nodes[i].label;
            for e in &self.edges {
                let other = if &e.a == label {
                    Some(&e.b)
                } else if &e.b == label {
                    Some(&e.a)
                } else {
                    None
                };
                if let Some(o) = other {
                    let j = index[o.as_str()];
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Connected and the total edge multiplicity is one less than the number
    /// of nodes; with non-negative weights this is the tree condition for a
    /// simple-normal-crossing boundary.
    pub fn is_tree(&self) -> bool {
        let total: i64 = self.edges.iter().map(|e| e.weight).sum();
        self.is_connected() && total == self.nodes.len() as i64 - 1
    }

    /// DOT rendering with stable (insertion) node ordering; conjugate pair
    /// members are drawn dashed.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("graph \"{}\" {{\n", name));
        for n in &self.nodes {
            let style = if n.real { "" } else { ", style=dashed" };
            out.push_str(&format!(
                "  \"{}\" [label=\"{} ({})\"{}];\n",
                n.label, n.label, n.self_int, style
            ));
        }
        for e in &self.edges {
            let label = if e.weight == 1 {
                String::new()
            } else {
                format!(" [label=\"{}\"]", e.weight)
            };
            out.push_str(&format!("  \"{}\" -- \"{}\"{};\n", e.a, e.b, label));
        }
        out.push_str("}\n");
        out
    }
}

type NodeInv = (i64, bool, Vec<(i64, i64)>);

/// Exact weighted-graph isomorphism by backtracking; the graphs involved are
/// small (at most ~15 nodes), and invariant pruning keeps this immediate.
pub fn graphs_isomorphic(a: &DualGraph, b: &DualGraph) -> bool {
    if a.nodes.len() != b.nodes.len() || a.edges.len() != b.edges.len() {
        return false;
    }
    let inv = |g: &DualGraph, i: usize| -> NodeInv {
        let label = &g.nodes[i].label;
        let mut adj: Vec<(i64, i64)> = g
            .edges
            .iter()
            .filter_map(|e| {
                let other = if &e.a == label {
                    Some(&e.b)
                } else if &e.b == label {
                    Some(&e.a)
                } else {
                    None
                };
                other.map(|o| (e.weight, g.node(o).map_or(0, |n| n.self_int)))
            })
            .collect();
        adj.sort();
        (g.nodes[i].self_int, g.nodes[i].real, adj)
    };
    let a_inv: Vec<NodeInv> = (0..a.nodes.len()).map(|i| inv(a, i)).collect();
    let b_inv: Vec<NodeInv> = (0..b.nodes.len()).map(|i| inv(b, i)).collect();
    {
        let mut sa = a_inv.clone();
        let mut sb = b_inv.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return false;
        }
    }

    fn backtrack(
        i: usize,
        a: &DualGraph,
        b: &DualGraph,
        a_inv: &[NodeInv],
        b_inv: &[NodeInv],
        assignment: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.nodes.len();
        if i == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || a_inv[i] != b_inv[cand] {
                continue;
            }
            let consistent = (0..i).all(|j| {
                a.edge_weight(&a.nodes[i].label, &a.nodes[j].label)
                    == b.edge_weight(&b.nodes[cand].label, &b.nodes[assignment[j]].label)
            });
            if !consistent {
                continue;
            }
            assignment.push(cand);
            used[cand] = true;
            if backtrack(i + 1, a, b, a_inv, b_inv, assignment, used) {
                return true;
            }
            assignment.pop();
            used[cand] = false;
        }
        false
    }

    let mut assignment = Vec::new();
    let mut used = vec![false; a.nodes.len()];
    backtrack(0, a, b, &a_inv, &b_inv, &mut assignment, &mut used)
}
