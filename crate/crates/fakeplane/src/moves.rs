//! Dual-graph-level birational rewriting.
//!
//! Move scripts replay blow-ups and contractions of (-1)-curves directly on
//! a weighted configuration of named curves: self-intersections, a symmetric
//! pairwise intersection table, realness tags and the Picard rank. The
//! contraction rule is the inverse of the blow-up rule, so a blow-up
//! followed by contraction of the new exceptional curve is the identity;
//! that round trip is what pins both update formulas.
//!
//! Real-structure discipline: a real blow-up center incident to one member
//! of a conjugate pair must be incident to the other as well, contraction of
//! a pair member must go through the pair move (which contracts both), and a
//! pair blow-up always creates both exceptional curves.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::surface::{DualGraph, GraphEdge, GraphNode, Realness, SurfaceError, SurfaceModel};

#[derive(Debug, Error)]
pub enum MoveError {
    #[error("unknown curve '{0}'")]
    UnknownCurve(String),
    #[error("curve '{0}' already exists")]
    DuplicateCurve(String),
    #[error("blow-up at non-intersecting pair '{0}', '{1}'")]
    NonIntersecting(String, String),
    #[error("'{0}' is not a (-1)-curve (self-intersection {1})")]
    NotMinusOne(String, i64),
    #[error("'{0}' is a conjugate pair member; contract the pair instead")]
    HalfPairContraction(String),
    #[error("'{0}' is real; pair contraction needs a conjugate pair")]
    NotAPair(String),
    #[error("pair members '{0}' and '{1}' intersect and cannot be contracted as a pair")]
    PairNotDisjoint(String, String),
    #[error("curves '{0}' and '{1}' have negative intersection {2}")]
    NegativeIntersection(String, String, i64),
    #[error("a real center on '{0}' needs its conjugate '{1}' incident too")]
    RealCenterOnHalfPair(String, String),
    #[error("move {index}: {source}")]
    AtMove {
        index: usize,
        #[source]
        source: Box<MoveError>,
    },
    #[error("endpoint mismatch:\n{0}")]
    EndpointMismatch(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigCurve {
    pub label: String,
    pub self_int: i64,
    /// Real curve when absent; otherwise the conjugate partner's label.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<String>,
}

/// A weighted curve configuration: the state a move script rewrites.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveConfig {
    pub curves: Vec<ConfigCurve>,
    /// Nonzero pairwise intersections, each pair listed once.
    pub inter: Vec<(String, String, i64)>,
    pub picard_rank: i64,
}

/// Internal mutable form with fast lookup.
#[derive(Debug, Clone)]
struct State {
    curves: IndexMap<String, (i64, Option<String>)>,
    inter: IndexMap<(usize, usize), i64>,
    picard_rank: i64,
}

impl State {
    fn from_config(c: &CurveConfig) -> Result<Self, MoveError> {
        let mut curves = IndexMap::new();
        for cc in &c.curves {
            if curves
                .insert(cc.label.clone(), (cc.self_int, cc.pair.clone()))
                .is_some()
            {
                return Err(MoveError::DuplicateCurve(cc.label.clone()));
            }
        }
        let mut state = State {
            curves,
            inter: IndexMap::new(),
            picard_rank: c.picard_rank,
        };
        for (a, b, w) in &c.inter {
            let ia = state.index_of(a)?;
            let ib = state.index_of(b)?;
            if *w < 0 {
                return Err(MoveError::NegativeIntersection(a.clone(), b.clone(), *w));
            }
            state.set_inter(ia, ib, *w);
        }
        Ok(state)
    }

    fn to_config(&self) -> CurveConfig {
        let labels: Vec<&String> = self.curves.keys().collect();
        let mut inter = Vec::new();
        for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                let w = self.get_inter(i, j);
                if w != 0 {
                    inter.push((labels[i].clone(), labels[j].clone(), w));
                }
            }
        }
        CurveConfig {
            curves: self
                .curves
                .iter()
                .map(|(l, (s, p))| ConfigCurve {
                    label: l.clone(),
                    self_int: *s,
                    pair: p.clone(),
                })
                .collect(),
            inter,
            picard_rank: self.picard_rank,
        }
    }

    fn index_of(&self, label: &str) -> Result<usize, MoveError> {
        self.curves
            .get_index_of(label)
            .ok_or_else(|| MoveError::UnknownCurve(label.to_string()))
    }

    fn key(i: usize, j: usize) -> (usize, usize) {
        if i < j {
            (i, j)
        } else {
            (j, i)
        }
    }

    fn get_inter(&self, i: usize, j: usize) -> i64 {
        if i == j {
            return 0;
        }
        *self.inter.get(&Self::key(i, j)).unwrap_or(&0)
    }

    fn set_inter(&mut self, i: usize, j: usize, w: i64) {
        if i == j {
            return;
        }
        if w == 0 {
            self.inter.shift_remove(&Self::key(i, j));
        } else {
            self.inter.insert(Self::key(i, j), w);
        }
    }

    fn blow_up_point(
        &mut self,
        name: &str,
        incidences: &[(String, i64)],
        conjugate_side: bool,
    ) -> Result<(), MoveError> {
        // `conjugate_side` replays the same center on the conjugate curves.
        if self.curves.contains_key(name) {
            return Err(MoveError::DuplicateCurve(name.to_string()));
        }
        let mapped: Vec<(usize, i64)> = incidences
            .iter()
            .map(|(l, m)| {
                let l = if conjugate_side {
                    self.partner_label(l)?
                } else {
                    l.clone()
                };
                Ok((self.index_of(&l)?, *m))
            })
            .collect::<Result<_, MoveError>>()?;
        // Two incident curves must actually meet.
        for a in 0..mapped.len() {
            for b in a + 1..mapped.len() {
                let (ia, ma) = mapped[a];
                let (ib, mb) = mapped[b];
                if self.get_inter(ia, ib) < ma * mb {
                    let la = self.curves.get_index(ia).unwrap().0.clone();
                    let lb = self.curves.get_index(ib).unwrap().0.clone();
                    return Err(MoveError::NonIntersecting(la, lb));
                }
            }
        }
        for &(i, m) in &mapped {
            self.curves[i].0 -= m * m;
        }
        for a in 0..mapped.len() {
            for b in a + 1..mapped.len() {
                let (ia, ma) = mapped[a];
                let (ib, mb) = mapped[b];
                let w = self.get_inter(ia, ib);
                self.set_inter(ia, ib, w - ma * mb);
            }
        }
        self.curves.insert(name.to_string(), (-1, None));
        let new_idx = self.curves.len() - 1;
        for &(i, m) in &mapped {
            self.set_inter(new_idx, i, m);
        }
        self.picard_rank += 1;
        Ok(())
    }

    fn partner_label(&self, label: &str) -> Result<String, MoveError> {
        let (_, pair) = self
            .curves
            .get(label)
            .ok_or_else(|| MoveError::UnknownCurve(label.to_string()))?;
        Ok(pair.clone().unwrap_or_else(|| label.to_string()))
    }

    fn contract_one(&mut self, label: &str) -> Result<(), MoveError> {
        let idx = self.index_of(label)?;
        let (self_int, _) = self.curves[idx];
        if self_int != -1 {
            return Err(MoveError::NotMinusOne(label.to_string(), self_int));
        }
        let n = self.curves.len();
        let mults: Vec<i64> = (0..n).map(|i| self.get_inter(idx, i)).collect();
        for i in 0..n {
            if i == idx || mults[i] == 0 {
                continue;
            }
            self.curves[i].0 += mults[i] * mults[i];
            for j in i + 1..n {
                if j == idx || mults[j] == 0 {
                    continue;
                }
                let w = self.get_inter(i, j);
                self.set_inter(i, j, w + mults[i] * mults[j]);
            }
        }
        // Rebuild the table without the removed index.
        let mut new_inter = IndexMap::new();
        for (&(i, j), &w) in &self.inter {
            if i == idx || j == idx {
                continue;
            }
            let ni = if i > idx { i - 1 } else { i };
            let nj = if j > idx { j - 1 } else { j };
            new_inter.insert(State::key(ni, nj), w);
        }
        self.inter = new_inter;
        self.curves.shift_remove_index(idx);
        self.picard_rank -= 1;
        Ok(())
    }
}

/// One step of a move script.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Move {
    #[serde(rename = "blowup")]
    BlowUpAt {
        /// Curves through the center.
        on: Vec<String>,
        /// Real center (true) or a conjugate pair of centers (false).
        #[serde(default = "default_true")]
        real: bool,
        /// Multiplicities matching `on`; all one when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mults: Option<Vec<i64>>,
        /// Label for the new exceptional curve ("<name>_bar" for the
        /// conjugate when the center is a pair). Auto-named "X<index>" when
        /// absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Contract {
        label: String,
    },
    ContractPair {
        label: String,
    },
}

fn default_true() -> bool {
    true
}

/// A script together with its starting state and expected endpoint.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MoveScript {
    pub start: CurveConfig,
    pub moves: Vec<Move>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<DualGraph>,
}

pub fn blow_up_config(
    config: &CurveConfig,
    on: &[(String, i64)],
    real: bool,
    name: &str,
) -> Result<CurveConfig, MoveError> {
    let mut state = State::from_config(config)?;
    apply_blow_up(&mut state, on, real, name)?;
    Ok(state.to_config())
}

fn apply_blow_up(
    state: &mut State,
    on: &[(String, i64)],
    real: bool,
    name: &str,
) -> Result<(), MoveError> {
    if real {
        // A real point on a curve of a conjugate pair lies on both members.
        for (label, m) in on {
            let partner = state.partner_label(label)?;
            if partner != *label && !on.iter().any(|(l, mm)| *l == partner && mm == m) {
                return Err(MoveError::RealCenterOnHalfPair(label.clone(), partner));
            }
        }
        state.blow_up_point(name, on, false)?;
    } else {
        let bar = format!("{}_bar", name);
        state.blow_up_point(name, on, false)?;
        state.blow_up_point(&bar, on, true)?;
        // Mark the two new curves as partners.
        state.curves[name].1 = Some(bar.clone());
        state.curves[&bar].1 = Some(name.to_string());
    }
    Ok(())
}

pub fn contract_config(config: &CurveConfig, label: &str) -> Result<CurveConfig, MoveError> {
    let mut state = State::from_config(config)?;
    apply_contract(&mut state, label)?;
    Ok(state.to_config())
}

fn apply_contract(state: &mut State, label: &str) -> Result<(), MoveError> {
    let idx = state.index_of(label)?;
    if state.curves[idx].1.is_some() {
        return Err(MoveError::HalfPairContraction(label.to_string()));
    }
    state.contract_one(label)
}

fn apply_contract_pair(state: &mut State, label: &str) -> Result<(), MoveError> {
    let idx = state.index_of(label)?;
    let Some(partner) = state.curves[idx].1.clone() else {
        return Err(MoveError::NotAPair(label.to_string()));
    };
    let pidx = state.index_of(&partner)?;
    if state.get_inter(idx, pidx) != 0 {
        return Err(MoveError::PairNotDisjoint(label.to_string(), partner));
    }
    let (si, _) = state.curves[idx];
    let (sp, _) = state.curves[pidx];
    if si != -1 {
        return Err(MoveError::NotMinusOne(label.to_string(), si));
    }
    if sp != -1 {
        return Err(MoveError::NotMinusOne(partner, sp));
    }
    state.contract_one(label)?;
    state.contract_one(&partner)?;
    Ok(())
}

/// Applies a script move by move; errors carry the failing move index.
pub fn run_script(config: &CurveConfig, script: &[Move]) -> Result<CurveConfig, MoveError> {
    let mut state = State::from_config(config)?;
    for (index, mv) in script.iter().enumerate() {
        let result = match mv {
            Move::BlowUpAt {
                on,
                real,
                mults,
                name,
            } => {
                let mults = mults.clone().unwrap_or_else(|| vec![1; on.len()]);
                let on: Vec<(String, i64)> =
                    on.iter().cloned().zip(mults.iter().cloned()).collect();
                let name = name.clone().unwrap_or_else(|| format!("X{}", index + 1));
                apply_blow_up(&mut state, &on, *real, &name)
            }
            Move::Contract { label } => apply_contract(&mut state, label),
            Move::ContractPair { label } => apply_contract_pair(&mut state, label),
        };
        result.map_err(|source| MoveError::AtMove {
            index,
            source: Box::new(source),
        })?;
    }
    Ok(state.to_config())
}

impl CurveConfig {
    /// Extracts a configuration from a surface model: self-intersections and
    /// pairwise intersections of the listed curves, realness tags, and the
    /// lattice rank as Picard rank.
    pub fn from_model(model: &SurfaceModel, subset: &[&str]) -> Result<Self, MoveError> {
        let graph = model.dual_graph(subset)?;
        let mut curves = Vec::new();
        for &l in subset {
            let node = graph.node(l).expect("node present");
            let pair = match &model.curve(l)?.realness {
                Realness::Real => None,
                Realness::ConjugateOf(p) => Some(p.clone()),
            };
            curves.push(ConfigCurve {
                label: l.to_string(),
                self_int: node.self_int,
                pair,
            });
        }
        Ok(CurveConfig {
            curves,
            inter: graph
                .edges
                .iter()
                .map(|e| (e.a.clone(), e.b.clone(), e.weight))
                .collect(),
            picard_rank: model.picard_rank() as i64,
        })
    }

    pub fn self_int(&self, label: &str) -> Option<i64> {
        self.curves
            .iter()
            .find(|c| c.label == label)
            .map(|c| c.self_int)
    }

    pub fn inter_of(&self, a: &str, b: &str) -> i64 {
        self.inter
            .iter()
            .find(|(x, y, _)| (x == a && y == b) || (x == b && y == a))
            .map_or(0, |(_, _, w)| *w)
    }

    pub fn to_dual_graph(&self) -> DualGraph {
        DualGraph {
            nodes: self
                .curves
                .iter()
                .map(|c| GraphNode {
                    label: c.label.clone(),
                    self_int: c.self_int,
                    real: c.pair.is_none(),
                })
                .collect(),
            edges: self
                .inter
                .iter()
                .map(|(a, b, w)| GraphEdge {
                    a: a.clone(),
                    b: b.clone(),
                    weight: *w,
                })
                .collect(),
        }
    }
}

/// Checks the endpoint against an expected graph. Every expected node must
/// exist with the stated self-intersection and realness, and the induced
/// intersection table on the expected node set must match edge for edge.
/// Nodes of the configuration absent from the expected graph are ignored,
/// which lets scripts state just the curves the construction tracks.
pub fn assert_endpoint(config: &CurveConfig, expected: &DualGraph) -> Result<(), MoveError> {
    let mut problems = Vec::new();
    for node in &expected.nodes {
        match config.curves.iter().find(|c| c.label == node.label) {
            None => problems.push(format!("missing curve '{}'", node.label)),
            Some(c) => {
                if c.self_int != node.self_int {
                    problems.push(format!(
                        "curve '{}': self-intersection {} expected {}",
                        node.label, c.self_int, node.self_int
                    ));
                }
                if c.pair.is_none() != node.real {
                    problems.push(format!(
                        "curve '{}': realness {} expected {}",
                        node.label,
                        c.pair.is_none(),
                        node.real
                    ));
                }
            }
        }
    }
    for i in 0..expected.nodes.len() {
        for j in i + 1..expected.nodes.len() {
            let a = &expected.nodes[i].label;
            let b = &expected.nodes[j].label;
            let want = expected.edge_weight(a, b);
            let got = config.inter_of(a, b);
            if want != got {
                problems.push(format!(
                    "intersection '{}'.'{}': {} expected {}",
                    a, b, got, want
                ));
            }
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(MoveError::EndpointMismatch(problems.join("\n")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(label: &str, self_int: i64) -> ConfigCurve {
        ConfigCurve {
            label: label.into(),
            self_int,
            pair: None,
        }
    }

    fn blowup(on: &[&str], real: bool, name: &str) -> Move {
        Move::BlowUpAt {
            on: on.iter().map(|s| s.to_string()).collect(),
            real,
            mults: None,
            name: Some(name.into()),
        }
    }

    fn contract(label: &str) -> Move {
        Move::Contract {
            label: label.into(),
        }
    }

    #[test]
    fn blow_up_then_contract_is_identity() {
        let config = CurveConfig {
            curves: vec![real("A", -3), real("B", 1)],
            inter: vec![("A".into(), "B".into(), 2)],
            picard_rank: 5,
        };
        let after = run_script(&config, &[blowup(&["A", "B"], true, "X"), contract("X")]).unwrap();
        assert_eq!(after, config);
    }

    #[test]
    fn free_blow_up_on_negative_curve() {
        let config = CurveConfig {
            curves: vec![real("A", -2)],
            inter: vec![],
            picard_rank: 3,
        };
        let after = blow_up_config(&config, &[("A".into(), 1)], true, "X").unwrap();
        assert_eq!(after.self_int("A"), Some(-3));
        assert_eq!(after.self_int("X"), Some(-1));
        assert_eq!(after.inter_of("A", "X"), 1);
        assert_eq!(after.picard_rank, 4);
    }

    #[test]
    fn contraction_rules_enforced() {
        let config = CurveConfig {
            curves: vec![real("A", -2)],
            inter: vec![],
            picard_rank: 2,
        };
        assert!(matches!(
            contract_config(&config, "A"),
            Err(MoveError::NotMinusOne(_, -2))
        ));

        let pair_config = CurveConfig {
            curves: vec![
                ConfigCurve {
                    label: "l".into(),
                    self_int: -1,
                    pair: Some("l_bar".into()),
                },
                ConfigCurve {
                    label: "l_bar".into(),
                    self_int: -1,
                    pair: Some("l".into()),
                },
            ],
            inter: vec![],
            picard_rank: 2,
        };
        assert!(matches!(
            contract_config(&pair_config, "l"),
            Err(MoveError::HalfPairContraction(_))
        ));
        let after = run_script(&pair_config, &[Move::ContractPair { label: "l".into() }]).unwrap();
        assert!(after.curves.is_empty());
        assert_eq!(after.picard_rank, 0);
    }

    #[test]
    fn pair_contraction_is_order_independent() {
        let base = CurveConfig {
            curves: vec![
                real("C", 0),
                ConfigCurve {
                    label: "l".into(),
                    self_int: -1,
                    pair: Some("l_bar".into()),
                },
                ConfigCurve {
                    label: "l_bar".into(),
                    self_int: -1,
                    pair: Some("l".into()),
                },
            ],
            inter: vec![("C".into(), "l".into(), 1), ("C".into(), "l_bar".into(), 1)],
            picard_rank: 3,
        };
        let via_pair = run_script(&base, &[Move::ContractPair { label: "l".into() }]).unwrap();
        let via_other = run_script(
            &base,
            &[Move::ContractPair {
                label: "l_bar".into(),
            }],
        )
        .unwrap();
        assert_eq!(via_pair.self_int("C"), Some(2));
        assert_eq!(via_pair, via_other);
    }

    #[test]
    fn blow_up_at_disjoint_curves_rejected() {
        let config = CurveConfig {
            curves: vec![real("A", 0), real("B", 0)],
            inter: vec![],
            picard_rank: 2,
        };
        assert!(matches!(
            blow_up_config(&config, &[("A".into(), 1), ("B".into(), 1)], true, "X"),
            Err(MoveError::NonIntersecting(_, _))
        ));
    }

    #[test]
    fn endpoint_report_lists_differences() {
        let config = CurveConfig {
            curves: vec![real("A", 0)],
            inter: vec![],
            picard_rank: 2,
        };
        let expected = DualGraph {
            nodes: vec![GraphNode {
                label: "A".into(),
                self_int: 1,
                real: true,
            }],
            edges: vec![],
        };
        let err = assert_endpoint(&config, &expected).unwrap_err();
        let text = format!("{err}");
        assert!(text.contains("'A'"));
    }

    #[test]
    fn script_errors_carry_move_index() {
        let config = CurveConfig {
            curves: vec![real("A", -2)],
            inter: vec![],
            picard_rank: 2,
        };
        let err = run_script(&config, &[contract("A")]).unwrap_err();
        match err {
            MoveError::AtMove { index, .. } => assert_eq!(index, 0),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn pair_blow_up_on_real_curve_drops_two() {
        let config = CurveConfig {
            curves: vec![real("B", 3), real("T", 0)],
            inter: vec![("B".into(), "T".into(), 2)],
            picard_rank: 4,
        };
        // A conjugate pair of points on the real curve B, each also on T.
        let after = run_script(&config, &[blowup(&["B", "T"], false, "L")]).unwrap();
        assert_eq!(after.self_int("B"), Some(1));
        assert_eq!(after.self_int("T"), Some(-2));
        assert_eq!(after.inter_of("B", "T"), 0);
        assert_eq!(after.inter_of("B", "L"), 1);
        assert_eq!(after.inter_of("B", "L_bar"), 1);
        assert_eq!(after.inter_of("T", "L"), 1);
        assert_eq!(after.picard_rank, 6);
    }
}
