//! Catalogue of named constructions with expected invariants and a verifier.
//!
//! Every family builder returns the constructed object (a surface model, a
//! fibration descriptor, or a recorded presentation matrix), the expected
//! facts with their sources, and the extra checks the construction carries:
//! dual-graph golden states, move-script endpoints, Kodaira evidence plans.
//! `verify` runs the whole pipeline and diffs the computed invariants
//! against the expected ones; any mismatch is a failure report, never a
//! silent pass.

pub mod builders;
pub mod data;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::Rational;
use crate::exactalg::{determinant, f2_is_isomorphism, smith_normal_form, IntMatrix};
use crate::homology::{
    acyclicity, inclusion_matrix, real_plane_verdict, verdict_invariants_hold, HomologyError,
    Verdict,
};
use crate::kodaira::{
    a1_fibration_verdict, effective_multiple_check, kappa_one_decomposition, kod1_conditions,
    kod1_conditions_conjugate, FibrationDescriptor, KappaEvidence, KappaVerdict, KodairaError,
};
use crate::lattice::{galois_h2, h2_induced, LatticeError};
use crate::moves::{assert_endpoint, run_script, CurveConfig, Move, MoveError};
use crate::surface::{DualGraph, SurfaceError, SurfaceModel};

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("parameter error: {0}")]
    BadParam(String),
    #[error("condition violated: {0}")]
    Constraint(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Kodaira(#[from] KodairaError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Moves(#[from] MoveError),
}

/// Family parameters: integers or integer lists, by name.
#[derive(Debug, Clone, Default)]
pub struct Params(pub BTreeMap<String, ParamValue>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamValue {
    Int(i64),
    List(Vec<i64>),
}

impl Params {
    pub fn new() -> Self {
        Params(BTreeMap::new())
    }

    pub fn set_int(mut self, key: &str, v: i64) -> Self {
        self.0.insert(key.to_string(), ParamValue::Int(v));
        self
    }

    pub fn set_list(mut self, key: &str, v: &[i64]) -> Self {
        self.0.insert(key.to_string(), ParamValue::List(v.to_vec()));
        self
    }

    fn int_or(&self, key: &str, default: i64) -> Result<i64, FamilyError> {
        match self.0.get(key) {
            None => Ok(default),
            Some(ParamValue::Int(v)) => Ok(*v),
            Some(ParamValue::List(_)) => Err(FamilyError::BadParam(format!(
                "parameter '{key}' must be a single integer"
            ))),
        }
    }

    fn list_or(&self, key: &str, default: &[i64]) -> Result<Vec<i64>, FamilyError> {
        match self.0.get(key) {
            None => Ok(default.to_vec()),
            Some(ParamValue::List(v)) => Ok(v.clone()),
            Some(ParamValue::Int(v)) => Ok(vec![*v]),
        }
    }

    fn positive(&self, key: &str, default: i64) -> Result<u64, FamilyError> {
        let v = self.int_or(key, default)?;
        u64::try_from(v)
            .ok()
            .filter(|&x| x >= 1)
            .ok_or_else(|| FamilyError::BadParam(format!("parameter '{key}' must be >= 1")))
    }

    fn unsigned_list(&self, key: &str, default: &[i64]) -> Result<Vec<u64>, FamilyError> {
        self.list_or(key, default)?
            .into_iter()
            .map(|v| {
                u64::try_from(v).map_err(|_| {
                    FamilyError::BadParam(format!("parameter '{key}' must list integers >= 0"))
                })
            })
            .collect()
    }

    pub fn display_map(&self) -> BTreeMap<String, String> {
        self.0
            .iter()
            .map(|(k, v)| {
                let shown = match v {
                    ParamValue::Int(i) => i.to_string(),
                    ParamValue::List(l) => l
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                };
                (k.clone(), shown)
            })
            .collect()
    }
}

/// Source of an expected fact: recorded with the construction, or derived by
/// an independent oracle in this repository.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Recorded,
    Derived(&'static str),
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpectedFact {
    pub fact: String,
    pub value: String,
    pub source: Source,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaClass {
    MinusInfinity,
    Zero,
    One,
    TwoClaimed,
}

/// Expected invariants of a family instance. Absent fields are not checked.
#[derive(Debug, Clone, Default)]
pub struct ExpectedFacts {
    pub h1_torsion: Option<Vec<u64>>,
    pub z_acyclic: Option<bool>,
    pub real_plane: Option<bool>,
    pub kappa: Option<KappaClass>,
    /// Exact determinant of the presentation matrix.
    pub det_presentation: Option<i64>,
    pub sources: Vec<ExpectedFact>,
}

/// How the Kodaira evidence for a family is produced.
#[derive(Debug, Clone)]
pub enum KappaPlan {
    None,
    MinusInfinity {
        fibration: FibrationDescriptor,
        expect_rectifiable: bool,
    },
    ZeroEvidence {
        n: u32,
        combination: Vec<(String, i64)>,
    },
    OneEvidenceReal {
        directions: usize,
        mu_minus: Vec<u64>,
        mu_plus: Vec<u64>,
        /// Optional positive-part decomposition on the built model:
        /// (eta, fiber class coefficients, support labels).
        decomposition: Option<(Rational, Vec<BigInt>, Vec<String>)>,
    },
    OneEvidenceConjugate {
        pairs: usize,
        nu_minus: Vec<u64>,
        nu_plus: Vec<u64>,
        decomposition: Option<(Rational, Vec<BigInt>, Vec<String>)>,
    },
    /// Only the eta-positivity clause applies (fibration multiplicities of a
    /// construction that is not Z-acyclic).
    OneEvidenceEta {
        directions: usize,
        mu_plus: Vec<u64>,
    },
    /// General type by exclusion: the checkable parts are that every
    /// component of the resolved boundary has self-intersection <= -1 and
    /// every (-1)-component meets at least three others.
    TwoClaimed {
        resolution: Vec<String>,
    },
}

/// A golden dual-graph state bundled with a family.
#[derive(Debug, Clone)]
pub struct GraphCheck {
    pub name: String,
    pub subset: Vec<String>,
    /// Expected graph; compared exactly (same labels, weights, realness).
    pub expected: DualGraph,
    /// Model to read the subset from: the main model or the resolution.
    pub on_resolution: bool,
}

/// A move script bundled with a family, with its expected endpoint.
#[derive(Debug, Clone)]
pub struct ScriptCheck {
    pub name: String,
    pub start: CurveConfig,
    pub moves: Vec<Move>,
    pub expect: DualGraph,
}

/// Everything a family builder produces.
pub struct FamilyBuild {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub model: Option<SurfaceModel>,
    /// A second model carrying the full log-resolution, when the family has
    /// one distinct from the main model.
    pub resolution: Option<SurfaceModel>,
    pub fibration: Option<FibrationDescriptor>,
    /// The inclusion map in the recorded presentation basis (classes forming
    /// a unimodular basis), or the recorded matrix itself for data-entry
    /// families.
    pub presentation: Option<Presentation>,
    pub expected: ExpectedFacts,
    pub kappa_plan: KappaPlan,
    pub graph_checks: Vec<GraphCheck>,
    pub script_checks: Vec<ScriptCheck>,
    pub notes: Vec<String>,
    /// A second surface whose torsion order must match the given value
    /// (the Cremona companion of the tricuspidal construction).
    pub companion: Option<(SurfaceModel, u64)>,
}

pub enum Presentation {
    /// Change the engine inclusion matrix into the basis given by these
    /// classes of the model lattice, then compare with `expect` if present.
    Basis {
        classes: Vec<Vec<BigInt>>,
        expect: Option<IntMatrix>,
    },
    /// The matrix is recorded data (no geometric model behind it).
    Recorded(IntMatrix),
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// One blow-up of the construction script, as data for reports.
#[derive(Debug, Clone, Serialize)]
pub struct BlowUpStep {
    pub exceptionals: Vec<String>,
    pub incidences: Vec<(String, u32)>,
    pub real: bool,
}

/// Outcome of running the full verification pipeline on one family instance.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationOutcome {
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub picard_rank: Option<usize>,
    pub boundary: Vec<String>,
    pub presentation_matrix: Option<Vec<Vec<String>>>,
    pub snf_diag: Vec<String>,
    /// The construction's blow-up script, step by step.
    pub construction: Vec<BlowUpStep>,
    pub verdict: Option<Verdict>,
    pub kappa: Option<KappaEvidence>,
    pub fibration_flags: Option<(bool, bool)>,
    pub checks: Vec<CheckResult>,
    pub expected: Vec<ExpectedFact>,
    pub notes: Vec<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyInfo {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: &'static str,
}

pub fn list_families() -> Vec<FamilyInfo> {
    vec![
        FamilyInfo {
            name: "conic_complement",
            summary: "complement of a smooth real conic in the projective plane",
            params: "",
        },
        FamilyInfo {
            name: "cuspidal_cubic",
            summary: "complement of a real cuspidal cubic, with its fibration resolution",
            params: "",
        },
        FamilyInfo {
            name: "e6_cubic",
            summary: "affine cubic x^2 z = y^3 - x inside the E6-singular cubic surface",
            params: "",
        },
        FamilyInfo {
            name: "neg_kappa_hypersurface",
            summary: "affine hypersurfaces fibered over the line with odd multiple fibers",
            params: "s (default 1), m (list, default 2), p (list of odd >=3, default 3)",
        },
        FamilyInfo {
            name: "h_2p",
            summary: "Fujita-type surfaces from a Hirzebruch surface and a conjugate fiber pair",
            params: "p (default 1)",
        },
        FamilyInfo {
            name: "y333",
            summary: "complement of a seven-component line configuration boundary",
            params: "",
        },
        FamilyInfo {
            name: "kod1_generic",
            summary: "pencil-of-lines construction with prescribed chain multiplicities",
            params: "n (default 2), mu_minus (list), mu_plus (list), r0 (default 1)",
        },
        FamilyInfo {
            name: "quartic_contractible",
            summary: "complement of a one-cusp quartic plus flex tangent, one point blown up",
            params: "",
        },
        FamilyInfo {
            name: "quartic_kod1",
            summary: "complement of a one-cusp quartic plus flex tangent through a second point",
            params: "",
        },
        FamilyInfo {
            name: "kod1_conjugate",
            summary: "pencil construction with conjugate chain pairs, rectifiable",
            params: "m (default 1), nu_minus (list), nu_plus (list), r0 (default 1)",
        },
        FamilyInfo {
            name: "gentype_s1",
            summary: "general-type plane from a quartic with one multiplicity-3 cusp",
            params: "",
        },
        FamilyInfo {
            name: "gentype_s2",
            summary: "general-type plane from a ramphoid quartic",
            params: "",
        },
        FamilyInfo {
            name: "gentype_s3",
            summary: "general-type plane from a bicuspidal quartic",
            params: "",
        },
        FamilyInfo {
            name: "tricuspidal",
            summary: "general-type planes from the tricuspidal quartic and its Cremona companion",
            params: "mu, nu with 4*nu - mu = +-1 (default 3, 1)",
        },
    ]
}

pub fn build(name: &str, params: &Params) -> Result<FamilyBuild, FamilyError> {
    match name {
        "conic_complement" => builders::conic_complement(),
        "cuspidal_cubic" => builders::cuspidal_cubic(),
        "e6_cubic" => builders::e6_cubic(),
        "neg_kappa_hypersurface" => builders::neg_kappa_hypersurface(params),
        "h_2p" => builders::h_2p(params),
        "y333" => builders::y333(),
        "kod1_generic" => builders::kod1_generic(params),
        "quartic_contractible" => builders::quartic_contractible(),
        "quartic_kod1" => builders::quartic_kod1(),
        "kod1_conjugate" => builders::kod1_conjugate(params),
        "gentype_s1" => builders::gentype(1),
        "gentype_s2" => builders::gentype(2),
        "gentype_s3" => builders::gentype(3),
        "tricuspidal" => builders::tricuspidal(params),
        other => Err(FamilyError::UnknownFamily(other.to_string())),
    }
}

/// Runs the full verification pipeline on a family instance.
pub fn verify(name: &str, params: &Params) -> Result<VerificationOutcome, FamilyError> {
    let built = build(name, params)?;
    let mut checks: Vec<CheckResult> = Vec::new();
    let push = |checks: &mut Vec<CheckResult>, name: &str, passed: bool, detail: String| {
        checks.push(CheckResult {
            name: name.to_string(),
            passed,
            detail,
        });
    };

    // Homology verdict.
    let mut verdict: Option<Verdict> = None;
    let mut snf_diag: Vec<String> = Vec::new();
    let mut presentation_matrix: Option<Vec<Vec<String>>> = None;
    let mut boundary = Vec::new();
    let mut picard_rank = None;

    let mut history: Vec<BlowUpStep> = Vec::new();
    if let Some(model) = &built.model {
        boundary = model.boundary().to_vec();
        picard_rank = Some(model.picard_rank());
        let map = inclusion_matrix(model)?;
        let snf = smith_normal_form(map.matrix());
        snf_diag = snf.diag.iter().map(|d| d.to_string()).collect();
        verdict = Some(real_plane_verdict(model)?);
        // Without a recorded presentation, report the map in the engine
        // basis.
        if built.presentation.is_none() {
            let m = map.matrix();
            presentation_matrix = Some(
                (0..m.rows())
                    .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
                    .collect(),
            );
        }
        history = model
            .history()
            .iter()
            .map(|r| BlowUpStep {
                exceptionals: r.exceptionals.clone(),
                incidences: r.incidences.clone(),
                real: r.real,
            })
            .collect();
    }

    // Presentation matrix in the recorded basis.
    if let Some(presentation) = &built.presentation {
        let matrix = match presentation {
            Presentation::Recorded(m) => m.clone(),
            Presentation::Basis { classes, expect } => {
                let model = built
                    .model
                    .as_ref()
                    .expect("basis presentation needs a model");
                let map = inclusion_matrix(model)?;
                let basis: Result<Vec<_>, _> = classes
                    .iter()
                    .map(|c| model.lattice().class_from_coeffs(c.clone()))
                    .collect();
                let m = map.matrix_in_target_basis(&basis?)?;
                if let Some(want) = expect {
                    push(
                        &mut checks,
                        "presentation_matrix",
                        &m == want,
                        if &m == want {
                            "matches the recorded matrix".into()
                        } else {
                            format!("engine matrix\n{m}differs from recorded\n{want}")
                        },
                    );
                }
                m
            }
        };
        if let Presentation::Recorded(m) = presentation {
            // For recorded matrices the verdict comes from the matrix alone
            // (the boundary is real and its resolved dual graph is a tree,
            // both recorded with the construction).
            let snf = smith_normal_form(m);
            snf_diag = snf.diag.iter().map(|d| d.to_string()).collect();
            let torsion = snf.torsion();
            let square_full = m.is_square() && snf.rank() == m.rows();
            let h2_iso = f2_is_isomorphism(&m.reduction_mod2());
            verdict = Some(Verdict {
                boundary_connected: true,
                boundary_tree: true,
                q_acyclic: square_full,
                z_acyclic: square_full && torsion.is_empty(),
                h1_torsion: torsion.iter().map(|t| t.to_string()).collect(),
                h2_iso,
                boundary_real_nonempty: true,
                real_plane: square_full && h2_iso,
            });
        }
        if let Some(det_expected) = built.expected.det_presentation {
            let d = determinant(&matrix).expect("presentation matrix is square");
            push(
                &mut checks,
                "det_presentation",
                d == BigInt::from(det_expected),
                format!("determinant {d}, expected {det_expected}"),
            );
        }
        presentation_matrix = Some(
            (0..matrix.rows())
                .map(|i| {
                    (0..matrix.cols())
                        .map(|j| matrix[(i, j)].to_string())
                        .collect()
                })
                .collect(),
        );
    }

    // Diff the verdict against expectations.
    if let Some(v) = &verdict {
        push(
            &mut checks,
            "verdict_invariants",
            verdict_invariants_hold(v),
            "internal consistency of the verdict flags".into(),
        );
        if let Some(want) = &built.expected.h1_torsion {
            let got: Vec<String> = v.h1_torsion.clone();
            let want_s: Vec<String> = want.iter().map(|t| t.to_string()).collect();
            push(
                &mut checks,
                "h1_torsion",
                got == want_s,
                format!(
                    "computed [{}], expected [{}]",
                    got.join(","),
                    want_s.join(",")
                ),
            );
        }
        if let Some(want) = built.expected.z_acyclic {
            push(
                &mut checks,
                "z_acyclic",
                v.z_acyclic == want,
                format!("computed {}, expected {}", v.z_acyclic, want),
            );
        }
        if let Some(want) = built.expected.real_plane {
            push(
                &mut checks,
                "real_plane",
                v.real_plane == want,
                format!("computed {}, expected {}", v.real_plane, want),
            );
        }
    }

    // Kodaira evidence.
    let mut kappa: Option<KappaEvidence> = None;
    let mut fibration_flags = None;
    match &built.kappa_plan {
        KappaPlan::None => {}
        KappaPlan::MinusInfinity {
            fibration,
            expect_rectifiable,
        } => {
            let (plane, rectifiable) = a1_fibration_verdict(fibration);
            fibration_flags = Some((plane, rectifiable));
            push(
                &mut checks,
                "fibration_plane_flag",
                plane,
                "all fibers irreducible with odd real multiplicities".into(),
            );
            push(
                &mut checks,
                "fibration_rectifiable_flag",
                rectifiable == *expect_rectifiable,
                format!("computed {rectifiable}, expected {expect_rectifiable}"),
            );
            kappa = Some(KappaEvidence {
                n: 1,
                combination: vec![],
                support_negdef: false,
                verdict: if plane {
                    KappaVerdict::KappaMinusInfinityCertified
                } else {
                    KappaVerdict::Inconclusive
                },
            });
        }
        KappaPlan::ZeroEvidence { n, combination } => {
            let model = built.model.as_ref().expect("kappa-zero plan needs a model");
            let combo: Vec<(&str, i64)> =
                combination.iter().map(|(l, c)| (l.as_str(), *c)).collect();
            let ev = effective_multiple_check(model, *n, &combo)?;
            push(
                &mut checks,
                "kappa_zero_evidence",
                ev.verdict == KappaVerdict::KappaZeroEvidence,
                format!("support negative definite: {}", ev.support_negdef),
            );
            kappa = Some(ev);
        }
        KappaPlan::OneEvidenceReal {
            directions,
            mu_minus,
            mu_plus,
            decomposition,
        } => {
            let report = kod1_conditions(*directions, mu_minus, mu_plus)?;
            push(
                &mut checks,
                "kappa_one_conditions",
                report.pass,
                format!(
                    "eta = {}, lattice condition {}",
                    report.eta, report.lattice_condition
                ),
            );
            kappa = Some(run_decomposition(
                &built,
                decomposition,
                report.pass,
                &mut checks,
            )?);
        }
        KappaPlan::OneEvidenceConjugate {
            pairs,
            nu_minus,
            nu_plus,
            decomposition,
        } => {
            let report = kod1_conditions_conjugate(*pairs, nu_minus, nu_plus)?;
            push(
                &mut checks,
                "kappa_one_conditions",
                report.pass,
                format!(
                    "eta = {}, nonsingular {}",
                    report.eta, report.lattice_condition
                ),
            );
            kappa = Some(run_decomposition(
                &built,
                decomposition,
                report.pass,
                &mut checks,
            )?);
        }
        KappaPlan::OneEvidenceEta {
            directions,
            mu_plus,
        } => {
            let eta = crate::kodaira::eta_real(*directions, mu_plus);
            let pass = num_traits::Signed::is_positive(&eta);
            push(&mut checks, "kappa_one_eta", pass, format!("eta = {eta}"));
            kappa = Some(KappaEvidence {
                n: 1,
                combination: vec![],
                support_negdef: false,
                verdict: if pass {
                    KappaVerdict::KappaOneEvidence
                } else {
                    KappaVerdict::Inconclusive
                },
            });
        }
        KappaPlan::TwoClaimed { resolution } => {
            let model = built
                .resolution
                .as_ref()
                .or(built.model.as_ref())
                .expect("two-claimed plan needs a model");
            let subset: Vec<&str> = resolution.iter().map(|s| s.as_str()).collect();
            let graph = model.dual_graph(&subset)?;
            let all_negative = graph.nodes.iter().all(|n| n.self_int <= -1);
            push(
                &mut checks,
                "resolution_all_negative",
                all_negative,
                "all resolved boundary components have self-intersection <= -1".into(),
            );
            let branches_ok = graph.nodes.iter().filter(|n| n.self_int == -1).all(|n| {
                graph
                    .edges
                    .iter()
                    .filter(|e| e.a == n.label || e.b == n.label)
                    .map(|e| e.weight)
                    .sum::<i64>()
                    >= 3
            });
            push(
                &mut checks,
                "minus_one_components_branch",
                branches_ok,
                "every (-1)-component of the resolved boundary meets at least three others".into(),
            );
            kappa = Some(KappaEvidence {
                n: 1,
                combination: vec![],
                support_negdef: false,
                verdict: KappaVerdict::KappaTwoClaimed,
            });
        }
    }

    if let (Some(expected_kappa), Some(ev)) = (built.expected.kappa, &kappa) {
        let matches = matches!(
            (expected_kappa, ev.verdict),
            (
                KappaClass::MinusInfinity,
                KappaVerdict::KappaMinusInfinityCertified
            ) | (KappaClass::Zero, KappaVerdict::KappaZeroEvidence)
                | (KappaClass::One, KappaVerdict::KappaOneEvidence)
                | (KappaClass::TwoClaimed, KappaVerdict::KappaTwoClaimed)
        );
        push(
            &mut checks,
            "kappa_class",
            matches,
            format!(
                "evidence verdict {:?}, expected {:?}",
                ev.verdict, expected_kappa
            ),
        );
    }

    // H^2 cross-check: for all-real constructions the induced map equals the
    // reduction mod 2 of the inclusion matrix.
    if let Some(model) = &built.model {
        let map = inclusion_matrix(model)?;
        let all_real = model
            .lattice()
            .involution()
            .iter()
            .enumerate()
            .all(|(i, &s)| i == s);
        if all_real {
            let same = h2_induced(&map) == map.matrix().reduction_mod2();
            push(
                &mut checks,
                "h2_equals_mod2",
                same,
                "trivial involution: induced map is the mod-2 reduction".into(),
            );
        }
        let src_dim = galois_h2(map.source()).dimension;
        let tgt_dim = galois_h2(map.target()).dimension;
        push(
            &mut checks,
            "h2_dimensions",
            true,
            format!("H2 dimensions {src_dim} -> {tgt_dim}"),
        );
    }

    // Golden dual graphs.
    for gc in &built.graph_checks {
        let model = if gc.on_resolution {
            built.resolution.as_ref().or(built.model.as_ref())
        } else {
            built.model.as_ref()
        }
        .expect("graph check needs a model");
        let subset: Vec<&str> = gc.subset.iter().map(|s| s.as_str()).collect();
        let got = model.dual_graph(&subset)?;
        let same = graph_equal_labeled(&got, &gc.expected);
        push(
            &mut checks,
            &gc.name,
            same,
            if same {
                "matches the recorded graph".into()
            } else {
                format!("computed {:?} differs from recorded {:?}", got, gc.expected)
            },
        );
    }

    // Move scripts.
    for sc in &built.script_checks {
        let outcome =
            run_script(&sc.start, &sc.moves).and_then(|end| assert_endpoint(&end, &sc.expect));
        match outcome {
            Ok(()) => push(&mut checks, &sc.name, true, "endpoint matches".into()),
            Err(e) => push(&mut checks, &sc.name, false, format!("{e}")),
        }
    }

    // Companion surface torsion.
    if let Some((companion, expected_order)) = &built.companion {
        let v = real_plane_verdict(companion)?;
        let order = crate::homology::torsion_order(&v.h1_torsion_big());
        push(
            &mut checks,
            "companion_torsion_order",
            order == BigInt::from(*expected_order) && v.q_acyclic,
            format!("torsion order {order}, expected {expected_order}"),
        );
        push(
            &mut checks,
            "companion_real_plane",
            v.real_plane,
            "the companion is itself a real plane".into(),
        );
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerificationOutcome {
        family: built.name,
        params: built.params,
        picard_rank,
        boundary,
        presentation_matrix,
        snf_diag,
        construction: history,
        verdict,
        kappa,
        fibration_flags,
        checks,
        expected: built.expected.sources,
        notes: built.notes,
        passed,
    })
}

fn run_decomposition(
    built: &FamilyBuild,
    decomposition: &Option<(Rational, Vec<BigInt>, Vec<String>)>,
    conditions_pass: bool,
    checks: &mut Vec<CheckResult>,
) -> Result<KappaEvidence, FamilyError> {
    if let Some((eta, fiber_coeffs, support)) = decomposition {
        let model = built.model.as_ref().expect("decomposition needs a model");
        let fiber = model.lattice().class_from_coeffs(fiber_coeffs.clone())?;
        let support_refs: Vec<&str> = support.iter().map(|s| s.as_str()).collect();
        let ev = kappa_one_decomposition(model, eta, &fiber, &support_refs)?;
        checks.push(CheckResult {
            name: "kappa_one_decomposition".into(),
            passed: ev.verdict == KappaVerdict::KappaOneEvidence,
            detail: format!("support negative definite: {}", ev.support_negdef),
        });
        Ok(ev)
    } else {
        Ok(KappaEvidence {
            n: 1,
            combination: vec![],
            support_negdef: false,
            verdict: if conditions_pass {
                KappaVerdict::KappaOneEvidence
            } else {
                KappaVerdict::Inconclusive
            },
        })
    }
}

/// Exact labelled comparison of dual graphs: same node set with the same
/// attributes, same weighted edge set (order-insensitive).
pub fn graph_equal_labeled(a: &DualGraph, b: &DualGraph) -> bool {
    let mut an: Vec<_> = a
        .nodes
        .iter()
        .map(|n| (n.label.clone(), n.self_int, n.real))
        .collect();
    let mut bn: Vec<_> = b
        .nodes
        .iter()
        .map(|n| (n.label.clone(), n.self_int, n.real))
        .collect();
    an.sort();
    bn.sort();
    if an != bn {
        return false;
    }
    let canon = |g: &DualGraph| {
        let mut edges: Vec<(String, String, i64)> = g
            .edges
            .iter()
            .filter(|e| e.weight != 0)
            .map(|e| {
                if e.a <= e.b {
                    (e.a.clone(), e.b.clone(), e.weight)
                } else {
                    (e.b.clone(), e.a.clone(), e.weight)
                }
            })
            .collect();
        edges.sort();
        edges
    };
    canon(a) == canon(b)
}

/// The verify-all sweep: every catalogue family with default parameters,
/// plus p = 1..5 and all tricuspidal parameter pairs with nu <= 4.
pub fn default_sweep() -> Vec<(String, Params)> {
    let mut out = Vec::new();
    for info in list_families() {
        out.push((info.name.to_string(), Params::new()));
    }
    for p in 2..=5 {
        out.push(("h_2p".to_string(), Params::new().set_int("p", p)));
    }
    for (mu, nu) in tricuspidal_pairs(4) {
        if (mu, nu) == (3, 1) {
            continue; // the default instance
        }
        out.push((
            "tricuspidal".to_string(),
            Params::new().set_int("mu", mu).set_int("nu", nu),
        ));
    }
    out
}

/// All (mu, nu) with 4 nu - mu = +-1 and nu bounded.
pub fn tricuspidal_pairs(nu_max: i64) -> Vec<(i64, i64)> {
    let mut pairs = Vec::new();
    for nu in 1..=nu_max {
        pairs.push((4 * nu - 1, nu));
        pairs.push((4 * nu + 1, nu));
    }
    pairs
}

/// Checks also used by the acyclicity invariants: |det| equals the torsion
/// order for square nonsingular inclusion matrices.
pub fn det_matches_torsion(model: &SurfaceModel) -> Result<bool, FamilyError> {
    let map = inclusion_matrix(model)?;
    if !map.matrix().is_square() {
        return Ok(true);
    }
    let det = determinant(map.matrix()).expect("square");
    let acy = acyclicity(&map);
    let product = crate::homology::torsion_order(&acy.h1_torsion);
    Ok(if det == BigInt::from(0) {
        !acy.q_acyclic
    } else {
        num_traits::Signed::abs(&det) == product
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_family_is_reported() {
        assert!(matches!(
            build("nonsense", &Params::new()),
            Err(FamilyError::UnknownFamily(_))
        ));
    }

    #[test]
    fn parameter_type_errors_are_reported() {
        let params = Params::new().set_list("p", &[1, 2]);
        assert!(matches!(
            build("h_2p", &params),
            Err(FamilyError::BadParam(_))
        ));
        let params = Params::new().set_int("p", 0);
        assert!(matches!(
            build("h_2p", &params),
            Err(FamilyError::BadParam(_))
        ));
    }

    #[test]
    fn tricuspidal_pair_enumeration() {
        assert_eq!(tricuspidal_pairs(2), vec![(3, 1), (5, 1), (7, 2), (9, 2)]);
    }

    #[test]
    fn verify_family_examples() {
        let conic = verify("conic_complement", &Params::new()).unwrap();
        assert!(!conic.verdict.unwrap().real_plane);

        let quartic = verify("quartic_kod1", &Params::new()).unwrap();
        assert_eq!(quartic.verdict.unwrap().h1_torsion, vec!["3".to_string()]);

        let e6 = verify("e6_cubic", &Params::new()).unwrap();
        assert_eq!(e6.verdict.unwrap().h1_torsion, vec!["3".to_string()]);
    }

    /// Three chains with the classical unimodular multiplicities (2, 3, 7).
    #[test]
    fn kod1_generic_three_directions() {
        let params = Params::new()
            .set_int("n", 3)
            .set_list("mu_minus", &[1, 1, 1])
            .set_list("mu_plus", &[2, 3, 7])
            .set_int("r0", 2);
        let outcome = verify("kod1_generic", &params).unwrap();
        assert!(outcome.passed, "checks: {:?}", outcome.checks);
        let v = outcome.verdict.unwrap();
        assert!(v.z_acyclic && v.real_plane);
    }

    /// Two conjugate chain pairs; the doubled coefficient matrix has
    /// determinant 80, so the torsion order is 80.
    #[test]
    fn kod1_conjugate_two_pairs() {
        let params = Params::new()
            .set_int("m", 2)
            .set_list("nu_minus", &[1, 2])
            .set_list("nu_plus", &[2, 5]);
        let outcome = verify("kod1_conjugate", &params).unwrap();
        assert!(outcome.passed, "checks: {:?}", outcome.checks);
        let v = outcome.verdict.unwrap();
        assert!(v.q_acyclic && !v.z_acyclic && v.real_plane);
        let order = crate::homology::torsion_order(&v.h1_torsion_big());
        assert_eq!(order, BigInt::from(80));
    }

    #[test]
    fn reports_carry_the_engine_matrix_without_a_presentation() {
        let outcome = verify("conic_complement", &Params::new()).unwrap();
        assert_eq!(
            outcome.presentation_matrix,
            Some(vec![vec!["2".to_string()]])
        );
        let outcome = verify("cuspidal_cubic", &Params::new()).unwrap();
        let m = outcome.presentation_matrix.unwrap();
        assert_eq!(m.len(), 7);
        assert!(!outcome.construction.is_empty());
    }
}
