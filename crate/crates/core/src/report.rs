//! Report types for the command-line surface: machine-readable JSON with a
//! stable key order, plus plain-text rendering. Basis indices in witnesses
//! are 1-based and subspaces appear as RREF rows of scalar strings.

use crate::algebra::{AxiomReport, Violation};
use crate::analysis::SchurReport;
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use serde::Serialize;
use std::fmt::Write as _;

pub fn render_row(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::render).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SubspaceJson {
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
}

impl SubspaceJson {
    pub fn from_subspace(s: &Subspace) -> Self {
        SubspaceJson {
            dim: s.dim(),
            basis: s.basis().iter().map(|r| render_row(r)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationJson {
    pub axiom: &'static str,
    pub witness: Vec<usize>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

impl ViolationJson {
    pub fn from_violation(v: &Violation) -> Self {
        ViolationJson {
            axiom: v.axiom.name(),
            witness: v.witness.clone(),
            lhs: render_row(&v.lhs),
            rhs: render_row(&v.rhs),
        }
    }
}

pub fn violations_json(report: &AxiomReport) -> Vec<ViolationJson> {
    report
        .violations
        .iter()
        .map(ViolationJson::from_violation)
        .collect()
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub command: &'static str,
    pub file: String,
    pub dim: usize,
    pub field: String,
    /// Characteristic-2 inputs get the strengthened alternating checks.
    pub char_two: bool,
    pub axioms_passed: bool,
    /// Absent when the axiom scan already failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derived_identities_passed: Option<bool>,
    pub trials: u32,
    pub seed: u64,
    pub violations: Vec<ViolationJson>,
}

impl CheckReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "algebra: {} (dim {} over {})",
            self.file, self.dim, self.field
        );
        if self.char_two {
            let _ = writeln!(out, "note: characteristic 2, explicit alternating checks enabled");
        }
        let _ = writeln!(out, "axioms: {}", pass_fail(self.axioms_passed));
        match self.derived_identities_passed {
            Some(ok) => {
                let _ = writeln!(
                    out,
                    "derived identities: {} ({} trials, seed {})",
                    pass_fail(ok),
                    self.trials,
                    self.seed
                );
            }
            None => {
                let _ = writeln!(out, "derived identities: skipped (axioms failed)");
            }
        }
        render_violations(&mut out, &self.violations);
        out
    }
}

#[derive(Debug, Serialize)]
pub struct CenterReport {
    pub command: &'static str,
    pub file: String,
    pub dim: usize,
    pub field: String,
    pub center: SubspaceJson,
    pub codim_d: usize,
}

impl CenterReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "algebra: {} (dim {} over {})",
            self.file, self.dim, self.field
        );
        let _ = writeln!(
            out,
            "center dim: {} (codimension d = {})",
            self.center.dim, self.codim_d
        );
        for row in &self.center.basis {
            let _ = writeln!(out, "  [{}]", row.join(", "));
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct SchurJson {
    pub command: &'static str,
    pub file: String,
    pub dim: usize,
    pub field: String,
    pub center: SubspaceJson,
    pub codim_d: usize,
    pub derived: SubspaceJson,
    #[serde(rename = "K")]
    pub k: SubspaceJson,
    #[serde(rename = "dim_K")]
    pub dim_k: usize,
    pub bound: u64,
    pub bound_ok: bool,
    #[serde(rename = "K_is_lie_ideal")]
    pub k_is_lie_ideal: bool,
    pub quotient_abelian: bool,
    pub generator_count_check: bool,
    pub closure_one_round: bool,
}

impl SchurJson {
    pub fn from_report(command: &'static str, file: String, dim: usize, field: String, r: &SchurReport) -> Self {
        SchurJson {
            command,
            file,
            dim,
            field,
            center: SubspaceJson::from_subspace(&r.center),
            codim_d: r.codim_d,
            derived: SubspaceJson::from_subspace(&r.derived),
            k: SubspaceJson::from_subspace(&r.k),
            dim_k: r.dim_k,
            bound: r.bound,
            bound_ok: r.bound_ok,
            k_is_lie_ideal: r.k_is_lie_ideal,
            quotient_abelian: r.quotient_abelian,
            generator_count_check: r.generator_count_check,
            closure_one_round: r.closure_one_round,
        }
    }

    pub fn all_verdicts_pass(&self) -> bool {
        self.bound_ok && self.k_is_lie_ideal && self.quotient_abelian && self.generator_count_check
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "algebra: {} (dim {} over {})",
            self.file, self.dim, self.field
        );
        let _ = writeln!(
            out,
            "center dim: {} (codimension d = {})",
            self.center.dim, self.codim_d
        );
        let _ = writeln!(out, "derived [P,P,P] dim: {}", self.derived.dim);
        let _ = writeln!(out, "ideal K dim: {}", self.dim_k);
        let _ = writeln!(out, "bound d(d^2-1)(d-2)/6: {}", self.bound);
        let _ = writeln!(out, "dim K <= bound: {}", pass_fail(self.bound_ok));
        let _ = writeln!(out, "[K,P,P] <= K: {}", pass_fail(self.k_is_lie_ideal));
        let _ = writeln!(out, "P/K abelian: {}", pass_fail(self.quotient_abelian));
        let _ = writeln!(
            out,
            "transversal generators span [P,P,P]: {}",
            pass_fail(self.generator_count_check)
        );
        let _ = writeln!(
            out,
            "closure stabilized after one round: {}",
            self.closure_one_round
        );
        out
    }
}

#[derive(Debug, Serialize)]
pub struct UnitalizeReport {
    pub command: &'static str,
    pub file: String,
    pub input_dim: usize,
    pub output_dim: usize,
    pub identity: Vec<String>,
    pub embed_rank: usize,
    pub output: String,
}

impl UnitalizeReport {
    pub fn to_text(&self) -> String {
        format!(
            "unitalized {} (dim {}) -> {} (dim {}), identity [{}], embed rank {}\n",
            self.file,
            self.input_dim,
            self.output,
            self.output_dim,
            self.identity.join(", "),
            self.embed_rank
        )
    }
}

#[derive(Debug, Serialize)]
pub struct QuotientReport {
    pub command: &'static str,
    pub file: String,
    pub ideal_file: String,
    pub generator_span_dim: usize,
    pub ideal_dim: usize,
    /// True when the Poisson ideal closure strictly enlarged the generator
    /// span, i.e. the input was not itself an ideal.
    pub closure_enlarged_input: bool,
    pub quotient_dim: usize,
    pub output: String,
}

impl QuotientReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "ideal generators from {}: span dim {}, closure dim {}",
            self.ideal_file, self.generator_span_dim, self.ideal_dim
        );
        if self.closure_enlarged_input {
            let _ = writeln!(
                out,
                "note: the generator span was not an ideal; quotient taken by its closure"
            );
        }
        let _ = writeln!(
            out,
            "quotient of {} has dim {} -> {}",
            self.file, self.quotient_dim, self.output
        );
        out
    }
}

#[derive(Debug, Serialize)]
pub struct FixtureReport {
    pub command: &'static str,
    pub name: String,
    pub field: String,
    pub dim: usize,
    pub output: String,
}

impl FixtureReport {
    pub fn to_text(&self) -> String {
        format!(
            "wrote fixture {} (dim {} over {}) -> {}\n",
            self.name, self.dim, self.field, self.output
        )
    }
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn render_violations(out: &mut String, violations: &[ViolationJson]) {
    for v in violations {
        let witness = v
            .witness
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(
            out,
            "FAIL {} at ({witness}): lhs = [{}], rhs = [{}]",
            v.axiom,
            v.lhs.join(", "),
            v.rhs.join(", ")
        );
    }
}
