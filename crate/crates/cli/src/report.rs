//! Run reports and the one-shot analysis pipeline.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use lieinvar_core::coadjoint::{commutator_rank, invariant_count};
use lieinvar_core::engine::{
    find_invariants, inter_reduce, radical_only_report, verify_invariant, FindOptions,
};
use lieinvar_core::lie::json::SemidirectMeta;
use lieinvar_core::lie::{sl2_irreducible_action, trivial_rep_report, LieAlgebra};
use lieinvar_core::oracle::max_flow_drift;
use lieinvar_core::rng::SplitMix64;
use lieinvar_core::tde::jacobian_system;

/// Machine-readable outcome of one command run. Serializes with sorted keys
/// (struct fields are declared alphabetically, nested objects are maps).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunReport {
    pub algebra_summary: AlgebraSummary,
    pub command: String,
    pub results: Value,
    pub seed: Option<u64>,
    pub version: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraSummary {
    pub basis: Vec<String>,
    pub dim: usize,
}

impl RunReport {
    pub fn new(command: &str, algebra: &LieAlgebra, results: Value, seed: Option<u64>) -> Self {
        RunReport {
            algebra_summary: AlgebraSummary {
                basis: algebra.basis().to_vec(),
                dim: algebra.dim(),
            },
            command: command.to_string(),
            results,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// One pipeline stage: a flag plus its details, both shown in the report.
#[derive(Debug, Clone)]
pub struct Stage {
    pub name: &'static str,
    pub ok: bool,
    pub value: Value,
    pub human: String,
}

/// Everything `report` computes, in stage order.
pub struct Pipeline {
    pub stages: Vec<Stage>,
}

impl Pipeline {
    pub fn all_ok(&self) -> bool {
        self.stages.iter().all(|s| s.ok)
    }

    pub fn results(&self) -> Value {
        let map: BTreeMap<String, Value> = self
            .stages
            .iter()
            .map(|s| (s.name.to_string(), s.value.clone()))
            .collect();
        json!({ "stages": map, "ok": self.all_ok() })
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        for s in &self.stages {
            out.push_str(&format!("{:<14} {}\n", format!("{}:", s.name), s.human));
        }
        out.push_str(&format!("overall: {}\n", if self.all_ok() { "ok" } else { "FAILED" }));
        out
    }
}

/// Default search depth: enough for every known closed form at small module
/// dimension, degree three beyond that.
pub fn default_max_degree(meta: Option<SemidirectMeta>) -> u32 {
    match meta {
        Some(m) if m.module <= 3 => 4,
        _ => 3,
    }
}

/// The full analysis pipeline: structure checks, rank and count, invariant
/// search with reduction, the total-differential system, and the numeric
/// oracle. Stage failures are recorded and the pipeline keeps going.
pub fn run_pipeline(
    algebra: &LieAlgebra,
    meta: Option<SemidirectMeta>,
    max_degree: u32,
    seed: u64,
) -> Pipeline {
    let mut stages = Vec::new();

    let jacobi = algebra.jacobi_report();
    stages.push(Stage {
        name: "jacobi",
        ok: jacobi.ok,
        value: json!({ "ok": jacobi.ok, "failures": jacobi.failures }),
        human: if jacobi.ok {
            "ok".to_string()
        } else {
            format!("FAILED on {} triple(s)", jacobi.failures.len())
        },
    });

    let perfect = algebra.is_perfect();
    let derived_dim = algebra.derived_subalgebra().dim();
    stages.push(Stage {
        name: "perfect",
        ok: true,
        value: json!({ "perfect": perfect, "derived_dim": derived_dim }),
        human: format!("{perfect} (derived subalgebra has dimension {derived_dim})"),
    });

    if let Some(meta) = meta {
        if meta.s_dim == 3 {
            let action = sl2_irreducible_action(meta.module);
            let report = trivial_rep_report(&action);
            let equivalence = report.fixed.is_empty() == report.image_spans;
            stages.push(Stage {
                name: "trivial_rep",
                ok: equivalence,
                value: json!({
                    "fixed_dim": report.fixed.dim(),
                    "image_spans": report.image_spans,
                    "equivalence": equivalence,
                }),
                human: format!(
                    "fixed subspace dim {}, image spans: {}",
                    report.fixed.dim(),
                    report.image_spans
                ),
            });
        }
    }

    let rank = commutator_rank(algebra);
    let count = invariant_count(algebra);
    stages.push(Stage {
        name: "rank",
        ok: true,
        value: json!(rank),
        human: rank.to_string(),
    });
    stages.push(Stage {
        name: "count",
        ok: true,
        value: json!(count),
        human: count.to_string(),
    });

    let options = FindOptions { max_degree, restrict: None, trials: 8, seed };
    let found = find_invariants(algebra, &options);
    let all_verify = found.polys().iter().all(|p| verify_invariant(algebra, p));
    stages.push(Stage {
        name: "invariants",
        ok: all_verify,
        value: json!({
            "found": found.len(),
            "max_degree": max_degree,
            "polys": found.polys().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        }),
        human: format!("found {} at degree <= {max_degree}", found.len()),
    });

    let prefer: Vec<usize> = if meta.is_some() { vec![0, 1, 2] } else { Vec::new() };
    let reduced = inter_reduce(&found, &prefer);
    stages.push(Stage {
        name: "reduce",
        ok: true,
        value: json!({
            "kept": reduced.len(),
            "polys": reduced.polys().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        }),
        human: format!("{} after reduction", reduced.len()),
    });

    let independent = reduced.independent_count();
    stages.push(Stage {
        name: "independence",
        ok: true,
        value: json!({ "independent_at_least": independent, "counted": count }),
        human: format!(">= {independent} independent of {count} counted"),
    });

    if let Some(meta) = meta {
        if meta.s_dim == 3 && meta.module >= 3 {
            match radical_only_report(algebra, meta.module, max_degree) {
                Ok(report) => {
                    let holds = report.holds();
                    stages.push(Stage {
                        name: "radical_only",
                        ok: holds,
                        value: json!({
                            "holds": holds,
                            "det_matches": report.det_matches,
                            "free_of_sl2": report.free_of_sl2,
                        }),
                        human: if holds { "holds".into() } else { "FAILED".into() },
                    });
                }
                Err(e) => stages.push(Stage {
                    name: "radical_only",
                    ok: false,
                    value: json!({ "error": e.to_string() }),
                    human: format!("error: {e}"),
                }),
            }
        }
    }

    let sys = jacobian_system(algebra);
    let integrable = sys.is_integrable();
    let solutions_agree = reduced.polys().iter().all(|p| sys.is_solution(p));
    stages.push(Stage {
        name: "tde",
        ok: integrable && solutions_agree,
        value: json!({
            "equations": sys.num_equations(),
            "integrable": integrable,
            "invariants_solve": solutions_agree,
        }),
        human: format!(
            "{} equation(s), integrable: {integrable}",
            sys.num_equations()
        ),
    });

    if reduced.is_empty() {
        stages.push(Stage {
            name: "oracle",
            ok: true,
            value: json!({ "max_drift": null, "skipped": "no invariants found" }),
            human: "skipped (no invariants found)".to_string(),
        });
    } else {
        let mut rng = SplitMix64::new(seed);
        let start = rng.f64_point(algebra.dim(), -1.0, 1.0);
        let mut worst = 0.0f64;
        let mut failure = None;
        for p in reduced.polys() {
            match max_flow_drift(algebra, p, &start, 1e-3, 1000) {
                Ok(d) => worst = worst.max(d),
                Err(e) => failure = Some(e.to_string()),
            }
        }
        let ok = failure.is_none() && worst < 1e-8;
        stages.push(Stage {
            name: "oracle",
            ok,
            value: json!({ "max_drift": worst, "error": failure }),
            human: format!("max drift {worst:.3e}"),
        });
    }

    Pipeline { stages }
}
