//! The end-to-end check: from an action and a matching on its quotient to the equivariant
//! comparison of the development of the Morse complex of groups with the flow category.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::action::{
    check_regularity, choose_lifts_transfers, face_quotient, fixed_subcategory, fixed_subcomplex, lifts_with_least_transfers,
    LiftTransfer, LpAction, QuotientComplex, QuotientData, SimplicialAction,
};
use crate::cog::{cog_from_action, validate_cog, validate_cog_morphism, CogMorphismToConstant, ComplexOfGroups};
use crate::complex::simplicial_homology_oracle;
use crate::corpus::lifts_with_overrides;
use crate::development::{check_equivariant_iso, develop};
use crate::error::{Error, Result};
use crate::homology::{classifying_homology, HomologyProfile};
use crate::io;
use crate::lp::{IsoOutcome, DEFAULT_NERVE_BOUND};
use crate::morse::{check_compatibility, flow_category, validate_matching, FlowBudget, Matching};
use crate::morse_cog::{compare_with_flow_action, morse_cog, quotient_flow_iso};

#[derive(Debug, Clone)]
pub struct Budgets {
    pub nerve: usize,
    pub flow: FlowBudget,
    pub iso_nodes: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            nerve: DEFAULT_NERVE_BOUND,
            flow: FlowBudget::default(),
            iso_nodes: 1_000_000,
        }
    }
}

/// File paths and options for [`run_pipeline`].
#[derive(Debug, Clone, Default)]
pub struct PipelineConfig {
    pub complex: PathBuf,
    pub group: Option<PathBuf>,
    pub matching: Option<PathBuf>,
    /// Lines `lift <quotient vertices> -> <vertices>` overriding default lifts.
    pub lifts: Option<PathBuf>,
    pub seed: u64,
    pub budgets: Budgets,
    pub out: Option<PathBuf>,
    pub fixed_point_checks: bool,
    pub verbose: bool,
}

/// Parsed inputs of a run.
#[derive(Debug, Clone)]
pub struct PipelineInput {
    pub action: SimplicialAction,
    /// `(lower, upper)` vertex names on the quotient.
    pub matching: Vec<(Vec<String>, Vec<String>)>,
    pub lifts: Vec<(Vec<String>, Vec<String>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct StageVerdict {
    pub stage: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub group_order: usize,
    pub complex_f_vector: Vec<usize>,
    pub quotient_f_vector: Vec<usize>,
    pub matching_pairs: usize,
    pub flow_objects_quotient: usize,
    pub lifted_pairs: usize,
    pub flow_objects: usize,
    pub development_objects: usize,
    pub development_homology: Option<HomologyProfile>,
    pub complex_homology: Option<HomologyProfile>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedPointCheck {
    pub subgroup: String,
    pub fixed_objects: usize,
    pub category_betti: Vec<usize>,
    pub complex_betti: Vec<usize>,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    pub verdict: &'static str,
    pub exit_code: i32,
    pub failed_stage: Option<&'static str>,
    pub seed: u64,
    pub stages: Vec<StageVerdict>,
    pub summary: Summary,
    pub fixed_point_checks: Option<Vec<FixedPointCheck>>,
    pub notes: Vec<String>,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.exit_code == 0
    }

    pub fn stage(&self, name: &str) -> Option<&StageVerdict> {
        self.stages.iter().find(|s| s.stage == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub const STAGES: [&str; 16] = [
    "load",
    "action",
    "regularity",
    "quotient",
    "lifts",
    "complex of groups",
    "validate",
    "matching",
    "compatibility",
    "quotient flow category",
    "lifted flow category",
    "morse complex of groups",
    "develop",
    "commuting lifts",
    "equivariant isomorphism",
    "homology",
];

struct Run {
    stages: Vec<StageVerdict>,
    failed: Option<(&'static str, i32)>,
}

impl Run {
    fn step<T>(&mut self, stage: &'static str, r: Result<T>, detail: impl FnOnce(&T) -> String) -> Option<T> {
        match r {
            Ok(v) => {
                let d = detail(&v);
                self.stages.push(StageVerdict {
                    stage,
                    status: Status::Pass,
                    detail: d,
                });
                Some(v)
            }
            Err(e) => {
                self.stages.push(StageVerdict {
                    stage,
                    status: Status::Fail,
                    detail: e.to_string(),
                });
                self.failed = Some((stage, e.exit_code()));
                None
            }
        }
    }

    fn finish(mut self, seed: u64, summary: Summary, fixed: Option<Vec<FixedPointCheck>>, notes: Vec<String>) -> PipelineReport {
        let done = self.stages.len();
        for &stage in &STAGES[done.min(STAGES.len())..] {
            self.stages.push(StageVerdict {
                stage,
                status: Status::Skipped,
                detail: String::new(),
            });
        }
        let (failed_stage, exit_code) = match self.failed {
            Some((s, c)) => (Some(s), c),
            None => (None, 0),
        };
        PipelineReport {
            verdict: if exit_code == 0 { "PASS" } else { "FAIL" },
            exit_code,
            failed_stage,
            seed,
            stages: self.stages,
            summary,
            fixed_point_checks: fixed,
            notes,
        }
    }
}

fn betti(h: &HomologyProfile) -> String {
    format!("betti {:?} torsion {:?}", h.betti, h.torsion)
}

/// Seeded lifts and transfers, honouring the lift overrides of the input.
pub fn choose_lifts(input: &PipelineInput, q: &QuotientComplex, fa: &LpAction, qd: &QuotientData, seed: u64) -> Result<LiftTransfer> {
    let lt = if input.lifts.is_empty() {
        choose_lifts_transfers(fa, qd, seed)?
    } else {
        let lift = lifts_with_overrides(&input.action, q, qd, &input.lifts)?;
        lifts_with_least_transfers(fa, qd, lift, seed)?
    };
    lt.validate(fa, qd).into_result("lifts")?;
    Ok(lt)
}

/// The stages up to a validated complex of groups.
pub struct Prepared {
    pub quotient: QuotientComplex,
    pub face_action: LpAction,
    pub quotient_data: QuotientData,
    pub lifts: LiftTransfer,
    pub cog: ComplexOfGroups,
    pub phi: CogMorphismToConstant,
}

pub fn prepare(input: &PipelineInput, seed: u64) -> Result<Prepared> {
    check_regularity(&input.action).into_result("regularity")?;
    let (quotient, face_action, quotient_data) = face_quotient(&input.action)?;
    let lifts = choose_lifts(input, &quotient, &face_action, &quotient_data, seed)?;
    let (cog, phi) = cog_from_action(&face_action, &quotient_data, &lifts)?;
    validate_cog(&cog).into_result("complex of groups")?;
    validate_cog_morphism(&phi, &cog).into_result("morphism to constant complex")?;
    Ok(Prepared {
        quotient,
        face_action,
        quotient_data,
        lifts,
        cog,
        phi,
    })
}

/// All stages on parsed input; stops at the first failing stage.
pub fn run_stages(input: &PipelineInput, seed: u64, budgets: &Budgets, fixed_point_checks: bool) -> PipelineReport {
    let a = &input.action;
    let mut run = Run {
        stages: Vec::new(),
        failed: None,
    };
    let mut summary = Summary {
        group_order: a.group.order(),
        complex_f_vector: a.complex.f_vector(),
        ..Summary::default()
    };
    let notes = vec![
        "transfers on morphisms are compared literally: the commuting-lifts check requires tau(f) = tau'(Ef)".to_string(),
        "homology of classifying spaces is computed from the normalized double nerve".to_string(),
    ];
    run.stages.push(StageVerdict {
        stage: "load",
        status: Status::Pass,
        detail: format!("{} simplices, {} matched pairs", a.complex.len(), input.matching.len()),
    });
    run.stages.push(StageVerdict {
        stage: "action",
        status: Status::Pass,
        detail: format!("group of order {}", a.group.order()),
    });
    macro_rules! stage {
        ($name:expr, $e:expr, $detail:expr) => {
            match run.step($name, $e, $detail) {
                Some(v) => v,
                None => return run.finish(seed, summary, None, notes),
            }
        };
    }
    stage!("regularity", check_regularity(a).into_result("regularity"), |_| "regular".into());
    let (q, fa, qd) = stage!("quotient", face_quotient(a), |(q, _, _)| format!("f-vector {:?}", q.complex.f_vector()));
    summary.quotient_f_vector = q.complex.f_vector();
    let lt = stage!(
        "lifts",
        choose_lifts(input, &q, &fa, &qd, seed),
        |_| format!("seed {seed}")
    );
    let (f, phi) = stage!("complex of groups", cog_from_action(&fa, &qd, &lt), |(f, _)| format!(
        "{} objects",
        f.base.n_objects()
    ));
    stage!(
        "validate",
        validate_cog(&f)
            .into_result("complex of groups")
            .and_then(|_| validate_cog_morphism(&phi, &f).into_result("morphism to constant complex")),
        |_| "all axioms hold".into()
    );
    let y = q.complex.clone();
    let sigma = stage!(
        "matching",
        Matching::from_names(&y, &input.matching).and_then(|m| validate_matching(&y, &m).into_result("matching").map(|_| m)),
        |m: &Matching| format!("{} pairs", m.len())
    );
    summary.matching_pairs = sigma.len();
    stage!(
        "compatibility",
        check_compatibility(&f, &y, &sigma).into_result("compatibility"),
        |_| "compatible".into()
    );
    let flow_y = stage!("quotient flow category", flow_category(y.clone(), &sigma, budgets.flow), |fy| format!(
        "{} critical cells",
        fy.category.n_objects()
    ));
    let fq = stage!("lifted flow category", quotient_flow_iso(a, &q, &f, &flow_y, budgets.flow), |fq| format!(
        "{} lifted pairs, {} critical cells",
        fq.lifted.len(),
        fq.flow_x.category.n_objects()
    ));
    summary.flow_objects_quotient = flow_y.category.n_objects();
    summary.lifted_pairs = fq.lifted.len();
    summary.flow_objects = fq.flow_x.category.n_objects();
    let morse = stage!("morse complex of groups", morse_cog(&f, &phi, &flow_y), |(m, _)| format!(
        "{} objects, {} morphisms",
        m.base.n_objects(),
        m.base.n_morphisms()
    ));
    let d = stage!("develop", develop(&morse.0, &morse.1), |d| format!("{} objects", d.category.n_objects()));
    summary.development_objects = d.category.n_objects();
    let cmp = stage!("commuting lifts", compare_with_flow_action(a, &q, &lt, &flow_y, morse, fq), |_| {
        "lifts, transfers and twists agree".into()
    });
    let inv = cmp.flow.e.inverse();
    let lifted: Vec<usize> = cmp.morse.0.base.morphism_ids().map(|m| cmp.lifts.lifted[inv.morphisms[m]]).collect();
    let witness = d.witness_functor(&cmp.flow.action, &cmp.lifts.lift, &lifted);
    let iso = check_equivariant_iso(&d.action, &cmp.flow.action, Some(&witness), budgets.iso_nodes).and_then(|o| match o {
        IsoOutcome::Found(f) => Ok(f == witness),
        IsoOutcome::NotIsomorphic => Err(Error::verification("equivariant isomorphism", "no equivariant isomorphism exists")),
        IsoOutcome::Inconclusive => Err(Error::Budget {
            what: "isomorphism search",
            budget: budgets.iso_nodes,
        }),
    });
    stage!("equivariant isomorphism", iso, |&w| if w {
        "witness functor is an equivariant isomorphism".into()
    } else {
        "found by search".into()
    });
    let homology = classifying_homology(&d.category, budgets.nerve).and_then(|hd| {
        let hx = simplicial_homology_oracle(&a.complex)?;
        if hd == hx {
            Ok((hd, hx))
        } else {
            Err(Error::verification("homology", format!("development {} vs complex {}", betti(&hd), betti(&hx))))
        }
    });
    let (hd, hx) = stage!("homology", homology, |(hd, _)| betti(hd));
    summary.development_homology = Some(hd);
    summary.complex_homology = Some(hx);
    let fixed = fixed_point_checks.then(|| fixed_points(a, &d.action, budgets.nerve));
    let mut notes = notes;
    let fixed = match fixed {
        Some(Ok(checks)) => {
            notes.push("fixed-point comparison is a derived check".into());
            if checks.iter().any(|c| !c.agree) {
                run.failed = Some(("fixed points", 1));
            }
            Some(checks)
        }
        Some(Err(e)) => {
            notes.push(format!("fixed-point comparison aborted: {e}"));
            run.failed = Some(("fixed points", e.exit_code()));
            None
        }
        None => None,
    };
    run.finish(seed, summary, fixed, notes)
}

/// For each subgroup `H`, the classifying homology of the `H`-fixed part of `D` against the
/// homology of `X^H`.
pub fn fixed_points(a: &SimplicialAction, d: &LpAction, bound: usize) -> Result<Vec<FixedPointCheck>> {
    let g = &a.group;
    let mut out = Vec::new();
    for h in g.all_subgroups() {
        let c = fixed_subcategory(d, &h)?;
        let category_betti = if c.n_objects() == 0 {
            Vec::new()
        } else {
            classifying_homology(&c, bound)?.betti
        };
        let complex_betti = match fixed_subcomplex(a, &h)? {
            Some(x) => simplicial_homology_oracle(&x)?.betti,
            None => Vec::new(),
        };
        out.push(FixedPointCheck {
            subgroup: h.display(g),
            fixed_objects: c.n_objects(),
            agree: category_betti == complex_betti,
            category_betti,
            complex_betti,
        });
    }
    Ok(out)
}

/// Lines `lift <quotient vertices> -> <vertices>`.
pub fn parse_lifts(text: &str) -> Result<Vec<(Vec<String>, Vec<String>)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let l = line.split('#').next().unwrap().trim();
        if l.is_empty() {
            continue;
        }
        let rest = l
            .strip_prefix("lift ")
            .ok_or_else(|| Error::parse(i + 1, format!("expected 'lift ...', found '{l}'")))?;
        let (y, x) = rest
            .split_once("->")
            .ok_or_else(|| Error::parse(i + 1, "expected 'lift <quotient simplex> -> <simplex>'"))?;
        let names = |s: &str| s.split_whitespace().map(str::to_string).collect::<Vec<_>>();
        out.push((names(y), names(x)));
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

/// Parses the configured files into a [`PipelineInput`].
pub fn load_input(cfg: &PipelineConfig) -> Result<PipelineInput> {
    let complex = read(&cfg.complex)?;
    let group = cfg.group.as_deref().map(read).transpose()?;
    let action = io::load_action(&complex, group.as_deref())?;
    let matching = match &cfg.matching {
        None => Vec::new(),
        Some(p) => parse_named_pairs(&read(p)?)?,
    };
    let lifts = match &cfg.lifts {
        None => Vec::new(),
        Some(p) => parse_lifts(&read(p)?)?,
    };
    Ok(PipelineInput { action, matching, lifts })
}

/// Matching lines as vertex names, resolved later against the quotient.
pub fn parse_named_pairs(text: &str) -> Result<Vec<(Vec<String>, Vec<String>)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let l = line.split('#').next().unwrap().trim();
        if l.is_empty() {
            continue;
        }
        let rest = l
            .strip_prefix("pair ")
            .ok_or_else(|| Error::parse(i + 1, format!("expected 'pair ...', found '{l}'")))?;
        let (lower, upper) = rest
            .split_once("->")
            .ok_or_else(|| Error::parse(i + 1, "expected 'pair <lower> -> <upper>'"))?;
        let names = |s: &str| s.split_whitespace().map(str::to_string).collect::<Vec<_>>();
        out.push((names(lower), names(upper)));
    }
    Ok(out)
}

/// Loads, runs every stage and writes `report.json` when an output directory is set.
pub fn run_pipeline(cfg: &PipelineConfig) -> (i32, Option<PipelineReport>, Option<Error>) {
    let input = match load_input(cfg) {
        Ok(i) => i,
        Err(e) => return (e.exit_code(), None, Some(e)),
    };
    let report = run_stages(&input, cfg.seed, &cfg.budgets, cfg.fixed_point_checks);
    if let Some(dir) = &cfg.out {
        let written = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(dir.join("report.json"), report.to_json() + "\n"));
        if let Err(e) = written {
            return (2, Some(report), Some(Error::Io(e)));
        }
    }
    (report.exit_code, Some(report), None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{annulus_d8, sphere};
    use std::sync::Arc;

    #[test]
    fn trivial_group_empty_matching_passes() {
        let input = PipelineInput {
            action: SimplicialAction::trivial(Arc::new(sphere())),
            matching: Vec::new(),
            lifts: Vec::new(),
        };
        let r = run_stages(&input, 0, &Budgets::default(), true);
        assert!(r.passed(), "{}", r.to_json());
        assert_eq!(r.summary.development_homology, r.summary.complex_homology);
        assert!(r.fixed_point_checks.unwrap().iter().all(|c| c.agree));
    }

    #[test]
    fn annulus_passes_and_is_deterministic() {
        let ex = annulus_d8();
        let input = PipelineInput {
            action: ex.action,
            matching: ex.matching,
            lifts: ex.lifts,
        };
        let r = run_stages(&input, 0, &Budgets::default(), false);
        assert!(r.passed(), "{}", r.to_json());
        assert_eq!(r.summary.flow_objects_quotient, 9);
        assert_eq!(r.summary.development_objects, 48);
        assert_eq!(r.to_json(), run_stages(&input, 0, &Budgets::default(), false).to_json());
    }

    #[test]
    fn incompatible_matching_fails_at_compatibility() {
        let ex = annulus_d8();
        let n = |vs: &[&str]| vs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let input = PipelineInput {
            action: ex.action,
            matching: vec![(n(&["a0", "c0"]), n(&["a0", "c0", "d0"]))],
            lifts: ex.lifts,
        };
        let r = run_stages(&input, 0, &Budgets::default(), false);
        assert_eq!(r.failed_stage, Some("compatibility"));
        assert_eq!(r.exit_code, 1);
        assert_eq!(r.stage("develop").unwrap().status, Status::Skipped);
    }
}
