use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use polygraph::enumeration::{self, isomorphism_classes};
use polygraph::periodicity::{self, check_tail_condition, find_gamma, symmetry_lattice, TailCheck};
use polygraph::representations::{
    cycle_construction, decompose, from_commuting_words, normalize_scalars, to_atomic_graph, GroupConstruction,
    GroupConstructionJson,
};
use polygraph::suite::{run_suite, SuiteData, SuiteOptions};
use polygraph::tails::{self, Tail};
use polygraph::{catalog, Error, Multidegree, Phase, Presentation, PresentationJson, ThetaFamily, Word};

use crate::args::{Cli, Command, RepCommand, Source, TailCommand};
use crate::manifest;

/// What a command produced: exit code, machine output, human text.
pub struct Outcome {
    pub code: u8,
    pub body: Vec<u8>,
    pub text: String,
    pub summary: Value,
}

pub(crate) struct Reply {
    pub body: Vec<u8>,
    pub text: String,
    pub summary: Value,
}

pub(crate) struct Failure {
    pub code: u8,
    pub message: String,
    pub detail: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = if e.is_rejection() {
            2
        } else if e.is_budget() {
            3
        } else {
            1
        };
        Failure {
            code,
            message: e.to_string(),
            detail: serde_json::to_value(&e).unwrap_or(Value::Null),
        }
    }
}

pub(crate) fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
        detail: Value::Null,
    }
}

pub(crate) fn rejection(message: impl Into<String>, detail: Value) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
        detail,
    }
}

pub(crate) type Run = Result<Reply, Failure>;

pub fn to_bytes(v: &impl Serialize) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("output serializes");
    out.push(b'\n');
    out
}

pub(crate) fn reply(v: &impl Serialize, text: String, summary: Value) -> Run {
    Ok(Reply {
        body: to_bytes(v),
        text,
        summary,
    })
}

pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Validate { path } => validate(path),
        Command::Enumerate { m, classify } => enumerate(m, *classify),
        Command::Classify { m } => enumerate(m, true),
        Command::Tail(t) => tail(t),
        Command::Periodicity {
            source,
            pi,
            force_transducer,
            state_cap,
        } => periodicity(source, pi, *force_transducer, *state_cap),
        Command::Symmetry { source, bound, report } => symmetry(source, *bound, report.as_deref()),
        Command::Rep(r) => rep(r),
        Command::PaperSuite { data_dir, only, seed } => paper_suite(data_dir.as_deref(), only, *seed),
        Command::Replay { manifest } => manifest::replay(manifest),
        Command::Catalog { name } => catalog_cmd(name.as_deref()),
    };
    match result {
        Ok(r) => Outcome {
            code: 0,
            body: r.body,
            text: r.text,
            summary: r.summary,
        },
        Err(f) => {
            let status = match f.code {
                2 => "rejected",
                3 => "budget_exceeded",
                _ => "error",
            };
            let body = json!({ "status": status, "message": f.message, "detail": f.detail });
            Outcome {
                code: f.code,
                body: to_bytes(&body),
                text: format!("{status}: {}\n", f.message),
                summary: json!({ "status": status }),
            }
        }
    }
}

/// A file path, or a catalog name with optional `:`-separated parameters.
pub fn load_presentation(name_or_path: &str) -> Result<Presentation, Failure> {
    let path = Path::new(name_or_path);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{name_or_path}: {e}")))?;
        let json: PresentationJson =
            serde_json::from_str(&text).map_err(|e| input_error(format!("{name_or_path}: {e}")))?;
        return Ok(Presentation::from_json(&json)?);
    }
    let mut parts = name_or_path.split(':');
    let name = parts.next().unwrap_or_default();
    let params: Vec<usize> = parts
        .map(|x| x.parse().map_err(|_| input_error(format!("bad parameter '{x}' in '{name_or_path}'"))))
        .collect::<Result<_, _>>()?;
    let built = match (name, params.as_slice()) {
        ("transposition", [k, n]) if *k >= 1 && *n >= 1 => Some(catalog::transposition(*k, *n)),
        ("commuting-product", [l, m]) if *l >= 1 && *m >= 1 => Some(catalog::commuting_product(*l, *m)),
        ("transposed-product", [m]) if *m >= 1 => Some(catalog::transposed_product(*m)),
        (_, []) => catalog::by_name(name),
        _ => None,
    };
    built.ok_or_else(|| input_error(format!("'{name_or_path}' is neither a file nor a catalog name")))
}

pub(crate) fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn validate(path: &Path) -> Run {
    let json: PresentationJson = read_json(path)?;
    let family = ThetaFamily::from_json(&json)?;
    if let Some(e) = family.cubic_witness() {
        return Err(e.into());
    }
    let text = format!("valid {}-graph, m = {:?}\n", family.k(), family.m());
    let out = json!({ "valid": true, "k": family.k(), "m": family.m() });
    reply(&out, text, out.clone())
}

fn enumerate(m: &[usize], classify: bool) -> Run {
    let budget = polygraph::budget_from_env(enumeration::DEFAULT_BUDGET);
    let all = enumeration::enumerate_presentations(m, budget)?;
    if classify {
        let classes: Vec<_> = isomorphism_classes(&all).iter().map(|c| c.to_json()).collect();
        let text = format!("{} presentations in {} isomorphism classes\n", all.len(), classes.len());
        let summary = json!({ "presentations": all.len(), "classes": classes.len() });
        reply(&classes, text, summary)
    } else {
        let list: Vec<_> = all.iter().map(|p| p.to_json()).collect();
        let text = format!("{} presentations\n", list.len());
        reply(&list, text, json!({ "presentations": list.len() }))
    }
}

fn tail(cmd: &TailCommand) -> Run {
    match cmd {
        TailCommand::Sigma { tail, box_bound } => {
            let p = load_presentation(&tail.source.presentation)?;
            let t = Tail::new(&p, &Word::parse_chain(p.k(), &tail.preperiod)?, &Word::parse_chain(p.k(), &tail.period)?)?;
            if box_bound.len() != p.k() {
                return Err(input_error(format!("--box needs {} entries", p.k())));
            }
            let data = tails::sigma_data(&p, &t, &Multidegree(box_bound.clone()));
            let entries: Vec<Value> = data
                .entries()
                .into_iter()
                .map(|(n, s)| json!({ "n": n, "sigma": s }))
                .collect();
            let text = format!("{} box points\n", entries.len());
            let summary = json!({ "points": entries.len() });
            reply(&json!({ "tail": t.to_json(), "box": box_bound, "entries": entries }), text, summary)
        }
        TailCommand::Symmetry { tail, bound, depth } => {
            let p = load_presentation(&tail.source.presentation)?;
            let t = Tail::new(&p, &Word::parse_chain(p.k(), &tail.preperiod)?, &Word::parse_chain(p.k(), &tail.period)?)?;
            let sym = tails::tail_symmetry_group(&p, &t, *bound, *depth);
            let text = format!(
                "H_τ ⊇ lattice of rank {} with basis {:?} (shifts |p_i| ≤ {bound})\n",
                sym.lattice.rank(),
                sym.lattice.basis
            );
            let summary = json!({ "rank": sym.lattice.rank(), "basis": sym.lattice.basis });
            reply(&sym, text, summary)
        }
        TailCommand::Splice {
            source,
            bound,
            depth,
            blocks,
        } => {
            let p = load_presentation(&source.presentation)?;
            let t = tails::splice_tail(&p, *bound, *depth, *blocks)?;
            let sym = tails::tail_symmetry_group(&p, &t, *bound, *depth);
            let text = format!("spliced period {} with symmetry rank {}\n", t.period(), sym.lattice.rank());
            let summary = json!({ "period_length": t.period().len(), "rank": sym.lattice.rank() });
            reply(&json!({ "tail": t.to_json(), "symmetry": sym }), text, summary)
        }
    }
}

fn periodicity(source: &Source, pi: &[i64], force: bool, state_cap: Option<usize>) -> Run {
    let p = load_presentation(&source.presentation)?;
    if pi.len() != p.k() {
        return Err(input_error(format!("π needs {} entries", p.k())));
    }
    let Some(mut cert) = find_gamma(&p, pi)? else {
        return Err(rejection(
            format!("π = {pi:?} is not a period: no bijection γ"),
            json!({ "pi": pi, "reason": "no_gamma" }),
        ));
    };
    let cap = state_cap.unwrap_or_else(|| polygraph::budget_from_env(periodicity::DEFAULT_STATE_CAP as u128) as usize);
    let transcript = check_tail_condition(&p, &cert, cap, force)?;
    if let Some(v) = &transcript.violation {
        return Err(rejection(
            format!("π = {pi:?} is not a period: tail condition fails for e = {} along {}", v.e, v.path),
            json!({
                "pi": pi,
                "reason": "tail_condition",
                "e": v.e.to_pairs(),
                "path": v.path.to_pairs(),
                "states_visited": transcript.states_visited,
            }),
        ));
    }
    cert.tail_check = Some(if transcript.automatic {
        TailCheck::Automatic
    } else {
        TailCheck::Transducer {
            states_visited: transcript.states_visited,
        }
    });
    let text = format!("π = {pi:?} is a period; |E| = {}\n", cert.gamma.len());
    reply(&cert.to_json(), text, json!({ "periodic": true, "pi": pi }))
}

fn symmetry(source: &Source, bound: usize, report_path: Option<&Path>) -> Run {
    let p = load_presentation(&source.presentation)?;
    let lattice = symmetry_lattice(&p, bound)?;
    let report = periodicity::structure_report(&p, &lattice);
    if let Some(path) = report_path {
        std::fs::write(path, to_bytes(&report)).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    }
    let certificates: Vec<_> = lattice.certificates.iter().map(|c| c.to_json()).collect();
    let out = json!({
        "bound": bound,
        "rank": lattice.rank(),
        "basis": lattice.lattice.basis,
        "periods": lattice.periods,
        "certificates": certificates,
        "report": report,
    });
    let summary = json!({ "rank": lattice.rank(), "basis": lattice.lattice.basis });
    reply(&out, report.to_text(), summary)
}

/// Which extension of the loop character is used when constants are chosen.
const SCALAR_CONVENTION: &str = "constant input kept as is; otherwise α^i solved by back-substitution on the HNF rows of the relation lattice, taking the principal root at each pivot";

/// `112` or `1.1.2` as an index sequence.
fn parse_indices(s: &str) -> Result<Vec<usize>, Failure> {
    let bad = || input_error(format!("bad index word '{s}'"));
    let v: Vec<usize> = if s.contains('.') {
        s.split('.').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    } else {
        s.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_, _>>()?
    };
    if v.is_empty() {
        return Err(bad());
    }
    Ok(v)
}

fn load_construction(path: &Path) -> Result<GroupConstruction, Failure> {
    let json: GroupConstructionJson = read_json(path)?;
    Ok(GroupConstruction::from_json(&json)?)
}

fn checked_construction(source: &Source, path: &Path) -> Result<GroupConstruction, Failure> {
    let p = load_presentation(&source.presentation)?;
    let gc = load_construction(path)?;
    if gc.k() != p.k() {
        return Err(input_error(format!("construction has {} colors, presentation {}", gc.k(), p.k())));
    }
    if let Some(v) = gc.validate(&p) {
        return Err(rejection("construction violates the commutation rule", json!(v)));
    }
    Ok(gc)
}

fn rep(cmd: &RepCommand) -> Run {
    match cmd {
        RepCommand::Build { source, words, alphas } => {
            let p = load_presentation(&source.presentation)?;
            let words: Vec<Vec<usize>> = words.iter().map(|w| parse_indices(w)).collect::<Result<_, _>>()?;
            let alphas: Vec<Phase> = if alphas.is_empty() {
                vec![Phase::ZERO; p.k()]
            } else {
                alphas.iter().map(|a| a.parse()).collect::<Result<_, Error>>()?
            };
            let gc = from_commuting_words(&p, &words, &alphas)?;
            let text = format!("construction of dimension {}\n", gc.dimension());
            reply(&gc.to_json(), text, json!({ "dimension": gc.dimension() }))
        }
        RepCommand::Decompose { source, input } => {
            let gc = checked_construction(source, input)?;
            let report = decompose(&gc);
            let dims: Vec<usize> = report.summands.iter().map(|s| s.construction.dimension()).collect();
            let text = format!(
                "{} summands of dimensions {:?}; symmetry order {}\n",
                dims.len(),
                dims,
                report.symmetry.len()
            );
            let summary = json!({ "summands": dims.len(), "dimensions": dims });
            let mut out = serde_json::to_value(report.to_json()).expect("report serializes");
            out["scalar_convention"] = SCALAR_CONVENTION.into();
            reply(&out, text, summary)
        }
        RepCommand::Normalize { source, input } => {
            let gc = checked_construction(source, input)?;
            let n = normalize_scalars(&gc);
            let constants = n.constant_alphas();
            let text = match &constants {
                Some(c) => format!("constant scalars {}\n", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")),
                None => "scalars are not constant\n".to_string(),
            };
            let out = json!({
                "construction": n.to_json(),
                "constants": constants,
                "scalar_convention": SCALAR_CONVENTION,
            });
            reply(&out, text, json!({ "constants": constants }))
        }
        RepCommand::ExportDot { input } => {
            let gc = load_construction(input)?;
            let graph = to_atomic_graph(&gc);
            Ok(Reply {
                body: graph.to_dot().into_bytes(),
                text: format!("{} vertices, {} edges\n", graph.vertices.len(), graph.edges.len()),
                summary: json!({ "vertices": graph.vertices.len(), "edges": graph.edges.len() }),
            })
        }
        RepCommand::Cycle { source, seeds } => {
            let p = load_presentation(&source.presentation)?;
            let seeds: Vec<Vec<usize>> = seeds.iter().map(|w| parse_indices(w)).collect::<Result<_, _>>()?;
            let r = cycle_construction(&p, &seeds)?;
            let text = format!("commuting words {:?}, cycle lengths {:?}\n", r.words, r.cycle_lengths);
            let summary = json!({ "cycle_lengths": r.cycle_lengths });
            reply(&r, text, summary)
        }
    }
}

fn paper_suite(data_dir: Option<&Path>, only: &[String], seed: u64) -> Run {
    let data = match data_dir {
        Some(dir) => SuiteData::from_dir(dir),
        None => SuiteData::builtin(),
    };
    let opts = SuiteOptions {
        seed,
        ..SuiteOptions::default()
    };
    let rows = run_suite(&data, &opts, only);
    if rows.is_empty() {
        return Err(input_error(format!("no criteria match {only:?}")));
    }
    let mut text = String::new();
    for r in &rows {
        text.push_str(&r.line());
        text.push('\n');
    }
    let failed: Vec<&str> = rows.iter().filter(|r| !r.passed).map(|r| r.id.as_str()).collect();
    let out = json!({ "seed": seed, "passed": failed.is_empty(), "criteria": rows });
    if failed.is_empty() {
        reply(&out, text, json!({ "failed": failed }))
    } else {
        Err(Failure {
            code: 2,
            message: format!("{text}failed criteria: {failed:?}"),
            detail: out,
        })
    }
}

fn catalog_cmd(name: Option<&str>) -> Run {
    match name {
        None => {
            let names = catalog::NAMES;
            reply(&names, format!("{} catalog entries\n", names.len()), json!({ "entries": names.len() }))
        }
        Some("cubic-counterexample") => {
            let f = catalog::cubic_counterexample();
            reply(&f.to_json(), "bijective tables that fail the cubic condition\n".into(), Value::Null)
        }
        Some(name_or_path) => {
            let p = load_presentation(name_or_path)?;
            let text = format!("{}-graph, m = {:?}\n", p.k(), p.m());
            reply(&p.to_json(), text, json!({ "k": p.k(), "m": p.m() }))
        }
    }
}
