//! One function per subcommand. Each returns both renderings of its result
//! so `--json` never changes what is computed.

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Value};

use latticelab::bridge::ModuleBridge;
use latticelab::harness::{self, HarnessConfig, MonoidChoice};
use latticelab::linmor::enumerate_linmors;
use latticelab::properties::{self, Property, RickartKind};
use latticelab::{direct_product, EndoMonoid, Lattice, Limits, MonoidSpec};

pub struct Output {
    pub json: Value,
    pub text: String,
    /// False when a requested property failed or a counterexample was found.
    pub ok: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) | CliError::Input(s) => f.write_str(s),
        }
    }
}

fn input<E: fmt::Display>(context: impl fmt::Display) -> impl FnOnce(E) -> CliError {
    move |e| CliError::Input(format!("{context}: {e}"))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(input(path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(input(path.display()))
}

fn load_lattice(path: &Path, limits: &Limits) -> Result<Arc<Lattice>, CliError> {
    let text = read(path)?;
    Lattice::from_json(&text, limits.max_lattice)
        .map(Arc::new)
        .map_err(input(path.display()))
}

fn names(l: &Lattice, xs: impl IntoIterator<Item = latticelab::ElementId>) -> Vec<String> {
    xs.into_iter().map(|x| l.name_of(x).to_string()).collect()
}

pub fn validate(path: &Path, limits: &Limits) -> Result<Output, CliError> {
    let l = load_lattice(path, limits)?;
    let modular = l.is_modular();
    let distributive = l.is_distributive().holds;
    let complemented = names(&l, l.complemented_elements());
    let mut text = format!(
        "{}: lattice with {} elements, height {}\n",
        l.name(),
        l.len(),
        l.height()
    );
    writeln!(text, "{modular}").unwrap();
    writeln!(text, "distributive: {distributive}").unwrap();
    writeln!(
        text,
        "complemented elements: {{{}}}",
        complemented.join(", ")
    )
    .unwrap();
    Ok(Output {
        json: json!({
            "lattice": l.name(),
            "size": l.len(),
            "height": l.height(),
            "modular": modular,
            "distributive": distributive,
            "complemented_elements": complemented,
        }),
        text,
        ok: modular.holds,
    })
}

fn load_monoid(
    l: &Arc<Lattice>,
    monoid: &str,
    limits: &Limits,
) -> Result<(EndoMonoid, Value), CliError> {
    if monoid == "full" {
        let m = EndoMonoid::full(l, limits).map_err(input("full monoid"))?;
        return Ok((m, json!("full")));
    }
    let path = Path::new(monoid);
    let spec: MonoidSpec = serde_json::from_str(&read(path)?).map_err(input(path.display()))?;
    let m = EndoMonoid::from_spec(l, &spec, limits).map_err(input(path.display()))?;
    let echo = serde_json::to_value(&spec).expect("specs serialize");
    Ok((m, echo))
}

fn parse_props(text: &str) -> Result<Vec<Property>, CliError> {
    let props = Property::parse_list(text).map_err(|e| CliError::Usage(format!("--props: {e}")))?;
    if props.is_empty() {
        return Err(CliError::Usage("--props: no properties given".into()));
    }
    Ok(props)
}

pub fn analyze(
    path: &Path,
    monoid: &str,
    props: &str,
    limits: &Limits,
) -> Result<Output, CliError> {
    let l = load_lattice(path, limits)?;
    let props = parse_props(props)?;
    let (m, echo) = load_monoid(&l, monoid, limits)?;
    let report = properties::analyze(&m, &props, echo).map_err(input(l.name()))?;
    let mut text = format!(
        "{} with {} ({} members)\n",
        l.name(),
        m.description(),
        m.len()
    );
    for v in &report.results {
        writeln!(text, "{v}").unwrap();
    }
    let mut json = serde_json::to_value(&report).expect("reports serialize");
    json["monoid_size"] = json!(m.len());
    Ok(Output {
        ok: report.all_hold(),
        json,
        text,
    })
}

pub fn endos(
    path: &Path,
    codomain: Option<&Path>,
    list: bool,
    limits: &Limits,
) -> Result<Output, CliError> {
    let l = load_lattice(path, limits)?;
    let target = match codomain {
        Some(p) => load_lattice(p, limits)?,
        None => l.clone(),
    };
    let all = enumerate_linmors(&l, &target, limits).map_err(input(l.name()))?;
    let mut json = json!({
        "domain": l.name(),
        "codomain": target.name(),
        "count": all.len(),
    });
    let mut text = String::new();
    if list {
        let tables: Vec<Value> = all
            .iter()
            .map(|f| serde_json::to_value(f.table()).expect("tables serialize"))
            .collect();
        json["morphisms"] = Value::Array(tables);
        for f in &all {
            let parts: Vec<String> = f
                .table()
                .0
                .iter()
                .map(|(a, b)| format!("{a}↦{b}"))
                .collect();
            writeln!(
                text,
                "{{{}}}  kernel {}",
                parts.join(", "),
                l.name_of(f.kernel())
            )
            .unwrap();
        }
    } else {
        writeln!(text, "{}", all.len()).unwrap();
    }
    Ok(Output {
        json,
        text,
        ok: true,
    })
}

pub fn decompose(path: &Path, limits: &Limits) -> Result<Output, CliError> {
    let l = load_lattice(path, limits)?;
    let d = l.decompose().map_err(input(l.name()))?;
    let blocks: Vec<Value> = d
        .blocks
        .iter()
        .map(|&b| {
            let iv = l.down_interval(b);
            json!({ "top": l.name_of(b), "size": iv.len(), "is_two": iv.lattice().is_two() })
        })
        .collect();
    let mut text = format!("{}: {} block(s)\n", l.name(), d.blocks.len());
    for &b in &d.blocks {
        writeln!(
            text,
            "[0, {}] ({} elements)",
            l.name_of(b),
            l.down_interval(b).len()
        )
        .unwrap();
    }
    Ok(Output {
        json: json!({ "lattice": l.name(), "independent": d.independent, "blocks": blocks }),
        text,
        ok: d.independent,
    })
}

pub fn product(factors: &[PathBuf], output: &Path, limits: &Limits) -> Result<Output, CliError> {
    let loaded = factors
        .iter()
        .map(|p| load_lattice(p, limits))
        .collect::<Result<Vec<_>, _>>()?;
    let p = direct_product(&loaded, limits.max_lattice).map_err(input("product"))?;
    let l = p.lattice();
    write(output, &(l.to_json() + "\n"))?;
    Ok(Output {
        json: json!({ "lattice": l.name(), "size": l.len(), "output": output.display().to_string() }),
        text: format!(
            "{} ({} elements) written to {}\n",
            l.name(),
            l.len(),
            output.display()
        ),
        ok: true,
    })
}

fn rickart_kind(p: Property) -> Option<RickartKind> {
    match p {
        Property::Rickart => Some(RickartKind::Rickart),
        Property::Baer => Some(RickartKind::Baer),
        Property::DualRickart => Some(RickartKind::DualRickart),
        Property::DualBaer => Some(RickartKind::DualBaer),
        _ => None,
    }
}

pub fn module(group: &str, props: &str, limits: &Limits) -> Result<Output, CliError> {
    let props = parse_props(props)?;
    let bridge = ModuleBridge::parse(group, limits).map_err(input(format!("group `{group}`")))?;
    let l = bridge.lattice();
    let m = bridge.induced_monoid().map_err(input("induced monoid"))?;

    // First endomorphism inducing each member, for display.
    let mut members: Vec<(String, latticelab::LinearMorphism)> = Vec::new();
    for f in bridge
        .group()
        .endomorphisms(limits)
        .map_err(input("endomorphisms"))?
    {
        let phi = bridge.induced(&f).map_err(input("induced map"))?;
        if !members.iter().any(|(_, g)| g.map() == phi.map()) {
            members.push((f.describe(bridge.group()), phi));
        }
    }

    let mut text = format!(
        "{}: order {}, {} subgroups, 𝔈 has {} members\n",
        bridge.group(),
        bridge.group().order(),
        l.len(),
        m.len()
    );
    let mut member_json = Vec::new();
    for (desc, phi) in &members {
        let parts: Vec<String> = phi
            .table()
            .0
            .iter()
            .map(|(a, b)| format!("{a}↦{b}"))
            .collect();
        writeln!(text, "  {desc}: {{{}}}", parts.join(", ")).unwrap();
        member_json.push(json!({
            "endomorphism": desc,
            "induced": serde_json::to_value(phi.table()).expect("tables serialize"),
            "kernel": l.name_of(phi.kernel()),
        }));
    }

    let mut ok = true;
    let mut results = Vec::new();
    for p in props {
        let v = match rickart_kind(p) {
            Some(kind) => match bridge.rickart_module_direct(kind) {
                Ok(v) => v,
                Err(latticelab::GroupError::Disagreement {
                    property,
                    module,
                    lattice,
                }) => {
                    ok = false;
                    latticelab::Verdict::fail(property)
                        .with("module_side", module)
                        .with("lattice_side", lattice)
                        .note("module and lattice sides disagree")
                }
                Err(e) => return Err(CliError::Input(e.to_string())),
            },
            None => properties::evaluate(&m, p).map_err(input(p.id()))?,
        };
        ok &= v.holds;
        writeln!(text, "{v}").unwrap();
        results.push(serde_json::to_value(&v).expect("verdicts serialize"));
    }
    Ok(Output {
        json: json!({
            "group": bridge.group().to_string(),
            "order": bridge.group().order(),
            "lattice": l.to_spec(),
            "monoid_size": m.len(),
            "members": member_json,
            "results": results,
        }),
        text,
        ok,
    })
}

pub struct TheoremArgs {
    pub corpus: Option<PathBuf>,
    pub random: usize,
    pub max_size: usize,
    pub seed: u64,
    pub checks: Option<String>,
    pub monoid: String,
    pub report: Option<PathBuf>,
}

/// Every `*.json` file in `dir` that has an `elements` field, by file name.
fn load_corpus(dir: &Path, limits: &Limits) -> Result<Vec<Lattice>, CliError> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(input(dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for p in paths {
        let text = read(&p)?;
        let value: Value = serde_json::from_str(&text).map_err(input(p.display()))?;
        if value.get("elements").is_none() {
            continue;
        }
        out.push(Lattice::from_json(&text, limits.max_lattice).map_err(input(p.display()))?);
    }
    if out.is_empty() {
        return Err(CliError::Input(format!(
            "{}: no lattice files",
            dir.display()
        )));
    }
    Ok(out)
}

pub fn theorems(args: TheoremArgs, limits: &Limits) -> Result<Output, CliError> {
    let monoids = match args.monoid.as_str() {
        "full" => vec![MonoidChoice::Full],
        "projections" => vec![MonoidChoice::Projections],
        "both" => MonoidChoice::ALL.to_vec(),
        other => {
            return Err(CliError::Usage(format!(
                "--monoid: unknown choice `{other}`"
            )))
        }
    };
    let ids: Vec<String> = args
        .checks
        .as_deref()
        .map(|s| {
            s.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect()
        })
        .unwrap_or_default();
    let checks = harness::select_checks(&ids).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut corpus = match &args.corpus {
        Some(dir) => load_corpus(dir, limits)?,
        None => latticelab::fixtures::corpus(),
    };
    if args.random > 0 {
        corpus.extend(
            harness::random_corpus(args.seed, args.random, args.max_size)
                .map_err(|e| CliError::Usage(e.to_string()))?,
        );
    }
    let config = HarnessConfig {
        limits: limits.clone(),
        monoids,
        seed: Some(args.seed),
        ..HarnessConfig::default()
    };
    let report = harness::run_conformance(&corpus, &checks, &config);
    if let Some(path) = &args.report {
        write(path, &(report.to_json() + "\n"))?;
    }

    let mut text = format!(
        "{} lattices, {} pairs, seed {}\n",
        report.lattice_count, report.pair_count, args.seed
    );
    for t in &report.checks {
        writeln!(
            text,
            "{:<24} pass {:>5}  fail {:>3}  skip {:>4}",
            t.id, t.passed, t.failed, t.skipped
        )
        .unwrap();
    }
    for f in &report.failures {
        writeln!(text, "FAIL {} on {}: {}", f.check, f.lattice.name, f.detail).unwrap();
        writeln!(
            text,
            "  repro: {}",
            serde_json::to_string(f).expect("records serialize")
        )
        .unwrap();
    }
    writeln!(
        text,
        "total: {} passed, {} failed, {} skipped",
        report.passed(),
        report.failed(),
        report.skipped()
    )
    .unwrap();
    Ok(Output {
        ok: report.failed() == 0,
        json: serde_json::to_value(&report).expect("reports serialize"),
        text,
    })
}

pub fn export_dot(path: &Path, output: Option<&Path>, limits: &Limits) -> Result<Output, CliError> {
    let l = load_lattice(path, limits)?;
    let dot = l.to_dot();
    match output {
        Some(out) => {
            write(out, &dot)?;
            Ok(Output {
                json: json!({ "lattice": l.name(), "output": out.display().to_string() }),
                text: format!("wrote {}\n", out.display()),
                ok: true,
            })
        }
        None => Ok(Output {
            json: json!({ "lattice": l.name(), "dot": dot }),
            text: dot,
            ok: true,
        }),
    }
}
