//! Command-line front end.
//!
//! [`dispatch`] parses an argument vector, runs one computation and returns
//! the exit code together with the text to print.  Exit codes: 0 success,
//! 1 failed verification, 2 malformed input, 3 violated precondition.
//! Arguments naming input documents accept either a file path or inline JSON.

use crate::arrangements::BuildingSet;
use crate::blowup::{building_transition, projective_canonicalize, projective_class_exact, projective_is_singular};
use crate::bundlejet::{holonomic_predicate, jet_blow_down, jet_chart, jet_limit, jet_offsets, HolonomicMode, HOLONOMIC_C};
use crate::error::{Error, Result};
use crate::fm::{covering_forest, covering_forest_with_roots, curve_limit, fm_blow_down, fm_building_set, fm_chart, fm_check, fm_projective_canonicalize, label_name, screens_render, Covering, Forest};
use crate::io::*;
use crate::jets::{Series, WeightVector};
use crate::surd::Surd;
use crate::verify::{run_suite, VerifyConfig};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Parser, Debug)]
#[command(name = "wblowup", version, about = "Weighted blow-ups of building sets and weighted configuration spaces")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Separation, uniform alignment and weighted validity of a building set.
    Check { building_set: String },
    /// All nests of a building set, cross-checked against the flag enumeration.
    Nests { building_set: String },
    /// Factors of an element or of an intersection `A+B+…` of elements.
    Factors {
        building_set: String,
        #[arg(long)]
        element: String,
    },
    /// Weight tableau of a nest.
    Tableau {
        building_set: String,
        #[arg(long, value_delimiter = ',', required = true)]
        nest: Vec<String>,
        /// Control columns as `NAME=COLUMN` (0-based).
        #[arg(long, value_delimiter = ',')]
        h: Vec<String>,
    },
    /// Chart coordinates of a blown-up point, or the point of given coordinates.
    Chart {
        building_set: String,
        perspective: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Blow-down of chart coordinates.
    Blowdown {
        building_set: String,
        perspective: String,
        #[arg(long)]
        point: String,
    },
    /// Chart coordinates in a second perspective.
    Transition {
        building_set: String,
        from: String,
        to: String,
        #[arg(long)]
        point: String,
    },
    /// Control set of a chart point.
    ControlSet {
        building_set: String,
        perspective: String,
        #[arg(long)]
        point: String,
    },
    /// Whether a chart point lies on a weak singularity.
    WeakSingular {
        building_set: String,
        perspective: String,
        #[arg(long)]
        point: String,
    },
    /// Weighted configuration spaces.
    Fm {
        #[command(subcommand)]
        cmd: FmCmd,
    },
    /// Weighted projective classes of divisor normals.
    Proj {
        #[command(subcommand)]
        cmd: ProjCmd,
    },
    /// Blow-up of pairs of 2-jets along the diagonal.
    Jet {
        #[command(subcommand)]
        cmd: JetCmd,
    },
    /// Numerical verification suites.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum FmCmd {
    /// Model point of a configuration in the chart of an index nest.
    Chart {
        config: String,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u32>,
        /// Index nest, e.g. `[[1,2],[1,2,3]]`.
        #[arg(long)]
        nest: String,
        /// Covering forest as a parent map `{"2":1,…}`; default: smallest-label roots.
        #[arg(long, conflicts_with = "roots")]
        parent: Option<String>,
        /// Root label of each nest member, in member order.
        #[arg(long, value_delimiter = ',')]
        roots: Vec<usize>,
    },
    /// Configuration of a model point.
    Blowdown { point: String },
    /// Limit model point of polynomial curves of configurations.
    Limit {
        curves: String,
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u32>,
    },
    /// Covering forest and control labels of an index nest.
    Forest {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        nest: String,
        #[arg(long, value_delimiter = ',')]
        roots: Vec<usize>,
    },
    /// Projective screens of a model point.
    Screens { point: String },
}

#[derive(Subcommand, Debug)]
enum ProjCmd {
    /// Canonical representative of a weighted projective class.
    Canonicalize {
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        normal: Vec<String>,
    },
    /// Whether a class is an orbifold point of the projective divisor.
    Singular {
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        normal: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum JetCmd {
    /// Offsets of a jet pair.
    Offsets { pair: String },
    /// Blown-up point of a jet pair off the diagonal.
    Chart { pair: String },
    /// Jet pair of a blown-up point.
    Blowdown { blown: String },
    /// Limit of the 2-jets of a polynomial along two colliding curves.
    Limit { input: String },
    /// Holonomic relations at a blown-up point.
    Holonomic {
        blown: String,
        #[arg(long, value_enum, default_value_t = Mode::Literal)]
        mode: Mode,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Literal,
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Smoothness,
    Nests,
    Strata,
}

/// Result of one command before formatting.
struct Outcome {
    value: Value,
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(value: Value, text: String) -> Outcome {
        Outcome { value, text, code: 0 }
    }
}

/// Collects input documents and their bytes for the hash echo.
#[derive(Default)]
struct Inputs {
    bytes: Vec<u8>,
}

impl Inputs {
    fn load(&mut self, arg: &str) -> Result<Value> {
        let t = arg.trim_start();
        let text = if t.starts_with('{') || t.starts_with('[') {
            arg.to_string()
        } else {
            std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("cannot read {arg:?}: {e}")))?
        };
        self.bytes.extend_from_slice(text.as_bytes());
        self.bytes.push(0);
        parse_json(&text)
    }

    fn building_set(&mut self, arg: &str) -> Result<BuildingSet> {
        match parse_building_input(&self.load(arg)?)? {
            BuildingInput::Set(bs) => Ok(bs),
            BuildingInput::Fm { s, m, .. } => fm_building_set(s, m),
        }
    }
}

/// Runs the command line `args` (including the program name).
pub fn dispatch<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    let mut inputs = Inputs::default();
    match run(&cli.cmd, &mut inputs) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => {
                    let mut v = out.value;
                    if !inputs.bytes.is_empty() {
                        if let Value::Object(o) = &mut v {
                            o.insert("input_sha256".into(), json!(input_hash(&inputs.bytes)));
                        }
                    }
                    to_json_string(&v) + "\n"
                }
                Format::Text => out.text,
            };
            (out.code, body)
        }
        Err(e) => {
            let code = if matches!(e, Error::Parse(_)) { 2 } else { 3 };
            let body = match cli.format {
                Format::Json => to_json_string(&error_json(&e)) + "\n",
                Format::Text => format!("error: {e}\n"),
            };
            (code, body)
        }
    }
}

fn names(bs: &BuildingSet, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| bs.elements()[i].name.clone()).collect()
}

fn element(bs: &BuildingSet, name: &str) -> Result<usize> {
    bs.index_of(name).ok_or_else(|| Error::Parse(format!("unknown element {name:?}")))
}

fn weights(w: &[u32]) -> Result<WeightVector> {
    WeightVector::new(w.to_vec())
}

fn flat_json(f: &crate::flat::Flat) -> Value {
    match f.coordinate_zeros() {
        Some(z) => json!({"zeros": z.into_iter().collect::<Vec<_>>()}),
        None => json!({"equations": f.equations().iter().map(|r| r.iter().map(q_json).collect::<Vec<_>>()).collect::<Vec<_>>()}),
    }
}

fn flat_text(f: &crate::flat::Flat) -> String {
    match f.coordinate_zeros() {
        Some(z) if z.len() == f.dim() => "the origin".into(),
        Some(z) => format!("{{{}}}", z.iter().map(|i| format!("x{} = 0", i + 1)).collect::<Vec<_>>().join(", ")),
        None => format!("{} equations", f.codim()),
    }
}

fn coords_text(y: &[Surd]) -> String {
    y.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ") + "\n"
}

fn nest_from_arg(inputs: &mut Inputs, arg: &str, s: usize) -> Result<crate::fm::IndexNest> {
    parse_index_nest(&inputs.load(arg)?, s)
}

fn covering(inputs: &mut Inputs, s: usize, nest: &str, parent: Option<&String>, roots: &[usize]) -> Result<Covering> {
    let nest = nest_from_arg(inputs, nest, s)?;
    if let Some(p) = parent {
        let v = inputs.load(p)?;
        let obj = v.as_object().ok_or_else(|| Error::Parse("parent map must be an object".into()))?;
        let mut map = BTreeMap::new();
        for (k, x) in obj {
            map.insert(k.parse::<usize>().map_err(|_| Error::Parse(format!("bad label {k:?}")))?, usize_from(x)?);
        }
        crate::fm::check_covering(&nest, &Forest::new(s, map)?)
    } else if !roots.is_empty() {
        covering_forest_with_roots(&nest, roots)
    } else {
        Ok(covering_forest(&nest))
    }
}

fn covering_json(c: &Covering) -> Value {
    json!({
        "nest": index_nest_json(&c.nest),
        "parent": Value::Object(c.forest.parent_map().iter().map(|(k, p)| (k.to_string(), json!(p))).collect()),
        "roots": c.roots().into_iter().collect::<Vec<_>>(),
        "controls": c.controls.iter().map(|l| json!(l.iter().collect::<Vec<_>>())).collect::<Vec<_>>(),
    })
}

fn holonomic_mode(m: Mode) -> HolonomicMode {
    match m {
        Mode::Literal => HolonomicMode::Literal,
        Mode::Derived => HolonomicMode::Derived,
    }
}

fn c_text() -> String {
    format!("{}/{}", HOLONOMIC_C.0, HOLONOMIC_C.1)
}

fn literal_warning() -> String {
    format!("literal mode uses the constant 1 in the value relation; limits of smooth functions satisfy it with c = {}", c_text())
}

fn run(cmd: &Cmd, inputs: &mut Inputs) -> Result<Outcome> {
    match cmd {
        Cmd::Check { building_set } => {
            match parse_building_input(&inputs.load(building_set)?)? {
                BuildingInput::Fm { s, weights, .. } => {
                    let r = fm_check(s, &weights)?;
                    let failing: Vec<Value> = r.failing_nests.iter().map(index_nest_json).collect();
                    let text = format!(
                        "diagonals of {s} points: {}; {} nests checked, {} failing -> {}\n",
                        if r.separated { "separated" } else { "not separated" },
                        r.nests_checked,
                        failing.len(),
                        if r.passed() { "pass" } else { "fail" }
                    );
                    Ok(Outcome::ok(
                        json!({"passed": r.passed(), "separated": r.separated, "nests_checked": r.nests_checked, "failing_nests": failing}),
                        text,
                    ))
                }
                BuildingInput::Set(bs) => {
                    let weighted = (0..bs.len()).all(|i| bs.weights(i).is_ok());
                    let (separated, witness) = bs.check_separated();
                    let mut v = json!({"separated": separated, "witness": witness.as_ref().map(flat_json)});
                    let mut text = match &witness {
                        Some(w) => format!("not separated: factors of {} are not transverse\n", flat_text(w)),
                        None => "separated\n".into(),
                    };
                    let mut passed = separated;
                    if weighted {
                        let d = bs.check_weighted_building_set()?;
                        let aligned = d.alignment_violations.is_empty();
                        passed &= d.is_weighted_valid();
                        v["uniformly_aligned"] = json!(aligned);
                        v["max_rule"] = json!(d.max_rule_violations.is_empty());
                        v["weighted_valid"] = json!(d.is_weighted_valid());
                        v["alignment_violations"] = Value::Array(
                            d.alignment_violations.iter().map(|(n, c)| json!({"nest": names(&bs, n), "column": c})).collect(),
                        );
                        v["max_rule_violations"] = Value::Array(
                            d.max_rule_violations.iter().map(|(g, c)| json!({"element": bs.elements()[*g].name, "column": c})).collect(),
                        );
                        text += &if aligned { "uniformly aligned\n".to_string() } else { "not uniformly aligned\n".to_string() };
                        for (n, c) in &d.alignment_violations {
                            text += &format!("  nest {{{}}} has conflicting weights in column {c}\n", names(&bs, n).join(", "));
                        }
                        text += if d.max_rule_violations.is_empty() { "maximum rule holds\n" } else { "maximum rule fails\n" };
                    }
                    v["passed"] = json!(passed);
                    text += if passed { "pass\n" } else { "fail\n" };
                    Ok(Outcome::ok(v, text))
                }
            }
        }
        Cmd::Nests { building_set } => {
            let bs = inputs.building_set(building_set)?;
            let r = crate::verify::nest_oracle(&bs)?;
            let list: Vec<Vec<String>> = r.nests.iter().map(|n| names(&bs, n)).collect();
            let mut text = format!("{} nests ({} non-empty flags)\n", list.len(), r.non_empty_flags);
            for n in &list {
                text += &format!("  {{{}}}\n", n.join(", "));
            }
            Ok(Outcome::ok(json!({"count": list.len(), "nests": list, "non_empty_flags": r.non_empty_flags, "enumeration_agrees": r.agrees}), text))
        }
        Cmd::Factors { building_set, element: el } => {
            let bs = inputs.building_set(building_set)?;
            let idx = el.split('+').map(|n| element(&bs, n.trim())).collect::<Result<Vec<_>>>()?;
            let f = bs.factors(&bs.meet_of(&idx))?;
            let list = names(&bs, &f);
            Ok(Outcome::ok(json!({"factors": list}), format!("{}\n", list.join(", "))))
        }
        Cmd::Tableau { building_set, nest, h } => {
            let bs = inputs.building_set(building_set)?;
            let idx = nest.iter().map(|n| element(&bs, n)).collect::<Result<Vec<_>>>()?;
            let mut hmap = BTreeMap::new();
            for e in h {
                let (n, c) = e.split_once('=').ok_or_else(|| Error::Parse(format!("expected NAME=COLUMN, found {e:?}")))?;
                let c: usize = c.parse().map_err(|_| Error::Parse(format!("bad column in {e:?}")))?;
                hmap.insert(element(&bs, n)?, c);
            }
            if !bs.is_nest(&idx)? {
                return Err(Error::Invalid(format!("{{{}}} is not a nest", nest.join(", "))));
            }
            let t = bs.tableau_render(&idx, if hmap.is_empty() { None } else { Some(&hmap) })?;
            let text = if t.ends_with('\n') { t.clone() } else { format!("{t}\n") };
            Ok(Outcome::ok(json!({"tableau": t}), text))
        }
        Cmd::Chart { building_set, perspective, point, inverse } => {
            let bs = inputs.building_set(building_set)?;
            let persp = parse_perspective(&inputs.load(perspective)?, &bs)?;
            let pv = inputs.load(point)?;
            if *inverse {
                let y = parse_coords(&pv)?;
                let p = persp.chart_inv(&y)?;
                let mut text = String::new();
                for (e, c) in bs.elements().iter().zip(&p.components) {
                    let (kind, v) = match c {
                        crate::blowup::Component::Bulk(x) => ("bulk", x),
                        crate::blowup::Component::Divisor(n) => ("divisor", n),
                    };
                    text += &format!("{}: {kind} ({})\n", e.name, v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
                }
                Ok(Outcome::ok(blowup_point_json(&p, &bs), text))
            } else {
                let p = parse_blowup_point(&pv, &bs)?;
                let y = persp.chart_fwd(&p)?;
                Ok(Outcome::ok(coords_json(&y), coords_text(&y)))
            }
        }
        Cmd::Blowdown { building_set, perspective, point } => {
            let bs = inputs.building_set(building_set)?;
            let persp = parse_perspective(&inputs.load(perspective)?, &bs)?;
            let y = parse_coords(&inputs.load(point)?)?;
            let x = persp.blow_down(&y)?;
            let mut text = String::new();
            let names: Vec<String> = (1..=persp.dim()).map(|i| format!("y{i}")).collect();
            let symbolic: Vec<String> = (0..persp.dim()).map(|i| persp.component_monomial(None, i).render(&names)).collect();
            for (i, (v, s)) in x.iter().zip(&symbolic).enumerate() {
                text += &format!("x{} = {s} = {v}\n", i + 1);
            }
            let mut v = coords_json(&x);
            v["symbolic"] = json!(symbolic);
            Ok(Outcome::ok(v, text))
        }
        Cmd::Transition { building_set, from, to, point } => {
            let bs = inputs.building_set(building_set)?;
            let a = parse_perspective(&inputs.load(from)?, &bs)?;
            let b = parse_perspective(&inputs.load(to)?, &bs)?;
            let y = parse_coords(&inputs.load(point)?)?;
            let z = building_transition(&a, &y, &b)?;
            Ok(Outcome::ok(coords_json(&z), coords_text(&z)))
        }
        Cmd::ControlSet { building_set, perspective, point } => {
            let bs = inputs.building_set(building_set)?;
            let persp = parse_perspective(&inputs.load(perspective)?, &bs)?;
            let y = parse_coords(&inputs.load(point)?)?;
            let cs = names(&bs, &persp.control_set(&y)?);
            Ok(Outcome::ok(json!({"control_set": cs}), format!("{{{}}}\n", cs.join(", "))))
        }
        Cmd::WeakSingular { building_set, perspective, point } => {
            let bs = inputs.building_set(building_set)?;
            let persp = parse_perspective(&inputs.load(perspective)?, &bs)?;
            let y = parse_coords(&inputs.load(point)?)?;
            let w = persp.weak_singularity(&y)?;
            Ok(Outcome::ok(json!({"weak_singularity": w}), format!("{w}\n")))
        }
        Cmd::Fm { cmd } => run_fm(cmd, inputs),
        Cmd::Proj { cmd } => {
            let (w, normal, singular_only) = match cmd {
                ProjCmd::Canonicalize { weights: w, normal } => (w, normal, false),
                ProjCmd::Singular { weights: w, normal } => (w, normal, true),
            };
            let w = weights(w)?;
            let n = normal.iter().map(|s| s.parse::<Surd>()).collect::<Result<Vec<_>>>()?;
            let exact = projective_class_exact(&w, &n)?;
            let singular = projective_is_singular(&w, &exact);
            if singular_only {
                return Ok(Outcome::ok(json!({"singular": singular}), format!("{singular}\n")));
            }
            let unit = projective_canonicalize(&w, &n)?;
            let text = format!("class {}\nunit representative {}\nsingular {singular}\n", coords_text(&exact).trim_end(), unit.iter().map(|x| crate::rational::fmt_f64(*x)).collect::<Vec<_>>().join(", "));
            Ok(Outcome::ok(json!({"class": surds_json(&exact), "unit": f64s_json(&unit), "singular": singular}), text))
        }
        Cmd::Jet { cmd } => run_jet(cmd, inputs),
        Cmd::Verify { suite, seed } => {
            let name = match suite {
                Suite::All => "all",
                Suite::Smoothness => "smoothness",
                Suite::Nests => "nests",
                Suite::Strata => "strata",
            };
            let lines = run_suite(name, &VerifyConfig::with_seed(*seed))?;
            let passed = lines.iter().all(|l| l.passed);
            let mut text = String::new();
            for l in &lines {
                text += &format!("{} {}: {}\n", if l.passed { "PASS" } else { "FAIL" }, l.name, l.detail);
            }
            let v = json!({
                "seed": seed,
                "passed": passed,
                "checks": lines.iter().map(|l| json!({"name": l.name, "passed": l.passed, "detail": l.detail})).collect::<Vec<_>>(),
            });
            Ok(Outcome { value: v, text, code: if passed { 0 } else { 1 } })
        }
    }
}

fn run_fm(cmd: &FmCmd, inputs: &mut Inputs) -> Result<Outcome> {
    match cmd {
        FmCmd::Chart { config, s, weights: w, nest, parent, roots } => {
            let w = weights(w)?;
            let cfg = parse_config(&inputs.load(config)?)?;
            let s = s.unwrap_or(cfg.len());
            if cfg.len() != s {
                return Err(Error::DimensionMismatch { expected: s, found: cfg.len() });
            }
            let cov = covering(inputs, s, nest, parent.as_ref(), roots)?;
            let p = fm_chart(&w, &cov, &cfg)?;
            Ok(Outcome::ok(fm_point_json(&p), screens_render(&p)))
        }
        FmCmd::Blowdown { point } => {
            let p = parse_fm_point(&inputs.load(point)?)?;
            let c = fm_blow_down(&p)?;
            let text = c.iter().enumerate().map(|(i, x)| format!("x{} = ({})\n", i + 1, x.iter().map(|v| crate::rational::fmt_f64(*v)).collect::<Vec<_>>().join(", "))).collect();
            Ok(Outcome::ok(config_json(&c), text))
        }
        FmCmd::Limit { curves, weights: w } => {
            let w = weights(w)?;
            let curves: Vec<Vec<Series>> = parse_curves(&inputs.load(curves)?)?;
            let p = curve_limit(&w, &curves)?;
            Ok(Outcome::ok(fm_point_json(&p), screens_render(&p)))
        }
        FmCmd::Forest { s, nest, roots } => {
            let cov = covering(inputs, *s, nest, None, roots)?;
            let mut text = String::new();
            for (k, m) in cov.nest.members().iter().enumerate() {
                let ctl: Vec<String> = cov.controls[k].iter().map(|l| format!("{l}->{}", cov.forest.parent(*l).expect("parent"))).collect();
                text += &format!("{}: root {}, controls {}\n", label_name(m), cov.top(k), ctl.join(", "));
            }
            Ok(Outcome::ok(covering_json(&cov), text))
        }
        FmCmd::Screens { point } => {
            let p = parse_fm_point(&inputs.load(point)?)?;
            let (c, singular) = fm_projective_canonicalize(&p);
            let mut v = fm_point_json(&c);
            v["singular"] = json!(singular);
            Ok(Outcome::ok(v, screens_render(&c)))
        }
    }
}

fn run_jet(cmd: &JetCmd, inputs: &mut Inputs) -> Result<Outcome> {
    match cmd {
        JetCmd::Offsets { pair } => {
            let p = parse_jet_pair(&inputs.load(pair)?)?;
            let o = jet_offsets(&p)?;
            let v = jet_offsets_json(&o);
            Ok(Outcome::ok(v.clone(), to_json_string(&v) + "\n"))
        }
        JetCmd::Chart { pair } => {
            let p = parse_jet_pair(&inputs.load(pair)?)?;
            let b = jet_chart(&p)?;
            let v = jet_blown_json(&b);
            Ok(Outcome::ok(v.clone(), to_json_string(&v) + "\n"))
        }
        JetCmd::Blowdown { blown } => {
            let b = parse_jet_blown(&inputs.load(blown)?)?;
            let p = jet_blow_down(&b)?;
            let v = jet_pair_json(&p);
            Ok(Outcome::ok(v.clone(), to_json_string(&v) + "\n"))
        }
        JetCmd::Limit { input } => {
            let v = inputs.load(input)?;
            let f = parse_polynomial(v.get("polynomial").ok_or_else(|| Error::Parse("missing field \"polynomial\"".into()))?)?;
            let x1 = parse_curve(v.get("x1").ok_or_else(|| Error::Parse("missing field \"x1\"".into()))?)?;
            let x2 = parse_curve(v.get("x2").ok_or_else(|| Error::Parse("missing field \"x2\"".into()))?)?;
            let b = jet_limit(&f, &x1, &x2)?;
            let literal = holonomic_predicate(&b, HolonomicMode::Literal)?;
            let derived = holonomic_predicate(&b, HolonomicMode::Derived)?;
            let mut out = jet_blown_json(&b);
            out["holonomic"] = json!({"literal": literal, "derived": derived, "c": c_text()});
            let text = format!("{}\nholonomic: literal {literal}, derived (c = {}) {derived}\n", to_json_string(&jet_blown_json(&b)), c_text());
            Ok(Outcome::ok(out, text))
        }
        JetCmd::Holonomic { blown, mode } => {
            let b = parse_jet_blown(&inputs.load(blown)?)?;
            let r = holonomic_predicate(&b, holonomic_mode(*mode))?;
            let mut v = json!({"holonomic": r, "mode": if *mode == Mode::Literal { "literal" } else { "derived" }});
            let mut text = format!("{r}\n");
            if *mode == Mode::Literal {
                v["warning"] = json!(literal_warning());
                text += &format!("warning: {}\n", literal_warning());
            }
            Ok(Outcome::ok(v, text))
        }
    }
}
