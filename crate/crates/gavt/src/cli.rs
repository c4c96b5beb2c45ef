//! Argument grammar and command dispatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gavt_core::amitsur::{self, GmrParams};
use gavt_core::arith::RatPoly;
use gavt_core::classify::Shape;
use gavt_core::gl3::{self, BaseField};
use gavt_core::groups::search::{embeds, is_isomorphic};
use gavt_core::quat;
use gavt_core::weil::{end_algebra, is_weil_poly};
use gavt_core::{Error, Result};
use serde_json::{json, Value};

use crate::acceptance;
use crate::data::{DataDir, DATA_ENV};

#[derive(Parser, Debug)]
#[command(name = "gavt", version, about = "Automorphism groups of abelian threefolds over finite fields")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Directory with catalog.json, quat.json or facts.json overrides.
    #[arg(long, global = true, env = DATA_ENV, value_name = "DIR")]
    pub data: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weil polynomials and endomorphism algebras.
    #[command(subcommand)]
    Weil(WeilCmd),
    /// Metacyclic groups in division rings.
    #[command(subcommand)]
    Amitsur(AmitsurCmd),
    /// Group catalog, isomorphism and embedding.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Finite subgroups of GL3 over Q and real quadratic fields.
    #[command(subcommand)]
    Gl3(Gl3Cmd),
    /// Maximal finite subgroups over definite quaternion algebras.
    #[command(subcommand)]
    Quat(QuatCmd),
    /// Maximal automorphism groups for an isogeny shape.
    Classify(ClassifyArgs),
    /// Runs the acceptance suite.
    Selftest {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Subcommand, Debug)]
pub enum WeilCmd {
    /// Whether the polynomial is a q-Weil polynomial, with its algebra.
    Check {
        poly: String,
        #[arg(long)]
        q: u64,
    },
    /// Full endomorphism-algebra descriptor.
    End {
        poly: String,
        #[arg(long)]
        q: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum AmitsurCmd {
    /// Whether G(m, r) embeds in a division ring.
    Embed {
        m: u64,
        #[arg(allow_hyphen_values = true)]
        r: i64,
    },
    /// Every G(m, r) with n = 2 over the sweep moduli.
    Sweep,
    /// Even-order subgroups over a cubic field.
    Candidates,
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// Canonical label and order.
    Info { label: String },
    /// Whether the first group embeds in the second.
    Embeds { sub: String, sup: String },
    /// Whether two groups are isomorphic.
    Iso { a: String, b: String },
}

#[derive(Subcommand, Debug)]
pub enum Gl3Cmd {
    /// Orders of elements allowed over Q(√d).
    Exponents { d: u64 },
    /// Candidate maximal finite subgroups over Q(√d).
    Maximal { d: u64 },
    /// Irreducibility and enveloping dimensions of the built-in models.
    Models,
}

#[derive(Subcommand, Debug)]
pub enum QuatCmd {
    /// Maximal finite subgroups of GL3(D_{p,∞}).
    Maximal { p: u64 },
    /// Maximal finite subgroups of D_{p,∞}^×.
    Units { p: u64 },
    /// Constructive containment checks.
    Containments,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub shape: String,
    #[arg(long, requires = "a")]
    pub p: Option<u64>,
    #[arg(long, requires = "p")]
    pub a: Option<u32>,
    /// Report excluded combinations.
    #[arg(long)]
    pub audit: bool,
    /// Check the witness rows of this shape.
    #[arg(long)]
    pub verify: bool,
}

/// Command output: text or JSON, and whether the requested checks passed.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Report {
    fn new(text: String, json: Value) -> Report {
        Report { text, json, ok: true }
    }

    fn with_ok(mut self, ok: bool) -> Report {
        self.ok = ok;
        self
    }
}

fn parse_poly(s: &str) -> Result<RatPoly> {
    RatPoly::parse(s)
}

fn weil(cmd: WeilCmd) -> Result<Report> {
    match cmd {
        WeilCmd::Check { poly, q } => {
            let f = parse_poly(&poly)?;
            let w = is_weil_poly(&f, q)?;
            if !w {
                return Ok(Report::new("weil: false".into(), json!({"weil": false, "end": null})));
            }
            match end_algebra(&f, q) {
                Ok(d) => {
                    let end = if d.commutative {
                        format!("commutative, e={}", d.e)
                    } else {
                        format!("division algebra, e={}, d={}", d.e, d.d)
                    };
                    Ok(Report::new(format!("weil: true; End: {end}"), json!({"weil": true, "end": d.to_json()})))
                }
                Err(Error::NotElementary) => Ok(Report::new(
                    "weil: true; End: not elementary".into(),
                    json!({"weil": true, "end": null}),
                )),
                Err(e) => Err(e),
            }
        }
        WeilCmd::End { poly, q } => {
            let d = end_algebra(&parse_poly(&poly)?, q)?;
            let mut text = String::new();
            let _ = writeln!(text, "center: Q[t]/({})", d.h);
            let _ = writeln!(text, "e={} d={} g={} commutative={}", d.e, d.d, d.g, d.commutative);
            for v in &d.invariants {
                let _ = writeln!(text, "  {v}");
            }
            Ok(Report::new(text.trim_end().into(), d.to_json()))
        }
    }
}

fn amitsur_cmd(cmd: AmitsurCmd) -> Result<Report> {
    match cmd {
        AmitsurCmd::Embed { m, r } => {
            let g = GmrParams::new(m, r)?;
            let e = amitsur::embeds_params(&g)?;
            let label = amitsur::group_label(&g);
            Ok(Report::new(
                format!("embeddable: {e} ({label})"),
                json!({"m": g.m, "r": g.r, "s": g.s, "t": g.t, "n": g.n, "group": label, "embeddable": e}),
            ))
        }
        AmitsurCmd::Sweep => {
            let rows = amitsur::sweep();
            let mut text = String::new();
            let mut js = Vec::new();
            for e in &rows {
                let p = e.params;
                let _ = writeln!(text, "m={} r={} {} c1={} c2={} embeds={}", p.m, p.r, e.label, e.c1, e.c2, e.embeds);
                js.push(json!({"m": p.m, "r": p.r, "group": e.label, "c1": e.c1, "c2": e.c2, "embeds": e.embeds}));
            }
            Ok(Report::new(text.trim_end().into(), Value::Array(js)))
        }
        AmitsurCmd::Candidates => {
            let r = amitsur::cubic_field_candidates();
            let mut text = String::new();
            for c in &r.groups {
                let _ = writeln!(text, "{}{}", c.label, if c.maximal { "" } else { " (not maximal)" });
            }
            for (g, why) in &r.excluded {
                let _ = writeln!(text, "excluded {g}: {why}");
            }
            let groups: Vec<Value> = r.groups.iter().map(|c| json!({"group": c.label, "maximal": c.maximal})).collect();
            let excluded: Vec<Value> = r.excluded.iter().map(|(g, w)| json!({"group": g, "reason": w})).collect();
            Ok(Report::new(text.trim_end().into(), json!({"groups": groups, "excluded": excluded})))
        }
    }
}

fn group_cmd(cmd: GroupCmd, data: &DataDir) -> Result<Report> {
    let cat = data.catalog()?;
    match cmd {
        GroupCmd::Info { label } => {
            let l = cat.parse(&label)?;
            let name = l.to_string();
            Ok(Report::new(format!("{name}: order {}", l.order()), json!({"label": name, "order": l.order()})))
        }
        GroupCmd::Embeds { sub, sup } => {
            let e = embeds(&cat.build(&sub)?, &cat.build(&sup)?)?;
            let (a, b) = (cat.canonical(&sub)?, cat.canonical(&sup)?);
            Ok(Report::new(format!("embeds: {e} ({a} in {b})"), json!({"sub": a, "sup": b, "embeds": e})))
        }
        GroupCmd::Iso { a, b } => {
            let e = is_isomorphic(&cat.build(&a)?, &cat.build(&b)?)?;
            let (a, b) = (cat.canonical(&a)?, cat.canonical(&b)?);
            Ok(Report::new(format!("isomorphic: {e} ({a}, {b})"), json!({"a": a, "b": b, "isomorphic": e})))
        }
    }
}

fn gl3_cmd(cmd: Gl3Cmd) -> Result<Report> {
    match cmd {
        Gl3Cmd::Exponents { d } => {
            let e: Vec<u64> = gl3::allowed_exponents(&BaseField::new(d)?).into_iter().collect();
            let text = e.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
            Ok(Report::new(format!("allowed exponents: {text}"), json!({"d": d, "exponents": e})))
        }
        Gl3Cmd::Maximal { d } => {
            let list = gl3::maximal_gl3_list(&BaseField::new(d)?)?;
            let mut text = String::new();
            for m in &list {
                match &m.contained_in {
                    Some(c) => writeln!(text, "{} (inside {c})", m.label),
                    None => writeln!(text, "{}", m.label),
                }
                .ok();
            }
            let js: Vec<Value> = list.iter().map(|m| json!({"group": m.label, "contained_in": m.contained_in})).collect();
            Ok(Report::new(text.trim_end().into(), json!({"d": d, "groups": js})))
        }
        Gl3Cmd::Models => {
            let mut rows = vec![
                ("C2≀Sym3".to_string(), gl3::signed_permutation_gens()),
                ("Alt5×C2".to_string(), gl3::gl3_from_sl3(&gl3::f60_gens())),
            ];
            for n in [4u64, 6, 8, 10, 12] {
                rows.push((format!("D{n}×C2"), gl3::dihedral_gl3(n)));
            }
            let mut text = String::new();
            let mut js = Vec::new();
            for (name, gens) in rows {
                let irr = gl3::is_irreducible_3dim(&gens)?;
                let dim = gl3::enveloping_q_dimension(&gens)?;
                let _ = writeln!(text, "{name}: irreducible={irr} envelope dim={dim}");
                js.push(json!({"group": name, "irreducible": irr, "enveloping_dim": dim}));
            }
            Ok(Report::new(text.trim_end().into(), Value::Array(js)))
        }
    }
}

fn quat_cmd(cmd: QuatCmd, data: &DataDir) -> Result<Report> {
    match cmd {
        QuatCmd::Maximal { p } => {
            let recs = data.quat()?.gl3_maximal(p)?;
            if recs.is_empty() {
                return Err(Error::UnknownWitness(format!("no records for p = {p}")));
            }
            let text = recs.iter().map(|r| format!("{} [{}]", r.group, r.kind)).collect::<Vec<_>>().join("\n");
            Ok(Report::new(text, serde_json::to_value(&recs).expect("records serialize")))
        }
        QuatCmd::Units { p } => {
            let g = quat::gl1_maximal(p)?;
            Ok(Report::new(g.join(", "), json!({"p": p, "groups": g})))
        }
        QuatCmd::Containments => {
            let r = quat::verify_containments();
            let mut text = String::new();
            for c in &r.checks {
                let rel = if c.expected { "≤" } else { "≰" };
                let status = if c.passed() { "ok" } else { "FAILED" };
                let _ = writeln!(text, "{} {rel} {}: {status}", c.sub, c.sup);
            }
            let ok = r.ok();
            Ok(Report::new(text.trim_end().into(), serde_json::to_value(&r).expect("report serializes")).with_ok(ok))
        }
    }
}

fn classify_cmd(args: ClassifyArgs, data: &DataDir) -> Result<Report> {
    let shape: Shape = args.shape.parse()?;
    let c = data.classifier()?;
    let mut text = String::new();
    let mut out = json!({"shape": shape.tag()});
    let mut ok = true;
    match (args.p, args.a) {
        (Some(p), Some(a)) => {
            let q = gavt_core::classify::field_size(p, a)?;
            let comb = c.combine_detailed(shape, q)?;
            let groups: Vec<&str> = comb.realizations.iter().map(|r| r.group.as_str()).collect();
            for r in &comb.realizations {
                let f: Vec<String> = r.factors.iter().map(|w| format!("{} [{}]", w.h, w.end)).collect();
                let _ = writeln!(text, "{}  via {}", r.group, f.join(" × "));
            }
            out["q"] = json!(q);
            out["groups"] = json!(groups);
            out["witnesses"] = serde_json::to_value(&comb.realizations).expect("realizations serialize");
        }
        _ => {
            let list = c.union_over_fields(shape)?;
            let golden = c.golden_list(shape)?;
            let same = {
                let mut a = list.groups.clone();
                let mut b = golden.groups.clone();
                a.sort();
                b.sort();
                a == b
            };
            ok &= same;
            for g in &list.groups {
                let _ = writeln!(text, "{g}");
            }
            let _ = writeln!(text, "{} groups; matches stored list: {same}", list.groups.len());
            out["groups"] = json!(list.groups);
            out["fields"] = json!(c.facts().fields(shape));
            out["matches_stored_list"] = json!(same);
        }
    }
    if args.audit {
        let a = c.exclusion_audit(shape)?;
        let _ = writeln!(text, "audit: {} combinations, {} excluded", a.total, a.excluded);
        for r in &a.reasons {
            let _ = writeln!(text, "  {} ({})", r.group, r.tag);
        }
        out["audit"] = serde_json::to_value(&a).expect("audit serializes");
    }
    if args.verify {
        let rep = c.verify_witnesses();
        let checks: Vec<_> = rep.checks.iter().filter(|k| k.shape == Some(shape)).collect();
        let bad: Vec<_> = checks.iter().filter(|k| !k.ok).collect();
        ok &= bad.is_empty();
        let _ = writeln!(text, "witness rows: {} checked, {} mismatches", checks.len(), bad.len());
        for k in &bad {
            let _ = writeln!(text, "  {}: {}", k.source, k.problem.as_deref().unwrap_or(""));
        }
        out["verify"] = serde_json::to_value(&checks).expect("checks serialize");
    }
    Ok(Report::new(text.trim_end().into(), out).with_ok(ok))
}

fn selftest(only: Vec<u32>) -> Result<Report> {
    let ids = if only.is_empty() { acceptance::criterion_ids() } else { only };
    let mut outcomes = Vec::new();
    for id in ids {
        let o = acceptance::run_one(id).ok_or_else(|| Error::Invalid(format!("no criterion {id}")))?;
        outcomes.push(o);
    }
    let ok = outcomes.iter().all(|o| o.passed);
    let mut text: Vec<String> = outcomes.iter().map(|o| o.line()).collect();
    text.push(format!("{} of {} criteria passed", outcomes.iter().filter(|o| o.passed).count(), outcomes.len()));
    // timings vary between runs, so the JSON report leaves them out
    let js: Vec<Value> =
        outcomes.iter().map(|o| json!({"id": o.id, "name": o.name, "passed": o.passed, "detail": o.detail})).collect();
    Ok(Report::new(text.join("\n"), json!({"criteria": js, "passed": ok})).with_ok(ok))
}

/// Runs a parsed command.
pub fn run(cli: Cli) -> Result<Report> {
    let data = DataDir::new(cli.data);
    match cli.command {
        Command::Weil(c) => weil(c),
        Command::Amitsur(c) => amitsur_cmd(c),
        Command::Group(c) => group_cmd(c, &data),
        Command::Gl3(c) => gl3_cmd(c),
        Command::Quat(c) => quat_cmd(c, &data),
        Command::Classify(a) => classify_cmd(a, &data),
        Command::Selftest { only } => selftest(only),
    }
}

/// Parses `argv`, runs it and returns the exit code with what to print
/// on stdout and stderr.
pub fn execute<I, T>(argv: I) -> (u8, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            return if code == 0 { (0, msg, String::new()) } else { (2, String::new(), msg) };
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(r) => {
            let out = if json { serde_json::to_string_pretty(&r.json).expect("json output") } else { r.text };
            (if r.ok { 0 } else { 1 }, out + "\n", String::new())
        }
        Err(e) => {
            let err = if json {
                serde_json::to_string(&json!({"error": e.name(), "message": e.to_string()})).expect("json output") + "\n"
            } else {
                format!("error: {}: {e}\n", e.name())
            };
            (1, String::new(), err)
        }
    }
}

pub fn main_with<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (code, out, err) = execute(argv);
    print!("{out}");
    eprint!("{err}");
    ExitCode::from(code)
}
