//! Batch driver behind the `eqlf` binary. Argument parsing lives in the
//! binary; this module turns an [`Invocation`] into an exit code and text.
//!
//! Exit codes: 0 ok or proven equal, 1 ill formed or not proven, 2 parse
//! or usage error, 3 fuel exhausted.

use crate::eval_t::{plus_term, times_term, Flavor};
use crate::kernel::{trace_render, CheckConfig, Kernel, KernelError, Signature, Verdict, DEFAULT_FUEL};
use crate::metatheory::{run_suite, EnumBudget, Report};
use crate::parse::{parse_class, parse_object, parse_signature_in, print_class, print_object, to_telescope, ParseError};
use crate::stdsigs::{self, CorpusId};
use crate::syntax::{Name, Object, Telescope};
use std::fmt::Write as _;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Type,
    Eq,
    Norm,
    Corpus,
    Meta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub command: Command,
    /// Signature sources: paths, or names of bundled files.
    pub files: Vec<String>,
    /// Expressions; a leading `@` reads the expression from a file.
    pub exprs: Vec<String>,
    pub class_expr: Option<String>,
    /// Local context declarations, in signature syntax.
    pub ctx: Option<String>,
    pub fuel: u64,
    pub trace: bool,
    pub eta: bool,
    pub seeds: Vec<u64>,
    pub budget: EnumBudget,
}

impl Invocation {
    pub fn new(command: Command) -> Self {
        Invocation {
            command,
            files: Vec::new(),
            exprs: Vec::new(),
            class_expr: None,
            ctx: None,
            fuel: DEFAULT_FUEL,
            trace: false,
            eta: true,
            seeds: (0..10).collect(),
            budget: EnumBudget::default(),
        }
    }

    fn config(&self) -> CheckConfig {
        CheckConfig {
            fuel: self.fuel.max(1),
            eta: self.eta,
            trace: self.trace,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Parse(ParseError),
    Io(String),
    Kernel(KernelError),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Parse(_) | Failure::Io(_) => 2,
            Failure::Kernel(e) if e.is_fuel() => 3,
            Failure::Kernel(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => format!("usage error: {m}"),
            Failure::Io(m) => format!("error: {m}"),
            Failure::Parse(e) => format!("parse error: {e}"),
            Failure::Kernel(e) => format!("error: {e}"),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<KernelError> for Failure {
    fn from(e: KernelError) -> Self {
        Failure::Kernel(e)
    }
}

pub fn run(inv: &Invocation) -> Output {
    let mut out = Output::default();
    let r = match inv.command {
        Command::Check => check(inv, &mut out),
        Command::Type => type_of(inv, &mut out),
        Command::Eq => eq(inv, &mut out),
        Command::Norm => norm(inv, &mut out),
        Command::Corpus => corpus(inv, &mut out),
        Command::Meta => meta(inv, &mut out),
    };
    if let Err(f) = r {
        out.code = f.code();
        let _ = writeln!(out.stderr, "{}", f.message());
    }
    out
}

/// `(display name, text)` layers for one `-s` argument. Bundled names
/// expand to their prelude layers.
fn layers(arg: &str) -> Result<Vec<(String, String)>, Failure> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{arg}: {e}")))?;
        return Ok(vec![(arg.to_string(), text)]);
    }
    let base = path.file_name().and_then(|f| f.to_str()).unwrap_or(arg);
    if let Ok(id) = base.parse::<CorpusId>() {
        return Ok(stdsigs::entry(id)
            .layers
            .iter()
            .map(|f| (f.to_string(), stdsigs::file_source(f).unwrap_or_default().to_string()))
            .collect());
    }
    let with_ext = if base.ends_with(".eqlf") { base.to_string() } else { format!("{base}.eqlf") };
    if let Some(src) = stdsigs::file_source(&with_ext) {
        return Ok(vec![(with_ext, src.to_string())]);
    }
    Err(Failure::Io(format!("{arg}: no such file or bundled signature")))
}

/// Parses every layer once, in order; a bundled layer named twice is
/// included only the first time.
fn load_signature(files: &[String]) -> Result<Telescope, Failure> {
    let mut seen: Vec<String> = Vec::new();
    let mut decls = Telescope::new();
    for f in files {
        for (name, text) in layers(f)? {
            if seen.contains(&name) {
                continue;
            }
            let parsed = parse_signature_in(&text, Some(&name))?;
            decls = decls.concat(&to_telescope(&parsed));
            seen.push(name);
        }
    }
    Ok(decls)
}

fn kernel(inv: &Invocation, out: &mut Output) -> Result<Kernel, Failure> {
    let decls = load_signature(&inv.files)?;
    let sig = Signature::check(&decls, inv.config())?;
    for w in sig.warnings() {
        let _ = writeln!(out.stderr, "warning: no rewrite rule for {w}");
    }
    Ok(Kernel::new(sig, inv.config()))
}

fn context(inv: &Invocation, k: &Kernel) -> Result<Telescope, Failure> {
    let Some(text) = &inv.ctx else {
        return Ok(Telescope::new());
    };
    let ctx = to_telescope(&parse_signature_in(&read_arg(text)?, Some("<ctx>"))?);
    k.check_context(&ctx)?;
    Ok(ctx)
}

fn read_arg(text: &str) -> Result<String, Failure> {
    match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}"))),
        None => Ok(text.to_string()),
    }
}

/// Parses an expression, expanding `plus` and `times` to their recursor
/// definitions when neither the signature nor the context declares them.
fn object(k: &Kernel, ctx: &Telescope, text: &str) -> Result<Object, Failure> {
    let mut o = parse_object(&read_arg(text)?)?;
    let flavor = if k.signature().lookup(&Name::new("arr")).is_some() {
        Flavor::Simple
    } else {
        Flavor::Dependent
    };
    for (name, def) in [("plus", plus_term(flavor)), ("times", times_term(flavor))] {
        let n = Name::new(name);
        if o.mentions(&n) && k.signature().lookup(&n).is_none() && ctx.get(name).is_none() {
            o = o.subst(&n, &def);
        }
    }
    Ok(o)
}

fn need_sig(inv: &Invocation) -> Result<(), Failure> {
    if inv.files.is_empty() {
        Err(Failure::Usage("at least one signature (-s) is required".into()))
    } else {
        Ok(())
    }
}

fn check(inv: &Invocation, out: &mut Output) -> Result<(), Failure> {
    need_sig(inv)?;
    let k = kernel(inv, out)?;
    let ctx = context(inv, &k)?;
    let s = k.signature();
    let _ = writeln!(
        out.stdout,
        "ok {} declarations, {} reduction rules, {} expansion rules",
        s.len(),
        s.rule_count(crate::kernel::RuleKind::Reduction),
        s.rule_count(crate::kernel::RuleKind::Expansion)
    );
    for text in &inv.exprs {
        let o = object(&k, &ctx, text)?;
        match &inv.class_expr {
            Some(c) => {
                let c = parse_class(&read_arg(c)?)?;
                k.check_class(&ctx, &c)?;
                k.check_object(&ctx, &o, &c)?;
                let _ = writeln!(out.stdout, "ok {}", print_object(&o));
            }
            None => {
                let c = k.infer_object(&ctx, &o)?;
                let _ = writeln!(out.stdout, "{}", print_class(&c));
            }
        }
    }
    Ok(())
}

fn type_of(inv: &Invocation, out: &mut Output) -> Result<(), Failure> {
    need_sig(inv)?;
    if inv.exprs.is_empty() {
        return Err(Failure::Usage("type needs at least one -e".into()));
    }
    let k = kernel(inv, out)?;
    let ctx = context(inv, &k)?;
    for text in &inv.exprs {
        let o = object(&k, &ctx, text)?;
        let c = k.infer_object(&ctx, &o)?;
        let _ = writeln!(out.stdout, "{}", print_class(&c));
    }
    Ok(())
}

fn eq(inv: &Invocation, out: &mut Output) -> Result<(), Failure> {
    need_sig(inv)?;
    let (2, Some(class)) = (inv.exprs.len(), &inv.class_expr) else {
        return Err(Failure::Usage("eq needs exactly two -e and one -c".into()));
    };
    let k = kernel(inv, out)?;
    let ctx = context(inv, &k)?;
    let a = object(&k, &ctx, &inv.exprs[0])?;
    let b = object(&k, &ctx, &inv.exprs[1])?;
    let c = parse_class(&read_arg(class)?)?;
    k.check_class(&ctx, &c)?;
    k.check_object(&ctx, &a, &c)?;
    k.check_object(&ctx, &b, &c)?;
    let (v, steps) = k.equal_objects_traced(&ctx, &a, &b, &c);
    let _ = writeln!(out.stdout, "{v}");
    if inv.trace {
        out.stdout.push_str(&trace_render(&steps));
    }
    out.code = match v {
        Verdict::ProvenEqual => 0,
        Verdict::NotProven => 1,
        Verdict::FuelExhausted { .. } => 3,
    };
    Ok(())
}

fn norm(inv: &Invocation, out: &mut Output) -> Result<(), Failure> {
    need_sig(inv)?;
    if inv.exprs.is_empty() {
        return Err(Failure::Usage("norm needs at least one -e".into()));
    }
    let k = kernel(inv, out)?;
    let ctx = context(inv, &k)?;
    for text in &inv.exprs {
        let o = object(&k, &ctx, text)?;
        k.infer_object(&ctx, &o)?;
        let (r, steps) = k.normalize_traced(&ctx, &o);
        if inv.trace {
            out.stderr.push_str(&trace_render(&steps));
        }
        let _ = writeln!(out.stdout, "{}", print_object(&r?));
    }
    Ok(())
}

fn corpus(inv: &Invocation, out: &mut Output) -> Result<(), Failure> {
    if inv.files.is_empty() {
        for e in stdsigs::corpus() {
            let _ = writeln!(
                out.stdout,
                "{}\t{}\t{}+{}\t{}",
                e.id,
                e.file_path(),
                e.expected_reductions,
                e.expected_expansions,
                e.description
            );
        }
        return Ok(());
    }
    for f in &inv.files {
        let id: CorpusId = f.parse().map_err(|e: stdsigs::UnknownCorpusId| Failure::Usage(e.to_string()))?;
        out.stdout.push_str(&stdsigs::entry(id).source());
    }
    Ok(())
}

fn meta(inv: &Invocation, out: &mut Output) -> Result<(), Failure> {
    let ids: Vec<CorpusId> = if inv.files.is_empty() {
        CorpusId::ALL.to_vec()
    } else {
        inv.files
            .iter()
            .map(|f| {
                let base = Path::new(f).file_name().and_then(|s| s.to_str()).unwrap_or(f);
                base.parse().map_err(|e: stdsigs::UnknownCorpusId| Failure::Usage(e.to_string()))
            })
            .collect::<Result<_, _>>()?
    };
    let mut total = Report::default();
    for id in ids {
        let k = stdsigs::kernel(id).with_config(inv.config());
        let mut per = Report::default();
        for &seed in &inv.seeds {
            per.merge(&run_suite(&k, id, inv.budget, seed));
        }
        for (l, t) in crate::metatheory::Lemma::ALL.iter().zip(&per.tallies) {
            let _ = writeln!(
                out.stdout,
                "{id} {} pass {} fail {} inconclusive {} skipped {}",
                l.as_str(),
                t.pass,
                t.fail,
                t.inconclusive,
                t.skipped
            );
        }
        total.merge(&per);
    }
    let caught = total.controls.iter().filter(|(_, c)| *c).count();
    let _ = writeln!(out.stdout, "controls caught {caught}/{}", total.controls.len());
    for f in &total.failures {
        let _ = writeln!(out.stderr, "failure {f}");
    }
    out.code = if total.ok() { 0 } else { 1 };
    Ok(())
}
