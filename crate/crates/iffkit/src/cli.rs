//! The `iffkit` command line.
//!
//! Exit status is 0 on success, 1 when a check finds a domain failure and 2
//! for usage, input and parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser, Subcommand};

use iffkit_core::ifca::concepts;
use iffkit_core::institution::{truth_lattice, Eqn, Prop, TinyFol};
use iffkit_core::integrate::{fuse, AlignmentDiagram, Fusable};
use iffkit_core::metalang::{lint_categorical_design, parse_sentences, validate, QualifiedName};
use iffkit_core::registry::Registry;
use iffkit_core::sexpr::{read_all, Sexpr};
use iffkit_core::termlang::lawvere_fragment;

use crate::corpus;
use crate::formats::alignment::{parse_alignment, Alignment};
use crate::formats::context::{parse_context, print_concepts};
use crate::formats::diagram::parse_diagram;
use crate::formats::language::{parse_language, print_lawvere};
use crate::formats::leveled::{fundamental_relations, is_leveled, leveled_from_forms};
use crate::formats::theory::{parse_theory, print_theory, theory_from_sexpr, TheoryFile, TheorySyntax};
use crate::formats::vocab::{load_vocab, print_report};
use crate::formats::{form_line, quoted, read_file, FormatError};
use crate::verify::{self, Config};

#[derive(Debug, Parser)]
#[command(name = "iffkit", version, about = "Metalogic workbench over the bundled iffkit corpus")]
struct Cli {
    /// Sentence depth for closures, lattices and Lawvere fragments
    #[arg(long, global = true, default_value_t = 2)]
    depth: u32,
    /// Largest carrier for bounded model enumeration
    #[arg(long = "model-bound", global = true, default_value_t = 3)]
    model_bound: usize,
    /// Largest cocone apex tried by universal-property checks
    #[arg(long = "cocone-bound", global = true, default_value_t = 4)]
    cocone_bound: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lint sentence files, validate theories and formats, relate leveled data
    Check {
        /// Also fail on non-compliant sentences and inconsistent theories
        #[arg(long)]
        strict: bool,
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Resolve namespace prefixes, or look up `prefix:term` names
    Resolve {
        /// Vocabulary file; defaults to the bundled ur.vocab and iff.vocab
        #[arg(long)]
        vocab: Vec<String>,
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// Vocabulary counts for every namespace
    Report {
        /// Vocabulary file; defaults to the bundled ur.vocab and iff.vocab
        #[arg(long)]
        vocab: Vec<String>,
    },
    /// Formal concepts of a classification
    Lattice { file: String },
    /// Concepts of the truth classification of a theory's signature
    TruthLattice { file: String },
    /// Lawvere fragment of a term language
    Lawvere { file: String },
    /// Fuse the theories of an alignment diagram
    Merge {
        file: String,
        /// Write the fused theory here instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Fail when the fused theory is inconsistent
        #[arg(long)]
        strict: bool,
    },
    /// Run verification suites, all of them by default
    Verify { suites: Vec<String> },
}

enum Failure {
    Usage(String),
    Input(FormatError),
    /// Input that parsed but cannot be processed.
    Invalid(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<bool, Failure>;

/// Run the command line on `args`, including the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    let cfg = Config { depth: cli.depth, model_bound: cli.model_bound, cocone_bound: cli.cocone_bound, ..Config::default() };
    match dispatch(cli.command, &cfg, out, err) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "error: {message}\n\n{}", Cli::command().render_usage());
            2
        }
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(Failure::Invalid(message)) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}

fn dispatch(command: Command, cfg: &Config, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Check { strict, files } => {
            let mut ok = true;
            for f in files {
                ok &= check(&f, strict, cfg, out, err)?;
            }
            Ok(ok)
        }
        Command::Resolve { vocab, names } => resolve(&registry(&vocab)?, &names, out, err),
        Command::Report { vocab } => {
            emit(out, &print_report(&registry(&vocab)?));
            Ok(true)
        }
        Command::Lattice { file } => {
            let src = load(&file)?;
            let ctx = parse_context(&src.text, Some(&src.label))?;
            let l = concepts(&ctx.classification);
            emit(out, &format!("(lattice {} (concepts {}))\n", quoted(&ctx.id), l.len()));
            emit(out, &print_concepts(&ctx.classification, &l));
            Ok(true)
        }
        Command::TruthLattice { file } => {
            let src = load(&file)?;
            let text = match parse_theory(&src.text, Some(&src.label))? {
                TheoryFile::Prop(id, t) => truth(&Prop, &id, &t.signature, cfg),
                TheoryFile::Eqn(id, t) => truth(&Eqn, &id, &t.signature, cfg),
                TheoryFile::Fol(id, t) => truth(&TinyFol, &id, &t.signature, cfg),
            };
            emit(out, &text);
            Ok(true)
        }
        Command::Lawvere { file } => {
            let src = load(&file)?;
            let lang = parse_language(&src.text, Some(&src.label))?;
            let frag = lawvere_fragment(&lang.language, cfg.depth).map_err(|e| Failure::Invalid(e.to_string()))?;
            emit(out, &print_lawvere(&lang.id, &lang.language, &frag));
            Ok(true)
        }
        Command::Merge { file, output, strict } => merge(&file, output.as_deref(), strict, cfg, out),
        Command::Verify { suites } => {
            let mut picked = Vec::new();
            for name in &suites {
                match verify::suite(name) {
                    Some(s) => picked.push(s),
                    None => {
                        let known: Vec<&str> = verify::SUITES.iter().map(|s| s.name).collect();
                        return Err(Failure::Usage(format!("unknown suite {name}; expected one of {}", known.join(", "))));
                    }
                }
            }
            if picked.is_empty() {
                picked = verify::SUITES.iter().collect();
            }
            let results = verify::run_suites(&picked, cfg);
            emit(out, &verify::print_results(&results));
            let _ = err.flush();
            Ok(results.iter().all(verify::SuiteResult::passed))
        }
    }
}

fn count(n: usize, word: &str) -> String {
    format!("{n} {word}{}", if n == 1 { "" } else { "s" })
}

fn emit(out: &mut dyn Write, text: &str) {
    let _ = out.write_all(text.as_bytes());
}

struct Source {
    text: String,
    label: String,
    /// Where relative references inside the file are looked up.
    dir: Option<PathBuf>,
}

/// A file on disk, or else a corpus entry of that name.
fn load(arg: &str) -> Result<Source, FormatError> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok(Source { text: read_file(path)?, label: arg.to_string(), dir: path.parent().map(Path::to_path_buf) });
    }
    Ok(Source { text: corpus::text(arg)?, label: arg.to_string(), dir: corpus::dir() })
}

fn registry(vocab: &[String]) -> Result<Registry, FormatError> {
    let defaults = ["ur.vocab".to_string(), "iff.vocab".to_string()];
    let files = if vocab.is_empty() { &defaults[..] } else { vocab };
    let mut reg = Registry::new();
    for f in files {
        let src = load(f)?;
        load_vocab(&mut reg, &src.text, &src.label)?;
    }
    Ok(reg)
}

fn resolve(reg: &Registry, names: &[String], out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let mut ok = true;
    for n in names {
        let line = if n.contains(':') {
            QualifiedName::parse(n).map_err(|e| e.to_string()).and_then(|q| {
                let e = reg.lookup_term(&q, None).map_err(|e| e.to_string())?;
                let ns = reg.namespace(e.namespace).expect("entries name registered namespaces");
                Ok(format!("(term {} {}:{} {})", quoted(n), ns.general_form(), e.term, e.kind.name()))
            })
        } else {
            reg.resolve(n).map_err(|e| e.to_string()).map(|r| {
                let ns = reg.namespace(r.namespace).expect("resolved");
                format!("(resolution {} {}{})", quoted(n), ns.general_form(), if r.deprecated { " deprecated" } else { "" })
            })
        };
        match line {
            Ok(l) => emit(out, &format!("{l}\n")),
            Err(e) => {
                ok = false;
                let _ = writeln!(err, "{n}: {e}");
            }
        }
    }
    Ok(ok)
}

fn truth<I: TheorySyntax>(inst: &I, id: &str, sig: &I::Signature, cfg: &Config) -> String {
    let (c, l) = truth_lattice(inst, sig, cfg.depth, cfg.model_bound);
    let mut out = format!("(truth-lattice {} (models {}) (sentences {}) (concepts {}))\n", quoted(id), c.token_count(), c.type_count(), l.len());
    out.push_str(&print_concepts(&c, &l));
    out
}

fn check(file: &str, strict: bool, cfg: &Config, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let src = load(file)?;
    let forms = read_all(&src.text, Some(src.label.as_str().into())).map_err(FormatError::from)?;
    let head = forms.first().and_then(Sexpr::as_form).map(|(h, _)| h);
    let label = &src.label;
    match head {
        Some("theory") if forms.len() == 1 => {
            let t = theory_from_sexpr(&forms[0])?;
            let consistent = match &t {
                TheoryFile::Prop(_, th) => consistent(&Prop, th, cfg),
                TheoryFile::Eqn(_, th) => consistent(&Eqn, th, cfg),
                TheoryFile::Fol(_, th) => consistent(&TinyFol, th, cfg),
            };
            emit(
                out,
                &format!(
                    "{label}: theory {} ({}), {}, {}\n",
                    t.id(),
                    t.institution(),
                    count(t.axiom_count(), "axiom"),
                    if consistent { "consistent" } else { "inconsistent" }
                ),
            );
            Ok(consistent || !strict)
        }
        Some("classification") => {
            let c = parse_context(&src.text, Some(label))?;
            let cl = &c.classification;
            emit(out, &format!("{label}: classification {}, {}, {}\n", c.id, count(cl.token_count(), "token"), count(cl.type_count(), "type")));
            Ok(true)
        }
        Some("term-language") => {
            let l = parse_language(&src.text, Some(label))?;
            emit(out, &format!("{label}: term language {}, {}, {}\n", l.id, count(l.language.symbols.len(), "symbol"), count(l.equations.len(), "equation")));
            Ok(true)
        }
        Some("diagram") => {
            let d = parse_diagram(&src.text, Some(label))?;
            emit(out, &format!("{label}: diagram {}, {}, {}\n", d.id, count(d.nodes.len(), "node"), count(d.arrows.len(), "arrow")));
            Ok(true)
        }
        Some("alignment") => {
            let a = alignment(&src)?;
            let nodes = match &a {
                Alignment::Prop(d) => d.names.len(),
                Alignment::Eqn(d) => d.names.len(),
                Alignment::Fol(d) => d.names.len(),
            };
            emit(out, &format!("{label}: {} alignment, {}\n", a.institution(), count(nodes, "node")));
            Ok(true)
        }
        _ if is_leveled(&forms) => {
            let data = leveled_from_forms(&forms)?;
            emit(out, &format!("{label}: {}\n", count(data.items.len(), "leveled item")));
            for r in fundamental_relations(&data) {
                emit(out, &format!("{r}\n"));
            }
            Ok(true)
        }
        _ => check_sentences(&src, strict, out, err),
    }
}

fn consistent<I: TheorySyntax>(inst: &I, t: &iffkit_core::institution::Theory<I>, cfg: &Config) -> bool {
    inst.satisfiable(&t.signature, &t.axiom_list(), cfg.model_bound)
}

fn check_sentences(src: &Source, strict: bool, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let sentences = parse_sentences(&src.text, Some(src.label.as_str().into())).map_err(FormatError::from)?;
    let mut ok = true;
    for s in &sentences {
        for issue in validate(s) {
            ok = false;
            let _ = writeln!(err, "{issue}");
        }
    }
    let r = lint_categorical_design(&sentences);
    emit(
        out,
        &format!(
            "{}: {}, {} compliant ({:.1}%)\n",
            src.label,
            count(r.total(), "sentence"),
            r.compliant_count(),
            100.0 * r.ratio()
        ),
    );
    for rec in r.records.iter().filter(|rec| !rec.compliant) {
        let found: Vec<&str> = rec.offending.iter().map(|c| c.name()).collect();
        emit(out, &format!("  {}: {}\n", rec.span, form_line("uses", found)));
    }
    Ok(ok && (!strict || r.compliant_count() == r.total()))
}

fn alignment(src: &Source) -> Result<Alignment, FormatError> {
    let dir = src.dir.clone();
    parse_alignment(&src.text, Some(&src.label), &move |path| {
        let on_disk = dir.as_ref().map(|d| d.join(path)).filter(|p| p.exists());
        match on_disk {
            Some(p) => Ok((read_file(&p)?, p.display().to_string())),
            None => Ok((corpus::text(path)?, path.to_string())),
        }
    })
}

fn merge(file: &str, output: Option<&Path>, strict: bool, cfg: &Config, out: &mut dyn Write) -> Outcome {
    let src = load(file)?;
    let id = Path::new(file).file_stem().and_then(|s| s.to_str()).unwrap_or("fused").to_string();
    let (theory, provenance, inconsistent) = match alignment(&src)? {
        Alignment::Prop(d) => fused(&Prop, &id, &d, cfg)?,
        Alignment::Eqn(d) => fused(&Eqn, &id, &d, cfg)?,
        Alignment::Fol(d) => fused(&TinyFol, &id, &d, cfg)?,
    };
    let status = format!("(status {})\n", if inconsistent { "inconsistent" } else { "consistent" });
    match output {
        Some(path) => std::fs::write(path, &theory).map_err(|source| FormatError::Io { path: path.display().to_string(), source })?,
        None => emit(out, &theory),
    }
    emit(out, &provenance);
    emit(out, &status);
    Ok(!(strict && inconsistent))
}

/// The printed fused theory, its provenance table and whether it is
/// inconsistent.
fn fused<I: TheorySyntax + Fusable>(inst: &I, id: &str, d: &AlignmentDiagram<I>, cfg: &Config) -> Result<(String, String, bool), Failure> {
    let r = fuse(inst, d, cfg.model_bound).map_err(|e| Failure::Invalid(e.to_string()))?;
    let mut table = String::from("(provenance");
    for (sym, sources) in r.symbols.iter().zip(&r.provenance) {
        let from: Vec<String> = sources.iter().map(|(node, name)| format!("({} {})", quoted(node), quoted(name))).collect();
        table.push_str(&format!("\n  ({} {})", quoted(sym), from.join(" ")));
    }
    table.push_str(")\n");
    Ok((print_theory(inst, id, &r.theory), table, r.inconsistent))
}
