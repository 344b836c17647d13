//! `hdatool`: file formats and algorithms of hda-core on the command line.
//!
//! Exit codes: 0 for yes/success, 1 for no or a counterexample, 2 for errors.

mod ingest;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use hda_core::format::json::{ClassTable, IpomsetJson};
use hda_core::format::lang::parse_lang_file;
use hda_core::format::{parse_hda, parse_ipomset, write_dot, write_hda, write_ipo_block, write_lang};
use hda_core::{verify_mn, Determinism, Hda, Ipomset, Label, LanguageSet, Membership, MnAutomaton};
use serde_json::json;

use ingest::TieBreak;

#[derive(Parser)]
#[command(name = "hdatool", version, about = "Ipomsets, higher-dimensional automata and their languages")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Override the alphabet of loaded languages (comma or space separated).
    #[arg(long, global = true, value_name = "LABELS")]
    alphabet: Option<String>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ipomset operations. IPO arguments are files or shorthand expressions.
    #[command(subcommand)]
    Ipo(IpoCmd),
    /// HDA operations on `.hda` files.
    #[command(subcommand)]
    Hda(HdaCmd),
    /// Language operations on `.lang` files.
    #[command(subcommand)]
    Lang(LangCmd),
    /// The Myhill-Nerode automaton of a language.
    #[command(subcommand)]
    Mn(MnCmd),
}

#[derive(Subcommand)]
enum IpoCmd {
    /// Print the canonical block.
    Canon { ipo: String },
    /// Glue two ipomsets.
    Glue { left: String, right: String },
    /// Exit 0 if the first subsumes into the second (is finer), printing the bijection.
    Subsume { finer: String, coarser: String },
    /// Print the sparse step decomposition, one step per line.
    Decompose { ipo: String },
    /// Print all refinements (the down-closure).
    Refine { ipo: String },
    /// Print all divisions `left * right`.
    Divisions { ipo: String },
    /// Print an interval representation as a log CSV, rows in event order
    /// (read it back with `ingest --evord input`).
    Intervals { ipo: String },
    /// Build an ipomset from a log CSV (`-` reads stdin).
    Ingest {
        log: String,
        /// Order of concurrent events.
        #[arg(long, value_enum, default_value_t)]
        evord: TieBreak,
    },
}

#[derive(Args)]
struct Steps {
    /// Longest sparse path to explore.
    #[arg(long, env = "HDA_MAX_STEPS", default_value_t = 8)]
    max_steps: usize,
}

#[derive(Subcommand)]
enum HdaCmd {
    /// Check face typing and the precubical identities.
    Validate { hda: String },
    /// Event ipomsets of sparse accepting paths up to a length.
    Lang {
        hda: String,
        #[command(flatten)]
        steps: Steps,
    },
    /// Exit 0 if the ipomset is accepted, printing an accepting path.
    Member {
        hda: String,
        ipo: Option<String>,
        #[arg(long, conflicts_with = "ipo")]
        expr: Option<String>,
    },
    /// Accessible, coaccessible and essential cells.
    Ess {
        hda: String,
        /// Write the essential part as an HDA.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exit 0 if deterministic, else 1 with the offending cells.
    Det { hda: String },
    /// Graphviz rendering.
    Dot { hda: String },
}

#[derive(Subcommand)]
enum LangCmd {
    /// The prefix or suffix quotient by an ipomset.
    Quotient {
        lang: String,
        #[arg(long, conflicts_with = "suffix", required_unless_present = "suffix")]
        prefix: Option<String>,
        #[arg(long)]
        suffix: Option<String>,
    },
    /// Exit 0 if swap-invariant, else 1 with witnesses.
    Swapinv { lang: String },
    /// All distinct suffix quotients.
    Suff { lang: String },
    /// Every prefix with its quotient.
    Prefixes { lang: String },
    /// Print the closed language.
    Members { lang: String },
}

#[derive(Subcommand)]
enum MnCmd {
    /// Build the automaton; the HDA goes to `-o` or stdout.
    Build {
        lang: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Class table as JSON.
        #[arg(long)]
        classes: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Build and check the automaton; exit 0 if it recognizes the language.
    Verify { lang: String },
}

/// Text of a file argument, or the argument itself when no such file exists.
fn text_of(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if path.is_file() {
        fs::read_to_string(path).with_context(|| format!("reading {arg}"))
    } else {
        Ok(arg.to_string())
    }
}

fn ipomset(arg: &str) -> Result<Ipomset> {
    parse_ipomset(&text_of(arg)?).with_context(|| format!("parsing ipomset {arg:?}"))
}

fn hda(arg: &str) -> Result<(String, Hda)> {
    parse_hda(&text_of(arg)?).with_context(|| format!("parsing HDA {arg:?}"))
}

fn name_of(arg: &str) -> String {
    Path::new(arg).file_stem().and_then(|s| s.to_str()).filter(|_| Path::new(arg).is_file()).unwrap_or("p").to_string()
}

/// A `.lang` file, or inline generators separated by commas or newlines.
fn language(arg: &str, alphabet: &Option<String>) -> Result<LanguageSet> {
    let mut text = text_of(arg)?;
    if !text.lines().any(|l| l.trim_start().starts_with("members:")) {
        text = format!("members:\n{}\n", text.replace(',', "\n"));
    }
    let mut file = parse_lang_file(&text).with_context(|| format!("parsing language {arg:?}"))?;
    if let Some(a) = alphabet {
        file.alphabet = Some(a.split([',', ' ']).filter(|s| !s.is_empty()).map(Label::new).collect());
    }
    Ok(file.into_language()?)
}

fn braces<'a>(items: impl IntoIterator<Item = &'a Ipomset>) -> String {
    let v: Vec<String> = items.into_iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

fn texts<'a>(items: impl IntoIterator<Item = &'a Ipomset>) -> Vec<String> {
    items.into_iter().map(|p| p.to_string()).collect()
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let json = cli.json;
    match cli.cmd {
        Command::Ipo(cmd) => ipo(cmd, json),
        Command::Hda(cmd) => hda_cmd(cmd, json),
        Command::Lang(cmd) => lang(cmd, json, &cli.alphabet),
        Command::Mn(cmd) => mn(cmd, json, &cli.alphabet),
    }
}

fn ipo(cmd: IpoCmd, json: bool) -> Result<ExitCode> {
    match cmd {
        IpoCmd::Canon { ipo: arg } => {
            let p = ipomset(&arg)?;
            if json {
                print_json(&serde_json::to_value(IpomsetJson::from(&p))?);
            } else {
                print!("{}", write_ipo_block(&name_of(&arg), &p));
            }
        }
        IpoCmd::Glue { left, right } => {
            let p = ipomset(&left)?.glue(&ipomset(&right)?)?;
            if json {
                print_json(&serde_json::to_value(IpomsetJson::from(&p))?);
            } else {
                print!("{}", write_ipo_block("glued", &p));
            }
        }
        IpoCmd::Subsume { finer, coarser } => {
            let (p, q) = (ipomset(&finer)?, ipomset(&coarser)?);
            let f = p.subsumption(&q);
            if json {
                print_json(&json!({ "result": f.is_some(), "bijection": f }));
            } else {
                match &f {
                    Some(f) => {
                        println!("{p} ⊑ {q}");
                        for (x, &y) in f.iter().enumerate() {
                            println!("  {}{x} -> {}{y}", p.label(x), q.label(y));
                        }
                    }
                    None => println!("{p} ⋢ {q}"),
                }
            }
            return Ok(verdict(f.is_some()));
        }
        IpoCmd::Decompose { ipo: arg } => {
            let d = ipomset(&arg)?.sparse_decomposition();
            if json {
                let steps: Vec<String> = d.steps.iter().map(|s| s.to_string()).collect();
                print_json(&json!({ "initial": d.initial.to_string(), "steps": steps }));
            } else if d.steps.is_empty() {
                println!("{d}");
            } else {
                for s in &d.steps {
                    println!("{s}");
                }
            }
        }
        IpoCmd::Refine { ipo: arg } => {
            let refs = ipomset(&arg)?.refinements();
            if json {
                print_json(&json!(texts(&refs)));
            } else {
                refs.iter().for_each(|r| println!("{r}"));
            }
        }
        IpoCmd::Divisions { ipo: arg } => {
            let divs = ipomset(&arg)?.enumerate_divisions();
            if json {
                let v: Vec<_> = divs.iter().map(|d| json!([d.left.to_string(), d.right.to_string()])).collect();
                print_json(&json!(v));
            } else {
                divs.iter().for_each(|d| println!("{} * {}", d.left, d.right));
            }
        }
        IpoCmd::Intervals { ipo: arg } => {
            let rep = ipomset(&arg)?.interval_representation();
            let mut w = csv::Writer::from_writer(std::io::stdout());
            w.write_record(["event_id", "label", "begin", "end", "open_left", "open_right"])?;
            for (x, i) in rep.intervals.iter().enumerate() {
                w.write_record([
                    format!("e{x}"),
                    i.label.to_string(),
                    i.begin.to_string(),
                    i.end.to_string(),
                    i.source.to_string(),
                    i.target.to_string(),
                ])?;
            }
            w.flush()?;
        }
        IpoCmd::Ingest { log, evord } => {
            let records = if log == "-" {
                ingest::read_log(std::io::stdin().lock())?
            } else {
                ingest::read_log(fs::File::open(&log).with_context(|| format!("opening {log}"))?)?
            };
            let p = ingest::ingest_log(&records, evord)?;
            if json {
                print_json(&serde_json::to_value(IpomsetJson::from(&p))?);
            } else {
                print!("{}", write_ipo_block(&name_of(&log), &p));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn hda_cmd(cmd: HdaCmd, json: bool) -> Result<ExitCode> {
    match cmd {
        HdaCmd::Validate { hda: arg } => {
            let (_, x) = hda(&arg)?;
            let r = x.validate();
            if json {
                print_json(&json!({ "result": r.is_ok(), "error": r.as_ref().err().map(|e| e.to_string()) }));
            } else {
                match &r {
                    Ok(()) => println!("valid: {} cells, by dimension {:?}", x.len(), x.dimension_counts()),
                    Err(e) => println!("invalid: {e}"),
                }
            }
            Ok(verdict(r.is_ok()))
        }
        HdaCmd::Lang { hda: arg, steps } => {
            let (_, x) = hda(&arg)?;
            let l = x.enumerate_language(steps.max_steps);
            if json {
                print_json(&json!(l.iter().map(|p| serde_json::to_value(IpomsetJson::from(p))).collect::<Result<Vec<_>, _>>()?));
            } else {
                l.iter().for_each(|p| println!("{p}"));
            }
            Ok(ExitCode::SUCCESS)
        }
        HdaCmd::Member { hda: arg, ipo: p, expr } => {
            let (_, x) = hda(&arg)?;
            let q = match (p, expr) {
                (Some(a), None) => ipomset(&a)?,
                (None, Some(e)) => parse_ipomset(&e)?,
                _ => bail!("give an ipomset argument or --expr"),
            };
            let m = x.member(&q);
            let path = match &m {
                Membership::Accepted(path) => Some(x.format_path(path)),
                Membership::Rejected => None,
            };
            if json {
                print_json(&json!({ "result": path.is_some(), "path": path }));
            } else {
                match &path {
                    Some(p) => println!("accepted: {p}"),
                    None => println!("rejected: {q}"),
                }
            }
            Ok(verdict(m.is_accepted()))
        }
        HdaCmd::Ess { hda: arg, output } => {
            let (name, x) = hda(&arg)?;
            let r = x.essential_report();
            let names = |s: &std::collections::BTreeSet<usize>| -> Vec<String> {
                s.iter().map(|&c| x.name(c).to_string()).collect()
            };
            if json {
                print_json(&json!({
                    "accessible": names(&r.accessible),
                    "coaccessible": names(&r.coaccessible),
                    "essential": names(&r.essential),
                    "closure": names(&r.closure),
                }));
            } else {
                println!("accessible: {}", names(&r.accessible).join(" "));
                println!("coaccessible: {}", names(&r.coaccessible).join(" "));
                println!("essential: {}", names(&r.essential).join(" "));
                println!("closure: {}", names(&r.closure).join(" "));
            }
            if let Some(out) = output {
                let e = x.ess_closure()?;
                fs::write(&out, write_hda(&format!("{name}_ess"), &e)).with_context(|| format!("writing {}", out.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        HdaCmd::Det { hda: arg } => {
            let (_, x) = hda(&arg)?;
            let d = x.determinism();
            let witness = match &d {
                Determinism::Deterministic => None,
                Determinism::MultipleStarts { loset, cells } => {
                    let names: Vec<&str> = cells.iter().map(|&c| x.name(c)).collect();
                    Some(format!("start cells of type {loset}: {}", names.join(" ")))
                }
                Determinism::Branching { x: from, a, y, z } => {
                    let labels: String = a.iter().map(|i| x.loset(*y).labels()[i].to_string()).collect();
                    let (f, y, z) = (x.name(*from), x.name(*y), x.name(*z));
                    Some(format!("{f} ↗{labels} {y} and {f} ↗{labels} {z}"))
                }
            };
            if json {
                print_json(&json!({ "result": witness.is_none(), "witness": witness }));
            } else {
                match &witness {
                    None => println!("deterministic"),
                    Some(w) => println!("not deterministic: {w}"),
                }
            }
            Ok(verdict(d.is_deterministic()))
        }
        HdaCmd::Dot { hda: arg } => {
            let (name, x) = hda(&arg)?;
            print!("{}", write_dot(&name, &x));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn lang(cmd: LangCmd, json: bool, alphabet: &Option<String>) -> Result<ExitCode> {
    match cmd {
        LangCmd::Quotient { lang: arg, prefix, suffix } => {
            let l = language(&arg, alphabet)?;
            let q = match (prefix, suffix) {
                (Some(p), None) => l.prefix_quotient(&ipomset(&p)?).clone(),
                (None, Some(s)) => l.suffix_quotient(&ipomset(&s)?),
                _ => unreachable!("clap requires exactly one of --prefix and --suffix"),
            };
            if json {
                print_json(&json!(texts(&q)));
            } else {
                println!("{}", braces(&q));
            }
        }
        LangCmd::Swapinv { lang: arg } => {
            let l = language(&arg, alphabet)?;
            let v = l.swap_invariance_violations();
            if json {
                let items: Vec<_> = v
                    .iter()
                    .map(|w| {
                        json!({
                            "finer": w.finer.to_string(),
                            "coarser": w.coarser.to_string(),
                            "finer_quotient": texts(&w.finer_quotient),
                            "coarser_quotient": texts(&w.coarser_quotient),
                        })
                    })
                    .collect();
                print_json(&json!({ "result": v.is_empty(), "violations": items }));
            } else if v.is_empty() {
                println!("swap-invariant");
            } else {
                println!("not swap-invariant: {} witnesses", v.len());
                for w in &v {
                    println!(
                        "({}, {}): {} ≠ {}",
                        w.finer,
                        w.coarser,
                        braces(&w.finer_quotient),
                        braces(&w.coarser_quotient)
                    );
                }
            }
            return Ok(verdict(v.is_empty()));
        }
        LangCmd::Suff { lang: arg } => {
            let l = language(&arg, alphabet)?;
            let fam = l.suffix_quotient_family();
            if json {
                print_json(&json!(fam.iter().map(texts).collect::<Vec<_>>()));
            } else {
                fam.iter().for_each(|q| println!("{}", braces(q)));
            }
        }
        LangCmd::Prefixes { lang: arg } => {
            let l = language(&arg, alphabet)?;
            if json {
                let v: Vec<_> =
                    l.prefixes().map(|p| json!({ "prefix": p.to_string(), "quotient": texts(l.prefix_quotient(p)) })).collect();
                print_json(&json!(v));
            } else {
                for p in l.prefixes() {
                    println!("{p}\t{}", braces(l.prefix_quotient(p)));
                }
            }
        }
        LangCmd::Members { lang: arg } => {
            let l = language(&arg, alphabet)?;
            if json {
                print_json(&json!(texts(l.members())));
            } else {
                print!("{}", write_lang(&l));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn mn(cmd: MnCmd, json: bool, alphabet: &Option<String>) -> Result<ExitCode> {
    match cmd {
        MnCmd::Build { lang: arg, output, classes, dot } => {
            let l = language(&arg, alphabet)?;
            let m = MnAutomaton::build(&l)?;
            let name = format!("mn_{}", name_of(&arg));
            let text = write_hda(&name, &m.hda);
            match &output {
                Some(out) => fs::write(out, &text).with_context(|| format!("writing {}", out.display()))?,
                None => print!("{text}"),
            }
            if let Some(out) = classes {
                let table = serde_json::to_string_pretty(&ClassTable::from(&m))?;
                fs::write(&out, table).with_context(|| format!("writing {}", out.display()))?;
            }
            if let Some(out) = dot {
                fs::write(&out, write_dot(&name, &m.hda)).with_context(|| format!("writing {}", out.display()))?;
            }
            if output.is_some() {
                let summary = json!({
                    "cells": m.hda.len(),
                    "by_dimension": m.hda.dimension_counts(),
                    "essential_by_dimension": m.essential_counts(),
                    "deterministic": m.hda.is_deterministic(),
                });
                if json {
                    print_json(&summary);
                } else {
                    println!(
                        "{} cells, by dimension {:?}, essential {:?}",
                        m.hda.len(),
                        m.hda.dimension_counts(),
                        m.essential_counts()
                    );
                }
            }
        }
        MnCmd::Verify { lang: arg } => {
            let l = language(&arg, alphabet)?;
            let m = MnAutomaton::build(&l)?;
            let r = verify_mn(&l, &m);
            let (missing, extra) = r.language.clone().unwrap_or_default();
            let (ess_nf, fut_ne) = r.essential.clone().unwrap_or_default();
            let cells = |v: &[usize]| -> Vec<String> { v.iter().map(|&c| m.describe(c)).collect() };
            if json {
                print_json(&json!({
                    "result": r.passed(),
                    "missing": texts(&missing),
                    "extra": texts(&extra),
                    "essential_without_future": cells(&ess_nf),
                    "future_not_essential": cells(&fut_ne),
                    "validation": r.validation,
                }));
            } else if r.passed() {
                println!("ok: {} members, {} cells", l.len(), m.hda.len());
            } else {
                println!("failed");
                if !missing.is_empty() {
                    println!("missing: {}", braces(&missing));
                }
                if !extra.is_empty() {
                    println!("extra: {}", braces(&extra));
                }
                if !ess_nf.is_empty() || !fut_ne.is_empty() {
                    println!("essential without future: {}", cells(&ess_nf).join(" "));
                    println!("future but not essential: {}", cells(&fut_ne).join(" "));
                }
                if let Some(v) = &r.validation {
                    println!("invalid: {v}");
                }
            }
            return Ok(verdict(r.passed()));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
