//! Command-line front end: group inspection, single-subgroup membership
//! queries, corpus-wide verification runs, and counterexample searches.

use chieftain::checks::{is_cap_error, run_search, run_verify, DropHypothesis, RunOptions};
use chieftain::report::{render_report, CheckId, CheckReport};
use chieftain_core::{
    builtin_corpus, find_entry, load_corpus, satisfies_partial_pi, Caps, CorpusEntry, Group,
    GroupError, Permutation, StructureProfile, Subgroup,
};
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "chieftain",
    about = "Chief-series membership conditions in finite permutation groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print order, prime spectrum, and structural profile of a corpus group.
    Info {
        /// `builtin` or a path to a JSON-lines corpus file.
        corpus: String,
        /// Name of the group inside the corpus.
        name: String,
    },
    /// Evaluate the chief-series membership condition for one subgroup.
    CheckPi {
        #[arg(long, default_value = "builtin")]
        corpus: String,
        #[arg(long)]
        group: String,
        /// One of `sylow:<p>`, `derived-of-sylow:<p>`, or `cyclic:<element>`
        /// with the element in cycle notation, e.g. `cyclic:(1 2 3)`.
        #[arg(long)]
        subgroup: String,
        /// `group` (default) or `normalizer-of-sylow:<p>`.
        #[arg(long, default_value = "group")]
        ambient: String,
    },
    /// Run verification suites over a corpus and emit a JSON-lines report.
    Verify {
        #[arg(long, default_value = "builtin")]
        corpus: String,
        /// Comma-separated suite names (e.g. `T3,L8`); default is all.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        /// Comma-separated primes restricting per-prime quantifiers.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        /// Single bound applied to every enumeration cap.
        #[arg(long)]
        cap: Option<u64>,
        /// Write the report here instead of stdout; the human-readable
        /// breakdown then goes to stdout instead of stderr.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Re-run a p-nilpotency suite with one hypothesis dropped; the corpus is
    /// expected to refute the weakened statement.
    Search {
        #[arg(long, default_value = "builtin")]
        corpus: String,
        /// `T3` or `T4`.
        #[arg(long)]
        check: String,
        /// `gcd-condition`, `pprime-subgroup-condition`, or `pi-in-normalizer`.
        #[arg(long)]
        drop: String,
        #[arg(long)]
        cap: Option<u64>,
    },
}

enum CliError {
    /// Bad input: unreadable corpus, unknown group, malformed flag value.
    Input(String),
    /// An enumeration cap stopped the computation.
    Cap(String),
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> CliError {
        if is_cap_error(&e) {
            CliError::Cap(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Cap(m)) => {
            eprintln!("error: enumeration cap exceeded: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.cmd {
        Command::Info { corpus, name } => cmd_info(&corpus, &name),
        Command::CheckPi {
            corpus,
            group,
            subgroup,
            ambient,
        } => cmd_check_pi(&corpus, &group, &subgroup, &ambient),
        Command::Verify {
            corpus,
            checks,
            primes,
            cap,
            report,
        } => cmd_verify(&corpus, checks, primes, cap, report),
        Command::Search {
            corpus,
            check,
            drop,
            cap,
        } => cmd_search(&corpus, &check, &drop, cap),
    }
}

fn load_entries(spec: &str) -> Result<Vec<CorpusEntry>, CliError> {
    if spec == "builtin" {
        return Ok(builtin_corpus().to_vec());
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| CliError::Input(format!("cannot read corpus `{spec}`: {e}")))?;
    load_corpus(&text).map_err(|e| CliError::Input(format!("corpus `{spec}`: {e}")))
}

fn lookup<'a>(entries: &'a [CorpusEntry], name: &str) -> Result<&'a CorpusEntry, CliError> {
    find_entry(entries, name)
        .ok_or_else(|| CliError::Input(format!("no group named `{name}` in the corpus")))
}

fn caps_from(cap: Option<u64>) -> Caps {
    match cap {
        None => Caps::default(),
        Some(n) => Caps {
            element: n,
            lattice: n as usize,
            memo: n as usize,
            filter: n,
        },
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn format_factorization(order: u128, factorization: &[(u64, u32)]) -> String {
    if factorization.is_empty() {
        return order.to_string();
    }
    let parts: Vec<String> = factorization
        .iter()
        .map(|&(p, e)| {
            if e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect();
    format!("{order} = {}", parts.join(" * "))
}

fn render_info(entry: &CorpusEntry, profile: &StructureProfile) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "{}: degree {}, order {}\n",
        entry.name,
        entry.degree,
        format_factorization(profile.order, &profile.factorization)
    ));
    let primes: Vec<String> = profile.primes.iter().map(|p| p.to_string()).collect();
    s.push_str(&format!("primes: {}\n", primes.join(", ")));
    if let Some(tags) = &entry.tags {
        s.push_str(&format!("tags: {}\n", tags.join(", ")));
    }
    s.push_str(&format!("nilpotent: {}\n", yes_no(profile.nilpotent)));
    s.push_str(&format!("soluble: {}\n", yes_no(profile.soluble)));
    s.push_str(&format!("supersoluble: {}\n", yes_no(profile.supersoluble)));
    s.push_str(&format!(
        "sylow tower of supersoluble type: {}\n",
        yes_no(profile.sylow_tower_supersoluble_type)
    ));
    s.push_str(&format!(
        "U-hypercenter: order {}\n",
        profile.u_hypercenter.order()
    ));
    for pp in &profile.per_prime {
        s.push_str(&format!(
            "p = {}: p-nilpotent {}, p-soluble {}, p-supersoluble {}, U_p-hypercenter order {}\n",
            pp.p,
            yes_no(pp.p_nilpotent),
            yes_no(pp.p_soluble),
            yes_no(pp.p_supersoluble),
            pp.u_p_hypercenter.order()
        ));
    }
    s
}

fn cmd_info(corpus: &str, name: &str) -> Result<ExitCode, CliError> {
    let entries = load_entries(corpus)?;
    let entry = lookup(&entries, name)?;
    let g = entry.group()?;
    let profile = g.structure_profile(Caps::default())?;
    print!("{}", render_info(entry, &profile));
    Ok(ExitCode::SUCCESS)
}

/// Parses `kind:value` subgroup and ambient specifications.
fn split_spec<'a>(spec: &'a str, what: &str) -> Result<(&'a str, &'a str), CliError> {
    spec.split_once(':')
        .ok_or_else(|| CliError::Input(format!("malformed {what} `{spec}`: expected `kind:value`")))
}

fn parse_prime_arg(s: &str, what: &str) -> Result<u64, CliError> {
    let p: u64 = s
        .parse()
        .map_err(|_| CliError::Input(format!("{what}: `{s}` is not a number")))?;
    if !chieftain_core::primes::is_prime(p) {
        return Err(CliError::Input(format!("{what}: {p} is not a prime")));
    }
    Ok(p)
}

fn build_subgroup(
    g: &Arc<Group>,
    spec: &str,
    caps: Caps,
) -> Result<(Subgroup, String), CliError> {
    let (kind, value) = split_spec(spec, "subgroup spec")?;
    match kind {
        "sylow" => {
            let p = parse_prime_arg(value, "subgroup spec")?;
            let s = g.sylow_subgroup(p, caps)?;
            Ok((s, format!("Sylow {p}-subgroup")))
        }
        "derived-of-sylow" => {
            let p = parse_prime_arg(value, "subgroup spec")?;
            let s = g.sylow_subgroup(p, caps)?.derived_subgroup()?;
            Ok((s, format!("derived subgroup of Sylow {p}-subgroup")))
        }
        "cyclic" => {
            let x = Permutation::parse(value, g.degree())
                .map_err(|e| CliError::Input(format!("subgroup spec element: {e}")))?;
            let s = Subgroup::generated_in(g, &[x])?;
            Ok((s, format!("cyclic subgroup generated by {value}")))
        }
        other => Err(CliError::Input(format!(
            "unknown subgroup kind `{other}` (expected sylow, derived-of-sylow, or cyclic)"
        ))),
    }
}

fn cmd_check_pi(
    corpus: &str,
    group: &str,
    subgroup: &str,
    ambient: &str,
) -> Result<ExitCode, CliError> {
    let caps = Caps::default();
    let entries = load_entries(corpus)?;
    let entry = lookup(&entries, group)?;
    let g = entry.group()?;
    let (h, h_desc) = build_subgroup(&g, subgroup, caps)?;

    let (amb, amb_desc) = if ambient == "group" {
        (g.clone(), format!("whole group (order {})", g.order()))
    } else {
        let (kind, value) = split_spec(ambient, "ambient spec")?;
        if kind != "normalizer-of-sylow" {
            return Err(CliError::Input(format!(
                "unknown ambient `{ambient}` (expected `group` or `normalizer-of-sylow:<p>`)"
            )));
        }
        let p = parse_prime_arg(value, "ambient spec")?;
        let norm = g.sylow_subgroup(p, caps)?.normalizer(caps)?;
        let desc = format!("normalizer of Sylow {p}-subgroup (order {})", norm.order());
        if norm.order() == g.order() {
            (g.clone(), desc)
        } else {
            (norm.group().clone(), desc)
        }
    };
    let h = if Arc::ptr_eq(h.ambient(), &amb) {
        h
    } else {
        h.rebase_to(&amb).map_err(|e| match e {
            GroupError::NotASubgroup | GroupError::NotAMember => CliError::Input(
                "the requested subgroup does not lie in the requested ambient group".into(),
            ),
            other => CliError::from(other),
        })?
    };

    println!("group: {} (order {})", entry.name, g.order());
    println!("ambient: {amb_desc}");
    println!("subgroup: {h_desc}, order {}", h.order());
    let verdict = satisfies_partial_pi(&amb, &h, caps)?;
    println!("satisfies: {}", yes_no(verdict.holds));
    println!("lattice nodes explored: {}", verdict.explored);
    if let Some(series) = &verdict.witness {
        let orders: Vec<String> = series
            .steps()
            .iter()
            .map(|n| n.order().to_string())
            .collect();
        println!("witness series orders: {}", orders.join(" < "));
    }
    if let Some(f) = &verdict.failure {
        let pi: Vec<String> = f.check.factor_pi.iter().map(|p| p.to_string()).collect();
        println!(
            "failing edge: normal pair of orders {} < {}; K order {}, factor primes {{{}}}, normalizer index {}",
            f.below.order(),
            f.above.order(),
            f.check.k_order,
            pi.join(", "),
            f.check.normalizer_index
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_checks(names: Option<Vec<String>>) -> Result<Vec<CheckId>, CliError> {
    match names {
        None => Ok(CheckId::ALL.to_vec()),
        Some(ns) => ns
            .iter()
            .map(|n| n.trim().parse::<CheckId>().map_err(CliError::Input))
            .collect(),
    }
}

fn cmd_verify(
    corpus: &str,
    checks: Option<Vec<String>>,
    primes: Option<Vec<u64>>,
    cap: Option<u64>,
    report: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    if let Some(ps) = &primes {
        for &p in ps {
            if !chieftain_core::primes::is_prime(p) {
                return Err(CliError::Input(format!("--primes: {p} is not a prime")));
            }
        }
    }
    let entries = load_entries(corpus)?;
    let opts = RunOptions {
        checks: parse_checks(checks)?,
        primes,
        caps: caps_from(cap),
        drop: None,
    };
    let res = run_verify(&entries, &opts)?;
    let jsonl = render_report(&res.header, &res.reports, &res.summary);
    let breakdown = res.breakdown();
    match report {
        Some(path) => {
            std::fs::write(&path, jsonl).map_err(|e| {
                CliError::Input(format!("cannot write report `{}`: {e}", path.display()))
            })?;
            println!("report written to {}", path.display());
            print!("{breakdown}");
        }
        None => {
            print!("{jsonl}");
            eprint!("{breakdown}");
        }
    }
    if res.summary.counterexample > 0 {
        Ok(ExitCode::from(1))
    } else if res.summary.skipped > 0 {
        Ok(ExitCode::from(3))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn cmd_search(corpus: &str, check: &str, drop: &str, cap: Option<u64>) -> Result<ExitCode, CliError> {
    let check: CheckId = check.parse().map_err(CliError::Input)?;
    if !matches!(check, CheckId::T3 | CheckId::T4) {
        return Err(CliError::Input(format!(
            "search applies to the p-nilpotency suites T3 and T4, not {check}"
        )));
    }
    let drop: DropHypothesis = drop.parse().map_err(CliError::Input)?;
    let entries = load_entries(corpus)?;
    let res = run_search(&entries, check, drop, caps_from(cap))?;

    println!("search: {check} with hypothesis `{drop}` dropped");
    let flagged: Vec<&CheckReport> = res.run.counterexamples().collect();
    println!("counterexamples found: {}", flagged.len());
    for r in &flagged {
        let mut line = format!("  {}", r.group);
        if let Some(p) = r.params.prime {
            line.push_str(&format!(" p={p}"));
        }
        if let Some(n) = &r.params.normal {
            line.push_str(&format!(" {n}"));
        }
        if let Some(w) = &r.witness {
            line.push_str(&format!(": {w}"));
        }
        println!("{line}");
    }
    for (name, p) in &res.expected {
        let hit = res.missing.iter().all(|(m, q)| (m, q) != (name, p));
        println!(
            "expected instance {name} p={p}: {}",
            if hit { "flagged" } else { "MISSING" }
        );
    }
    if res.found_expected {
        println!("result: weakened statement refuted");
    } else {
        println!("result: NO refutation found; the dropped hypothesis was not exercised");
    }
    if !res.found_expected {
        Ok(ExitCode::from(1))
    } else if res.run.summary.skipped > 0 {
        Ok(ExitCode::from(3))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
