use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use qcolor_core::branching::{leaf_coverage_check, BranchError, CostLedger, COVERAGE_INDEX_LIMIT};
use qcolor_core::chromatic::{chromatic_number, chromatic_number_with_table, lawler_dp, ChiTable, ChromaticError};
use qcolor_core::exponents::{
    ceil_decimals, emit_table, f3_star, ExponentError, F3Mode, KPrime, MaximizerConfig, Method,
};
use qcolor_core::generators::{clique_union, complete, cycle, gnp, path, petersen, GeneratorError, Probability};
use qcolor_core::kcolor::{col, col_bounded, col_kprime, reduce1, reduce2, BoundedVerdict, KColorError};
use qcolor_core::mis::{enumerate_mis_all, enumerate_mis_t, AllMis, MisError, MisNode, SizedMis};
use qcolor_core::oracle::{oracle_chromatic, oracle_k_colorable, ORACLE_MAX_VERTICES};
use qcolor_core::{Graph, VertexSet};

use crate::args::*;
use crate::error::CliError;
use crate::report::{Input, LedgerReport, RunReport, RunResult, TableRow};
use crate::{chitable, dimacs};

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path.display().to_string(), e))
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    dimacs::parse(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn file_input(path: &Path) -> Input {
    Input::File { path: path.display().to_string() }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn chromatic_error(e: ChromaticError) -> CliError {
    match e {
        ChromaticError::TooLarge { .. } => CliError::TooLarge(e.to_string()),
        ChromaticError::TableSize { .. } | ChromaticError::TableEntry(_) => CliError::Parse(e.to_string()),
        _ => CliError::Internal(e.to_string()),
    }
}

fn branch_error(e: BranchError) -> CliError {
    match e {
        BranchError::TooManyIndices { .. } => CliError::TooLarge(e.to_string()),
        _ => CliError::Internal(e.to_string()),
    }
}

fn mis_error(e: MisError) -> CliError {
    match e {
        MisError::TargetOutOfRange { .. } => CliError::Parse(e.to_string()),
        MisError::Branch(b) => branch_error(b),
        _ => CliError::Internal(e.to_string()),
    }
}

fn kcolor_error(e: KColorError) -> CliError {
    match e {
        KColorError::Branch(b) => branch_error(b),
        _ => CliError::Parse(e.to_string()),
    }
}

fn generator_error(e: GeneratorError) -> CliError {
    match e {
        GeneratorError::TooManyVertices(_) => CliError::TooLarge(e.to_string()),
        _ => CliError::Parse(e.to_string()),
    }
}

fn ledger_line(l: &LedgerReport) -> String {
    format!("leaves {} nodes {} depth {} grover_log2 {:.6}", l.leaves, l.nodes, l.depth, l.grover_log2)
}

fn render(report: &RunReport, json: bool, text: impl FnOnce(&RunReport) -> String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(report).expect("report serializes");
        s.push('\n');
        s
    } else {
        text(report)
    }
}

fn f3_mode(f: F3Arg) -> F3Mode {
    match f {
        F3Arg::Be => F3Mode::BeigelEppstein,
        F3Arg::Simple => F3Mode::Simple,
    }
}

fn chromatic_value(g: &Graph, algo: ChrAlgo, table: Option<&ChiTable>) -> Result<(u32, Option<CostLedger>), CliError> {
    match (algo, table) {
        (ChrAlgo::Lawler, _) => Ok((lawler_dp(g).map_err(chromatic_error)?, None)),
        (ChrAlgo::Chr, None) => chromatic_number(g).map(|(c, l)| (c, Some(l))).map_err(chromatic_error),
        (ChrAlgo::Chr, Some(t)) => {
            chromatic_number_with_table(g, t).map(|(c, l)| (c, Some(l))).map_err(chromatic_error)
        }
    }
}

pub fn chromatic(a: &ChromaticArgs, echo: &str) -> Result<String, CliError> {
    let g = load_graph(&a.path)?;
    let start = Instant::now();
    let table = match (&a.load_table, &a.dump_table) {
        (Some(p), _) => Some(chitable::parse(&read(p)?).map_err(|e| CliError::Parse(format!("{}: {e}", p.display())))?),
        (None, Some(p)) => {
            let (t, _) = ChiTable::build(&g).map_err(chromatic_error)?;
            write_file(p, &chitable::write(&t))?;
            Some(t)
        }
        (None, None) => None,
    };
    let (chi, ledger) = chromatic_value(&g, a.algo, table.as_ref())?;
    let report = RunReport {
        command: echo.to_string(),
        input: file_input(&a.path),
        result: RunResult::Chromatic { algo: algo_name(a.algo).into(), chi },
        ledger: ledger.as_ref().map(LedgerReport::from),
        wall_time_ms: elapsed_ms(start),
    };
    Ok(render(&report, a.json, |r| {
        let mut s = format!("chi {chi}\n");
        if let Some(l) = &r.ledger {
            s += &ledger_line(l);
            s.push('\n');
        }
        s
    }))
}

fn algo_name(a: ChrAlgo) -> &'static str {
    match a {
        ChrAlgo::Lawler => "lawler",
        ChrAlgo::Chr => "chr",
    }
}

fn verdict_name(v: BoundedVerdict) -> &'static str {
    match v {
        BoundedVerdict::True => "true",
        BoundedVerdict::False => "false",
        BoundedVerdict::UndeterminedInput => "undetermined-input-regime",
    }
}

pub fn kcolor(a: &KcolorArgs, echo: &str) -> Result<String, CliError> {
    let g = load_graph(&a.path)?;
    let f3 = f3_mode(a.f3);
    if a.bound.is_some() && a.algo != KAlgo::Auto {
        return Err(CliError::Parse("--bound uses its own reductions; drop --algo".into()));
    }
    if a.kprime.is_some() && a.algo != KAlgo::R2 {
        return Err(CliError::Parse("--kprime only applies to --algo r2".into()));
    }
    let start = Instant::now();
    let (answer, ledger, algo) = match (a.algo, a.bound) {
        (KAlgo::Auto, Some(u)) => {
            let (v, l) = col_bounded(&g, a.k, u, f3).map_err(kcolor_error)?;
            (verdict_name(v), l, "bounded".to_string())
        }
        (KAlgo::Auto, None) => {
            let (b, l) = col(&g, a.k, f3).map_err(kcolor_error)?;
            (if b { "true" } else { "false" }, l, "auto".to_string())
        }
        (KAlgo::R1, _) => {
            let (b, l) = reduce1(&g, a.k, f3).map_err(kcolor_error)?;
            (if b { "true" } else { "false" }, l, "r1".to_string())
        }
        (KAlgo::R2, _) => {
            let kp = a.kprime.unwrap_or(match col_kprime(a.k) {
                KPrime::Split(kp) => kp,
                KPrime::Reduction1 => a.k / 2,
            });
            let (b, l) = reduce2(&g, a.k, kp, f3).map_err(kcolor_error)?;
            (if b { "true" } else { "false" }, l, format!("r2:{kp}"))
        }
    };
    let report = RunReport {
        command: echo.to_string(),
        input: file_input(&a.path),
        result: RunResult::Kcolor { algo, k: a.k, bound: a.bound, answer: answer.to_string() },
        ledger: Some(LedgerReport::from(&ledger)),
        wall_time_ms: elapsed_ms(start),
    };
    Ok(render(&report, a.json, |r| {
        let mut s = format!("{answer}\n");
        if answer == "undetermined-input-regime" {
            let n = g.n() as u32;
            let _ = writeln!(
                s,
                "note: bound {} < ceil({n}/{}) admits no partition; nothing was searched",
                a.bound.unwrap_or(0),
                a.k
            );
        }
        s + &ledger_line(r.ledger.as_ref().expect("ledger set")) + "\n"
    }))
}

fn show_set(s: VertexSet) -> String {
    let items: Vec<String> = s.iter().map(|v| (v + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn mis(a: &MisArgs, echo: &str) -> Result<String, CliError> {
    let g = load_graph(&a.path)?;
    let start = Instant::now();
    let found = match a.size {
        Some(t) => enumerate_mis_t(&g, t as usize),
        None => enumerate_mis_all(&g),
    }
    .map_err(mis_error)?;
    let coverage = if a.check_index {
        let report = match a.size {
            Some(t) => {
                leaf_coverage_check(&SizedMis { graph: &g }, &MisNode::sized(g.vertices(), t), COVERAGE_INDEX_LIMIT)
                    .map(|r| (r.all_covered(), r.capacity, r.traversal_leaves))
            }
            None => leaf_coverage_check(&AllMis { graph: &g }, &MisNode::all(g.vertices()), COVERAGE_INDEX_LIMIT)
                .map(|r| (r.all_covered(), r.capacity, r.traversal_leaves)),
        }
        .map_err(branch_error)?;
        match report {
            (true, capacity, leaves) => Some(format!("all leaves covered ({leaves} leaves, {capacity} indices)")),
            (false, ..) => return Err(CliError::Internal("some leaves are not reachable by any index".into())),
        }
    } else {
        None
    };
    let sets = (!a.count_only).then(|| found.sets.iter().map(|s| s.iter().map(|v| v + 1).collect()).collect());
    let report = RunReport {
        command: echo.to_string(),
        input: file_input(&a.path),
        result: RunResult::Mis { size: a.size, count: found.sets.len(), sets, coverage: coverage.clone() },
        ledger: Some(LedgerReport::from(&found.ledger)),
        wall_time_ms: elapsed_ms(start),
    };
    Ok(render(&report, a.json, |r| {
        let mut s = format!("count {}\n", found.sets.len());
        if !a.count_only {
            for &set in &found.sets {
                s += &show_set(set);
                s.push('\n');
            }
        }
        if let Some(c) = coverage {
            s += &c;
            s.push('\n');
        }
        s + &ledger_line(r.ledger.as_ref().expect("ledger set")) + "\n"
    }))
}

fn exponent_error(e: ExponentError) -> CliError {
    CliError::Parse(e.to_string())
}

pub fn exponents(a: &ExponentsArgs, echo: &str) -> Result<String, CliError> {
    let method = a.method.unwrap_or(if a.table == 2 { MethodArg::Stationary } else { MethodArg::Golden });
    let cfg = match method {
        MethodArg::Grid => MaximizerConfig::grid(a.grid_bits).map_err(exponent_error)?,
        MethodArg::Golden => MaximizerConfig::golden(),
        MethodArg::Stationary if a.table == 2 => MaximizerConfig::stationary(),
        MethodArg::Stationary => return Err(CliError::Parse("the stationary method only applies to table 2".into())),
    };
    let start = Instant::now();
    let rows = emit_table(a.table, f3_star(f3_mode(a.f3)), &cfg).map_err(exponent_error)?;
    let method_name = match cfg.method() {
        Method::Grid => format!("grid:{}", cfg.grid_bits()),
        Method::Golden => "golden".into(),
        Method::Stationary => "stationary".into(),
    };
    let mut rows: Vec<TableRow> = rows.iter().map(TableRow::from).collect();
    if a.table == 1 {
        for r in &mut rows {
            r.value = ceil_decimals(r.value, 4);
            r.base = ceil_decimals(r.base, 4);
            r.kprime = None;
        }
    }
    if a.format == Format::Json {
        let report = RunReport {
            command: echo.to_string(),
            input: Input::None,
            result: RunResult::Table {
                table: a.table,
                method: method_name,
                f3: format!("{:?}", a.f3).to_lowercase(),
                rows,
            },
            ledger: None,
            wall_time_ms: elapsed_ms(start),
        };
        return Ok(render(&report, true, |_| String::new()));
    }
    let name = if a.table == 2 { "f_star" } else { "d_star" };
    let mut s = String::new();
    if a.table == 1 {
        let _ = writeln!(s, "k,{name},base");
        for r in &rows {
            let _ = writeln!(s, "{},{:.4},{:.4}", r.k, r.value, r.base);
        }
    } else {
        let _ = writeln!(s, "k,{name},base,kprime");
        for r in &rows {
            let kp = r.kprime.map(|k| k.to_string()).unwrap_or_default();
            let _ = writeln!(s, "{},{:.10},{:.10},{kp}", r.k, r.value, r.base);
        }
    }
    Ok(s)
}

/// Parses `0.5`, `.25`, `1` or `1/3` exactly.
pub fn parse_probability(s: &str) -> Result<Probability, CliError> {
    let bad = || CliError::Parse(format!("bad probability `{s}`"));
    let (num, den) = if let Some((a, b)) = s.split_once('/') {
        (a.parse::<u64>().map_err(|_| bad())?, b.parse::<u64>().map_err(|_| bad())?)
    } else {
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18 || !(int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())) || s == "." {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        (int.checked_mul(den).and_then(|x| x.checked_add(frac)).ok_or_else(bad)?, den)
    };
    Probability::new(num, den).map_err(generator_error)
}

fn check_n(n: usize) -> Result<(), CliError> {
    if n > 64 {
        Err(CliError::TooLarge(format!("{n} vertices requested, at most 64 are supported")))
    } else {
        Ok(())
    }
}

pub fn generate(f: &Family, seed: u64) -> Result<Graph, CliError> {
    Ok(match f {
        Family::Cycle { n } => {
            check_n(*n)?;
            cycle(*n)
        }
        Family::Complete { n } => {
            check_n(*n)?;
            complete(*n)
        }
        Family::Path { n } => {
            check_n(*n)?;
            path(*n)
        }
        Family::Petersen => petersen(),
        Family::CliqueUnion { sizes } => {
            check_n(sizes.iter().sum())?;
            clique_union(sizes).map_err(generator_error)?
        }
        Family::Gnp { n, p } => {
            check_n(*n)?;
            gnp(*n, parse_probability(p)?, seed).map_err(generator_error)?
        }
    })
}

pub fn gen(a: &GenArgs) -> Result<String, CliError> {
    let text = dimacs::write(&generate(&a.family, a.seed)?);
    match &a.o {
        Some(p) => {
            write_file(p, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

/// A parsed corpus: a label and one `(seed, graph)` per member.
pub struct Corpus {
    pub label: String,
    pub members: Vec<(Option<u64>, Graph)>,
}

fn parse_count(s: &str) -> Result<usize, CliError> {
    s.parse().map_err(|_| CliError::Parse(format!("bad vertex count `{s}`")))
}

pub fn parse_corpus(spec: &str) -> Result<Corpus, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || CliError::Parse(format!("bad corpus `{spec}`"));
    let one = |f: Family| -> Result<Corpus, CliError> {
        Ok(Corpus { label: spec.to_string(), members: vec![(None, generate(&f, 0)?)] })
    };
    match parts.as_slice() {
        ["gnp", n, p, seeds] => {
            let n = parse_count(n)?;
            let (lo, hi) = match seeds.split_once("..") {
                Some((a, b)) => (a.parse::<u64>().map_err(|_| bad())?, b.parse::<u64>().map_err(|_| bad())?),
                None => {
                    let s = seeds.parse::<u64>().map_err(|_| bad())?;
                    (s, s)
                }
            };
            if lo > hi {
                return Err(bad());
            }
            let family = Family::Gnp { n, p: p.to_string() };
            let members = (lo..=hi).map(|s| Ok((Some(s), generate(&family, s)?))).collect::<Result<_, CliError>>()?;
            Ok(Corpus { label: format!("gnp:{n}:{p}"), members })
        }
        ["cycle", n] => one(Family::Cycle { n: parse_count(n)? }),
        ["complete", n] => one(Family::Complete { n: parse_count(n)? }),
        ["path", n] => one(Family::Path { n: parse_count(n)? }),
        ["petersen"] => one(Family::Petersen),
        ["clique-union", sizes] => {
            let sizes = sizes.split(',').map(parse_count).collect::<Result<_, _>>()?;
            one(Family::CliqueUnion { sizes })
        }
        _ => Err(bad()),
    }
}

fn mismatch(label: &str, seed: Option<u64>, what: String) -> CliError {
    CliError::Internal(format!("{label} seed {seed:?}: {what}"))
}

pub fn bench(a: &BenchArgs, echo: &str) -> Result<String, CliError> {
    let corpus = parse_corpus(&a.corpus)?;
    if (a.algo == BenchAlgo::Col) != a.k.is_some() {
        return Err(CliError::Parse("-k is required with --algo col and only allowed there".into()));
    }
    let mut reports = Vec::new();
    for (seed, g) in &corpus.members {
        let start = Instant::now();
        let (result, ledger) = match a.algo {
            BenchAlgo::Chr | BenchAlgo::Lawler => {
                let algo = if a.algo == BenchAlgo::Chr { ChrAlgo::Chr } else { ChrAlgo::Lawler };
                let (chi, ledger) = chromatic_value(g, algo, None)?;
                (RunResult::Chromatic { algo: algo_name(algo).into(), chi }, ledger)
            }
            BenchAlgo::Mis => {
                let found = enumerate_mis_all(g).map_err(mis_error)?;
                (RunResult::Mis { size: None, count: found.sets.len(), sets: None, coverage: None }, Some(found.ledger))
            }
            BenchAlgo::Col => {
                let k = a.k.expect("checked above");
                let (b, ledger) = col(g, k, F3Mode::BeigelEppstein).map_err(kcolor_error)?;
                let answer = if b { "true" } else { "false" };
                (RunResult::Kcolor { algo: "auto".into(), k, bound: None, answer: answer.into() }, Some(ledger))
            }
        };
        let wall_time_ms = elapsed_ms(start);
        if a.verify {
            verify(g, &result).map_err(|what| mismatch(&corpus.label, *seed, what))?;
        }
        reports.push(RunReport {
            command: echo.to_string(),
            input: Input::Generator { spec: corpus.label.clone(), seed: *seed },
            result,
            ledger: ledger.as_ref().map(LedgerReport::from),
            wall_time_ms,
        });
    }
    if a.json {
        let mut s = serde_json::to_string_pretty(&reports).expect("reports serialize");
        s.push('\n');
        return Ok(s);
    }
    let mut s = String::new();
    for r in &reports {
        let seed = match &r.input {
            Input::Generator { seed: Some(seed), .. } => format!(" seed {seed}"),
            _ => String::new(),
        };
        let result = match &r.result {
            RunResult::Chromatic { chi, .. } => format!("chi {chi}"),
            RunResult::Mis { count, .. } => format!("count {count}"),
            RunResult::Kcolor { answer, .. } => answer.clone(),
            RunResult::Table { .. } => unreachable!("bench produces no tables"),
        };
        let ledger = r.ledger.as_ref().map(|l| format!(" {}", ledger_line(l))).unwrap_or_default();
        let _ = writeln!(s, "{}{seed} {result}{ledger}", corpus.label);
    }
    if a.verify {
        let _ = writeln!(s, "verified {} instances", reports.len());
    }
    Ok(s)
}

fn verify(g: &Graph, result: &RunResult) -> Result<(), String> {
    match result {
        RunResult::Chromatic { algo, chi } => {
            let want = if algo == "chr" || g.n() > ORACLE_MAX_VERTICES {
                lawler_dp(g).map_err(|e| e.to_string())?
            } else {
                oracle_chromatic(g).map_err(|e| e.to_string())?
            };
            (want == *chi).then_some(()).ok_or(format!("chi {chi}, expected {want}"))
        }
        RunResult::Mis { count, .. } => {
            let want = qcolor_core::oracle::oracle_mis_list(g).map_err(|e| e.to_string())?.len();
            (want == *count).then_some(()).ok_or(format!("{count} MISs, expected {want}"))
        }
        RunResult::Kcolor { k, answer, .. } => {
            let want = oracle_k_colorable(g, *k as usize).map_err(|e| e.to_string())?;
            (answer == if want { "true" } else { "false" }).then_some(()).ok_or(format!("answer {answer}"))
        }
        RunResult::Table { .. } => Ok(()),
    }
}
