//! Command-line front end.
//!
//! Exit codes: 0 ok, 1 verification failed, 2 bad input, 3 inconsistent
//! on-disk state (for example a census directory written with another
//! configuration).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::boolean_core::{enumerate_ordered_pairs, mbf_positive, MbfFunction, OrderedTuple};
use crate::interaction::ClassTag;
use crate::ksystem::{build_stg, phi_k, validate_k, KCollection, WeightedRegulatoryNetwork};
use crate::paramgraph::{annotate_realizability, build_parameter_graph};
use crate::realizability::{
    check_class, parse_witness_file, replay_certificate, verify_witness, write_witness_file, Certificate,
    RealizabilityError, Verdict,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_STATE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "kswitch", about = "Monotone Boolean functions, K-systems and algebraic realizability")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List positive monotone functions (or ordered pairs) on N inputs.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pairs: bool,
    },
    /// Classify every ordered pair on N inputs for each class.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "sigma,pisigma,sigmapisigma,k")]
        classes: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Decide one pair (f, g) with f below g.
    Realize {
        #[arg(long, num_args = 2, value_names = ["F", "G"])]
        pair: Vec<String>,
        #[arg(long)]
        class: String,
        /// Inputs of bare hex pairs; not needed for "mbf:n:hex".
        #[arg(long)]
        n: Option<usize>,
        /// Witness or certificate output file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a witness file, or replay a certificate, against a pair.
    Verify {
        #[arg(long, conflicts_with = "certificate")]
        witness: Option<PathBuf>,
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long, num_args = 2, value_names = ["F", "G"])]
        pair: Option<Vec<String>>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// State transition graph of a network and K collection, as DOT.
    Stg {
        #[arg(long)]
        net: PathBuf,
        #[arg(long)]
        k: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parameter graph of a network: DOT, JSON and CSV files in DIR.
    Pg {
        #[arg(long)]
        net: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated classes to annotate vertices with.
        #[arg(long)]
        annotate: Option<String>,
    },
}

/// Error carrying an exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn input(msg: impl ToString) -> Failure {
    Failure { code: EXIT_INPUT, message: msg.to_string() }
}

fn state(msg: impl ToString) -> Failure {
    Failure { code: EXIT_STATE, message: msg.to_string() }
}

type CliResult = Result<i32, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Enumerate { n, pairs } => enumerate(n, pairs, out),
        Command::Census { n, classes, out: dir, jobs } => census(n, &parse_classes(&classes)?, &dir, jobs, out),
        Command::Realize { pair, class, n, out: file } => realize(&pair, &class, n, file.as_deref(), out),
        Command::Verify { witness, certificate, pair, n } => {
            verify(witness.as_deref(), certificate.as_deref(), pair.as_deref(), n, out)
        }
        Command::Stg { net, k, out: file } => stg(&net, &k, file.as_deref(), out),
        Command::Pg { net, out: dir, annotate } => pg(&net, &dir, annotate.as_deref(), out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(state)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(state)?;
    }
    // write then rename so an interrupted run never leaves a partial file
    let tmp = path.with_extension("partial");
    fs::write(&tmp, text).map_err(state)?;
    fs::rename(&tmp, path).map_err(state)
}

fn parse_classes(text: &str) -> Result<Vec<ClassTag>, Failure> {
    text.split(',')
        .map(|c| ClassTag::parse(c.trim()).ok_or_else(|| input(format!("unknown class {c:?}"))))
        .collect()
}

fn parse_function(text: &str, n: Option<usize>) -> Result<MbfFunction, Failure> {
    if text.starts_with("mbf:") {
        return text.parse().map_err(input);
    }
    let n = n.ok_or_else(|| input(format!("{text:?} needs --n or the mbf:n:hex form")))?;
    MbfFunction::from_hex(n, text).map_err(input)
}

fn parse_pair(pair: &[String], n: Option<usize>) -> Result<OrderedTuple, Failure> {
    let f = parse_function(&pair[0], n)?;
    let g = parse_function(&pair[1], n)?;
    OrderedTuple::pair(f, g).map_err(input)
}

fn enumerate(n: usize, pairs: bool, out: &mut dyn Write) -> CliResult {
    let mut s = String::new();
    if pairs {
        let all = enumerate_ordered_pairs(n).map_err(input)?;
        s.push_str(&format!("{}\n", all.len()));
        for (f, g) in all {
            s.push_str(&format!("{f} {g}\n"));
        }
    } else {
        if n > 5 {
            return Err(input(format!("enumeration is limited to n <= 5, got {n}")));
        }
        let all = mbf_positive(n);
        s.push_str(&format!("{}\n", all.len()));
        for f in all {
            s.push_str(&format!("{f}\n"));
        }
    }
    emit(out, &s)?;
    Ok(EXIT_OK)
}

fn describe(verdict: &Verdict) -> String {
    match verdict {
        Verdict::Realizable(w) => format!("Realizable\n{}", write_witness_file(w, None)),
        Verdict::RealizableK(k) => {
            let table: Vec<String> = k.table.iter().map(crate::rational::format_q).collect();
            let th: Vec<String> = k.thresholds.iter().map(crate::rational::format_q).collect();
            format!("Realizable\ntable = {}\nthresholds = {}\n", table.join(","), th.join(","))
        }
        Verdict::NotRealizable(c) => {
            let mut s = format!("NotRealizable\ncertificate = {}\n", c.kind());
            if let Certificate::Exhaustion(e) = c {
                for p in &e.parts {
                    s.push_str(&format!("  {} : {}\n", p.structure, p.certificate.kind()));
                }
            }
            s
        }
        Verdict::Unknown(d) => format!("Unknown\nunresolved = {}\n", d.unresolved.join(" ; ")),
    }
}

fn artifact(verdict: &Verdict, tuple: &OrderedTuple) -> Option<String> {
    match verdict {
        Verdict::Realizable(w) => Some(write_witness_file(w, Some(tuple))),
        Verdict::RealizableK(k) => Some(serde_json::to_string_pretty(k).expect("serializable")),
        Verdict::NotRealizable(c) => Some(serde_json::to_string_pretty(c).expect("serializable")),
        Verdict::Unknown(d) => Some(serde_json::to_string_pretty(d).expect("serializable")),
    }
}

fn classify(tuple: &OrderedTuple, class: ClassTag) -> Result<Verdict, Failure> {
    check_class(tuple, class).map_err(|e| match e {
        RealizabilityError::Guard(_) => input(e),
        other => state(other),
    })
}

fn realize(pair: &[String], class: &str, n: Option<usize>, file: Option<&Path>, out: &mut dyn Write) -> CliResult {
    let tuple = parse_pair(pair, n)?;
    let class = ClassTag::parse(class).ok_or_else(|| input(format!("unknown class {class:?}")))?;
    let verdict = classify(&tuple, class)?;
    emit(out, &describe(&verdict))?;
    if let (Some(path), Some(text)) = (file, artifact(&verdict, &tuple)) {
        write_file(path, &text)?;
    }
    Ok(EXIT_OK)
}

fn verify(
    witness: Option<&Path>,
    certificate: Option<&Path>,
    pair: Option<&[String]>,
    n: Option<usize>,
    out: &mut dyn Write,
) -> CliResult {
    let given = pair.map(|p| parse_pair(p, n)).transpose()?;
    if let Some(path) = certificate {
        let c: Certificate = serde_json::from_str(&read(path)?).map_err(input)?;
        let tuple = given.ok_or_else(|| input("--pair is required with --certificate"))?;
        let ok = replay_certificate(&tuple, &c);
        emit(out, if ok { "valid\n" } else { "invalid\n" })?;
        return Ok(if ok { EXIT_OK } else { EXIT_VERIFY });
    }
    let path = witness.ok_or_else(|| input("one of --witness or --certificate is required"))?;
    let file = parse_witness_file(&read(path)?).map_err(input)?;
    let tuple = given.or(file.tuple).ok_or_else(|| input("no pair given and none in the witness file"))?;
    match verify_witness(&tuple, &file.witness) {
        Ok(true) => {
            emit(out, "valid\n")?;
            Ok(EXIT_OK)
        }
        Ok(false) => {
            emit(out, "invalid\n")?;
            Ok(EXIT_VERIFY)
        }
        Err(RealizabilityError::InvalidWitness(m)) => {
            emit(out, &format!("invalid: {m}\n"))?;
            Ok(EXIT_VERIFY)
        }
        Err(e) => Err(input(e)),
    }
}

fn load_net(path: &Path) -> Result<WeightedRegulatoryNetwork, Failure> {
    WeightedRegulatoryNetwork::from_json(&read(path)?).map_err(input)
}

fn stg(net: &Path, k: &Path, file: Option<&Path>, out: &mut dyn Write) -> CliResult {
    let net = load_net(net)?;
    let k = KCollection::from_json(&net, &read(k)?).map_err(input)?;
    let violations = validate_k(&net, &k).map_err(input)?;
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(|v| v.describe(&net)).collect();
        return Err(input(format!("K is not monotone:\n  {}", list.join("\n  "))));
    }
    let graph = build_stg(&phi_k(&net, &k).map_err(input)?);
    let dot = graph.to_dot();
    match file {
        Some(path) => {
            write_file(path, &dot)?;
            emit(out, &format!("{} states, {} edges\n", graph.space.size(), graph.edges.len()))?;
        }
        None => emit(out, &dot)?,
    }
    Ok(EXIT_OK)
}

fn pg(net: &Path, dir: &Path, annotate: Option<&str>, out: &mut dyn Write) -> CliResult {
    let net = load_net(net)?;
    let graph = build_parameter_graph(&net).map_err(input)?;
    let classes = annotate.map(parse_classes).transpose()?.unwrap_or_default();
    let annotations = classes
        .iter()
        .map(|c| annotate_realizability(&graph, *c).map_err(input))
        .collect::<Result<Vec<_>, _>>()?;
    write_file(&dir.join("pg.dot"), &graph.to_dot())?;
    write_file(&dir.join("pg.json"), &graph.to_json())?;
    write_file(&dir.join("pg.csv"), &graph.to_csv(&annotations))?;
    let mut s = format!("{} vertices\n{} edges\n", graph.vertex_count(), graph.edges().len());
    for a in &annotations {
        let mut counts = [0usize; 3];
        for v in 0..graph.vertex_count() {
            match a.product_label(&graph.coords(v)) {
                "Realizable" => counts[0] += 1,
                "NotRealizable" => counts[1] += 1,
                _ => counts[2] += 1,
            }
        }
        s.push_str(&format!("{} {}/{}/{}\n", a.class.name(), counts[0], counts[1], counts[2]));
    }
    emit(out, &s)?;
    Ok(EXIT_OK)
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
struct CensusConfig {
    n: usize,
    classes: Vec<String>,
}

/// One census row, stored per (class, pair) so runs can resume.
struct PairResult {
    verdict: String,
    witness: String,
    certificate: String,
}

fn result_path(dir: &Path, class: ClassTag, index: usize) -> PathBuf {
    dir.join("results").join(class.name()).join(format!("{index:06}.txt"))
}

fn solve_pair(dir: &Path, class: ClassTag, index: usize, tuple: &OrderedTuple) -> Result<(), Failure> {
    let verdict = classify(tuple, class)?;
    let (witness, certificate) = match &verdict {
        Verdict::Realizable(_) | Verdict::RealizableK(_) => {
            (format!("witnesses/{}/{index:06}.txt", class.name()), String::new())
        }
        _ => (String::new(), format!("certificates/{}/{index:06}.json", class.name())),
    };
    let text = artifact(&verdict, tuple).expect("every verdict has an artifact");
    let rel = if witness.is_empty() { &certificate } else { &witness };
    write_file(&dir.join(rel), &text)?;
    write_file(&result_path(dir, class, index), &format!("{}\n{witness}\n{certificate}\n", verdict.label()))
}

fn load_result(dir: &Path, class: ClassTag, index: usize) -> Result<Option<PairResult>, Failure> {
    let path = result_path(dir, class, index);
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&path).map_err(state)?;
    let mut lines = text.lines().map(str::to_string);
    let mut next = || lines.next().ok_or_else(|| state(format!("truncated result {}", path.display())));
    Ok(Some(PairResult { verdict: next()?, witness: next()?, certificate: next()? }))
}

fn census(n: usize, classes: &[ClassTag], dir: &Path, jobs: usize, out: &mut dyn Write) -> CliResult {
    if !(3..=4).contains(&n) {
        return Err(input(format!("census supports n = 3 or 4, got {n}")));
    }
    let config = CensusConfig { n, classes: classes.iter().map(|c| c.name().to_string()).collect() };
    let config_path = dir.join("census.json");
    if config_path.exists() {
        let prior: CensusConfig = serde_json::from_str(&read(&config_path)?).map_err(state)?;
        if prior != config {
            return Err(state(format!("{} was written for another configuration", dir.display())));
        }
    } else {
        write_file(&config_path, &serde_json::to_string_pretty(&config).expect("serializable"))?;
    }
    let pairs = enumerate_ordered_pairs(n).map_err(input)?;
    let tuples: Vec<OrderedTuple> =
        pairs.iter().map(|(f, g)| OrderedTuple::pair(*f, *g).expect("enumerated pairs are ordered")).collect();
    let jobs = jobs.max(1);
    let failures: Vec<Failure> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|worker| {
                let tuples = &tuples;
                scope.spawn(move || -> Result<(), Failure> {
                    for index in (worker..tuples.len()).step_by(jobs) {
                        for &class in classes {
                            if !result_path(dir, class, index).exists() {
                                solve_pair(dir, class, index, &tuples[index])?;
                            }
                        }
                    }
                    Ok(())
                })
            })
            .collect();
        handles.into_iter().filter_map(|h| h.join().expect("worker panicked").err()).collect()
    });
    if let Some(f) = failures.into_iter().next() {
        return Err(f);
    }
    let mut csv = String::from("pair_index,f_hex,g_hex,class,verdict,witness_path,certificate_path\n");
    let mut counts = vec![[0usize; 3]; classes.len()];
    for (index, (f, g)) in pairs.iter().enumerate() {
        for (ci, &class) in classes.iter().enumerate() {
            let r = load_result(dir, class, index)?.ok_or_else(|| state(format!("missing result for pair {index}")))?;
            let slot = match r.verdict.as_str() {
                "Realizable" => 0,
                "NotRealizable" => 1,
                _ => 2,
            };
            counts[ci][slot] += 1;
            csv.push_str(&format!(
                "{index},{},{},{},{},{},{}\n",
                f.to_hex(),
                g.to_hex(),
                class.name(),
                r.verdict,
                r.witness,
                r.certificate
            ));
        }
    }
    write_file(&dir.join("census.csv"), &csv)?;
    let mut summary = format!("n = {n}, {} pairs\nclass Realizable/NotRealizable/Unknown\n", pairs.len());
    for (ci, class) in classes.iter().enumerate() {
        let [r, nr, u] = counts[ci];
        summary.push_str(&format!("{} {r}/{nr}/{u}\n", class.name()));
    }
    write_file(&dir.join("summary.txt"), &summary)?;
    emit(out, &summary)?;
    Ok(EXIT_OK)
}
