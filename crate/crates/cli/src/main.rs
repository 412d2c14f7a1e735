//! `murai`: command-line front end for Murai spheres.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use murai::analysis::{
    chordality, chromatic_number, cyclic_compare, neighborliness, stackedness, CyclicSpec, NamedTypes,
    MAX_COLORING_VERTICES,
};
use murai::buchstaber::{buchstaber_analysis, DEFAULT_SEARCH_BUDGET};
use murai::census::{run_census, CensusSummary};
use murai::{
    facet_set, format_monomials, parse_monomials, sphere_facts, sr_ideal, CensusOptions, CompositionVector,
    Error, InvariantSelection, Multicomplex, SimplicialComplex, DEFAULT_MAX_GRID,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "murai", version, about = "Murai spheres of c-multicomplexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Composition vector, e.g. "2,1,1".
    #[arg(long = "c")]
    c: String,
    /// Generators of M, e.g. "2 0 0; 0 1 0".
    #[arg(long)]
    gens: String,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

impl Input {
    fn multicomplex(&self) -> Result<Multicomplex, Failure> {
        let c: CompositionVector = self.c.parse()?;
        let gens = parse_monomials(&self.gens)?;
        Ok(Multicomplex::from_generators(&c, &gens)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generators of the Alexander dual M^∨.
    Dual(Input),
    /// Facets of Bier_c(M).
    Facets(Input),
    /// Generators of the polarized Stanley–Reisner ideal.
    SrIdeal(Input),
    /// Structural checks, and with --all every invariant.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 24)]
        max_vertices: usize,
    },
    /// Bounds on the Buchstaber numbers.
    Buchstaber {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        search_budget: u64,
    },
    /// Compares Bier_c(M) with the boundary of the cyclic polytope C(p, q).
    CyclicCompare {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 24)]
        max_vertices: usize,
    },
    /// Every proper c-multicomplex, as JSON Lines, with an iso-class summary.
    Census {
        #[arg(long = "c")]
        c: String,
        /// JSON Lines destination; "-" for stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; 0 picks the number of cores.
        #[arg(long, env = "MURAI_JOBS", default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_GRID)]
        max_grid: u64,
        #[arg(long, default_value_t = 24)]
        max_vertices: usize,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        search_budget: u64,
        /// Comma-separated subset of chordality, stackedness, neighborly,
        /// flag, chromatic, buchstaber; or "all" / "none".
        #[arg(long, default_value = "all")]
        invariants: String,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Core(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_size_cap() => 3,
            Failure::Core(Error::InvariantViolation(_) | Error::Overflow) => 4,
            Failure::Core(_) => 2,
            Failure::Io(_) => 1,
        }
    }
}

fn emit(json: bool, value: Value, text: String) {
    if json {
        println!("{value}");
    } else {
        print!("{text}");
    }
}

fn facet_lines(k: &SimplicialComplex) -> String {
    k.facet_set()
        .iter()
        .map(|f| f.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

fn yes_no(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

fn dual(input: &Input) -> Result<(), Failure> {
    let d = input.multicomplex()?.alexander_dual()?;
    let gens = d.generators();
    emit(input.json, json!({ "c": d.c(), "generators": gens }), format!("{}\n", format_monomials(&gens)));
    Ok(())
}

fn facets(input: &Input) -> Result<(), Failure> {
    let k = facet_set(&input.multicomplex()?)?;
    let value = json!({
        "facets": k.facet_set(),
        "ghosts": k.ghost_vertices(),
        "fVector": k.f_vector(),
    });
    emit(input.json, value, format!("{} facets\n{}", k.facet_count(), facet_lines(&k)));
    Ok(())
}

fn sr(input: &Input) -> Result<(), Failure> {
    let gens = sr_ideal(&input.multicomplex()?)?.gens();
    let text: String = gens
        .iter()
        .map(|g| g.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ") + "\n")
        .collect();
    emit(input.json, json!({ "generators": gens }), format!("{} generators\n{text}", gens.len()));
    Ok(())
}

fn check(input: &Input, all: bool, max_vertices: usize) -> Result<(), Failure> {
    let m = input.multicomplex()?;
    let c = m.c().clone();
    let facts = sphere_facts(&m, max_vertices)?;
    let k = &facts.complex;
    let mut value = json!({
        "fVector": k.f_vector(),
        "euler": facts.euler,
        "pseudomanifold": facts.pseudomanifold,
        "sphere": facts.sphere,
        "routesAgree": facts.routes_agree,
        "canonicalMapVerifies": facts.canonical_map_verifies,
    });
    let sphere = match facts.sphere {
        Some(b) => yes_no(b).to_string(),
        None => "not decided above dimension 2".to_string(),
    };
    let mut text = format!(
        "f-vector: {:?}\neuler: {}\npseudomanifold: {}\nsphere: {sphere}\ntwo constructions agree: {}\ncanonical map verifies: {}\n",
        k.f_vector(),
        facts.euler,
        yes_no(facts.pseudomanifold),
        yes_no(facts.routes_agree),
        yes_no(facts.canonical_map_verifies),
    );
    if all {
        let ch = chordality(k);
        text += &format!("chordal: {}\n", yes_no(ch.chordal));
        if let Some(w) = &ch.witness {
            let cycle: Vec<String> = w.iter().map(|v| v.to_string()).collect();
            text += &format!("chordless cycle: {}\n", cycle.join(" "));
        }
        value["chordality"] = json!(ch);
        if k.dimension() >= 1 {
            let st = stackedness(k)?;
            text += &match st.truncation_cuts {
                Some(cuts) => format!("stacked: yes, k={cuts}\n"),
                None => "stacked: no\n".to_string(),
            };
            value["stackedness"] = json!(st);
        }
        let neighborly = neighborliness(k);
        text += &format!("neighborly: {}\n", yes_no(neighborly));
        value["neighborly"] = json!(neighborly);
        if k.f0() <= MAX_COLORING_VERTICES {
            let flag = k.is_flag()?;
            let chi = chromatic_number(&k.one_skeleton())?;
            text += &format!("flag: {}\nchromatic number: {chi}\n", yes_no(flag));
            value["flag"] = json!(flag);
            value["chromaticNumber"] = json!(chi);
        }
        if let Some(name) = NamedTypes::standard().name_of(k)? {
            text += &format!("type: {name}\n");
            value["name"] = json!(name);
        }
    }
    emit(input.json, value, text);
    if let Some(msg) = facts.failure(&c) {
        return Err(Error::InvariantViolation(msg).into());
    }
    Ok(())
}

fn buchstaber(input: &Input, budget: u64) -> Result<(), Failure> {
    let m = input.multicomplex()?;
    let k = facet_set(&m)?;
    let a = buchstaber_analysis(&k, m.c(), budget)?;
    let r = &a.report;
    let show = |x: Option<usize>| x.map_or("unknown".to_string(), |v| v.to_string());
    let text = format!(
        "f0: {}\nn: {}\ns upper bound: {}\ncanonical lower bound: {}\nchromatic lower bound: {}\ns2: {}\ns: {}\nmod-2 search at rank n: {:?}\ninteger search at rank n: {:?}\n",
        r.f0,
        r.n,
        r.s_upper,
        show(r.canonical_lower_bound),
        show(r.lower_bound_chromatic),
        show(r.s2_exact),
        show(r.s_exact),
        r.s2_search,
        r.integer_search,
    );
    let value = json!({
        "report": r,
        "canonical": a.canonical,
        "mod2": a.mod2,
        "integer": a.integer,
    });
    emit(input.json, value, text);
    Ok(())
}

fn cyclic(input: &Input, p: usize, q: usize, max_vertices: usize) -> Result<(), Failure> {
    let k = facet_set(&input.multicomplex()?)?;
    let spec = CyclicSpec::new(p, q)?;
    let iso = cyclic_compare(&k, spec, max_vertices)?;
    let pairs: Option<Vec<(String, String)>> = iso
        .as_ref()
        .map(|i| i.pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect());
    let text = match &pairs {
        Some(p) => {
            let lines: String = p.iter().map(|(a, b)| format!("{a} -> {b}\n")).collect();
            format!("isomorphic to Δ({}, {})\n{lines}", spec.p, spec.q)
        }
        None => format!("not isomorphic to Δ({}, {})\n", spec.p, spec.q),
    };
    emit(input.json, json!({ "p": p, "q": q, "isomorphic": iso.is_some(), "map": pairs }), text);
    Ok(())
}

fn summary_table(s: &CensusSummary) -> String {
    let mut out = format!("c = ({}): {} records, {} iso classes\n", s.c, s.records, s.classes.len());
    out += "id\tcount\tf-vector\ttype\trepresentative\n";
    for class in &s.classes {
        out += &format!(
            "{}\t{}\t{:?}\t{}\t<{}>\n",
            class.id,
            class.count,
            class.f_vector,
            class.name.as_deref().unwrap_or("-"),
            format_monomials(&class.representative),
        );
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn census(
    c: &str,
    out: Option<&PathBuf>,
    jobs: usize,
    max_grid: u64,
    max_vertices: usize,
    search_budget: u64,
    invariants: &str,
    json: bool,
) -> Result<(), Failure> {
    let c: CompositionVector = c.parse()?;
    let opts = CensusOptions {
        max_grid,
        max_vertices,
        search_budget,
        invariants: InvariantSelection::parse(invariants)?,
    };
    let to_stdout = out.is_some_and(|p| p.as_os_str() == "-");
    let mut writer: Option<Box<dyn Write + Send>> = match out {
        None => None,
        Some(_) if to_stdout => Some(Box::new(BufWriter::new(io::stdout()))),
        Some(p) => Some(Box::new(BufWriter::new(File::create(p)?))),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let mut io_error = None;
    let result = pool.install(|| {
        run_census(&c, &opts, |record| {
            if let Some(w) = writer.as_mut() {
                let line = record.to_json_line()?;
                if let Err(e) = writeln!(w, "{line}") {
                    io_error = Some(e);
                    return Err(Error::InvalidArgument("output write failed".into()));
                }
            }
            Ok(())
        })
    });
    if let Some(e) = io_error {
        return Err(e.into());
    }
    let summary = result?;
    if let Some(w) = writer.as_mut() {
        w.flush()?;
    }
    drop(writer);
    let text = summary_table(&summary);
    let value = serde_json::to_value(&summary).expect("summary serializes");
    if to_stdout {
        // stdout carries the records
        if json {
            eprintln!("{value}");
        } else {
            eprint!("{text}");
        }
    } else {
        emit(json, value, text);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Dual(input) => dual(input),
        Command::Facets(input) => facets(input),
        Command::SrIdeal(input) => sr(input),
        Command::Check { input, all, max_vertices } => check(input, *all, *max_vertices),
        Command::Buchstaber { input, search_budget } => buchstaber(input, *search_budget),
        Command::CyclicCompare {
            input,
            p,
            q,
            max_vertices,
        } => cyclic(input, *p, *q, *max_vertices),
        Command::Census {
            c,
            out,
            jobs,
            max_grid,
            max_vertices,
            search_budget,
            invariants,
            json,
        } => census(c, out.as_ref(), *jobs, *max_grid, *max_vertices, *search_budget, invariants, *json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Core(e) => eprintln!("murai: {e}"),
                Failure::Io(e) => eprintln!("murai: {e}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
