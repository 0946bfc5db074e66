use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::Args;

use pathhom::digraph::{loop_transform, parse_dot_with, parse_edge_list_with, LoopPolicy};
use pathhom::field::{Field, PrimeField, DEFAULT_PRIME};
use pathhom::homology::{h1_generators_with, HomologyOptions, DEFAULT_PMAX};
use pathhom::metrics::compare_with;
use pathhom::path_complex::{PathComplex, DEFAULT_PATH_CAP};
use pathhom::{Digraph, Rationals};

use crate::error::CliError;
use crate::rows::{arc_labels, AnalyzeReport};
use crate::{FieldMode, InputFormat};

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Input file, or `-` for stdin.
    input: PathBuf,
    #[arg(long, value_enum, default_value = "edge-list")]
    format: InputFormat,
    /// Highest homology dimension to report.
    #[arg(long = "pmax", default_value_t = DEFAULT_PMAX)]
    p_max: usize,
    /// Also report cycles representing a basis of reduced H_1.
    #[arg(long)]
    generators: bool,
    #[arg(long)]
    json: bool,
    #[arg(long, value_enum, default_value = "rational")]
    field: FieldMode,
    /// Modulus for `--field prime`.
    #[arg(long)]
    prime: Option<u64>,
    /// Replace each self-loop by a 2-cycle through a fresh vertex.
    #[arg(long)]
    allow_loops: bool,
    /// Largest number of allowed paths built in any one dimension.
    #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
    path_cap: usize,
    /// Write boundary matrices as `row col value` triplets into this directory.
    #[arg(long)]
    dump_dir: Option<PathBuf>,
}

pub fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::io("stdin", e))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))
    }
}

pub fn parse_digraph(
    text: &str,
    format: InputFormat,
    allow_loops: bool,
) -> Result<Digraph, CliError> {
    let policy = if allow_loops {
        LoopPolicy::Record
    } else {
        LoopPolicy::Reject
    };
    let parsed = match format {
        InputFormat::EdgeList => parse_edge_list_with(text, policy),
        InputFormat::Dot => parse_dot_with(text, policy),
    }
    .map_err(CliError::parse)?;
    if parsed.collapsed_duplicates > 0 {
        eprintln!(
            "pathhom: collapsed {} duplicate arcs",
            parsed.collapsed_duplicates
        );
    }
    let d = loop_transform(&parsed);
    if d.is_empty() {
        return Err(CliError::parse("input contains no vertices"));
    }
    Ok(d)
}

pub fn run(args: AnalyzeArgs) -> Result<(), CliError> {
    if args.prime.is_some() && args.field != FieldMode::Prime {
        return Err(CliError::usage("--prime requires --field prime"));
    }
    let text = read_input(&args.input)?;
    let d = parse_digraph(&text, args.format, args.allow_loops)?;
    match args.field {
        FieldMode::Rational => analyze_with(&Rationals, &d, &args),
        FieldMode::Prime => {
            let field =
                PrimeField::new(args.prime.unwrap_or(DEFAULT_PRIME)).map_err(CliError::usage)?;
            eprintln!(
                "pathhom: warning: ranks over {} may be smaller than over the rationals",
                field.name()
            );
            analyze_with(&field, &d, &args)
        }
    }
}

fn analyze_with<F: Field>(field: &F, d: &Digraph, args: &AnalyzeArgs) -> Result<(), CliError> {
    let options = HomologyOptions {
        path_cap: args.path_cap,
    };
    let graph_id = args.input.display().to_string();
    let report = compare_with(field, d, args.p_max, options, &graph_id)?;
    let mut out = AnalyzeReport::new(d, field.name(), &report);

    if let Some(dir) = &args.dump_dir {
        dump_boundaries(field, d, report.reduced_betti.p_max + 1, options, dir)?;
    }
    if args.generators {
        match h1_generators_with(field, d, options) {
            Ok(g) => {
                out.h1_generators = Some(
                    (0..g.cycles.len())
                        .map(|k| {
                            g.terms(k)
                                .into_iter()
                                .map(|(arc, c)| (arc_labels(d, arc), field.format(&c)))
                                .collect()
                        })
                        .collect(),
                );
                out.h1_support = Some(g.support_arcs.iter().map(|&a| arc_labels(d, a)).collect());
            }
            Err(e) => eprintln!("pathhom: generators skipped: {e}"),
        }
    }

    if args.json {
        println!(
            "{}",
            serde_json::to_string(&out).expect("report serializes")
        );
    } else {
        print!("{}", human(&out));
    }
    match out.truncated_at {
        Some(dim) => Err(CliError::truncated(format!(
            "allowed {dim}-paths exceed the cap of {}; reported dimensions 0..={}",
            args.path_cap, out.p_max
        ))),
        None => Ok(()),
    }
}

fn dump_boundaries<F: Field>(
    field: &F,
    d: &Digraph,
    top: usize,
    options: HomologyOptions,
    dir: &Path,
) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display(), e))?;
    let mut cx = PathComplex::new(field.clone(), d, options.path_cap);
    for p in 0..=top {
        let m = cx.boundary(p)?;
        let path = dir.join(format!("boundary_{p}.txt"));
        let file = fs::File::create(&path).map_err(|e| CliError::io(path.display(), e))?;
        m.write_triplets(field, std::io::BufWriter::new(file))
            .map_err(|e| CliError::io(path.display(), e))?;
    }
    Ok(())
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn human(r: &AnalyzeReport) -> String {
    let mut s = format!(
        "graph: {}\nvertices: {}\narcs: {}\nfield: {}\nbetti: {}\nreduced betti: {}\np_max: {} (complete: {})\n",
        r.graph_id,
        r.vertices,
        r.arcs,
        r.field,
        join(&r.betti),
        join(&r.reduced_betti),
        r.p_max,
        r.complete
    );
    if let Some(dim) = r.truncated_at {
        s.push_str(&format!("truncated: allowed {dim}-paths over the cap\n"));
    }
    s.push_str(&format!(
        "cyclomatic: {}\ndivergence: {}\n",
        r.cyclomatic, r.divergence
    ));
    if let Some(gens) = &r.h1_generators {
        s.push_str(&format!("h1 generators: {}\n", gens.len()));
        for (k, cycle) in gens.iter().enumerate() {
            let terms: Vec<String> = cycle
                .iter()
                .map(|((u, v), c)| format!("{c} ({u},{v})"))
                .collect();
            s.push_str(&format!("  [{}] {}\n", k + 1, terms.join(" + ")));
        }
    }
    if let Some(support) = &r.h1_support {
        let arcs: Vec<String> = support.iter().map(|(u, v)| format!("({u},{v})")).collect();
        s.push_str(&format!("h1 support: {}\n", arcs.join(" ")));
    }
    s
}
