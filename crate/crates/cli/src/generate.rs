use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use rayon::prelude::*;

use pathhom::corpus::{
    enumerate_2fg_progenitors, enumerate_outdeg2_family, gen_goto_skeleton,
    gen_structured_skeleton, Skeleton, MAX_FAMILY_ORDER, MIN_FAMILY_ORDER,
};
use pathhom::digraph::{k_partite_tower, suspension};
use pathhom::homology::DEFAULT_PMAX;
use pathhom::metrics::compare;
use pathhom::verify::two_cycle;
use pathhom::Digraph;

use crate::error::CliError;
use crate::rows::{arc_labels, EnumerateSummary, ManifestRow, ProgenitorRow, Provenance};
use crate::{EnumerateFilter, GenerateKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuspensionBase {
    /// The 2-cycle `a <-> b`.
    Twocycle,
    /// The single arc `a -> b`.
    Path,
}

#[derive(Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: GenerateKind,
    /// Number of skeletons; seeds run from `--seed` upward.
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Productions per structured skeleton.
    #[arg(long, default_value_t = 20)]
    productions: usize,
    /// Goto statements per goto skeleton.
    #[arg(long, default_value_t = 16)]
    gotos: usize,
    /// Lines per goto skeleton.
    #[arg(long, default_value_t = 17)]
    lines: usize,
    /// Layer sizes of a tower, comma separated.
    #[arg(long, value_delimiter = ',')]
    layers: Vec<usize>,
    #[arg(long, value_enum, default_value = "twocycle")]
    base: SuspensionBase,
    /// Number of suspensions.
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long = "pmax", default_value_t = DEFAULT_PMAX)]
    p_max: usize,
    /// Directory for the generated files and `manifest.jsonl`. Without it the
    /// manifest goes to stdout and no files are written.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct EnumerateArgs {
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    filter: Option<EnumerateFilter>,
    /// Directory for one DOT file per reported record and `summary.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A generated digraph with its companion text, if any.
struct Item {
    id: String,
    digraph: Digraph,
    skeleton: Option<Skeleton>,
    provenance: Provenance,
}

fn skeleton_item(prefix: &str, s: Skeleton, provenance: Provenance) -> Item {
    let seed = s.seed.unwrap_or_default();
    Item {
        id: format!("{prefix}_{seed}"),
        digraph: s.cfg.clone(),
        provenance: Provenance {
            predicate_count: Some(s.predicate_count),
            ..provenance
        },
        skeleton: Some(s),
    }
}

fn items(args: &GenerateArgs) -> Result<Vec<Item>, CliError> {
    let seeds: Vec<u64> = (0..args.count as u64)
        .map(|i| args.seed.wrapping_add(i))
        .collect();
    match args.kind {
        GenerateKind::Skeleton => seeds
            .par_iter()
            .map(|&seed| {
                let s = gen_structured_skeleton(seed, args.productions)?;
                let p = Provenance {
                    seed: Some(seed),
                    n_productions: Some(args.productions),
                    ..Default::default()
                };
                Ok(skeleton_item("skeleton", s, p))
            })
            .collect(),
        GenerateKind::Goto => seeds
            .par_iter()
            .map(|&seed| {
                let s = gen_goto_skeleton(seed, args.gotos, args.lines)?;
                let p = Provenance {
                    seed: Some(seed),
                    n_gotos: Some(args.gotos),
                    n_lines: Some(args.lines),
                    ..Default::default()
                };
                Ok(skeleton_item("goto", s, p))
            })
            .collect(),
        GenerateKind::Tower => {
            if args.layers.is_empty() {
                return Err(CliError::usage("--kind tower needs --layers"));
            }
            let d = k_partite_tower(&args.layers)?;
            let name = args
                .layers
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("_");
            Ok(vec![Item {
                id: format!("tower_{name}"),
                digraph: d,
                skeleton: None,
                provenance: Provenance {
                    layers: Some(args.layers.clone()),
                    ..Default::default()
                },
            }])
        }
        GenerateKind::Suspension => {
            let (base, name) = match args.base {
                SuspensionBase::Twocycle => (two_cycle(), "twocycle"),
                SuspensionBase::Path => (Digraph::from_arcs(&[("a", "b")])?, "path"),
            };
            let d = suspension(&base, args.k)?;
            Ok(vec![Item {
                id: format!("suspension_{name}_{}", args.k),
                digraph: d,
                skeleton: None,
                provenance: Provenance {
                    base: Some(name.to_string()),
                    k: Some(args.k),
                    ..Default::default()
                },
            }])
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path.display(), e))
}

pub fn run_generate(args: GenerateArgs) -> Result<(), CliError> {
    if args.count == 0 {
        return Err(CliError::usage("--count must be positive"));
    }
    let kind = args
        .kind
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let items = items(&args)?;
    let rows: Vec<ManifestRow> = items
        .into_par_iter()
        .map(|item| {
            let report = compare(&item.digraph, args.p_max)?;
            let report = pathhom::metrics::MetricReport {
                graph_id: item.id.clone(),
                ..report
            };
            Ok((item, report))
        })
        .collect::<Result<Vec<_>, pathhom::Error>>()?
        .into_iter()
        .map(|(item, report)| {
            let file = format!("{}.edges", item.id);
            if let Some(dir) = &args.out {
                fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display(), e))?;
                write_file(&dir.join(&file), &item.digraph.to_edge_list())?;
                if let Some(s) = &item.skeleton {
                    write_file(&dir.join(format!("{}.skel", item.id)), &s.to_text())?;
                }
            }
            Ok(ManifestRow::new(
                &kind,
                file,
                item.provenance,
                &item.digraph,
                &report,
            ))
        })
        .collect::<Result<_, CliError>>()?;

    let mut text = String::new();
    for row in &rows {
        text.push_str(&serde_json::to_string(row).expect("row serializes"));
        text.push('\n');
    }
    match &args.out {
        Some(dir) => write_file(&dir.join("manifest.jsonl"), &text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("stdout", e)),
    }
}

pub fn run_enumerate(args: EnumerateArgs) -> Result<(), CliError> {
    if !(MIN_FAMILY_ORDER..=MAX_FAMILY_ORDER).contains(&args.n) {
        return Err(CliError::usage(format!(
            "--n must lie in {MIN_FAMILY_ORDER}..={MAX_FAMILY_ORDER}, got {}",
            args.n
        )));
    }
    let total = enumerate_outdeg2_family(args.n)?.len();
    let records = enumerate_2fg_progenitors(args.n)?;
    let progenitors = records.len();
    let kept: Vec<_> = records
        .into_iter()
        .filter(|r| match args.filter {
            Some(EnumerateFilter::Beta2Positive) => r.betti.reduced_at(2) > 0,
            None => true,
        })
        .collect();

    let width = kept.len().to_string().len();
    let mut rows = Vec::with_capacity(kept.len());
    for (k, r) in kept.iter().enumerate() {
        let id = format!("n{}_{:0width$}", args.n, k + 1);
        let d = &r.digraph;
        let file = match &args.out {
            Some(dir) => {
                fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display(), e))?;
                let file = format!("{id}.dot");
                write_file(&dir.join(&file), &d.to_dot(&id))?;
                Some(file)
            }
            None => None,
        };
        rows.push(ProgenitorRow {
            id,
            file,
            vertices: d.labels().iter().map(|v| v.as_str().to_string()).collect(),
            arcs: d
                .sorted_arcs()
                .into_iter()
                .map(|a| arc_labels(d, a))
                .collect(),
            valid_pairs: r.valid_pairs.iter().map(|&p| arc_labels(d, p)).collect(),
            betti: r.betti.betti.clone(),
            reduced_betti: r.betti.reduced.clone(),
            complete: r.betti.complete,
        });
    }
    let summary = EnumerateSummary {
        n: args.n,
        total,
        progenitors,
        filter: args
            .filter
            .map(|f| f.to_possible_value().expect("named").get_name().to_string()),
        filtered: rows.len(),
        records: rows,
    };
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    if let Some(dir) = &args.out {
        write_file(&dir.join("summary.json"), &format!("{json}\n"))?;
    }
    println!("{json}");
    Ok(())
}
