use std::path::PathBuf;

use serde::Deserialize;

use pathhom::metrics::{count_pairs, histogram_csv};
use pathhom::verify::{oracle_suite, paper_suite, series_suite};

use crate::analyze::read_input;
use crate::error::CliError;
use crate::Suite;

pub fn run_verify(suite: Suite, pairs: usize, seed: u64) -> Result<(), CliError> {
    let claims = match suite {
        Suite::Paper => paper_suite(),
        Suite::Oracle => oracle_suite(),
        Suite::Series => {
            if pairs == 0 {
                return Err(CliError::usage("--pairs must be positive"));
            }
            series_suite(pairs, seed)
        }
    };
    for claim in &claims {
        println!("{claim}");
    }
    let failed = claims.iter().filter(|c| !c.passed).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::verify(format!(
            "{failed} of {} checks failed",
            claims.len()
        )))
    }
}

/// The two fields a histogram needs from any report row.
#[derive(Deserialize)]
struct Row {
    cyclomatic: usize,
    reduced_betti: Vec<usize>,
}

pub fn run_histogram(inputs: &[PathBuf]) -> Result<(), CliError> {
    let stdin = [PathBuf::from("-")];
    let inputs = if inputs.is_empty() {
        &stdin[..]
    } else {
        inputs
    };
    let mut pairs = Vec::new();
    for path in inputs {
        let text = read_input(path)?;
        for (k, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row: Row = serde_json::from_str(line)
                .map_err(|e| CliError::parse(format!("{}:{}: {e}", path.display(), k + 1)))?;
            pairs.push((
                row.cyclomatic,
                row.reduced_betti.get(1).copied().unwrap_or(0),
            ));
        }
    }
    print!("{}", histogram_csv(&count_pairs(pairs)));
    Ok(())
}
