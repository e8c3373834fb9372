use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{ConvergenceRecord, ExperimentResult, SweepRow};
use crate::error::Result;

/// Writes `run,iter,fes,igd,ms` rows with a header.
pub fn write_records_csv<W: Write>(writer: W, records: &[ConvergenceRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records_csv<R: Read>(reader: R) -> Result<Vec<ConvergenceRecord>> {
    let mut r = csv::Reader::from_reader(reader);
    let mut out = Vec::new();
    for row in r.deserialize() {
        out.push(row?);
    }
    Ok(out)
}

pub fn write_sweep_csv<W: Write>(writer: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub run: usize,
    pub seed: u64,
    pub final_igd: f64,
    pub fes: usize,
}

/// Mean (std) of the final IGD over runs, plus per-run values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub problem: String,
    #[serde(rename = "M")]
    pub objectives: usize,
    pub d: usize,
    pub optimizer: String,
    pub mean_igd: f64,
    pub std_igd: f64,
    pub runs: Vec<RunSummary>,
}

impl Summary {
    pub fn from_result(result: &ExperimentResult) -> Self {
        let cfg = &result.config;
        Self {
            problem: cfg.problem.to_string(),
            objectives: cfg.objectives,
            d: cfg.dims,
            optimizer: cfg.optimizer().to_string(),
            mean_igd: result.mean_igd(),
            std_igd: result.std_igd(),
            runs: result
                .runs
                .iter()
                .map(|r| RunSummary {
                    run: r.run,
                    seed: r.seed,
                    final_igd: r.final_igd(),
                    fes: r.final_fes(),
                })
                .collect(),
        }
    }
}

/// One JSON object per round and run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventLine {
    pub run: usize,
    pub round: usize,
    pub participants: Vec<usize>,
    pub delivery: Vec<bool>,
    pub fes: usize,
}

pub fn write_events_jsonl<W: Write>(mut writer: W, result: &ExperimentResult) -> Result<()> {
    for run in &result.runs {
        for e in &run.events {
            let line = EventLine {
                run: run.run,
                round: e.round,
                participants: e.participants.clone(),
                delivery: e.delivery.clone(),
                fes: e.fes,
            };
            serde_json::to_writer(&mut writer, &line)?;
            writer.write_all(b"\n")?;
        }
    }
    writer.flush()?;
    Ok(())
}

/// Paths written by [`write_outputs`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFiles {
    pub records: PathBuf,
    pub summary: PathBuf,
    pub events: PathBuf,
}

/// Writes `<stem>.csv`, `<stem>.json` and `<stem>.events.jsonl` into `dir`.
pub fn write_outputs(dir: &Path, result: &ExperimentResult) -> Result<OutputFiles> {
    std::fs::create_dir_all(dir)?;
    let stem = result.config.stem();
    let files = OutputFiles {
        records: dir.join(format!("{stem}.csv")),
        summary: dir.join(format!("{stem}.json")),
        events: dir.join(format!("{stem}.events.jsonl")),
    };
    write_records_csv(std::fs::File::create(&files.records)?, &result.records())?;
    let mut f = std::fs::File::create(&files.summary)?;
    serde_json::to_writer_pretty(&mut f, &Summary::from_result(result))?;
    f.write_all(b"\n")?;
    write_events_jsonl(
        std::io::BufWriter::new(std::fs::File::create(&files.events)?),
        result,
    )?;
    Ok(files)
}
