//! Batch experiments: run many instances in parallel and write one CSV row
//! per (instance, accuracy) pair.

use std::io::Write;

use lossy_kernels::{Error, Result};
use rayon::prelude::*;

use crate::pipeline::{self, Instance, Params, ProblemKind, Row};

pub const THREADS_ENV: &str = "LOSSY_THREADS";

pub const COLUMNS: [&str; 16] = [
    "instance",
    "problem",
    "accuracy",
    "n",
    "k",
    "n_reduced",
    "k_reduced",
    "size_bound",
    "opt",
    "opt_reduced",
    "val_kernel_sol",
    "val_lifted",
    "ratio",
    "guarantee_ok",
    "replay_ok",
    "status",
];

/// A named instance in its file form.
#[derive(Clone, Debug)]
pub struct Job {
    pub name: String,
    pub text: String,
}

/// A pool with `threads` workers, or `LOSSY_THREADS`, or rayon's default.
pub fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let threads = threads.or_else(|| std::env::var(THREADS_ENV).ok().and_then(|t| t.parse().ok())).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| Error::Budget(e.to_string()))
}

fn error_row(kind: ProblemKind, job: &Job, accuracy: f64, e: &Error) -> Row {
    Row {
        instance: job.name.clone(),
        problem: kind.name().to_string(),
        accuracy,
        n: 0,
        k: 0,
        n_reduced: None,
        k_reduced: None,
        size_bound: None,
        opt: None,
        opt_reduced: None,
        val_kernel_sol: None,
        val_lifted: None,
        ratio: None,
        guarantee_ok: None,
        replay_ok: None,
        status: format!("error: {e}"),
    }
}

fn run_one(kind: ProblemKind, job: &Job, params: &Params, verify: bool) -> Row {
    let accuracy = params.accuracy_f64(kind);
    let res = Instance::parse(kind, &job.text).and_then(|inst| {
        if verify {
            pipeline::verify(kind, &job.name, &inst, params)
        } else {
            pipeline::sizes(kind, &job.name, &inst, params)
        }
    });
    match res {
        Ok(row) => row,
        Err(Error::Budget(msg)) => Row { status: format!("unverified: {msg}"), ..error_row(kind, job, accuracy, &Error::Budget(msg)) },
        Err(e) => error_row(kind, job, accuracy, &e),
    }
}

/// Runs every job under every parameter set. Rows come back sorted by
/// instance name, then accuracy, whatever the thread count.
pub fn run(kind: ProblemKind, jobs: &[Job], settings: &[Params], verify: bool, threads: Option<usize>) -> Result<Vec<Row>> {
    let tasks: Vec<(&Job, &Params)> = jobs.iter().flat_map(|j| settings.iter().map(move |p| (j, p))).collect();
    let mut rows: Vec<Row> = pool(threads)?.install(|| tasks.par_iter().map(|(j, p)| run_one(kind, j, p, verify)).collect());
    rows.sort_by(|a, b| a.instance.cmp(&b.instance).then(a.accuracy.total_cmp(&b.accuracy)));
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[Row], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    let csv_err = |e: csv::Error| Error::Malformed(e.to_string());
    w.write_record(COLUMNS).map_err(csv_err)?;
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}
