use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::commands::{minimize_source, MinimizeOptions};
use crate::{CliError, CliResult, Source, EXIT_OK};

pub const CSV_HEADER: &str = "name,n,on,off,cubes,ms";

/// One benchmark file's outcome. `on` and `off` count cubes as listed (OFF
/// is the derived complement for types without an explicit OFF-set).
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub name: String,
    pub n: usize,
    pub on: usize,
    pub off: usize,
    pub cubes: usize,
    pub ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BenchRow {
    Ok(BenchRecord),
    Failed { name: String, error: String },
}

impl BenchRow {
    pub fn name(&self) -> &str {
        match self {
            BenchRow::Ok(r) => &r.name,
            BenchRow::Failed { name, .. } => name,
        }
    }

    pub fn to_csv(&self) -> String {
        match self {
            BenchRow::Ok(r) => format!(
                "{},{},{},{},{},{:.3}",
                r.name, r.n, r.on, r.off, r.cubes, r.ms
            ),
            BenchRow::Failed { name, error } => {
                format!("{name},,,,,\"error: {}\"", error.replace('"', "\"\""))
            }
        }
    }
}

/// PLA files directly inside `dir`, sorted by file name.
pub fn bench_files(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let entries =
        fs::read_dir(dir).map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "pla"))
        .collect();
    files.sort();
    Ok(files)
}

pub fn bench_one(path: &Path, opts: &MinimizeOptions) -> BenchRow {
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let run = || -> CliResult<BenchRecord> {
        let src = Source::load(path)?;
        let (mut on, mut off) = (0, 0);
        for j in 0..src.outputs() {
            let f = src.function(j, opts.max_expand)?;
            on += f.on.len();
            off += f.off.len();
        }
        let result = minimize_source(&src, opts)?;
        if !result.problems.is_empty() {
            return Err(CliError::input(format!(
                "cover failed verification: {}",
                result.problems[0]
            )));
        }
        Ok(BenchRecord {
            name: name.clone(),
            n: src.inputs(),
            on,
            off,
            cubes: result.cover.len(),
            ms: result.elapsed.as_secs_f64() * 1e3,
        })
    };
    match run() {
        Ok(r) => BenchRow::Ok(r),
        Err(e) => BenchRow::Failed {
            name,
            error: e.message,
        },
    }
}

/// Rows for every file, in name order regardless of completion order.
pub fn run_bench(
    dir: &Path,
    jobs: Option<usize>,
    opts: &MinimizeOptions,
) -> CliResult<Vec<BenchRow>> {
    let files = bench_files(dir)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::input(format!("worker pool: {e}")))?;
    let mut rows: Vec<BenchRow> =
        pool.install(|| files.par_iter().map(|p| bench_one(p, opts)).collect());
    rows.sort_by(|a, b| a.name().cmp(b.name()));
    Ok(rows)
}

pub fn render_csv(rows: &[BenchRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&r.to_csv());
        s.push('\n');
    }
    s
}

pub fn cmd_bench(
    dir: &Path,
    csv: Option<&Path>,
    jobs: Option<usize>,
    opts: &MinimizeOptions,
    out: &mut dyn Write,
    diag: &mut dyn Write,
) -> CliResult<i32> {
    let rows = run_bench(dir, jobs, opts)?;
    for r in &rows {
        if let BenchRow::Failed { name, error } = r {
            writeln!(diag, "{name}: {error}")?;
        }
    }
    let text = render_csv(&rows);
    match csv {
        Some(p) => {
            fs::write(p, text).map_err(|e| CliError::input(format!("{}: {e}", p.display())))?
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}
