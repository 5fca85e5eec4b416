use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use redoff_core::bitcube::{BitVec, Cube};
use redoff_core::cover::{direct_cover_with, verify_cover, CoverOptions};
use redoff_core::function::DEFAULT_MAX_EXPAND;
use redoff_core::multi_output::{edsa_minimize, verify_tagged, TaggedCube};
use redoff_core::oracle::{realizes, TruthTable, EQUIV_MAX_INPUTS};
use redoff_core::pi_gen::generate_spi;
use redoff_core::pla::{parse_pla, write_pla, PlaHeader};
use redoff_core::Error;

use crate::trace::trace_primes;
use crate::{CliError, CliResult, Source, EXIT_INCONSISTENT, EXIT_OK, EXIT_VERIFY};

#[derive(Debug, Clone)]
pub struct MinimizeOptions {
    /// Route several outputs through the tagged multiple-output loop.
    pub multi: bool,
    pub max_expand: usize,
    pub irredundant: bool,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        MinimizeOptions {
            multi: false,
            max_expand: DEFAULT_MAX_EXPAND,
            irredundant: false,
        }
    }
}

/// A finished minimization, before anything is written.
#[derive(Debug, Clone)]
pub struct Minimized {
    pub cover: Vec<TaggedCube>,
    pub header: PlaHeader,
    pub elapsed: Duration,
    /// Problems found by the post-check; empty when the cover is valid.
    pub problems: Vec<String>,
}

impl Minimized {
    pub fn pla(&self) -> String {
        write_pla(&self.cover, &self.header)
    }
}

fn tag_for(outputs: usize, j: usize) -> BitVec {
    BitVec::zeros(outputs).with_bit(j, true)
}

/// Minimizes every output of `src` and checks the result.
pub fn minimize_source(src: &Source, opts: &MinimizeOptions) -> CliResult<Minimized> {
    let (n, m) = (src.inputs(), src.outputs());
    let header = PlaHeader {
        inputs: n,
        outputs: m,
        input_labels: src.input_labels(),
        output_labels: src.output_labels(),
    };
    let cover_opts = CoverOptions {
        irredundant: opts.irredundant,
        ..CoverOptions::default()
    };
    let mut cover = Vec::new();
    let mut problems = Vec::new();
    let mut elapsed = Duration::ZERO;

    if opts.multi && m > 1 {
        let f = src.multi_function(opts.max_expand)?;
        let start = Instant::now();
        cover = edsa_minimize(&f)?;
        elapsed = start.elapsed();
        problems = verify_tagged(&cover, &f);
    } else {
        for j in 0..m {
            let f = src.function(j, opts.max_expand)?;
            let start = Instant::now();
            let result = match direct_cover_with(&f, &cover_opts) {
                Ok(r) => r.cubes,
                Err(Error::EmptyOnset) => Vec::new(),
                Err(e) => return Err(e.into()),
            };
            elapsed += start.elapsed();
            let report = verify_cover(&result, &f);
            if !report.is_ok() {
                problems.extend(
                    report
                        .to_string()
                        .lines()
                        .map(|l| format!("output {j}: {}", l.trim())),
                );
            }
            cover.extend(result.into_iter().map(|cube| TaggedCube {
                cube,
                tag: tag_for(m, j),
            }));
        }
    }
    Ok(Minimized {
        cover,
        header,
        elapsed,
        problems,
    })
}

pub fn cmd_minimize(
    input: &Path,
    out_path: Option<&Path>,
    opts: &MinimizeOptions,
    out: &mut dyn Write,
    diag: &mut dyn Write,
) -> CliResult<i32> {
    let src = Source::load(input)?;
    let result = minimize_source(&src, opts)?;
    let text = result.pla();
    match out_path {
        Some(p) => {
            fs::write(p, &text).map_err(|e| CliError::input(format!("{}: {e}", p.display())))?
        }
        None => out.write_all(text.as_bytes())?,
    }
    let verdict = if result.problems.is_empty() {
        "cover verified".to_string()
    } else {
        format!(
            "cover FAILED verification ({} problems)",
            result.problems.len()
        )
    };
    writeln!(
        diag,
        "{}: {} cubes in {:.3} ms; {verdict}",
        input.display(),
        result.cover.len(),
        result.elapsed.as_secs_f64() * 1e3
    )?;
    for p in &result.problems {
        writeln!(diag, "  {p}")?;
    }
    Ok(if result.problems.is_empty() {
        EXIT_OK
    } else {
        EXIT_VERIFY
    })
}

pub struct PrimesOptions<'a> {
    pub minterm: &'a str,
    pub output: usize,
    pub trace: bool,
    pub max_expand: usize,
}

pub fn cmd_primes(
    input: &Path,
    opts: &PrimesOptions<'_>,
    out: &mut dyn Write,
    diag: &mut dyn Write,
) -> CliResult<i32> {
    let src = Source::load(input)?;
    let f = src.function(opts.output, opts.max_expand)?;
    let p: BitVec = opts
        .minterm
        .parse()
        .map_err(|e: Error| CliError::input(format!("--minterm: {e}")))?;
    if p.width() != f.inputs() {
        return Err(CliError::input(format!(
            "--minterm has {} bits but the function has {} inputs",
            p.width(),
            f.inputs()
        )));
    }
    if let Some(z) = f.off.iter().find(|z| z.contains_minterm(&p)) {
        writeln!(diag, "minterm {p} lies in OFF-cube {z}")?;
        return Ok(EXIT_INCONSISTENT);
    }
    let pis = if opts.trace {
        let (text, pis) = trace_primes(&p, &f.off)?;
        out.write_all(text.as_bytes())?;
        writeln!(out)?;
        pis
    } else {
        generate_spi(&p, &f.off)?
    };
    for c in &pis {
        writeln!(out, "{c}")?;
    }
    Ok(EXIT_OK)
}

/// Checks `cover` against every output of `input`: coverage, OFF
/// disjointness, primality, and exhaustive equivalence for small inputs.
pub fn cmd_verify(
    input: &Path,
    cover_path: &Path,
    max_expand: usize,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let src = Source::load(input)?;
    let text = fs::read_to_string(cover_path)
        .map_err(|e| CliError::input(format!("{}: {e}", cover_path.display())))?;
    let cover =
        parse_pla(&text).map_err(|e| CliError::input(format!("{}: {e}", cover_path.display())))?;
    if cover.inputs != src.inputs() || cover.outputs != src.outputs() {
        return Err(CliError::input(format!(
            "cover is {}x{} but the function is {}x{}",
            cover.inputs,
            cover.outputs,
            src.inputs(),
            src.outputs()
        )));
    }
    let mut all_ok = true;
    for j in 0..src.outputs() {
        let f = src.function(j, max_expand)?;
        let cubes: &[Cube] = &cover.on[j];
        let report = verify_cover(cubes, &f);
        writeln!(out, "output {j}: {} cubes", cubes.len())?;
        let mut line = |name: &str, ok: bool, out: &mut dyn Write| -> CliResult<()> {
            all_ok &= ok;
            writeln!(out, "  {name}: {}", if ok { "ok" } else { "FAIL" })?;
            Ok(())
        };
        line("covers ON-set", report.uncovered.is_empty(), out)?;
        for u in &report.uncovered {
            writeln!(out, "    uncovered: {u}")?;
        }
        line("disjoint from OFF-set", report.off_hits.is_empty(), out)?;
        for (c, z) in &report.off_hits {
            writeln!(out, "    {c} meets OFF-cube {z}")?;
        }
        line("every cube prime", report.non_prime.is_empty(), out)?;
        for (c, pos) in &report.non_prime {
            writeln!(out, "    {c} can drop the literal at position {pos}")?;
        }
        if f.inputs() <= EQUIV_MAX_INPUTS {
            let t = TruthTable::from_function(&f)?;
            line("exhaustive equivalence", realizes(cubes, &t)?, out)?;
        } else {
            writeln!(
                out,
                "  exhaustive equivalence: skipped (n > {EQUIV_MAX_INPUTS})"
            )?;
        }
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_VERIFY })
}
