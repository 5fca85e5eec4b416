//! Step-by-step text trace of prime generation for one minterm.

use std::fmt::Write as _;

use redoff_core::bitcube::{BitVec, Cube};
use redoff_core::pi_gen::{generate_n_traced, vector_to_pi, vectors_to_pis};
use redoff_core::reduced_offset::generate_sdm_traced;
use redoff_core::{Error, Result};

fn set_text<'a, T: std::fmt::Display + 'a>(items: impl IntoIterator<Item = &'a T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Trace lines followed by the sorted primes.
pub fn trace_primes(p: &BitVec, off: &[Cube]) -> Result<(String, Vec<Cube>)> {
    let mut out = String::new();
    let n = p.width();
    let _ = writeln!(out, "P = {p}");
    let _ = writeln!(out, "S_DM = {{{}}}", BitVec::ones(n));
    let sdm = match generate_sdm_traced(p, off, |ev| {
        let _ = writeln!(
            out,
            "D_{} = {}; S_DM = {}  // C_{}={}, A_{}={}",
            ev.index,
            ev.indicator,
            set_text(ev.set.iter()),
            ev.index,
            ev.step.comparisons,
            ev.index,
            ev.step.absorptions
        );
    }) {
        Ok(sdm) => sdm,
        Err(Error::EmptyOffset) => {
            let _ = writeln!(
                out,
                "OFF-set is empty; the only prime is the universal cube"
            );
            return Ok((out, vec![Cube::universe(n)]));
        }
        Err(e) => return Err(e),
    };
    let stats = sdm.stats();
    let _ = writeln!(
        out,
        "w(S_DM) = {}; comparisons = {}; average = {:.2}",
        sdm.len(),
        stats.comparisons,
        stats.average_comparisons()
    );
    let _ = writeln!(out, "N_0 = {{{}}}", BitVec::zeros(n));
    let nset = generate_n_traced(&sdm, |j, m, nj| {
        let d = &sdm.elements()[j - 1];
        let _ = writeln!(
            out,
            "D_{j} = {d} -> M_{j} = {}; N_{j} = {}",
            set_text(m.as_slice()),
            set_text(nj.as_slice())
        );
    })?;
    let pis = vectors_to_pis(p, &nset);
    for (i, e) in nset.as_slice().iter().enumerate() {
        let _ = writeln!(out, "e_{} = {e} -> {}", i + 1, vector_to_pi(p, e));
    }
    Ok((out, pis))
}
