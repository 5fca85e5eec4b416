//! Espresso-style PLA files and a bare minterm-list format.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::bitcube::{BitVec, Cube};
use crate::error::{Error, Result};
use crate::function::LogicFunction;
use crate::multi_output::{MultiFunction, OutputValue, TaggedCube};

/// How a `0` in an output column is read, and whether `-` is meaningful.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PlaType {
    F,
    Fr,
    #[default]
    Fd,
    Fdr,
}

impl PlaType {
    /// Whether the file lists the OFF-set explicitly.
    pub fn has_off(self) -> bool {
        matches!(self, PlaType::Fr | PlaType::Fdr)
    }
}

impl FromStr for PlaType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "f" => Ok(PlaType::F),
            "fr" => Ok(PlaType::Fr),
            "fd" => Ok(PlaType::Fd),
            "fdr" => Ok(PlaType::Fdr),
            _ => Err(format!(
                "unsupported .type {s:?} (expected f, fr, fd or fdr)"
            )),
        }
    }
}

impl std::fmt::Display for PlaType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PlaType::F => "f",
            PlaType::Fr => "fr",
            PlaType::Fd => "fd",
            PlaType::Fdr => "fdr",
        })
    }
}

/// A parsed PLA. Cube lists are indexed by output, where output `j` is the
/// `j`-th column from the right.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Pla {
    pub inputs: usize,
    pub outputs: usize,
    pub input_labels: Vec<String>,
    pub output_labels: Vec<String>,
    pub kind: PlaType,
    /// Value of `.p`, if present.
    pub declared_terms: Option<usize>,
    /// Number of cube lines read.
    pub terms: usize,
    pub on: Vec<Vec<Cube>>,
    pub off: Vec<Vec<Cube>>,
    pub dc: Vec<Vec<Cube>>,
}

fn pla_err(line: usize, message: impl Into<String>) -> Error {
    Error::Pla {
        line,
        message: message.into(),
    }
}

fn parse_count(line: usize, directive: &str, arg: Option<&str>) -> Result<usize> {
    arg.and_then(|a| a.parse().ok())
        .ok_or_else(|| pla_err(line, format!("{directive} needs a non-negative integer")))
}

pub fn parse_pla(text: &str) -> Result<Pla> {
    let mut pla = Pla::default();
    let (mut have_i, mut have_o) = (false, false);
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(directive) = line.strip_prefix('.') {
            let mut words = directive.split_whitespace();
            let name = words.next().unwrap_or("");
            match name {
                "i" | "o" if pla.terms > 0 => {
                    return Err(pla_err(line_no, format!(".{name} after cube lines")))
                }
                "i" => {
                    pla.inputs = parse_count(line_no, ".i", words.next())?;
                    have_i = true;
                }
                "o" => {
                    pla.outputs = parse_count(line_no, ".o", words.next())?;
                    if pla.outputs == 0 {
                        return Err(pla_err(line_no, ".o must be at least 1"));
                    }
                    have_o = true;
                    pla.on = vec![Vec::new(); pla.outputs];
                    pla.off = vec![Vec::new(); pla.outputs];
                    pla.dc = vec![Vec::new(); pla.outputs];
                }
                "p" => pla.declared_terms = Some(parse_count(line_no, ".p", words.next())?),
                "ilb" => pla.input_labels = words.map(String::from).collect(),
                "ob" => pla.output_labels = words.map(String::from).collect(),
                "type" => {
                    let t = words
                        .next()
                        .ok_or_else(|| pla_err(line_no, ".type needs a value"))?;
                    pla.kind = t.parse().map_err(|e| pla_err(line_no, e))?;
                }
                "e" | "end" => break,
                _ => return Err(pla_err(line_no, format!("unsupported directive .{name}"))),
            }
            continue;
        }
        if !(have_i && have_o) {
            return Err(pla_err(line_no, "cube line before .i and .o"));
        }
        parse_cube_line(&mut pla, line_no, line)?;
    }
    if !(have_i && have_o) {
        return Err(pla_err(0, "missing .i or .o declaration"));
    }
    for (what, labels, want) in [
        (".ilb", &pla.input_labels, pla.inputs),
        (".ob", &pla.output_labels, pla.outputs),
    ] {
        if !labels.is_empty() && labels.len() != want {
            return Err(pla_err(
                0,
                format!("{what} lists {} labels, expected {want}", labels.len()),
            ));
        }
    }
    if let Some(p) = pla.declared_terms {
        if p != pla.terms {
            log::warn!(
                ".p declares {p} terms but {} cube lines were read",
                pla.terms
            );
        }
    }
    Ok(pla)
}

fn parse_cube_line(pla: &mut Pla, line_no: usize, line: &str) -> Result<()> {
    let chars: Vec<char> = line.chars().filter(|c| !c.is_whitespace()).collect();
    let (n, m) = (pla.inputs, pla.outputs);
    if chars.len() != n + m {
        return Err(pla_err(
            line_no,
            format!(
                "expected {} characters ({n} inputs, {m} outputs), found {}",
                n + m,
                chars.len()
            ),
        ));
    }
    let mut care = BitVec::zeros(n);
    let mut value = BitVec::zeros(n);
    for (pos, &ch) in chars[..n].iter().enumerate() {
        let bit = n - 1 - pos;
        match ch {
            '0' => care.set_bit(bit, true),
            '1' => {
                care.set_bit(bit, true);
                value.set_bit(bit, true);
            }
            '-' => {}
            'x' | 'X' => {
                return Err(pla_err(
                    line_no,
                    format!("'{ch}' is not a PLA input value; use '-'"),
                ))
            }
            _ => return Err(pla_err(line_no, format!("invalid input character {ch:?}"))),
        }
    }
    let cube = Cube::from_care(&care, &value);
    for (col, &ch) in chars[n..].iter().enumerate() {
        let j = m - 1 - col;
        match ch {
            '1' | '4' => pla.on[j].push(cube.clone()),
            '0' if pla.kind.has_off() => pla.off[j].push(cube.clone()),
            '0' | '~' => {}
            '-' | '2' => pla.dc[j].push(cube.clone()),
            _ => return Err(pla_err(line_no, format!("invalid output character {ch:?}"))),
        }
    }
    pla.terms += 1;
    Ok(())
}

impl Pla {
    /// Output `j` as a single-output function. Types without an explicit
    /// OFF-set get the complement of ON and DC, refused above `max_expand`
    /// inputs.
    pub fn function(&self, j: usize, max_expand: usize) -> Result<LogicFunction> {
        let f = if self.kind.has_off() {
            LogicFunction::new(
                self.inputs,
                self.on[j].clone(),
                self.off[j].clone(),
                self.dc[j].clone(),
            )
        } else {
            LogicFunction::with_derived_off(self.inputs, self.on[j].clone(), self.dc[j].clone(), max_expand)
                .map_err(|e| match e {
                    Error::TooLarge { n, limit, .. } => Error::TooLarge {
                        what: "inputs for OFF-set derivation (supply an fr/fdr file or raise --max-expand)",
                        n,
                        limit,
                    },
                    e => e,
                })
        }?;
        Ok(match self.output_labels.get(self.outputs - 1 - j) {
            Some(label) => f.named(label.clone()),
            None => f,
        })
    }

    /// Truth table of every output, refused above `max_expand` inputs.
    pub fn multi_function(&self, max_expand: usize) -> Result<MultiFunction> {
        if self.inputs > max_expand {
            return Err(Error::TooLarge {
                what: "inputs for a multiple-output truth table",
                n: self.inputs,
                limit: max_expand,
            });
        }
        let mut f = MultiFunction::new(self.inputs, self.outputs)?;
        let rows = f.rows();
        for j in 0..self.outputs {
            let mut care_true = vec![false; rows];
            for c in &self.on[j] {
                for m in c.minterms() {
                    let r = m.to_u64().expect("bounded width") as usize;
                    f.set(r, j, OutputValue::One)?;
                    care_true[r] = true;
                }
            }
            if self.kind.has_off() {
                for c in &self.off[j] {
                    for m in c.minterms() {
                        f.set(
                            m.to_u64().expect("bounded width") as usize,
                            j,
                            OutputValue::Zero,
                        )?;
                    }
                }
            } else {
                for c in &self.dc[j] {
                    for m in c.minterms() {
                        care_true[m.to_u64().expect("bounded width") as usize] = true;
                    }
                }
                for (r, _) in care_true.iter().enumerate().filter(|(_, &t)| !t) {
                    f.set(r, j, OutputValue::Zero)?;
                }
            }
        }
        Ok(f)
    }
}

/// Header fields for [`write_pla`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PlaHeader {
    pub inputs: usize,
    pub outputs: usize,
    pub input_labels: Vec<String>,
    pub output_labels: Vec<String>,
}

impl PlaHeader {
    pub fn new(inputs: usize, outputs: usize) -> Self {
        PlaHeader {
            inputs,
            outputs,
            ..Default::default()
        }
    }
}

/// Writes a cover. A single output is written as type `fr`; several outputs
/// as type `f`, since a `0` column would otherwise read back as OFF.
pub fn write_pla(cover: &[TaggedCube], header: &PlaHeader) -> String {
    let mut out = String::new();
    let _ = writeln!(out, ".i {}", header.inputs);
    let _ = writeln!(out, ".o {}", header.outputs);
    if !header.input_labels.is_empty() {
        let _ = writeln!(out, ".ilb {}", header.input_labels.join(" "));
    }
    if !header.output_labels.is_empty() {
        let _ = writeln!(out, ".ob {}", header.output_labels.join(" "));
    }
    let _ = writeln!(out, ".p {}", cover.len());
    let _ = writeln!(
        out,
        ".type {}",
        if header.outputs == 1 { "fr" } else { "f" }
    );
    for tc in cover {
        debug_assert_eq!(tc.cube.width(), header.inputs);
        debug_assert_eq!(tc.tag.width(), header.outputs);
        out.push_str(&tc.to_pla_line());
        out.push('\n');
    }
    out.push_str(".e\n");
    out
}

/// [`write_pla`] for a single-output cover.
pub fn write_cover(cubes: &[Cube], inputs: usize) -> String {
    let tag = BitVec::ones(1);
    let tagged: Vec<TaggedCube> = cubes
        .iter()
        .map(|c| TaggedCube {
            cube: c.clone(),
            tag: tag.clone(),
        })
        .collect();
    write_pla(&tagged, &PlaHeader::new(inputs, 1))
}

/// Reads `<minterm> <value>` lines, value `1`, `0` or `-`. Cubes with `x` or
/// `-` are accepted on the left. Both ON and OFF are taken as listed.
pub fn parse_minterm_list(text: &str) -> Result<LogicFunction> {
    let (mut on, mut off, mut dc) = (Vec::new(), Vec::new(), Vec::new());
    let mut width = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(bits), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(pla_err(line_no, "expected '<cube> <0|1|->'"));
        };
        let cube: Cube = bits
            .parse()
            .map_err(|e: Error| pla_err(line_no, e.to_string()))?;
        match width {
            None => width = Some(cube.width()),
            Some(w) if w != cube.width() => {
                return Err(pla_err(
                    line_no,
                    format!("width {} differs from {w}", cube.width()),
                ))
            }
            _ => {}
        }
        match v {
            "1" => on.push(cube),
            "0" => off.push(cube),
            "-" => dc.push(cube),
            _ => return Err(pla_err(line_no, format!("invalid value {v:?}"))),
        }
    }
    let width = width.ok_or_else(|| pla_err(0, "no minterm lines"))?;
    LogicFunction::new(width, on, off, dc)
}
