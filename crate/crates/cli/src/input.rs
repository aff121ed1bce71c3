//! Plain-text input formats for channels, ensembles and scenarios.
//!
//! Channel tables (`mac` files):
//! ```text
//! mac <n_senders> <|X1|> ... <|Xn|> <|Y|>
//! # one line per joint input (row-major, sender 0 slowest):
//! p(y=0|x) p(y=1|x) ...
//! ```
//!
//! Ensembles (`ens` files):
//! ```text
//! ens <n_senders> <|Q|> <|X1|> ... <|Xn|>
//! p(q=0) p(q=1) ...
//! # then for each sender, |Q| lines of p(x|q):
//! ...
//! ```
//!
//! Scenario files are flat `key = value` text. Blank lines and `#` comments
//! are ignored everywhere.

use qmac_core::capacity_region::{ClassicalMac, InputEnsemble};
use std::collections::BTreeMap;
use std::path::Path;

pub type Result<T> = std::result::Result<T, String>;

fn read_lines(path: &Path) -> Result<Vec<Vec<String>>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| l.split_whitespace().map(str::to_string).collect())
        .collect())
}

fn parse_usize(tok: &str, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| format!("{what}: expected an integer, got '{tok}'"))
}

fn parse_f64(tok: &str, what: &str) -> Result<f64> {
    tok.parse()
        .map_err(|_| format!("{what}: expected a number, got '{tok}'"))
}

pub fn load_mac(path: &Path) -> Result<ClassicalMac> {
    let lines = read_lines(path)?;
    let Some((header, body)) = lines.split_first() else {
        return Err(format!("{}: empty file", path.display()));
    };
    if header.first().map(String::as_str) != Some("mac") {
        return Err(format!("{}: first line must start with 'mac'", path.display()));
    }
    if header.len() < 4 {
        return Err(format!(
            "{}: header is 'mac <n> <|X1|..|Xn|> <|Y|>'",
            path.display()
        ));
    }
    let n = parse_usize(&header[1], "sender count")?;
    if header.len() != n + 3 {
        return Err(format!(
            "{}: expected {} alphabet sizes plus output size, got {}",
            path.display(),
            n,
            header.len() - 2
        ));
    }
    let input_sizes: Vec<usize> = header[2..2 + n]
        .iter()
        .map(|t| parse_usize(t, "input alphabet size"))
        .collect::<Result<_>>()?;
    let output_size = parse_usize(&header[2 + n], "output alphabet size")?;
    let joint: usize = input_sizes.iter().product();
    if body.len() != joint {
        return Err(format!(
            "{}: expected {joint} distribution lines, got {}",
            path.display(),
            body.len()
        ));
    }
    let mut probs = Vec::with_capacity(joint * output_size);
    for (i, line) in body.iter().enumerate() {
        if line.len() != output_size {
            return Err(format!(
                "{}: line for joint input {i} has {} entries, expected {output_size}",
                path.display(),
                line.len()
            ));
        }
        for tok in line {
            probs.push(parse_f64(tok, "probability")?);
        }
    }
    ClassicalMac::new(input_sizes, output_size, probs).map_err(|e| e.to_string())
}

pub fn load_ensemble(path: &Path) -> Result<InputEnsemble> {
    let lines = read_lines(path)?;
    let Some((header, body)) = lines.split_first() else {
        return Err(format!("{}: empty file", path.display()));
    };
    if header.first().map(String::as_str) != Some("ens") {
        return Err(format!("{}: first line must start with 'ens'", path.display()));
    }
    if header.len() < 4 {
        return Err(format!(
            "{}: header is 'ens <n> <|Q|> <|X1|..|Xn|>'",
            path.display()
        ));
    }
    let n = parse_usize(&header[1], "sender count")?;
    let nq = parse_usize(&header[2], "time-sharing alphabet size")?;
    if header.len() != n + 3 {
        return Err(format!(
            "{}: expected {n} sender alphabet sizes, got {}",
            path.display(),
            header.len() - 3
        ));
    }
    let sizes: Vec<usize> = header[3..]
        .iter()
        .map(|t| parse_usize(t, "input alphabet size"))
        .collect::<Result<_>>()?;
    let expected_lines = 1 + n * nq;
    if body.len() != expected_lines {
        return Err(format!(
            "{}: expected {expected_lines} pmf lines, got {}",
            path.display(),
            body.len()
        ));
    }
    let parse_pmf = |line: &Vec<String>, len: usize, what: &str| -> Result<Vec<f64>> {
        if line.len() != len {
            return Err(format!(
                "{}: {what} has {} entries, expected {len}",
                path.display(),
                line.len()
            ));
        }
        line.iter().map(|t| parse_f64(t, what)).collect()
    };
    let q_probs = parse_pmf(&body[0], nq, "Q pmf")?;
    let mut cond = Vec::with_capacity(n);
    let mut cursor = 1;
    for (i, &size) in sizes.iter().enumerate() {
        let mut per_q = Vec::with_capacity(nq);
        for q in 0..nq {
            per_q.push(parse_pmf(
                &body[cursor],
                size,
                &format!("pmf for sender {i}, q={q}"),
            )?);
            cursor += 1;
        }
        cond.push(per_q);
    }
    InputEnsemble::new(q_probs, cond).map_err(|e| e.to_string())
}

/// `key = value` map; later keys override earlier ones.
pub fn load_scenario(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut map = BTreeMap::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!(
                "{}: expected 'key = value', got '{line}'",
                path.display()
            ));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// A one-dimensional sweep grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub log_spaced: bool,
}

impl Grid {
    /// Parses `start:stop:count[:lin|log]`.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(format!(
                "grid spec '{spec}' must be start:stop:count[:lin|log]"
            ));
        }
        let start = parse_f64(parts[0], "grid start")?;
        let stop = parse_f64(parts[1], "grid stop")?;
        let count = parse_usize(parts[2], "grid count")?;
        let log_spaced = match parts.get(3).copied().unwrap_or("lin") {
            "lin" => false,
            "log" => true,
            other => return Err(format!("grid scale must be lin or log, got '{other}'")),
        };
        Grid::new(start, stop, count, log_spaced)
    }

    pub fn new(start: f64, stop: f64, count: usize, log_spaced: bool) -> Result<Self> {
        if count < 1 {
            return Err("grid count must be at least 1".into());
        }
        if log_spaced && (start <= 0.0 || stop <= 0.0) {
            return Err("log-spaced grids need positive endpoints".into());
        }
        Ok(Self {
            start,
            stop,
            count,
            log_spaced,
        })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        (0..self.count)
            .map(|i| {
                let t = i as f64 / (self.count - 1) as f64;
                if self.log_spaced {
                    self.start * (self.stop / self.start).powf(t)
                } else {
                    self.start + (self.stop - self.start) * t
                }
            })
            .collect()
    }
}
