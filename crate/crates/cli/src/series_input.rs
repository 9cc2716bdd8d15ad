//! Text input for series commands.
//!
//! A series file holds one rational per line (`#` comments and blank lines
//! ignored). A terms file holds one term per line:
//! `alpha j coeff-spec series-file`, where `coeff-spec` is a sum of products
//! of rationals, `zetaN`, `zetaN^k`, `tau` and `tau^k` written without
//! spaces, e.g. `-1/2*zeta3^2+tau`.

use std::fs;
use std::path::Path;

use gop_core::nga::{CycConst, NgaExpr, NgaTerm};
use gop_core::{parse_rat, Rat, TruncSeries};

use crate::CliError;

fn input_err(msg: String) -> CliError {
    CliError::Input(msg)
}

pub fn read_series(path: &Path, trunc: usize) -> Result<TruncSeries, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
    let mut coeffs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let q = parse_rat(line).ok_or_else(|| {
            input_err(format!(
                "{}:{}: not a rational: {line}",
                path.display(),
                n + 1
            ))
        })?;
        coeffs.push(q);
    }
    coeffs.truncate(trunc);
    Ok(TruncSeries::power(coeffs))
}

fn factor(tok: &str) -> Result<CycConst, CliError> {
    let (base, exp) = match tok.split_once('^') {
        Some((b, e)) => {
            let k: usize = e
                .parse()
                .map_err(|_| input_err(format!("bad exponent in '{tok}'")))?;
            (b, k)
        }
        None => (tok, 1),
    };
    if base == "tau" {
        return Ok(CycConst::tau_pow(exp));
    }
    if let Some(n) = base.strip_prefix("zeta") {
        let n: u64 = n
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| input_err(format!("bad root of unity '{tok}'")))?;
        return Ok(CycConst::zeta(n, exp as i64));
    }
    if exp != 1 {
        return Err(input_err(format!("exponent on a rational in '{tok}'")));
    }
    parse_rat(base)
        .map(CycConst::rational)
        .ok_or_else(|| input_err(format!("bad constant factor '{tok}'")))
}

pub fn parse_cyc(spec: &str) -> Result<CycConst, CliError> {
    if spec.is_empty() {
        return Err(input_err("empty constant".into()));
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, c) in spec.chars().enumerate() {
        if (c == '+' || c == '-') && !cur.ends_with('^') {
            if i > 0 {
                if cur.is_empty() {
                    return Err(input_err(format!("bad constant '{spec}'")));
                }
                terms.push((neg, std::mem::take(&mut cur)));
            }
            neg = c == '-';
        } else {
            cur.push(c);
        }
    }
    if cur.is_empty() {
        return Err(input_err(format!("bad constant '{spec}'")));
    }
    terms.push((neg, cur));
    let mut acc = CycConst::zero();
    for (neg, t) in terms {
        let mut prod = CycConst::one();
        for f in t.split('*') {
            prod = &prod * &factor(f)?;
        }
        acc = if neg { &acc - &prod } else { &acc + &prod };
    }
    Ok(acc)
}

pub fn read_terms(path: &Path, trunc: usize) -> Result<NgaExpr, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut terms = Vec::new();
    let mut lens = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        let [alpha, j, coeff, file] = f.as_slice() else {
            return Err(input_err(format!(
                "{}:{}: expected 'alpha j coeff-spec series-file'",
                path.display(),
                n + 1
            )));
        };
        let alpha: Rat = parse_rat(alpha)
            .ok_or_else(|| input_err(format!("{}:{}: bad exponent", path.display(), n + 1)))?;
        let j: u32 = j
            .parse()
            .map_err(|_| input_err(format!("{}:{}: bad log power", path.display(), n + 1)))?;
        let series = read_series(&dir.join(file), trunc)?;
        lens.push(series.truncation());
        terms.push(NgaTerm {
            alpha,
            j,
            coeff: parse_cyc(coeff)?,
            series,
        });
    }
    if lens.windows(2).any(|w| w[0] != w[1]) {
        return Err(input_err("series truncations differ".into()));
    }
    NgaExpr::new(terms).map_err(CliError::Domain)
}
