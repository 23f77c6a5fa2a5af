use std::fs;
use std::io::Read;

use anyhow::{Context, Result};
use knotcheck_core::{parse_pd, Certificate, Diagram};

/// PD text given inline (`PD[...]`), on stdin (`-`) or in a file.
pub fn read_text(arg: &str) -> Result<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with("PD") {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    fs::read_to_string(arg).with_context(|| format!("reading {arg}"))
}

pub fn read_diagram(arg: &str) -> Result<Diagram> {
    let text = read_text(arg)?;
    parse_pd(text.trim()).with_context(|| format!("parsing PD code from {}", short(arg)))
}

pub fn read_certificate(path: &str) -> Result<Certificate> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    text.parse().with_context(|| format!("parsing certificate {path}"))
}

fn short(arg: &str) -> String {
    if arg.len() > 40 {
        format!("{}...", &arg[..arg.char_indices().nth(37).map_or(arg.len(), |(i, _)| i)])
    } else {
        arg.to_string()
    }
}
