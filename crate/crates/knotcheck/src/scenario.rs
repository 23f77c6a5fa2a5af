//! Scenario files: JSON descriptions of the expectations to verify for a
//! diagram, a pair of diagrams, or a chain of crossing-change stages.
//!
//! ```json
//! {
//!   "name": "trefoil-one-change",
//!   "diagram": "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]",
//!   "changes": [0],
//!   "expect": "unknot"
//! }
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use knotcheck_core::certify::{certify_unknot, prove_knotted, replay, Outcome, SearchLimits};
use knotcheck_core::unknotting::{evaluate_candidate, CandidateResult, ChangeSet};
use knotcheck_core::{apply_changes, chiral_by_jones, detect_mirror_pair, emit_pd, jones, parse_pd};
use knotcheck_core::{Certificate, Diagram, MirrorVerdict};
use serde::{Deserialize, Serialize};

use crate::{EXIT_FAILURE, EXIT_UNKNOWN, EXIT_VERIFIED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Unknot,
    Knotted,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stage {
    pub changes: Vec<usize>,
    /// `unknot`, `knotted` or `chiral`.
    pub expect_label: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitsSpec {
    pub max_crossings: Option<usize>,
    pub max_nodes: Option<usize>,
    pub allow_r1up: Option<bool>,
}

impl LimitsSpec {
    pub fn resolve(&self) -> SearchLimits {
        let d = SearchLimits::default();
        SearchLimits {
            max_crossings: self.max_crossings.or(d.max_crossings),
            max_nodes: self.max_nodes.unwrap_or(d.max_nodes),
            allow_r1up: self.allow_r1up.unwrap_or(d.allow_r1up),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    /// Where the diagram data came from.
    #[serde(default)]
    pub provenance: Option<String>,
    /// Set while the diagram data is still to be entered.
    #[serde(default)]
    pub untranscribed: bool,
    #[serde(default)]
    pub diagram: Option<String>,
    #[serde(default)]
    pub changes: Option<Vec<usize>>,
    #[serde(default)]
    pub expect: Option<Expect>,
    #[serde(default)]
    pub pair: Option<[String; 2]>,
    #[serde(default)]
    pub chain: Option<Vec<Stage>>,
    #[serde(default)]
    pub limits: Option<LimitsSpec>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario> {
        let s: Scenario = serde_json::from_str(text).context("scenario schema")?;
        s.check()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Scenario> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Scenario::from_json(&text).with_context(|| format!("in {}", path.display()))
    }

    fn check(&self) -> Result<()> {
        if self.untranscribed {
            return Ok(());
        }
        if self.diagram.is_none() && self.pair.is_none() {
            bail!("scenario needs `diagram` or `pair`");
        }
        if self.diagram.is_none() && (self.changes.is_some() || self.expect.is_some() || self.chain.is_some()) {
            bail!("`changes`, `expect` and `chain` need `diagram`");
        }
        if self.diagram.is_some() && self.expect.is_none() && self.chain.is_none() {
            bail!("`diagram` given without `expect` or `chain`");
        }
        for stage in self.chain.iter().flatten() {
            if !["unknot", "knotted", "chiral"].contains(&stage.expect_label.as_str()) {
                bail!("unknown expect_label `{}` (use unknot, knotted or chiral)", stage.expect_label);
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Unknown,
    Refuted,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub expect: String,
    pub verdict: Verdict,
    pub witness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioRun {
    pub name: String,
    pub checks: Vec<CheckRecord>,
    pub exit: i32,
    #[serde(skip)]
    pub text: String,
}

/// Runs a scenario. Certificates go to `out_dir` when given.
pub fn run(s: &Scenario, out_dir: Option<&Path>) -> Result<ScenarioRun> {
    let mut text = String::new();
    writeln!(text, "scenario: {}", s.name)?;
    if let Some(p) = &s.provenance {
        writeln!(text, "provenance: {p}")?;
    }
    if s.untranscribed {
        writeln!(text, "UNTRANSCRIBED: no diagram data has been entered for this scenario; nothing was verified")?;
        return Ok(ScenarioRun { name: s.name.clone(), checks: Vec::new(), exit: EXIT_UNKNOWN, text });
    }
    let lim = s.limits.clone().unwrap_or_default().resolve();
    let mut checks = Vec::new();

    if let Some([a, b]) = &s.pair {
        let d1 = parse_pd(a.trim()).context("pair[0]")?;
        let d2 = parse_pd(b.trim()).context("pair[1]")?;
        checks.push(pair_check(&d1, &d2, &mut text)?);
    }

    if let Some(code) = &s.diagram {
        let d = parse_pd(code.trim()).context("diagram")?;
        writeln!(text, "diagram: {} ({} crossings)", emit_pd(&d), d.crossing_count())?;
        if let Some(expect) = s.expect {
            let changes = s.changes.clone().unwrap_or_default();
            let changed = apply_changes(&d, &changes)?;
            let label = match expect {
                Expect::Unknot => "unknot",
                Expect::Knotted => "knotted",
            };
            let stem = certificate_stem(&s.name, None);
            checks.push(expectation(&changed, &changes, label, &lim, out_dir, &stem, &mut text)?);
        }
        if let Some(chain) = &s.chain {
            let mut cur = d.clone();
            for (i, stage) in chain.iter().enumerate() {
                cur = apply_changes(&cur, &stage.changes).with_context(|| format!("chain stage {}", i + 1))?;
                writeln!(text, "stage {}: changes {:?}", i + 1, stage.changes)?;
                let stem = certificate_stem(&s.name, Some(i + 1));
                let mut c = expectation(&cur, &stage.changes, &stage.expect_label, &lim, out_dir, &stem, &mut text)?;
                c.check = format!("chain stage {}", i + 1);
                checks.push(c);
            }
        }
    }

    let exit = if checks.iter().any(|c| c.verdict == Verdict::Refuted) {
        EXIT_FAILURE
    } else if checks.iter().any(|c| c.verdict == Verdict::Unknown) {
        EXIT_UNKNOWN
    } else {
        EXIT_VERIFIED
    };
    let mut run = ScenarioRun { name: s.name.clone(), checks, exit, text };
    writeln!(run.text, "result: {}", match exit {
        EXIT_VERIFIED => "all expectations verified",
        EXIT_UNKNOWN => "some expectations undecided",
        _ => "some expectation refuted",
    })?;
    writeln!(run.text, "summary: {}", serde_json::to_string(&run)?)?;
    Ok(run)
}

fn certificate_stem(name: &str, stage: Option<usize>) -> String {
    let base: String = name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect();
    match stage {
        Some(i) => format!("{base}-stage{i}"),
        None => base,
    }
}

fn pair_check(d1: &Diagram, d2: &Diagram, text: &mut String) -> Result<CheckRecord> {
    let verdict = detect_mirror_pair(d1, d2)?;
    let (c1, c2) = (chiral_by_jones(d1)?, chiral_by_jones(d2)?);
    writeln!(text, "pair: {verdict}; chiral_by_jones = ({c1}, {c2})")?;
    writeln!(text, "  jones[0] = {}", jones(d1)?)?;
    writeln!(text, "  jones[1] = {}", jones(d2)?)?;
    let v = match verdict {
        MirrorVerdict::MirrorJones if c1 && c2 => Verdict::Verified,
        MirrorVerdict::MirrorJones | MirrorVerdict::SameJones => Verdict::Unknown,
        MirrorVerdict::Unrelated => Verdict::Refuted,
    };
    Ok(CheckRecord {
        check: "pair".into(),
        expect: "chiral knot and its mirror".into(),
        verdict: v,
        witness: format!("{verdict}"),
        certificate: None,
    })
}

fn expectation(
    d: &Diagram,
    changes: &[usize],
    label: &str,
    lim: &SearchLimits,
    out_dir: Option<&Path>,
    stem: &str,
    text: &mut String,
) -> Result<CheckRecord> {
    let mut rec = CheckRecord {
        check: "changes".into(),
        expect: label.into(),
        verdict: Verdict::Unknown,
        witness: String::new(),
        certificate: None,
    };
    writeln!(text, "changes {changes:?} -> {}", emit_pd(d))?;
    match label {
        "unknot" => {
            let set = ChangeSet::new(Vec::new(), d.crossing_count())?;
            match evaluate_candidate(d, &set, lim) {
                CandidateResult::Unknot(cert) => {
                    if !replay(d, &cert) {
                        bail!("internal error: certificate failed replay");
                    }
                    rec.verdict = Verdict::Verified;
                    rec.witness = format!("certificate with {} moves", cert.moves.len());
                    rec.certificate = write_certificate(&cert, out_dir, stem)?;
                }
                CandidateResult::Knotted => {
                    rec.verdict = Verdict::Refuted;
                    rec.witness = format!("jones = {}", jones(d)?);
                }
                CandidateResult::NearMiss => rec.witness = "node limit reached".into(),
                CandidateResult::Failed => rec.witness = "search exhausted within crossing cap".into(),
            }
        }
        "knotted" | "chiral" => {
            let v = jones(d)?;
            let chiral = v != v.invert_var();
            if label == "chiral" && chiral || label == "knotted" && !v.is_one() {
                rec.verdict = Verdict::Verified;
                rec.witness = format!("jones = {v}");
            } else if let Outcome::Certified(cert) = certify_unknot(d, lim) {
                rec.verdict = Verdict::Refuted;
                rec.witness = format!("certified unknot ({} moves)", cert.moves.len());
                rec.certificate = write_certificate(&cert, out_dir, stem)?;
            } else {
                rec.witness = format!("jones = {v} is inconclusive");
            }
            if label == "knotted" && prove_knotted(d) != !v.is_one() {
                bail!("internal error: inconsistent knottedness test");
            }
        }
        other => bail!("unknown expectation `{other}`"),
    }
    writeln!(text, "  expect {label}: {:?} ({})", rec.verdict, rec.witness)?;
    if let Some(p) = &rec.certificate {
        writeln!(text, "  certificate: {}", p.display())?;
    }
    Ok(rec)
}

fn write_certificate(cert: &Certificate, out_dir: Option<&Path>, stem: &str) -> Result<Option<PathBuf>> {
    let Some(dir) = out_dir else { return Ok(None) };
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(format!("{stem}.cert"));
    fs::write(&path, cert.to_string()).with_context(|| format!("writing {}", path.display()))?;
    Ok(Some(path))
}
