//! Verification certificates: a self-contained text record of one negative
//! relation check. A certificate embeds the construction recipe, so replaying
//! it rebuilds the exact coloring, reruns the search, and confirms the
//! recorded verdicts.
//!
//! The format is line oriented with a fixed field order:
//!
//! ```text
//! cert 1
//! tool stepup 0.1.0
//! statement ground 32 uniformity 5 colors 2
//! thresholds 8 8
//! recipe-begin
//! base random 4 5 2 42
//! step alpha-one
//! recipe-end
//! base-maxima 4 4
//! color 0 threshold 8 max 7 pass
//! color 1 threshold 8 max >=8 fail witness 1 2 3 5 8
//! result fail
//! nodes 123456
//! elapsed-ms 42
//! ```
//!
//! `max` is exact for passing colors; for failing colors the search stops at
//! the threshold, so only the bound `>=t` is recorded (plus one witness set).
//! The `base-maxima` line is optional and carries measured per-color maxima
//! of the base coloring when the certificate was produced by a demo run.
//!
//! Replay compares statement, thresholds, per-color outcomes, and the overall
//! result. It does not compare witnesses, node counts, or timings: those may
//! legitimately differ across machines and job counts.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::recipe::Recipe;
use crate::search::{
    verify_negative_relation, ColorVerdict, RelationStatement, SearchOptions, VerificationOutcome,
};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    pub tool: String,
    pub statement: RelationStatement,
    pub recipe: Recipe,
    pub base_maxima: Option<Vec<u32>>,
    pub verdicts: Vec<ColorVerdict>,
    pub pass: bool,
    pub nodes: u64,
    pub elapsed_ms: u64,
}

/// Outcome of replaying a certificate against a freshly rebuilt coloring.
#[derive(Debug)]
pub struct ReplayReport {
    pub matches: bool,
    pub differences: Vec<String>,
    pub fresh: VerificationOutcome,
}

impl Certificate {
    pub fn from_outcome(
        recipe: &Recipe,
        outcome: &VerificationOutcome,
        base_maxima: Option<Vec<u32>>,
    ) -> Certificate {
        Certificate {
            tool: format!("stepup {}", env!("CARGO_PKG_VERSION")),
            statement: outcome.statement.clone(),
            recipe: recipe.clone(),
            base_maxima,
            verdicts: outcome.verdicts.clone(),
            pass: outcome.pass,
            nodes: outcome.nodes,
            elapsed_ms: outcome.elapsed_ms,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "cert 1");
        let _ = writeln!(out, "tool {}", self.tool);
        let s = &self.statement;
        let _ = writeln!(
            out,
            "statement ground {} uniformity {} colors {}",
            s.ground, s.uniformity, s.num_colors
        );
        let _ = writeln!(out, "thresholds {}", join(&s.thresholds));
        let _ = writeln!(out, "recipe-begin");
        out.push_str(&self.recipe.to_text());
        let _ = writeln!(out, "recipe-end");
        if let Some(maxima) = &self.base_maxima {
            let _ = writeln!(out, "base-maxima {}", join(maxima));
        }
        for v in &self.verdicts {
            let _ = write!(out, "color {} threshold {} max ", v.color, v.threshold);
            if v.reached {
                let _ = write!(out, ">={} fail", v.threshold);
            } else {
                let _ = write!(out, "{} pass", v.max_size);
            }
            if let Some(w) = &v.witness {
                let _ = write!(out, " witness {}", join(w));
            }
            out.push('\n');
        }
        let _ = writeln!(out, "result {}", if self.pass { "pass" } else { "fail" });
        let _ = writeln!(out, "nodes {}", self.nodes);
        let _ = writeln!(out, "elapsed-ms {}", self.elapsed_ms);
        out
    }

    pub fn from_text(text: &str) -> Result<Certificate> {
        let mut lines = text.lines().enumerate();
        let mut next = |expect: &str| -> Result<(usize, String)> {
            lines
                .next()
                .map(|(i, l)| (i + 1, l.to_string()))
                .ok_or_else(|| Error::input(format!("certificate ends before {expect} line")))
        };

        let (n, line) = next("header")?;
        if line.trim() != "cert 1" {
            return Err(Error::parse(n, format!("expected `cert 1`, got `{line}`")));
        }
        let (n, line) = next("tool")?;
        let tool = line
            .strip_prefix("tool ")
            .ok_or_else(|| Error::parse(n, "expected `tool ...`"))?
            .trim()
            .to_string();

        let (n, line) = next("statement")?;
        let f = fields(&line);
        let statement_raw = match f.as_slice() {
            ["statement", "ground", g, "uniformity", u, "colors", l] => {
                (parse_num::<u64>(n, "ground", g)?, parse_num::<u32>(n, "uniformity", u)?,
                 parse_num::<u32>(n, "colors", l)?)
            }
            _ => return Err(Error::parse(n, format!("cannot parse statement line `{line}`"))),
        };

        let (n, line) = next("thresholds")?;
        let thresholds = line
            .strip_prefix("thresholds")
            .ok_or_else(|| Error::parse(n, "expected `thresholds ...`"))?
            .split_whitespace()
            .map(|t| parse_num::<u32>(n, "threshold", t))
            .collect::<Result<Vec<u32>>>()?;
        let statement =
            RelationStatement::new(statement_raw.0, statement_raw.1, statement_raw.2, thresholds)?;

        let (n, line) = next("recipe-begin")?;
        if line.trim() != "recipe-begin" {
            return Err(Error::parse(n, format!("expected `recipe-begin`, got `{line}`")));
        }
        let mut recipe_text = String::new();
        let recipe = loop {
            let (n, line) = next("recipe-end")?;
            if line.trim() == "recipe-end" {
                break Recipe::parse(&recipe_text)
                    .map_err(|e| Error::input(format!("embedded recipe: {e}")))?;
            }
            recipe_text.push_str(&line);
            recipe_text.push('\n');
            if n > 100_000 {
                return Err(Error::parse(n, "runaway recipe block"));
            }
        };

        let mut base_maxima = None;
        let mut verdicts = Vec::new();
        let pass;
        let (mut n, mut line) = next("color verdicts")?;
        if let Some(rest) = line.strip_prefix("base-maxima") {
            base_maxima = Some(
                rest.split_whitespace()
                    .map(|t| parse_num::<u32>(n, "base maximum", t))
                    .collect::<Result<Vec<u32>>>()?,
            );
            (n, line) = next("color verdicts")?;
        }
        loop {
            if let Some(rest) = line.strip_prefix("result ") {
                pass = match rest.trim() {
                    "pass" => true,
                    "fail" => false,
                    other => {
                        return Err(Error::parse(
                            n,
                            format!("result must be pass or fail, got `{other}`"),
                        ))
                    }
                };
                break;
            }
            verdicts.push(parse_verdict(n, &line)?);
            (n, line) = next("result")?;
        }

        let (n, line) = next("nodes")?;
        let nodes = match fields(&line).as_slice() {
            ["nodes", v] => parse_num::<u64>(n, "nodes", v)?,
            _ => return Err(Error::parse(n, format!("expected `nodes N`, got `{line}`"))),
        };
        let (n, line) = next("elapsed-ms")?;
        let elapsed_ms = match fields(&line).as_slice() {
            ["elapsed-ms", v] => parse_num::<u64>(n, "elapsed-ms", v)?,
            _ => return Err(Error::parse(n, format!("expected `elapsed-ms T`, got `{line}`"))),
        };

        if verdicts.len() != statement.num_colors as usize {
            return Err(Error::input(format!(
                "certificate has {} color lines for {} colors",
                verdicts.len(),
                statement.num_colors
            )));
        }
        for (i, v) in verdicts.iter().enumerate() {
            if v.color != i as u32 {
                return Err(Error::input(format!(
                    "color lines out of order: expected color {i}, got {}",
                    v.color
                )));
            }
            if v.threshold != statement.thresholds[i] {
                return Err(Error::input(format!(
                    "color {i} threshold {} disagrees with statement threshold {}",
                    v.threshold, statement.thresholds[i]
                )));
            }
        }
        let recomputed_pass = verdicts.iter().all(|v| !v.reached);
        if recomputed_pass != pass {
            return Err(Error::input("result line disagrees with color verdicts"));
        }

        Ok(Certificate {
            tool,
            statement,
            recipe,
            base_maxima,
            verdicts,
            pass,
            nodes,
            elapsed_ms,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Certificate> {
        Certificate::from_text(&fs::read_to_string(path)?)
    }

    /// Rebuilds the coloring from the embedded recipe, reruns the
    /// verification, and compares against the recorded verdicts.
    pub fn replay(&self, dir: &Path, opts: &SearchOptions) -> Result<ReplayReport> {
        let oracle = self.recipe.build(dir)?;
        let mut differences = Vec::new();
        if self.statement.matches_oracle(oracle.as_ref()).is_err() {
            differences.push(format!(
                "statement mismatch: certificate says ground {} uniformity {} colors {}, \
                 rebuilt coloring has ground {} uniformity {} colors {}",
                self.statement.ground,
                self.statement.uniformity,
                self.statement.num_colors,
                oracle.ground_size(),
                oracle.uniformity(),
                oracle.num_colors(),
            ));
            return Ok(ReplayReport {
                matches: false,
                differences,
                fresh: VerificationOutcome {
                    statement: self.statement.clone(),
                    verdicts: Vec::new(),
                    pass: false,
                    nodes: 0,
                    elapsed_ms: 0,
                },
            });
        }
        let fresh = verify_negative_relation(oracle.as_ref(), &self.statement, opts)?;
        for (old, new) in self.verdicts.iter().zip(&fresh.verdicts) {
            if old.reached != new.reached {
                differences.push(format!(
                    "color {}: certificate says {}, replay says {}",
                    old.color,
                    if old.reached { "threshold reached" } else { "threshold not reached" },
                    if new.reached { "reached" } else { "not reached" },
                ));
            } else if !old.reached && old.max_size != new.max_size {
                differences.push(format!(
                    "color {}: certificate records max {}, replay found {}",
                    old.color, old.max_size, new.max_size
                ));
            }
        }
        if self.pass != fresh.pass {
            differences.push(format!(
                "result mismatch: certificate {}, replay {}",
                verdict_word(self.pass),
                verdict_word(fresh.pass)
            ));
        }
        Ok(ReplayReport { matches: differences.is_empty(), differences, fresh })
    }
}

fn verdict_word(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn fields(line: &str) -> Vec<&str> {
    line.split_whitespace().collect()
}

fn parse_num<T: std::str::FromStr>(line: usize, what: &str, text: &str) -> Result<T> {
    text.parse()
        .map_err(|_| Error::parse(line, format!("cannot parse {what} from `{text}`")))
}

fn parse_verdict(n: usize, line: &str) -> Result<ColorVerdict> {
    let f = fields(line);
    if f.len() < 7 || f[0] != "color" || f[2] != "threshold" || f[4] != "max" {
        return Err(Error::parse(n, format!("cannot parse color line `{line}`")));
    }
    let color = parse_num::<u32>(n, "color", f[1])?;
    let threshold = parse_num::<u32>(n, "threshold", f[3])?;
    let (max_size, reached) = if let Some(bound) = f[5].strip_prefix(">=") {
        (parse_num::<u32>(n, "max bound", bound)?, true)
    } else {
        (parse_num::<u32>(n, "max", f[5])?, false)
    };
    match (f[6], reached) {
        ("pass", false) | ("fail", true) => {}
        _ => {
            return Err(Error::parse(
                n,
                format!("color line verdict `{}` disagrees with its max field", f[6]),
            ))
        }
    }
    if reached && max_size != threshold {
        return Err(Error::parse(n, "failing color must record max >= its threshold"));
    }
    let witness = match f.get(7) {
        None => None,
        Some(&"witness") => Some(
            f[8..]
                .iter()
                .map(|t| parse_num::<u64>(n, "witness element", t))
                .collect::<Result<Vec<u64>>>()?,
        ),
        Some(other) => {
            return Err(Error::parse(n, format!("unexpected trailing field `{other}`")))
        }
    };
    Ok(ColorVerdict { color, threshold, max_size, reached, witness })
}
