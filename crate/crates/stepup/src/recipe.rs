//! Construction recipes: a base coloring plus a chain of step directives,
//! serializable as a small text file and buildable into a lazy coloring
//! oracle. Recipes are how certificates stay replayable: the recipe text
//! pins down the witness coloring exactly.
//!
//! Format, one directive per line (`#` comments and blank lines allowed):
//!
//! ```text
//! base <file.kcol>            or   base random <k> <N> <ell> <seed>
//! step alpha <file.alpha>
//! step alpha-eh
//! step alpha-one
//! step alpha-chi parity
//! step alpha-chi three
//! step two-to-three
//! ```
//!
//! Steps compose left to right. File names are resolved relative to the
//! directory handed to [`Recipe::build`].

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use crate::coloring::{load_coloring, ColoringOracle, KUniformColoring};
use crate::error::{Error, Result};
use crate::stepup::{
    load_alpha, make_alpha_chi, make_alpha_eh, make_alpha_one, proper_coloring_parity,
    proper_coloring_three, stepup2to3_oracle, stepup_oracle,
};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BaseSpec {
    File(String),
    Random { k: u32, n: u64, ell: u32, seed: u64 },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StepDirective {
    AlphaFile(String),
    AlphaEh,
    AlphaOne,
    AlphaChiParity,
    AlphaChiThree,
    TwoToThree,
}

impl StepDirective {
    /// Parses the directive part of a `step` line, e.g. `alpha-one` or
    /// `alpha tables/my.alpha`.
    pub fn parse(text: &str) -> Result<StepDirective> {
        let fields: Vec<&str> = text.split_whitespace().collect();
        match fields.as_slice() {
            ["alpha", file] => Ok(StepDirective::AlphaFile((*file).to_string())),
            ["alpha-eh"] => Ok(StepDirective::AlphaEh),
            ["alpha-one"] => Ok(StepDirective::AlphaOne),
            ["alpha-chi", "parity"] => Ok(StepDirective::AlphaChiParity),
            ["alpha-chi", "three"] => Ok(StepDirective::AlphaChiThree),
            ["two-to-three"] => Ok(StepDirective::TwoToThree),
            _ => Err(Error::input(format!(
                "unknown step directive `{text}`; expected `alpha <file>`, `alpha-eh`, \
                 `alpha-one`, `alpha-chi parity`, `alpha-chi three`, or `two-to-three`"
            ))),
        }
    }

    fn render(&self) -> String {
        match self {
            StepDirective::AlphaFile(f) => format!("alpha {f}"),
            StepDirective::AlphaEh => "alpha-eh".to_string(),
            StepDirective::AlphaOne => "alpha-one".to_string(),
            StepDirective::AlphaChiParity => "alpha-chi parity".to_string(),
            StepDirective::AlphaChiThree => "alpha-chi three".to_string(),
            StepDirective::TwoToThree => "two-to-three".to_string(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Recipe {
    pub base: BaseSpec,
    pub steps: Vec<StepDirective>,
}

impl Recipe {
    pub fn parse(text: &str) -> Result<Recipe> {
        let mut base = None;
        let mut steps = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match head {
                "base" => {
                    if base.is_some() {
                        return Err(Error::parse(i + 1, "second `base` directive"));
                    }
                    if !steps.is_empty() {
                        return Err(Error::parse(i + 1, "`base` must come before steps"));
                    }
                    base = Some(parse_base(i + 1, rest.trim())?);
                }
                "step" => {
                    if base.is_none() {
                        return Err(Error::parse(i + 1, "`step` before `base`"));
                    }
                    let d = StepDirective::parse(rest.trim())
                        .map_err(|e| Error::parse(i + 1, e.to_string()))?;
                    steps.push(d);
                }
                other => {
                    return Err(Error::parse(
                        i + 1,
                        format!("unknown directive `{other}`; expected `base` or `step`"),
                    ));
                }
            }
        }
        let base = base.ok_or_else(|| Error::input("recipe has no `base` directive"))?;
        Ok(Recipe { base, steps })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.base {
            BaseSpec::File(f) => {
                let _ = writeln!(out, "base {f}");
            }
            BaseSpec::Random { k, n, ell, seed } => {
                let _ = writeln!(out, "base random {k} {n} {ell} {seed}");
            }
        }
        for s in &self.steps {
            let _ = writeln!(out, "step {}", s.render());
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Recipe> {
        let text = fs::read_to_string(path)?;
        Recipe::parse(&text)
    }

    /// Builds the coloring oracle this recipe describes. `dir` anchors
    /// relative file names (usually the directory of the recipe file).
    pub fn build(&self, dir: &Path) -> Result<Arc<dyn ColoringOracle>> {
        let base: KUniformColoring = match &self.base {
            BaseSpec::File(f) => load_coloring(&dir.join(f))
                .map_err(|e| Error::input(format!("base `{f}`: {e}")))?,
            BaseSpec::Random { k, n, ell, seed } => KUniformColoring::random(*k, *n, *ell, *seed)?,
        };
        let mut current: Arc<dyn ColoringOracle> = Arc::new(base);
        for (i, step) in self.steps.iter().enumerate() {
            current = apply_directive(current, step, dir)
                .map_err(|e| Error::input(format!("step {} ({}): {e}", i + 1, step.render())))?;
        }
        Ok(current)
    }
}

fn parse_base(line: usize, rest: &str) -> Result<BaseSpec> {
    let fields: Vec<&str> = rest.split_whitespace().collect();
    match fields.as_slice() {
        [] => Err(Error::parse(line, "`base` needs a file name or `random k N ell seed`")),
        ["random", k, n, ell, seed] => {
            let parse_int = |what: &str, text: &str| -> Result<u64> {
                text.parse()
                    .map_err(|_| Error::parse(line, format!("cannot parse {what} from `{text}`")))
            };
            Ok(BaseSpec::Random {
                k: parse_int("k", k)? as u32,
                n: parse_int("N", n)?,
                ell: parse_int("ell", ell)? as u32,
                seed: parse_int("seed", seed)?,
            })
        }
        [file] => Ok(BaseSpec::File((*file).to_string())),
        _ => Err(Error::parse(line, format!("cannot parse base spec `{rest}`"))),
    }
}

fn apply_directive(
    current: Arc<dyn ColoringOracle>,
    step: &StepDirective,
    dir: &Path,
) -> Result<Arc<dyn ColoringOracle>> {
    let k = current.uniformity();
    let ell = current.num_colors();
    Ok(match step {
        StepDirective::AlphaFile(f) => {
            let alpha = load_alpha(&dir.join(f))?;
            Arc::new(stepup_oracle(current, alpha)?)
        }
        StepDirective::AlphaEh => Arc::new(stepup_oracle(current, make_alpha_eh(k, ell)?)?),
        StepDirective::AlphaOne => Arc::new(stepup_oracle(current, make_alpha_one(k, ell)?)?),
        StepDirective::AlphaChiParity => {
            let chi = proper_coloring_parity(k)?;
            Arc::new(stepup_oracle(current, make_alpha_chi(k, ell, &chi)?)?)
        }
        StepDirective::AlphaChiThree => {
            let chi = proper_coloring_three(k)?;
            Arc::new(stepup_oracle(current, make_alpha_chi(k, ell, &chi)?)?)
        }
        StepDirective::TwoToThree => Arc::new(stepup2to3_oracle(current)?),
    })
}
