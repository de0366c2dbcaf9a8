//! Browser bindings: three operations on a pasted category, each returning
//! the same text summary the command line prints.

use relcat::fincat::RawCategory;
use relcat::report::{run, text_summary, Command, Config, InputSpec};
use relcat::Limits;
use wasm_bindgen::prelude::*;

/// Kept small so a pasted category cannot freeze the page.
const PAGE_BUDGET: usize = 20_000;

fn config() -> Config {
    Config {
        limits: Limits::default().with_budget(PAGE_BUDGET),
        ..Config::default()
    }
}

fn input(category: &str) -> Result<InputSpec, String> {
    Ok(InputSpec {
        construction: None,
        category: RawCategory::from_json(category).map_err(|e| e.to_string())?,
    })
}

fn summarize(command: Command, category: &str, config: Config) -> Result<String, String> {
    let doc = run(command, &input(category)?, &config).map_err(|e| e.to_string())?;
    Ok(text_summary(&doc))
}

/// Parses "-1,1,-1" or "-1;1;-1", brackets optional.
fn parse_type(text: &str) -> Result<Vec<i64>, String> {
    text.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split([',', ';'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| format!("`{s}` is not an integer"))
        })
        .collect()
}

/// Validation and nerve homology through degree `d`.
pub fn homology_text(category: &str, d: usize) -> Result<String, String> {
    let mut out = summarize(Command::Validate, category, config())?;
    out.push_str(&summarize(
        Command::NerveHomology,
        category,
        Config { d, ..config() },
    )?);
    Ok(out)
}

/// The zigzag category of the given type between two objects.
pub fn zigzag_text(category: &str, zigzag_type: &str, x: &str, y: &str) -> Result<String, String> {
    let config = Config {
        zigzag_type: Some(parse_type(zigzag_type)?),
        x: Some(x.trim().to_string()),
        y: Some(y.trim().to_string()),
        ..config()
    };
    summarize(Command::Zigzag, category, config)
}

/// The three-arrow calculus up to `k` followed by the Segal square for `n`.
pub fn segal_text(category: &str, k: usize, n: usize, d: usize) -> Result<String, String> {
    let mut out = summarize(Command::Htac, category, Config { k, d, ..config() })?;
    out.push_str(&summarize(
        Command::Segal,
        category,
        Config { n, d, ..config() },
    )?);
    Ok(out)
}

#[wasm_bindgen]
pub fn nerve_homology(category: &str, d: usize) -> Result<String, JsError> {
    homology_text(category, d).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn zigzag_category(
    category: &str,
    zigzag_type: &str,
    x: &str,
    y: &str,
) -> Result<String, JsError> {
    zigzag_text(category, zigzag_type, x, y).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn segal_report(category: &str, k: usize, n: usize, d: usize) -> Result<String, JsError> {
    segal_text(category, k, n, d).map_err(|e| JsError::new(&e))
}
