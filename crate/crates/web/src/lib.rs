//! Browser bindings. Each call returns a JSON report or an aligned text
//! table, or throws a string on bad input.

use qspectra::analysis::{analyze, Options};
use qspectra::input::parse_problem;
use qspectra::report::{betti_records, mrd_report, Report};
use qspectra::spectra::uniform_betti_table;
use qspectra::Error;
use wasm_bindgen::prelude::*;

/// Browsers get a much smaller budget than the CLI.
const SUBSPACE_CAP: u64 = 200_000;

fn options(r: u32) -> Options {
    Options {
        r,
        subspace_cap: SUBSPACE_CAP,
        ..Options::default()
    }
}

fn render(rep: &Report, text: bool) -> String {
    if text {
        rep.to_text()
    } else {
        rep.to_json()
    }
}

fn fail(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Full pipeline on a JSON specification.
#[wasm_bindgen]
pub fn analyze_spec(spec: &str, r: u32, text: bool) -> Result<String, JsError> {
    let pr = parse_problem(spec).map_err(fail)?;
    let a = analyze(&pr, &options(r)).map_err(fail)?;
    Ok(render(&Report::new("analyze", &pr).with_all(&a), text))
}

/// Closed-form MRD spectrum next to the lattice pipeline.
#[wasm_bindgen]
pub fn mrd_spectrum(q: u32, m: u32, n: u32, k: u32, r: u32, text: bool) -> Result<String, JsError> {
    let rep = mrd_report(q.into(), m as usize, n as usize, k as usize, &options(r)).map_err(fail)?;
    Ok(render(&rep, text))
}

/// Betti numbers of `U(k, n)` from the closed recursion alone; no
/// enumeration, so large `n` is fine.
#[wasm_bindgen]
pub fn uniform_betti(q: u32, n: u32, k: u32) -> Result<String, JsError> {
    let t = uniform_betti_table(q.into(), n as usize, k as usize).map_err(fail)?;
    let mut out = String::from("l  i  j  beta\n");
    for b in betti_records(&t) {
        out.push_str(&format!("{}  {}  {}  {}\n", b.l, b.i, b.j_dim, b.value));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mrd_text_mentions_agreement() {
        let out = mrd_spectrum(2, 4, 4, 2, 1, true).unwrap();
        assert!(out.contains("spectra agree: true"));
        assert!(out.contains("recursion matches lattice: true"));
    }

    #[test]
    fn uniform_betti_lines() {
        let out = uniform_betti(2, 4, 2).unwrap();
        assert!(out.lines().any(|l| l == "0  1  3  15"), "{out}");
    }

    #[test]
    fn analyze_golden_json() {
        let spec = include_str!("../../cli/specs/f16_code.json");
        let out = analyze_spec(spec, 1, false).unwrap();
        assert!(out.contains("2460"));
    }
}
