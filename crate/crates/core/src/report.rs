//! Serializable reports and their text and CSV renderings.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::analysis::{analyze, Analysis, Options};
use crate::error::Result;
use crate::input::{Problem, ProblemKind};
use crate::lattice::BettiTable;
use crate::spectra::{mrd_closed_form, uniform_betti_table, uniform_h};
use crate::verify::{Status, Verdict};

/// An exact integer: a JSON number when it fits in `i64`, otherwise a
/// decimal string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Int(pub BigInt);

impl From<&BigInt> for Int {
    fn from(v: &BigInt) -> Self {
        Int(v.clone())
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct IntVisitor;
        impl Visitor<'_> for IntVisitor {
            type Value = Int;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Int, E> {
                v.parse().map(Int).map_err(E::custom)
            }
        }
        d.deserialize_any(IntVisitor)
    }
}

fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().map(Int::from).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub q: u64,
    pub m: usize,
    pub n: usize,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub r: u32,
    pub evaluation_point: Int,
    #[serde(rename = "A")]
    pub a: Vec<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiRecord {
    pub l: usize,
    pub j: usize,
    pub value: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRecord {
    pub l: usize,
    pub i: usize,
    pub j_dim: usize,
    pub j_classical: Int,
    pub value: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MrdSection {
    pub closed_form: Vec<Int>,
    pub pipeline: Vec<Int>,
    pub agree: bool,
    /// `h^{(l)}_i` for `i = 1..=k−l`, one row per level `l`.
    pub h: Vec<Vec<Int>>,
    pub recursion_betti: Vec<BettiRecord>,
    pub betti_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec_sha256: Option<String>,
    pub parameters: Parameters,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomials: Option<Vec<Vec<Int>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Spectrum>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub higher: Option<Vec<Vec<Int>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<PhiRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<BettiRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mrd: Option<MrdSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Vec<Verdict>>,
}

pub fn betti_records(t: &BettiTable) -> Vec<BettiRecord> {
    t.records()
        .into_iter()
        .map(|r| BettiRecord {
            l: r.l,
            i: r.i,
            j_dim: r.j_dim,
            j_classical: Int(r.j_classical),
            value: Int(r.value),
        })
        .collect()
}

impl Report {
    pub fn new(command: &str, pr: &Problem) -> Self {
        let kind = match pr.kind {
            ProblemKind::Generator => "generator",
            ProblemKind::Uniform => "uniform",
            ProblemKind::Gabidulin => "mrd_gabidulin",
        };
        Report {
            tool: "qspectra".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            spec_sha256: None,
            parameters: Parameters {
                kind: kind.into(),
                name: pr.name.clone(),
                q: pr.q(),
                m: pr.m,
                n: pr.n(),
                k: pr.k(),
            },
            weights: None,
            polynomials: None,
            spectrum: None,
            higher: None,
            phi: None,
            betti: None,
            mrd: None,
            verdicts: None,
        }
    }

    pub fn with_weights(mut self, a: &Analysis) -> Self {
        self.weights = Some(a.weights.clone());
        self
    }

    pub fn with_polynomials(mut self, a: &Analysis) -> Self {
        self.polynomials = Some(a.polys.iter().map(|p| ints(p.coeffs())).collect());
        self
    }

    pub fn with_spectrum(mut self, a: &Analysis) -> Self {
        self.spectrum = Some(Spectrum {
            r: a.spectrum.r,
            evaluation_point: Int::from(&a.spectrum.evaluation_point),
            a: ints(&a.spectrum.distribution),
        });
        self
    }

    pub fn with_higher(mut self, a: &Analysis) -> Self {
        self.higher = Some(a.spectrum.higher.iter().map(|row| ints(row)).collect());
        self
    }

    pub fn with_betti(mut self, a: &Analysis) -> Self {
        self.betti = Some(betti_records(&a.betti));
        let mut phi = Vec::new();
        for (l, row) in a.phi.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                phi.push(PhiRecord { l, j, value: Int::from(v) });
            }
        }
        self.phi = Some(phi);
        self
    }

    pub fn with_all(self, a: &Analysis) -> Self {
        self.with_weights(a)
            .with_polynomials(a)
            .with_spectrum(a)
            .with_higher(a)
            .with_betti(a)
    }

    pub fn with_verdicts(mut self, v: Vec<Verdict>) -> Self {
        self.verdicts = Some(v);
        self
    }

    /// True unless some verdict failed or the MRD comparisons disagree.
    pub fn passed(&self) -> bool {
        let verdicts_ok = self
            .verdicts
            .as_ref()
            .is_none_or(|v| v.iter().all(|x| x.status != Status::Fail));
        let mrd_ok = self.mrd.as_ref().is_none_or(|m| m.agree && m.betti_agree);
        verdicts_ok && mrd_ok
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Spectra only, in long form: `section,row,column,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("section,row,column,value\n");
        if let Some(s) = &self.spectrum {
            for (col, v) in s.a.iter().enumerate() {
                let _ = writeln!(out, "spectrum,{},{col},{v}", s.r);
            }
        }
        if let Some(m) = &self.mrd {
            for (col, v) in m.closed_form.iter().enumerate() {
                let _ = writeln!(out, "mrd_closed_form,1,{col},{v}");
            }
            for (col, v) in m.pipeline.iter().enumerate() {
                let _ = writeln!(out, "mrd_pipeline,1,{col},{v}");
            }
        }
        if let Some(h) = &self.higher {
            for (i, row) in h.iter().enumerate() {
                for (w, v) in row.iter().enumerate() {
                    let _ = writeln!(out, "higher,{i},{w},{v}");
                }
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = &self.parameters;
        let _ = writeln!(out, "{} {}  {}", self.tool, self.version, self.command);
        let name = p.name.as_deref().map(|n| format!("  \"{n}\"")).unwrap_or_default();
        let _ = writeln!(out, "{}: q={} m={} n={} k={}{name}", p.kind, p.q, p.m, p.n, p.k);
        if let Some(h) = &self.spec_sha256 {
            let _ = writeln!(out, "spec sha256: {h}");
        }
        if let Some(w) = &self.weights {
            let ws: Vec<String> = w.iter().map(|d| d.to_string()).collect();
            let _ = writeln!(out, "\ngeneralized weights d_1..d_{}: {}", w.len(), ws.join(" "));
        }
        if let Some(polys) = &self.polynomials {
            let rows = polys
                .iter()
                .enumerate()
                .map(|(s, c)| {
                    let p = crate::spectra::WeightPolynomial::new(c.iter().map(|x| x.0.clone()).collect());
                    vec![s.to_string(), p.to_string()]
                })
                .collect();
            out.push_str("\nweight polynomials\n");
            out.push_str(&table(&["s", "P_s(X)"], rows));
        }
        if let Some(s) = &self.spectrum {
            let _ = writeln!(out, "\nspectrum at Q^{} = {}", s.r, s.evaluation_point);
            let rows = s.a.iter().enumerate().map(|(i, v)| vec![i.to_string(), v.to_string()]).collect();
            out.push_str(&table(&["s", "A_s"], rows));
        }
        if let Some(h) = &self.higher {
            out.push_str("\nhigher spectra A^(i)_w\n");
            let width = h.first().map_or(0, |r| r.len());
            let mut headers = vec!["i".to_string()];
            headers.extend((0..width).map(|w| format!("w={w}")));
            let rows = h
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let mut r = vec![i.to_string()];
                    r.extend(row.iter().map(|v| v.to_string()));
                    r
                })
                .collect();
            let hdr: Vec<&str> = headers.iter().map(String::as_str).collect();
            out.push_str(&table(&hdr, rows));
        }
        if let Some(b) = &self.betti {
            out.push_str("\nvirtual Betti numbers\n");
            out.push_str(&betti_text(b));
        }
        if let Some(phi) = &self.phi {
            out.push_str("\nphi\n");
            let rows = phi
                .iter()
                .filter(|r| r.value.0 != BigInt::from(0))
                .map(|r| vec![r.l.to_string(), r.j.to_string(), r.value.to_string()])
                .collect();
            out.push_str(&table(&["l", "j", "value"], rows));
        }
        if let Some(m) = &self.mrd {
            out.push_str("\nMRD spectrum\n");
            let rows = m
                .closed_form
                .iter()
                .zip(&m.pipeline)
                .enumerate()
                .map(|(s, (c, p))| vec![s.to_string(), c.to_string(), p.to_string()])
                .collect();
            out.push_str(&table(&["s", "closed form", "pipeline"], rows));
            let _ = writeln!(out, "spectra agree: {}", m.agree);
            out.push_str("\nh^(l)_i\n");
            let rows = m
                .h
                .iter()
                .enumerate()
                .map(|(l, row)| {
                    let vals: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                    vec![l.to_string(), vals.join(" ")]
                })
                .collect();
            out.push_str(&table(&["l", "h_1 h_2 ..."], rows));
            out.push_str("\nBetti numbers from the recursion\n");
            out.push_str(&betti_text(&m.recursion_betti));
            let _ = writeln!(out, "recursion matches lattice: {}", m.betti_agree);
        }
        if let Some(v) = &self.verdicts {
            out.push_str("\nverification\n");
            let rows = v
                .iter()
                .map(|x| {
                    let status = match x.status {
                        Status::Pass => "pass",
                        Status::Fail => "FAIL",
                        Status::Skip => "skip",
                    };
                    vec![x.check.clone(), status.to_string(), x.witness.clone().unwrap_or_default()]
                })
                .collect();
            out.push_str(&table(&["check", "status", "detail"], rows));
        }
        out
    }
}

/// Closed-form MRD spectrum next to the pipeline run on `U(k, n)`, with
/// the recursion's Betti table. Spectra are taken at `q^{m r}`; an
/// extension of an MRD code with `n ≤ m` is again MRD.
pub fn mrd_report(q: u64, m: usize, n: usize, k: usize, opts: &Options) -> Result<Report> {
    let closed = mrd_closed_form(q, m * opts.r as usize, n, k)?;
    let pr = Problem::uniform(q, k, n, m)?;
    let a = analyze(&pr, opts)?;
    let recursion = uniform_betti_table(q, n, k)?;
    let h = (0..=k).map(|l| ints(&uniform_h(q, n, k, l))).collect();
    let mut rep = Report::new("mrd", &pr).with_all(&a);
    rep.mrd = Some(MrdSection {
        agree: closed == a.spectrum.distribution,
        closed_form: ints(&closed),
        pipeline: ints(&a.spectrum.distribution),
        h,
        betti_agree: recursion == a.betti,
        recursion_betti: betti_records(&recursion),
    });
    Ok(rep)
}

fn betti_text(b: &[BettiRecord]) -> String {
    let rows = b
        .iter()
        .map(|r| {
            vec![
                r.l.to_string(),
                r.i.to_string(),
                r.j_dim.to_string(),
                r.j_classical.to_string(),
                r.value.to_string(),
            ]
        })
        .collect();
    table(&["l", "i", "j", "[j]", "beta"], rows)
}

/// Columns whose cells are all integers are right-aligned, header included.
fn table(headers: &[&str], rows: Vec<Vec<String>>) -> String {
    let is_int = |c: &str| !c.is_empty() && c.trim_start_matches('-').chars().all(|ch| ch.is_ascii_digit());
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    let mut numeric = vec![!rows.is_empty(); headers.len()];
    for r in &rows {
        for (i, c) in r.iter().enumerate() {
            widths[i] = widths[i].max(c.chars().count());
            numeric[i] &= is_int(c);
        }
    }
    let line = |cells: &[&str]| -> String {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            let pad = " ".repeat(widths[i] - c.chars().count());
            s.push_str("  ");
            if numeric[i] {
                s.push_str(&pad);
                s.push_str(c);
            } else {
                s.push_str(c);
                s.push_str(&pad);
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(headers);
    for r in &rows {
        out.push_str(&line(&r.iter().map(String::as_str).collect::<Vec<_>>()));
    }
    out
}
