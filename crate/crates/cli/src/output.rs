//! JSON documents and human tables for each verb. Counts are always decimal
//! strings; small denominators are JSON integers.

use std::io::{self, Write};

use motivic_core::analysis::{DecompositionReport, DetectReport, PolyVerdict, SemismallReport, Verdict, VerifyReport};
use motivic_core::enumerate::{CountMethod, CountRecord};
use motivic_core::ScaledClass;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

fn small_int(x: &BigInt) -> Value {
    match x.to_u64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

fn rat(x: &BigRational) -> String {
    x.to_string()
}

#[derive(Debug, Serialize)]
pub struct ClassJson {
    pub space: String,
    pub class: Option<String>,
    pub scalar_denominator: Option<Value>,
    pub expected_dimension: Option<usize>,
    pub note: Option<String>,
}

impl ClassJson {
    pub fn new(space: String, class: Option<&ScaledClass>, expected_dimension: Option<usize>, note: Option<String>) -> Self {
        ClassJson {
            space,
            class: class.map(|c| c.to_string()),
            scalar_denominator: class.map(|c| small_int(&c.denominator())),
            expected_dimension,
            note,
        }
    }

    pub fn write_table(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "space:     {}", self.space)?;
        match &self.class {
            Some(c) => writeln!(out, "class:     {c}")?,
            None => writeln!(out, "class:     (none)")?,
        }
        if let Some(d) = self.expected_dimension {
            writeln!(out, "dimension: {d}")?;
        }
        if let Some(n) = &self.note {
            writeln!(out, "note:      {n}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Serialize)]
pub struct CountJson {
    #[serde(flatten)]
    pub record: CountRecord,
    pub cached: bool,
}

impl CountJson {
    pub fn write_table(&self, out: &mut dyn Write) -> io::Result<()> {
        let r = &self.record;
        let mut how = r.method.to_string();
        if let Some(s) = &r.search_space {
            how.push_str(&format!(" of {s} candidates"));
        }
        if self.cached {
            how.push_str(", cached");
        }
        writeln!(out, "#{}(F_{}) = {}  ({how})", r.space, r.q, r.count)
    }
}

#[derive(Debug, Serialize)]
pub struct PolyJson {
    pub status: String,
    pub fitted: Option<String>,
    pub denominator: Option<Value>,
    pub witnesses: Vec<u32>,
    pub validation_primes: Vec<u32>,
}

impl From<&PolyVerdict> for PolyJson {
    fn from(v: &PolyVerdict) -> Self {
        PolyJson {
            status: v.status.to_string(),
            fitted: v.fitted.as_ref().map(|f| f.to_string()),
            denominator: v.denominator.as_ref().map(small_int),
            witnesses: v.witnesses.clone(),
            validation_primes: v.validation_primes.clone(),
        }
    }
}

fn write_poly(out: &mut dyn Write, verdict: &Option<PolyVerdict>, note: &Option<String>) -> io::Result<()> {
    match verdict {
        Some(v) => {
            write!(out, "polynomial: {}", v.status)?;
            if let Some(f) = &v.fitted {
                write!(out, ", {f}")?;
            }
            writeln!(out)?;
            writeln!(out, "  fitted on q = {:?}, checked on q = {:?}", v.witnesses, v.validation_primes)
        }
        None => writeln!(out, "polynomial: no verdict ({})", note.as_deref().unwrap_or("not enough points")),
    }
}

#[derive(Debug, Serialize)]
pub struct RecordJson {
    pub q: u32,
    pub symbolic: Option<String>,
    pub formula: Option<String>,
    pub enumeration: Option<String>,
    pub enumeration_note: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct VerifyJson {
    pub space: String,
    pub class: Option<String>,
    pub scalar_denominator: Option<Value>,
    pub class_note: Option<String>,
    pub records: Vec<RecordJson>,
    pub verdict: String,
    pub disagreements: Vec<String>,
    pub max_degree: usize,
    pub poly_verdict: Option<PolyJson>,
    pub poly_note: Option<String>,
}

impl From<&VerifyReport> for VerifyJson {
    fn from(r: &VerifyReport) -> Self {
        let (verdict, disagreements) = match &r.verdict {
            Verdict::Agree => ("agree", Vec::new()),
            Verdict::Disagree(d) => ("disagree", d.clone()),
        };
        VerifyJson {
            space: r.space.clone(),
            class: r.class.as_ref().map(|c| c.to_string()),
            scalar_denominator: r.class.as_ref().map(|c| small_int(&c.denominator())),
            class_note: r.class_note.clone(),
            records: r
                .records
                .iter()
                .map(|p| RecordJson {
                    q: p.q,
                    symbolic: p.symbolic.as_ref().map(rat),
                    formula: p.formula.as_ref().map(rat),
                    enumeration: p.enumeration.as_ref().map(|e| e.to_string()),
                    enumeration_note: p.enumeration_note.clone(),
                })
                .collect(),
            verdict: verdict.to_string(),
            disagreements,
            max_degree: r.poly.max_degree,
            poly_verdict: r.poly.verdict.as_ref().map(PolyJson::from),
            poly_note: r.poly.note.clone(),
        }
    }
}

fn cell(x: &Option<String>) -> &str {
    x.as_deref().unwrap_or("-")
}

pub fn write_verify_table(report: &VerifyReport, out: &mut dyn Write) -> io::Result<()> {
    let j = VerifyJson::from(report);
    writeln!(out, "space: {}", j.space)?;
    match (&j.class, &j.class_note) {
        (Some(c), _) => writeln!(out, "class: {c}")?,
        (None, Some(n)) => writeln!(out, "class: (not a polynomial: {n})")?,
        (None, None) => writeln!(out, "class: (none catalogued)")?,
    }
    let rows: Vec<[String; 4]> = j
        .records
        .iter()
        .map(|r| {
            let e = match (&r.enumeration, &r.enumeration_note) {
                (Some(e), _) => e.clone(),
                (None, Some(_)) => "over budget".to_string(),
                (None, None) => "-".to_string(),
            };
            [r.q.to_string(), cell(&r.symbolic).to_string(), cell(&r.formula).to_string(), e]
        })
        .collect();
    write_grid(out, &["q", "symbolic", "formula", "enumeration"], &rows)?;
    writeln!(out, "verdict: {}", j.verdict)?;
    for d in &j.disagreements {
        writeln!(out, "  {d}")?;
    }
    write_poly(out, &report.poly.verdict, &report.poly.note)
}

#[derive(Debug, Serialize)]
pub struct PointJson {
    pub q: u32,
    pub value: String,
    pub method: CountMethod,
}

#[derive(Debug, Serialize)]
pub struct DetectJson {
    pub space: String,
    pub max_degree: usize,
    pub points: Vec<PointJson>,
    pub poly_verdict: Option<PolyJson>,
    pub note: Option<String>,
}

impl From<&DetectReport> for DetectJson {
    fn from(r: &DetectReport) -> Self {
        DetectJson {
            space: r.space.clone(),
            max_degree: r.max_degree,
            points: r.points.iter().map(|p| PointJson { q: p.q, value: rat(&p.value), method: p.method }).collect(),
            poly_verdict: r.verdict.as_ref().map(PolyJson::from),
            note: r.note.clone(),
        }
    }
}

pub fn write_detect_table(report: &DetectReport, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "space: {}  (degree bound {})", report.space, report.max_degree)?;
    let rows: Vec<[String; 3]> =
        report.points.iter().map(|p| [p.q.to_string(), rat(&p.value), p.method.to_string()]).collect();
    write_grid(out, &["q", "count", "method"], &rows)?;
    write_poly(out, &report.verdict, &report.note)
}

pub fn write_semismall_table(report: &SemismallReport, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "n = {}, dim I = {}", report.n, report.dim_incidence)?;
    let rows: Vec<[String; 5]> = report
        .strata
        .iter()
        .map(|s| {
            let status = match (s.passes, s.relevant) {
                (true, true) => "equality",
                (true, false) => "ok",
                (false, _) => "FAILS",
            };
            [
                s.info.rank.to_string(),
                s.info.stratum_dim.to_string(),
                s.info.fiber_dim.to_string(),
                s.info.defect.to_string(),
                status.to_string(),
            ]
        })
        .collect();
    write_grid(out, &["r", "dim S_r", "fibre dim", "delta", ""], &rows)?;
    writeln!(out, "semi-small: {}; relevant strata r = {:?}", if report.all_pass { "yes" } else { "no" }, report.relevant_ranks)
}

#[derive(Debug, Serialize)]
pub struct DecompRowJson {
    pub q: u32,
    pub incidence: String,
    pub bundle: String,
    pub y: String,
    pub sbar: String,
    pub rhs: String,
    pub difference: String,
    pub holds: bool,
    pub bundle_holds: bool,
}

#[derive(Debug, Serialize)]
pub struct DecompJson {
    pub n: u32,
    pub holds: bool,
    pub rows: Vec<DecompRowJson>,
}

impl From<&DecompositionReport> for DecompJson {
    fn from(r: &DecompositionReport) -> Self {
        DecompJson {
            n: r.n,
            holds: r.holds(),
            rows: r
                .rows
                .iter()
                .map(|row| DecompRowJson {
                    q: row.q,
                    incidence: row.incidence.to_string(),
                    bundle: row.bundle.to_string(),
                    y: row.y.to_string(),
                    sbar: row.sbar.to_string(),
                    rhs: row.rhs.to_string(),
                    difference: row.discrepancy().to_string(),
                    holds: row.holds,
                    bundle_holds: row.bundle_holds,
                })
                .collect(),
        }
    }
}

pub fn write_decomp_table(report: &DecompositionReport, out: &mut dyn Write) -> io::Result<()> {
    let j = DecompJson::from(report);
    writeln!(out, "n = {}: #I = #Y + q #Sbar_(n-2) and #I = #P^(n-1) #P^(N-n-1)", j.n)?;
    let rows: Vec<[String; 8]> = j
        .rows
        .iter()
        .map(|r| {
            [
                r.q.to_string(),
                r.incidence.clone(),
                r.bundle.clone(),
                r.y.clone(),
                r.sbar.clone(),
                r.rhs.clone(),
                r.difference.clone(),
                if r.holds && r.bundle_holds { "holds" } else { "FAILS" }.to_string(),
            ]
        })
        .collect();
    write_grid(out, &["q", "#I", "bundle", "#Y", "#Sbar", "#Y+q#Sbar", "diff", ""], &rows)
}

#[derive(Debug, Serialize)]
pub struct ReportJson {
    pub primes: Vec<u32>,
    pub all_agree: bool,
    pub spaces: Vec<VerifyJson>,
}

pub fn write_report_table(reports: &[VerifyReport], out: &mut dyn Write) -> io::Result<()> {
    let rows: Vec<[String; 4]> = reports
        .iter()
        .map(|r| {
            let j = VerifyJson::from(r);
            let poly = match &j.poly_verdict {
                Some(p) => match (&p.status[..], &p.fitted) {
                    ("no_polynomial_fit", _) | (_, None) => p.status.clone(),
                    (s, Some(f)) => format!("{s}: {f}"),
                },
                None => "no verdict".to_string(),
            };
            [j.space, j.class.unwrap_or_else(|| "-".into()), j.verdict, poly]
        })
        .collect();
    write_grid(out, &["space", "class", "verdict", "counting function"], &rows)
}

/// Left-aligned columns separated by two spaces.
fn write_grid<const N: usize>(out: &mut dyn Write, header: &[&str; N], rows: &[[String; N]]) -> io::Result<()> {
    let mut widths = header.map(str::len);
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}
