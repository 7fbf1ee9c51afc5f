//! JSON and text reports emitted by the command-line tool.
//!
//! Every report carries `"schema": "arithinv/1"` and a `kind`. Field order
//! is fixed by the struct definitions and polynomials are written in their
//! canonical text form, so parsing a report and writing it again
//! reproduces the same bytes.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::MatrixGroup;
use crate::invariants::{
    CertifiedHsop, CmProbe, CmVerdict, FlatnessReport, GeneratorSet, Hsop, HsopCertificate, InvariantBasis,
    MolienSeries, Provenance, SecondaryGenerators, Verdict,
};
use crate::linalg::RingDescriptor;

pub const SCHEMA: &str = "arithinv/1";

fn schema() -> String {
    SCHEMA.to_string()
}

fn ring_name(r: RingDescriptor) -> String {
    r.to_string()
}

fn texts<'a>(polys: impl IntoIterator<Item = &'a crate::poly::Polynomial>) -> Vec<String> {
    polys.into_iter().map(ToString::to_string).collect()
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub schema: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ring: String,
    pub n: usize,
    pub order: usize,
    pub audit: bool,
}

impl ClosureReport {
    pub fn new(g: &MatrixGroup, name: Option<String>) -> Self {
        ClosureReport {
            schema: schema(),
            kind: "closure".into(),
            name,
            ring: ring_name(g.ring()),
            n: g.dimension(),
            order: g.order(),
            audit: g.audit(),
        }
    }
}

impl fmt::Display for ClosureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring: {}", self.ring)?;
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "order: {}", self.order)?;
        writeln!(f, "audit: {}", if self.audit { "ok" } else { "FAILED" })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub schema: String,
    pub kind: String,
    pub ring: String,
    pub n: usize,
    pub degree: u32,
    pub dimension: usize,
    pub basis: Vec<String>,
}

impl InvariantsReport {
    pub fn new(g: &MatrixGroup, b: &InvariantBasis) -> Self {
        InvariantsReport {
            schema: schema(),
            kind: "invariants".into(),
            ring: ring_name(b.ring),
            n: g.dimension(),
            degree: b.degree,
            dimension: b.dimension(),
            basis: texts(&b.polynomials),
        }
    }
}

impl fmt::Display for InvariantsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree {} invariants over {}: dimension {}", self.degree, self.ring, self.dimension)?;
        for p in &self.basis {
            writeln!(f, "  {p}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreePolynomial {
    pub degree: u32,
    pub polynomial: String,
}

fn degree_polys(list: &[(u32, crate::poly::Polynomial)]) -> Vec<DegreePolynomial> {
    list.iter()
        .map(|(d, p)| DegreePolynomial {
            degree: *d,
            polynomial: p.to_string(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsReport {
    pub schema: String,
    pub kind: String,
    pub ring: String,
    pub n: usize,
    pub order: usize,
    pub generators: Vec<DegreePolynomial>,
    pub degrees: Vec<u32>,
    pub beta: u32,
    pub bound: u32,
    pub searched_through: u32,
    pub sweep_clean_through: u32,
    pub minimality: String,
    pub warnings: Vec<String>,
}

impl GeneratorsReport {
    pub fn new(g: &MatrixGroup, s: &GeneratorSet) -> Self {
        let minimality = if s.ring == RingDescriptor::Integers {
            "degreewise minimal: one generator per non-unit invariant factor of the cokernel"
        } else {
            "degreewise minimal"
        };
        GeneratorsReport {
            schema: schema(),
            kind: "generators".into(),
            ring: ring_name(s.ring),
            n: g.dimension(),
            order: g.order(),
            generators: degree_polys(&s.generators),
            degrees: s.degrees(),
            beta: s.beta,
            bound: s.bound,
            searched_through: s.searched_through,
            sweep_clean_through: s.sweep_clean_through,
            minimality: minimality.into(),
            warnings: s.warnings.clone(),
        }
    }
}

impl fmt::Display for GeneratorsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring: {}  order: {}", self.ring, self.order)?;
        writeln!(f, "degrees: {:?}", self.degrees)?;
        writeln!(f, "beta={} ≤ bound={}", self.beta, self.bound)?;
        writeln!(f, "searched through degree {}, clean through {}", self.searched_through, self.sweep_clean_through)?;
        writeln!(f, "minimality: {}", self.minimality)?;
        for g in &self.generators {
            writeln!(f, "  [{}] {}", g.degree, g.polynomial)?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub field: String,
    pub quotient_dims: Vec<usize>,
    pub verdict: String,
    pub regular_sequence: bool,
}

impl From<&HsopCertificate> for CertificateReport {
    fn from(c: &HsopCertificate) -> Self {
        CertificateReport {
            field: ring_name(c.field),
            quotient_dims: c.quotient_dims.clone(),
            verdict: match c.verdict {
                Verdict::Hsop => "Hsop",
                Verdict::NotHsop => "NotHsop",
            }
            .into(),
            regular_sequence: c.regular_sequence,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceReport {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linear_forms: Option<Vec<String>>,
}

impl From<&Provenance> for ProvenanceReport {
    fn from(p: &Provenance) -> Self {
        match p {
            Provenance::DadeLinearForms(forms) => ProvenanceReport {
                kind: "dade_linear_forms".into(),
                linear_forms: Some(texts(forms)),
            },
            Provenance::UserSupplied => ProvenanceReport {
                kind: "user_supplied".into(),
                linear_forms: None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HsopReport {
    pub schema: String,
    pub kind: String,
    pub ring: String,
    pub n: usize,
    pub order: usize,
    pub polys: Vec<String>,
    pub degrees: Vec<u32>,
    pub provenance: ProvenanceReport,
    pub certificates: Vec<CertificateReport>,
    pub certified_at: String,
}

impl HsopReport {
    pub fn new(g: &MatrixGroup, h: &CertifiedHsop) -> Self {
        HsopReport {
            schema: schema(),
            kind: "hsop".into(),
            ring: ring_name(g.ring()),
            n: g.dimension(),
            order: g.order(),
            polys: texts(&h.hsop.polys),
            degrees: h.hsop.degrees.clone(),
            provenance: (&h.hsop.provenance).into(),
            certificates: h.certificates.iter().map(Into::into).collect(),
            certified_at: h.certified_at(),
        }
    }
}

impl fmt::Display for HsopReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring: {}  order: {}", self.ring, self.order)?;
        if let Some(forms) = &self.provenance.linear_forms {
            writeln!(f, "linear forms: {}", forms.join(", "))?;
        }
        writeln!(f, "degrees: {:?}", self.degrees)?;
        for p in &self.polys {
            writeln!(f, "  {p}")?;
        }
        for c in &self.certificates {
            writeln!(
                f,
                "certificate over {}: {} quotient_dims={:?} regular_sequence={}",
                c.field, c.verdict, c.quotient_dims, c.regular_sequence
            )?;
        }
        writeln!(f, "certified at {}", self.certified_at)
    }
}

/// Parameters read from a file: any JSON object with a `polys` array,
/// such as an hsop report.
#[derive(Debug, Clone, Deserialize)]
pub struct HsopInput {
    pub polys: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmReport {
    pub window: u32,
    pub secondary_series: Vec<i64>,
    pub product_series: Vec<i64>,
    pub verdict: String,
}

impl From<&CmProbe> for CmReport {
    fn from(p: &CmProbe) -> Self {
        CmReport {
            window: p.window,
            secondary_series: p.secondary_series.iter().map(|&x| x as i64).collect(),
            product_series: p.product_series.iter().map(|&x| x as i64).collect(),
            verdict: match p.verdict {
                CmVerdict::ConsistentWithFree => "consistent with free/CM (truncated check)",
                CmVerdict::NotFree => "not free over this hsop",
            }
            .into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecondaryReport {
    pub schema: String,
    pub kind: String,
    pub ring: String,
    pub n: usize,
    pub hsop: Vec<String>,
    pub hsop_degrees: Vec<u32>,
    pub generators: Vec<DegreePolynomial>,
    pub degrees: Vec<u32>,
    pub max_degree: u32,
    pub bound: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cm_probe: Option<CmReport>,
}

impl SecondaryReport {
    pub fn new(g: &MatrixGroup, h: &Hsop, s: &SecondaryGenerators, probe: Option<&CmProbe>) -> Self {
        SecondaryReport {
            schema: schema(),
            kind: "secondary".into(),
            ring: ring_name(g.ring()),
            n: g.dimension(),
            hsop: texts(&h.polys),
            hsop_degrees: h.degrees.clone(),
            generators: degree_polys(&s.gens),
            degrees: s.degrees(),
            max_degree: s.max_degree,
            bound: s.bound,
            cm_probe: probe.map(Into::into),
        }
    }
}

impl fmt::Display for SecondaryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "hsop: {}", self.hsop.join(", "))?;
        writeln!(f, "secondary degrees: {:?} (max {} ≤ {})", self.degrees, self.max_degree, self.bound)?;
        for g in &self.generators {
            writeln!(f, "  [{}] {}", g.degree, g.polynomial)?;
        }
        if let Some(cm) = &self.cm_probe {
            writeln!(f, "cm probe through degree {}: {}", cm.window, cm.verdict)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MolienReport {
    pub schema: String,
    pub kind: String,
    pub ring: String,
    pub n: usize,
    pub order: usize,
    pub truncation: u32,
    pub coefficients: Vec<u64>,
}

impl MolienReport {
    pub fn new(g: &MatrixGroup, m: &MolienSeries) -> Self {
        MolienReport {
            schema: schema(),
            kind: "molien".into(),
            ring: ring_name(g.ring()),
            n: g.dimension(),
            order: g.order(),
            truncation: m.truncation,
            coefficients: m.coefficients.clone(),
        }
    }
}

impl fmt::Display for MolienReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coefficients.iter().map(u64::to_string).collect();
        writeln!(f, "molien coefficients (degrees 0..={}): {}", self.truncation, terms.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularRow {
    pub prime: u64,
    pub reduced_order: usize,
    pub dimension: usize,
    pub flat: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatnessRowReport {
    pub degree: u32,
    pub lattice_rank: usize,
    pub rational_dimension: usize,
    pub modular: Vec<ModularRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatnessJson {
    pub schema: String,
    pub kind: String,
    pub max_degree: u32,
    pub rational_spans_match: bool,
    pub rows: Vec<FlatnessRowReport>,
    pub discrepancies: Vec<String>,
}

impl FlatnessJson {
    pub fn new(r: &FlatnessReport) -> Self {
        let rows = r
            .rows
            .iter()
            .map(|row| FlatnessRowReport {
                degree: row.degree,
                lattice_rank: row.lattice_rank,
                rational_dimension: row.rational_dimension,
                modular: row
                    .modular
                    .iter()
                    .map(|m| ModularRow {
                        prime: m.prime,
                        reduced_order: m.reduced_order,
                        dimension: m.dimension,
                        flat: m.dimension == row.lattice_rank,
                    })
                    .collect(),
            })
            .collect();
        let discrepancies = r
            .discrepancies()
            .iter()
            .map(|d| {
                format!(
                    "degree {}: F_{} invariants have dimension {}, lattice rank {}",
                    d.degree, d.prime, d.modular_dimension, d.lattice_rank
                )
            })
            .collect();
        FlatnessJson {
            schema: schema(),
            kind: "flatness".into(),
            max_degree: r.max_degree,
            rational_spans_match: true,
            rows,
            discrepancies,
        }
    }
}

impl fmt::Display for FlatnessJson {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree  rank(Z)  dim(Q)  mod-p dims")?;
        for row in &self.rows {
            let mut mods = String::new();
            for m in &row.modular {
                let _ = write!(mods, " F_{}:{}{}", m.prime, m.dimension, if m.flat { "" } else { "*" });
            }
            writeln!(f, "{:>6}  {:>7}  {:>6} {}", row.degree, row.lattice_rank, row.rational_dimension, mods)?;
        }
        writeln!(f, "Z-lattice spans the Q-invariants in every degree")?;
        for d in &self.discrepancies {
            writeln!(f, "non-flat: {d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryResult {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub kind: String,
    pub passed: bool,
    pub entries: Vec<EntryResult>,
}

impl VerifyReport {
    pub fn new(entries: Vec<EntryResult>) -> Self {
        VerifyReport {
            schema: schema(),
            kind: "verify".into(),
            passed: entries.iter().all(|e| e.passed),
            entries,
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{:<16} {}", e.name, if e.passed { "PASS" } else { "FAIL" })?;
            for c in &e.checks {
                writeln!(f, "  {:<4} {:<22} {}", if c.passed { "ok" } else { "FAIL" }, c.check, c.detail)?;
            }
        }
        let failed = self.entries.iter().filter(|e| !e.passed).count();
        writeln!(f, "{} entries, {} failed", self.entries.len(), failed)
    }
}
