//! Bundled catalog of small groups with expected results, and the
//! end-to-end verification run over it.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{act, GroupDocument, MatrixGroup, DEFAULT_CAP};
use crate::invariants::{
    algebra_generators, cm_probe, dade_hsop, flatness_check, invariant_basis, molien_series, secondary_generators,
    DadeOptions,
};
use crate::linalg::{Prime, RingDescriptor};
use crate::poly::Polynomial;
use crate::report::{CheckResult, EntryResult, VerifyReport};

/// Extra degrees searched past the bound during verification.
pub const VERIFY_SWEEP: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub order: usize,
    pub beta: u32,
    pub generator_degrees: Vec<u32>,
    pub claimed_invariants: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub molien: Option<Vec<u64>>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub document: GroupDocument,
    pub expected: Expected,
}

macro_rules! bundled_entries {
    ($($name:literal),* $(,)?) => {
        &[$((
            $name,
            include_str!(concat!("../catalog/", $name, ".json")),
            include_str!(concat!("../catalog/", $name, ".expected.json")),
        )),*]
    };
}

const BUNDLED: &[(&str, &str, &str)] = bundled_entries![
    "trivial_z",
    "sign_z",
    "sign_q",
    "swap_z",
    "klein_q",
    "c4_z",
    "c3_q",
    "s3_z",
    "unipotent_f2",
    "swap_f2",
];

fn entry(name: &str, document: &str, expected: &str) -> Result<CatalogEntry> {
    let expected = serde_json::from_str(expected).map_err(|e| Error::Parse(format!("{name}: {e}")))?;
    Ok(CatalogEntry {
        name: name.to_string(),
        document: GroupDocument::from_json(document)?,
        expected,
    })
}

/// The catalog shipped with the library.
pub fn bundled() -> Vec<CatalogEntry> {
    BUNDLED
        .iter()
        .map(|(name, doc, exp)| entry(name, doc, exp).expect("bundled catalog parses"))
        .collect()
}

/// Loads `<name>.json` documents paired with `<name>.expected.json`
/// fixtures from a directory, sorted by name.
pub fn load_dir(dir: &Path) -> Result<Vec<CatalogEntry>> {
    let io = |e: std::io::Error| Error::Parse(format!("{}: {e}", dir.display()));
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok())
        .filter_map(|e| e.file_name().into_string().ok())
        .filter(|f| f.ends_with(".json") && !f.ends_with(".expected.json"))
        .map(|f| f.trim_end_matches(".json").to_string())
        .collect();
    names.sort();
    names
        .iter()
        .map(|name| {
            let doc = std::fs::read_to_string(dir.join(format!("{name}.json"))).map_err(io)?;
            let exp = std::fs::read_to_string(dir.join(format!("{name}.expected.json"))).map_err(io)?;
            entry(name, &doc, &exp)
        })
        .collect()
}

/// Every claimed invariant must be fixed by every group element.
pub fn check_claims(g: &MatrixGroup, claims: &[String]) -> Result<()> {
    for text in claims {
        let f = Polynomial::parse(text, g.ring(), g.dimension())?;
        for s in g.elements() {
            if act(s, &f)? != f {
                return Err(Error::NotInvariant(text.clone()));
            }
        }
    }
    Ok(())
}

fn check(name: &str, outcome: Result<(bool, String)>) -> CheckResult {
    match outcome {
        Ok((passed, detail)) => CheckResult {
            check: name.into(),
            passed,
            detail,
        },
        Err(e) => CheckResult {
            check: name.into(),
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn nonmodular(g: &MatrixGroup) -> bool {
    match g.ring() {
        RingDescriptor::PrimeField(p) => g.order() as u64 % p.get() != 0,
        _ => true,
    }
}

/// Runs every check for one entry. A group that fails to build yields a
/// single failed check.
pub fn verify_entry(e: &CatalogEntry) -> EntryResult {
    let g = match e.document.build(None, DEFAULT_CAP) {
        Ok(g) => g,
        Err(err) => {
            return EntryResult {
                name: e.name.clone(),
                passed: false,
                checks: vec![check("closure", Err(err))],
            }
        }
    };
    let exp = &e.expected;
    let order = g.order();
    let n = g.dimension();
    let mut checks = Vec::new();

    checks.push(check(
        "closure",
        Ok((order == exp.order && g.audit(), format!("order {order}, expected {}", exp.order))),
    ));
    checks.push(check(
        "claimed_invariants",
        check_claims(&g, &exp.claimed_invariants).map(|()| (true, format!("{} claims hold", exp.claimed_invariants.len()))),
    ));

    checks.push(check(
        "generators",
        algebra_generators(&g, None, VERIFY_SWEEP).and_then(|s| {
            let all_invariant = s
                .generators
                .iter()
                .all(|(_, f)| g.elements().iter().all(|el| act(el, f).map(|h| h == *f).unwrap_or(false)));
            let ok = s.beta == exp.beta
                && s.degrees() == exp.generator_degrees
                && s.beta <= g.degree_bound()
                && s.sweep_clean_through == s.bound + VERIFY_SWEEP
                && all_invariant;
            Ok((
                ok,
                format!(
                    "degrees {:?}, beta={} ≤ bound={}, clean through {}",
                    s.degrees(),
                    s.beta,
                    s.bound,
                    s.sweep_clean_through
                ),
            ))
        }),
    ));

    let hsop = dade_hsop(&g, &DadeOptions::default());
    checks.push(check(
        "hsop",
        hsop.as_ref().map_err(Clone::clone).map(|h| {
            let ok = h.hsop.polys.len() == n
                && h.hsop.degrees.iter().all(|&d| d as usize == order)
                && h.certificates.iter().all(|c| c.passed() && c.regular_sequence);
            (
                ok,
                format!(
                    "degrees {:?}, quotient_dims {:?}",
                    h.hsop.degrees, h.certificates[0].quotient_dims
                ),
            )
        }),
    ));

    if let Ok(h) = &hsop {
        let secondary = secondary_generators(&g, &h.hsop);
        checks.push(check(
            "secondary",
            secondary.as_ref().map_err(Clone::clone).map(|s| {
                (
                    s.max_degree <= h.hsop.top_degree(),
                    format!("{} generators, max degree {} ≤ {}", s.gens.len(), s.max_degree, h.hsop.top_degree()),
                )
            }),
        ));
        if let Ok(s) = &secondary {
            checks.push(check(
                "cm_probe",
                cm_probe(&g, &h.hsop, s, None).map(|p| (true, format!("{:?} through degree {}", p.verdict, p.window))),
            ));
        }
    }

    if nonmodular(&g) {
        let fixture_len = exp.molien.as_ref().map_or(0, Vec::len) as u32;
        let top = (2 * order as u32).max(fixture_len.saturating_sub(1));
        checks.push(check(
            "molien",
            molien_series(&g, top).and_then(|m| {
                let mut ok = exp
                    .molien
                    .as_ref()
                    .map_or(true, |want| m.coefficients.starts_with(want));
                for d in 0..=top {
                    ok &= invariant_basis(&g, d)?.dimension() as u64 == m.coefficients[d as usize];
                }
                Ok((ok, format!("kernel dims match Molien through degree {top}")))
            }),
        ));
    }

    if g.ring() == RingDescriptor::Integers {
        let primes = [Prime::new(2).expect("prime"), Prime::new(3).expect("prime")];
        checks.push(check(
            "flatness",
            flatness_check(&g, 2 * order as u32, &primes, DEFAULT_CAP).map(|r| {
                (true, format!("Q-spans match; {} mod-p discrepancies", r.discrepancies().len()))
            }),
        ));
    }

    EntryResult {
        name: e.name.clone(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

/// Verifies the entries whose name contains `filter`, concurrently; results
/// keep catalog order.
pub fn verify_catalog(entries: &[CatalogEntry], filter: Option<&str>) -> VerifyReport {
    let selected: Vec<&CatalogEntry> = entries
        .iter()
        .filter(|e| filter.map_or(true, |f| e.name.contains(f)))
        .collect();
    let results = std::thread::scope(|scope| {
        let handles: Vec<_> = selected.iter().map(|e| scope.spawn(move || verify_entry(e))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    });
    VerifyReport::new(results)
}
