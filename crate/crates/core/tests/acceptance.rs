//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fail.
//! Runs with `harness = false`.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use arithinv::catalog::{self, CatalogEntry};
use arithinv::group::{MatrixGroup, DEFAULT_CAP};
use arithinv::invariants::{
    algebra_generators, dade_hsop, flatness_check, invariant_basis, lift_hsop_over_z, molien_series,
    secondary_generators, DadeOptions, Hsop, Verdict,
};
use arithinv::linalg::{Prime, RingDescriptor};
use arithinv::poly::Polynomial;
use arithinv::Error;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn entries() -> Vec<CatalogEntry> {
    catalog::bundled()
}

fn group(name: &str) -> MatrixGroup {
    let e = entries().into_iter().find(|e| e.name == name).expect("catalog entry");
    e.document.build(None, DEFAULT_CAP).expect("group builds")
}

fn polys(g: &MatrixGroup, texts: &[&str]) -> Vec<Polynomial> {
    texts
        .iter()
        .map(|t| Polynomial::parse(t, g.ring(), g.dimension()).expect("parses"))
        .collect()
}

fn nonmodular(g: &MatrixGroup) -> bool {
    match g.ring() {
        RingDescriptor::PrimeField(p) => g.order() as u64 % p.get() != 0,
        _ => true,
    }
}

fn generator_degrees_within_bound() -> Outcome {
    let want = [("trivial_z", 1), ("sign_z", 2), ("swap_z", 2), ("klein_q", 2), ("c4_z", 4), ("s3_z", 3)];
    let start = Instant::now();
    let mut seen = Vec::new();
    for (name, beta) in want {
        let g = group(name);
        let s = algebra_generators(&g, None, 3).map_err(|e| format!("{name}: {e}"))?;
        ensure(s.beta == beta, format!("{name}: beta {} != {beta}", s.beta))?;
        ensure(s.beta <= s.bound, format!("{name}: beta {} > bound {}", s.beta, s.bound))?;
        ensure(
            s.sweep_clean_through == s.bound + 3,
            format!("{name}: sweep clean only through {}", s.sweep_clean_through),
        )?;
        seen.push(format!("{name}={}", s.beta));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("{} in {:.2?}", seen.join(" "), elapsed))
}

fn dade_hsops_certify() -> Outcome {
    for e in entries() {
        let g = e.document.build(None, DEFAULT_CAP).map_err(|err| err.to_string())?;
        let h = dade_hsop(&g, &DadeOptions::default()).map_err(|err| format!("{}: {err}", e.name))?;
        ensure(h.hsop.polys.len() == g.dimension(), format!("{}: wrong count", e.name))?;
        ensure(
            h.hsop.degrees.iter().all(|&d| d as usize == g.order()),
            format!("{}: degrees {:?}", e.name, h.hsop.degrees),
        )?;
        for c in &h.certificates {
            ensure(
                c.verdict == Verdict::Hsop && c.regular_sequence,
                format!("{}: certificate over {} failed", e.name, c.field),
            )?;
        }
    }
    let h = dade_hsop(&group("sign_z"), &DadeOptions::default()).map_err(|e| e.to_string())?;
    let dims = &h.certificates[0].quotient_dims;
    ensure(dims == &[1, 2, 1, 0], format!("sign_z quotient dims {dims:?}"))?;
    Ok(format!("{} entries; sign_z quotient dims {dims:?}", entries().len()))
}

fn secondary_degrees() -> Outcome {
    let sign = group("sign_q");
    let h = Hsop::user_supplied(polys(&sign, &["x1^2", "x2^2"])).map_err(|e| e.to_string())?;
    let s = secondary_generators(&sign, &h).map_err(|e| e.to_string())?;
    ensure(s.degrees() == [0, 2], format!("sign_q degrees {:?}", s.degrees()))?;

    let swap = group("swap_z");
    let h = Hsop::user_supplied(polys(&swap, &["x1 + x2", "x1*x2"])).map_err(|e| e.to_string())?;
    let s = secondary_generators(&swap, &h).map_err(|e| e.to_string())?;
    ensure(s.degrees() == [0], format!("swap_z degrees {:?}", s.degrees()))?;

    for e in entries() {
        let g = e.document.build(None, DEFAULT_CAP).map_err(|err| err.to_string())?;
        let h = dade_hsop(&g, &DadeOptions::default()).map_err(|err| err.to_string())?.hsop;
        let s = secondary_generators(&g, &h).map_err(|err| format!("{}: {err}", e.name))?;
        ensure(
            s.max_degree <= h.top_degree(),
            format!("{}: max degree {} > {}", e.name, s.max_degree, h.top_degree()),
        )?;
    }
    Ok("sign_q [0, 2], swap_z [0], all catalog entries within their bound".into())
}

fn kernel_dims_match_molien() -> Outcome {
    let mut checked = 0;
    for e in entries() {
        let g = e.document.build(None, DEFAULT_CAP).map_err(|err| err.to_string())?;
        if !nonmodular(&g) {
            continue;
        }
        let top = 2 * g.order() as u32;
        let m = molien_series(&g, top).map_err(|err| format!("{}: {err}", e.name))?;
        for d in 0..=top {
            let dim = invariant_basis(&g, d).map_err(|err| err.to_string())?.dimension() as u64;
            ensure(
                dim == m.coefficients[d as usize],
                format!("{} degree {d}: kernel {dim}, Molien {}", e.name, m.coefficients[d as usize]),
            )?;
        }
        checked += 1;
    }
    let m = molien_series(&group("sign_z"), 4).map_err(|e| e.to_string())?;
    ensure(m.coefficients == [1, 0, 3, 0, 5], format!("sign_z Molien {:?}", m.coefficients))?;
    Ok(format!("{checked} nonmodular entries; sign_z 1, 0, 3, 0, 5"))
}

fn flatness() -> Outcome {
    let primes = [Prime::new(2).unwrap(), Prime::new(3).unwrap()];
    for e in entries() {
        let g = e.document.build(None, DEFAULT_CAP).map_err(|err| err.to_string())?;
        if g.ring() != RingDescriptor::Integers {
            continue;
        }
        flatness_check(&g, 2 * g.order() as u32, &primes, DEFAULT_CAP).map_err(|err| format!("{}: {err}", e.name))?;
    }
    let r = flatness_check(&group("sign_z"), 2, &primes[..1], DEFAULT_CAP).map_err(|e| e.to_string())?;
    let found = r
        .discrepancies()
        .iter()
        .any(|d| d.degree == 1 && d.prime == 2 && d.lattice_rank == 0 && d.modular_dimension == 2);
    ensure(found, format!("sign_z mod 2 discrepancies {:?}", r.discrepancies()))?;
    Ok("Z lattices span the rational invariants; sign_z mod 2 degree 1: rank 0 vs dimension 2".into())
}

fn lifted_hsop() -> Outcome {
    let g = group("s3_z");
    let h = lift_hsop_over_z(&g, Prime::new(7).unwrap(), &DadeOptions::default()).map_err(|e| e.to_string())?;
    ensure(h.hsop.degrees == [6, 6, 6], format!("degrees {:?}", h.hsop.degrees))?;
    let f7 = h
        .certificates
        .iter()
        .find(|c| c.field == RingDescriptor::prime_field(7).unwrap())
        .ok_or("no certificate over F_7")?;
    ensure(f7.verdict == Verdict::Hsop, "not an hsop over F_7")?;
    ensure(h.certified_at() == "{ℚ, 7}", format!("label {}", h.certified_at()))?;
    Ok(format!("degrees {:?}, certified at {}", h.hsop.degrees, h.certified_at()))
}

/// The property-test binary built next to this one by `cargo test`.
fn property_binary() -> Option<PathBuf> {
    let deps = std::env::current_exe().ok()?.parent()?.to_path_buf();
    std::fs::read_dir(&deps)
        .ok()?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| {
            let name = p.file_name().and_then(|n| n.to_str()).unwrap_or("");
            name.starts_with("properties-") && p.extension().is_none()
        })
        .max_by_key(|p| p.metadata().and_then(|m| m.modified()).ok())
}

fn properties_and_negative_control() -> Outcome {
    let bin = property_binary().ok_or("property test binary not built; run `cargo test`")?;
    let start = Instant::now();
    let out = Command::new(&bin).arg("--test-threads=4").output().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(out.status.success(), format!("property suite failed:\n{}", String::from_utf8_lossy(&out.stdout)))?;
    ensure(elapsed < Duration::from_secs(120), format!("property suite took {elapsed:?}"))?;

    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corrupt");
    let corrupt = catalog::load_dir(&dir).map_err(|e| e.to_string())?;
    let g = corrupt[0].document.build(None, DEFAULT_CAP).map_err(|e| e.to_string())?;
    match catalog::check_claims(&g, &corrupt[0].expected.claimed_invariants) {
        Err(Error::NotInvariant(t)) => {
            ensure(!catalog::verify_catalog(&corrupt, None).passed, "corrupt catalog verified")?;
            Ok(format!("property suites in {elapsed:.2?}; corrupt fixture rejected ({t} is not invariant)"))
        }
        other => Err(format!("corrupt fixture: {other:?}")),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("generator degrees within the bound, clean extra sweep", generator_degrees_within_bound),
        ("orbit-product parameter systems certify", dade_hsops_certify),
        ("secondary generator degrees", secondary_degrees),
        ("invariant dimensions match the Molien series", kernel_dims_match_molien),
        ("integer lattice flatness and mod-p discrepancies", flatness),
        ("hsop lifted from F_7 to Z", lifted_hsop),
        ("property suites and negative control", properties_and_negative_control),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
