use arithinv::catalog::{self, check_claims};
use arithinv::group::{act, close_group, GroupElement, MatrixGroup, DEFAULT_CAP};
use arithinv::invariants::{dade_hsop, DadeOptions};
use arithinv::linalg::{
    determinant, hnf, integer_kernel, nullspace, rank, snf, ExactMatrix, RingDescriptor, Scalar,
};
use arithinv::poly::{action_matrix, substitute_linear, Monomial, Polynomial};
use arithinv::Error;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

const Z: RingDescriptor = RingDescriptor::Integers;

fn matrix(ring: RingDescriptor, rows: &[Vec<i64>]) -> ExactMatrix {
    ExactMatrix::from_i64_rows(ring, rows).unwrap()
}

fn int_rows(rows: usize, cols: usize, lim: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-lim..=lim, cols), rows)
}

fn sized_rows(lim: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=5).prop_flat_map(move |(r, c)| int_rows(r, c, lim))
}

fn polynomial(n: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=3, n), -5i64..=5), 0..6).prop_map(move |terms| {
        Polynomial::from_terms(
            Z,
            n,
            terms.into_iter().map(|(e, c)| (Monomial::new(e), Scalar::from_i64(Z, c))),
        )
        .unwrap()
    })
}

/// Signed permutation matrices of size 3.
fn signed_permutation(perm: [usize; 3], signs: [bool; 3]) -> ExactMatrix {
    let rows: Vec<Vec<i64>> = (0..3)
        .map(|i| (0..3).map(|j| if perm[i] == j { if signs[i] { -1 } else { 1 } } else { 0 }).collect())
        .collect();
    matrix(Z, &rows)
}

fn signed_permutations() -> impl Strategy<Value = ExactMatrix> {
    (Just([0usize, 1, 2]).prop_shuffle(), prop::array::uniform3(any::<bool>()))
        .prop_map(|(p, s)| signed_permutation([p[0], p[1], p[2]], s))
}

fn hyperoctahedral() -> MatrixGroup {
    let gens = [
        signed_permutation([1, 0, 2], [false; 3]),
        signed_permutation([1, 2, 0], [false; 3]),
        signed_permutation([0, 1, 2], [true, false, false]),
    ];
    close_group(Z, 3, &gens, DEFAULT_CAP).unwrap()
}

fn int(s: &Scalar) -> BigInt {
    match s {
        Scalar::Int(v) => v.clone(),
        other => panic!("not an integer: {other}"),
    }
}

fn is_unit(s: &Scalar) -> bool {
    int(s).abs().is_one()
}

/// Nonzero rows of the Hermite form of `rows`.
fn lattice(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<Scalar>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = ExactMatrix::from_rows(
        Z,
        cols,
        rows.iter().map(|r| r.iter().map(|v| Scalar::from_bigint(Z, v)).collect()).collect(),
    )
    .unwrap();
    hnf(&m)
        .unwrap()
        .0
        .row_vectors()
        .into_iter()
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .collect()
}

fn apply_int(m: &ExactMatrix, v: &[BigInt]) -> Vec<Scalar> {
    let v: Vec<Scalar> = v.iter().map(|x| Scalar::from_bigint(Z, x)).collect();
    m.apply(&v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_is_a_left_action(i in 0usize..48, j in 0usize..48, f in polynomial(3)) {
        let g = hyperoctahedral();
        let (s, t) = (&g.elements()[i], &g.elements()[j]);
        let st = GroupElement::new(s.matrix().mul(t.matrix()).unwrap()).unwrap();
        prop_assert_eq!(act(s, &act(t, &f).unwrap()).unwrap(), act(&st, &f).unwrap());
    }

    #[test]
    fn substitution_reverses_products(a in int_rows(3, 3, 3), b in int_rows(3, 3, 3), f in polynomial(3)) {
        let (a, b) = (matrix(Z, &a), matrix(Z, &b));
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(
            substitute_linear(&substitute_linear(&f, &a).unwrap(), &b).unwrap(),
            substitute_linear(&f, &ab).unwrap()
        );
        for d in 0..=2 {
            let lhs = action_matrix(&ab, d).unwrap();
            let rhs = action_matrix(&b, d).unwrap().mul(&action_matrix(&a, d).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn closure_audit(gens in prop::collection::vec(signed_permutations(), 0..4)) {
        let g = close_group(Z, 3, &gens, DEFAULT_CAP).unwrap();
        prop_assert!(g.audit());
        prop_assert_eq!(48 % g.order(), 0);
        for gen in &gens {
            prop_assert!(g.contains(gen));
        }
        for a in g.elements() {
            prop_assert!(g.contains(a.inverse()));
            for b in g.elements() {
                prop_assert!(g.contains(&a.matrix().mul(b.matrix()).unwrap()));
            }
        }
    }

    #[test]
    fn integer_kernel_is_saturated(rows in sized_rows(6)) {
        let m = matrix(Z, &rows);
        let cols = m.cols();
        let k = integer_kernel(&m).unwrap();
        prop_assert_eq!(k.len(), cols - rank(&m));
        for v in &k {
            prop_assert!(apply_int(&m, v).iter().all(Scalar::is_zero));
        }
        // every primitive integer vector in the rational kernel lies in the Z-span
        let span = lattice(&k, cols);
        for v in nullspace(&m.convert(RingDescriptor::Rationals).unwrap()).unwrap() {
            let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.to_ratio().denom()));
            let scaled: Vec<BigInt> = v.iter().map(|x| (x.to_ratio() * &den).to_integer()).collect();
            let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            let primitive: Vec<BigInt> = scaled.iter().map(|x| x / &g).collect();
            let mut with = k.clone();
            with.push(primitive);
            prop_assert_eq!(lattice(&with, cols), span.clone());
        }
    }

    #[test]
    fn hermite_form(rows in sized_rows(9)) {
        let a = matrix(Z, &rows);
        let (h, u) = hnf(&a).unwrap();
        prop_assert_eq!(u.mul(&a).unwrap(), h.clone());
        prop_assert!(is_unit(&determinant(&u).unwrap()));
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for r in 0..h.rows() {
            match (0..h.cols()).find(|&c| !h.get(r, c).is_zero()) {
                None => seen_zero = true,
                Some(c) => {
                    prop_assert!(!seen_zero, "zero rows come last");
                    prop_assert!(last_pivot.map_or(true, |p| c > p));
                    let pivot = int(h.get(r, c));
                    prop_assert!(pivot.is_positive());
                    for above in 0..r {
                        let e = int(h.get(above, c));
                        prop_assert!(!e.is_negative() && e < pivot);
                    }
                    last_pivot = Some(c);
                }
            }
        }
    }

    #[test]
    fn smith_form(rows in sized_rows(9)) {
        let a = matrix(Z, &rows);
        let s = snf(&a).unwrap();
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(is_unit(&determinant(&s.u).unwrap()));
        prop_assert!(is_unit(&determinant(&s.v).unwrap()));
        for r in 0..s.d.rows() {
            for c in 0..s.d.cols() {
                let want = if r == c { Scalar::from_bigint(Z, &s.elementary_divisors[r]) } else { Scalar::zero(Z) };
                prop_assert_eq!(s.d.get(r, c), &want);
            }
        }
        for w in s.elementary_divisors.windows(2) {
            prop_assert!(!w[0].is_negative());
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
        // the product of divisors is the gcd-of-minors invariant for square input
        if a.is_square() {
            let prod = s.elementary_divisors.iter().fold(BigInt::one(), |acc, x| acc * x);
            prop_assert_eq!(int(&determinant(&a).unwrap()).abs(), prod);
        }
    }

    #[test]
    fn nullspace_over_fields(rows in sized_rows(9), p in prop::sample::select(vec![2u64, 3, 7, 101])) {
        for ring in [RingDescriptor::Rationals, RingDescriptor::prime_field(p).unwrap()] {
            let m = matrix(ring, &rows);
            let ns = nullspace(&m).unwrap();
            prop_assert_eq!(ns.len() + rank(&m), m.cols());
            for v in &ns {
                prop_assert!(m.apply(v).unwrap().iter().all(Scalar::is_zero));
            }
            if !ns.is_empty() {
                prop_assert_eq!(rank(&ExactMatrix::from_rows(ring, m.cols(), ns.clone()).unwrap()), ns.len());
            }
        }
    }

    #[test]
    fn claims_are_checked_against_the_swap(f in polynomial(2)) {
        let swap = catalog::bundled().into_iter().find(|e| e.name == "swap_z").unwrap();
        let g = swap.document.build(None, DEFAULT_CAP).unwrap();
        let symmetric = f.terms().all(|(m, c)| {
            let e = m.exponents();
            f.coefficient(&Monomial::new(vec![e[1], e[0]])) == Some(c)
        });
        let text = f.to_string();
        match check_claims(&g, &[text.clone()]) {
            Ok(()) => prop_assert!(symmetric),
            Err(Error::NotInvariant(t)) => {
                prop_assert!(!symmetric);
                prop_assert_eq!(t, text);
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn seeded_hsop_is_deterministic(seed in any::<u64>(), which in prop::sample::select(vec!["sign_q", "swap_z", "c3_q", "klein_q"])) {
        let entry = catalog::bundled().into_iter().find(|e| e.name == which).unwrap();
        let g = entry.document.build(None, DEFAULT_CAP).unwrap();
        let opts = DadeOptions { seed, ..DadeOptions::default() };
        let a = dade_hsop(&g, &opts).unwrap();
        let b = dade_hsop(&g, &opts).unwrap();
        prop_assert_eq!(&a.hsop.polys, &b.hsop.polys);
        prop_assert!(a.all_passed());
        prop_assert!(a.hsop.degrees.iter().all(|&d| d as usize == g.order()));
    }
}

#[test]
fn corrupt_fixture_is_rejected() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corrupt");
    let entries = catalog::load_dir(&dir).unwrap();
    assert_eq!(entries.len(), 1);
    let g = entries[0].document.build(None, DEFAULT_CAP).unwrap();
    match check_claims(&g, &entries[0].expected.claimed_invariants) {
        Err(Error::NotInvariant(t)) => assert_eq!(t, "x1^2"),
        other => panic!("expected NotInvariant, got {other:?}"),
    }
    let report = catalog::verify_catalog(&entries, None);
    assert!(!report.passed);
}
