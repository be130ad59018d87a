//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria whose failure is explained by a confirmed erratum in the
//! reference tables are listed in `KNOWN_ERRATA`; they still print FAIL but
//! do not fail the test run. Any other failure panics.

mod common;

use std::io::Write;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use twder::cocycle::{coboundary, is_cocycle, OneChain};
use twder::derivation::{
    abelian_partial_basis, der_space_generators, der_space_oracle, dihedral_constraints, extend, hh1, hh1_from_parts,
    inn_space, inner_derivation, is_derivation, DerivationError, DEFAULT_ORACLE_BOUND,
};
use twder::linalg::in_span;
use twder::report::{Report, ReportOptions, Setup};
use twder::{Cocycle, CocycleSpec, Derivation, DihedralSign, Extension, GeneratorMap, Group, GroupSpec, RingElem, RowSpace, TwistedRing};

const KNOWN_ERRATA: &[(usize, &str)] = &[
    (2, "displayed f2 is not a derivation; x rs - rs x gives (-s + r^2 s, r - r^2)"),
    (3, "displayed f5, f7, f8, f10, f11 violate a relator in any convention"),
];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn dims(r: &TwistedRing) -> (usize, usize, usize, usize) {
    let h = hh1(r).unwrap();
    (h.der, r.center_basis().len(), h.inn, h.dim)
}

fn c1_d6_dimensions() -> Outcome {
    let r = dihedral(3, 3, 2, Some(DihedralSign::Alpha3));
    let (der, center, inn, h) = dims(&r);
    let oracle = der_space_oracle(&r, DEFAULT_ORACLE_BOUND).unwrap().dim;
    let brute = brute_center(&r).dim();
    let pass = (der, center, inn, h) == (4, 3, 3, 1) && oracle == 4 && brute == 3;
    Outcome::new(
        pass,
        format!("der={der} (oracle {oracle}) center={center} (brute {brute}) inn={inn} hh1={h}"),
    )
}

fn generator_map(r: &TwistedRing, fr: RingElem, fs: RingElem) -> GeneratorMap {
    GeneratorMap::new(r, vec![fr, fs]).unwrap()
}

fn c2_d6_listed_maps() -> Outcome {
    let r = dihedral(3, 3, 2, Some(DihedralSign::Alpha3));
    let t = |x: &[(i64, i64, usize)]| dih(&r, x);
    let maps = [
        generator_map(&r, t(&[(-1, 1, 1), (1, 2, 1)]), r.zero()),
        generator_map(&r, t(&[(-1, 0, 1), (1, 1, 1)]), t(&[(-1, 1, 0), (1, 2, 0)])),
        generator_map(&r, t(&[(-1, 0, 0), (1, 2, 0)]), r.zero()),
        generator_map(&r, r.zero(), t(&[(-1, 1, 1), (1, 2, 1)])),
    ];
    let expect_inner = [true, true, false, true];
    let sys = der_space_generators(&r);
    let oracle = oracle_on_generators(&r);
    let inn = inn_space(&r).unwrap();
    let mut problems = Vec::new();
    for (i, f) in maps.iter().enumerate() {
        let in_oracle = oracle.contains(&f.to_vector()).unwrap();
        match extend(&r, f).unwrap() {
            Extension::Accepted(d) => {
                let in_der = sys.contains(&r, &d).unwrap();
                let inner = inn.contains(&r, &d).unwrap();
                if !in_der || !in_oracle {
                    problems.push(format!("f{} outside Der", i + 1));
                }
                if inner != expect_inner[i] {
                    problems.push(format!("f{} inner={inner}", i + 1));
                }
            }
            Extension::Rejected { relator, residual } => problems.push(format!(
                "f{} rejected by relator {relator} (residual {}, oracle agrees: {})",
                i + 1,
                r.format(&residual),
                !in_oracle
            )),
        }
    }
    let ad = |m: RingElem| inner_derivation(&r, &m).unwrap().generator_map(&r);
    let identities = [
        (1, ad(t(&[(1, 0, 1)])), "ad(s)"),
        (2, ad(t(&[(-1, 1, 1)])), "ad(-rs)"),
        (4, ad(t(&[(-1, 1, 0)])), "ad(-r)"),
    ];
    for (i, m, label) in identities {
        if m != maps[i - 1] {
            let shown: Vec<String> = m.images().iter().map(|e| r.format(e)).collect();
            problems.push(format!("f{i} != {label} = ({})", shown.join(", ")));
        }
    }
    if problems.is_empty() {
        Outcome::new(true, "f1..f4 accepted, in Der; f1,f2,f4 inner; f3 not inner; commutator identities hold")
    } else {
        Outcome::new(false, problems.join("; "))
    }
}

fn d12_alpha1() -> TwistedRing {
    dihedral(6, 3, 2, Some(DihedralSign::Alpha1))
}

fn c3_d12_listed_maps() -> Outcome {
    let r = d12_alpha1();
    let t = |x: &[(i64, i64, usize)]| dih(&r, x);
    let z = r.zero();
    let maps = [
        (t(&[(1, 3, 1)]), z.clone()),
        (t(&[(-1, 2, 1), (1, 4, 1)]), z.clone()),
        (t(&[(1, 1, 1), (1, 5, 1)]), z.clone()),
        (t(&[(-1, 2, 1)]), t(&[(1, 3, 0)])),
        (t(&[(1, 1, 1)]), t(&[(1, 2, 0), (1, 4, 0)])),
        (t(&[(-1, 0, 1), (-1, 2, 1)]), t(&[(1, 1, 0), (1, 5, 0)])),
        (t(&[(1, 1, 0)]), z.clone()),
        (t(&[(-1, 0, 0), (1, 2, 0)]), z.clone()),
        (t(&[(-1, 3, 0), (1, 5, 0)]), z.clone()),
        (z.clone(), t(&[(1, 0, 1)])),
        (z.clone(), t(&[(1, 2, 1), (1, 4, 1)])),
        (z.clone(), t(&[(1, 1, 1), (1, 5, 1)])),
    ];
    let sys = der_space_generators(&r);
    let oracle = oracle_on_generators(&r);
    let mut rejected = Vec::new();
    let mut disagreements = Vec::new();
    for (i, (fr, fs)) in maps.into_iter().enumerate() {
        let f = generator_map(&r, fr, fs);
        let in_oracle = oracle.contains(&f.to_vector()).unwrap();
        match extend(&r, &f).unwrap() {
            Extension::Accepted(d) => {
                if !sys.contains(&r, &d).unwrap() || !in_oracle {
                    disagreements.push(format!("f{}", i + 1));
                }
            }
            Extension::Rejected { .. } => {
                rejected.push(format!("f{}", i + 1));
                if in_oracle {
                    disagreements.push(format!("f{} (oracle accepts)", i + 1));
                }
            }
        }
    }
    let pass = sys.dim == 12 && oracle.dim() == 12 && rejected.is_empty() && disagreements.is_empty();
    let mut detail = format!("der={} (oracle {})", sys.dim, oracle.dim());
    if !rejected.is_empty() {
        detail += &format!("; rejected: {} (oracle also excludes them)", rejected.join(", "));
    }
    if !disagreements.is_empty() {
        detail += &format!("; method disagreement: {}", disagreements.join(", "));
    }
    Outcome::new(pass, detail)
}

fn c4_d12_center_hh1() -> Outcome {
    let r = d12_alpha1();
    let oracle = der_space_oracle(&r, DEFAULT_ORACLE_BOUND).unwrap().dim;
    let center = r.center_basis().len();
    let brute = brute_center(&r).dim();
    let inn = 12 - brute;
    let derived_hh1 = oracle - inn;
    let f = r.field().spec();
    let setup = Setup::new(&GroupSpec::Dihedral { n: 6 }, &f, &CocycleSpec::DihedralAlpha1).unwrap();
    let report = Report::build(&setup, ReportOptions::default()).unwrap();
    let flagged = report.warnings.iter().any(|w| w.contains("3n' = 9"));
    let d = report.dims;
    let pass = center == 3
        && brute == 3
        && d.center == 3
        && d.inn == 9
        && d.hh1 == 3
        && derived_hh1 == 3
        && flagged;
    Outcome::new(
        pass,
        format!(
            "center={center} (brute {brute}) inn={} hh1={} (oracle-derived {derived_hh1}); quoted 3n'=9 flagged: {flagged}",
            d.inn, d.hh1
        ),
    )
}

fn c5_odd_sweep() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (p, n, m) in [(3, 3, 1), (3, 3, 2), (5, 5, 1), (3, 9, 1)] {
        let r = dihedral(n, p, m, Some(DihedralSign::Alpha3));
        let h = hh1(&r).unwrap();
        let oracle = der_space_oracle(&r, DEFAULT_ORACLE_BOUND).unwrap().dim;
        let ok = h.dim == (n - 1) / 2 && oracle == h.der;
        pass &= ok;
        parts.push(format!("(p={p},n={n},m={m}) hh1={} want {}", h.dim, (n - 1) / 2));
    }
    Outcome::new(pass, parts.join("; "))
}

/// x_1, x_2 in C2 x C2 with alpha(a, b) = (-1)^{a_2 b_1}: a twisted
/// quaternion-type algebra, noncommutative.
fn klein_twisted(p: u64) -> TwistedRing {
    let g = Arc::new(Group::abelian(&[2, 2]).unwrap());
    let f = field(p, 1);
    let minus = f.neg(f.one());
    let bits = |x: usize| (x / 2, x % 2);
    let table = (0..4)
        .flat_map(|x| (0..4).map(move |y| (x, y)))
        .map(|(x, y)| if bits(x).1 * bits(y).0 == 1 { minus } else { f.one() })
        .collect();
    TwistedRing::new(&Cocycle::new(&g, &f, table).unwrap())
}

fn twisted_by_random(r: &TwistedRing, seed: u64) -> TwistedRing {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phi = OneChain::random(r.field(), r.dim(), &mut rng);
    TwistedRing::new(&r.cocycle().twist(&phi).unwrap())
}

fn c6_semisimple() -> Outcome {
    let configs: Vec<(String, TwistedRing)> = vec![
        ("D6/F5 trivial".into(), dihedral(3, 5, 1, None)),
        ("D6/F5 alpha3".into(), dihedral(3, 5, 1, Some(DihedralSign::Alpha3))),
        ("D6/F7^2 alpha3".into(), dihedral(3, 7, 2, Some(DihedralSign::Alpha3))),
        ("D8/F3 alpha1".into(), dihedral(4, 3, 1, Some(DihedralSign::Alpha1))),
        ("D8/F9 alpha2".into(), dihedral(4, 3, 2, Some(DihedralSign::Alpha2))),
        ("D10/F3 alpha3".into(), dihedral(5, 3, 1, Some(DihedralSign::Alpha3))),
        ("C5/F3 trivial".into(), abelian(&[5], 3, 1)),
        ("C3xC3/F2 trivial".into(), abelian(&[3, 3], 2, 1)),
        ("C2xC4/F5 twisted".into(), twisted_by_random(&abelian(&[2, 4], 5, 1), 17)),
        ("C2xC2/F3 (-1)^{a2 b1}".into(), klein_twisted(3)),
    ];
    let mut bad = Vec::new();
    for (name, r) in &configs {
        assert!(r.dim() as u64 % r.field().characteristic() != 0);
        let h = hh1(r).unwrap();
        if h.dim != 0 {
            bad.push(format!("{name}: hh1={}", h.dim));
        }
    }
    let pass = bad.is_empty();
    let detail = if pass {
        format!("{} configurations, all hh1=0", configs.len())
    } else {
        bad.join("; ")
    };
    Outcome::new(pass, detail)
}

fn c7_abelian_basis() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (orders, p, n_p) in [
        (vec![3], 3, 1),
        (vec![3, 3], 3, 2),
        (vec![2, 4], 2, 2),
        (vec![6], 3, 1),
        (vec![6], 2, 1),
    ] {
        let r = abelian(&orders, p, 1);
        let basis = abelian_partial_basis(&r).unwrap();
        let oracle = der_space_oracle(&r, DEFAULT_ORACLE_BOUND).unwrap();
        let n = r.dim();
        let mut space = RowSpace::new(r.field(), n * n);
        for d in &basis {
            space.insert(&d.flatten()).unwrap();
        }
        let spans = oracle.kernel.iter().all(|v| space.contains(v).unwrap());
        let ok = basis.len() == n * n_p && space.dim() == basis.len() && oracle.dim == basis.len() && spans;
        pass &= ok;
        parts.push(format!("{orders:?}/F{p}: {} of {}", basis.len(), n * n_p));
    }
    Outcome::new(pass, parts.join("; "))
}

fn c8_method_agreement() -> Outcome {
    let mut checked = 0;
    let mut skipped = 0;
    let mut closed = 0;
    let mut bad = Vec::new();
    for n in 3..=6 {
        for (p, m) in [(3, 1), (5, 1), (3, 2)] {
            for sign in [None, Some(DihedralSign::Alpha1), Some(DihedralSign::Alpha2), Some(DihedralSign::Alpha3)] {
                let g = Arc::new(Group::dihedral(n).unwrap());
                let f = field(p, m);
                let cocycle = match sign {
                    None => Cocycle::trivial(&g, &f),
                    Some(s) => match Cocycle::dihedral(s, &g, &f) {
                        Ok(c) => c.cocycle,
                        Err(_) => {
                            skipped += 1;
                            continue;
                        }
                    },
                };
                let r = TwistedRing::new(&cocycle);
                let sys = der_space_generators(&r);
                let gen = sys.dim;
                let oracle_space = oracle_on_generators(&r);
                let oracle = oracle_space.dim();
                let same_as_gen = |kernel: &[Vec<_>]| {
                    kernel.len() == gen && kernel.iter().all(|v| in_span(r.field(), &sys.kernel, v).unwrap())
                };
                let oracle_ok = oracle == gen && sys.kernel.iter().all(|v| oracle_space.contains(v).unwrap());
                let closed_dim = match dihedral_constraints(&r) {
                    Ok(mat) => {
                        closed += 1;
                        let k = mat.kernel_basis();
                        Some((k.len(), same_as_gen(&k)))
                    }
                    Err(DerivationError::Unsupported(_)) => None,
                    Err(e) => panic!("{e}"),
                };
                checked += 1;
                if !oracle_ok || closed_dim.is_some_and(|(_, same)| !same) {
                    bad.push(format!("n={n} p={p} m={m} {sign:?}: {gen}/{oracle}/{closed_dim:?}"));
                }
            }
        }
    }
    let pass = bad.is_empty();
    let mut detail = format!(
        "{checked} configurations agree ({closed} with closed form); {skipped} skipped (alpha1/alpha2 are not cocycles for odd n)"
    );
    if !pass {
        detail = bad.join("; ");
    }
    Outcome::new(pass, detail)
}

fn structural_configs() -> Vec<(String, TwistedRing)> {
    vec![
        ("D6/F9 alpha3".into(), dihedral(3, 3, 2, Some(DihedralSign::Alpha3))),
        ("D6/F5 trivial".into(), dihedral(3, 5, 1, None)),
        ("D8/F3 alpha1".into(), dihedral(4, 3, 1, Some(DihedralSign::Alpha1))),
        ("D10/F5 alpha3".into(), dihedral(5, 5, 1, Some(DihedralSign::Alpha3))),
        ("D12/F9 alpha1".into(), d12_alpha1()),
        ("D12/F3 alpha2".into(), dihedral(6, 3, 1, Some(DihedralSign::Alpha2))),
        ("C3xC3/F3".into(), abelian(&[3, 3], 3, 1)),
        ("C2xC4/F2".into(), abelian(&[2, 4], 2, 1)),
        ("C6/F3 twisted".into(), twisted_by_random(&abelian(&[6], 3, 1), 5)),
        ("C2xC2/F3 (-1)^{a2 b1}".into(), klein_twisted(3)),
    ]
}

fn structural_failures(name: &str, r: &TwistedRing, rng: &mut ChaCha8Rng) -> Vec<String> {
    let mut bad = Vec::new();
    let g = r.group();
    let f = r.field();
    let n = r.dim();
    let p = f.characteristic() as usize;

    if !is_cocycle(g, f, r.cocycle().table()).unwrap() {
        bad.push(format!("{name}: cocycle identity"));
    }
    let assoc = (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| {
                let ab = r.mul(&r.basis(a), &r.basis(b)).unwrap();
                let bc = r.mul(&r.basis(b), &r.basis(c)).unwrap();
                r.mul(&ab, &r.basis(c)).unwrap() == r.mul(&r.basis(a), &bc).unwrap()
            })
        })
    });
    if !assoc {
        bad.push(format!("{name}: associativity"));
    }
    let one = r.one();
    if !(0..n).all(|x| r.mul(&one, &r.basis(x)).unwrap() == r.basis(x) && r.mul(&r.basis(x), &one).unwrap() == r.basis(x)) {
        bad.push(format!("{name}: identity element"));
    }

    let sys = der_space_generators(r);
    let ders = sys.derivations(r).unwrap();
    let coprime_center: Vec<usize> = r
        .cocycle()
        .alpha_center()
        .into_iter()
        .filter(|&z| g.element_order(z) % p != 0)
        .collect();
    for d in &ders {
        if !is_derivation(r, d) {
            bad.push(format!("{name}: basis element fails Leibniz"));
        }
        if !d.image(g.identity()).is_zero() {
            bad.push(format!("{name}: d(1) != 0"));
        }
        if coprime_center.iter().any(|&z| !d.image(z).is_zero()) {
            bad.push(format!("{name}: d(z) != 0 for a p-regular alpha-central z"));
        }
    }

    let center = r.center_basis();
    let brute = brute_center(r);
    if center.len() != brute.dim() || center.iter().any(|z| !brute.contains(z.coeffs()).unwrap()) {
        bad.push(format!("{name}: center basis != brute force"));
    }

    let inn = inn_space(r).unwrap();
    let kernel = &sys.kernel;
    for d in &inn.basis {
        if !in_span(f, kernel, &d.generator_map(r).to_vector()).unwrap() {
            bad.push(format!("{name}: inner derivation outside Der"));
        }
    }
    let h = hh1_from_parts(r, &sys, &inn).unwrap();
    let base = (sys.dim, center.len(), h.dim);
    for _ in 0..5 {
        let phi = OneChain::random(f, n, rng);
        let twisted = TwistedRing::new(&r.cocycle().twist(&phi).unwrap());
        let th = hh1(&twisted).unwrap();
        let got = (th.der, twisted.center_basis().len(), th.dim);
        if got != base {
            bad.push(format!("{name}: twist changes dims {base:?} -> {got:?}"));
        }
    }
    let cob = coboundary(g, f, &OneChain::random(f, n, rng)).unwrap();
    if !is_cocycle(g, f, cob.table()).unwrap() {
        bad.push(format!("{name}: coboundary is not a cocycle"));
    }
    bad
}

fn c9_structural() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9);
    let configs = structural_configs();
    let bad: Vec<String> = configs
        .iter()
        .flat_map(|(name, r)| structural_failures(name, r, &mut rng))
        .collect();
    if bad.is_empty() {
        Outcome::new(true, format!("{} configurations, all properties hold", configs.len()))
    } else {
        Outcome::new(false, bad.join("; "))
    }
}

fn random_derivation(r: &TwistedRing, basis: &[Derivation], rng: &mut ChaCha8Rng) -> Derivation {
    let q = r.field().size() as u32;
    let mut d = Derivation::zero(r);
    for b in basis {
        let c = r.field().from_value(rng.gen_range(0..q)).unwrap();
        d = d.add(r, &b.scale(r, c).unwrap()).unwrap();
    }
    d
}

fn identity_failures(name: &str, r: &TwistedRing, rng: &mut ChaCha8Rng, commuting_cases: &mut usize) -> Vec<String> {
    let mut bad = Vec::new();
    let basis = der_space_generators(r).derivations(r).unwrap();
    for _ in 0..4 {
        let d = random_derivation(r, &basis, rng);
        if !is_derivation(r, &d) {
            bad.push(format!("{name}: random combination is not a derivation"));
            continue;
        }
        // power rule
        for _ in 0..3 {
            let a = random_elem(r, rng);
            let m = rng.gen_range(1..7u64);
            let lhs = d.apply(r, &r.pow(&a, m).unwrap()).unwrap();
            let da = d.apply(r, &a).unwrap();
            let mut rhs = r.zero();
            for i in 0..m {
                let term = r.mul(&r.mul(&r.pow(&a, i).unwrap(), &da).unwrap(), &r.pow(&a, m - 1 - i).unwrap()).unwrap();
                rhs = r.add(&rhs, &term).unwrap();
            }
            if lhs != rhs {
                bad.push(format!("{name}: power rule"));
            }
        }
        // units of finite order
        for g in 0..r.dim() {
            let a = r.basis(g);
            let order = r.unit_order(g);
            let da = d.apply(r, &a).unwrap();
            let mut sum = r.zero();
            for i in 0..order {
                let term = r
                    .mul(&r.mul(&r.pow(&a, i).unwrap(), &da).unwrap(), &r.pow(&a, order - 1 - i).unwrap())
                    .unwrap();
                sum = r.add(&sum, &term).unwrap();
            }
            if !sum.is_zero() {
                bad.push(format!("{name}: unit identity at {}", r.group().name(g)));
            }
        }
        // elements commuting with their image
        let mut candidates: Vec<RingElem> = (0..r.dim()).map(|g| r.basis(g)).collect();
        candidates.extend((0..8).map(|_| random_elem(r, rng)));
        candidates.extend(r.center_basis());
        for a in candidates {
            let da = d.apply(r, &a).unwrap();
            if da.is_zero() || r.mul(&a, &da).unwrap() != r.mul(&da, &a).unwrap() {
                continue;
            }
            *commuting_cases += 1;
            for k in 1..6u64 {
                let lhs = d.apply(r, &r.pow(&a, k).unwrap()).unwrap();
                let rhs = r
                    .scale(r.field().from_int(k as i64), &r.mul(&r.pow(&a, k - 1).unwrap(), &da).unwrap())
                    .unwrap();
                if lhs != rhs {
                    bad.push(format!("{name}: commuting power rule, k={k}"));
                }
            }
        }
    }
    bad
}

fn c10_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x10);
    let configs: Vec<(String, TwistedRing)> = vec![
        ("D6/F9 alpha3".into(), dihedral(3, 3, 2, Some(DihedralSign::Alpha3))),
        ("D8/F3 alpha3".into(), dihedral(4, 3, 1, Some(DihedralSign::Alpha3))),
        ("D12/F9 alpha1".into(), d12_alpha1()),
        ("C3xC3/F3".into(), abelian(&[3, 3], 3, 1)),
        ("C2xC4/F2".into(), abelian(&[2, 4], 2, 1)),
        ("C6/F3 twisted".into(), twisted_by_random(&abelian(&[6], 3, 1), 9)),
    ];
    let mut commuting = 0;
    let bad: Vec<String> = configs
        .iter()
        .flat_map(|(name, r)| identity_failures(name, r, &mut rng, &mut commuting))
        .collect();
    let pass = bad.is_empty() && commuting > 0;
    let detail = if bad.is_empty() {
        format!(
            "{} configurations; power rule, unit identity and {commuting} commuting cases hold",
            configs.len()
        )
    } else {
        bad.join("; ")
    };
    Outcome::new(pass, detail)
}

/// Writes past the test harness capture so results show without --nocapture.
fn emit(line: &str) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{line}");
}

#[test]
fn acceptance() {
    let criteria: Vec<(usize, &str, fn() -> Outcome)> = vec![
        (1, "D6/F9/alpha3 dimensions", c1_d6_dimensions),
        (2, "D6/F9/alpha3 listed derivations", c2_d6_listed_maps),
        (3, "D12/F9/alpha1 listed derivations", c3_d12_listed_maps),
        (4, "D12/F9/alpha1 center, Inn, HH^1", c4_d12_center_hh1),
        (5, "odd-n HH^1 sweep", c5_odd_sweep),
        (6, "semisimple vanishing", c6_semisimple),
        (7, "abelian partial-derivative basis", c7_abelian_basis),
        (8, "method agreement", c8_method_agreement),
        (9, "structural properties", c9_structural),
        (10, "product-rule identities", c10_identities),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let start = std::time::Instant::now();
        let outcome = run();
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        emit(&format!(
            "[{status}] criterion {id:>2} {name}: {} ({:.2}s)",
            outcome.detail,
            start.elapsed().as_secs_f64()
        ));
        if !outcome.pass {
            match KNOWN_ERRATA.iter().find(|(k, _)| *k == id) {
                Some((_, why)) => emit(&format!("       known erratum: {why}")),
                None => unexpected.push(id),
            }
        }
    }
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:?}");
}
