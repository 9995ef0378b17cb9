//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines reach the console. The
//! process fails when a criterion outside `KNOWN_FAILING` fails, or when a
//! criterion listed there starts passing.

use std::time::{Duration, Instant};

use netclass::algebra::{
    apolar_annihilator, classify_algebra, hilbert_vector, printed_ideal, quotient_algebra,
    structure_constants, QuadricSpace,
};
use netclass::cubic::{aronhold, classify_cubic, CubicType};
use netclass::forms::singular_points;
use netclass::gf::{FieldCtx, PrimeField};
use netclass::net::{
    act, classify_net, has_rank_one, net_disc, net_slice, random_gl3_with, random_net_with,
    rank_one_members, representative, representatives, OrbitLabel,
};
use netclass::oracle::{
    full_sweep_nets, orbit_by_generators, pencil_labels_on_orbit, SweepMode, PGL3_F5_ORDER,
};
use netclass::parallel::Execution;
use netclass::pencil::{pencil_representatives, PencilClassifier};
use netclass::subspace::Grassmannian;
use netclass::verify::{pencil_table_checks, proof_checks, Status};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that cannot hold as stated because the printed tables disagree
/// with their own representatives; see the README.
const KNOWN_FAILING: &[u32] = &[9];

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn ctx(p: u64) -> FieldCtx {
    FieldCtx::standard(p).expect("supported prime")
}

fn table_labels() -> Outcome {
    let mut bad = Vec::new();
    for p in [5, 13] {
        let c = ctx(p);
        for (label, w) in representatives(&c.prime_field()) {
            match classify_net(&c, &w) {
                Ok(l) if l == label => {}
                other => bad.push(format!("p={p} {label}: {other:?}")),
            }
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "20 of 20 rows".into()
        } else {
            bad.join("; ")
        },
    )
}

fn disc_types() -> Outcome {
    let mut bad = Vec::new();
    for p in [5, 13] {
        let c = ctx(p);
        let f = c.prime_field();
        for (label, w) in representatives(&f) {
            let got = classify_cubic(&c, &net_disc(&f, &w));
            if got != Ok(label.disc_type()) {
                bad.push(format!("p={p} {label}: {got:?}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "Zero through Node on all rows".into()
        } else {
            bad.join("; ")
        },
    )
}

fn slice_dichotomy() -> Outcome {
    let c = ctx(5);
    let f = c.prime_field();
    let slice = |l| classify_cubic(&c, &net_slice(&f, &representative(&f, l).unwrap()));
    let (a, b) = (slice(OrbitLabel::I_a), slice(OrbitLabel::I_b));
    outcome(
        a == Ok(CubicType::Zero) && b == Ok(CubicType::TripleLine),
        format!("I_a slice {a:?}, I_b slice {b:?}"),
    )
}

fn rank_one_dichotomy() -> Outcome {
    let c = ctx(5);
    let f = c.prime_field();
    let a = representative(&f, OrbitLabel::IV_a).unwrap();
    let b = representative(&f, OrbitLabel::IV_b).unwrap();
    let search = |w| rank_one_members(&c, w, &[1, 2, 3, 4]).map(|l| !l.is_empty());
    let (fa, fb) = (has_rank_one(&f, &a), has_rank_one(&f, &b));
    let (sa, sb) = (search(&a), search(&b));
    outcome(
        fa && !fb && sa == Ok(true) && sb == Ok(false),
        format!("IV_a {fa}/{sa:?}, IV_b {fb}/{sb:?} (quartic test / search to F_625)"),
    )
}

fn gl_invariance() -> Outcome {
    let c = ctx(5);
    let f = c.prime_field();
    let reps = representatives(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut bad = 0;
    for _ in 0..1000 {
        let (label, w) = &reps[rng.gen_range(0..reps.len())];
        let moved = act(&f, &random_gl3_with(&f, &mut rng), w).unwrap();
        if classify_net(&c, &moved).as_ref() != Ok(label) {
            bad += 1;
        }
    }
    outcome(
        bad == 0,
        format!("{bad} of 1000 moved representatives changed label"),
    )
}

fn distinct_orbits() -> Outcome {
    let f = PrimeField::new(5).unwrap();
    let g = Grassmannian::<3>::new(f);
    let mut owner = vec![u8::MAX; g.len() as usize];
    let mut clashes = Vec::new();
    let mut sizes = Vec::new();
    for (i, (label, w)) in representatives(&f).iter().enumerate() {
        let orbit = orbit_by_generators(&g, w.canonical());
        sizes.push(format!("{label}:{}", orbit.len()));
        for &idx in orbit.indices() {
            let slot = &mut owner[idx as usize];
            if *slot != u8::MAX {
                clashes.push(format!("{label} meets row {}", *slot));
                break;
            }
            *slot = i as u8;
        }
        if !PGL3_F5_ORDER.is_multiple_of(orbit.len() as u64) {
            clashes.push(format!(
                "{label} orbit size {} does not divide |PGL3|",
                orbit.len()
            ));
        }
    }
    outcome(
        clashes.is_empty(),
        if clashes.is_empty() {
            format!("orbit sizes {}", sizes.join(" "))
        } else {
            clashes.join("; ")
        },
    )
}

/// `[n choose k]_q` from the product formula.
fn gaussian_binomial(n: u32, k: u32, q: u64) -> u64 {
    let num: u128 = (0..k).map(|i| (q as u128).pow(n - i) - 1).product();
    let den: u128 = (0..k).map(|i| (q as u128).pow(i + 1) - 1).product();
    (num / den) as u64
}

fn full_sweep() -> Outcome {
    let f = PrimeField::new(5).unwrap();
    match full_sweep_nets(&f, SweepMode::Full, Execution::Auto) {
        Err(e) => outcome(false, e.to_string()),
        Ok(c) => {
            let expected = gaussian_binomial(6, 3, 5);
            let labelled: u64 = c.label_counts.values().sum();
            outcome(
                c.total == expected && labelled == expected && c.impossible_disc == 0 && c.unclassified == 0,
                format!(
                    "{} nets (expected {expected}), {} three-concurrent-line discriminants, {} unclassified, {} orbits",
                    c.total,
                    c.impossible_disc,
                    c.unclassified,
                    c.orbit_sizes.values().map(Vec::len).sum::<usize>()
                ),
            )
        }
    }
}

fn pencil_suite() -> Outcome {
    let c = ctx(5);
    let f = c.prime_field();
    let g = Grassmannian::<2>::new(f);
    let classifier = PencilClassifier::calibrate(&c).unwrap();
    let mut labels = Vec::new();
    let mut problems = Vec::new();
    for (label, u) in pencil_representatives(&f) {
        match classifier.classify(&c, &u) {
            Ok(l) => labels.push(l),
            Err(e) => problems.push(format!("{label}: {e}")),
        }
        let orbit = orbit_by_generators(&g, u.canonical());
        match pencil_labels_on_orbit(&c, &orbit, Execution::Auto) {
            Ok(seen) if seen == [label] => {}
            other => problems.push(format!("{label} orbit: {other:?}")),
        }
    }
    labels.sort();
    labels.dedup();
    let warns: Vec<String> = pencil_table_checks(&c)
        .into_iter()
        .filter(|r| r.status == Status::Warn)
        .map(|r| r.id)
        .collect();
    let ok = problems.is_empty() && labels.len() == 8 && warns == ["pencil-heading/SqOne_a"];
    outcome(
        ok,
        format!(
            "{} distinct labels, orbit problems {:?}, warnings {:?}",
            labels.len(),
            problems,
            warns
        ),
    )
}

fn algebra_correspondence() -> Outcome {
    let c = ctx(5);
    let f = c.prime_field();
    let mut bad = Vec::new();
    for (label, w) in representatives(&f) {
        let ideal = printed_ideal(&f, label);
        if apolar_annihilator(&f, &w) != QuadricSpace::span(&f, &ideal) {
            bad.push(format!(
                "{label}: annihilator differs from the printed quadrics"
            ));
        }
        match quotient_algebra(&f, &ideal) {
            Err(e) => bad.push(format!("{label}: {e}")),
            Ok(t) => {
                match hilbert_vector(&f, &t) {
                    Ok(h) if h.is_type33() => {}
                    other => bad.push(format!("{label}: Hilbert vector {other:?}")),
                }
                match classify_algebra(&c, &t) {
                    Ok(l) if l == label => {}
                    other => bad.push(format!("{label}: quotient classifies as {other:?}")),
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "10 of 10 rows".into()
        } else {
            bad.join("; ")
        },
    )
}

fn round_trip() -> Outcome {
    let c = ctx(5);
    let f = c.prime_field();
    let mut bad = Vec::new();
    for (label, w) in representatives(&f) {
        let got = classify_algebra(&c, &structure_constants(&w));
        if got.as_ref() != Ok(&label) {
            bad.push(format!("{label}: {got:?}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..100 {
        let w = random_net_with(&f, &mut rng);
        let (a, n) = (
            classify_algebra(&c, &structure_constants(&w)),
            classify_net(&c, &w),
        );
        if a.as_ref().ok() != n.as_ref().ok() || n.is_err() {
            bad.push(format!("{:?}: algebra {:?}, net {n:?}", w.canonical(), a));
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "10 representatives and 100 random nets".into()
        } else {
            bad.join("; ")
        },
    )
}

fn proof_transformations() -> Outcome {
    let records = proof_checks(&ctx(5));
    let cases: Vec<&str> = records.iter().map(|r| r.id.as_str()).collect();
    let all = ["iii", "iv", "v", "vi", "vii", "viii"]
        .iter()
        .all(|c| cases.contains(&format!("proof/{c}").as_str()));
    let failing: Vec<String> = records
        .iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| format!("{}: {}", r.id, r.detail))
        .collect();
    let detail = records
        .iter()
        .map(|r| format!("{} {}", r.id, r.status))
        .collect::<Vec<_>>()
        .join(", ");
    outcome(
        all && failing.is_empty(),
        if failing.is_empty() {
            detail
        } else {
            failing.join("; ")
        },
    )
}

fn nonsingular_consistency() -> Outcome {
    let c = ctx(5);
    let f = c.prime_field();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (mut checked, mut bad) = (0, Vec::new());
    while checked < 100 {
        let w = random_net_with(&f, &mut rng);
        let disc = net_disc(&f, &w);
        let inv = aronhold(&f, &disc);
        if inv.is_singular(&f) {
            continue;
        }
        checked += 1;
        let js = (inv.j(&f), aronhold(&f, &net_slice(&f, &w)).j(&f));
        if js.0 != js.1 {
            bad.push(format!("j mismatch {js:?}"));
        }
        match singular_points(&c, &disc) {
            Ok(pts) if pts.is_empty() => {}
            other => bad.push(format!("singular points {other:?}")),
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{checked} nets")
        } else {
            bad.join("; ")
        },
    )
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() {
    let s = Duration::from_secs;
    let criteria: [Criterion; 12] = [
        (1, "representative labels over F_5 and F_13", s(1), table_labels),
        (2, "discriminant types of the representatives", s(1), disc_types),
        (3, "case I slice dichotomy", s(1), slice_dichotomy),
        (4, "case IV rank-one dichotomy", s(30), rank_one_dichotomy),
        (
            5,
            "GL-invariance on 1000 random pairs",
            s(60),
            gl_invariance,
        ),
        (
            6,
            "ten pairwise disjoint F_5-orbits",
            s(30 * 60),
            distinct_orbits,
        ),
        (7, "full F_5 net sweep", s(2 * 3600), full_sweep),
        (8, "pencil suite", s(30 * 60), pencil_suite),
        (
            9,
            "algebra correspondence with printed ideals",
            s(10),
            algebra_correspondence,
        ),
        (10, "structure-constant round trip", s(60), round_trip),
        (
            11,
            "proof transformations",
            s(10 * 60),
            proof_transformations,
        ),
        (
            12,
            "nonsingular consistency of disc and slice",
            s(5 * 60),
            nonsingular_consistency,
        ),
    ];
    let mut unexpected = Vec::new();
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let pass = out.ok && took <= budget;
        let timing = if took <= budget {
            String::new()
        } else {
            format!(" over budget {budget:?};")
        };
        println!(
            "{} criterion {id:>2}: {name} [{:.2}s]{timing} {}",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            out.detail
        );
        if pass == KNOWN_FAILING.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria with unexpected outcome: {unexpected:?}");
        std::process::exit(1);
    }
}
