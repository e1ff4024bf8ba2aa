//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs the whole suite twice with the same seed; the second run feeds the
//! determinism criterion. Exits non-zero on failures only when
//! `SUPERROUGH_ACCEPTANCE_STRICT=1`.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superrough::approximation::{ApproximationSpace, ClassSet};
use superrough::convex::{
    addable_pairs, build_co_lattice, is_convexly_isomorphic, legal_splits, poset_construct, removable_covers,
    Construction,
};
use superrough::lattice::{check_condition, Condition, FiniteLattice, FinitePoset};
use superrough::par::Parallelism;
use superrough::rough::{build_rough_algebra, rough_carrier_size};
use superrough::super_rough::{
    build_super_rough, check_super_rough_axioms, represent, rough_isomorphism, verify_certificate,
    verify_set_algebra_laws, Gate,
};
use superrough::sweep::{all_spaces, lattices_up_to, naturally_labelled_posets, random_lattices};
use superrough::tolerance::{
    block_interval, blocks, coapproximability, is_compatible_rough, reconstruct_from_blocks, verify_block_system,
};

const SEED: u64 = 0;

struct Outcome {
    pass: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, details: Vec<String>) -> Self {
        Outcome { pass, details }
    }
}

struct Criterion {
    id: u8,
    title: &'static str,
    limit: Option<Duration>,
    run: fn(u64) -> Outcome,
}

fn spaces(max: usize) -> Vec<ApproximationSpace> {
    (1..=max).flat_map(all_spaces).collect()
}

fn describe(space: &ApproximationSpace) -> String {
    let classes: Vec<String> = space
        .classes()
        .iter()
        .map(|c| {
            c.iter()
                .map(|&i| space.universe()[i].as_str())
                .collect::<Vec<_>>()
                .join("")
        })
        .collect();
    format!("{{{}}}", classes.join("|"))
}

fn tally(counts: &BTreeMap<String, usize>) -> String {
    if counts.is_empty() {
        return "none".into();
    }
    let mut ids: Vec<(&String, &usize)> = counts.iter().collect();
    ids.sort_by_key(|(id, _)| (id.len(), id.as_str()));
    ids.iter()
        .map(|(id, n)| format!("{id}×{n}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn compatibility(_: u64) -> Outcome {
    let mut failures = Vec::new();
    let all = spaces(5);
    for space in &all {
        let r = build_rough_algebra(space, 64).expect("carrier within cap");
        let c = is_compatible_rough(r.algebra(), &coapproximability(r.algebra()));
        if let Some(w) = c.counterexample {
            failures.push(format!("{}: {w}", describe(space)));
        }
    }
    let mut details = vec![format!(
        "{} spaces on 1..5 objects, {} incompatible",
        all.len(),
        failures.len()
    )];
    details.extend(failures.into_iter().take(3));
    Outcome::new(details.len() == 1, details)
}

fn intervals(_: u64) -> Outcome {
    let (mut total, mut bad) = (0, Vec::new());
    for space in spaces(5) {
        let r = build_rough_algebra(&space, 64).expect("carrier within cap");
        let l = r.algebra().lattice();
        for b in &blocks(&coapproximability(r.algebra())).blocks {
            total += 1;
            if let Err(e) = block_interval(l, b) {
                bad.push(format!("{}: {e}", describe(&space)));
            }
        }
    }
    let mut details = vec![format!("{total} blocks checked, {} are not intervals", bad.len())];
    details.extend(bad.into_iter().take(3));
    Outcome::new(details.len() == 1, details)
}

fn block_systems(_: u64) -> Outcome {
    let mut bad = Vec::new();
    let all = spaces(5);
    for space in &all {
        let r = build_rough_algebra(space, 64).expect("carrier within cap");
        let t = coapproximability(r.algebra());
        let s = blocks(&t);
        let report = verify_block_system(r.algebra().lattice(), &s);
        if !report.passes {
            let failed: Vec<String> = report
                .clauses
                .iter()
                .filter(|c| !c.holds)
                .map(|c| c.id.to_string())
                .collect();
            bad.push(format!("{}: conditions {} fail", describe(space), failed.join(", ")));
        }
        match reconstruct_from_blocks(r.len(), &s) {
            Ok(back) if back == t && blocks(&back) == s => {}
            Ok(_) => bad.push(format!("{}: reconstruction differs", describe(space))),
            Err(e) => bad.push(format!("{}: {e}", describe(space))),
        }
    }
    let mut details = vec![format!("{} block systems, {} problems", all.len(), bad.len())];
    details.extend(bad.into_iter().take(3));
    Outcome::new(details.len() == 1, details)
}

fn set_algebra_laws(_: u64) -> Outcome {
    let (mut strict, mut weak) = (BTreeMap::new(), BTreeMap::new());
    let all = spaces(4);
    let mut passing = 0;
    let mut max_co = 0;
    for space in &all {
        let r = build_super_rough(&build_rough_algebra(space, 64).unwrap(), 16).unwrap();
        max_co = max_co.max(r.len());
        let report = verify_set_algebra_laws(&r).unwrap();
        passing += usize::from(report.passes());
        for c in report.clauses.iter().filter(|c| !c.holds) {
            *strict.entry(c.id.clone()).or_insert(0) += 1;
            if !c.holds_weakly {
                *weak.entry(c.id.clone()).or_insert(0) += 1;
            }
        }
    }
    let max_rough = all.iter().map(rough_carrier_size).max().unwrap_or(0);
    Outcome::new(
        passing == all.len(),
        vec![
            format!(
                "{} spaces on 1..4 objects; rough carriers up to {max_rough}, set-algebra carriers up to {max_co}",
                all.len()
            ),
            format!("all 20 clauses pass on {passing} spaces"),
            format!("strict failures (clause×spaces): {}", tally(&strict)),
            format!("failures with conclusions read weakly: {}", tally(&weak)),
        ],
    )
}

fn abstract_axioms(_: u64) -> Outcome {
    let (mut strict, mut weak) = (BTreeMap::new(), BTreeMap::new());
    let all = spaces(4);
    let mut passing = 0;
    for space in &all {
        let r = build_super_rough(&build_rough_algebra(space, 64).unwrap(), 16).unwrap();
        let report = check_super_rough_axioms(r.model()).unwrap();
        passing += usize::from(report.passes());
        for c in report.clauses.iter().filter(|c| !c.holds) {
            *strict.entry(c.id.clone()).or_insert(0) += 1;
            if !c.holds_weakly {
                *weak.entry(c.id.clone()).or_insert(0) += 1;
            }
        }
    }
    Outcome::new(
        passing == all.len(),
        vec![
            format!("all 14 axioms pass on {passing} of {} spaces", all.len()),
            format!("strict failures (clause×spaces): {}", tally(&strict)),
            format!("failures with conclusions read weakly: {}", tally(&weak)),
        ],
    )
}

fn round_trip(_: u64) -> Outcome {
    let all = spaces(4);
    let (mut ok, mut full_gate, mut bad) = (0, 0, Vec::new());
    for space in &all {
        let original = build_rough_algebra(space, 64).unwrap();
        let r = build_super_rough(&original, 16).unwrap();
        full_gate += usize::from(represent(r.model(), Gate::Full).is_ok());
        match represent(r.model(), Gate::Reconstructive) {
            Ok(rep) => {
                let iso = rough_isomorphism(original.algebra(), rep.rebuilt.rough().algebra()).is_some();
                let cert = verify_certificate(r.model(), rep.rebuilt.model(), &rep.certificate);
                match (iso, cert) {
                    (true, Ok(())) => ok += 1,
                    (false, _) => bad.push(format!("{}: rough algebras not isomorphic", describe(space))),
                    (_, Err(e)) => bad.push(format!("{}: {e}", describe(space))),
                }
            }
            Err(e) => bad.push(format!("{}: {e}", describe(space))),
        }
    }
    let mut details = vec![
        format!(
            "{ok} of {} spaces recovered up to rough-algebra isomorphism; certificates re-validated",
            all.len()
        ),
        format!("gate: reduct is a lattice and every other axiom holds weakly; the strict gate admits {full_gate}"),
    ];
    details.extend(bad.into_iter().take(3));
    Outcome::new(ok == all.len(), details)
}

fn conditions(seed: u64) -> Outcome {
    let mut sample = random_lattices(seed, 500, 8);
    let exhaustive = lattices_up_to(6);
    let n_exhaustive = exhaustive.len();
    sample.extend(exhaustive);
    let (mut s, mut bu, mut bad) = (0, 0, Vec::new());
    for (i, l) in sample.iter().enumerate() {
        let holds = |c| check_condition(l, c).holds;
        if holds(Condition::S) {
            s += 1;
            if !holds(Condition::Si) {
                bad.push(format!("lattice #{i} satisfies S but not S_i"));
            }
        }
        if holds(Condition::B) && holds(Condition::U) {
            bu += 1;
            if !(holds(Condition::Bi) && holds(Condition::Ui)) {
                bad.push(format!("lattice #{i} satisfies B and U but not B_i and U_i"));
            }
        }
    }
    let mut details = vec![
        format!("seed {seed}: 500 random lattices on 1..8 elements plus all {n_exhaustive} lattices on 1..6 elements"),
        format!("{s} satisfy S, {bu} satisfy B and U, {} violations", bad.len()),
    ];
    details.extend(bad.into_iter().take(3));
    Outcome::new(details.len() == 2, details)
}

fn co_lattices(_: u64) -> Outcome {
    let chain = build_co_lattice(&FiniteLattice::chain(3), 512).unwrap().len();
    let square = build_co_lattice(&FiniteLattice::boolean(2), 512).unwrap().len();
    let ambient = lattices_up_to(8);
    let mut fails: BTreeMap<&str, (usize, Option<String>)> = BTreeMap::new();
    for l in &ambient {
        let f = build_co_lattice(l, 512).unwrap().facts(Parallelism::Auto);
        let checks = [
            ("S_i", f.s_i),
            ("B_i", f.b_i),
            ("U_i", f.u_i),
            ("join-semidistributivity", f.join_semidistributive),
            ("join formula = closure", f.formula_mismatch.is_none()),
        ];
        for (name, holds) in checks {
            if !holds {
                let e = fails.entry(name).or_insert((0, None));
                e.0 += 1;
                e.1.get_or_insert_with(|| format!("{} elements, {:?}", l.len(), l.labels()));
            }
        }
    }
    let counts_ok = chain == 7 && square == 10;
    let mut details = vec![
        format!("|Co(3-chain)| = {chain}, |Co(2x2)| = {square}"),
        format!("{} ambient lattices on 1..8 elements", ambient.len()),
    ];
    for (name, (n, first)) in &fails {
        details.push(format!(
            "{name} fails on {n} lattices, first on {}",
            first.as_deref().unwrap_or("")
        ));
    }
    Outcome::new(counts_ok && fails.is_empty(), details)
}

fn subsets<T: Clone>(items: &[T]) -> impl Iterator<Item = Vec<T>> + '_ {
    (0u64..1 << items.len()).map(move |m| {
        (0..items.len())
            .filter(|&i| m >> i & 1 == 1)
            .map(|i| items[i].clone())
            .collect()
    })
}

fn constructions(_: u64) -> Outcome {
    let (mut checked, mut bad, mut posets) = (0, Vec::new(), 0);
    for n in 0..=5 {
        for p in naturally_labelled_posets(n) {
            posets += 1;
            let mut steps: Vec<Construction> = subsets(&removable_covers(&p)).map(Construction::RemoveCovers).collect();
            steps.extend(legal_splits(&p).into_iter().map(Construction::Split));
            steps.extend(subsets(&addable_pairs(&p)).map(Construction::AddPairs));
            for step in steps {
                let q: FinitePoset = match poset_construct(&p, &step) {
                    Ok(q) => q,
                    Err(_) => continue,
                };
                checked += 1;
                if !is_convexly_isomorphic(&p, &q, 24).unwrap() {
                    bad.push(format!("{:?} on {:?}", step, p.relation()));
                }
            }
        }
    }
    let mut details = vec![format!(
        "{posets} labelled posets on 0..5 elements, {checked} legal constructions, {} failures",
        bad.len()
    )];
    details.extend(bad.into_iter().take(3));
    Outcome::new(details.len() == 1, details)
}

fn betweenness(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = spaces(5);
    let mut bad = Vec::new();
    let mut witnesses = 0;
    for q in 0..100 {
        let space = &pool[rng.gen_range(0..pool.len())];
        let n = space.universe().len();
        let pick = |mask: u64| -> Vec<String> {
            (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| space.universe()[i].clone())
                .collect()
        };
        let (b, c) = (pick(rng.gen::<u64>()), pick(rng.gen::<u64>()));
        let solved = space.betweenness_solve(&b, &c).unwrap();
        witnesses += solved.len();
        let b_set = space.resolve(&b).unwrap();
        let c_set = space.resolve(&c).unwrap();
        let members = |k: ClassSet| space.members(k).into_iter().collect::<BTreeSet<usize>>();
        let mut expected = BTreeSet::new();
        for mask in 0u64..1 << n {
            let a: BTreeSet<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let (lo, hi) = (space.lower_classes(&a), space.upper_classes(&a));
            if members(lo).is_subset(&b_set) && c_set.is_subset(&members(hi)) {
                expected.insert((lo, hi));
            }
        }
        let got: BTreeSet<(ClassSet, ClassSet)> = solved.iter().map(|w| (w.lower, w.upper)).collect();
        let realised = solved.iter().all(|w| {
            let a = space.resolve(&w.set).unwrap();
            (space.lower_classes(&a), space.upper_classes(&a)) == (w.lower, w.upper)
        });
        if got != expected || got.len() != solved.len() || !realised {
            bad.push(format!("query {q} on {}: B = {b:?}, C = {c:?}", describe(space)));
        }
    }
    let mut details = vec![format!(
        "seed {seed}: 100 queries, {witnesses} witnesses, {} disagreements",
        bad.len()
    )];
    details.extend(bad.into_iter().take(3));
    Outcome::new(details.len() == 1, details)
}

const CRITERIA: [Criterion; 10] = [
    Criterion {
        id: 1,
        title: "coapproximability is compatible with meet, join, L, neg (|X| <= 5)",
        limit: Some(Duration::from_secs(60)),
        run: compatibility,
    },
    Criterion {
        id: 2,
        title: "every block is the interval between its meet and join",
        limit: None,
        run: intervals,
    },
    Criterion {
        id: 3,
        title: "block systems satisfy the four conditions and reconstruct exactly",
        limit: None,
        run: block_systems,
    },
    Criterion {
        id: 4,
        title: "set-algebra laws hold on every build with |X| <= 4",
        limit: Some(Duration::from_secs(300)),
        run: set_algebra_laws,
    },
    Criterion {
        id: 5,
        title: "built models satisfy all super rough axioms",
        limit: None,
        run: abstract_axioms,
    },
    Criterion {
        id: 6,
        title: "represent after build recovers an isomorphic rough algebra",
        limit: None,
        run: round_trip,
    },
    Criterion {
        id: 7,
        title: "S implies S_i and B with U implies B_i with U_i",
        limit: None,
        run: conditions,
    },
    Criterion {
        id: 8,
        title: "Co-lattice counts and S_i, B_i, U_i, SD, join formula on lattices <= 8",
        limit: None,
        run: co_lattices,
    },
    Criterion {
        id: 9,
        title: "poset constructions preserve the convex-subset lattice (<= 5 elements)",
        limit: Some(Duration::from_secs(120)),
        run: constructions,
    },
    Criterion {
        id: 10,
        title: "betweenness solver agrees with brute force",
        limit: None,
        run: betweenness,
    },
];

/// Runs every criterion; returns the timing-free report and the verdicts.
fn suite(seed: u64, verbose: bool) -> (String, Vec<bool>) {
    let mut report = String::new();
    let mut verdicts = Vec::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)(seed);
        let elapsed = start.elapsed();
        let in_time = c.limit.is_none_or(|limit| elapsed <= limit);
        let pass = outcome.pass && in_time;
        let status = if pass { "PASS" } else { "FAIL" };
        report.push_str(&format!(
            "criterion {:>2}: {} {}\n",
            c.id,
            if outcome.pass { "PASS" } else { "FAIL" },
            c.title
        ));
        for d in &outcome.details {
            report.push_str(&format!("    {d}\n"));
        }
        if verbose {
            let limit = c
                .limit
                .map(|l| format!(" (limit {}s)", l.as_secs()))
                .unwrap_or_default();
            println!("criterion {:>2}: {status} {} [{:.2?}{limit}]", c.id, c.title, elapsed);
            for d in &outcome.details {
                println!("    {d}");
            }
        }
        verdicts.push(pass);
    }
    (report, verdicts)
}

fn main() {
    let (first, mut verdicts) = suite(SEED, true);
    let start = Instant::now();
    let (second, _) = suite(SEED, false);
    let same = first == second;
    println!(
        "criterion 11: {} two runs with seed {SEED} give byte-identical reports ({} bytes) [{:.2?}]",
        if same { "PASS" } else { "FAIL" },
        first.len(),
        start.elapsed()
    );
    verdicts.push(same);
    let passed = verdicts.iter().filter(|&&v| v).count();
    println!("acceptance: {passed}/{} criteria pass", verdicts.len());
    let strict = std::env::var("SUPERROUGH_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && passed != verdicts.len() {
        std::process::exit(1);
    }
}
