use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use superrough::approximation::ApproximationSpace;
use superrough::convex::build_co_lattice;
use superrough::lattice::{check_condition, is_long_lattice, Condition, ConditionWitness, FiniteLattice};
use superrough::par::Parallelism;
use superrough::partial::{AxiomReport, Checker, PartialAlgebraModel, Semantics, Theory};
use superrough::rough::{build_rough_algebra, check_prerough_axioms, PreRoughAlgebra, RoughAlgebra};
use superrough::super_rough::{
    build_super_rough, check_super_rough_axioms, represent as represent_model, Gate, SuperRoughSetAlgebra,
};
use superrough::sweep::random_lattices;
use superrough::theories;
use superrough::tolerance::{
    blocks as blocks_of, coapproximability, reconstruct_from_blocks, verify_block_system, BlockSystemReport,
};

use crate::input::{self, CliError, CliResult, VerifyInput};
use crate::{Format, Global, LatticeSource, Suite};

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn no_dot(g: &Global, command: &str) -> CliResult<()> {
    if g.format == Format::Dot {
        return Err(CliError::Usage(format!("`{command}` has no DOT output")));
    }
    Ok(())
}

fn braces(ids: &[String]) -> String {
    format!("{{{}}}", ids.join(","))
}

pub fn approx(
    g: &Global,
    path: &Path,
    lower: &[String],
    upper: &[String],
    rough_equal: Option<Vec<String>>,
    rough_includes: Option<Vec<String>>,
    between: Option<Vec<String>>,
) -> CliResult<()> {
    no_dot(g, "approx")?;
    let space = input::space(path)?;
    let mut text = String::new();
    let mut out = serde_json::Map::new();
    let mut queries =
        |kind: &str, sets: &[String], f: &dyn Fn(&[String]) -> superrough::Result<Vec<String>>| -> CliResult<()> {
            let mut rows = Vec::new();
            for set in sets {
                let ids = input::id_list(set);
                let result = f(&ids)?;
                writeln!(text, "{kind}({}) = {}", braces(&ids), braces(&result)).unwrap();
                rows.push(json!({ "set": ids, kind: result }));
            }
            if !sets.is_empty() {
                out.insert(kind.to_string(), Value::Array(rows));
            }
            Ok(())
        };
    queries("lower", lower, &|a| Ok(space.lower(a)?.members))?;
    queries("upper", upper, &|a| Ok(space.upper(a)?.members))?;
    for (kind, pair) in [("rough_equal", rough_equal), ("rough_includes", rough_includes)] {
        if let Some(pair) = pair {
            let (a, b) = (input::id_list(&pair[0]), input::id_list(&pair[1]));
            let answer = if kind == "rough_equal" {
                space.rough_equal(&a, &b)?
            } else {
                space.rough_includes(&a, &b)?
            };
            writeln!(text, "{kind}({}, {}) = {answer}", braces(&a), braces(&b)).unwrap();
            out.insert(kind.to_string(), json!({ "a": a, "b": b, "holds": answer }));
        }
    }
    if let Some(pair) = between {
        let (b, c) = (input::id_list(&pair[0]), input::id_list(&pair[1]));
        let witnesses = space.betweenness_solve(&b, &c)?;
        writeln!(
            text,
            "between B = {}, C = {}: {} witnesses",
            braces(&b),
            braces(&c),
            witnesses.len()
        )
        .unwrap();
        for w in &witnesses {
            let lower = space.definable(w.lower).members;
            let upper = space.definable(w.upper).members;
            writeln!(
                text,
                "  A = {}  lower = {}  upper = {}",
                braces(&w.set),
                braces(&lower),
                braces(&upper)
            )
            .unwrap();
        }
        let rows: Vec<Value> = witnesses
            .iter()
            .map(|w| json!({ "set": w.set, "lower": space.definable(w.lower).members, "upper": space.definable(w.upper).members }))
            .collect();
        out.insert("between".into(), json!({ "b": b, "c": c, "witnesses": rows }));
    }
    match g.format {
        Format::Json => print!("{}", pretty(&out)),
        _ => print!("{text}"),
    }
    Ok(())
}

fn build_all(g: &Global, space: &ApproximationSpace) -> CliResult<(RoughAlgebra, SuperRoughSetAlgebra)> {
    let rough = build_rough_algebra(space, g.cap_lattice as usize)?;
    let built = build_super_rough(&rough, g.cap_co as usize)?;
    Ok((rough, built))
}

pub fn build(g: &Global, path: &Path, out: &Path) -> CliResult<()> {
    no_dot(g, "build")?;
    let (rough, built) = build_all(g, &input::space(path)?)?;
    std::fs::create_dir_all(out).map_err(|source| CliError::Io {
        path: out.to_path_buf(),
        source,
    })?;
    let labels = rough.algebra().labels();
    let files = [
        ("rough_algebra.json", pretty(&rough.to_json())),
        ("tolerance.json", pretty(&built.tolerance().to_json(labels))),
        ("blocks.json", pretty(&built.blocks().to_json(labels))),
        ("co_lattice.dot", built.co().to_dot()),
        ("model.json", pretty(&built.model().to_json())),
    ];
    for (name, contents) in &files {
        input::write_file(&out.join(name), contents)?;
    }
    let conditions = built.conditions();
    match g.format {
        Format::Json => print!(
            "{}",
            pretty(&json!({
                "rough_algebra": rough.len(),
                "blocks": built.blocks().len(),
                "set_algebra": built.len(),
                "conditions": conditions,
                "files": files.iter().map(|(n, _)| out.join(n).display().to_string()).collect::<Vec<_>>(),
            }))
        ),
        _ => {
            println!("rough algebra: {} elements", rough.len());
            println!("coapproximability blocks: {}", built.blocks().len());
            println!("set-algebra: {} elements", built.len());
            if conditions.holds {
                println!("convex sublattices satisfy S_i, B_i, U_i");
            } else {
                for f in &conditions.failures {
                    println!("convex sublattices: {f}");
                }
            }
            for (name, _) in &files {
                println!("wrote {}", out.join(name).display());
            }
        }
    }
    Ok(())
}

/// One checked clause set.
struct Section {
    suite: &'static str,
    failing: Vec<String>,
    text: String,
    json: Value,
}

impl Section {
    fn axioms(suite: &'static str, report: AxiomReport) -> Self {
        Section {
            suite,
            failing: report.failing().into_iter().map(String::from).collect(),
            text: report.to_text(),
            json: serde_json::to_value(&report).expect("reports serialize"),
        }
    }

    fn blocks(report: BlockSystemReport, round_trip: Option<String>) -> Self {
        let mut failing: Vec<String> = report
            .clauses
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.id.to_string())
            .collect();
        let mut text = report.to_text();
        match &round_trip {
            None => text.push_str("  reconstruction from blocks: exact\n"),
            Some(e) => {
                writeln!(text, "  reconstruction from blocks: {e}").unwrap();
                failing.push("reconstruction".into());
            }
        }
        let mut json = serde_json::to_value(&report).expect("reports serialize");
        json["reconstruction"] = json!(round_trip.as_deref().unwrap_or("exact"));
        Section {
            suite: "blocks",
            failing,
            text,
            json,
        }
    }

    fn conditions(l: &FiniteLattice, witnesses: Vec<ConditionWitness>) -> Self {
        let mut text = String::from("lattice conditions\n");
        let mut failing = Vec::new();
        let mut rows = Vec::new();
        for w in &witnesses {
            writeln!(
                text,
                "  [{}] {}  {}",
                w.condition,
                if w.holds { "PASS" } else { "FAIL" },
                w.describe(l)
            )
            .unwrap();
            if !w.holds {
                failing.push(w.condition.to_string());
            }
            rows.push(json!({ "condition": w.condition, "holds": w.holds, "counterexample": w.assignment(l) }));
        }
        Section {
            suite: "conditions",
            failing,
            text,
            json: json!({ "conditions": rows }),
        }
    }
}

fn long_conditions(l: &FiniteLattice) -> Vec<ConditionWitness> {
    [Condition::Si, Condition::Bi, Condition::Ui]
        .into_iter()
        .map(|c| check_condition(l, c))
        .collect()
}

fn check(model: &PartialAlgebraModel, theory: &Theory, weak: bool) -> CliResult<AxiomReport> {
    let checker = Checker::new(model);
    Ok(if weak {
        checker.check_theory_with(theory, Semantics::Weak)?
    } else {
        checker.check_theory(theory)?
    })
}

fn block_section(alg: &PreRoughAlgebra) -> Section {
    let t = coapproximability(alg);
    let s = blocks_of(&t);
    let report = verify_block_system(alg.lattice(), &s);
    let round_trip = match reconstruct_from_blocks(alg.len(), &s) {
        Ok(back) if back == t => None,
        Ok(_) => Some("differs from the tolerance".into()),
        Err(e) => Some(e.to_string()),
    };
    Section::blocks(report, round_trip)
}

pub fn verify(
    g: &Global,
    suite: Suite,
    source: VerifyInput,
    theory: Option<&Path>,
    weak: bool,
    out: Option<&Path>,
) -> CliResult<()> {
    no_dot(g, "verify")?;
    let prerough = |m: &PartialAlgebraModel| -> CliResult<Section> {
        let r = if weak {
            check(m, theories::prerough(), true)?
        } else {
            check_prerough_axioms(m)?
        };
        Ok(Section::axioms("prerough", r))
    };
    let set_algebra = |m: &PartialAlgebraModel| -> CliResult<Section> {
        Ok(Section::axioms("set-algebra", check(m, theories::set_algebra(), weak)?))
    };
    let super_rough = |m: &PartialAlgebraModel| -> CliResult<Section> {
        let r = if weak {
            check(m, theories::super_rough(), true)?
        } else {
            check_super_rough_axioms(m)?
        };
        Ok(Section::axioms("super-rough", r))
    };
    let unsupported = |input: &str| CliError::Usage(format!("this suite cannot be run on a {input} input"));
    let mut sections = Vec::new();
    if let Some(path) = theory {
        let theory = input::theory(path)?;
        let model = match &source {
            VerifyInput::Model(p) => input::model(p)?,
            VerifyInput::Space(p) => build_all(g, &input::space(p)?)?.1.model().clone(),
            _ => return Err(CliError::Usage("--theory needs --model or --space".into())),
        };
        sections.push(Section::axioms("theory", check(&model, &theory, weak)?));
    } else {
        match &source {
            VerifyInput::Space(p) => {
                let (rough, built) = build_all(g, &input::space(p)?)?;
                let all = suite == Suite::All;
                if all || suite == Suite::Prerough {
                    sections.push(prerough(&rough.algebra().to_model())?);
                }
                if all || suite == Suite::SetAlgebra {
                    sections.push(set_algebra(built.model())?);
                }
                if all || suite == Suite::SuperRough {
                    sections.push(super_rough(built.model())?);
                }
                if all || suite == Suite::Blocks {
                    sections.push(block_section(rough.algebra()));
                }
                if all || suite == Suite::Conditions {
                    let co = built.co().lattice();
                    sections.push(Section::conditions(co, long_conditions(co)));
                }
            }
            VerifyInput::Model(p) => {
                let model = input::model(p)?;
                match suite {
                    Suite::Prerough => sections.push(prerough(&model)?),
                    Suite::SetAlgebra => sections.push(set_algebra(&model)?),
                    Suite::SuperRough => sections.push(super_rough(&model)?),
                    Suite::Blocks => sections.push(block_section(&PreRoughAlgebra::from_model(&model)?)),
                    Suite::All => {
                        sections.push(set_algebra(&model)?);
                        sections.push(super_rough(&model)?);
                    }
                    Suite::Conditions => return Err(unsupported("model")),
                }
            }
            VerifyInput::Lattice(p) => {
                if !matches!(suite, Suite::Conditions | Suite::All) {
                    return Err(unsupported("lattice"));
                }
                let l = input::lattice(
                    &LatticeSource {
                        lattice: Some(p.clone()),
                        chain: None,
                        boolean: None,
                    },
                    g.cap_lattice as usize,
                )?;
                sections.push(Section::conditions(&l, long_conditions(&l)));
            }
            VerifyInput::Missing => return Err(CliError::Usage("give --space, --model or --lattice".into())),
        }
    }
    let report = match g.format {
        Format::Json => pretty(&json!({
            "passes": sections.iter().all(|s| s.failing.is_empty()),
            "suites": sections.iter().map(|s| json!({ "suite": s.suite, "failing": s.failing, "report": s.json })).collect::<Vec<_>>(),
        })),
        _ => sections.iter().map(|s| s.text.as_str()).collect::<Vec<_>>().join("\n"),
    };
    print!("{report}");
    if let Some(path) = out {
        input::write_file(path, &report)?;
    }
    let failures: Vec<String> = sections
        .iter()
        .filter(|s| !s.failing.is_empty())
        .map(|s| format!("{} {}", s.suite, s.failing.join(", ")))
        .collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::ClauseFailure(failures.join("; ")))
    }
}

pub fn represent(g: &Global, path: &Path, gate: Gate, out: Option<&Path>) -> CliResult<()> {
    no_dot(g, "represent")?;
    let model = input::model(path)?;
    let rep = represent_model(&model, gate)?;
    let space = rep.space.to_json();
    let certificate = json!({ "gate": rep.gate, "certificate": rep.certificate });
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        input::write_file(&dir.join("space.json"), &pretty(&space))?;
        input::write_file(&dir.join("certificate.json"), &pretty(&certificate))?;
    }
    match g.format {
        Format::Json => print!(
            "{}",
            pretty(
                &json!({ "space": space, "singletons": rep.singletons, "blocks": rep.blocks, "gate": rep.gate, "certificate": rep.certificate })
            )
        ),
        _ => {
            let classes: Vec<String> = rep
                .space
                .classes()
                .iter()
                .map(|c| braces(&c.iter().map(|&i| rep.space.universe()[i].clone()).collect::<Vec<_>>()))
                .collect();
            println!(
                "recovered space: {} objects, classes {}",
                rep.space.universe().len(),
                classes.join(" ")
            );
            println!("singletons: {}, blocks: {}", rep.singletons, rep.blocks);
            println!("isomorphism certificate:");
            for (a, b) in &rep.certificate {
                println!("  {a} -> {b}");
            }
        }
    }
    Ok(())
}

pub fn co(g: &Global, source: &LatticeSource) -> CliResult<()> {
    let l = input::lattice(source, g.cap_lattice as usize)?;
    let co = build_co_lattice(&l, g.cap_co as usize)?;
    match g.format {
        Format::Dot => print!("{}", co.to_dot()),
        Format::Json => {
            let facts = co.facts(Parallelism::Auto);
            print!(
                "{}",
                pretty(&json!({ "ambient": l.len(), "size": co.len(), "lattice": co.to_json(), "facts": facts }))
            )
        }
        Format::Text => {
            let facts = co.facts(Parallelism::Auto);
            println!("Co: {} convex sublattices of a {}-element lattice", co.len(), l.len());
            for i in 0..co.len() {
                println!("  {}", co.label(i));
            }
            let yes = |b: bool| if b { "yes" } else { "no" };
            println!("atoms are the singletons: {}", yes(facts.singleton_atoms));
            println!("atomistic: {}", yes(facts.atomistic));
            println!("join-semidistributive: {}", yes(facts.join_semidistributive));
            println!(
                "S_i: {}  B_i: {}  U_i: {}",
                yes(facts.s_i),
                yes(facts.b_i),
                yes(facts.u_i)
            );
            for w in facts
                .semidistributivity_witness
                .iter()
                .chain(&facts.condition_witnesses)
            {
                println!("  {w}");
            }
            if let Some(m) = &facts.formula_mismatch {
                println!("join formula mismatch: {m}");
            }
        }
    }
    Ok(())
}

pub fn blocks(g: &Global, path: &Path) -> CliResult<()> {
    let space = input::space(path)?;
    let rough = build_rough_algebra(&space, g.cap_lattice as usize)?;
    let alg = rough.algebra();
    let t = coapproximability(alg);
    let s = blocks_of(&t);
    let report = verify_block_system(alg.lattice(), &s);
    match g.format {
        Format::Dot => print!("{}", rough.to_dot()),
        Format::Json => print!(
            "{}",
            pretty(&json!({
                "tolerance": t.to_json(alg.labels()),
                "blocks": s.to_json(alg.labels()),
                "report": report,
            }))
        ),
        Format::Text => {
            println!(
                "rough algebra: {} elements, tolerance: {} pairs",
                alg.len(),
                t.pairs().count()
            );
            for b in &s.blocks {
                let names: Vec<&str> = b.iter().map(|&x| alg.label(x)).collect();
                println!("  block {}", names.join(" "));
            }
            print!("{}", report.to_text());
        }
    }
    Ok(())
}

pub fn conditions(g: &Global, source: &LatticeSource, sweep: Option<usize>, max_size: usize) -> CliResult<()> {
    no_dot(g, "conditions")?;
    let Some(count) = sweep else {
        let l = input::lattice(source, g.cap_lattice as usize)?;
        let report = is_long_lattice(&l, Parallelism::Auto);
        match g.format {
            Format::Json => {
                let rows: Vec<Value> = report
                    .witnesses
                    .iter()
                    .map(|w| json!({ "condition": w.condition, "holds": w.holds, "counterexample": w.assignment(&l) }))
                    .collect();
                print!(
                    "{}",
                    pretty(&json!({ "size": l.len(), "long_lattice": report.is_long, "conditions": rows }))
                )
            }
            _ => {
                for w in &report.witnesses {
                    println!("{}", w.describe(&l));
                }
                println!("{}", report.summary(&l));
            }
        }
        return Ok(());
    };
    if max_size == 0 || max_size > g.cap_lattice as usize {
        return Err(CliError::Usage(format!("--max-size must lie in 1..={}", g.cap_lattice)));
    }
    let lattices = random_lattices(g.seed, count, max_size);
    let mut holding = vec![0usize; Condition::ALL.len()];
    let mut violations = Vec::new();
    for (i, l) in lattices.iter().enumerate() {
        let v: Vec<bool> = Condition::ALL.iter().map(|&c| check_condition(l, c).holds).collect();
        for (h, &ok) in holding.iter_mut().zip(&v) {
            *h += usize::from(ok);
        }
        let holds = |c: Condition| v[Condition::ALL.iter().position(|&d| d == c).expect("listed")];
        if holds(Condition::S) && !holds(Condition::Si) {
            violations.push(format!("lattice #{i}: S holds but S_i fails"));
        }
        if holds(Condition::B) && holds(Condition::U) && !(holds(Condition::Bi) && holds(Condition::Ui)) {
            violations.push(format!("lattice #{i}: B and U hold but B_i and U_i do not"));
        }
    }
    match g.format {
        Format::Json => {
            let counts: serde_json::Map<String, Value> = Condition::ALL
                .iter()
                .zip(&holding)
                .map(|(c, &n)| (c.to_string(), json!(n)))
                .collect();
            print!(
                "{}",
                pretty(
                    &json!({ "seed": g.seed, "lattices": count, "max_size": max_size, "holding": counts, "violations": violations })
                )
            )
        }
        _ => {
            println!(
                "seed {}: {count} random lattices with at most {max_size} elements",
                g.seed
            );
            for (c, n) in Condition::ALL.iter().zip(&holding) {
                println!("  {c}: holds on {n}");
            }
            println!("implication violations: {}", violations.len());
            for v in &violations {
                println!("  {v}");
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::ClauseFailure(violations.join("; ")))
    }
}
