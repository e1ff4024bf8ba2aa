use std::fmt::Write;
use std::sync::OnceLock;

use serde::Serialize;

use super::theory::{Atom, Clause, Formula, Theory};
use super::{PartialAlgebraModel, Term};
use crate::error::{Error, Result};
use crate::lattice::{check_condition_with, is_long_lattice, Condition, FiniteLattice};
use crate::par::{self, Parallelism};

const WITNESS_CAP: usize = 32;
const MAX_VARIABLES: usize = 6;

/// How conclusions are read.
///
/// Premises are always existence equations. Under `Strict`, `=` in a
/// conclusion demands both sides defined and equal and `~*` demands equal
/// definedness; under `Weak`, every conclusion equation only has to hold
/// where both sides are defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Strict,
    Weak,
}

/// Outcome of checking one formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub counterexample: Option<String>,
    /// Existential witnesses, first few only.
    pub witnesses: Vec<String>,
    pub witness_count: usize,
}

impl Verdict {
    fn pass() -> Self {
        Verdict {
            holds: true,
            counterexample: None,
            witnesses: Vec::new(),
            witness_count: 0,
        }
    }

    fn fail(why: String) -> Self {
        Verdict {
            holds: false,
            counterexample: Some(why),
            witnesses: Vec::new(),
            witness_count: 0,
        }
    }
}

/// Per-clause result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseOutcome {
    pub id: String,
    pub statement: String,
    pub holds: bool,
    /// Whether the clause holds when conclusions are read weakly.
    pub holds_weakly: bool,
    pub counterexample: Option<String>,
    pub witnesses: Vec<String>,
    pub witness_count: usize,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub theory: String,
    pub semantics: Semantics,
    pub clauses: Vec<ClauseOutcome>,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.clauses.iter().all(|c| c.holds)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.clauses
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.id.as_str())
            .collect()
    }

    pub fn clause(&self, id: &str) -> Option<&ClauseOutcome> {
        self.clauses.iter().find(|c| c.id == id)
    }

    pub fn to_text(&self) -> String {
        let semantics = match self.semantics {
            Semantics::Strict => "strict",
            Semantics::Weak => "weak",
        };
        let mut out = format!("theory {} ({semantics} semantics)\n", self.theory);
        for c in &self.clauses {
            let status = match (c.holds, c.holds_weakly) {
                (true, _) => "PASS",
                (false, true) => "FAIL (holds weakly)",
                (false, false) => "FAIL",
            };
            writeln!(out, "  [{}] {status}  {}", c.id, c.statement).unwrap();
            if let Some(cx) = &c.counterexample {
                writeln!(out, "      counterexample: {cx}").unwrap();
            }
            if c.witness_count > 0 {
                let shown: Vec<&str> = c.witnesses.iter().take(3).map(String::as_str).collect();
                writeln!(out, "      witnesses: {} (e.g. {})", c.witness_count, shown.join("; ")).unwrap();
            }
            for note in &c.notes {
                writeln!(out, "      note: {note}").unwrap();
            }
        }
        let held = self.clauses.iter().filter(|c| c.holds).count();
        write!(out, "{held}/{} clauses hold", self.clauses.len()).unwrap();
        let failing = self.failing();
        if !failing.is_empty() {
            write!(out, "; failing: {}", failing.join(", ")).unwrap();
        }
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone)]
enum CTerm {
    Var(usize),
    Op(usize, Vec<CTerm>),
    Derived(Derived, Box<CTerm>),
}

#[derive(Debug, Clone, Copy)]
enum Derived {
    BigMeet,
    BigJoin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Eq,
    Weak,
    Strong,
    IsAtom,
}

#[derive(Debug, Clone)]
struct CAtom {
    kind: Kind,
    lhs: CTerm,
    rhs: Option<CTerm>,
    /// Highest variable index mentioned, `None` for closed atoms.
    level: Option<usize>,
    text: String,
}

#[derive(Debug, Clone)]
enum Directive {
    Lattice,
    LongLattice,
    Conditions(Vec<Condition>),
}

#[derive(Debug)]
struct CFormula {
    names: Vec<String>,
    universals: usize,
    closed_premises: Vec<CAtom>,
    premises_at: Vec<Vec<CAtom>>,
    /// Conclusion atoms over universals only, checked before any search.
    pre_conclusion: Vec<CAtom>,
    /// Conclusion atoms keyed by the existential level that closes them.
    conclusion_at: Vec<Vec<CAtom>>,
    directive: Option<Directive>,
}

#[derive(Default)]
struct Branch {
    failure: Option<String>,
    witnesses: Vec<String>,
    witness_count: usize,
}

/// Evaluates terms and formulas over one model.
pub struct Checker<'m> {
    model: &'m PartialAlgebraModel,
    mode: Parallelism,
    atoms: OnceLock<std::result::Result<Vec<bool>, String>>,
    big_meet: OnceLock<Vec<Option<usize>>>,
    big_join: OnceLock<Vec<Option<usize>>>,
}

impl<'m> Checker<'m> {
    pub fn new(model: &'m PartialAlgebraModel) -> Self {
        Checker {
            model,
            mode: Parallelism::Auto,
            atoms: OnceLock::new(),
            big_meet: OnceLock::new(),
            big_join: OnceLock::new(),
        }
    }

    pub fn with_parallelism(mut self, mode: Parallelism) -> Self {
        self.mode = mode;
        self
    }

    /// Strict check of every clause, with a weak re-check of failures.
    pub fn check_theory(&self, theory: &Theory) -> Result<AxiomReport> {
        let mut report = self.check_theory_with(theory, Semantics::Strict)?;
        for (outcome, clause) in report.clauses.iter_mut().zip(&theory.clauses) {
            if !outcome.holds {
                outcome.holds_weakly = self.check_clause(clause, Semantics::Weak)?.holds;
            }
        }
        Ok(report)
    }

    pub fn check_theory_with(&self, theory: &Theory, semantics: Semantics) -> Result<AxiomReport> {
        let clauses = theory
            .clauses
            .iter()
            .map(|c| self.check_clause(c, semantics))
            .collect::<Result<Vec<_>>>()?;
        Ok(AxiomReport {
            theory: theory.name.clone(),
            semantics,
            clauses,
        })
    }

    pub fn check_clause(&self, clause: &Clause, semantics: Semantics) -> Result<ClauseOutcome> {
        let mut outcome = ClauseOutcome {
            id: clause.id.clone(),
            statement: clause.statement.clone(),
            holds: true,
            holds_weakly: true,
            counterexample: None,
            witnesses: Vec::new(),
            witness_count: 0,
            notes: Vec::new(),
        };
        for formula in &clause.formulas {
            if outcome.holds || formula.informational {
                let verdict = self.check_formula(formula, semantics)?;
                if formula.informational {
                    let status = match &verdict.counterexample {
                        None => "holds".to_string(),
                        Some(cx) => format!("fails: {cx}"),
                    };
                    outcome.notes.push(format!("{formula} {status}"));
                    continue;
                }
                outcome.witness_count += verdict.witness_count;
                let room = WITNESS_CAP.saturating_sub(outcome.witnesses.len());
                outcome.witnesses.extend(verdict.witnesses.into_iter().take(room));
                if !verdict.holds {
                    outcome.holds = false;
                    outcome.counterexample = verdict.counterexample.map(|cx| format!("{formula}: {cx}"));
                }
            }
        }
        outcome.holds_weakly = outcome.holds;
        Ok(outcome)
    }

    pub fn check_formula(&self, formula: &Formula, semantics: Semantics) -> Result<Verdict> {
        let f = self.compile(formula)?;
        if let Some(d) = &f.directive {
            return Ok(self.directive(d));
        }
        let mut env = vec![0usize; f.names.len()];
        if !self.all_hold(&f.closed_premises, &env, Semantics::Strict) {
            return Ok(Verdict::pass());
        }
        let n = self.model.len();
        let branches: Vec<Branch> = if f.universals == 0 {
            let mut b = Branch::default();
            self.conclude(&f, &mut env, semantics, &mut b);
            vec![b]
        } else {
            par::map_range(n, self.mode, |v| {
                let mut env = vec![0usize; f.names.len()];
                env[0] = v;
                let mut b = Branch::default();
                if self.all_hold(&f.premises_at[0], &env, Semantics::Strict) {
                    self.search(&f, 1, &mut env, semantics, &mut b);
                }
                b
            })
        };
        let mut verdict = Verdict::pass();
        for b in branches {
            verdict.witness_count += b.witness_count;
            let room = WITNESS_CAP.saturating_sub(verdict.witnesses.len());
            verdict.witnesses.extend(b.witnesses.into_iter().take(room));
            if let Some(why) = b.failure {
                verdict.holds = false;
                verdict.counterexample = Some(why);
                break;
            }
        }
        Ok(verdict)
    }

    /// Evaluates `term` under `env`; `Ok(None)` means undefined.
    pub fn evaluate(&self, term: &Term, env: &[(&str, usize)]) -> Result<Option<usize>> {
        let mut names = Vec::new();
        let t = self.compile_term(term, &[], &mut names, true)?;
        let values = names
            .iter()
            .map(|name| {
                env.iter()
                    .find(|(v, _)| v == name)
                    .map(|&(_, x)| x)
                    .ok_or_else(|| Error::UnboundVariable(name.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(&bad) = values.iter().find(|&&x| x >= self.model.len()) {
            return Err(Error::UnknownElement(format!("#{bad}")));
        }
        Ok(self.eval(&t, &values))
    }

    fn search(&self, f: &CFormula, level: usize, env: &mut Vec<usize>, semantics: Semantics, out: &mut Branch) -> bool {
        if level == f.universals {
            return self.conclude(f, env, semantics, out);
        }
        for v in 0..self.model.len() {
            env[level] = v;
            if self.all_hold(&f.premises_at[level], env, Semantics::Strict)
                && !self.search(f, level + 1, env, semantics, out)
            {
                return false;
            }
        }
        true
    }

    fn conclude(&self, f: &CFormula, env: &mut Vec<usize>, semantics: Semantics, out: &mut Branch) -> bool {
        if let Some(why) = self.first_failure(&f.pre_conclusion, env, semantics) {
            out.failure = Some(format!("{}: {why}", self.describe_env(f, env, 0..f.universals)));
            return false;
        }
        if f.conclusion_at.is_empty() {
            return true;
        }
        if self.exists(f, 0, env, semantics) {
            out.witness_count += 1;
            if out.witnesses.len() < WITNESS_CAP {
                out.witnesses.push(format!(
                    "{} -> {}",
                    self.describe_env(f, env, 0..f.universals),
                    self.describe_env(f, env, f.universals..f.names.len())
                ));
            }
            true
        } else {
            let vars = f.names[f.universals..].join(", ");
            out.failure = Some(format!(
                "{}: no witness for {vars}",
                self.describe_env(f, env, 0..f.universals)
            ));
            false
        }
    }

    fn exists(&self, f: &CFormula, k: usize, env: &mut Vec<usize>, semantics: Semantics) -> bool {
        if k == f.conclusion_at.len() {
            return true;
        }
        let slot = f.universals + k;
        for v in 0..self.model.len() {
            env[slot] = v;
            if self.all_hold(&f.conclusion_at[k], env, semantics) && self.exists(f, k + 1, env, semantics) {
                return true;
            }
        }
        false
    }

    fn all_hold(&self, atoms: &[CAtom], env: &[usize], semantics: Semantics) -> bool {
        atoms.iter().all(|a| self.atom(a, env, semantics).is_ok())
    }

    fn first_failure(&self, atoms: &[CAtom], env: &[usize], semantics: Semantics) -> Option<String> {
        atoms.iter().find_map(|a| self.atom(a, env, semantics).err())
    }

    fn atom(&self, a: &CAtom, env: &[usize], semantics: Semantics) -> std::result::Result<(), String> {
        let lhs = self.eval(&a.lhs, env);
        if a.kind == Kind::IsAtom {
            let is_atom = lhs.is_some_and(|x| self.atom_table().as_ref().is_ok_and(|t| t[x]));
            return if is_atom {
                Ok(())
            } else {
                Err(format!("{} is {}, not an atom", a.text, self.show(lhs)))
            };
        }
        let rhs = self.eval(a.rhs.as_ref().expect("binary atom"), env);
        let weak = semantics == Semantics::Weak || a.kind == Kind::Weak;
        let ok = match (lhs, rhs) {
            (Some(x), Some(y)) => x == y,
            (None, None) => weak || a.kind == Kind::Strong,
            _ => weak,
        };
        if ok {
            Ok(())
        } else {
            Err(format!(
                "{} has lhs = {}, rhs = {}",
                a.text,
                self.show(lhs),
                self.show(rhs)
            ))
        }
    }

    fn show(&self, v: Option<usize>) -> String {
        v.map_or_else(|| "undefined".to_string(), |x| self.model.label(x).to_string())
    }

    fn describe_env(&self, f: &CFormula, env: &[usize], range: std::ops::Range<usize>) -> String {
        range
            .map(|i| format!("{} = {}", f.names[i], self.model.label(env[i])))
            .collect::<Vec<_>>()
            .join(", ")
    }

    #[inline]
    fn eval(&self, t: &CTerm, env: &[usize]) -> Option<usize> {
        match t {
            CTerm::Var(i) => Some(env[*i]),
            CTerm::Op(op, args) => {
                let n = self.model.len();
                let mut offset = 0;
                for a in args {
                    offset = offset * n + self.eval(a, env)?;
                }
                let v = self.model.raw(*op, offset);
                (v != super::UNDEF).then_some(v as usize)
            }
            CTerm::Derived(d, arg) => {
                let x = self.eval(arg, env)?;
                match d {
                    Derived::BigMeet => self.big_meet.get().expect("prepared at compile time")[x],
                    Derived::BigJoin => self.big_join.get().expect("prepared at compile time")[x],
                }
            }
        }
    }

    fn op(&self, name: &str, arity: usize) -> Result<usize> {
        let op = self.model.op(name)?;
        let found = self.model.signature().arity(op);
        if found != arity {
            return Err(Error::ArityMismatch {
                op: name.to_string(),
                expected: found,
                found: arity,
            });
        }
        Ok(op)
    }

    fn compile(&self, formula: &Formula) -> Result<CFormula> {
        if let [atom] = formula.conclusion.as_slice() {
            let directive = match atom {
                Atom::Lattice => Some(Directive::Lattice),
                Atom::LongLattice => Some(Directive::LongLattice),
                Atom::Conditions(cs) => Some(Directive::Conditions(cs.clone())),
                _ => None,
            };
            if let Some(d) = directive {
                self.op("meet", 2)?;
                self.op("join", 2)?;
                return Ok(CFormula {
                    names: Vec::new(),
                    universals: 0,
                    closed_premises: Vec::new(),
                    premises_at: Vec::new(),
                    pre_conclusion: Vec::new(),
                    conclusion_at: Vec::new(),
                    directive: Some(d),
                });
            }
        }
        let mut names: Vec<String> = Vec::new();
        let mut symbols = Vec::new();
        for atom in formula.premises.iter().chain(&formula.conclusion) {
            for t in atom.terms() {
                t.symbols(&mut symbols);
            }
        }
        for s in symbols {
            let constant = self
                .model
                .signature()
                .index_of(&s)
                .is_some_and(|op| self.model.signature().arity(op) == 0);
            if !constant && !formula.exists.contains(&s) {
                names.push(s);
            }
        }
        let universals = names.len();
        names.extend(formula.exists.iter().cloned());
        if names.len() > MAX_VARIABLES {
            return Err(Error::Parse(format!(
                "`{formula}` uses {} variables, at most {MAX_VARIABLES} are supported",
                names.len()
            )));
        }
        let premises = formula
            .premises
            .iter()
            .map(|a| self.compile_atom(a, &mut names))
            .collect::<Result<Vec<_>>>()?;
        let conclusion = formula
            .conclusion
            .iter()
            .map(|a| self.compile_atom(a, &mut names))
            .collect::<Result<Vec<_>>>()?;
        let mut f = CFormula {
            names,
            universals,
            closed_premises: Vec::new(),
            premises_at: vec![Vec::new(); universals],
            pre_conclusion: Vec::new(),
            conclusion_at: vec![Vec::new(); formula.exists.len()],
            directive: None,
        };
        for p in premises {
            match p.level {
                None => f.closed_premises.push(p),
                Some(l) if l < universals => f.premises_at[l].push(p),
                Some(_) => {
                    return Err(Error::Parse(format!(
                        "premise {} mentions an existential variable",
                        p.text
                    )))
                }
            }
        }
        for c in conclusion {
            match c.level {
                Some(l) if l >= universals => f.conclusion_at[l - universals].push(c),
                _ => f.pre_conclusion.push(c),
            }
        }
        Ok(f)
    }

    fn compile_atom(&self, atom: &Atom, names: &mut Vec<String>) -> Result<CAtom> {
        let fixed = names.len();
        let text = atom.to_string();
        let (kind, lhs, rhs) = match atom {
            Atom::Eq(t, s) => (Kind::Eq, t.clone(), Some(s.clone())),
            Atom::Weak(t, s) => (Kind::Weak, t.clone(), Some(s.clone())),
            Atom::Strong(t, s) => (Kind::Strong, t.clone(), Some(s.clone())),
            Atom::Leq(t, s) => (Kind::Eq, Term::app("meet", vec![t.clone(), s.clone()]), Some(t.clone())),
            Atom::IsAtom(t) => {
                self.atom_table().clone().map_err(Error::SignatureMismatch)?;
                (Kind::IsAtom, t.clone(), None)
            }
            _ => return Err(Error::Parse(format!("directive {atom} must stand alone"))),
        };
        let lhs = self.compile_term(&lhs, &[], names, false)?;
        let rhs = rhs.map(|r| self.compile_term(&r, &[], names, false)).transpose()?;
        debug_assert_eq!(names.len(), fixed);
        let mut level = None;
        max_var(&lhs, &mut level);
        if let Some(r) = &rhs {
            max_var(r, &mut level);
        }
        Ok(CAtom {
            kind,
            lhs,
            rhs,
            level,
            text,
        })
    }

    /// Resolves symbols against `names`; with `grow`, unknown symbols are
    /// appended as new variables.
    fn compile_term(&self, t: &Term, _scope: &[String], names: &mut Vec<String>, grow: bool) -> Result<CTerm> {
        match t {
            Term::Var(s) => {
                if let Some(op) = self.model.signature().index_of(s) {
                    if self.model.signature().arity(op) == 0 {
                        return Ok(CTerm::Op(op, Vec::new()));
                    }
                }
                match names.iter().position(|n| n == s) {
                    Some(i) => Ok(CTerm::Var(i)),
                    None if grow => {
                        names.push(s.clone());
                        Ok(CTerm::Var(names.len() - 1))
                    }
                    None => Err(Error::UnboundVariable(s.clone())),
                }
            }
            Term::App(name, args) => {
                let compiled = args
                    .iter()
                    .map(|a| self.compile_term(a, _scope, names, grow))
                    .collect::<Result<Vec<_>>>()?;
                if self.model.signature().index_of(name).is_none() {
                    let derived = match name.as_str() {
                        "bigmeet" => Some(Derived::BigMeet),
                        "bigjoin" => Some(Derived::BigJoin),
                        _ => None,
                    };
                    if let (Some(d), [_]) = (derived, compiled.as_slice()) {
                        self.prepare_derived(d)?;
                        let arg = compiled.into_iter().next().expect("one argument");
                        return Ok(CTerm::Derived(d, Box::new(arg)));
                    }
                }
                let op = self.op(name, compiled.len())?;
                Ok(CTerm::Op(op, compiled))
            }
        }
    }

    fn atom_table(&self) -> &std::result::Result<Vec<bool>, String> {
        self.atoms.get_or_init(|| {
            let m = self.model;
            let meet = m.op("meet").map_err(|e| e.to_string())?;
            let empty = m.op("empty").map_err(|e| e.to_string())?;
            let bottom = m.apply(empty, &[]).ok_or("the constant `empty` is undefined")?;
            let below = |y: usize, x: usize| m.apply(meet, &[y, x]) == Some(y);
            Ok((0..m.len())
                .map(|x| x != bottom && below(bottom, x) && (0..m.len()).all(|y| !below(y, x) || y == x || y == bottom))
                .collect())
        })
    }

    fn prepare_derived(&self, d: Derived) -> Result<()> {
        let atoms = self.atom_table().clone().map_err(Error::SignatureMismatch)?;
        let (cell, fold_op) = match d {
            Derived::BigMeet => (&self.big_meet, "rmeet"),
            Derived::BigJoin => (&self.big_join, "rjoin"),
        };
        let fold = self.op(fold_op, 2)?;
        let meet = self.op("meet", 2)?;
        let m = self.model;
        cell.get_or_init(|| {
            (0..m.len())
                .map(|a| {
                    let mut below = (0..m.len()).filter(|&x| atoms[x] && m.apply(meet, &[x, a]) == Some(x));
                    let first = below.next()?;
                    below.try_fold(first, |acc, x| m.apply(fold, &[acc, x]))
                })
                .collect()
        });
        Ok(())
    }

    fn reduct(&self) -> std::result::Result<FiniteLattice, String> {
        let m = self.model;
        let meet = m.op("meet").map_err(|e| e.to_string())?;
        let join = m.op("join").map_err(|e| e.to_string())?;
        for (op, name) in [(meet, "meet"), (join, "join")] {
            if !m.is_total(op) {
                return Err(format!("`{name}` is not total"));
            }
        }
        let l = FiniteLattice::from_meet_table(m.labels().to_vec(), |a, b| m.apply(meet, &[a, b]).expect("total"))
            .map_err(|e| e.to_string())?;
        for a in 0..m.len() {
            for b in 0..m.len() {
                if m.apply(join, &[a, b]) != Some(l.join(a, b)) {
                    return Err(format!(
                        "`join` of {} and {} is not their least upper bound",
                        m.label(a),
                        m.label(b)
                    ));
                }
            }
        }
        Ok(l)
    }

    fn directive(&self, d: &Directive) -> Verdict {
        let l = match self.reduct() {
            Ok(l) => l,
            Err(why) => return Verdict::fail(why),
        };
        match d {
            Directive::Lattice => Verdict::pass(),
            Directive::LongLattice => {
                let report = is_long_lattice(&l, self.mode);
                if report.is_long {
                    Verdict::pass()
                } else {
                    Verdict::fail(report.summary(&l))
                }
            }
            Directive::Conditions(cs) => {
                let failures: Vec<String> = cs
                    .iter()
                    .map(|&c| check_condition_with(&l, c, self.mode))
                    .filter(|w| !w.holds)
                    .map(|w| w.describe(&l))
                    .collect();
                if failures.is_empty() {
                    Verdict::pass()
                } else {
                    Verdict::fail(failures.join("; "))
                }
            }
        }
    }
}

fn max_var(t: &CTerm, level: &mut Option<usize>) {
    match t {
        CTerm::Var(i) => *level = Some(level.map_or(*i, |l| l.max(*i))),
        CTerm::Op(_, args) => args.iter().for_each(|a| max_var(a, level)),
        CTerm::Derived(_, a) => max_var(a, level),
    }
}

/// `t` and `s` agree wherever both are defined.
pub fn holds_weak(model: &PartialAlgebraModel, t: &Term, s: &Term) -> Result<Verdict> {
    let f = Formula {
        premises: vec![],
        exists: vec![],
        conclusion: vec![Atom::Weak(t.clone(), s.clone())],
        informational: false,
    };
    Checker::new(model).check_formula(&f, Semantics::Strict)
}

/// `t` and `s` have the same domain and agree on it.
pub fn holds_strong_weak(model: &PartialAlgebraModel, t: &Term, s: &Term) -> Result<Verdict> {
    let f = Formula {
        premises: vec![],
        exists: vec![],
        conclusion: vec![Atom::Strong(t.clone(), s.clone())],
        informational: false,
    };
    Checker::new(model).check_formula(&f, Semantics::Strict)
}

/// `premises => exists …: conclusion` over every environment.
pub fn check_quasi_identity(
    model: &PartialAlgebraModel,
    premises: Vec<Atom>,
    exists: Vec<String>,
    conclusion: Vec<Atom>,
) -> Result<Verdict> {
    let f = Formula {
        premises,
        exists,
        conclusion,
        informational: false,
    };
    Checker::new(model).check_formula(&f, Semantics::Strict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial::Signature;

    /// `f` defined only on `x`, `g` total, constant `c = x`.
    fn model() -> PartialAlgebraModel {
        let sig = Signature::new([("f", 1), ("g", 1), ("h", 1), ("c", 0)]).unwrap();
        PartialAlgebraModel::new(
            sig,
            vec!["x".into(), "y".into()],
            vec![
                vec![Some(0), None],
                vec![Some(0), Some(1)],
                vec![None, None],
                vec![Some(0)],
            ],
        )
        .unwrap()
    }

    fn t(s: &str) -> Term {
        Term::parse(s).unwrap()
    }

    #[test]
    fn evaluation_is_strict() {
        let m = model();
        let c = Checker::new(&m);
        assert_eq!(c.evaluate(&t("c"), &[]).unwrap(), Some(0));
        assert_eq!(c.evaluate(&t("(f a)"), &[("a", 1)]).unwrap(), None);
        assert_eq!(c.evaluate(&t("(g (f a))"), &[("a", 1)]).unwrap(), None);
        assert_eq!(c.evaluate(&t("(g (f a))"), &[("a", 0)]).unwrap(), Some(0));
        assert!(matches!(c.evaluate(&t("(g a)"), &[]), Err(Error::UnboundVariable(v)) if v == "a"));
    }

    #[test]
    fn weak_and_strong() {
        let m = model();
        assert!(holds_weak(&m, &t("(f a)"), &t("(g a)")).unwrap().holds);
        let strong = holds_strong_weak(&m, &t("(f a)"), &t("(g a)")).unwrap();
        assert!(!strong.holds);
        assert!(strong.counterexample.unwrap().starts_with("a = y"));
        assert!(holds_weak(&m, &t("(h a)"), &t("(g a)")).unwrap().holds);
        assert!(holds_strong_weak(&m, &t("(g a)"), &t("(g a)")).unwrap().holds);
    }

    #[test]
    fn quasi_identities() {
        let m = model();
        let vacuous = check_quasi_identity(
            &m,
            vec![Atom::Eq(t("c"), t("(g y0)"))],
            vec![],
            vec![Atom::Eq(t("y0"), t("c"))],
        );
        assert!(vacuous.unwrap().holds);
        let exists = check_quasi_identity(&m, vec![], vec!["e".into()], vec![Atom::Eq(t("(f e)"), t("a"))]).unwrap();
        assert!(!exists.holds);
        let exists = check_quasi_identity(
            &m,
            vec![Atom::Eq(t("(f a)"), t("a"))],
            vec!["e".into()],
            vec![Atom::Eq(t("(g e)"), t("a"))],
        )
        .unwrap();
        assert!(exists.holds);
        assert_eq!(exists.witness_count, 1);
        assert_eq!(exists.witnesses, ["a = x -> e = x"]);
    }

    #[test]
    fn empty_premises_match_strong_weak() {
        let m = model();
        for (l, r) in [
            ("(f a)", "(g a)"),
            ("(f a)", "(f (f a))"),
            ("(g a)", "(g (g a))"),
            ("(h a)", "(f a)"),
        ] {
            let direct = holds_strong_weak(&m, &t(l), &t(r)).unwrap();
            let q = check_quasi_identity(&m, vec![], vec![], vec![Atom::Strong(t(l), t(r))]).unwrap();
            assert_eq!(direct, q, "{l} vs {r}");
        }
    }

    #[test]
    fn unknown_operation() {
        let m = model();
        assert!(matches!(
            holds_weak(&m, &t("(k a)"), &t("a")),
            Err(Error::SignatureMismatch(_))
        ));
        assert!(matches!(
            holds_weak(&m, &t("(f a a)"), &t("a")),
            Err(Error::ArityMismatch { .. })
        ));
    }
}
