use std::fmt;

use super::term::{parse_term, tokenize, Term, Token};
use crate::error::{Error, Result};
use crate::lattice::Condition;

/// An atomic formula of a theory file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    /// `(= t s)`: both sides defined and equal.
    Eq(Term, Term),
    /// `(~ t s)`: equal wherever both sides are defined.
    Weak(Term, Term),
    /// `(~* t s)`: same definedness, equal where defined.
    Strong(Term, Term),
    /// `(<= t s)`: shorthand for `(= (meet t s) t)`.
    Leq(Term, Term),
    /// `(atom x)`: `x` is defined and covers `empty` in the `meet` order.
    IsAtom(Term),
    /// `(lattice)`: `meet` and `join` are total lattice operations.
    Lattice,
    /// `(long-lattice)`: the `meet`/`join` reduct is a long lattice.
    LongLattice,
    /// `(conditions S_i ...)`: the `meet`/`join` reduct satisfies them.
    Conditions(Vec<Condition>),
}

impl Atom {
    pub fn is_directive(&self) -> bool {
        matches!(self, Atom::Lattice | Atom::LongLattice | Atom::Conditions(_))
    }

    pub(crate) fn terms(&self) -> Vec<&Term> {
        match self {
            Atom::Eq(t, s) | Atom::Weak(t, s) | Atom::Strong(t, s) | Atom::Leq(t, s) => vec![t, s],
            Atom::IsAtom(t) => vec![t],
            _ => vec![],
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Eq(t, s) => write!(f, "(= {t} {s})"),
            Atom::Weak(t, s) => write!(f, "(~ {t} {s})"),
            Atom::Strong(t, s) => write!(f, "(~* {t} {s})"),
            Atom::Leq(t, s) => write!(f, "(<= {t} {s})"),
            Atom::IsAtom(t) => write!(f, "(atom {t})"),
            Atom::Lattice => f.write_str("(lattice)"),
            Atom::LongLattice => f.write_str("(long-lattice)"),
            Atom::Conditions(cs) => {
                f.write_str("(conditions")?;
                for c in cs {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// `premises => exists v…: conclusion`, universally closed over the
/// remaining variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    pub premises: Vec<Atom>,
    pub exists: Vec<String>,
    pub conclusion: Vec<Atom>,
    /// Evaluated and reported, but not part of the clause verdict.
    pub informational: bool,
}

impl Formula {
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = tokenize(text)?;
        let informational = matches!(tokens.first(), Some(Token::Symbol(s)) if s == "?");
        if informational {
            tokens.remove(0);
        }
        let arrow = tokens.iter().position(|t| matches!(t, Token::Symbol(s) if s == "=>"));
        let (premises, rest) = match arrow {
            Some(i) => (parse_atoms(&tokens[..i])?, &tokens[i + 1..]),
            None => (Vec::new(), &tokens[..]),
        };
        let (exists, rest) = match rest.first() {
            Some(Token::Symbol(s)) if s == "exists" => {
                let colon = rest
                    .iter()
                    .position(|t| *t == Token::Colon)
                    .ok_or_else(|| Error::Parse(format!("`exists` without `:` in `{text}`")))?;
                let vars = rest[1..colon]
                    .iter()
                    .filter(|t| **t != Token::Comma)
                    .map(|t| match t {
                        Token::Symbol(s) => Ok(s.clone()),
                        other => Err(Error::Parse(format!("bad existential variable {other:?}"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                (vars, &rest[colon + 1..])
            }
            _ => (Vec::new(), rest),
        };
        let conclusion = parse_atoms(rest)?;
        if conclusion.is_empty() {
            return Err(Error::Parse(format!("formula without a conclusion: `{text}`")));
        }
        let directive = premises.iter().chain(&conclusion).any(Atom::is_directive);
        if directive && (premises.len() + conclusion.len() != 1 || !exists.is_empty()) {
            return Err(Error::Parse(format!("directives must stand alone: `{text}`")));
        }
        Ok(Formula {
            premises,
            exists,
            conclusion,
            informational,
        })
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |atoms: &[Atom]| atoms.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ");
        if self.informational {
            f.write_str("? ")?;
        }
        if !self.premises.is_empty() {
            write!(f, "{} => ", join(&self.premises))?;
        }
        if !self.exists.is_empty() {
            write!(f, "exists {}: ", self.exists.join(" "))?;
        }
        f.write_str(&join(&self.conclusion))
    }
}

fn parse_atoms(tokens: &[Token]) -> Result<Vec<Atom>> {
    let mut atoms = Vec::new();
    let mut pos = 0;
    while pos < tokens.len() {
        if tokens[pos] == Token::Comma {
            pos += 1;
            continue;
        }
        atoms.push(parse_atom(tokens, &mut pos)?);
    }
    Ok(atoms)
}

fn parse_atom(tokens: &[Token], pos: &mut usize) -> Result<Atom> {
    if tokens.get(*pos) != Some(&Token::Open) {
        return Err(Error::Parse(format!(
            "expected `(` to start an atom, found {:?}",
            tokens.get(*pos)
        )));
    }
    let head = match tokens.get(*pos + 1) {
        Some(Token::Symbol(s)) => s.clone(),
        other => return Err(Error::Parse(format!("expected an atom head, found {other:?}"))),
    };
    *pos += 2;
    let mut args = Vec::new();
    let mut names = Vec::new();
    loop {
        match tokens.get(*pos) {
            Some(Token::Close) => {
                *pos += 1;
                break;
            }
            Some(Token::Symbol(s)) if head == "conditions" => {
                names.push(s.clone());
                *pos += 1;
            }
            Some(_) => args.push(parse_term(tokens, pos)?),
            None => return Err(Error::Parse(format!("unclosed atom `{head}`"))),
        }
    }
    let binary = |args: Vec<Term>, make: fn(Term, Term) -> Atom| -> Result<Atom> {
        match <[Term; 2]>::try_from(args) {
            Ok([t, s]) => Ok(make(t, s)),
            Err(_) => Err(Error::Parse(format!("`{head}` takes two terms"))),
        }
    };
    match head.as_str() {
        "=" => binary(args, Atom::Eq),
        "~" => binary(args, Atom::Weak),
        "~*" => binary(args, Atom::Strong),
        "<=" => binary(args, Atom::Leq),
        "atom" if args.len() == 1 => Ok(Atom::IsAtom(args.pop().expect("one argument"))),
        "lattice" if args.is_empty() => Ok(Atom::Lattice),
        "long-lattice" if args.is_empty() => Ok(Atom::LongLattice),
        "conditions" if !names.is_empty() => names
            .iter()
            .map(|n| Condition::parse(n).ok_or_else(|| Error::Parse(format!("unknown condition `{n}`"))))
            .collect::<Result<Vec<_>>>()
            .map(Atom::Conditions),
        _ => Err(Error::Parse(format!("malformed atom `{head}`"))),
    }
}

/// One numbered clause: a statement and the formulas that decide it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub id: String,
    pub statement: String,
    pub formulas: Vec<Formula>,
}

/// A named list of clauses read from a theory file.
///
/// ```text
/// # comment
/// [5] L(A) and L(L(A)) agree
///   (~* (lr a) (lr (lr a)))
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    pub name: String,
    pub clauses: Vec<Clause>,
}

impl Theory {
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let mut clauses: Vec<Clause> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |e: Error| Error::Parse(format!("{name}:{}: {e}", lineno + 1));
            if let Some(rest) = line.strip_prefix('[') {
                let (id, statement) = rest
                    .split_once(']')
                    .ok_or_else(|| at(Error::Parse("unterminated clause id".into())))?;
                clauses.push(Clause {
                    id: id.trim().to_string(),
                    statement: statement.trim().to_string(),
                    formulas: Vec::new(),
                });
            } else {
                let clause = clauses
                    .last_mut()
                    .ok_or_else(|| at(Error::Parse("formula before the first clause header".into())))?;
                clause.formulas.push(Formula::parse(line).map_err(at)?);
            }
        }
        if let Some(empty) = clauses.iter().find(|c| c.formulas.is_empty()) {
            return Err(Error::Parse(format!("{name}: clause [{}] has no formulas", empty.id)));
        }
        Ok(Theory {
            name: name.to_string(),
            clauses,
        })
    }

    pub fn clause(&self, id: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.id == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_syntax() {
        let f = Formula::parse("(= (lt a) a), (atom x) => exists e f: (<= e a), (~ f e)").unwrap();
        assert_eq!(f.premises.len(), 2);
        assert_eq!(f.exists, ["e", "f"]);
        assert_eq!(f.conclusion.len(), 2);
        assert_eq!(f.to_string(), "(= (lt a) a), (atom x) => exists e f: (<= e a), (~ f e)");
        let g = Formula::parse("? (~* (meet a b) (meet b a))").unwrap();
        assert!(g.informational && g.premises.is_empty());
        assert_eq!(
            Formula::parse("(conditions S_i B_i U_i)").unwrap().conclusion,
            [Atom::Conditions(vec![Condition::Si, Condition::Bi, Condition::Ui])]
        );
    }

    #[test]
    fn formula_errors() {
        assert!(Formula::parse("(= a b) =>").is_err());
        assert!(Formula::parse("(= a)").is_err());
        assert!(Formula::parse("(foo a b)").is_err());
        assert!(Formula::parse("(= a a) => (lattice)").is_err());
    }

    #[test]
    fn theory_file() {
        let t = Theory::parse(
            "t",
            "# header\n[1] commutativity\n  (~* (meet a b) (meet b a))  # inline\n\n[2] constants\n  (= one one)\n",
        )
        .unwrap();
        assert_eq!(t.clauses.len(), 2);
        assert_eq!(t.clause("1").unwrap().statement, "commutativity");
        assert!(Theory::parse("t", "(= a a)").is_err());
        assert!(Theory::parse("t", "[1] empty").is_err());
    }
}
