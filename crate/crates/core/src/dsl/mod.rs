//! The s-expression construction language.
//!
//! ```text
//! (ring A (polyquot (Z 2) [x y] {x^2 xy y^2}))
//! (module E (dsum (self A) (cyclic A (ideal x))))
//! (classify E)
//! ```
//!
//! `(`, `[` and `{` all open lists. Commas separate like whitespace except inside
//! tuple atoms such as `<1,x>`. `;` starts a comment running to end of line.

pub mod ast;

use std::collections::HashMap;

use ast::{Ident, ModuleExpr, MultExpr, Pos, Program, RingExpr, Statement, Target};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
enum Sexp {
    Atom(String, Pos),
    List(char, Vec<Sexp>, Pos),
}

impl Sexp {
    fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, _, p) => *p,
        }
    }

    fn head(&self) -> Option<&str> {
        match self {
            Sexp::List(_, items, _) => match items.first() {
                Some(Sexp::Atom(a, _)) => Some(a),
                _ => None,
            },
            _ => None,
        }
    }
}

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn closer(open: char) -> char {
    match open {
        '(' => ')',
        '[' => ']',
        _ => '}',
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        Reader {
            chars: text.chars().peekable(),
            pos: Pos { line: 1, column: 1 },
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn skip_blank(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else if c.is_whitespace() || c == ',' {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn read_all(mut self) -> Result<Vec<Sexp>> {
        let mut out = Vec::new();
        loop {
            self.skip_blank();
            match self.chars.peek() {
                None => return Ok(out),
                Some(&c) if matches!(c, ')' | ']' | '}') => {
                    return Err(syntax(self.pos, format!("unexpected `{c}`, expected `(`")))
                }
                Some(_) => out.push(self.read()?),
            }
        }
    }

    fn read(&mut self) -> Result<Sexp> {
        self.skip_blank();
        let start = self.pos;
        match self.chars.peek().copied() {
            None => Err(syntax(start, "unexpected end of input, expected an expression")),
            Some(open @ ('(' | '[' | '{')) => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_blank();
                    match self.chars.peek().copied() {
                        None => {
                            return Err(syntax(
                                self.pos,
                                format!("unexpected end of input, expected `{}`", closer(open)),
                            ))
                        }
                        Some(c @ (')' | ']' | '}')) => {
                            if c != closer(open) {
                                return Err(syntax(
                                    self.pos,
                                    format!("mismatched `{c}`, expected `{}`", closer(open)),
                                ));
                            }
                            self.bump();
                            return Ok(Sexp::List(open, items, start));
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some(_) => {
                let mut text = String::new();
                let mut depth = 0usize;
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() && depth > 0 {
                        // tuples may be written with spaces after commas
                        self.bump();
                        continue;
                    }
                    let ends = c.is_whitespace()
                        || matches!(c, '(' | ')' | '[' | ']' | '{' | '}' | ';')
                        || (c == ',' && depth == 0);
                    if ends {
                        break;
                    }
                    match c {
                        '<' => depth += 1,
                        '>' => {
                            depth = depth
                                .checked_sub(1)
                                .ok_or_else(|| syntax(self.pos, "unbalanced `>` in tuple"))?
                        }
                        _ => {}
                    }
                    self.bump();
                    match c {
                        '²' => text.push_str("^2"),
                        '³' => text.push_str("^3"),
                        _ => text.push(c),
                    }
                }
                if depth != 0 {
                    return Err(syntax(start, "unterminated tuple, expected `>`"));
                }
                Ok(Sexp::Atom(text, start))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Ring,
    Module,
}

/// Names bound so far, used to resolve references while parsing.
#[derive(Debug, Default)]
struct ParseScope {
    kinds: HashMap<String, Kind>,
}

const RING_HEADS: &[&str] = &["Z", "polyquot"];
const MODULE_HEADS: &[&str] = &["self", "cyclic", "free", "dsum", "sub", "loc", "faithful"];

impl ParseScope {
    fn kind_of(&self, s: &Sexp) -> Result<Kind> {
        match s {
            Sexp::Atom(name, pos) => self.kinds.get(name).copied().ok_or(Error::Resolution {
                name: name.clone(),
                line: pos.line,
                column: pos.column,
            }),
            Sexp::List('(', items, pos) => match s.head() {
                Some(h) if RING_HEADS.contains(&h) => Ok(Kind::Ring),
                Some(h) if MODULE_HEADS.contains(&h) => Ok(Kind::Module),
                Some("quot") => match items.get(2).and_then(Sexp::head) {
                    Some("ideal") => Ok(Kind::Ring),
                    Some("sub") => Ok(Kind::Module),
                    _ => Err(syntax(*pos, "expected `(ideal ...)` or `(sub {...})` in quot")),
                },
                Some("prod") => match items.get(1) {
                    Some(first) => self.kind_of(first),
                    None => Err(syntax(*pos, "prod needs at least one factor")),
                },
                Some(h) => Err(syntax(
                    *pos,
                    format!("unknown head `{h}`, expected a ring or module form"),
                )),
                None => Err(syntax(*pos, "expected a head symbol")),
            },
            other => Err(syntax(other.pos(), "expected `(`")),
        }
    }

    fn ring(&self, s: &Sexp) -> Result<RingExpr> {
        match s {
            Sexp::Atom(name, pos) => match self.kind_of(s)? {
                Kind::Ring => Ok(RingExpr::Ref(Ident {
                    name: name.clone(),
                    pos: *pos,
                })),
                Kind::Module => Err(syntax(*pos, format!("`{name}` names a module, expected a ring"))),
            },
            Sexp::List('(', items, pos) => {
                let args = &items[1..];
                match s.head() {
                    Some("Z") => {
                        let [n] = args else {
                            return Err(syntax(*pos, "expected `(Z n)`"));
                        };
                        let (text, npos) = atom(n)?;
                        let n: i64 = text
                            .parse()
                            .map_err(|_| syntax(npos, format!("expected an integer modulus, got `{text}`")))?;
                        if n < 2 {
                            return Err(syntax(npos, format!("modulus must be at least 2, got {n}")));
                        }
                        Ok(RingExpr::Zn(n))
                    }
                    Some("prod") => {
                        if args.is_empty() {
                            return Err(syntax(*pos, "prod needs at least one factor"));
                        }
                        Ok(RingExpr::Prod(
                            args.iter().map(|a| self.ring(a)).collect::<Result<_>>()?,
                        ))
                    }
                    Some("polyquot") => {
                        let [base, vars, rels] = args else {
                            return Err(syntax(*pos, "expected `(polyquot (Z p) [vars] {relations})`"));
                        };
                        Ok(RingExpr::PolyQuot {
                            base: Box::new(self.ring(base)?),
                            vars: atoms_of(vars)?,
                            relations: atoms_of(rels)?,
                        })
                    }
                    Some("quot") => {
                        let [base, ideal] = args else {
                            return Err(syntax(*pos, "expected `(quot R (ideal ...))`"));
                        };
                        Ok(RingExpr::Quot {
                            base: Box::new(self.ring(base)?),
                            ideal: generators(ideal, "ideal")?,
                        })
                    }
                    _ => match self.kind_of(s)? {
                        Kind::Module => Err(syntax(*pos, "expected a ring, found a module form")),
                        Kind::Ring => unreachable!("every ring head is handled above"),
                    },
                }
            }
            other => Err(syntax(other.pos(), "expected a ring expression")),
        }
    }

    fn mult(&self, s: &Sexp) -> Result<MultExpr> {
        match s {
            Sexp::List('(', items, pos) if s.head() == Some("mult") => {
                let [_, ring, gens] = items.as_slice() else {
                    return Err(syntax(*pos, "expected `(mult R {g ...})`"));
                };
                Ok(MultExpr {
                    ring: self.ring(ring)?,
                    gens: atoms_of(gens)?,
                })
            }
            other => Err(syntax(other.pos(), "expected `(mult R {g ...})`")),
        }
    }

    fn module(&self, s: &Sexp) -> Result<ModuleExpr> {
        match s {
            Sexp::Atom(name, pos) => match self.kind_of(s)? {
                Kind::Module => Ok(ModuleExpr::Ref(Ident {
                    name: name.clone(),
                    pos: *pos,
                })),
                Kind::Ring => Err(syntax(*pos, format!("`{name}` names a ring, expected a module"))),
            },
            Sexp::List('(', items, pos) => {
                let args = &items[1..];
                let many = |what: &str| -> Result<Vec<ModuleExpr>> {
                    if args.is_empty() {
                        return Err(syntax(*pos, format!("{what} needs at least one summand")));
                    }
                    args.iter().map(|a| self.module(a)).collect()
                };
                match s.head() {
                    Some("self") => match args {
                        [r] => Ok(ModuleExpr::SelfMod(self.ring(r)?)),
                        _ => Err(syntax(*pos, "expected `(self R)`")),
                    },
                    Some("cyclic") => match args {
                        [r, i] => Ok(ModuleExpr::Cyclic {
                            ring: self.ring(r)?,
                            ideal: generators(i, "ideal")?,
                        }),
                        _ => Err(syntax(*pos, "expected `(cyclic R (ideal ...))`")),
                    },
                    Some("free") => match args {
                        [r, n] => {
                            let (text, npos) = atom(n)?;
                            let rank = text
                                .parse::<usize>()
                                .ok()
                                .filter(|&k| k >= 1)
                                .ok_or_else(|| syntax(npos, format!("expected a positive rank, got `{text}`")))?;
                            Ok(ModuleExpr::Free {
                                ring: self.ring(r)?,
                                rank,
                            })
                        }
                        _ => Err(syntax(*pos, "expected `(free R n)`")),
                    },
                    Some("dsum") => Ok(ModuleExpr::DSum(many("dsum")?)),
                    Some("prod") => Ok(ModuleExpr::Prod(many("prod")?)),
                    Some("quot") => match args {
                        [m, sub] => Ok(ModuleExpr::Quot {
                            module: Box::new(self.module(m)?),
                            sub: generators(sub, "sub")?,
                        }),
                        _ => Err(syntax(*pos, "expected `(quot M (sub {g ...}))`")),
                    },
                    Some("sub") => match args {
                        [m, gens] => Ok(ModuleExpr::Sub {
                            module: Box::new(self.module(m)?),
                            gens: atoms_of(gens)?,
                        }),
                        _ => Err(syntax(*pos, "expected `(sub M {g ...})`")),
                    },
                    Some("loc") => match args {
                        [m, t] => Ok(ModuleExpr::Loc {
                            module: Box::new(self.module(m)?),
                            mult: self.mult(t)?,
                        }),
                        _ => Err(syntax(*pos, "expected `(loc M (mult R {g ...}))`")),
                    },
                    Some("faithful") => match args {
                        [m] => Ok(ModuleExpr::Faithful(Box::new(self.module(m)?))),
                        _ => Err(syntax(*pos, "expected `(faithful M)`")),
                    },
                    _ => match self.kind_of(s)? {
                        Kind::Ring => Err(syntax(*pos, "expected a module, found a ring form")),
                        Kind::Module => unreachable!("every module head is handled above"),
                    },
                }
            }
            other => Err(syntax(other.pos(), "expected a module expression")),
        }
    }

    fn target(&self, s: &Sexp) -> Result<Target> {
        match self.kind_of(s)? {
            Kind::Ring => self.ring(s).map(Target::Ring),
            Kind::Module => self.module(s).map(Target::Module),
        }
    }

    fn statement(&mut self, s: &Sexp) -> Result<Statement> {
        let Sexp::List('(', items, pos) = s else {
            return Err(syntax(s.pos(), "expected `(`"));
        };
        let args = &items[1..];
        match s.head() {
            Some(h @ ("ring" | "module")) => {
                let [name, body] = args else {
                    return Err(syntax(*pos, format!("expected `({h} NAME expr)`")));
                };
                let (text, npos) = atom(name)?;
                if !is_identifier(text) {
                    return Err(syntax(npos, format!("`{text}` is not a valid name")));
                }
                let ident = Ident {
                    name: text.to_string(),
                    pos: npos,
                };
                let stmt = if h == "ring" {
                    Statement::Ring {
                        name: ident,
                        expr: self.ring(body)?,
                    }
                } else {
                    Statement::Module {
                        name: ident,
                        expr: self.module(body)?,
                    }
                };
                let kind = if h == "ring" { Kind::Ring } else { Kind::Module };
                self.kinds.insert(text.to_string(), kind);
                Ok(stmt)
            }
            Some("classify") => match args {
                [t] => Ok(Statement::Classify(self.target(t)?)),
                _ => Err(syntax(*pos, "expected `(classify X)`")),
            },
            Some("check") => match args {
                [m] => Ok(Statement::Check(self.module(m)?)),
                _ => Err(syntax(*pos, "expected `(check M)`")),
            },
            Some("loc") => match args {
                [m, t] => Ok(Statement::Localize(self.module(m)?, self.mult(t)?)),
                _ => Err(syntax(*pos, "expected `(loc M (mult R {g ...}))`")),
            },
            Some("suite") if args.is_empty() => Ok(Statement::Suite),
            Some("suite") => Err(syntax(*pos, "`(suite)` takes no arguments")),
            _ => Err(syntax(
                *pos,
                "expected a statement: ring, module, classify, check, loc or suite",
            )),
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn atom(s: &Sexp) -> Result<(&str, Pos)> {
    match s {
        Sexp::Atom(a, p) => Ok((a, *p)),
        Sexp::List(_, _, p) => Err(syntax(*p, "expected an atom")),
    }
}

/// Atoms of a bracketed list such as `[x y]` or `{x^2 xy}`.
fn atoms_of(s: &Sexp) -> Result<Vec<String>> {
    match s {
        Sexp::List(_, items, _) => items.iter().map(|i| atom(i).map(|(a, _)| a.to_string())).collect(),
        Sexp::Atom(_, p) => Err(syntax(*p, "expected a bracketed list")),
    }
}

/// `(ideal g ...)` / `(sub {g ...})`, also accepting a bare list of generators.
fn generators(s: &Sexp, head: &str) -> Result<Vec<String>> {
    match s {
        Sexp::List(_, items, _) if s.head() == Some(head) => match &items[1..] {
            [inner @ Sexp::List(..)] => atoms_of(inner),
            rest => rest.iter().map(|i| atom(i).map(|(a, _)| a.to_string())).collect(),
        },
        Sexp::List(..) => atoms_of(s),
        Sexp::Atom(_, p) => Err(syntax(*p, format!("expected `({head} ...)`"))),
    }
}

/// Parses a program, checking that every reference names an earlier binding.
pub fn parse_program(text: &str) -> Result<Program> {
    let forms = Reader::new(text).read_all()?;
    let mut scope = ParseScope::default();
    let statements = forms.iter().map(|f| scope.statement(f)).collect::<Result<Vec<_>>>()?;
    Ok(Program { statements })
}

fn single(text: &str) -> Result<Sexp> {
    let mut forms = Reader::new(text).read_all()?;
    match forms.len() {
        1 => Ok(forms.remove(0)),
        0 => Err(syntax(Pos { line: 1, column: 1 }, "expected an expression")),
        _ => Err(syntax(forms[1].pos(), "expected a single expression")),
    }
}

/// A standalone ring or module expression (no names in scope).
pub fn parse_target(text: &str) -> Result<Target> {
    ParseScope::default().target(&single(text)?)
}

pub fn parse_ring(text: &str) -> Result<RingExpr> {
    ParseScope::default().ring(&single(text)?)
}

pub fn parse_module(text: &str) -> Result<ModuleExpr> {
    ParseScope::default().module(&single(text)?)
}

/// Definitions seen so far while executing a program; expands references into
/// self-contained expressions.
#[derive(Debug, Default, Clone)]
pub struct Bindings {
    rings: HashMap<String, RingExpr>,
    modules: HashMap<String, ModuleExpr>,
}

fn unresolved(id: &Ident) -> Error {
    Error::Resolution {
        name: id.name.clone(),
        line: id.pos.line,
        column: id.pos.column,
    }
}

impl Bindings {
    pub fn bind_ring(&mut self, name: &str, expr: &RingExpr) -> Result<()> {
        let e = self.expand_ring(expr)?;
        self.modules.remove(name);
        self.rings.insert(name.to_string(), e);
        Ok(())
    }

    pub fn bind_module(&mut self, name: &str, expr: &ModuleExpr) -> Result<()> {
        let e = self.expand_module(expr)?;
        self.rings.remove(name);
        self.modules.insert(name.to_string(), e);
        Ok(())
    }

    pub fn expand_ring(&self, expr: &RingExpr) -> Result<RingExpr> {
        Ok(match expr {
            RingExpr::Zn(n) => RingExpr::Zn(*n),
            RingExpr::Prod(parts) => RingExpr::Prod(parts.iter().map(|p| self.expand_ring(p)).collect::<Result<_>>()?),
            RingExpr::PolyQuot { base, vars, relations } => RingExpr::PolyQuot {
                base: Box::new(self.expand_ring(base)?),
                vars: vars.clone(),
                relations: relations.clone(),
            },
            RingExpr::Quot { base, ideal } => RingExpr::Quot {
                base: Box::new(self.expand_ring(base)?),
                ideal: ideal.clone(),
            },
            RingExpr::Ref(id) => self.rings.get(&id.name).cloned().ok_or_else(|| unresolved(id))?,
        })
    }

    pub fn expand_mult(&self, m: &MultExpr) -> Result<MultExpr> {
        Ok(MultExpr {
            ring: self.expand_ring(&m.ring)?,
            gens: m.gens.clone(),
        })
    }

    pub fn expand_module(&self, expr: &ModuleExpr) -> Result<ModuleExpr> {
        let boxed = |m: &ModuleExpr| self.expand_module(m).map(Box::new);
        Ok(match expr {
            ModuleExpr::SelfMod(r) => ModuleExpr::SelfMod(self.expand_ring(r)?),
            ModuleExpr::Cyclic { ring, ideal } => ModuleExpr::Cyclic {
                ring: self.expand_ring(ring)?,
                ideal: ideal.clone(),
            },
            ModuleExpr::Free { ring, rank } => ModuleExpr::Free {
                ring: self.expand_ring(ring)?,
                rank: *rank,
            },
            ModuleExpr::DSum(parts) => {
                ModuleExpr::DSum(parts.iter().map(|p| self.expand_module(p)).collect::<Result<_>>()?)
            }
            ModuleExpr::Prod(parts) => {
                ModuleExpr::Prod(parts.iter().map(|p| self.expand_module(p)).collect::<Result<_>>()?)
            }
            ModuleExpr::Quot { module, sub } => ModuleExpr::Quot {
                module: boxed(module)?,
                sub: sub.clone(),
            },
            ModuleExpr::Sub { module, gens } => ModuleExpr::Sub {
                module: boxed(module)?,
                gens: gens.clone(),
            },
            ModuleExpr::Loc { module, mult } => ModuleExpr::Loc {
                module: boxed(module)?,
                mult: self.expand_mult(mult)?,
            },
            ModuleExpr::Faithful(m) => ModuleExpr::Faithful(boxed(m)?),
            ModuleExpr::Ref(id) => self.modules.get(&id.name).cloned().ok_or_else(|| unresolved(id))?,
        })
    }

    pub fn expand_target(&self, t: &Target) -> Result<Target> {
        match t {
            Target::Ring(r) => self.expand_ring(r).map(Target::Ring),
            Target::Module(m) => self.expand_module(m).map(Target::Module),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX1: &str = "(module E (dsum (cyclic (Z 8) (ideal 2)) (cyclic (Z 8) (ideal 4))))";

    #[test]
    fn module_definition_binds_name() {
        let p = parse_program(EX1).unwrap();
        match &p.statements[0] {
            Statement::Module { name, expr } => {
                assert_eq!(name.name, "E");
                assert!(matches!(expr, ModuleExpr::DSum(parts) if parts.len() == 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_modulus_is_rejected() {
        let err = parse_ring("(Z 0)").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, column: 4, .. }), "{err}");
    }

    #[test]
    fn unbound_name_is_a_resolution_error() {
        let err = parse_program("(classify E)").unwrap_err();
        assert_eq!(
            err,
            Error::Resolution {
                name: "E".into(),
                line: 1,
                column: 11
            }
        );
    }

    #[test]
    fn positions_in_errors() {
        let err = parse_program("(ring A (Z 4))\n  (module M (cyclic A (ideal 2))\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err}");
        let err = parse_program("(ring A (Z 4)]").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Syntax {
                    line: 1,
                    column: 14,
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn alternative_spellings() {
        let m = parse_module("(dsum (cyclic (Z 8) (2)), (cyclic (Z 8) {4}))").unwrap();
        assert_eq!(
            m.to_string(),
            "(dsum (cyclic (Z 8) (ideal 2)) (cyclic (Z 8) (ideal 4)))"
        );
        let r = parse_ring("(polyquot (Z 2) [x,y] {x², xy, y²})").unwrap();
        assert_eq!(r.to_string(), "(polyquot (Z 2) [x y] {x^2 xy y^2})");
    }

    #[test]
    fn quot_and_prod_disambiguation() {
        assert!(matches!(
            parse_target("(quot (Z 12) (ideal 4))").unwrap(),
            Target::Ring(_)
        ));
        assert!(matches!(
            parse_target("(quot (self (Z 4)) (sub {2}))").unwrap(),
            Target::Module(_)
        ));
        assert!(matches!(parse_target("(prod (Z 2) (Z 3))").unwrap(), Target::Ring(_)));
        assert!(matches!(
            parse_target("(prod (self (Z 2)) (self (Z 3)))").unwrap(),
            Target::Module(_)
        ));
    }

    #[test]
    fn tuple_atoms_keep_commas() {
        let m = parse_module("(quot (free (Z 4) 2) (sub {<1,2> <0, 2>}))").unwrap();
        match m {
            ModuleExpr::Quot { sub, .. } => assert_eq!(sub, vec!["<1,2>", "<0,2>"]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn kinds_are_checked() {
        let err = parse_program("(ring A (Z 4)) (classify (dsum A))").unwrap_err();
        assert!(matches!(err, Error::Syntax { .. }));
        let err = parse_program("(module M (self (Z 4))) (module N (self M))").unwrap_err();
        assert!(matches!(err, Error::Syntax { .. }));
    }

    #[test]
    fn bindings_expand_references() {
        let p = parse_program("(ring A (Z 4)) (module M (cyclic A (ideal 2))) (classify M)").unwrap();
        let mut b = Bindings::default();
        for s in &p.statements {
            match s {
                Statement::Ring { name, expr } => b.bind_ring(&name.name, expr).unwrap(),
                Statement::Module { name, expr } => b.bind_module(&name.name, expr).unwrap(),
                Statement::Classify(t) => {
                    assert_eq!(b.expand_target(t).unwrap().to_string(), "(cyclic (Z 4) (ideal 2))")
                }
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn comments_are_skipped() {
        let p = parse_program("; header\n(suite) ; trailing\n").unwrap();
        assert_eq!(p.statements, vec![Statement::Suite]);
    }
}
