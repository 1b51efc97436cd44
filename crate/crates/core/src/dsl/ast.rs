use std::fmt;
use std::hash::{Hash, Hasher};

/// Line/column of a token, 1-based.
#[derive(Debug, Clone, Copy, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

/// A bound name together with where it was written. Equality ignores position.
#[derive(Debug, Clone)]
pub struct Ident {
    pub name: String,
    pub pos: Pos,
}

impl Ident {
    pub fn new(name: impl Into<String>) -> Self {
        Ident {
            name: name.into(),
            pos: Pos::default(),
        }
    }
}

impl PartialEq for Ident {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for Ident {}

impl Hash for Ident {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.name.hash(state)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingExpr {
    /// `(Z n)`
    Zn(i64),
    /// `(prod R S ...)`
    Prod(Vec<RingExpr>),
    /// `(polyquot (Z p) [x y] {rel ...})`
    PolyQuot {
        base: Box<RingExpr>,
        vars: Vec<String>,
        relations: Vec<String>,
    },
    /// `(quot R (ideal g ...))`
    Quot {
        base: Box<RingExpr>,
        ideal: Vec<String>,
    },
    Ref(Ident),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultExpr {
    pub ring: RingExpr,
    pub gens: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModuleExpr {
    /// `(self R)`
    SelfMod(RingExpr),
    /// `(cyclic R (ideal g ...))`, the module R/I
    Cyclic {
        ring: RingExpr,
        ideal: Vec<String>,
    },
    /// `(free R n)`
    Free {
        ring: RingExpr,
        rank: usize,
    },
    /// `(dsum M N ...)`, all over one ring
    DSum(Vec<ModuleExpr>),
    /// `(prod M N ...)`, over the product of the summands' rings
    Prod(Vec<ModuleExpr>),
    /// `(quot M (sub {g ...}))`
    Quot {
        module: Box<ModuleExpr>,
        sub: Vec<String>,
    },
    /// `(sub M {g ...})`, a submodule taken as a module in its own right
    Sub {
        module: Box<ModuleExpr>,
        gens: Vec<String>,
    },
    /// `(loc M (mult R {g ...}))`
    Loc {
        module: Box<ModuleExpr>,
        mult: MultExpr,
    },
    /// `(faithful M)`: M over R/ann(M)
    Faithful(Box<ModuleExpr>),
    Ref(Ident),
}

/// Either kind of construction, for commands that accept both.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Target {
    Ring(RingExpr),
    Module(ModuleExpr),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Statement {
    Ring { name: Ident, expr: RingExpr },
    Module { name: Ident, expr: ModuleExpr },
    Classify(Target),
    Check(ModuleExpr),
    Localize(ModuleExpr, MultExpr),
    Suite,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    pub statements: Vec<Statement>,
}

fn write_atoms(f: &mut fmt::Formatter<'_>, atoms: &[String]) -> fmt::Result {
    for a in atoms {
        write!(f, " {a}")?;
    }
    Ok(())
}

fn write_braced(f: &mut fmt::Formatter<'_>, atoms: &[String]) -> fmt::Result {
    write!(f, "{{{}}}", atoms.join(" "))
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zn(n) => write!(f, "(Z {n})"),
            RingExpr::Prod(parts) => {
                write!(f, "(prod")?;
                for p in parts {
                    write!(f, " {p}")?;
                }
                write!(f, ")")
            }
            RingExpr::PolyQuot { base, vars, relations } => {
                write!(f, "(polyquot {base} [{}] ", vars.join(" "))?;
                write_braced(f, relations)?;
                write!(f, ")")
            }
            RingExpr::Quot { base, ideal } => {
                write!(f, "(quot {base} (ideal")?;
                write_atoms(f, ideal)?;
                write!(f, "))")
            }
            RingExpr::Ref(id) => write!(f, "{}", id.name),
        }
    }
}

impl fmt::Display for MultExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(mult {} ", self.ring)?;
        write_braced(f, &self.gens)?;
        write!(f, ")")
    }
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleExpr::SelfMod(r) => write!(f, "(self {r})"),
            ModuleExpr::Cyclic { ring, ideal } => {
                write!(f, "(cyclic {ring} (ideal")?;
                write_atoms(f, ideal)?;
                write!(f, "))")
            }
            ModuleExpr::Free { ring, rank } => write!(f, "(free {ring} {rank})"),
            ModuleExpr::DSum(parts) | ModuleExpr::Prod(parts) => {
                let head = if matches!(self, ModuleExpr::DSum(_)) {
                    "dsum"
                } else {
                    "prod"
                };
                write!(f, "({head}")?;
                for p in parts {
                    write!(f, " {p}")?;
                }
                write!(f, ")")
            }
            ModuleExpr::Quot { module, sub } => {
                write!(f, "(quot {module} (sub ")?;
                write_braced(f, sub)?;
                write!(f, "))")
            }
            ModuleExpr::Sub { module, gens } => {
                write!(f, "(sub {module} ")?;
                write_braced(f, gens)?;
                write!(f, ")")
            }
            ModuleExpr::Loc { module, mult } => write!(f, "(loc {module} {mult})"),
            ModuleExpr::Faithful(m) => write!(f, "(faithful {m})"),
            ModuleExpr::Ref(id) => write!(f, "{}", id.name),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Ring(r) => r.fmt(f),
            Target::Module(m) => m.fmt(f),
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Ring { name, expr } => write!(f, "(ring {} {expr})", name.name),
            Statement::Module { name, expr } => write!(f, "(module {} {expr})", name.name),
            Statement::Classify(t) => write!(f, "(classify {t})"),
            Statement::Check(m) => write!(f, "(check {m})"),
            Statement::Localize(m, t) => write!(f, "(loc {m} {t})"),
            Statement::Suite => write!(f, "(suite)"),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
