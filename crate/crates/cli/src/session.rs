//! Parsed sessions: one ring, named objects and the commands to run.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use generica_core::groebner::{FreeVec, Ideal};
use generica_core::perturb::PerturbSpace;
use generica_core::ring::{Field, Poly, PolyMatrix, Ring};
use generica_core::Result as EngineResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Ideal,
    Tuple,
    Matrix,
    Space,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Ideal => "ideal",
            Kind::Tuple => "tuple",
            Kind::Matrix => "matrix",
            Kind::Space => "space",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decl {
    Ideal { name: String, gens: Vec<Poly> },
    Tuple { name: String, elems: Vec<Poly> },
    /// Entries row by row.
    Matrix { name: String, rows: usize, cols: usize, entries: Vec<Poly> },
    Space { name: String, components: Vec<String>, order: u32 },
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Ideal { name, .. } | Decl::Tuple { name, .. } | Decl::Matrix { name, .. } | Decl::Space { name, .. } => {
                name
            }
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Decl::Ideal { .. } => Kind::Ideal,
            Decl::Tuple { .. } => Kind::Tuple,
            Decl::Matrix { .. } => Kind::Matrix,
            Decl::Space { .. } => Kind::Space,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Gb,
    Nf,
    Dim,
    Height,
    Grade,
    Regseq,
    Koszul,
    Detideal,
    Profile,
    En,
    Tor,
    Ext,
    Perturb,
    Stability,
}

impl Op {
    pub const ALL: [Op; 14] = [
        Op::Gb,
        Op::Nf,
        Op::Dim,
        Op::Height,
        Op::Grade,
        Op::Regseq,
        Op::Koszul,
        Op::Detideal,
        Op::Profile,
        Op::En,
        Op::Tor,
        Op::Ext,
        Op::Perturb,
        Op::Stability,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Op::Gb => "gb",
            Op::Nf => "nf",
            Op::Dim => "dim",
            Op::Height => "height",
            Op::Grade => "grade",
            Op::Regseq => "regseq",
            Op::Koszul => "koszul",
            Op::Detideal => "detideal",
            Op::Profile => "profile",
            Op::En => "en",
            Op::Tor => "tor",
            Op::Ext => "ext",
            Op::Perturb => "perturb",
            Op::Stability => "stability",
        }
    }

    pub fn from_name(s: &str) -> Option<Op> {
        Op::ALL.iter().copied().find(|op| op.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Arg {
    /// A declared name or a keyword.
    Name(String),
    Int(u64),
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Name(s) => f.write_str(s),
            Arg::Int(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub op: Op,
    pub args: Vec<Arg>,
    /// `--key value` pairs, values kept as written.
    pub options: BTreeMap<String, String>,
}

impl Command {
    pub fn option(&self, key: &str) -> Option<&str> {
        self.options.get(key).map(String::as_str)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.op.name())?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        for (k, v) in &self.options {
            write!(f, " --{k} {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    Decl(Decl),
    Command(Command),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Session {
    pub ring: Option<Arc<Ring>>,
    /// Declarations and commands in source order.
    pub items: Vec<Item>,
}

impl Session {
    pub fn decl(&self, name: &str) -> Option<&Decl> {
        self.items.iter().find_map(|it| match it {
            Item::Decl(d) if d.name() == name => Some(d),
            _ => None,
        })
    }

    pub fn decls(&self) -> impl Iterator<Item = &Decl> {
        self.items.iter().filter_map(|it| match it {
            Item::Decl(d) => Some(d),
            Item::Command(_) => None,
        })
    }

    pub fn commands(&self) -> impl Iterator<Item = &Command> {
        self.items.iter().filter_map(|it| match it {
            Item::Command(c) => Some(c),
            Item::Decl(_) => None,
        })
    }

    pub fn ring(&self) -> Option<&Arc<Ring>> {
        self.ring.as_ref()
    }

    pub fn ideal(&self, name: &str) -> Option<Ideal> {
        match (self.decl(name)?, self.ring.as_ref()) {
            (Decl::Ideal { gens, .. }, Some(r)) => Some(Ideal::new(r, gens.clone())),
            _ => None,
        }
    }

    pub fn tuple(&self, name: &str) -> Option<Vec<Poly>> {
        match self.decl(name)? {
            Decl::Tuple { elems, .. } => Some(elems.clone()),
            _ => None,
        }
    }

    pub fn matrix(&self, name: &str) -> Option<PolyMatrix> {
        match self.decl(name)? {
            Decl::Matrix { rows, cols, entries, .. } => {
                let rows: Vec<Vec<Poly>> = entries.chunks(*cols).take(*rows).map(|r| r.to_vec()).collect();
                PolyMatrix::from_rows(rows).ok()
            }
            _ => None,
        }
    }

    /// `F^order` times each named ideal; `degree_bound` as for
    /// [`PerturbSpace::new`].
    pub fn space(&self, name: &str, degree_bound: Option<u32>) -> Option<EngineResult<PerturbSpace>> {
        let ring = self.ring.as_ref()?;
        match self.decl(name)? {
            Decl::Space { components, order, .. } => {
                let ideals: Option<Vec<Ideal>> = components.iter().map(|c| self.ideal(c)).collect();
                Some(PerturbSpace::new(ring, ideals?, *order, degree_bound))
            }
            _ => None,
        }
    }

    pub fn tuple_vec(&self, name: &str) -> Option<FreeVec> {
        self.tuple(name).map(FreeVec::new)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, ring: &Ring, ps: &[Poly]) -> fmt::Result {
    let parts: Vec<String> = ps.iter().map(|p| ring.format(p)).collect();
    f.write_str(&parts.join(", "))
}

fn field_name(field: &Field) -> String {
    match field {
        Field::Prime(p) => format!("GF({p})"),
        Field::Rational => "QQ".into(),
    }
}

/// Prints the session in the input language; parsing the output gives back
/// an equal session.
impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = &self.ring {
            write!(f, "ring {}[{}] order {}", field_name(r.field()), r.vars().join(", "), r.order())?;
            if r.has_base() {
                f.write_str(" mod ")?;
                write_list(f, &r.ambient(), r.base_gens())?;
            }
            f.write_str(";\n")?;
        }
        for item in &self.items {
            match item {
                Item::Command(c) => writeln!(f, "{c};")?,
                Item::Decl(d) => {
                    let ring = self.ring.as_ref().expect("declarations follow the ring");
                    match d {
                        Decl::Ideal { name, gens } => {
                            write!(f, "ideal {name} = ")?;
                            write_list(f, ring, gens)?;
                        }
                        Decl::Tuple { name, elems } => {
                            write!(f, "tuple {name} = ")?;
                            write_list(f, ring, elems)?;
                        }
                        Decl::Matrix { name, rows, cols, entries } => {
                            write!(f, "matrix {name} {rows} {cols} = [")?;
                            for (i, row) in entries.chunks(*cols).enumerate() {
                                if i > 0 {
                                    f.write_str("; ")?;
                                }
                                write_list(f, ring, row)?;
                            }
                            f.write_str("]")?;
                        }
                        Decl::Space { name, components, order } => {
                            write!(f, "space {name} = sum({}) order {order}", components.join(", "))?;
                        }
                    }
                    f.write_str(";\n")?;
                }
            }
        }
        Ok(())
    }
}
