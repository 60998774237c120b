//! The declarative model file format.
//!
//! ```text
//! atom Q euler=2 hodge=u + v
//! variety P1 smooth=1 {
//!   stratum p class=1 component=P1
//!   stratum c class=L component=P1
//! }
//! morphism f : P1 -> PT { p -> pt fiber=1 ; c -> pt fiber=L }
//! tower T kind=power base=P1
//! function one tower=T level=0 default=1 { }
//! multipliers M tower=T kind=euler steps=[] tail=2 certified
//! ```
//!
//! Blocks separate entries with `;` or line breaks, and `#` starts a
//! comment. Polynomials use the ring syntax.

mod parse;
mod resolve;

use std::fmt;

pub use parse::parse;
pub use resolve::{check, resolve, FunctionEntry, FunctionValue, MultiplierEntry, Workspace};

use crate::prolim::Characteristic;
use crate::{BigInt, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelFile {
    pub items: Vec<Item>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Atom(AtomDecl),
    Variety(VarietyDecl),
    Morphism(MorphismDecl),
    Tower(TowerDecl),
    Function(FunctionDecl),
    Multipliers(MultipliersDecl),
}

/// Every item has a line number for diagnostics; it is not compared.
#[derive(Clone, Copy, Debug, Default)]
pub struct Line(pub usize);

impl PartialEq for Line {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Line {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomDecl {
    pub line: Line,
    pub name: String,
    pub euler: BigInt,
    pub hodge: Option<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumDecl {
    pub id: String,
    pub class: Polynomial,
    pub component: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyDecl {
    pub line: Line,
    pub name: String,
    pub smooth: Option<u32>,
    pub strata: Vec<StratumDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub from: String,
    pub to: String,
    pub fiber: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismDecl {
    pub line: Line,
    pub name: String,
    pub source: String,
    pub target: String,
    pub maps: Vec<MapDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerKind {
    Power {
        base: String,
    },
    Arc {
        base: String,
        dim: u32,
    },
    Sequence {
        k: usize,
    },
    LocallyTrivial {
        base: String,
        fibers: Vec<String>,
    },
    Explicit {
        levels: Vec<String>,
        bonds: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerDecl {
    pub line: Line,
    pub name: String,
    pub kind: TowerKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Variety(String),
    Level { tower: String, level: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionDecl {
    pub line: Line,
    pub name: String,
    pub domain: Domain,
    pub motivic: bool,
    /// Value on strata not listed.
    pub default: Polynomial,
    pub values: Vec<(String, Polynomial)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipliersDecl {
    pub line: Line,
    pub name: String,
    pub tower: Option<String>,
    pub kind: Characteristic,
    pub steps: Vec<Polynomial>,
    pub tail: Option<Polynomial>,
    pub certified: bool,
}

fn list<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for TowerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerKind::Power { base } => write!(f, "kind=power base={base}"),
            TowerKind::Arc { base, dim } => write!(f, "kind=arc base={base} dim={dim}"),
            TowerKind::Sequence { k } => write!(f, "kind=sequence k={k}"),
            TowerKind::LocallyTrivial { base, fibers } => {
                write!(
                    f,
                    "kind=locally_trivial base={base} fibers=[{}]",
                    list(fibers)
                )
            }
            TowerKind::Explicit { levels, bonds } => {
                write!(
                    f,
                    "kind=explicit levels=[{}] bonds=[{}]",
                    list(levels),
                    list(bonds)
                )
            }
        }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Atom(a) => {
                write!(f, "atom {} euler={}", a.name, a.euler)?;
                if let Some(h) = &a.hodge {
                    write!(f, " hodge={h}")?;
                }
                writeln!(f)
            }
            Item::Variety(v) => {
                write!(f, "variety {}", v.name)?;
                if let Some(d) = v.smooth {
                    write!(f, " smooth={d}")?;
                }
                writeln!(f, " {{")?;
                for s in &v.strata {
                    writeln!(
                        f,
                        "  stratum {} class={} component={}",
                        s.id, s.class, s.component
                    )?;
                }
                writeln!(f, "}}")
            }
            Item::Morphism(m) => {
                writeln!(f, "morphism {} : {} -> {} {{", m.name, m.source, m.target)?;
                for e in &m.maps {
                    writeln!(f, "  {} -> {} fiber={}", e.from, e.to, e.fiber)?;
                }
                writeln!(f, "}}")
            }
            Item::Tower(t) => writeln!(f, "tower {} {}", t.name, t.kind),
            Item::Function(g) => {
                write!(f, "function {} ", g.name)?;
                match &g.domain {
                    Domain::Variety(v) => write!(f, "on={v}")?,
                    Domain::Level { tower, level } => write!(f, "tower={tower} level={level}")?,
                }
                if g.motivic {
                    write!(f, " motivic")?;
                }
                if !g.default.is_zero() {
                    write!(f, " default={}", g.default)?;
                }
                writeln!(f, " {{")?;
                for (id, v) in &g.values {
                    writeln!(f, "  {id} = {v}")?;
                }
                writeln!(f, "}}")
            }
            Item::Multipliers(m) => {
                write!(f, "multipliers {}", m.name)?;
                if let Some(t) = &m.tower {
                    write!(f, " tower={t}")?;
                }
                write!(f, " kind={} steps=[{}]", m.kind.label(), list(&m.steps))?;
                if let Some(t) = &m.tail {
                    write!(f, " tail={t}")?;
                }
                if m.certified {
                    write!(f, " certified")?;
                }
                writeln!(f)
            }
        }
    }
}

/// Canonical text: one item per block, separated by blank lines.
impl fmt::Display for ModelFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{item}")?;
        }
        Ok(())
    }
}
