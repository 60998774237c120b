use super::{
    AtomDecl, Domain, FunctionDecl, Item, Line, MapDecl, ModelFile, MorphismDecl, MultipliersDecl,
    StratumDecl, TowerDecl, TowerKind, VarietyDecl,
};
use crate::error::Result;
use crate::lex::{tokenize, Cursor, Tok};
use crate::prolim::Characteristic;
use crate::{BigInt, Polynomial};

pub fn parse(src: &str) -> Result<ModelFile> {
    let toks = tokenize(src)?;
    let mut cur = Cursor::new(&toks);
    let mut items = Vec::new();
    loop {
        cur.skip_newlines();
        if cur.at_end() {
            break;
        }
        let line = Line(cur.peek_token().map_or(0, |t| t.line));
        let keyword = cur.expect_word()?;
        let item = match keyword.as_str() {
            "atom" => Item::Atom(atom(&mut cur, line)?),
            "variety" => Item::Variety(variety(&mut cur, line)?),
            "morphism" => Item::Morphism(morphism(&mut cur, line)?),
            "tower" => Item::Tower(tower(&mut cur, line)?),
            "function" => Item::Function(function(&mut cur, line)?),
            "multipliers" => Item::Multipliers(multipliers(&mut cur, line)?),
            other => {
                cur.back();
                return Err(cur.error(format!("unknown item `{other}`")));
            }
        };
        end_of_line(&mut cur)?;
        items.push(item);
    }
    Ok(ModelFile { items })
}

fn end_of_line(cur: &mut Cursor<'_>) -> Result<()> {
    match cur.peek() {
        None | Some(Tok::Newline) => Ok(()),
        Some(_) => Err(cur.error("expected end of line")),
    }
}

/// `key=`
fn key(cur: &mut Cursor<'_>, name: &str) -> Result<()> {
    cur.expect_keyword(name)?;
    cur.expect_sym('=')
}

/// Whether the next token is the word `name`.
fn at_key(cur: &Cursor<'_>, name: &str) -> bool {
    matches!(cur.peek(), Some(Tok::Word(w)) if w == name)
}

fn int(cur: &mut Cursor<'_>) -> Result<BigInt> {
    let neg = cur.eat_sym('-');
    match cur.peek() {
        Some(Tok::Int(d)) => {
            let v: BigInt = d.parse().map_err(|_| cur.error("bad integer"))?;
            cur.advance();
            Ok(if neg { -v } else { v })
        }
        _ => Err(cur.error("expected an integer")),
    }
}

fn small<T: TryFrom<u64>>(cur: &mut Cursor<'_>) -> Result<T> {
    let v = cur.expect_uint()?;
    T::try_from(v).map_err(|_| cur.error("integer too large"))
}

fn poly(cur: &mut Cursor<'_>) -> Result<Polynomial> {
    Polynomial::parse_from(cur)
}

fn bracketed<T>(
    cur: &mut Cursor<'_>,
    mut item: impl FnMut(&mut Cursor<'_>) -> Result<T>,
) -> Result<Vec<T>> {
    cur.expect_sym('[')?;
    let mut out = Vec::new();
    if cur.eat_sym(']') {
        return Ok(out);
    }
    loop {
        out.push(item(cur)?);
        if cur.eat_sym(']') {
            return Ok(out);
        }
        cur.expect_sym(',')?;
    }
}

/// `{ entry (; | newline) ... }`
fn block<T>(
    cur: &mut Cursor<'_>,
    mut entry: impl FnMut(&mut Cursor<'_>) -> Result<T>,
) -> Result<Vec<T>> {
    cur.expect_sym('{')?;
    let mut out = Vec::new();
    loop {
        while cur.eat_sym(';') || cur.peek() == Some(&Tok::Newline) {
            cur.skip_newlines();
        }
        if cur.eat_sym('}') {
            return Ok(out);
        }
        if cur.at_end() {
            return Err(cur.error("unclosed `{`"));
        }
        out.push(entry(cur)?);
        if !(cur.is_sym(';') || cur.is_sym('}') || cur.peek() == Some(&Tok::Newline)) {
            return Err(cur.error("expected `;`, a line break or `}`"));
        }
    }
}

fn atom(cur: &mut Cursor<'_>, line: Line) -> Result<AtomDecl> {
    let name = cur.expect_word()?;
    key(cur, "euler")?;
    let euler = int(cur)?;
    let hodge = if at_key(cur, "hodge") {
        key(cur, "hodge")?;
        Some(poly(cur)?)
    } else {
        None
    };
    Ok(AtomDecl {
        line,
        name,
        euler,
        hodge,
    })
}

fn variety(cur: &mut Cursor<'_>, line: Line) -> Result<VarietyDecl> {
    let name = cur.expect_name()?;
    let smooth = if at_key(cur, "smooth") {
        key(cur, "smooth")?;
        Some(small(cur)?)
    } else {
        None
    };
    let strata = block(cur, |cur| {
        cur.expect_keyword("stratum")?;
        let id = cur.expect_name()?;
        key(cur, "class")?;
        let class = poly(cur)?;
        let component = if at_key(cur, "component") {
            key(cur, "component")?;
            cur.expect_name()?
        } else {
            name.clone()
        };
        Ok(StratumDecl {
            id,
            class,
            component,
        })
    })?;
    Ok(VarietyDecl {
        line,
        name,
        smooth,
        strata,
    })
}

fn morphism(cur: &mut Cursor<'_>, line: Line) -> Result<MorphismDecl> {
    let name = cur.expect_name()?;
    cur.expect_sym(':')?;
    let source = cur.expect_name()?;
    cur.expect_arrow()?;
    let target = cur.expect_name()?;
    let maps = block(cur, |cur| {
        let from = cur.expect_name()?;
        cur.expect_arrow()?;
        let to = cur.expect_name()?;
        key(cur, "fiber")?;
        Ok(MapDecl {
            from,
            to,
            fiber: poly(cur)?,
        })
    })?;
    Ok(MorphismDecl {
        line,
        name,
        source,
        target,
        maps,
    })
}

fn tower(cur: &mut Cursor<'_>, line: Line) -> Result<TowerDecl> {
    let name = cur.expect_name()?;
    key(cur, "kind")?;
    let kind_name = cur.expect_word()?;
    let kind = match kind_name.as_str() {
        "power" => {
            key(cur, "base")?;
            TowerKind::Power {
                base: cur.expect_name()?,
            }
        }
        "arc" => {
            key(cur, "base")?;
            let base = cur.expect_name()?;
            key(cur, "dim")?;
            TowerKind::Arc {
                base,
                dim: small(cur)?,
            }
        }
        "sequence" => {
            key(cur, "k")?;
            TowerKind::Sequence { k: small(cur)? }
        }
        "locally_trivial" => {
            key(cur, "base")?;
            let base = cur.expect_name()?;
            key(cur, "fibers")?;
            TowerKind::LocallyTrivial {
                base,
                fibers: bracketed(cur, |c| c.expect_name())?,
            }
        }
        "explicit" => {
            key(cur, "levels")?;
            let levels = bracketed(cur, |c| c.expect_name())?;
            key(cur, "bonds")?;
            TowerKind::Explicit {
                levels,
                bonds: bracketed(cur, |c| c.expect_name())?,
            }
        }
        other => {
            cur.back();
            return Err(cur.error(format!("unknown tower kind `{other}`")));
        }
    };
    Ok(TowerDecl { line, name, kind })
}

fn function(cur: &mut Cursor<'_>, line: Line) -> Result<FunctionDecl> {
    let name = cur.expect_name()?;
    let domain = if at_key(cur, "on") {
        key(cur, "on")?;
        Domain::Variety(cur.expect_name()?)
    } else {
        key(cur, "tower")?;
        let tower = cur.expect_name()?;
        key(cur, "level")?;
        Domain::Level {
            tower,
            level: small(cur)?,
        }
    };
    let motivic = at_key(cur, "motivic");
    if motivic {
        cur.advance();
    }
    let value = |cur: &mut Cursor<'_>| -> Result<Polynomial> {
        let at = cur.clone();
        let v = poly(cur)?;
        if !motivic && !v.is_constant() {
            return Err(at.error("constructible values must be integers"));
        }
        Ok(v)
    };
    let default = if at_key(cur, "default") {
        key(cur, "default")?;
        value(cur)?
    } else {
        Polynomial::zero()
    };
    let values = block(cur, |cur| {
        let id = cur.expect_name()?;
        cur.expect_sym('=')?;
        Ok((id, value(cur)?))
    })?;
    Ok(FunctionDecl {
        line,
        name,
        domain,
        motivic,
        default,
        values,
    })
}

fn multipliers(cur: &mut Cursor<'_>, line: Line) -> Result<MultipliersDecl> {
    let name = cur.expect_name()?;
    let tower = if at_key(cur, "tower") {
        key(cur, "tower")?;
        Some(cur.expect_name()?)
    } else {
        None
    };
    let kind = if at_key(cur, "kind") {
        key(cur, "kind")?;
        Some(match cur.expect_word()?.as_str() {
            "euler" => Characteristic::Euler,
            "gamma" => Characteristic::Gamma,
            other => {
                cur.back();
                return Err(cur.error(format!("unknown multiplier kind `{other}`")));
            }
        })
    } else {
        None
    };
    key(cur, "steps")?;
    let steps = bracketed(cur, poly)?;
    let tail = if at_key(cur, "tail") {
        key(cur, "tail")?;
        Some(poly(cur)?)
    } else {
        None
    };
    let certified = at_key(cur, "certified");
    if certified {
        cur.advance();
    }
    let kind = kind.unwrap_or_else(|| {
        if steps.iter().chain(tail.iter()).all(Polynomial::is_constant) {
            Characteristic::Euler
        } else {
            Characteristic::Gamma
        }
    });
    Ok(MultipliersDecl {
        line,
        name,
        tower,
        kind,
        steps,
        tail,
        certified,
    })
}
