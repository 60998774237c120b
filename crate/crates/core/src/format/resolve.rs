use std::collections::BTreeMap;
use std::sync::Arc;

use super::{
    Domain, FunctionDecl, Item, ModelFile, MorphismDecl, MultipliersDecl, TowerDecl, TowerKind,
    VarietyDecl,
};
use crate::builders::TowerShape;
use crate::error::{Error, Result};
use crate::prolim::{Characteristic, MultiplierSystem, Tower};
use crate::relgroth::MotivicFn;
use crate::report::{Report, ViolationKind};
use crate::ring::{Atom, AtomTable};
use crate::variety::{
    ConstructibleFn, ConstructibleSet, FiberSquare, MorphismModel, Stratum, VarietyModel,
};
use crate::BigInt;

/// Levels checked when certifying multipliers of an unbounded tower beyond
/// its explicit steps.
const CERTIFY_EXTRA_LEVELS: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub enum FunctionValue {
    Constructible(ConstructibleFn<BigInt>),
    Motivic(MotivicFn<BigInt>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FunctionEntry {
    /// Tower and level the function lives on, if declared that way.
    pub level: Option<(String, usize)>,
    pub value: FunctionValue,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiplierEntry {
    pub tower: Option<String>,
    pub kind: Characteristic,
    pub system: MultiplierSystem<BigInt>,
    pub certified: bool,
}

/// Resolved contents of a model file.
#[derive(Debug, Default)]
pub struct Workspace {
    pub atoms: Arc<AtomTable<BigInt>>,
    pub varieties: BTreeMap<String, Arc<VarietyModel<BigInt>>>,
    pub morphisms: BTreeMap<String, Arc<MorphismModel<BigInt>>>,
    pub towers: BTreeMap<String, Arc<Tower<BigInt>>>,
    pub functions: BTreeMap<String, FunctionEntry>,
    pub multipliers: BTreeMap<String, MultiplierEntry>,
}

fn unknown(what: &str, name: &str) -> Error {
    Error::InvalidArgument(format!("unknown {what} `{name}`"))
}

impl Workspace {
    pub fn variety(&self, name: &str) -> Result<&Arc<VarietyModel<BigInt>>> {
        self.varieties
            .get(name)
            .ok_or_else(|| unknown("variety", name))
    }

    pub fn morphism(&self, name: &str) -> Result<&Arc<MorphismModel<BigInt>>> {
        self.morphisms
            .get(name)
            .ok_or_else(|| unknown("morphism", name))
    }

    pub fn tower(&self, name: &str) -> Result<&Arc<Tower<BigInt>>> {
        self.towers.get(name).ok_or_else(|| unknown("tower", name))
    }

    pub fn function(&self, name: &str) -> Result<&FunctionEntry> {
        self.functions
            .get(name)
            .ok_or_else(|| unknown("function", name))
    }

    /// The multiplier system to use for `kind` on `tower`: a `multipliers`
    /// block naming the tower, else the tower's declared system.
    pub fn multipliers_for(
        &self,
        tower: &str,
        kind: Characteristic,
    ) -> Option<MultiplierSystem<BigInt>> {
        self.multipliers
            .values()
            .find(|m| m.kind == kind && m.tower.as_deref() == Some(tower))
            .map(|m| m.system.clone())
            .or_else(|| self.towers.get(tower)?.declared(kind).cloned())
    }
}

#[derive(Default)]
struct Builder {
    ws: Workspace,
    towers: BTreeMap<String, Tower<BigInt>>,
    report: Report,
}

/// Resolve every item, collecting violations instead of stopping at the
/// first one. Items that fail to resolve are left out of the workspace.
pub fn check(file: &ModelFile) -> (Workspace, Report) {
    let mut b = Builder::default();
    let mut atoms = AtomTable::new();
    for item in &file.items {
        if let Item::Atom(a) = item {
            let declared = Atom::new(a.name.clone(), a.euler.clone(), a.hodge.clone())
                .and_then(|atom| atoms.declare(atom));
            if let Err(e) = declared {
                b.report.push(
                    format!("atom {}", a.name),
                    ViolationKind::Atom,
                    e.to_string(),
                );
            }
        }
    }
    b.ws.atoms = Arc::new(atoms);
    for item in &file.items {
        match item {
            Item::Atom(_) => {}
            Item::Variety(v) => b.variety(v),
            Item::Morphism(m) => b.morphism(m),
            Item::Tower(t) => b.tower(t),
            Item::Function(f) => b.function(f),
            Item::Multipliers(m) => b.multipliers(m),
        }
    }
    b.base_change();
    b.covariance();
    let Builder {
        mut ws,
        towers,
        report,
    } = b;
    ws.towers = towers.into_iter().map(|(k, t)| (k, Arc::new(t))).collect();
    (ws, report)
}

/// Resolve a file that must pass every check.
pub fn resolve(file: &ModelFile) -> Result<Workspace> {
    let (ws, report) = check(file);
    report.into_result()?;
    Ok(ws)
}

fn taken<T>(map: &BTreeMap<String, T>, name: &str) -> bool {
    map.contains_key(name)
}

impl Builder {
    fn missing(&mut self, subject: &str, what: &str, name: &str) {
        self.report.push(
            subject,
            ViolationKind::Reference,
            format!("unknown {what} `{name}`"),
        );
    }

    fn duplicate(&mut self, subject: &str) {
        self.report
            .push(subject, ViolationKind::Reference, "name already in use");
    }

    fn variety(&mut self, v: &VarietyDecl) {
        let subject = format!("variety {}", v.name);
        if taken(&self.ws.varieties, &v.name) {
            return self.duplicate(&subject);
        }
        let strata: Vec<_> = v
            .strata
            .iter()
            .map(|s| Stratum::new(s.id.clone(), s.class.clone(), s.component.clone()))
            .collect();
        let report = VarietyModel::check(&v.name, &self.ws.atoms, &strata);
        if !report.is_valid() {
            return self.report.extend(report);
        }
        match VarietyModel::new(v.name.clone(), self.ws.atoms.clone(), strata) {
            Ok(mut model) => {
                if let Some(d) = v.smooth {
                    model = model.with_smooth_dim(d);
                }
                self.ws.varieties.insert(v.name.clone(), Arc::new(model));
            }
            Err(e) => self
                .report
                .push(&subject, ViolationKind::Reference, e.to_string()),
        }
    }

    fn morphism(&mut self, m: &MorphismDecl) {
        let subject = format!("morphism {}", m.name);
        if taken(&self.ws.morphisms, &m.name) {
            return self.duplicate(&subject);
        }
        let (Some(src), Some(dst)) = (
            self.ws.varieties.get(&m.source).cloned(),
            self.ws.varieties.get(&m.target).cloned(),
        ) else {
            for v in [&m.source, &m.target] {
                if !self.ws.varieties.contains_key(v) {
                    self.missing(&subject, "variety", v);
                }
            }
            return;
        };
        let mut images = vec![None; src.len()];
        let mut fibers = vec![crate::Polynomial::zero(); src.len()];
        for e in &m.maps {
            match (src.index_of(&e.from), dst.index_of(&e.to)) {
                (Ok(s), Ok(t)) => {
                    images[s] = Some(t);
                    fibers[s] = e.fiber.clone();
                }
                (Err(e), _) | (_, Err(e)) => {
                    self.report
                        .push(&subject, ViolationKind::Reference, e.to_string())
                }
            }
        }
        if let Some(s) = images.iter().position(Option::is_none) {
            return self.report.push(
                &subject,
                ViolationKind::UnmappedStratum,
                format!("stratum `{}` has no image", src.stratum(s).id),
            );
        }
        let images: Vec<usize> = images.into_iter().map(Option::unwrap).collect();
        let report = MorphismModel::check(&m.name, &src, &dst, &images, &fibers);
        if !report.is_valid() {
            return self.report.extend(report);
        }
        match MorphismModel::new(m.name.clone(), src, dst, images, fibers) {
            Ok(f) => {
                self.ws.morphisms.insert(m.name.clone(), Arc::new(f));
            }
            Err(e) => self
                .report
                .push(&subject, ViolationKind::LocalTriviality, e.to_string()),
        }
    }

    fn lookup_varieties(
        &mut self,
        subject: &str,
        names: &[String],
    ) -> Option<Vec<Arc<VarietyModel<BigInt>>>> {
        let mut out = Vec::new();
        for n in names {
            match self.ws.varieties.get(n) {
                Some(v) => out.push(v.clone()),
                None => self.missing(subject, "variety", n),
            }
        }
        (out.len() == names.len()).then_some(out)
    }

    fn tower(&mut self, t: &TowerDecl) {
        let subject = format!("tower {}", t.name);
        if taken(&self.towers, &t.name) {
            return self.duplicate(&subject);
        }
        let shape = match &t.kind {
            TowerKind::Power { base } => {
                let Some(v) = self.lookup_varieties(&subject, std::slice::from_ref(base)) else {
                    return;
                };
                TowerShape::Power { base: v[0].clone() }
            }
            TowerKind::Arc { base, dim } => {
                let Some(v) = self.lookup_varieties(&subject, std::slice::from_ref(base)) else {
                    return;
                };
                TowerShape::Arc {
                    base: v[0].clone(),
                    dim: *dim,
                }
            }
            TowerKind::Sequence { k } => TowerShape::Sequence {
                atoms: self.ws.atoms.clone(),
                k: *k,
            },
            TowerKind::LocallyTrivial { base, fibers } => {
                let Some(b) = self.lookup_varieties(&subject, std::slice::from_ref(base)) else {
                    return;
                };
                let Some(fibers) = self.lookup_varieties(&subject, fibers) else {
                    return;
                };
                TowerShape::LocallyTrivial {
                    base: b[0].clone(),
                    fibers,
                }
            }
            TowerKind::Explicit { levels, bonds } => {
                let Some(levels) = self.lookup_varieties(&subject, levels) else {
                    return;
                };
                let mut maps = Vec::new();
                for n in bonds {
                    match self.ws.morphisms.get(n) {
                        Some(m) => maps.push(m.clone()),
                        None => self.missing(&subject, "morphism", n),
                    }
                }
                if maps.len() != bonds.len() {
                    return;
                }
                TowerShape::Explicit {
                    levels,
                    bonds: maps,
                }
            }
        };
        match shape.build(&t.name) {
            Ok(tower) => {
                self.certify_declared(&subject, &tower);
                self.towers.insert(t.name.clone(), tower);
            }
            Err(e @ Error::ModelMismatch { .. }) => {
                self.report
                    .push(&subject, ViolationKind::ModelMismatch, e.to_string())
            }
            Err(e) => self
                .report
                .push(&subject, ViolationKind::Reference, e.to_string()),
        }
    }

    fn horizon(tower: &Tower<BigInt>, system: &MultiplierSystem<BigInt>) -> usize {
        tower
            .depth()
            .unwrap_or(system.prefix().len().max(1) + CERTIFY_EXTRA_LEVELS)
    }

    fn certify_declared(&mut self, subject: &str, tower: &Tower<BigInt>) {
        for kind in [Characteristic::Euler, Characteristic::Gamma] {
            if let Some(system) = tower.declared(kind) {
                let upto = Self::horizon(tower, system);
                let report = tower.certify(kind, system, 0, upto);
                for v in report.violations() {
                    self.report.push(subject, v.kind, v.detail.clone());
                }
            }
        }
    }

    fn function(&mut self, f: &FunctionDecl) {
        let subject = format!("function {}", f.name);
        if taken(&self.ws.functions, &f.name) {
            return self.duplicate(&subject);
        }
        let (model, level) = match &f.domain {
            Domain::Variety(v) => match self.ws.varieties.get(v) {
                Some(m) => (m.clone(), None),
                None => return self.missing(&subject, "variety", v),
            },
            Domain::Level { tower, level } => match self.towers.get(tower) {
                Some(t) => match t.level(*level) {
                    Ok(m) => (m, Some((tower.clone(), *level))),
                    Err(e) => {
                        return self
                            .report
                            .push(&subject, ViolationKind::Reference, e.to_string())
                    }
                },
                None => return self.missing(&subject, "tower", tower),
            },
        };
        let mut values = vec![f.default.clone(); model.len()];
        for (id, v) in &f.values {
            match model.index_of(id) {
                Ok(i) => values[i] = v.clone(),
                Err(e) => {
                    return self
                        .report
                        .push(&subject, ViolationKind::Reference, e.to_string())
                }
            }
        }
        let value = if f.motivic {
            MotivicFn::from_values(model, values).map(FunctionValue::Motivic)
        } else {
            let ints = values
                .iter()
                .map(|v| v.as_constant().unwrap_or_default())
                .collect();
            ConstructibleFn::from_values(model, ints).map(FunctionValue::Constructible)
        };
        match value {
            Ok(value) => {
                self.ws
                    .functions
                    .insert(f.name.clone(), FunctionEntry { level, value });
            }
            Err(e) => self
                .report
                .push(&subject, ViolationKind::Reference, e.to_string()),
        }
    }

    fn multipliers(&mut self, m: &MultipliersDecl) {
        let subject = format!("multipliers {}", m.name);
        if taken(&self.ws.multipliers, &m.name) {
            return self.duplicate(&subject);
        }
        let kind_ok = m.kind == Characteristic::Gamma
            || m.steps.iter().chain(m.tail.iter()).all(|p| p.is_constant());
        if !kind_ok {
            return self.report.push(
                &subject,
                ViolationKind::Certification,
                "euler steps must be integers",
            );
        }
        let system = match MultiplierSystem::new(m.steps.clone(), m.tail.clone()) {
            Ok(s) => s,
            Err(e) => {
                return self
                    .report
                    .push(&subject, ViolationKind::ZeroMultiplier, e.to_string())
            }
        };
        if let Some(name) = &m.tower {
            let Some(tower) = self.towers.remove(name) else {
                return self.missing(&subject, "tower", name);
            };
            let mut tower = tower;
            if m.certified {
                let upto = Self::horizon(&tower, &system);
                let report = tower.certify(m.kind, &system, 0, upto);
                if report.is_valid() {
                    tower = tower.with_declared(m.kind, Some(system.clone()));
                } else {
                    for v in report.violations() {
                        self.report.push(&subject, v.kind, v.detail.clone());
                    }
                }
            }
            self.towers.insert(name.clone(), tower);
        } else if m.certified {
            self.report.push(
                &subject,
                ViolationKind::Certification,
                "certified multipliers must name a tower",
            );
        }
        self.ws.multipliers.insert(
            m.name.clone(),
            MultiplierEntry {
                tower: m.tower.clone(),
                kind: m.kind,
                system,
                certified: m.certified,
            },
        );
    }

    /// `g^* f_* = f'_* g'^*` on every stratum indicator, for every pair of
    /// morphisms with a common target, in both theories.
    fn base_change(&mut self) {
        let maps: Vec<_> = self
            .ws
            .morphisms
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        for (i, (fname, f)) in maps.iter().enumerate() {
            for (gname, g) in &maps[i..] {
                if !(Arc::ptr_eq(f.target(), g.target()) || f.target() == g.target()) {
                    continue;
                }
                let subject = format!("square {fname} x {gname}");
                let square = match FiberSquare::new(f, g) {
                    Ok(sq) => sq,
                    Err(_) => continue,
                };
                if let Err(detail) = base_change_holds(f, g, &square) {
                    self.report
                        .push(&subject, ViolationKind::BaseChange, detail);
                }
            }
        }
    }

    /// `χ(f_*α) = χ(α)` and `χ_Gro(f_*ια) = χ_Gro(ια)` on stratum indicators.
    fn covariance(&mut self) {
        let maps: Vec<_> = self
            .ws
            .morphisms
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        for (name, f) in maps {
            for s in 0..f.source().len() {
                let set = ConstructibleSet::from_indices(f.source(), [s]).expect("index in range");
                let alpha = ConstructibleFn::indicator(f.source().clone(), &set);
                let iota = MotivicFn::iota(&alpha);
                let ok = f
                    .pushforward(&alpha)
                    .map(|p| p.chi() == alpha.chi())
                    .unwrap_or(false)
                    && iota
                        .pushforward(&f)
                        .map(|p| p.chi_gro() == iota.chi_gro())
                        .unwrap_or(false);
                if !ok {
                    self.report.push(
                        format!("morphism {name}"),
                        ViolationKind::Covariance,
                        format!("at stratum `{}`", f.source().stratum(s).id),
                    );
                }
            }
        }
    }
}

fn base_change_holds(
    f: &MorphismModel<BigInt>,
    g: &MorphismModel<BigInt>,
    sq: &FiberSquare<BigInt>,
) -> std::result::Result<(), String> {
    let err = |e: Error| e.to_string();
    for s in 0..f.source().len() {
        let set = ConstructibleSet::from_indices(f.source(), [s]).map_err(err)?;
        let alpha = ConstructibleFn::indicator(f.source().clone(), &set);
        let lhs = g
            .pullback(&f.pushforward(&alpha).map_err(err)?)
            .map_err(err)?;
        let rhs = sq
            .to_right
            .pushforward(&sq.to_left.pullback(&alpha).map_err(err)?)
            .map_err(err)?;
        if lhs != rhs {
            return Err(format!(
                "constructible functions differ at `{}`",
                f.source().stratum(s).id
            ));
        }
        let m = MotivicFn::iota(&alpha);
        let lhs = m.pushforward(f).and_then(|x| x.pullback(g)).map_err(err)?;
        let rhs = m
            .pullback(&sq.to_left)
            .and_then(|x| x.pushforward(&sq.to_right))
            .map_err(err)?;
        if lhs != rhs {
            return Err(format!(
                "motivic functions differ at `{}`",
                f.source().stratum(s).id
            ));
        }
    }
    Ok(())
}
