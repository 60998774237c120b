use std::fmt;

/// What invariant a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    NonemptyStrata,
    DuplicateStratum,
    ZeroClass,
    UnassignedAtom,
    LocalTriviality,
    UnmappedStratum,
    ModelMismatch,
    ZeroMultiplier,
    Certification,
    BaseChange,
    Covariance,
    Reference,
    Atom,
}

impl ViolationKind {
    pub fn label(self) -> &'static str {
        match self {
            ViolationKind::NonemptyStrata => "nonempty strata",
            ViolationKind::DuplicateStratum => "duplicate stratum",
            ViolationKind::ZeroClass => "zero class",
            ViolationKind::UnassignedAtom => "unassigned atom",
            ViolationKind::LocalTriviality => "local triviality",
            ViolationKind::UnmappedStratum => "unmapped stratum",
            ViolationKind::ModelMismatch => "model mismatch",
            ViolationKind::ZeroMultiplier => "zero multiplier",
            ViolationKind::Certification => "certification",
            ViolationKind::BaseChange => "base change",
            ViolationKind::Covariance => "covariance",
            ViolationKind::Reference => "unresolved reference",
            ViolationKind::Atom => "atom",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub subject: String,
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.subject, self.kind.label())?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

/// Accumulated invariant violations. Empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(
        &mut self,
        subject: impl Into<String>,
        kind: ViolationKind,
        detail: impl Into<String>,
    ) {
        self.violations.push(Violation {
            subject: subject.into(),
            kind,
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    /// `Ok(())` when valid, otherwise the report as an error.
    pub fn into_result(self) -> crate::Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(crate::Error::Invalid(self))
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
