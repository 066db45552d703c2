use std::fmt;

/// Three-valued checker result. `Holds` and `Refuted` carry evidence that can
/// be checked independently; `Unknown` records the budget that ran out.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict<C, W> {
    Holds(C),
    Refuted(W),
    Unknown { budget: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    Holds,
    Refuted,
    Unknown,
}

impl VerdictKind {
    /// Process exit status for a top-level verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            VerdictKind::Holds => 0,
            VerdictKind::Refuted => 1,
            VerdictKind::Unknown => 2,
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Holds => "Holds",
            VerdictKind::Refuted => "Refuted",
            VerdictKind::Unknown => "Unknown",
        })
    }
}

impl<C, W> Verdict<C, W> {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::Holds(_) => VerdictKind::Holds,
            Verdict::Refuted(_) => VerdictKind::Refuted,
            Verdict::Unknown { .. } => VerdictKind::Unknown,
        }
    }

    pub fn is_holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }

    pub fn certificate(&self) -> Option<&C> {
        match self {
            Verdict::Holds(c) => Some(c),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Refuted(w) => Some(w),
            _ => None,
        }
    }

    pub fn map_certificate<D>(self, f: impl FnOnce(C) -> D) -> Verdict<D, W> {
        match self {
            Verdict::Holds(c) => Verdict::Holds(f(c)),
            Verdict::Refuted(w) => Verdict::Refuted(w),
            Verdict::Unknown { budget } => Verdict::Unknown { budget },
        }
    }
}
