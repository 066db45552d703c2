//! Agents, choices, utility assignments and preference preorders.
//!
//! Everything downstream is parameterised over a utility type `U` and a
//! [`Preference`] on it. The preference is written `leq(u, v)` and reads
//! "`v` is at least as good as `u`", so a checker asking whether a deviation
//! helps compares `leq(deviating, current)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("agent set must not be empty")]
    EmptyAgentSet,
    #[error("agent `{0}` declared twice")]
    DuplicateAgent(String),
    #[error("assignment is missing agent `{0}`")]
    MissingAgent(String),
    #[error("utilities {0} and {1} are incomparable under the preference")]
    Incomparable(String, String),
}

/// An agent of a problem instance: a symbolic name plus its ordinal in the
/// declared agent set. Identity is the ordinal.
#[derive(Clone)]
pub struct AgentId {
    ordinal: u32,
    name: Arc<str>,
}

impl AgentId {
    pub fn new(ordinal: u32, name: impl Into<Arc<str>>) -> Self {
        Self { ordinal, name: name.into() }
    }

    pub fn ordinal(&self) -> u32 {
        self.ordinal
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl PartialEq for AgentId {
    fn eq(&self, other: &Self) -> bool {
        self.ordinal == other.ordinal
    }
}

impl Eq for AgentId {}

impl Hash for AgentId {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ordinal.hash(state);
    }
}

impl PartialOrd for AgentId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AgentId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ordinal.cmp(&other.ordinal)
    }
}

impl fmt::Debug for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.name, self.ordinal)
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// The finite, nonempty agent set of an instance. Ordinals follow the
/// lexicographic order of the names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentSet {
    agents: Vec<AgentId>,
}

impl AgentSet {
    pub fn new<I, S>(names: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_owned()).collect();
        if names.is_empty() {
            return Err(ModelError::EmptyAgentSet);
        }
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(ModelError::DuplicateAgent(w[0].clone()));
        }
        let agents = names
            .into_iter()
            .enumerate()
            .map(|(i, n)| AgentId::new(i as u32, n))
            .collect();
        Ok(Self { agents })
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &AgentId> {
        self.agents.iter()
    }

    pub fn get(&self, ordinal: usize) -> Option<&AgentId> {
        self.agents.get(ordinal)
    }

    pub fn by_name(&self, name: &str) -> Result<&AgentId, ModelError> {
        self.agents
            .iter()
            .find(|a| a.name() == name)
            .ok_or_else(|| ModelError::UnknownAgent(name.to_owned()))
    }

    pub fn contains(&self, agent: &AgentId) -> bool {
        self.agents.get(agent.ordinal() as usize).is_some_and(|a| a.name() == agent.name())
    }

    /// Builds an assignment from `(name, utility)` pairs, requiring every
    /// declared agent exactly once.
    pub fn assignment<U, I, S>(&self, pairs: I) -> Result<UtilityAssignment<U>, ModelError>
    where
        I: IntoIterator<Item = (S, U)>,
        S: AsRef<str>,
    {
        let mut map = BTreeMap::new();
        for (name, u) in pairs {
            let agent = self.by_name(name.as_ref())?.clone();
            if map.insert(agent.clone(), u).is_some() {
                return Err(ModelError::DuplicateAgent(agent.name().to_owned()));
            }
        }
        if let Some(missing) = self.agents.iter().find(|a| !map.contains_key(*a)) {
            return Err(ModelError::MissingAgent(missing.name().to_owned()));
        }
        Ok(UtilityAssignment { map })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Choice {
    Left,
    Right,
}

impl Choice {
    pub fn flip(self) -> Self {
        match self {
            Choice::Left => Choice::Right,
            Choice::Right => Choice::Left,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Choice::Left => "left",
            Choice::Right => "right",
        }
    }
}

impl std::ops::Not for Choice {
    type Output = Choice;

    fn not(self) -> Choice {
        self.flip()
    }
}

impl fmt::Display for Choice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A finite total map from the agents of an instance to utilities.
/// Equality is pointwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UtilityAssignment<U> {
    map: BTreeMap<AgentId, U>,
}

impl<U> UtilityAssignment<U> {
    /// Builds an assignment without checking it against a declared agent
    /// set; see [`AgentSet::assignment`] for the checked constructor.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (AgentId, U)>) -> Self {
        Self { map: pairs.into_iter().collect() }
    }

    pub fn get(&self, agent: &AgentId) -> Result<&U, ModelError> {
        self.map.get(agent).ok_or_else(|| ModelError::UnknownAgent(agent.name().to_owned()))
    }

    pub fn agents(&self) -> impl Iterator<Item = &AgentId> {
        self.map.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AgentId, &U)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn map<V>(&self, mut f: impl FnMut(&U) -> V) -> UtilityAssignment<V> {
        UtilityAssignment { map: self.map.iter().map(|(a, u)| (a.clone(), f(u))).collect() }
    }

    pub fn try_map<V, E>(&self, mut f: impl FnMut(&U) -> Result<V, E>) -> Result<UtilityAssignment<V>, E> {
        let mut map = BTreeMap::new();
        for (a, u) in &self.map {
            map.insert(a.clone(), f(u)?);
        }
        Ok(UtilityAssignment { map })
    }

    /// True iff the assignment is defined on exactly the agents of `set`.
    pub fn covers(&self, set: &AgentSet) -> bool {
        self.map.len() == set.len() && set.iter().all(|a| self.map.contains_key(a))
    }
}

/// Which concrete preorder a [`Preference`] is, when the symbolic engines
/// need to know.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    /// `u =< v` iff `u >= v` on naturals: smaller numbers are preferred.
    GeNat,
    /// `u =< v` iff `u <= v`: larger numbers are preferred.
    LeNum,
    Other,
}

/// A preference preorder `=<` on utilities. Implementations must be
/// reflexive and transitive; totality is only demanded by the solvers.
pub trait Preference<U> {
    fn leq(&self, u: &U, v: &U) -> bool;

    fn kind(&self) -> OrderKind {
        OrderKind::Other
    }
}

impl<U, P: Preference<U> + ?Sized> Preference<U> for &P {
    fn leq(&self, u: &U, v: &U) -> bool {
        (**self).leq(u, v)
    }

    fn kind(&self) -> OrderKind {
        (**self).kind()
    }
}

/// The escalation order: a larger number is a larger cost.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GeNat;

impl Preference<u64> for GeNat {
    fn leq(&self, u: &u64, v: &u64) -> bool {
        u >= v
    }

    fn kind(&self) -> OrderKind {
        OrderKind::GeNat
    }
}

/// The usual numeric order: a larger number is better.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LeNum;

impl<T: PartialOrd> Preference<T> for LeNum {
    fn leq(&self, u: &T, v: &T) -> bool {
        u <= v
    }

    fn kind(&self) -> OrderKind {
        OrderKind::LeNum
    }
}

pub fn make_order_ge_nat() -> GeNat {
    GeNat
}

/// Outcome of comparing two utilities for argmax purposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preferred {
    First,
    Second,
    Tie,
}

/// Compares `u` and `v` under `ord`; fails when neither `u =< v` nor `v =< u`.
pub fn prefer<U: fmt::Debug, P: Preference<U> + ?Sized>(ord: &P, u: &U, v: &U) -> Result<Preferred, ModelError> {
    match (ord.leq(v, u), ord.leq(u, v)) {
        (true, true) => Ok(Preferred::Tie),
        (true, false) => Ok(Preferred::First),
        (false, true) => Ok(Preferred::Second),
        (false, false) => Err(ModelError::Incomparable(format!("{u:?}"), format!("{v:?}"))),
    }
}
