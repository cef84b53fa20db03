//! Linear orders, domains of linear orders, restrictions, never-conditions
//! and the Condorcet (acyclicity) test.
//!
//! Alternatives are arbitrary positive labels, so a domain may live on
//! `{2,3,4}` just as well as on `{1,2,3}`. Positions are 1-based with
//! position 1 being the most preferred alternative.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};

/// Upper bound on the number of alternatives for operations that enumerate
/// all linear orders of the alternative set.
pub const MAX_ALTERNATIVES: usize = 7;

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct Alternative(u32);

impl Alternative {
    pub fn new(label: u32) -> Result<Self> {
        if label == 0 {
            return Err(Error::InvalidAlternative(label));
        }
        Ok(Alternative(label))
    }

    pub fn label(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Alternative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type AlternativeSet = BTreeSet<Alternative>;

/// Builds an alternative set from raw labels.
pub fn alternative_set(labels: &[u32]) -> Result<AlternativeSet> {
    labels.iter().map(|&l| Alternative::new(l)).collect()
}

pub(crate) fn format_set(set: &AlternativeSet) -> String {
    set.iter().join(",")
}

/// Every label fits in a single digit, so orders can be written as `2314`.
fn compact_labels<'a>(mut alts: impl Iterator<Item = &'a Alternative>) -> bool {
    alts.all(|a| a.0 <= 9)
}

/// A strict ranking of alternatives, most preferred first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LinearOrder(Vec<Alternative>);

impl LinearOrder {
    pub fn new(ranking: Vec<Alternative>) -> Result<Self> {
        if ranking.is_empty() {
            return Err(Error::EmptyOrder);
        }
        let mut seen = BTreeSet::new();
        for a in &ranking {
            if !seen.insert(*a) {
                return Err(Error::RepeatedAlternative(a.0));
            }
        }
        Ok(LinearOrder(ranking))
    }

    pub fn from_labels(labels: &[u32]) -> Result<Self> {
        let ranking = labels
            .iter()
            .map(|&l| Alternative::new(l))
            .collect::<Result<Vec<_>>>()?;
        LinearOrder::new(ranking)
    }

    /// Parses the compact digit form, e.g. `"2314"`.
    pub fn parse_compact(text: &str) -> Result<Self> {
        let labels = text
            .chars()
            .map(|c| {
                c.to_digit(10).ok_or_else(|| Error::Parse {
                    line: 0,
                    message: format!("'{c}' is not a digit"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        LinearOrder::from_labels(&labels)
    }

    pub fn ranking(&self) -> &[Alternative] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Alternative {
        self.0[0]
    }

    pub fn last(&self) -> Alternative {
        self.0[self.0.len() - 1]
    }

    /// 1-based position of `a`, if ranked.
    pub fn position(&self, a: Alternative) -> Option<usize> {
        self.0.iter().position(|&b| b == a).map(|i| i + 1)
    }

    /// Whether `a` is ranked above `b`. Both must be ranked.
    pub fn prefers(&self, a: Alternative, b: Alternative) -> bool {
        match (self.position(a), self.position(b)) {
            (Some(pa), Some(pb)) => pa < pb,
            _ => false,
        }
    }

    pub fn alternatives(&self) -> AlternativeSet {
        self.0.iter().copied().collect()
    }

    /// The subsequence of this order made of members of `subset`.
    pub fn restrict(&self, subset: &AlternativeSet) -> Result<LinearOrder> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let own = self.alternatives();
        if !subset.is_subset(&own) {
            return Err(Error::NotASubset {
                subset: format_set(subset),
                available: format_set(&own),
            });
        }
        Ok(self.restrict_unchecked(subset))
    }

    fn restrict_unchecked(&self, subset: &AlternativeSet) -> LinearOrder {
        LinearOrder(
            self.0
                .iter()
                .copied()
                .filter(|a| subset.contains(a))
                .collect(),
        )
    }

    pub fn reversed(&self) -> LinearOrder {
        LinearOrder(self.0.iter().rev().copied().collect())
    }

    /// This order with `a` appended at the bottom.
    pub fn append(&self, a: Alternative) -> Result<LinearOrder> {
        let mut ranking = self.0.clone();
        ranking.push(a);
        LinearOrder::new(ranking)
    }

    /// This order with its bottom alternative removed; `None` for a
    /// single-alternative order.
    pub fn without_last(&self) -> Option<LinearOrder> {
        if self.0.len() < 2 {
            return None;
        }
        Some(LinearOrder(self.0[..self.0.len() - 1].to_vec()))
    }

    fn map(&self, relabeling: &Relabeling) -> LinearOrder {
        LinearOrder(self.0.iter().map(|a| relabeling.0[a]).collect())
    }

    pub(crate) fn is_compact(&self) -> bool {
        compact_labels(self.0.iter())
    }
}

impl fmt::Display for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_compact() {
            for a in &self.0 {
                write!(f, "{}", a.0)?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.0.iter().join(" "))
        }
    }
}

/// All linear orders on `alternatives`, in lexicographic order of their
/// label sequences.
pub fn all_orders(alternatives: &AlternativeSet) -> Result<Vec<LinearOrder>> {
    if alternatives.is_empty() {
        return Err(Error::EmptySubset);
    }
    if alternatives.len() > MAX_ALTERNATIVES {
        return Err(Error::TooLarge {
            what: "number of alternatives",
            limit: MAX_ALTERNATIVES,
            got: alternatives.len(),
        });
    }
    let k = alternatives.len();
    Ok(alternatives
        .iter()
        .copied()
        .permutations(k)
        .map(LinearOrder)
        .collect())
}

/// A bijection between alternative sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relabeling(BTreeMap<Alternative, Alternative>);

impl Relabeling {
    pub fn new(map: BTreeMap<Alternative, Alternative>) -> Result<Self> {
        let image: AlternativeSet = map.values().copied().collect();
        if image.len() != map.len() {
            return Err(Error::NotABijection(
                "two alternatives share an image".to_string(),
            ));
        }
        Ok(Relabeling(map))
    }

    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(from, to) in pairs {
            let from = Alternative::new(from)?;
            if map.insert(from, Alternative::new(to)?).is_some() {
                return Err(Error::NotABijection(format!(
                    "alternative {from} mapped twice"
                )));
            }
        }
        Relabeling::new(map)
    }

    /// Maps the i-th smallest member of `base` to `labels[i]`, which is how
    /// `D(a1,...,ak)` is read.
    pub fn positional(base: &AlternativeSet, labels: &[u32]) -> Result<Self> {
        if base.len() != labels.len() {
            return Err(Error::NotABijection(format!(
                "{} labels given for {} alternatives",
                labels.len(),
                base.len()
            )));
        }
        let pairs: Vec<(u32, u32)> = base
            .iter()
            .map(|a| a.0)
            .zip(labels.iter().copied())
            .collect();
        Relabeling::from_pairs(&pairs)
    }

    pub fn apply(&self, a: Alternative) -> Option<Alternative> {
        self.0.get(&a).copied()
    }

    pub fn domain(&self) -> AlternativeSet {
        self.0.keys().copied().collect()
    }
}

/// A 3-element set of alternatives, stored sorted.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Triple([Alternative; 3]);

impl Triple {
    pub fn new(a: Alternative, b: Alternative, c: Alternative) -> Result<Self> {
        let mut members = [a, b, c];
        members.sort();
        if members[0] == members[1] || members[1] == members[2] {
            return Err(Error::InvalidCondition(format!(
                "triple {{{a},{b},{c}}} has repeated members"
            )));
        }
        Ok(Triple(members))
    }

    pub fn from_labels(a: u32, b: u32, c: u32) -> Result<Self> {
        Triple::new(
            Alternative::new(a)?,
            Alternative::new(b)?,
            Alternative::new(c)?,
        )
    }

    pub fn members(&self) -> [Alternative; 3] {
        self.0
    }

    pub fn contains(&self, a: Alternative) -> bool {
        self.0.contains(&a)
    }

    pub fn as_set(&self) -> AlternativeSet {
        self.0.iter().copied().collect()
    }

    /// All triples of `alternatives` in lexicographic order.
    pub fn all_in(alternatives: &AlternativeSet) -> impl Iterator<Item = Triple> + '_ {
        alternatives
            .iter()
            .copied()
            .tuple_combinations()
            .map(|(a, b, c)| Triple([a, b, c]))
    }

    /// The two cyclic triples of orders on this triple: rotations of `abc`
    /// and rotations of `acb`.
    fn cycles(&self) -> [[[Alternative; 3]; 3]; 2] {
        let [a, b, c] = self.0;
        [
            [[a, b, c], [b, c, a], [c, a, b]],
            [[a, c, b], [c, b, a], [b, a, c]],
        ]
    }

    /// Restriction of `order` to this triple. The order must rank all three.
    fn pattern(&self, order: &LinearOrder) -> [Alternative; 3] {
        let mut out = [self.0[0]; 3];
        let mut i = 0;
        for a in order.ranking() {
            if self.0.contains(a) {
                out[i] = *a;
                i += 1;
            }
        }
        debug_assert_eq!(i, 3);
        out
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "{{{a},{b},{c}}}")
    }
}

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Position {
    First = 1,
    Middle = 2,
    Last = 3,
}

impl Position {
    pub const ALL: [Position; 3] = [Position::First, Position::Middle, Position::Last];

    pub fn from_index(index: usize) -> Result<Self> {
        match index {
            1 => Ok(Position::First),
            2 => Ok(Position::Middle),
            3 => Ok(Position::Last),
            _ => Err(Error::InvalidCondition(format!(
                "position {index} is outside 1..=3"
            ))),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Position `4 - p`, what a condition becomes when every order is reversed.
    pub fn mirrored(self) -> Position {
        match self {
            Position::First => Position::Last,
            Position::Middle => Position::Middle,
            Position::Last => Position::First,
        }
    }
}

/// `x N_B p`: in the restriction to triple `B`, alternative `x` never takes
/// position `p`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NeverCondition {
    triple: Triple,
    x: Alternative,
    position: Position,
}

impl NeverCondition {
    pub fn new(x: Alternative, triple: Triple, position: Position) -> Result<Self> {
        if !triple.contains(x) {
            return Err(Error::InvalidCondition(format!(
                "{x} is not a member of {triple}"
            )));
        }
        Ok(NeverCondition {
            triple,
            x,
            position,
        })
    }

    /// `from_labels(2, [1,2,3], 3)` is `2N_{123}3`.
    pub fn from_labels(x: u32, triple: [u32; 3], position: usize) -> Result<Self> {
        NeverCondition::new(
            Alternative::new(x)?,
            Triple::from_labels(triple[0], triple[1], triple[2])?,
            Position::from_index(position)?,
        )
    }

    pub fn x(&self) -> Alternative {
        self.x
    }

    pub fn triple(&self) -> Triple {
        self.triple
    }

    pub fn position(&self) -> Position {
        self.position
    }

    /// All nine conditions on a triple.
    pub fn all_on(triple: Triple) -> impl Iterator<Item = NeverCondition> {
        triple.members().into_iter().flat_map(move |x| {
            Position::ALL
                .into_iter()
                .map(move |position| NeverCondition {
                    triple,
                    x,
                    position,
                })
        })
    }

    /// Whether `order` (which must rank the whole triple) respects the condition.
    pub fn allows(&self, order: &LinearOrder) -> bool {
        self.triple.pattern(order)[self.position.index() - 1] != self.x
    }

    pub fn mirrored(&self) -> NeverCondition {
        NeverCondition {
            position: self.position.mirrored(),
            ..*self
        }
    }

    pub fn relabel(&self, relabeling: &Relabeling) -> Result<NeverCondition> {
        let map = |a: Alternative| {
            relabeling
                .apply(a)
                .ok_or_else(|| Error::NotABijection(format!("{a} is not mapped")))
        };
        let [a, b, c] = self.triple.members();
        NeverCondition::new(
            map(self.x)?,
            Triple::new(map(a)?, map(b)?, map(c)?)?,
            self.position,
        )
    }
}

impl fmt::Display for NeverCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}N{}{}", self.x, self.triple, self.position.index())
    }
}

/// A non-empty set of linear orders, all on the same alternative set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Domain {
    alternatives: AlternativeSet,
    orders: BTreeSet<LinearOrder>,
}

impl Domain {
    /// Builds a domain, inferring the alternative set from the orders.
    pub fn new(orders: impl IntoIterator<Item = LinearOrder>) -> Result<Self> {
        let orders: BTreeSet<LinearOrder> = orders.into_iter().collect();
        let first = orders.iter().next().ok_or(Error::EmptyDomain)?;
        let alternatives = first.alternatives();
        Domain::with_alternatives(alternatives, orders)
    }

    pub fn with_alternatives(
        alternatives: AlternativeSet,
        orders: impl IntoIterator<Item = LinearOrder>,
    ) -> Result<Self> {
        let orders: BTreeSet<LinearOrder> = orders.into_iter().collect();
        if orders.is_empty() {
            return Err(Error::EmptyDomain);
        }
        for order in &orders {
            if order.len() != alternatives.len()
                || !order.ranking().iter().all(|a| alternatives.contains(a))
            {
                return Err(Error::MismatchedAlternatives {
                    order: order.to_string(),
                    alternatives: format_set(&alternatives),
                });
            }
        }
        Ok(Domain {
            alternatives,
            orders,
        })
    }

    /// Convenience constructor from compact order strings such as `"2314"`.
    pub fn from_compact(orders: &[&str]) -> Result<Self> {
        Domain::new(
            orders
                .iter()
                .map(|s| LinearOrder::parse_compact(s))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// The domain of every linear order on `alternatives`.
    pub fn full(alternatives: &AlternativeSet) -> Result<Self> {
        Domain::with_alternatives(alternatives.clone(), all_orders(alternatives)?)
    }

    pub fn alternatives(&self) -> &AlternativeSet {
        &self.alternatives
    }

    pub fn orders(&self) -> &BTreeSet<LinearOrder> {
        &self.orders
    }

    pub fn iter(&self) -> impl Iterator<Item = &LinearOrder> {
        self.orders.iter()
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    /// Always false; kept for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn contains(&self, order: &LinearOrder) -> bool {
        self.orders.contains(order)
    }

    /// Every order restricted to `subset`, duplicates merged.
    pub fn restrict(&self, subset: &AlternativeSet) -> Result<Domain> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        if !subset.is_subset(&self.alternatives) {
            return Err(Error::NotASubset {
                subset: format_set(subset),
                available: format_set(&self.alternatives),
            });
        }
        Ok(Domain {
            alternatives: subset.clone(),
            orders: self
                .orders
                .iter()
                .map(|o| o.restrict_unchecked(subset))
                .collect(),
        })
    }

    pub fn relabel(&self, relabeling: &Relabeling) -> Result<Domain> {
        if relabeling.domain() != self.alternatives {
            return Err(Error::NotABijection(format!(
                "mapping is defined on {{{}}}, domain lives on {{{}}}",
                format_set(&relabeling.domain()),
                format_set(&self.alternatives)
            )));
        }
        Ok(Domain {
            alternatives: self.alternatives.iter().map(|a| relabeling.0[a]).collect(),
            orders: self.orders.iter().map(|o| o.map(relabeling)).collect(),
        })
    }

    /// `D(a1,...,ak)`: the i-th smallest alternative becomes `labels[i]`.
    pub fn relabel_positional(&self, labels: &[u32]) -> Result<Domain> {
        self.relabel(&Relabeling::positional(&self.alternatives, labels)?)
    }

    /// Every order reversed.
    pub fn flip(&self) -> Domain {
        Domain {
            alternatives: self.alternatives.clone(),
            orders: self.orders.iter().map(LinearOrder::reversed).collect(),
        }
    }

    /// This domain with `order` added.
    pub fn with_order(&self, order: LinearOrder) -> Result<Domain> {
        let mut orders = self.orders.clone();
        orders.insert(order);
        Domain::with_alternatives(self.alternatives.clone(), orders)
    }

    pub fn union(&self, other: &Domain) -> Result<Domain> {
        Domain::with_alternatives(
            self.alternatives.clone(),
            self.orders.iter().chain(other.orders.iter()).cloned(),
        )
    }

    pub fn is_subset(&self, other: &Domain) -> bool {
        self.orders.is_subset(&other.orders)
    }

    /// No restriction to three alternatives contains a full cyclic triple
    /// of orders.
    pub fn is_condorcet(&self) -> bool {
        Triple::all_in(&self.alternatives).all(|t| self.is_condorcet_on(t))
    }

    fn is_condorcet_on(&self, triple: Triple) -> bool {
        let patterns: BTreeSet<[Alternative; 3]> =
            self.orders.iter().map(|o| triple.pattern(o)).collect();
        !triple
            .cycles()
            .iter()
            .any(|cycle| cycle.iter().all(|p| patterns.contains(p)))
    }

    pub fn satisfies(&self, condition: &NeverCondition) -> bool {
        self.orders.iter().all(|o| condition.allows(o))
    }

    /// Every never-condition the domain satisfies, over all triples.
    pub fn never_conditions(&self) -> BTreeSet<NeverCondition> {
        Triple::all_in(&self.alternatives)
            .flat_map(NeverCondition::all_on)
            .filter(|c| self.satisfies(c))
            .collect()
    }

    /// The never-conditions the domain satisfies on one triple.
    pub fn never_conditions_on(&self, triple: Triple) -> BTreeSet<NeverCondition> {
        NeverCondition::all_on(triple)
            .filter(|c| self.satisfies(c))
            .collect()
    }

    /// `D(N)`: every linear order on `alternatives` satisfying all of
    /// `conditions`.
    pub fn from_conditions<'a>(
        alternatives: &AlternativeSet,
        conditions: impl IntoIterator<Item = &'a NeverCondition>,
    ) -> Result<Domain> {
        let conditions: Vec<&NeverCondition> = conditions.into_iter().collect();
        for c in &conditions {
            if !c.triple.as_set().is_subset(alternatives) {
                return Err(Error::InvalidCondition(format!(
                    "{c} mentions alternatives outside {{{}}}",
                    format_set(alternatives)
                )));
            }
        }
        let orders = all_orders(alternatives)?
            .into_iter()
            .filter(|o| conditions.iter().all(|c| c.allows(o)));
        Domain::with_alternatives(alternatives.clone(), orders)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.orders.iter().join(","))
    }
}
