//! Structural predicates on domains: maximality, ampleness, copiousness,
//! maximal width, single-peakedness and single-crossingness.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::domain::{
    all_orders, Alternative, AlternativeSet, Domain, LinearOrder, Position, Triple,
    MAX_ALTERNATIVES,
};
use crate::error::{Error, Result};

/// Largest domain `is_single_crossing` will search arrangements for.
pub const MAX_SINGLE_CROSSING_ORDERS: usize = 10;

fn require_alternatives(domain: &Domain, operation: &'static str, needed: usize) -> Result<()> {
    let got = domain.alternatives().len();
    if got < needed {
        return Err(Error::TooFewAlternatives {
            operation,
            needed,
            got,
        });
    }
    Ok(())
}

/// Orders outside the domain that can be added without breaking the
/// Condorcet property.
pub fn addable_orders(domain: &Domain) -> Result<BTreeSet<LinearOrder>> {
    if domain.alternatives().len() > MAX_ALTERNATIVES {
        return Err(Error::TooLarge {
            what: "number of alternatives",
            limit: MAX_ALTERNATIVES,
            got: domain.alternatives().len(),
        });
    }
    if !domain.is_condorcet() {
        return Err(Error::NotCondorcet);
    }
    let mut addable = BTreeSet::new();
    for order in all_orders(domain.alternatives())? {
        if domain.contains(&order) {
            continue;
        }
        if domain.with_order(order.clone())?.is_condorcet() {
            addable.insert(order);
        }
    }
    Ok(addable)
}

/// Condorcet, and no order can be added while staying Condorcet.
pub fn is_maximal(domain: &Domain) -> Result<bool> {
    if !domain.is_condorcet() {
        return Ok(false);
    }
    Ok(addable_orders(domain)?.is_empty())
}

/// Every pair of alternatives occurs in both relative orders.
pub fn is_ample(domain: &Domain) -> Result<bool> {
    require_alternatives(domain, "ampleness", 2)?;
    Ok(domain
        .alternatives()
        .iter()
        .tuple_combinations()
        .all(|(&a, &b)| {
            domain.iter().any(|o| o.prefers(a, b)) && domain.iter().any(|o| o.prefers(b, a))
        }))
}

/// Every restriction to three alternatives has four orders.
pub fn is_copious(domain: &Domain) -> Result<bool> {
    require_alternatives(domain, "copiousness", 3)?;
    for triple in Triple::all_in(domain.alternatives()) {
        if domain.restrict(&triple.as_set())?.len() != 4 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Some order and its complete reversal are both in the domain.
pub fn has_maximal_width(domain: &Domain) -> bool {
    domain.iter().any(|o| domain.contains(&o.reversed()))
}

/// A left-to-right arrangement of alternatives (a spectrum).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Axis(Vec<Alternative>);

impl Axis {
    pub fn new(spectrum: Vec<Alternative>) -> Result<Self> {
        if spectrum.is_empty() {
            return Err(Error::EmptyOrder);
        }
        let distinct: AlternativeSet = spectrum.iter().copied().collect();
        if distinct.len() != spectrum.len() {
            return Err(Error::AxisMismatch {
                axis: spectrum.iter().join(" "),
            });
        }
        Ok(Axis(spectrum))
    }

    pub fn from_labels(labels: &[u32]) -> Result<Self> {
        Axis::new(
            labels
                .iter()
                .map(|&l| Alternative::new(l))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn spectrum(&self) -> &[Alternative] {
        &self.0
    }

    pub fn reversed(&self) -> Axis {
        Axis(self.0.iter().rev().copied().collect())
    }

    pub fn alternatives(&self) -> AlternativeSet {
        self.0.iter().copied().collect()
    }

    fn index_of(&self, a: Alternative) -> Option<usize> {
        self.0.iter().position(|&b| b == a)
    }

    /// Every top-initial segment of `order` is an interval of the axis.
    fn admits(&self, order: &LinearOrder) -> bool {
        let mut low = usize::MAX;
        let mut high = 0;
        for (count, &a) in order.ranking().iter().enumerate() {
            let Some(i) = self.index_of(a) else {
                return false;
            };
            low = low.min(i);
            high = high.max(i);
            if high - low != count {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join("<"))
    }
}

/// The maximal single-peaked domain on `axis`: orders are built from the
/// bottom up, each step taking one of the two remaining ends of the axis.
pub fn generate_single_peaked(axis: &Axis) -> Domain {
    fn extend(
        remaining: &[Alternative],
        bottom_up: &mut Vec<Alternative>,
        out: &mut Vec<LinearOrder>,
    ) {
        match remaining {
            [] => unreachable!(),
            [only] => {
                bottom_up.push(*only);
                let ranking: Vec<_> = bottom_up.iter().rev().copied().collect();
                out.push(LinearOrder::new(ranking).expect("axis members are distinct"));
                bottom_up.pop();
            }
            [left, rest @ ..] => {
                bottom_up.push(*left);
                extend(rest, bottom_up, out);
                bottom_up.pop();
                let (right, rest) = remaining.split_last().expect("non-empty");
                bottom_up.push(*right);
                extend(rest, bottom_up, out);
                bottom_up.pop();
            }
        }
    }
    let mut orders = Vec::with_capacity(1 << (axis.0.len() - 1));
    extend(&axis.0, &mut Vec::new(), &mut orders);
    Domain::new(orders).expect("at least one order")
}

pub fn is_single_peaked_wrt(domain: &Domain, axis: &Axis) -> Result<bool> {
    if &axis.alternatives() != domain.alternatives() {
        return Err(Error::AxisMismatch {
            axis: axis.to_string(),
        });
    }
    Ok(domain.iter().all(|o| axis.admits(o)))
}

/// Arrow's triple-wise single-peakedness: every restriction to three
/// alternatives satisfies a never-bottom condition.
pub fn is_arrow_single_peaked(domain: &Domain) -> Result<bool> {
    require_alternatives(domain, "Arrow single-peakedness", 3)?;
    Ok(Triple::all_in(domain.alternatives()).all(|t| {
        domain
            .never_conditions_on(t)
            .iter()
            .any(|c| c.position() == Position::Last)
    }))
}

/// The orders can be lined up so that every pairwise comparison changes at
/// most once along the line.
pub fn is_single_crossing(domain: &Domain) -> Result<bool> {
    if domain.len() > MAX_SINGLE_CROSSING_ORDERS {
        return Err(Error::TooLarge {
            what: "single-crossing search (orders)",
            limit: MAX_SINGLE_CROSSING_ORDERS,
            got: domain.len(),
        });
    }
    let pairs: Vec<(Alternative, Alternative)> = domain
        .alternatives()
        .iter()
        .copied()
        .tuple_combinations()
        .collect();
    // comparisons[o][p]: does order o rank the first member of pair p higher
    let comparisons: Vec<Vec<bool>> = domain
        .iter()
        .map(|o| pairs.iter().map(|&(a, b)| o.prefers(a, b)).collect())
        .collect();

    struct Search<'a> {
        comparisons: &'a [Vec<bool>],
        used: Vec<bool>,
        // per pair: has the comparison already changed along the line
        flipped: Vec<bool>,
    }

    impl Search<'_> {
        fn run(&mut self, last: Option<usize>, placed: usize) -> bool {
            if placed == self.comparisons.len() {
                return true;
            }
            for next in 0..self.comparisons.len() {
                if self.used[next] {
                    continue;
                }
                let saved = self.flipped.clone();
                let mut ok = true;
                if let Some(prev) = last {
                    for p in 0..self.flipped.len() {
                        if self.comparisons[prev][p] != self.comparisons[next][p] {
                            if self.flipped[p] {
                                ok = false;
                                break;
                            }
                            self.flipped[p] = true;
                        }
                    }
                }
                if ok {
                    self.used[next] = true;
                    if self.run(Some(next), placed + 1) {
                        return true;
                    }
                    self.used[next] = false;
                }
                self.flipped = saved;
            }
            false
        }
    }

    let mut search = Search {
        comparisons: &comparisons,
        used: vec![false; comparisons.len()],
        flipped: vec![false; pairs.len()],
    };
    Ok(search.run(None, 0))
}

/// `{1,...,n}` as an axis, handy for tests and the CLI.
pub fn natural_axis(range: std::ops::RangeInclusive<u32>) -> Result<Axis> {
    Axis::from_labels(&range.collect::<Vec<_>>())
}
