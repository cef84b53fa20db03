//! The never-last composition of two domains, its inverse, right
//! obstructions, and a checker for the conditions under which the
//! composition of two (maximal, ample, copious) Condorcet domains is again
//! one.
//!
//! `D1` lives on `A \ {x}` and `D2` on `A \ {y}`. Their composition is
//! `{ u·x : u ∈ D1 } ∪ { v·y : v ∈ D2 }`: orders of `D1` get `x` appended
//! at the bottom, orders of `D2` get `y` appended. With `A = {1,...,n}`
//! the usual roles are `x = n` and `y = 1`.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::domain::{format_set, Alternative, AlternativeSet, Domain, LinearOrder};
use crate::error::{Error, Result};
use crate::properties::{is_ample, is_copious, is_maximal};

/// Which alternative each factor is missing.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct CompositionRoles {
    /// Absent from `D1`, appended below its orders.
    pub x: Alternative,
    /// Absent from `D2`, appended below its orders.
    pub y: Alternative,
}

impl fmt::Display for CompositionRoles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x={} y={}", self.x, self.y)
    }
}

/// Infers `(x, y)` and the union alternative set from the two factors.
pub fn infer_roles(d1: &Domain, d2: &Domain) -> Result<(CompositionRoles, AlternativeSet)> {
    let union: AlternativeSet = d1
        .alternatives()
        .union(d2.alternatives())
        .copied()
        .collect();
    let missing =
        |d: &Domain| -> Vec<Alternative> { union.difference(d.alternatives()).copied().collect() };
    match (missing(d1).as_slice(), missing(d2).as_slice()) {
        ([x], [y]) => Ok((CompositionRoles { x: *x, y: *y }, union)),
        _ => Err(Error::IncompatibleFactors(format!(
            "{{{}}} and {{{}}} must each miss exactly one alternative of their union",
            format_set(d1.alternatives()),
            format_set(d2.alternatives())
        ))),
    }
}

/// The never-last composition `d1 ⋄ d2`.
pub fn nl_compose(d1: &Domain, d2: &Domain) -> Result<Domain> {
    let (roles, union) = infer_roles(d1, d2)?;
    let left = d1.iter().map(|u| u.append(roles.x));
    let right = d2.iter().map(|v| v.append(roles.y));
    Domain::with_alternatives(union, left.chain(right).collect::<Result<Vec<_>>>()?)
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Decomposition {
    pub roles: CompositionRoles,
    pub left: Domain,
    pub right: Domain,
}

/// Every way of writing `domain` as a never-last composition, ordered by
/// `(x, y)`.
pub fn nl_decompose(domain: &Domain) -> Result<Vec<Decomposition>> {
    let n = domain.alternatives().len();
    if n < 2 {
        return Err(Error::TooFewAlternatives {
            operation: "decomposition",
            needed: 2,
            got: n,
        });
    }
    let lasts: AlternativeSet = domain.iter().map(LinearOrder::last).collect();
    if lasts.len() != 2 {
        return Ok(Vec::new());
    }
    let (a, b) = lasts.iter().copied().collect_tuple().expect("two bottoms");
    let block = |bottom: Alternative| -> Result<Domain> {
        Domain::new(
            domain
                .iter()
                .filter(|o| o.last() == bottom)
                .map(|o| o.without_last().expect("at least two alternatives")),
        )
    };
    let mut out = Vec::with_capacity(2);
    for (x, y) in [(a, b), (b, a)] {
        out.push(Decomposition {
            roles: CompositionRoles { x, y },
            left: block(x)?,
            right: block(y)?,
        });
    }
    Ok(out)
}

fn check_obstruction_args(domain: &Domain, alts: &[Alternative]) -> Result<()> {
    let distinct = alts.iter().all_unique();
    if !distinct || !alts.iter().all(|a| domain.alternatives().contains(a)) {
        return Err(Error::NotDistinct("the obstruction test"));
    }
    if !domain.is_condorcet() {
        return Err(Error::NotCondorcet);
    }
    Ok(())
}

/// `a` is a right obstruction to the swap `bc -> cb`: adding `c≻b≻a` to the
/// restriction of `domain` to `{a,b,c}` breaks the Condorcet property.
pub fn is_right_obstruction(
    domain: &Domain,
    a: Alternative,
    b: Alternative,
    c: Alternative,
) -> Result<bool> {
    check_obstruction_args(domain, &[a, b, c])?;
    let triple: AlternativeSet = [a, b, c].into_iter().collect();
    let cba = LinearOrder::new(vec![c, b, a])?;
    Ok(!domain.restrict(&triple)?.with_order(cba)?.is_condorcet())
}

/// `a` obstructs neither swap of any pair in `pairs`: both `ija` and `jia`
/// can be added to the restriction to `{i,j,a}` together.
pub fn never_obstructs(
    domain: &Domain,
    a: Alternative,
    pairs: &[(Alternative, Alternative)],
) -> Result<bool> {
    for &(i, j) in pairs {
        check_obstruction_args(domain, &[a, i, j])?;
        let triple: AlternativeSet = [a, i, j].into_iter().collect();
        let extended = domain
            .restrict(&triple)?
            .with_order(LinearOrder::new(vec![i, j, a])?)?
            .with_order(LinearOrder::new(vec![j, i, a])?)?;
        if !extended.is_condorcet() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both factors restricted to `A \ {x,y}` and merged.
pub fn overlap_domain(d1: &Domain, d2: &Domain) -> Result<Domain> {
    let (roles, union) = infer_roles(d1, d2)?;
    let common = common_alternatives(&roles, &union);
    if common.is_empty() {
        return Err(Error::IncompatibleFactors(
            "the factors share no alternatives".to_string(),
        ));
    }
    d1.restrict(&common)?.union(&d2.restrict(&common)?)
}

fn common_alternatives(roles: &CompositionRoles, union: &AlternativeSet) -> AlternativeSet {
    union
        .iter()
        .copied()
        .filter(|&a| a != roles.x && a != roles.y)
        .collect()
}

/// Ampleness and copiousness hold vacuously when there are too few
/// alternatives to form a pair or a triple.
fn vacuous(result: Result<bool>) -> Result<bool> {
    match result {
        Err(Error::TooFewAlternatives { .. }) => Ok(true),
        other => other,
    }
}

/// The hypotheses of the composition theorem, evaluated for one factor pair.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct HypothesisReport {
    pub roles: CompositionRoles,
    pub e_is_condorcet: bool,
    pub x_never_obstructs_in_d2: bool,
    pub y_never_obstructs_in_d1: bool,
    pub d1_maximal: bool,
    pub d2_maximal: bool,
    pub d1_ample: bool,
    pub d2_ample: bool,
    pub d1_copious: bool,
    pub d2_copious: bool,
}

impl HypothesisReport {
    /// The three hypotheses that make the composition Condorcet.
    pub fn condorcet_hypotheses(&self) -> bool {
        self.e_is_condorcet && self.x_never_obstructs_in_d2 && self.y_never_obstructs_in_d1
    }

    pub fn fields(&self) -> [(&'static str, bool); 9] {
        [
            ("e_is_condorcet", self.e_is_condorcet),
            ("x_never_obstructs_in_d2", self.x_never_obstructs_in_d2),
            ("y_never_obstructs_in_d1", self.y_never_obstructs_in_d1),
            ("d1_maximal", self.d1_maximal),
            ("d2_maximal", self.d2_maximal),
            ("d1_ample", self.d1_ample),
            ("d2_ample", self.d2_ample),
            ("d1_copious", self.d1_copious),
            ("d2_copious", self.d2_copious),
        ]
    }
}

pub fn theorem_hypotheses(d1: &Domain, d2: &Domain) -> Result<HypothesisReport> {
    let (roles, union) = infer_roles(d1, d2)?;
    let common = common_alternatives(&roles, &union);
    let pairs: Vec<(Alternative, Alternative)> =
        common.iter().copied().tuple_combinations().collect();
    let e_is_condorcet = if common.is_empty() {
        true
    } else {
        overlap_domain(d1, d2)?.is_condorcet()
    };
    Ok(HypothesisReport {
        roles,
        e_is_condorcet,
        x_never_obstructs_in_d2: never_obstructs(d2, roles.x, &pairs)?,
        y_never_obstructs_in_d1: never_obstructs(d1, roles.y, &pairs)?,
        d1_maximal: is_maximal(d1)?,
        d2_maximal: is_maximal(d2)?,
        d1_ample: vacuous(is_ample(d1))?,
        d2_ample: vacuous(is_ample(d2))?,
        d1_copious: vacuous(is_copious(d1))?,
        d2_copious: vacuous(is_copious(d2))?,
    })
}

/// Everything computed for one factor pair of a composition survey.
#[derive(Clone, Debug)]
pub struct PairOutcome {
    pub left_index: usize,
    pub right_index: usize,
    pub composed: Domain,
    pub report: HypothesisReport,
    pub composed_condorcet: bool,
    pub composed_maximal: bool,
    pub composed_ample: bool,
    pub composed_copious: bool,
}

/// Composes every pair from the two pools and evaluates hypotheses and
/// conclusions. Results follow input order.
pub fn survey_compositions(
    left_pool: &[Domain],
    right_pool: &[Domain],
) -> Result<Vec<PairOutcome>> {
    let mut out = Vec::with_capacity(left_pool.len() * right_pool.len());
    for (i, d1) in left_pool.iter().enumerate() {
        for (j, d2) in right_pool.iter().enumerate() {
            if !d1.is_condorcet() || !d2.is_condorcet() {
                return Err(Error::NotCondorcet);
            }
            let report = theorem_hypotheses(d1, d2)?;
            let composed = nl_compose(d1, d2)?;
            let composed_condorcet = composed.is_condorcet();
            out.push(PairOutcome {
                left_index: i,
                right_index: j,
                report,
                composed_condorcet,
                composed_maximal: composed_condorcet && is_maximal(&composed)?,
                composed_ample: vacuous(is_ample(&composed))?,
                composed_copious: vacuous(is_copious(&composed))?,
                composed,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ViolatedConclusion {
    NotCondorcet,
    NotMaximal,
    NotAmple,
    NotCopious,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Counterexample {
    pub left_index: usize,
    pub right_index: usize,
    pub composed: Domain,
    pub violated: Vec<ViolatedConclusion>,
}

/// Checks every conclusion of the composition theorem on every pair whose
/// hypotheses hold; returns the pairs where a conclusion fails.
pub fn verify_composition_theorem(
    left_pool: &[Domain],
    right_pool: &[Domain],
) -> Result<Vec<Counterexample>> {
    let mut counterexamples = Vec::new();
    for outcome in survey_compositions(left_pool, right_pool)? {
        let r = &outcome.report;
        if !r.condorcet_hypotheses() {
            continue;
        }
        let mut violated = Vec::new();
        if !outcome.composed_condorcet {
            violated.push(ViolatedConclusion::NotCondorcet);
        }
        if r.d1_maximal && r.d2_maximal && r.d1_ample && r.d2_ample {
            if !outcome.composed_maximal {
                violated.push(ViolatedConclusion::NotMaximal);
            }
            if !outcome.composed_ample {
                violated.push(ViolatedConclusion::NotAmple);
            }
        }
        if r.d1_copious && r.d2_copious && !outcome.composed_copious {
            violated.push(ViolatedConclusion::NotCopious);
        }
        if !violated.is_empty() {
            counterexamples.push(Counterexample {
                left_index: outcome.left_index,
                right_index: outcome.right_index,
                composed: outcome.composed,
                violated,
            });
        }
    }
    Ok(counterexamples)
}
