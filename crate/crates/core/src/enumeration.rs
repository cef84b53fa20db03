//! Exhaustive enumeration of maximal Condorcet domains on a few
//! alternatives, canonical forms up to relabeling (and flip), and the
//! census of classes obtainable by never-last composition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::composition::nl_decompose;
use crate::domain::{
    all_orders, alternative_set, AlternativeSet, Domain, LinearOrder, NeverCondition, Relabeling,
    Triple, MAX_ALTERNATIVES,
};
use crate::error::{Error, Result};
use crate::properties::{
    has_maximal_width, is_ample, is_arrow_single_peaked, is_copious, is_maximal,
};

/// Largest `n` enumerated without an explicit override.
pub const MAX_ENUMERATION_N: usize = 4;
/// Largest `n` the enumerators can represent at all.
pub const MAX_ENUMERATION_N_OVERRIDE: usize = 5;

/// All `|A|!` orders on `alternatives`, lexicographically.
pub fn all_linear_orders(alternatives: &AlternativeSet) -> Result<Vec<LinearOrder>> {
    all_orders(alternatives)
}

fn natural_alternatives(n: usize) -> Result<AlternativeSet> {
    alternative_set(&(1..=n as u32).collect::<Vec<_>>())
}

fn check_n(n: usize, allow_large: bool) -> Result<()> {
    let limit = if allow_large {
        MAX_ENUMERATION_N_OVERRIDE
    } else {
        MAX_ENUMERATION_N
    };
    if n > limit {
        return Err(Error::TooLarge {
            what: "enumeration size n",
            limit,
            got: n,
        });
    }
    if n < 2 {
        return Err(Error::TooFewAlternatives {
            operation: "enumeration",
            needed: 2,
            got: n,
        });
    }
    Ok(())
}

/// Sorted order strings joined by commas.
pub fn encoding(domain: &Domain) -> String {
    domain.iter().join(",")
}

fn sorted_by_encoding(domains: impl IntoIterator<Item = Domain>) -> Vec<Domain> {
    let unique: BTreeSet<Domain> = domains.into_iter().collect();
    let mut out: Vec<(String, Domain)> = unique.into_iter().map(|d| (encoding(&d), d)).collect();
    out.sort();
    out.into_iter().map(|(_, d)| d).collect()
}

/// All labeled maximal Condorcet domains on `{1,...,n}`, `2 <= n <= 4`.
///
/// Every maximal Condorcet domain satisfies some never-condition on each
/// triple, and by maximality equals `D(N)` for any such choice `N`; so it is
/// enough to try every choice of one condition per triple.
pub fn enumerate_maximal(n: usize) -> Result<Vec<Domain>> {
    enumerate_maximal_with(n, false)
}

/// As [`enumerate_maximal`]; `allow_large` admits `n = 5` with no promise on
/// running time.
pub fn enumerate_maximal_with(n: usize, allow_large: bool) -> Result<Vec<Domain>> {
    check_n(n, allow_large)?;
    let alternatives = natural_alternatives(n)?;
    let orders = all_orders(&alternatives)?;
    let choices: Vec<Vec<NeverCondition>> = Triple::all_in(&alternatives)
        .map(|t| NeverCondition::all_on(t).collect())
        .collect();

    let mut found = BTreeSet::new();
    let mut selection = vec![0usize; choices.len()];
    loop {
        let kept: Vec<LinearOrder> = orders
            .iter()
            .filter(|o| {
                selection
                    .iter()
                    .zip(&choices)
                    .all(|(&k, conditions)| conditions[k].allows(o))
            })
            .cloned()
            .collect();
        if !kept.is_empty() {
            let candidate = Domain::with_alternatives(alternatives.clone(), kept)?;
            if !found.contains(&candidate) && is_maximal(&candidate)? {
                found.insert(candidate);
            }
        }
        // mixed-radix increment, base 9 per triple
        let mut digit = 0;
        loop {
            if digit == selection.len() {
                return Ok(sorted_by_encoding(found));
            }
            selection[digit] += 1;
            if selection[digit] < 9 {
                break;
            }
            selection[digit] = 0;
            digit += 1;
        }
    }
}

/// Bitset view of the Condorcet test over the `n!` orders.
struct OrderTable {
    orders: Vec<LinearOrder>,
    // pattern_masks[t][p]: orders whose restriction to triple t is pattern p
    pattern_masks: Vec<[u128; 6]>,
}

impl OrderTable {
    fn new(alternatives: &AlternativeSet) -> Result<Self> {
        let orders = all_orders(alternatives)?;
        let pattern_masks = Triple::all_in(alternatives)
            .map(|t| {
                let triple = t.as_set();
                // patterns in lexicographic order: abc acb bac bca cab cba
                let patterns: Vec<LinearOrder> = all_orders(&triple).expect("three alternatives");
                let mut masks = [0u128; 6];
                for (i, o) in orders.iter().enumerate() {
                    let r = o
                        .restrict(&triple)
                        .expect("triple of the same alternatives");
                    let p = patterns.iter().position(|q| *q == r).expect("some pattern");
                    masks[p] |= 1 << i;
                }
                masks
            })
            .collect();
        Ok(OrderTable {
            orders,
            pattern_masks,
        })
    }

    fn is_condorcet(&self, set: u128) -> bool {
        const CYCLES: [[usize; 3]; 2] = [[0, 3, 4], [1, 2, 5]];
        self.pattern_masks.iter().all(|masks| {
            CYCLES
                .iter()
                .all(|cycle| cycle.iter().any(|&p| masks[p] & set == 0))
        })
    }
}

/// Independent enumerator: backtracking over subsets of the `n!` orders,
/// including each order if it keeps the set Condorcet and excluding it only
/// while it can still be blocked by orders not yet decided.
pub fn enumerate_maximal_backtracking(n: usize) -> Result<Vec<Domain>> {
    enumerate_maximal_backtracking_with(n, false)
}

pub fn enumerate_maximal_backtracking_with(n: usize, allow_large: bool) -> Result<Vec<Domain>> {
    check_n(n, allow_large)?;
    let alternatives = natural_alternatives(n)?;
    let table = OrderTable::new(&alternatives)?;
    let m = table.orders.len();

    fn search(
        table: &OrderTable,
        i: usize,
        chosen: u128,
        excluded: u128,
        m: usize,
        out: &mut Vec<u128>,
    ) {
        let undecided = if i >= m {
            0
        } else {
            (!0u128 >> (128 - m)) & !((1u128 << i) - 1)
        };
        let mut rest = excluded;
        while rest != 0 {
            let j = rest.trailing_zeros();
            rest &= rest - 1;
            if table.is_condorcet(chosen | undecided | (1 << j)) {
                return;
            }
        }
        if i == m {
            out.push(chosen);
            return;
        }
        let bit = 1u128 << i;
        if table.is_condorcet(chosen | bit) {
            search(table, i + 1, chosen | bit, excluded, m, out);
        }
        search(table, i + 1, chosen, excluded | bit, m, out);
    }

    let mut masks = Vec::new();
    search(&table, 0, 0, 0, m, &mut masks);
    let domains = masks
        .into_iter()
        .filter(|&mask| mask != 0)
        .map(|mask| {
            Domain::with_alternatives(
                alternatives.clone(),
                (0..m)
                    .filter(|&i| mask & (1 << i) != 0)
                    .map(|i| table.orders[i].clone()),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(sorted_by_encoding(domains))
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Equivalence {
    /// Relabeling of alternatives only.
    Isomorphism,
    /// Relabeling combined with optional reversal of every order.
    IsomorphismAndFlip,
}

/// Lexicographically least encoding over a group of transformations.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct CanonicalKey(String);

impl CanonicalKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn canonical_key(domain: &Domain, equivalence: Equivalence) -> Result<CanonicalKey> {
    let k = domain.alternatives().len();
    if k > MAX_ALTERNATIVES {
        return Err(Error::TooLarge {
            what: "number of alternatives",
            limit: MAX_ALTERNATIVES,
            got: k,
        });
    }
    let flips: &[bool] = match equivalence {
        Equivalence::Isomorphism => &[false],
        Equivalence::IsomorphismAndFlip => &[false, true],
    };
    let mut best: Option<String> = None;
    for images in (1..=k as u32).permutations(k) {
        let relabeled = domain.relabel(&Relabeling::positional(domain.alternatives(), &images)?)?;
        for &flip in flips {
            let candidate = if flip {
                encoding(&relabeled.flip())
            } else {
                encoding(&relabeled)
            };
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
    }
    Ok(CanonicalKey(best.expect("at least one relabeling")))
}

/// Canonical key up to relabeling and flip.
pub fn canonical_form(domain: &Domain) -> Result<CanonicalKey> {
    canonical_key(domain, Equivalence::IsomorphismAndFlip)
}

/// Canonical key up to relabeling only.
pub fn canonical_form_iso(domain: &Domain) -> Result<CanonicalKey> {
    canonical_key(domain, Equivalence::Isomorphism)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DomainClass {
    pub key: CanonicalKey,
    /// Distinct labeled members seen, sorted by encoding.
    pub representatives: Vec<Domain>,
    /// Some representative is a never-last composition.
    pub nl_decomposable: bool,
    /// The flip of some representative is a never-last composition.
    pub flip_nl_decomposable: bool,
}

impl DomainClass {
    pub fn decomposable(&self) -> bool {
        self.nl_decomposable || self.flip_nl_decomposable
    }

    pub fn representative(&self) -> &Domain {
        &self.representatives[0]
    }
}

fn is_nl_decomposable(domain: &Domain) -> bool {
    domain.alternatives().len() >= 2 && nl_decompose(domain).is_ok_and(|parts| !parts.is_empty())
}

/// Groups domains by canonical key, classes ordered by key.
pub fn classify(domains: &[Domain], equivalence: Equivalence) -> Result<Vec<DomainClass>> {
    let mut groups: BTreeMap<CanonicalKey, BTreeSet<Domain>> = BTreeMap::new();
    for domain in domains {
        groups
            .entry(canonical_key(domain, equivalence)?)
            .or_default()
            .insert(domain.clone());
    }
    Ok(groups
        .into_iter()
        .map(|(key, members)| {
            let representatives = sorted_by_encoding(members);
            DomainClass {
                nl_decomposable: representatives.iter().any(is_nl_decomposable),
                flip_nl_decomposable: representatives
                    .iter()
                    .any(|d| is_nl_decomposable(&d.flip())),
                key,
                representatives,
            }
        })
        .collect())
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Census {
    pub count: usize,
    pub keys: Vec<CanonicalKey>,
}

/// Classes in which some member, or the flip of some member, is a
/// never-last composition.
pub fn decomposability_census(classes: &[DomainClass]) -> Census {
    let keys: Vec<CanonicalKey> = classes
        .iter()
        .filter(|c| c.decomposable())
        .map(|c| c.key.clone())
        .collect();
    Census {
        count: keys.len(),
        keys,
    }
}

/// Per-class flags for listings, evaluated on the first representative.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ClassFlags {
    pub size: usize,
    pub decomposable: bool,
    pub nl_decomposable: bool,
    pub flip_nl_decomposable: bool,
    pub maximal: bool,
    pub ample: Option<bool>,
    pub copious: Option<bool>,
    pub maximal_width: bool,
    pub arrow_single_peaked: Option<bool>,
}

pub fn class_flags(class: &DomainClass) -> Result<ClassFlags> {
    let d = class.representative();
    Ok(ClassFlags {
        size: d.len(),
        decomposable: class.decomposable(),
        nl_decomposable: class.nl_decomposable,
        flip_nl_decomposable: class.flip_nl_decomposable,
        maximal: is_maximal(d)?,
        ample: is_ample(d).ok(),
        copious: is_copious(d).ok(),
        maximal_width: has_maximal_width(d),
        arrow_single_peaked: is_arrow_single_peaked(d).ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(orders: &[&str]) -> Domain {
        Domain::from_compact(orders).unwrap()
    }

    fn d31() -> Domain {
        d(&["123", "312", "132", "321"])
    }

    fn d32() -> Domain {
        d(&["123", "231", "132", "321"])
    }

    fn d33() -> Domain {
        d(&["123", "213", "231", "321"])
    }

    #[test]
    fn all_linear_orders_examples() {
        let two = all_linear_orders(&alternative_set(&[1, 2]).unwrap()).unwrap();
        assert_eq!(
            two.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
            ["12", "21"]
        );
        assert_eq!(
            all_linear_orders(&natural_alternatives(3).unwrap())
                .unwrap()
                .len(),
            6
        );
        let four = all_linear_orders(&natural_alternatives(4).unwrap()).unwrap();
        assert_eq!(four.len(), 24);
        assert!(four.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_maximal(2).unwrap(), vec![d(&["12", "21"])]);
        let three = enumerate_maximal(3).unwrap();
        assert_eq!(three.len(), 9);
        assert!(three.iter().all(|x| x.len() == 4));
        for base in [d31(), d32(), d33()] {
            assert!(three.contains(&base));
        }
        assert_eq!(enumerate_maximal_backtracking(3).unwrap(), three);
        assert_eq!(
            enumerate_maximal_backtracking(2).unwrap(),
            vec![d(&["12", "21"])]
        );
    }

    #[test]
    fn enumeration_guards() {
        assert!(matches!(enumerate_maximal(5), Err(Error::TooLarge { .. })));
        assert!(matches!(
            enumerate_maximal(1),
            Err(Error::TooFewAlternatives { .. })
        ));
        assert!(matches!(
            enumerate_maximal_with(6, true),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn canonical_form_examples() {
        assert_eq!(
            canonical_form(&d31()).unwrap(),
            canonical_form(&d33()).unwrap()
        );
        assert_ne!(
            canonical_form(&d31()).unwrap(),
            canonical_form(&d32()).unwrap()
        );
        assert_ne!(
            canonical_form_iso(&d31()).unwrap(),
            canonical_form_iso(&d33()).unwrap()
        );
        let moved = d33().relabel_positional(&[7, 3, 5]).unwrap();
        assert_eq!(
            canonical_form_iso(&moved).unwrap(),
            canonical_form_iso(&d33()).unwrap()
        );
    }

    #[test]
    fn classify_examples() {
        let three = enumerate_maximal(3).unwrap();
        assert_eq!(classify(&three, Equivalence::Isomorphism).unwrap().len(), 3);
        let flip_classes = classify(&three, Equivalence::IsomorphismAndFlip).unwrap();
        assert_eq!(flip_classes.len(), 2);
        assert!(flip_classes
            .iter()
            .all(|c| c.representatives.len() == 3 || c.representatives.len() == 6));

        let pair = [d33(), d33().relabel_positional(&[3, 1, 2]).unwrap()];
        assert_eq!(classify(&pair, Equivalence::Isomorphism).unwrap().len(), 1);
    }

    #[test]
    fn census_examples() {
        let iso = classify(&enumerate_maximal(3).unwrap(), Equivalence::Isomorphism).unwrap();
        let key33 = canonical_form_iso(&d33()).unwrap();
        let class33 = iso.iter().find(|c| c.key == key33).unwrap();
        assert!(class33.nl_decomposable);
        assert!(decomposability_census(&iso).keys.contains(&key33));

        let key32 = canonical_form_iso(&d32()).unwrap();
        assert!(!decomposability_census(&iso).keys.contains(&key32));

        let two = classify(&[d(&["12", "21"])], Equivalence::IsomorphismAndFlip).unwrap();
        assert_eq!(decomposability_census(&two).count, 1);
    }
}
