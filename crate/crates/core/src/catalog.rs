//! Transcribed domain matrices with their stated never-conditions,
//! composition identities and properties, and a verifier that recomputes
//! every stated claim.
//!
//! The transcribed orders are the fixtures of record. Stated conditions,
//! identities and flags are claims; the verifier recomputes them and any
//! disagreement must appear in [`known_discrepancies`].

use std::collections::BTreeSet;
use std::fmt;
use std::sync::LazyLock;

use itertools::Itertools;
use serde::Serialize;

use crate::composition::{infer_roles, nl_compose, nl_decompose};
use crate::domain::{Domain, NeverCondition};
use crate::error::{Error, Result};
use crate::graphs::{build_graph, GraphSummary};
use crate::properties::{
    has_maximal_width, is_ample, is_arrow_single_peaked, is_copious, is_maximal, is_single_crossing,
};

/// The three maximal Condorcet domains on `{1,2,3}`.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum BaseDomain {
    /// `{123, 312, 132, 321}`
    D31,
    /// `{123, 231, 132, 321}`
    D32,
    /// `{123, 213, 231, 321}`
    D33,
}

impl BaseDomain {
    pub const ALL: [BaseDomain; 3] = [BaseDomain::D31, BaseDomain::D32, BaseDomain::D33];

    pub fn domain(self) -> Domain {
        let orders: &[&str] = match self {
            BaseDomain::D31 => &["123", "312", "132", "321"],
            BaseDomain::D32 => &["123", "231", "132", "321"],
            BaseDomain::D33 => &["123", "213", "231", "321"],
        };
        Domain::from_compact(orders).expect("valid base domain")
    }

    pub fn name(self) -> &'static str {
        match self {
            BaseDomain::D31 => "D3,1",
            BaseDomain::D32 => "D3,2",
            BaseDomain::D33 => "D3,3",
        }
    }
}

/// A factor as written in a stated identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FactorSpec {
    /// `(i)`, the single order on one alternative.
    Trivial(u32),
    /// `D3,k(a,b,c)`.
    Base {
        base: BaseDomain,
        labels: [u32; 3],
    },
    /// An explicitly listed set of orders.
    Explicit(Domain),
    Compose(Box<FactorSpec>, Box<FactorSpec>),
}

impl FactorSpec {
    pub fn base(base: BaseDomain, labels: [u32; 3]) -> Self {
        FactorSpec::Base { base, labels }
    }

    pub fn explicit(orders: &[&str]) -> Self {
        FactorSpec::Explicit(Domain::from_compact(orders).expect("valid explicit factor"))
    }

    pub fn compose(left: FactorSpec, right: FactorSpec) -> Self {
        FactorSpec::Compose(Box::new(left), Box::new(right))
    }

    pub fn build(&self) -> Result<Domain> {
        match self {
            FactorSpec::Trivial(label) => Domain::from_compact(&[&label.to_string()]),
            FactorSpec::Base { base, labels } => base.domain().relabel_positional(labels),
            FactorSpec::Explicit(domain) => Ok(domain.clone()),
            FactorSpec::Compose(left, right) => nl_compose(&left.build()?, &right.build()?),
        }
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorSpec::Trivial(label) => write!(f, "({label})"),
            FactorSpec::Base { base, labels } => {
                write!(f, "{}({})", base.name(), labels.iter().join(","))
            }
            FactorSpec::Explicit(domain) => write!(f, "{domain}"),
            FactorSpec::Compose(left, right) => write!(f, "({left} <> {right})"),
        }
    }
}

/// Names a recomputed factor the way identities are written: `(i)` for a
/// single alternative, `D3,k(a,b,c)` with the least label tuple when one
/// fits, otherwise the explicit order set.
pub fn describe_factor(domain: &Domain) -> String {
    let alts: Vec<u32> = domain.alternatives().iter().map(|a| a.label()).collect();
    if alts.len() == 1 {
        return FactorSpec::Trivial(alts[0]).to_string();
    }
    if alts.len() == 3 {
        for base in BaseDomain::ALL {
            let found = alts.iter().copied().permutations(3).find(|labels| {
                base.domain().relabel_positional(labels).ok().as_ref() == Some(domain)
            });
            if let Some(labels) = found {
                return FactorSpec::base(base, [labels[0], labels[1], labels[2]]).to_string();
            }
        }
    }
    domain.to_string()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Identity {
    pub left: FactorSpec,
    pub right: FactorSpec,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <> {}", self.left, self.right)
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub enum StatedFlag {
    Maximal,
    Copious,
    Ample,
    ArrowSinglePeaked,
    SingleCrossing,
    NotMaximalWidth,
    /// The swap graph is a path.
    PathGraph,
}

impl StatedFlag {
    pub fn check_name(self) -> &'static str {
        match self {
            StatedFlag::Maximal => "maximal",
            StatedFlag::Copious => "copious",
            StatedFlag::Ample => "ample",
            StatedFlag::ArrowSinglePeaked => "arrow_sp",
            StatedFlag::SingleCrossing => "single_crossing",
            StatedFlag::NotMaximalWidth => "maximal_width",
            StatedFlag::PathGraph => "path_graph",
        }
    }

    /// Name of the claim itself, as opposed to the check it is verified by.
    pub fn name(self) -> &'static str {
        match self {
            StatedFlag::NotMaximalWidth => "not_maximal_width",
            other => other.check_name(),
        }
    }

    /// The value the flag claims for its check.
    fn stated_value(self) -> bool {
        !matches!(self, StatedFlag::NotMaximalWidth)
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub alias: Option<&'static str>,
    pub matrix: Domain,
    pub stated_conditions: Option<BTreeSet<NeverCondition>>,
    pub stated_identity: Option<Identity>,
    pub stated_flags: Vec<StatedFlag>,
}

fn conditions(list: &[(u32, [u32; 3], usize)]) -> BTreeSet<NeverCondition> {
    list.iter()
        .map(|&(x, t, p)| NeverCondition::from_labels(x, t, p).expect("valid condition"))
        .collect()
}

fn entry(
    id: &'static str,
    alias: Option<&'static str>,
    orders: &[&str],
    stated_conditions: Option<BTreeSet<NeverCondition>>,
    stated_identity: Option<(FactorSpec, FactorSpec)>,
    stated_flags: &[StatedFlag],
) -> CatalogEntry {
    CatalogEntry {
        id,
        alias,
        matrix: Domain::from_compact(orders).expect("valid matrix"),
        stated_conditions,
        stated_identity: stated_identity.map(|(left, right)| Identity { left, right }),
        stated_flags: stated_flags.to_vec(),
    }
}

static CATALOG: LazyLock<Vec<CatalogEntry>> = LazyLock::new(|| {
    use BaseDomain::*;
    use FactorSpec as F;
    use StatedFlag::*;
    vec![
        entry(
            "D3_1",
            None,
            &["123", "312", "132", "321"],
            None,
            None,
            &[Maximal],
        ),
        entry(
            "D3_2",
            None,
            &["123", "231", "132", "321"],
            None,
            None,
            &[Maximal],
        ),
        entry(
            "D3_3",
            None,
            &["123", "213", "231", "321"],
            None,
            Some((
                F::compose(F::Trivial(1), F::Trivial(2)),
                F::compose(F::Trivial(2), F::Trivial(3)),
            )),
            &[Maximal],
        ),
        entry(
            "D4_2",
            Some("snake"),
            &["1234", "2134", "2314", "2341", "2431", "4231", "4321"],
            None,
            Some((F::explicit(&["123", "213", "231"]), F::base(D31, [2, 3, 4]))),
            &[Maximal, SingleCrossing, PathGraph],
        ),
        entry(
            "D4_3",
            Some("broken-snake"),
            &["1324", "3124", "3214", "3241", "3421", "2431", "4231"],
            None,
            Some((F::explicit(&["132", "312", "321"]), F::base(D32, [3, 2, 4]))),
            &[Maximal],
        ),
        entry(
            "D4_4",
            Some("single-peaked"),
            &[
                "1234", "2134", "2314", "3214", "2341", "3241", "3421", "4321",
            ],
            Some(conditions(&[
                (2, [1, 2, 3], 3),
                (2, [1, 2, 4], 3),
                (3, [1, 3, 4], 3),
                (3, [2, 3, 4], 3),
            ])),
            Some((F::base(D33, [1, 2, 3]), F::base(D33, [2, 3, 4]))),
            &[Maximal, ArrowSinglePeaked],
        ),
        entry(
            "D4_5",
            Some("crab"),
            &[
                "1234", "2134", "2314", "3214", "2341", "3241", "2431", "4231",
            ],
            Some(conditions(&[
                (2, [1, 2, 3], 3),
                (2, [1, 2, 4], 3),
                (3, [1, 3, 4], 3),
                (2, [2, 3, 4], 3),
            ])),
            Some((F::base(D33, [1, 2, 3]), F::base(D33, [3, 2, 4]))),
            &[Maximal, ArrowSinglePeaked, Copious, NotMaximalWidth],
        ),
        entry(
            "D4_6",
            Some("sun"),
            &[
                "3124", "3214", "2314", "2134", "3421", "3241", "2341", "2431",
            ],
            Some(conditions(&[
                (1, [1, 2, 3], 1),
                (2, [1, 2, 4], 3),
                (3, [1, 3, 4], 3),
                (4, [2, 3, 4], 1),
            ])),
            Some((F::base(D31, [2, 1, 3]), F::base(D31, [2, 4, 3]))),
            &[Maximal, Copious, NotMaximalWidth],
        ),
        entry(
            "D4_7",
            Some("half-crab-half-sun"),
            &[
                "3124", "3214", "2314", "2134", "4321", "3421", "3241", "2341",
            ],
            Some(conditions(&[
                (3, [1, 2, 3], 1),
                (1, [1, 2, 4], 3),
                (1, [1, 3, 4], 3),
                (2, [2, 3, 4], 3),
            ])),
            Some((F::base(D31, [2, 1, 3]), F::base(D31, [2, 3, 4]))),
            &[Maximal, Copious, NotMaximalWidth],
        ),
        entry(
            "D4_11",
            Some("boring-1"),
            &[
                "1234", "2134", "2314", "3214", "2341", "3241", "4231", "4321",
            ],
            Some(conditions(&[
                (2, [1, 2, 3], 3),
                (2, [1, 2, 4], 3),
                (3, [1, 3, 4], 3),
                (4, [2, 3, 4], 2),
            ])),
            Some((F::base(D33, [1, 2, 3]), F::base(D32, [4, 2, 3]))),
            &[Maximal],
        ),
        entry(
            "D4_16",
            Some("boring-6"),
            &[
                "1234", "1324", "2314", "3214", "3241", "2341", "4231", "4321",
            ],
            Some(conditions(&[
                (1, [1, 2, 3], 2),
                (2, [1, 2, 4], 3),
                (3, [1, 3, 4], 3),
                (4, [2, 3, 4], 2),
            ])),
            Some((F::base(D33, [1, 2, 3]), F::base(D32, [4, 2, 3]))),
            &[Maximal],
        ),
        entry(
            "D4_17",
            Some("boring-7"),
            &[
                "2134", "3124", "2314", "3214", "2341", "3241", "4231", "4321",
            ],
            Some(conditions(&[
                (1, [1, 2, 3], 1),
                (2, [1, 2, 4], 3),
                (3, [1, 3, 4], 3),
                (4, [2, 3, 4], 2),
            ])),
            Some((F::base(D31, [2, 1, 3]), F::base(D32, [4, 2, 3]))),
            &[Maximal],
        ),
    ]
});

pub fn catalog_entries() -> &'static [CatalogEntry] {
    &CATALOG
}

/// Looks up an entry by id (`D4_5`) or alias (`crab`), case-insensitively.
pub fn catalog_get(name: &str) -> Result<&'static CatalogEntry> {
    CATALOG
        .iter()
        .find(|e| {
            e.id.eq_ignore_ascii_case(name) || e.alias.is_some_and(|a| a.eq_ignore_ascii_case(name))
        })
        .ok_or_else(|| Error::UnknownCatalogEntry(name.to_string()))
}

pub(crate) fn format_conditions(conditions: &BTreeSet<NeverCondition>) -> String {
    format!("{{{}}}", conditions.iter().join(", "))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub stated: String,
    pub computed: String,
    pub matches: bool,
}

impl CheckOutcome {
    fn new(check: &str, stated: String, computed: String) -> Self {
        CheckOutcome {
            check: check.to_string(),
            matches: stated == computed,
            stated,
            computed,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ComputedFlags {
    pub condorcet: bool,
    pub maximal: bool,
    pub ample: bool,
    pub copious: bool,
    pub maximal_width: bool,
    pub arrow_sp: bool,
    pub single_crossing: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub alias: Option<String>,
    pub orders: usize,
    pub flags: ComputedFlags,
    pub conditions: String,
    pub decompositions: Vec<String>,
    pub graph: GraphSummary,
    pub checks: Vec<CheckOutcome>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub entries: Vec<EntryReport>,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub enum DiscrepancyKind {
    /// Reproduced by the verifier as a check mismatch.
    Computed,
    /// A textual inconsistency (labels, notation) with no computable check.
    Textual,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Discrepancy {
    pub entry: &'static str,
    pub check: &'static str,
    pub kind: DiscrepancyKind,
    pub stated: String,
    pub computed: String,
    pub note: &'static str,
}

/// The fixed list of inconsistencies between the transcribed matrices and
/// the claims attached to them.
pub fn known_discrepancies() -> Vec<Discrepancy> {
    use DiscrepancyKind::*;
    vec![
        Discrepancy {
            entry: "D4_7",
            check: "identity",
            kind: Computed,
            stated: "D3,1(2,1,3) <> D3,1(2,3,4)".to_string(),
            computed: "D3,1(2,1,3) <> D3,3(2,3,4)".to_string(),
            note: "the right block of the matrix is D3,3(2,3,4)",
        },
        Discrepancy {
            entry: "D4_7",
            check: "conditions",
            kind: Computed,
            stated: format_conditions(&conditions(&[
                (3, [1, 2, 3], 1),
                (1, [1, 2, 4], 3),
                (1, [1, 3, 4], 3),
                (2, [2, 3, 4], 3),
            ])),
            computed: format_conditions(&conditions(&[
                (1, [1, 2, 3], 1),
                (2, [1, 2, 4], 3),
                (3, [1, 3, 4], 3),
                (3, [2, 3, 4], 3),
            ])),
            note: "the stated conditions define a different domain than the matrix",
        },
        Discrepancy {
            entry: "D4_16",
            check: "identity",
            kind: Computed,
            stated: "D3,3(1,2,3) <> D3,2(4,2,3)".to_string(),
            computed: "D3,2(1,2,3) <> D3,2(4,2,3)".to_string(),
            note: "the left block of the matrix is D3,2(1,2,3); the stated identity repeats D4_11's",
        },
        Discrepancy {
            entry: "D4_2",
            check: "notation",
            kind: Textual,
            stated: "E is contained in D3,3(1,2,3) and D3,1(2,3,1)".to_string(),
            computed: "D3,1(2,3,1) repeats label 1 and names no domain on {1,2,3}".to_string(),
            note: "the second superset of E has a repeated label",
        },
        Discrepancy {
            entry: "D4_5",
            check: "label",
            kind: Textual,
            stated: "D4,2 = D(N) and D4,2 is copious".to_string(),
            computed: "the surrounding example is D4,5; the conditions and copiousness are checked against D4_5".to_string(),
            note: "the body text names the crab D4,2",
        },
        Discrepancy {
            entry: "D4_4",
            check: "label",
            kind: Textual,
            stated: "this domain will also be denoted as D4,1".to_string(),
            computed: "listed as D4,4 (the single peaked); stored as D4_4".to_string(),
            note: "referent of the D4,1 label is unresolved",
        },
    ]
}

impl EntryReport {
    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                if c.matches {
                    format!("ENTRY {}: {} = MATCH", self.id, c.check)
                } else {
                    format!(
                        "ENTRY {}: {} = MISMATCH({} vs {})",
                        self.id, c.check, c.stated, c.computed
                    )
                }
            })
            .collect()
    }
}

impl VerificationReport {
    pub fn mismatches(&self) -> Vec<(&str, &CheckOutcome)> {
        self.entries
            .iter()
            .flat_map(|e| {
                e.checks
                    .iter()
                    .filter(|c| !c.matches)
                    .map(move |c| (e.id.as_str(), c))
            })
            .collect()
    }

    /// Mismatches not in the known list.
    pub fn unexpected_mismatches(&self) -> Vec<(&str, &CheckOutcome)> {
        let known = known_discrepancies();
        self.mismatches()
            .into_iter()
            .filter(|(id, c)| {
                !known.iter().any(|k| {
                    k.kind == DiscrepancyKind::Computed
                        && k.entry == *id
                        && k.check == c.check
                        && k.stated == c.stated
                        && k.computed == c.computed
                })
            })
            .collect()
    }

    /// Known computed discrepancies the verifier did not reproduce.
    pub fn unreproduced_discrepancies(&self) -> Vec<Discrepancy> {
        let mismatches = self.mismatches();
        known_discrepancies()
            .into_iter()
            .filter(|k| k.kind == DiscrepancyKind::Computed)
            .filter(|k| {
                !mismatches.iter().any(|(id, c)| {
                    k.entry == *id
                        && k.check == c.check
                        && k.stated == c.stated
                        && k.computed == c.computed
                })
            })
            .collect()
    }

    /// Mismatches are exactly the known ones.
    pub fn passes(&self) -> bool {
        self.unexpected_mismatches().is_empty() && self.unreproduced_discrepancies().is_empty()
    }

    pub fn render_lines(&self) -> String {
        let mut out = String::new();
        for entry in &self.entries {
            for line in entry.lines() {
                out.push_str(&line);
                out.push('\n');
            }
        }
        out
    }
}

fn bool_text(value: bool) -> String {
    value.to_string()
}

fn verify_entry(entry: &CatalogEntry) -> Result<EntryReport> {
    let d = &entry.matrix;
    let condorcet = d.is_condorcet();
    let graph = build_graph(d).summary();
    let flags = ComputedFlags {
        condorcet,
        maximal: is_maximal(d)?,
        ample: is_ample(d)?,
        copious: is_copious(d)?,
        maximal_width: has_maximal_width(d),
        arrow_sp: is_arrow_single_peaked(d)?,
        single_crossing: is_single_crossing(d)?,
    };
    let decompositions = nl_decompose(d)?;
    let computed_conditions = d.never_conditions();

    let mut checks = vec![CheckOutcome::new(
        "condorcet",
        bool_text(true),
        bool_text(condorcet),
    )];
    for flag in &entry.stated_flags {
        let computed = match flag {
            StatedFlag::Maximal => flags.maximal,
            StatedFlag::Copious => flags.copious,
            StatedFlag::Ample => flags.ample,
            StatedFlag::ArrowSinglePeaked => flags.arrow_sp,
            StatedFlag::SingleCrossing => flags.single_crossing,
            StatedFlag::NotMaximalWidth => flags.maximal_width,
            StatedFlag::PathGraph => graph.path,
        };
        checks.push(CheckOutcome::new(
            flag.check_name(),
            bool_text(flag.stated_value()),
            bool_text(computed),
        ));
    }
    if let Some(stated) = &entry.stated_conditions {
        checks.push(CheckOutcome::new(
            "conditions",
            format_conditions(stated),
            format_conditions(&computed_conditions),
        ));
    }
    if let Some(identity) = &entry.stated_identity {
        let left = identity.left.build()?;
        let right = identity.right.build()?;
        let stated = identity.to_string();
        let computed = if nl_compose(&left, &right)? == *d {
            stated.clone()
        } else {
            let (roles, _) = infer_roles(&left, &right)?;
            match decompositions.iter().find(|p| p.roles == roles) {
                Some(p) => format!(
                    "{} <> {}",
                    describe_factor(&p.left),
                    describe_factor(&p.right)
                ),
                None => format!("no decomposition with roles {roles}"),
            }
        };
        checks.push(CheckOutcome::new("identity", stated, computed));
    }

    Ok(EntryReport {
        id: entry.id.to_string(),
        alias: entry.alias.map(str::to_string),
        orders: d.len(),
        flags,
        conditions: format_conditions(&computed_conditions),
        decompositions: decompositions
            .iter()
            .map(|p| {
                format!(
                    "{}: {} <> {}",
                    p.roles,
                    describe_factor(&p.left),
                    describe_factor(&p.right)
                )
            })
            .collect(),
        graph,
        checks,
    })
}

/// Recomputes every entry's properties and compares them with the stated
/// claims.
pub fn verify_catalog() -> Result<VerificationReport> {
    Ok(VerificationReport {
        entries: CATALOG
            .iter()
            .map(verify_entry)
            .collect::<Result<Vec<_>>>()?,
    })
}
