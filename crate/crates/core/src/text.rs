//! The plain-text domain format.
//!
//! ```text
//! # comment
//! alts: 1 2 3
//! 123
//! 2 1 3
//! ```
//!
//! `#` starts a comment and blank lines are ignored. The optional `alts:`
//! header fixes the alternative set; otherwise it is taken from the orders.
//! An order is either whitespace-separated labels or, when every label is a
//! single digit, a contiguous digit string. Lists of domains separate
//! blocks with a `---` line.

use std::collections::BTreeSet;

use crate::domain::{Alternative, AlternativeSet, Domain, LinearOrder};
use crate::error::{Error, Result};

const SEPARATOR: &str = "---";

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_label(token: &str, line: usize) -> Result<Alternative> {
    let label: u32 = token
        .parse()
        .map_err(|_| parse_error(line, format!("'{token}' is not a label")))?;
    Alternative::new(label).map_err(|e| parse_error(line, e.to_string()))
}

fn parse_order(text: &str, line: usize, header: Option<&AlternativeSet>) -> Result<LinearOrder> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let lone_label = header
        .filter(|h| h.len() == 1)
        .and_then(|h| h.iter().next())
        .filter(|a| a.label().to_string() == tokens[0]);
    let ranking = if let Some(&a) = lone_label {
        vec![a]
    } else if tokens.len() == 1 {
        // a single token is a digit string, one alternative per character
        tokens[0]
            .chars()
            .map(|c| parse_label(&c.to_string(), line))
            .collect::<Result<Vec<_>>>()?
    } else {
        tokens
            .iter()
            .map(|t| parse_label(t, line))
            .collect::<Result<Vec<_>>>()?
    };
    LinearOrder::new(ranking).map_err(|e| parse_error(line, e.to_string()))
}

/// Lines of a single block: `(line number, content without comment)`.
fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then_some((i + 1, content))
    })
}

fn parse_block<'a>(lines: impl IntoIterator<Item = (usize, &'a str)>) -> Result<Domain> {
    let mut header: Option<AlternativeSet> = None;
    let mut orders: Vec<(usize, LinearOrder)> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut last_line = 0;
    for (line, content) in lines {
        last_line = line;
        if let Some(rest) = content.strip_prefix("alts:") {
            if header.is_some() || !orders.is_empty() {
                return Err(parse_error(line, "the alts: header must come first"));
            }
            let alts = rest
                .split_whitespace()
                .map(|t| parse_label(t, line))
                .collect::<Result<Vec<_>>>()?;
            let set: AlternativeSet = alts.iter().copied().collect();
            if set.len() != alts.len() || set.is_empty() {
                return Err(parse_error(line, "alts: must list distinct alternatives"));
            }
            header = Some(set);
            continue;
        }
        let order = parse_order(content, line, header.as_ref())?;
        if !seen.insert(order.clone()) {
            return Err(parse_error(line, format!("duplicate order {order}")));
        }
        orders.push((line, order));
    }
    let expected = match (&header, orders.first()) {
        (Some(h), _) => h.clone(),
        (None, Some((_, first))) => first.alternatives(),
        (None, None) => return Err(parse_error(last_line.max(1), "no orders")),
    };
    if orders.is_empty() {
        return Err(parse_error(last_line.max(1), "no orders"));
    }
    for (line, order) in &orders {
        if order.alternatives() != expected {
            return Err(parse_error(
                *line,
                format!("order {order} ranks different alternatives than the rest"),
            ));
        }
    }
    Domain::with_alternatives(expected, orders.into_iter().map(|(_, o)| o))
}

pub fn parse_domain_text(text: &str) -> Result<Domain> {
    let lines: Vec<(usize, &str)> = meaningful_lines(text).collect();
    if let Some((line, _)) = lines.iter().find(|(_, c)| *c == SEPARATOR) {
        return Err(parse_error(*line, "expected a single domain"));
    }
    parse_block(lines)
}

/// Parses `---`-separated blocks, skipping empty ones.
pub fn parse_domain_list(text: &str) -> Result<Vec<Domain>> {
    let mut domains = Vec::new();
    let mut block = Vec::new();
    for (line, content) in meaningful_lines(text) {
        if content == SEPARATOR {
            if !block.is_empty() {
                domains.push(parse_block(block.drain(..))?);
            }
        } else {
            block.push((line, content));
        }
    }
    if !block.is_empty() {
        domains.push(parse_block(block)?);
    }
    Ok(domains)
}

/// One order per line in sorted order, compact form when possible.
pub fn render_domain_text(domain: &Domain) -> String {
    let mut out = String::new();
    if domain.alternatives().len() == 1 && !domain.iter().all(LinearOrder::is_compact) {
        // a lone multi-digit label would read back as a digit string
        out.push_str(&format!(
            "alts: {}\n",
            domain.alternatives().iter().next().expect("non-empty")
        ));
    }
    for order in domain.iter() {
        out.push_str(&order.to_string());
        out.push('\n');
    }
    out
}

pub fn render_domain_list(domains: &[Domain]) -> String {
    domains
        .iter()
        .map(render_domain_text)
        .collect::<Vec<_>>()
        .join("---\n")
}
