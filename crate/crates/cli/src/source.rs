//! Line-oriented source-problem formats. Blank lines and lines starting
//! with `#` are ignored everywhere; CNF files also skip `c` comment lines.
//!
//! - CNF: a `p cnf <vars> <clauses>` header (the `cnf` word is optional),
//!   then one clause per line as signed 1-based literals, optionally ending
//!   in `0`.
//! - Bin packing: `<bins> <capacity>`, then item sizes.
//! - Knapsack: `<capacity> <target>`, then one `<weight> <value>` per line.
//! - Graph: `<vertices> <k> <t>`, then one 1-based `<x> <y>` edge per line.

use std::str::FromStr;

use netcache_core::reductions::{BinPackingInstance, CnfFormula, KnapsackInstance, Literal, MaxKVcInstance};
use num_bigint::BigUint;

use crate::error::{CliError, Position};

/// A whitespace-separated token and where it starts.
struct Token<'a> {
    text: &'a str,
    at: Position,
}

/// A non-comment line: its number and tokens.
type Line<'a> = (usize, Vec<Token<'a>>);

struct Lines<'a> {
    origin: &'a str,
    lines: Vec<Line<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str, origin: &'a str, skip_c: bool) -> Lines<'a> {
        let mut lines = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let trimmed = line.trim_start();
            if trimmed.is_empty()
                || trimmed.starts_with('#')
                || (skip_c && (trimmed == "c" || trimmed.starts_with("c ")))
            {
                continue;
            }
            let mut tokens = Vec::new();
            let mut rest = line;
            let mut col = 0;
            while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
                let end = rest[start..].find(char::is_whitespace).map_or(rest.len(), |e| start + e);
                col += rest[..start].chars().count();
                tokens.push(Token { text: &rest[start..end], at: Position { line: i + 1, column: col + 1 } });
                col += rest[start..end].chars().count();
                rest = &rest[end..];
            }
            lines.push((i + 1, tokens));
        }
        Lines { origin, lines }
    }

    fn error(&self, at: Position, message: impl Into<String>) -> CliError {
        CliError::Parse { origin: self.origin.to_string(), at, message: message.into() }
    }

    /// Position just past the last line, for "missing header" errors.
    fn end(&self) -> Position {
        Position { line: self.lines.last().map_or(1, |(l, _)| l + 1), column: 1 }
    }

    fn number<T: FromStr>(&self, token: &Token, what: &str) -> Result<T, CliError> {
        token.text.parse().map_err(|_| self.error(token.at, format!("expected {what}, found `{}`", token.text)))
    }

    /// Splits off the header line, which must hold exactly `n` numbers.
    fn header<T: FromStr>(&self, n: usize, shape: &str) -> Result<(Vec<T>, &[Line<'a>]), CliError> {
        let Some(((line, tokens), rest)) = self.lines.split_first() else {
            return Err(self.error(self.end(), format!("missing `{shape}` header")));
        };
        if tokens.len() != n {
            return Err(self.error(Position { line: *line, column: 1 }, format!("expected header `{shape}`")));
        }
        let values = tokens.iter().map(|t| self.number(t, "a non-negative integer")).collect::<Result<_, _>>()?;
        Ok((values, rest))
    }
}

pub fn parse_cnf(text: &str, origin: &str) -> Result<CnfFormula, CliError> {
    let lines = Lines::new(text, origin, true);
    let Some(((line, header), rest)) = lines.lines.split_first() else {
        return Err(lines.error(lines.end(), "missing `p cnf <vars> <clauses>` header"));
    };
    let counts = match header.iter().map(|t| t.text).collect::<Vec<_>>()[..] {
        ["p", "cnf", _, _] => &header[2..],
        ["p", _, _] => &header[1..],
        _ => return Err(lines.error(Position { line: *line, column: 1 }, "expected header `p cnf <vars> <clauses>`")),
    };
    let vars: usize = lines.number(&counts[0], "a variable count")?;
    let declared: usize = lines.number(&counts[1], "a clause count")?;
    let mut clauses = Vec::new();
    for (line, tokens) in rest {
        let mut clause: Vec<Literal> = Vec::new();
        for (i, t) in tokens.iter().enumerate() {
            let lit: i64 = lines.number(t, "a literal")?;
            if lit == 0 {
                if i + 1 != tokens.len() {
                    return Err(lines.error(t.at, "`0` must end the clause"));
                }
                continue;
            }
            let l = Literal::from_dimacs(lit)
                .filter(|l| l.var < vars)
                .ok_or_else(|| lines.error(t.at, format!("literal {lit} is outside variables 1..={vars}")))?;
            if clause.iter().any(|c| c.var == l.var) {
                return Err(lines.error(t.at, format!("variable {} repeats within the clause", l.var + 1)));
            }
            clause.push(l);
        }
        if clause.is_empty() {
            return Err(lines.error(Position { line: *line, column: 1 }, "empty clause"));
        }
        clauses.push(clause);
    }
    if clauses.len() != declared {
        return Err(
            lines.error(counts[1].at, format!("header declares {declared} clauses but {} follow", clauses.len()))
        );
    }
    Ok(CnfFormula::new(vars, clauses)?)
}

pub fn parse_bin_packing(text: &str, origin: &str) -> Result<BinPackingInstance, CliError> {
    let lines = Lines::new(text, origin, false);
    let (header, rest) = lines.header::<u64>(2, "<bins> <capacity>")?;
    let mut sizes = Vec::new();
    for (_, tokens) in rest {
        for t in tokens {
            sizes.push(lines.number(t, "an item size")?);
        }
    }
    let bins = usize::try_from(header[0]).map_err(|_| CliError::Usage("bin count too large".into()))?;
    Ok(BinPackingInstance::new(sizes, bins, header[1])?)
}

pub fn parse_knapsack(text: &str, origin: &str) -> Result<KnapsackInstance, CliError> {
    let lines = Lines::new(text, origin, false);
    let (header, rest) = lines.header::<BigUint>(2, "<capacity> <target>")?;
    let mut items = Vec::new();
    for (line, tokens) in rest {
        if tokens.len() != 2 {
            return Err(lines.error(Position { line: *line, column: 1 }, "expected `<weight> <value>`"));
        }
        items.push((lines.number(&tokens[0], "a weight")?, lines.number(&tokens[1], "a value")?));
    }
    let [capacity, target] = <[BigUint; 2]>::try_from(header).expect("two header fields");
    Ok(KnapsackInstance::new(capacity, items, target)?)
}

pub fn parse_graph(text: &str, origin: &str) -> Result<MaxKVcInstance, CliError> {
    let lines = Lines::new(text, origin, false);
    let (header, rest) = lines.header::<usize>(3, "<vertices> <k> <t>")?;
    let n = header[0];
    let mut edges = Vec::new();
    for (line, tokens) in rest {
        if tokens.len() != 2 {
            return Err(lines.error(Position { line: *line, column: 1 }, "expected `<x> <y>`"));
        }
        let mut ends = [0usize; 2];
        for (end, t) in ends.iter_mut().zip(tokens) {
            let v: usize = lines.number(t, "a vertex")?;
            if v == 0 || v > n {
                return Err(lines.error(t.at, format!("vertex {v} is outside 1..={n}")));
            }
            *end = v - 1;
        }
        edges.push((ends[0], ends[1]));
    }
    Ok(MaxKVcInstance::new(n, &edges, header[1], header[2])?)
}
