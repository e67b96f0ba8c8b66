//! Text formats for pencils, quadric systems, point sets and subspaces.
//!
//! All formats are line based; `#` starts a comment and blank lines are ignored on
//! input. Output is canonical: single spaces, no trailing whitespace, `\n` endings.

use std::fmt::Write as _;

use crate::canonical::{pair_count, QuadraticForm};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::pencil::MatrixPencil;
use crate::projective::ProjectivePoint;
use crate::subspace::Subspace;

/// Non-blank lines with comments removed, paired with 1-based line numbers.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn next_line(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, raw) in self.inner.by_ref() {
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            self.last = i + 1;
            if !tokens.is_empty() {
                return Some((i + 1, tokens));
            }
        }
        None
    }

    fn expect_line(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        self.next_line()
            .ok_or_else(|| Error::parse(self.last + 1, format!("unexpected end of input, expected {what}")))
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.next_line() {
            Some((line, tokens)) => Err(Error::parse(line, format!("unexpected trailing content `{}`", tokens.join(" ")))),
            None => Ok(()),
        }
    }
}

fn parse_count(line: usize, token: &str, what: &str) -> Result<usize> {
    if !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(line, format!("{what} must be a nonnegative integer, got `{token}`")));
    }
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("{what} out of range: `{token}`")))
}

fn parse_field(line: usize, token: &str) -> Result<Field> {
    token.parse().map_err(|e: Error| Error::parse(line, e.to_string()))
}

fn parse_row(line: usize, tokens: &[&str], width: usize, field: Field) -> Result<Vec<Scalar>> {
    if tokens.len() != width {
        return Err(Error::parse(
            line,
            format!("expected {width} scalars, found {}", tokens.len()),
        ));
    }
    tokens
        .iter()
        .map(|t| field.parse_scalar(t).map_err(|m| Error::parse(line, m)))
        .collect()
}

fn header<'a>(lines: &mut Lines<'a>, keyword: &str, arity: usize) -> Result<(usize, Vec<&'a str>)> {
    let (line, tokens) = lines.expect_line(&format!("`{keyword}` header"))?;
    if tokens[0] != keyword || tokens.len() != arity + 1 {
        return Err(Error::parse(
            line,
            format!("expected header `{keyword}` with {arity} fields"),
        ));
    }
    Ok((line, tokens))
}

fn push_row(out: &mut String, row: &[Scalar]) {
    let mut first = true;
    for x in row {
        if !first {
            out.push(' ');
        }
        first = false;
        write!(out, "{x}").expect("write to string");
    }
    out.push('\n');
}

/// `pencil <n> <a> <b> <field>`, then `matrix <i>` and `b` rows for each matrix.
pub fn write_pencil(p: &MatrixPencil) -> String {
    let mut out = format!("pencil {} {} {} {}\n", p.n(), p.a(), p.b(), p.field());
    for (i, m) in p.alphas().iter().enumerate() {
        writeln!(out, "matrix {}", i + 1).expect("write to string");
        for r in 0..m.rows() {
            push_row(&mut out, m.row(r));
        }
    }
    out
}

pub fn parse_pencil(text: &str) -> Result<MatrixPencil> {
    let mut lines = Lines::new(text);
    let (line, tokens) = header(&mut lines, "pencil", 4)?;
    let n = parse_count(line, tokens[1], "n")?;
    let a = parse_count(line, tokens[2], "a")?;
    let b = parse_count(line, tokens[3], "b")?;
    let field = parse_field(line, tokens[4])?;
    if n == 0 {
        return Err(Error::parse(line, "a pencil needs at least one matrix"));
    }
    let mut alphas = Vec::with_capacity(n);
    for i in 1..=n {
        let (line, tokens) = lines.expect_line(&format!("`matrix {i}`"))?;
        if tokens.len() != 2 || tokens[0] != "matrix" || tokens[1] != i.to_string() {
            return Err(Error::parse(line, format!("expected `matrix {i}`")));
        }
        let mut data = Vec::with_capacity(a * b);
        // With a = 0 the rows are blank and have already been skipped.
        if a > 0 {
            for _ in 0..b {
                let (line, tokens) = lines.expect_line("a matrix row")?;
                data.extend(parse_row(line, &tokens, a, field)?);
            }
        }
        alphas.push(Matrix::new(b, a, field, data)?);
    }
    lines.expect_end()?;
    MatrixPencil::new(a, b, field, alphas)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricSystem {
    pub n: usize,
    pub field: Field,
    pub quadrics: Vec<QuadraticForm>,
}

/// `quadrics <n> <m> <field>`, then one coefficient row per quadric in pair order.
pub fn write_quadrics(system: &QuadricSystem) -> String {
    let mut out = format!("quadrics {} {} {}\n", system.n, system.quadrics.len(), system.field);
    for q in &system.quadrics {
        push_row(&mut out, q.coeffs());
    }
    out
}

pub fn parse_quadrics(text: &str) -> Result<QuadricSystem> {
    let mut lines = Lines::new(text);
    let (line, tokens) = header(&mut lines, "quadrics", 3)?;
    let n = parse_count(line, tokens[1], "n")?;
    let m = parse_count(line, tokens[2], "m")?;
    let field = parse_field(line, tokens[3])?;
    if n == 0 {
        return Err(Error::parse(line, "need at least one variable"));
    }
    let width = pair_count(n);
    let mut quadrics = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, tokens) = lines.expect_line("a quadric coefficient row")?;
        let coeffs = parse_row(line, &tokens, width, field)?;
        quadrics.push(QuadraticForm::new(n, field, coeffs)?);
    }
    lines.expect_end()?;
    Ok(QuadricSystem { n, field, quadrics })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    pub m: usize,
    pub field: Field,
    pub points: Vec<ProjectivePoint>,
}

impl PointSet {
    /// Sorts and deduplicates.
    pub fn new(m: usize, field: Field, mut points: Vec<ProjectivePoint>) -> PointSet {
        points.sort();
        points.dedup();
        PointSet { m, field, points }
    }
}

/// `points <m> <count> <field>`, then one sorted point per line.
pub fn write_points(set: &PointSet) -> String {
    let mut out = format!("points {} {} {}\n", set.m, set.points.len(), set.field);
    let mut sorted: Vec<&ProjectivePoint> = set.points.iter().collect();
    sorted.sort();
    for p in sorted {
        push_row(&mut out, p.coords());
    }
    out
}

pub fn parse_points(text: &str) -> Result<PointSet> {
    let mut lines = Lines::new(text);
    let (line, tokens) = header(&mut lines, "points", 3)?;
    let m = parse_count(line, tokens[1], "m")?;
    let count = parse_count(line, tokens[2], "count")?;
    let field = parse_field(line, tokens[3])?;
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let (line, tokens) = lines.expect_line("a point")?;
        let coords = parse_row(line, &tokens, m, field)?;
        points.push(ProjectivePoint::new(coords).map_err(|e| Error::parse(line, e.to_string()))?);
    }
    lines.expect_end()?;
    Ok(PointSet::new(m, field, points))
}

/// `subspace <ambient> <dim> <field>`, then the echelon basis rows.
pub fn write_subspace(s: &Subspace) -> String {
    let mut out = format!("subspace {} {} {}\n", s.ambient_dim(), s.dim(), s.field());
    for r in 0..s.dim() {
        push_row(&mut out, s.basis().row(r));
    }
    out
}

pub fn parse_subspace(text: &str) -> Result<Subspace> {
    let mut lines = Lines::new(text);
    let (line, tokens) = header(&mut lines, "subspace", 3)?;
    let ambient = parse_count(line, tokens[1], "ambient dimension")?;
    let dim = parse_count(line, tokens[2], "dimension")?;
    let field = parse_field(line, tokens[3])?;
    let mut rows = Vec::with_capacity(dim);
    if ambient > 0 {
        for _ in 0..dim {
            let (line, tokens) = lines.expect_line("a basis row")?;
            rows.push(parse_row(line, &tokens, ambient, field)?);
        }
    }
    lines.expect_end()?;
    let s = Subspace::from_vectors(field, ambient, &rows)?;
    if s.dim() != dim {
        return Err(Error::parse(line, format!("basis spans dimension {}, header says {dim}", s.dim())));
    }
    Ok(s)
}

/// Parses `"1,0,0;1,1,0"` into normalized points with `n` coordinates.
pub fn parse_point_list(text: &str, n: usize, field: Field) -> Result<Vec<ProjectivePoint>> {
    let mut out = Vec::new();
    for (k, tuple) in text.split(';').enumerate() {
        let tuple = tuple.trim();
        if tuple.is_empty() {
            continue;
        }
        let coords = tuple
            .split(',')
            .map(|t| {
                field
                    .parse_scalar(t.trim())
                    .map_err(|m| Error::InvalidParameter(format!("point {}: {m}", k + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "point {} has {} coordinates, expected {n}",
                k + 1,
                coords.len()
            )));
        }
        out.push(ProjectivePoint::new(coords)?);
    }
    Ok(out)
}
