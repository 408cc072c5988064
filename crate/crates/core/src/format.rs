//! The line-based text format for algebras.
//!
//! A file declares its vertices and then either a bound quiver (arrows,
//! relations, truncation) or a raw multiplication table (basis, idempotents,
//! products). `#` starts a comment. See the README for the grammar.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Arrow, Quiver, Relation, TableSpec, Term};
use crate::scalar::{FieldSpec, Scalar};

/// A 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("{location}: {message}")]
    Syntax { location: Location, message: String },
    #[error("{location}: {error}")]
    Algebra { location: Location, error: AlgebraError },
    #[error("{location}: file declares field {declared} but {requested} was requested")]
    FieldMismatch { location: Location, declared: FieldSpec, requested: FieldSpec },
}

impl FormatError {
    pub fn location(&self) -> Location {
        match self {
            FormatError::Syntax { location, .. }
            | FormatError::Algebra { location, .. }
            | FormatError::FieldMismatch { location, .. } => *location,
        }
    }
}

fn syntax(location: Location, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { location, message: message.into() }
}

/// A linear combination `sum c_i p_i` of paths, each path a list of labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinComb {
    pub terms: Vec<(BigRational, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductLine {
    pub left: String,
    pub right: String,
    /// Empty for an explicit `= 0`.
    pub terms: Vec<(BigRational, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    Quiver { arrows: Vec<Arrow>, relations: Vec<LinComb>, truncation: usize },
    Table { basis: Vec<String>, idempotents: Vec<String>, products: Vec<ProductLine> },
}

/// A parsed (or generated) algebra file. Coefficients are kept as rationals
/// so that the same file can be built over any field.
#[derive(Clone, Debug)]
pub struct AlgebraFile {
    pub field: Option<FieldSpec>,
    pub vertices: Vec<String>,
    pub presentation: Presentation,
    spans: Option<Spans>,
}

/// Equality ignores source positions.
impl PartialEq for AlgebraFile {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.vertices == other.vertices && self.presentation == other.presentation
    }
}

impl Eq for AlgebraFile {}

#[derive(Clone, Debug, Default)]
struct Spans {
    field: Option<Location>,
    vertices: Option<Location>,
    truncation: Option<Location>,
    basis: Option<Location>,
    /// Where each relation starts, and where each of its labels occurs.
    relations: Vec<(Location, Vec<Vec<Location>>)>,
    arrows: Vec<Location>,
    basis_labels: Vec<Location>,
    /// Per product line: the line start and each right-hand term.
    products: Vec<(Location, Vec<Location>)>,
}

impl AlgebraFile {
    pub fn quiver(field: Option<FieldSpec>, vertices: Vec<String>, arrows: Vec<Arrow>, relations: Vec<LinComb>, truncation: usize) -> Self {
        AlgebraFile { field, vertices, presentation: Presentation::Quiver { arrows, relations, truncation }, spans: None }
    }

    pub fn table(field: Option<FieldSpec>, vertices: Vec<String>, basis: Vec<String>, idempotents: Vec<String>, products: Vec<ProductLine>) -> Self {
        AlgebraFile { field, vertices, presentation: Presentation::Table { basis, idempotents, products }, spans: None }
    }

    /// The canonical table form of a built algebra.
    pub fn from_algebra<T: Scalar>(algebra: &Algebra<T>) -> Self {
        let table = algebra.to_table();
        let label = |i: usize| table.labels[i].clone();
        AlgebraFile {
            field: Some(T::field()),
            vertices: table.vertices.clone(),
            presentation: Presentation::Table {
                basis: table.labels.clone(),
                idempotents: table.idempotents.iter().map(|&i| label(i)).collect(),
                products: table
                    .products
                    .iter()
                    .map(|(i, j, rhs)| ProductLine {
                        left: label(*i),
                        right: label(*j),
                        terms: rhs.iter().map(|(k, c)| (c.to_rational(), label(*k))).collect(),
                    })
                    .collect(),
            },
            spans: None,
        }
    }

    pub fn is_table(&self) -> bool {
        matches!(self.presentation, Presentation::Table { .. })
    }

    /// The declared field, or `default` when the file declares none.
    pub fn field_or(&self, default: FieldSpec) -> FieldSpec {
        self.field.unwrap_or(default)
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Parser::default().run(text)
    }

    /// Builds the algebra over `T`, which must match the declared field if any.
    pub fn build<T: Scalar>(&self) -> Result<Algebra<T>, FormatError> {
        let spans = self.spans.clone().unwrap_or_default();
        let origin = Location { line: 1, column: 1 };
        if let Some(declared) = self.field {
            if declared != T::field() {
                return Err(FormatError::FieldMismatch {
                    location: spans.field.unwrap_or(origin),
                    declared,
                    requested: T::field(),
                });
            }
        }
        let coeff = |c: &BigRational, at: Location| -> Result<T, FormatError> {
            T::from_ratio(c.numer(), c.denom())
                .ok_or_else(|| syntax(at, format!("coefficient {c} is undefined over {}", T::field())))
        };
        match &self.presentation {
            Presentation::Quiver { arrows, relations, truncation } => {
                let quiver = Quiver { vertices: self.vertices.clone(), arrows: arrows.clone() };
                let mut rels = Vec::with_capacity(relations.len());
                for (ri, rel) in relations.iter().enumerate() {
                    let labels = spans.relations.get(ri);
                    let mut terms = Vec::with_capacity(rel.terms.len());
                    for (ti, (c, path)) in rel.terms.iter().enumerate() {
                        let at = labels.and_then(|(_, t)| t.get(ti)).and_then(|l| l.first().copied()).unwrap_or(origin);
                        terms.push(Term { coeff: coeff(c, at)?, path: path.clone() });
                    }
                    rels.push(Relation { terms });
                }
                Algebra::from_quiver(&quiver, &rels, *truncation).map_err(|error| {
                    let location = locate_quiver_error(&error, self, &spans).unwrap_or(origin);
                    FormatError::Algebra { location, error }
                })
            }
            Presentation::Table { basis, idempotents, products } => {
                let basis_at = spans.basis.unwrap_or(origin);
                let mut index: HashMap<&str, usize> = HashMap::new();
                for (i, l) in basis.iter().enumerate() {
                    if index.insert(l.as_str(), i).is_some() {
                        let location = spans.basis_labels.get(i).copied().unwrap_or(basis_at);
                        return Err(FormatError::Algebra { location, error: AlgebraError::DuplicateLabel(l.clone()) });
                    }
                }
                let lookup = |l: &str, at: Location| {
                    index.get(l).copied().ok_or_else(|| syntax(at, format!("unknown basis label `{l}`")))
                };
                let idem_at = spans.basis.unwrap_or(origin);
                let idempotents = idempotents.iter().map(|l| lookup(l, idem_at)).collect::<Result<Vec<_>, _>>()?;
                let mut table: BTreeMap<(usize, usize), Vec<(usize, T)>> = BTreeMap::new();
                for (pi, p) in products.iter().enumerate() {
                    let (line_at, term_at) = spans.products.get(pi).cloned().unwrap_or((origin, Vec::new()));
                    let key = (lookup(&p.left, line_at)?, lookup(&p.right, line_at)?);
                    if table.contains_key(&key) {
                        return Err(syntax(line_at, format!("product {} * {} given twice", p.left, p.right)));
                    }
                    let mut acc: BTreeMap<usize, T> = BTreeMap::new();
                    for (ti, (c, l)) in p.terms.iter().enumerate() {
                        let at = term_at.get(ti).copied().unwrap_or(line_at);
                        let k = lookup(l, at)?;
                        let c = coeff(c, at)?;
                        let slot = acc.entry(k).or_insert_with(T::zero);
                        *slot = slot.clone() + c;
                    }
                    table.insert(key, acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
                }
                let spec = TableSpec {
                    vertices: self.vertices.clone(),
                    labels: basis.clone(),
                    products: table.into_iter().filter(|(_, v)| !v.is_empty()).map(|((i, j), v)| (i, j, v)).collect(),
                    idempotents,
                };
                Algebra::from_table(spec).map_err(|error| FormatError::Algebra { location: basis_at, error })
            }
        }
    }

    /// The canonical text of the file; parsing it gives back an equal file.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(f) = self.field {
            let _ = writeln!(out, "field {f}");
        }
        let _ = writeln!(out, "vertices {}", self.vertices.join(" "));
        match &self.presentation {
            Presentation::Quiver { arrows, relations, truncation } => {
                for a in arrows {
                    let _ = writeln!(out, "arrow {} {} {}", a.label, self.vertices[a.source], self.vertices[a.target]);
                }
                for r in relations {
                    let terms: Vec<(BigRational, String)> = r.terms.iter().map(|(c, p)| (c.clone(), p.join("*"))).collect();
                    let _ = writeln!(out, "relation {}", write_lincomb(&terms));
                }
                let _ = writeln!(out, "truncation {truncation}");
            }
            Presentation::Table { basis, idempotents, products } => {
                let _ = writeln!(out, "basis {}", basis.join(" "));
                let _ = writeln!(out, "idempotents {}", idempotents.join(" "));
                for p in products {
                    let rhs = if p.terms.is_empty() { "0".to_string() } else { write_lincomb(&p.terms) };
                    let _ = writeln!(out, "product {} * {} = {rhs}", p.left, p.right);
                }
            }
        }
        out
    }
}

impl fmt::Display for AlgebraFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses and builds in one step.
pub fn parse_algebra<T: Scalar>(text: &str) -> Result<Algebra<T>, FormatError> {
    AlgebraFile::parse(text)?.build()
}

/// The canonical table serialization of `algebra`.
pub fn serialize_algebra<T: Scalar>(algebra: &Algebra<T>) -> String {
    AlgebraFile::from_algebra(algebra).to_text()
}

fn write_lincomb(terms: &[(BigRational, String)]) -> String {
    let mut out = String::new();
    for (i, (c, body)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        if !a.is_one() {
            let _ = write!(out, "{a} ");
        }
        out.push_str(body);
    }
    out
}

fn locate_quiver_error(error: &AlgebraError, file: &AlgebraFile, spans: &Spans) -> Option<Location> {
    let relation_start = |r: usize| spans.relations.get(r).map(|(l, _)| *l);
    match error {
        AlgebraError::RelationNotParallel { relation, .. } | AlgebraError::NotAdmissible { relation } => relation_start(*relation),
        AlgebraError::UnknownArrow { relation, label } => {
            let Presentation::Quiver { relations, .. } = &file.presentation else { return None };
            let (_, per_term) = spans.relations.get(*relation)?;
            for (t, (_, path)) in relations[*relation].terms.iter().enumerate() {
                if let Some(k) = path.iter().position(|l| l == label) {
                    return per_term.get(t).and_then(|locs| locs.get(k)).copied();
                }
            }
            relation_start(*relation)
        }
        AlgebraError::InvalidTruncation => spans.truncation,
        AlgebraError::DuplicateLabel(label) => {
            let Presentation::Quiver { arrows, .. } = &file.presentation else { return None };
            let hits: Vec<usize> = arrows.iter().enumerate().filter(|(_, a)| &a.label == label).map(|(i, _)| i).collect();
            match hits.as_slice() {
                [_, second, ..] => spans.arrows.get(*second).copied(),
                [only] => spans.arrows.get(*only).copied(),
                [] => spans.vertices,
            }
        }
        _ => spans.vertices,
    }
}

#[derive(Clone, Debug)]
struct Tok {
    text: String,
    at: Location,
}

fn tokenize(line: &str, line_no: usize) -> Result<Vec<Tok>, FormatError> {
    let mut toks = Vec::new();
    let mut word: Option<(String, usize)> = None;
    for (ci, ch) in line.chars().enumerate() {
        let col = ci + 1;
        if ch.is_ascii_alphanumeric() || matches!(ch, '_' | '.' | '/') {
            word.get_or_insert_with(|| (String::new(), col)).0.push(ch);
            continue;
        }
        if let Some((text, c)) = word.take() {
            toks.push(Tok { text, at: Location { line: line_no, column: c } });
        }
        match ch {
            '*' | '+' | '-' | '=' => toks.push(Tok { text: ch.to_string(), at: Location { line: line_no, column: col } }),
            c if c.is_whitespace() => {}
            c => return Err(syntax(Location { line: line_no, column: col }, format!("unexpected character `{c}`"))),
        }
    }
    if let Some((text, c)) = word {
        toks.push(Tok { text, at: Location { line: line_no, column: c } });
    }
    Ok(toks)
}

fn is_number(s: &str) -> bool {
    let mut parts = s.splitn(2, '/');
    let digits = |p: Option<&str>| p.is_some_and(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()));
    let first = parts.next();
    digits(first) && parts.next().is_none_or(|d| digits(Some(d)))
}

fn is_arrow_label(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_basis_label(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

fn is_vertex_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_number(tok: &Tok) -> Result<BigRational, FormatError> {
    let (n, d) = match tok.text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok.text.as_str(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| syntax(tok.at, "malformed number"))?;
    let d: BigInt = d.parse().map_err(|_| syntax(tok.at, "malformed number"))?;
    if d.is_zero() {
        return Err(syntax(tok.at, "zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

/// One parsed term: coefficient, label tokens, and the term's location.
type RawTerm = (BigRational, Vec<Tok>);

/// `[sign] term {(+|-) term}` where a term is `[number ['*']] label {'*' label}`.
/// With `single`, each term is one label.
fn parse_lincomb(toks: &[Tok], end: Location, single: bool, valid: fn(&str) -> bool) -> Result<Vec<RawTerm>, FormatError> {
    let mut terms = Vec::new();
    let mut i = 0;
    let at = |i: usize| toks.get(i).map_or(end, |t| t.at);
    loop {
        let mut coeff = BigRational::one();
        if let Some(t) = toks.get(i) {
            if t.text == "+" || t.text == "-" {
                if t.text == "-" {
                    coeff = -coeff;
                }
                i += 1;
            } else if !terms.is_empty() {
                return Err(syntax(t.at, "expected `+` or `-`"));
            }
        }
        if let Some(t) = toks.get(i).filter(|t| is_number(&t.text)) {
            coeff *= parse_number(t)?;
            i += 1;
            if toks.get(i).is_some_and(|t| t.text == "*") {
                i += 1;
            }
        }
        let mut labels = Vec::new();
        loop {
            match toks.get(i) {
                Some(t) if valid(&t.text) => labels.push(t.clone()),
                _ => return Err(syntax(at(i), "expected a label")),
            }
            i += 1;
            if single || !toks.get(i).is_some_and(|t| t.text == "*") {
                break;
            }
            i += 1;
        }
        terms.push((coeff, labels));
        if i >= toks.len() {
            return Ok(terms);
        }
    }
}

#[derive(Default)]
struct Parser {
    field: Option<(FieldSpec, Location)>,
    vertices: Option<(Vec<Tok>, Location)>,
    arrows: Vec<(Tok, Tok, Tok)>,
    relations: Vec<(Location, Vec<RawTerm>)>,
    truncation: Option<(usize, Location)>,
    basis: Option<(Vec<Tok>, Location)>,
    idempotents: Option<(Vec<Tok>, Location)>,
    products: Vec<(Location, Tok, Tok, Vec<RawTerm>)>,
    first_quiver: Option<Location>,
    first_table: Option<Location>,
}

fn once<V>(slot: &mut Option<(V, Location)>, value: V, at: Location, keyword: &str) -> Result<(), FormatError> {
    if slot.is_some() {
        return Err(syntax(at, format!("duplicate `{keyword}` statement")));
    }
    *slot = Some((value, at));
    Ok(())
}

impl Parser {
    fn run(mut self, text: &str) -> Result<AlgebraFile, FormatError> {
        let mut last_line = 1;
        for (li, raw) in text.lines().enumerate() {
            let line_no = li + 1;
            last_line = line_no;
            let line = raw.split('#').next().unwrap_or("");
            let toks = tokenize(line, line_no)?;
            let Some((head, rest)) = toks.split_first() else { continue };
            let end = Location { line: line_no, column: line.chars().count() + 1 };
            self.statement(head, rest, end)?;
        }
        self.finish(Location { line: last_line, column: 1 })
    }

    fn statement(&mut self, head: &Tok, rest: &[Tok], end: Location) -> Result<(), FormatError> {
        let at = head.at;
        let quiver_kw = matches!(head.text.as_str(), "arrow" | "relation" | "truncation");
        let table_kw = matches!(head.text.as_str(), "basis" | "idempotents" | "product");
        if quiver_kw {
            self.first_quiver.get_or_insert(at);
        }
        if table_kw {
            self.first_table.get_or_insert(at);
        }
        if let (Some(_), Some(_)) = (self.first_quiver, self.first_table) {
            return Err(syntax(at, "a file uses either quiver statements or a table section, not both"));
        }
        let word_at = |i: usize| rest.get(i).map_or(end, |t| t.at);
        match head.text.as_str() {
            "field" => {
                let [t] = rest else { return Err(syntax(word_at(usize::from(!rest.is_empty())), "expected `field Q` or `field F<prime>`")) };
                let spec = if t.text == "Q" {
                    FieldSpec::Rationals
                } else {
                    t.text
                        .strip_prefix('F')
                        .and_then(|p| p.parse::<u64>().ok())
                        .and_then(FieldSpec::prime)
                        .ok_or_else(|| syntax(t.at, format!("unknown field `{}`", t.text)))?
                };
                once(&mut self.field, spec, at, "field")
            }
            "vertices" => {
                if rest.is_empty() {
                    return Err(syntax(end, "expected at least one vertex name"));
                }
                if let Some(bad) = rest.iter().find(|t| !is_vertex_name(&t.text)) {
                    return Err(syntax(bad.at, format!("invalid vertex name `{}`", bad.text)));
                }
                once(&mut self.vertices, rest.to_vec(), at, "vertices")
            }
            "arrow" => {
                let [label, s, t] = rest else { return Err(syntax(word_at(rest.len().min(3)), "expected `arrow <label> <source> <target>`")) };
                if !is_arrow_label(&label.text) {
                    return Err(syntax(label.at, format!("invalid arrow label `{}`", label.text)));
                }
                self.arrows.push((label.clone(), s.clone(), t.clone()));
                Ok(())
            }
            "relation" => {
                let terms = parse_lincomb(rest, end, false, is_arrow_label)?;
                self.relations.push((rest[0].at, terms));
                Ok(())
            }
            "truncation" => {
                let [t] = rest else { return Err(syntax(word_at(usize::from(!rest.is_empty())), "expected `truncation <L>`")) };
                let l: usize = t.text.parse().map_err(|_| syntax(t.at, "truncation must be a positive integer"))?;
                once(&mut self.truncation, l, at, "truncation")
            }
            "basis" | "idempotents" => {
                if let Some(bad) = rest.iter().find(|t| !is_basis_label(&t.text)) {
                    return Err(syntax(bad.at, format!("invalid basis label `{}`", bad.text)));
                }
                let slot = if head.text == "basis" { &mut self.basis } else { &mut self.idempotents };
                once(slot, rest.to_vec(), at, &head.text)
            }
            "product" => {
                let shape_err = |i: usize| syntax(word_at(i), "expected `product <x> * <y> = <combination>`");
                let (Some(x), Some(star), Some(y), Some(eq)) = (rest.first(), rest.get(1), rest.get(2), rest.get(3)) else {
                    return Err(shape_err(rest.len()));
                };
                if !is_basis_label(&x.text) {
                    return Err(shape_err(0));
                }
                if star.text != "*" {
                    return Err(shape_err(1));
                }
                if !is_basis_label(&y.text) {
                    return Err(shape_err(2));
                }
                if eq.text != "=" {
                    return Err(shape_err(3));
                }
                let rhs = &rest[4..];
                let terms = if let [z] = rhs {
                    if z.text == "0" {
                        Vec::new()
                    } else {
                        parse_lincomb(rhs, end, true, is_basis_label)?
                    }
                } else {
                    parse_lincomb(rhs, end, true, is_basis_label)?
                };
                self.products.push((at, x.clone(), y.clone(), terms));
                Ok(())
            }
            other => Err(syntax(at, format!("unknown statement `{other}`"))),
        }
    }

    fn finish(self, eof: Location) -> Result<AlgebraFile, FormatError> {
        let (vertex_toks, vertices_at) = self.vertices.ok_or_else(|| syntax(eof, "missing `vertices` statement"))?;
        let vertices: Vec<String> = vertex_toks.iter().map(|t| t.text.clone()).collect();
        for (i, t) in vertex_toks.iter().enumerate() {
            if vertices[..i].contains(&t.text) {
                return Err(syntax(t.at, format!("duplicate vertex `{}`", t.text)));
            }
        }
        let mut spans = Spans {
            field: self.field.map(|(_, l)| l),
            vertices: Some(vertices_at),
            truncation: self.truncation.map(|(_, l)| l),
            basis: self.basis.as_ref().map(|(_, l)| *l),
            ..Spans::default()
        };
        let vertex = |t: &Tok| {
            vertices.iter().position(|v| v == &t.text).ok_or_else(|| syntax(t.at, format!("unknown vertex `{}`", t.text)))
        };
        let presentation = if self.first_table.is_some() {
            let (basis, _) = self.basis.ok_or_else(|| syntax(eof, "missing `basis` statement"))?;
            let (idems, idem_at) = self.idempotents.ok_or_else(|| syntax(eof, "missing `idempotents` statement"))?;
            if idems.len() != vertices.len() {
                return Err(syntax(idem_at, format!("expected {} idempotents, one per vertex", vertices.len())));
            }
            spans.basis_labels = basis.iter().map(|t| t.at).collect();
            spans.products = self.products.iter().map(|(l, _, _, terms)| (*l, terms.iter().map(|(_, ls)| ls[0].at).collect())).collect();
            Presentation::Table {
                basis: basis.into_iter().map(|t| t.text).collect(),
                idempotents: idems.into_iter().map(|t| t.text).collect(),
                products: self
                    .products
                    .into_iter()
                    .map(|(_, x, y, terms)| ProductLine {
                        left: x.text,
                        right: y.text,
                        terms: terms.into_iter().map(|(c, mut ls)| (c, ls.remove(0).text)).collect(),
                    })
                    .collect(),
            }
        } else {
            let (truncation, _) = self.truncation.ok_or_else(|| syntax(eof, "missing `truncation` statement"))?;
            let mut arrows = Vec::with_capacity(self.arrows.len());
            for (label, s, t) in &self.arrows {
                arrows.push(Arrow { label: label.text.clone(), source: vertex(s)?, target: vertex(t)? });
                spans.arrows.push(label.at);
            }
            spans.relations = self
                .relations
                .iter()
                .map(|(l, terms)| (*l, terms.iter().map(|(_, ls)| ls.iter().map(|t| t.at).collect()).collect()))
                .collect();
            Presentation::Quiver {
                arrows,
                relations: self
                    .relations
                    .into_iter()
                    .map(|(_, terms)| LinComb {
                        terms: terms.into_iter().map(|(c, ls)| (c, ls.into_iter().map(|t| t.text).collect())).collect(),
                    })
                    .collect(),
                truncation,
            }
        };
        Ok(AlgebraFile { field: self.field.map(|(f, _)| f), vertices, presentation, spans: Some(spans) })
    }
}

/// The A2 quiver `1 -> 2` as a file, used by the examples and the CLI docs.
pub fn a2_text() -> &'static str {
    "field F5\nvertices 1 2\narrow a 1 2\ntruncation 2\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::F5;

    #[test]
    fn a2_file_builds_a2() {
        let a: Algebra<F5> = parse_algebra(a2_text()).unwrap();
        assert_eq!(a, examples::a2());
    }

    #[test]
    fn comments_blank_lines_and_relations() {
        let text = "# A3 with a relation\nfield F5\n\nvertices 1 2 3\narrow a 1 2   # first\narrow b 2 3\nrelation a*b\ntruncation 3\n";
        let a: Algebra<F5> = parse_algebra(text).unwrap();
        assert_eq!(a, examples::a3_with_relation());
    }

    #[test]
    fn non_composable_relation_is_located() {
        let text = "vertices 1 2 3\narrow a 1 2\narrow b 1 3\nrelation a*b\ntruncation 3\n";
        let err = parse_algebra::<F5>(text).unwrap_err();
        match err {
            FormatError::Algebra { location, error: AlgebraError::RelationNotParallel { relation: 0, .. } } => {
                assert_eq!(location, Location { line: 4, column: 10 });
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_arrow_points_at_label() {
        let text = "vertices 1 2\narrow a 1 2\nrelation a*zz\ntruncation 3\n";
        let err = parse_algebra::<F5>(text).unwrap_err();
        assert_eq!(err.location(), Location { line: 3, column: 12 });
    }

    #[test]
    fn syntax_errors_carry_columns() {
        let err = AlgebraFile::parse("vertices 1 2\narrow a 1 2 3\n").unwrap_err();
        assert_eq!(err.location(), Location { line: 2, column: 13 });
        let err = AlgebraFile::parse("vertices 1 ; 2\n").unwrap_err();
        assert_eq!(err.location(), Location { line: 1, column: 12 });
        let err = AlgebraFile::parse("vertices 1\nfield F6\ntruncation 2\n").unwrap_err();
        assert_eq!(err.location(), Location { line: 2, column: 7 });
        let err = AlgebraFile::parse("vertices 1\narrow a 1 7\ntruncation 2\n").unwrap_err();
        assert_eq!(err.location(), Location { line: 2, column: 11 });
    }

    #[test]
    fn mixing_presentations_is_rejected() {
        let err = AlgebraFile::parse("vertices 1\nbasis e_1\narrow a 1 1\n").unwrap_err();
        assert_eq!(err.location().line, 3);
    }

    #[test]
    fn table_section_for_dual_numbers() {
        let text = "field F5\nvertices 1\nbasis e_1 x\nidempotents e_1\nproduct e_1 * e_1 = e_1\nproduct e_1 * x = x\nproduct x * e_1 = x\nproduct x * x = 0\n";
        let a: Algebra<F5> = parse_algebra(text).unwrap();
        assert_eq!(a, examples::dual_numbers());
    }

    #[test]
    fn non_associative_table_is_located_at_basis() {
        let text = "vertices 1\nbasis e_1 x\nidempotents e_1\nproduct e_1 * e_1 = e_1\nproduct e_1 * x = x\nproduct x * e_1 = x\nproduct x * x = e_1\n";
        let err = parse_algebra::<F5>(text).unwrap_err();
        assert!(matches!(err, FormatError::Algebra { location: Location { line: 2, .. }, .. }), "{err:?}");
    }

    #[test]
    fn coefficients_round_trip() {
        let text = "field Q\nvertices 1 2\narrow a 1 2\narrow b 1 2\narrow c 2 2\nrelation -a*c + 3/2 b*c - b*c*c\nrelation 2*c*c\ntruncation 4\n";
        let file = AlgebraFile::parse(text).unwrap();
        let canon = file.to_text();
        assert_eq!(canon, "field Q\nvertices 1 2\narrow a 1 2\narrow b 1 2\narrow c 2 2\nrelation -a*c + 3/2 b*c - b*c*c\nrelation 2 c*c\ntruncation 4\n");
        assert_eq!(AlgebraFile::parse(&canon).unwrap(), file);
        assert!(file.build::<crate::Q>().is_ok());
    }

    #[test]
    fn vanishing_denominator_is_an_error() {
        let text = "vertices 1\narrow c 1 1\nrelation c*c - 1/5 c*c*c\ntruncation 4\n";
        let err = parse_algebra::<F5>(text).unwrap_err();
        assert_eq!(err.location(), Location { line: 3, column: 20 });
    }

    #[test]
    fn field_mismatch() {
        let err = parse_algebra::<F5>("field F7\nvertices 1\ntruncation 1\n").unwrap_err();
        assert!(matches!(err, FormatError::FieldMismatch { .. }));
    }

    #[test]
    fn table_serialization_round_trips_algebras() {
        for a in [examples::a2::<F5>(), examples::a3_with_relation(), examples::cyclic_two_vertex(), examples::dual_numbers()] {
            let text = serialize_algebra(&a);
            let b: Algebra<F5> = parse_algebra(&text).unwrap();
            assert_eq!(a, b);
            assert_eq!(serialize_algebra(&b), text);
        }
    }
}
