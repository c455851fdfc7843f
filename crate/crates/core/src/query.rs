//! `SELECT ... WHERE { ... }` queries over basic graph patterns.
//!
//! Grammar:
//!
//! ```text
//! query   := SELECT var+ WHERE '{' (term term term '.')+ '}'
//! term    := ?name | <curie-or-iri> | label:local | "lexical"[^^datatype] | _:label
//! ```
//!
//! Inside angle brackets, text whose part before the first `:` is a known
//! prefix label is expanded as a compact IRI; anything else is a full IRI.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::error::{QueryError, TermError};
use crate::prefix::PrefixMap;
use crate::reasoner::SameAsPartition;
use crate::store::{Graph, IdPattern, IndexKind, TermId};
use crate::syntax::serialize_term;
use crate::term::{Blank, Iri, Literal, Slot, Term, TriplePattern, Variable};

/// Default cap on `|g|^k` for [`evaluate_naive`].
pub const DEFAULT_ORACLE_BUDGET: u128 = 1_000_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    select: Vec<Variable>,
    bgp: Vec<TriplePattern>,
}

impl Query {
    pub fn new(select: Vec<Variable>, bgp: Vec<TriplePattern>) -> Result<Self, QueryError> {
        if select.is_empty() {
            return Err(syntax(1, 1, "SELECT needs at least one variable"));
        }
        if bgp.is_empty() {
            return Err(syntax(1, 1, "WHERE needs at least one triple pattern"));
        }
        if let Some(v) = select
            .iter()
            .find(|v| !bgp.iter().any(|p| p.variables().any(|pv| pv == *v)))
        {
            return Err(QueryError::UnboundSelectVariable(v.to_string()));
        }
        Ok(Query { select, bgp })
    }

    pub fn select(&self) -> &[Variable] {
        &self.select
    }

    pub fn bgp(&self) -> &[TriplePattern] {
        &self.bgp
    }

    /// Same query with its patterns reordered; `order` must be a permutation.
    pub fn permuted(&self, order: &[usize]) -> Query {
        Query {
            select: self.select.clone(),
            bgp: order.iter().map(|&i| self.bgp[i].clone()).collect(),
        }
    }

    /// All variables in order of first appearance in the pattern list.
    pub fn variables(&self) -> Vec<Variable> {
        let mut seen = Vec::new();
        for v in self.bgp.iter().flat_map(|p| p.variables()) {
            if !seen.contains(v) {
                seen.push(v.clone());
            }
        }
        seen
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> QueryError {
    QueryError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Word(String),
    Var(String),
    Bracketed(String),
    Name(String),
    Literal(String, Option<Box<Token>>),
    Blank(String),
    LBrace,
    RBrace,
    Dot,
}

#[derive(Clone, Debug)]
struct Spanned {
    token: Token,
    line: usize,
    column: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while let Some(&c) = self.chars.peek() {
            if !f(c) {
                break;
            }
            out.push(c);
            self.bump();
        }
        out
    }

    fn iri_ref(&mut self) -> Result<String, QueryError> {
        let (line, column) = (self.line, self.column);
        self.bump();
        let body = self.take_while(|c| c != '>' && c != '\n');
        if self.bump() != Some('>') {
            return Err(syntax(line, column, "unterminated '<'"));
        }
        Ok(body)
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, QueryError> {
        let mut out = Vec::new();
        loop {
            self.take_while(char::is_whitespace);
            let (line, column) = (self.line, self.column);
            let Some(&c) = self.chars.peek() else {
                return Ok(out);
            };
            let token = match c {
                '{' => {
                    self.bump();
                    Token::LBrace
                }
                '}' => {
                    self.bump();
                    Token::RBrace
                }
                '.' => {
                    self.bump();
                    Token::Dot
                }
                '<' => Token::Bracketed(self.iri_ref()?),
                '?' => {
                    self.bump();
                    Token::Var(self.take_while(|c| c.is_alphanumeric() || c == '_'))
                }
                '"' => {
                    self.bump();
                    let mut lexical = String::new();
                    loop {
                        match self.bump() {
                            None => {
                                return Err(syntax(line, column, "unterminated string literal"))
                            }
                            Some('"') => break,
                            Some('\\') => match self.bump() {
                                Some('"') => lexical.push('"'),
                                Some('\\') => lexical.push('\\'),
                                Some('n') => lexical.push('\n'),
                                Some('t') => lexical.push('\t'),
                                Some('r') => lexical.push('\r'),
                                _ => {
                                    return Err(syntax(
                                        self.line,
                                        self.column,
                                        "bad escape sequence",
                                    ))
                                }
                            },
                            Some(c) => lexical.push(c),
                        }
                    }
                    let datatype = if self.chars.peek() == Some(&'^') {
                        self.bump();
                        if self.bump() != Some('^') {
                            return Err(syntax(self.line, self.column, "expected '^^'"));
                        }
                        let dt = match self.chars.peek() {
                            Some('<') => Token::Bracketed(self.iri_ref()?),
                            _ => Token::Name(self.take_while(Self::name_token_char)),
                        };
                        Some(Box::new(dt))
                    } else {
                        None
                    };
                    Token::Literal(lexical, datatype)
                }
                '_' => {
                    let word = self.take_while(Self::name_token_char);
                    match word.strip_prefix("_:") {
                        Some(label) => Token::Blank(label.to_owned()),
                        None => Token::Word(word),
                    }
                }
                _ => {
                    let word = self.take_while(Self::name_token_char);
                    if word.is_empty() {
                        return Err(syntax(line, column, format!("unexpected character {c:?}")));
                    }
                    if word.contains(':') {
                        Token::Name(word)
                    } else {
                        Token::Word(word)
                    }
                }
            };
            out.push(Spanned {
                token,
                line,
                column,
            });
        }
    }

    fn name_token_char(c: char) -> bool {
        !c.is_whitespace() && !matches!(c, '{' | '}' | '<' | '>' | '"' | '.')
    }
}

struct Parser<'p> {
    tokens: Vec<Spanned>,
    pos: usize,
    prefixes: &'p PrefixMap,
    end: (usize, usize),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Spanned> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |s| (s.line, s.column))
    }

    fn error(&self, message: impl Into<String>) -> QueryError {
        let (line, column) = self.here();
        syntax(line, column, message)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn keyword(&mut self, kw: &str) -> Result<(), QueryError> {
        match self.peek() {
            Some(Spanned {
                token: Token::Word(w),
                ..
            }) if w.eq_ignore_ascii_case(kw) => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected {kw}"))),
        }
    }

    fn expect(&mut self, token: Token, what: &str) -> Result<(), QueryError> {
        if self.peek().map(|s| &s.token) == Some(&token) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn term_error(at: &Spanned, source: TermError) -> QueryError {
        QueryError::Term {
            line: at.line,
            column: at.column,
            source,
        }
    }

    fn bracketed_iri(&self, body: &str) -> Result<Iri, TermError> {
        match body.split_once(':') {
            Some((label, _)) if self.prefixes.contains_label(label) => self.prefixes.expand(body),
            _ => Iri::new(body),
        }
    }

    fn iri_token(&self, at: &Spanned, token: &Token) -> Result<Iri, QueryError> {
        match token {
            Token::Bracketed(body) => self.bracketed_iri(body),
            Token::Name(name) => self.prefixes.expand(name),
            _ => return Err(syntax(at.line, at.column, "expected an IRI")),
        }
        .map_err(|e| Self::term_error(at, e))
    }

    fn slot(&mut self) -> Result<Slot, QueryError> {
        let Some(at) = self.next() else {
            return Err(syntax(self.end.0, self.end.1, "unexpected end of query"));
        };
        let term = match &at.token {
            Token::Var(name) => {
                return Variable::new(name)
                    .map(Slot::Var)
                    .map_err(|e| Self::term_error(&at, e))
            }
            Token::Bracketed(_) | Token::Name(_) => Term::Iri(self.iri_token(&at, &at.token)?),
            Token::Literal(lexical, None) => Term::Literal(Literal::string(lexical)),
            Token::Literal(lexical, Some(dt)) => {
                let datatype = self.iri_token(&at, dt)?;
                Term::Literal(
                    Literal::new(lexical, &datatype).map_err(|e| Self::term_error(&at, e))?,
                )
            }
            Token::Blank(label) => {
                Term::Blank(Blank::new(label).map_err(|e| Self::term_error(&at, e))?)
            }
            _ => {
                return Err(syntax(
                    at.line,
                    at.column,
                    "expected a variable, IRI or literal",
                ))
            }
        };
        Ok(Slot::Term(term))
    }
}

/// Parses query text, expanding compact IRIs through `prefixes`.
pub fn parse_query(text: &str, prefixes: &PrefixMap) -> Result<Query, QueryError> {
    let tokens = Lexer::new(text).tokens()?;
    let end = text
        .lines()
        .enumerate()
        .last()
        .map_or((1, 1), |(i, l)| (i + 1, l.chars().count() + 1));
    let mut p = Parser {
        tokens,
        pos: 0,
        prefixes,
        end,
    };
    p.keyword("SELECT")?;
    let mut select = Vec::new();
    while let Some(Spanned {
        token: Token::Var(name),
        ..
    }) = p.peek().cloned()
    {
        let v = Variable::new(&name).map_err(|e| Parser::term_error(p.peek().unwrap(), e))?;
        if select.contains(&v) {
            return Err(p.error(format!("variable {v} selected twice")));
        }
        select.push(v);
        p.pos += 1;
    }
    if select.is_empty() {
        return Err(p.error("expected at least one ?variable after SELECT"));
    }
    p.keyword("WHERE")?;
    p.expect(Token::LBrace, "'{'")?;
    let mut bgp = Vec::new();
    loop {
        if p.peek().map(|s| &s.token) == Some(&Token::RBrace) {
            if bgp.is_empty() {
                return Err(p.error("expected at least one triple pattern"));
            }
            p.pos += 1;
            break;
        }
        let s = p.slot()?;
        let pr = p.slot()?;
        let o = p.slot()?;
        p.expect(Token::Dot, "'.' after triple pattern")?;
        bgp.push(TriplePattern::new(s, pr, o));
    }
    if p.peek().is_some() {
        return Err(p.error("unexpected input after '}'"));
    }
    Query::new(select, bgp)
}

/// Result of evaluating a query: a header and a duplicate-free set of rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BindingTable {
    header: Vec<Variable>,
    rows: Vec<Vec<Term>>,
}

impl BindingTable {
    /// Builds a table; rows are sorted and deduplicated.
    pub fn new(header: Vec<Variable>, rows: impl IntoIterator<Item = Vec<Term>>) -> Self {
        let mut rows: Vec<Vec<Term>> = rows.into_iter().collect();
        debug_assert!(rows.iter().all(|r| r.len() == header.len()));
        rows.sort();
        rows.dedup();
        BindingTable { header, rows }
    }

    pub fn header(&self) -> &[Variable] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<Term>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row_set(&self) -> HashSet<Vec<Term>> {
        self.rows.iter().cloned().collect()
    }

    fn rendered_rows(&self, prefixes: &PrefixMap) -> Vec<Vec<String>> {
        let mut cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|t| serialize_term(t, prefixes)).collect())
            .collect();
        cells.sort();
        cells
    }

    /// ASCII table: rule, header, rule, rows, rule. Rows are ordered by their
    /// rendered cells, first column first.
    pub fn render_table(&self, prefixes: &PrefixMap) -> String {
        let header: Vec<String> = self.header.iter().map(|v| v.to_string()).collect();
        let rows = self.rendered_rows(prefixes);
        let widths: Vec<usize> = (0..header.len())
            .map(|c| {
                rows.iter()
                    .map(|r| r[c].chars().count())
                    .chain(std::iter::once(header[c].chars().count()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line_width = 1 + widths.iter().map(|w| w + 3).sum::<usize>();
        let rule = "-".repeat(line_width);
        let format_row = |cells: &[String]| {
            let mut line = String::from("|");
            for (cell, w) in cells.iter().zip(&widths) {
                let _ = write!(line, " {cell:<w$} |");
            }
            line
        };
        let mut out = String::new();
        out.push_str(&rule);
        out.push('\n');
        out.push_str(&format_row(&header));
        out.push('\n');
        out.push_str(&rule);
        out.push('\n');
        for row in &rows {
            out.push_str(&format_row(row));
            out.push('\n');
        }
        out.push_str(&rule);
        out.push('\n');
        out
    }

    /// Tab-separated values with a `?var` header line.
    pub fn render_tsv(&self, prefixes: &PrefixMap) -> String {
        let mut out = self
            .header
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("\t");
        out.push('\n');
        for row in self.rendered_rows(prefixes) {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }
}

/// One step of an execution plan.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanStep {
    /// Position of the pattern in the query's WHERE clause.
    pub pattern: usize,
    /// Index used when the step runs, given variables bound by earlier steps.
    pub index: IndexKind,
    /// Stand-alone match count used to order the step.
    pub estimate: usize,
    /// `estimate / |g|`, or 0 for an empty graph.
    pub selectivity: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Plan {
    pub steps: Vec<PlanStep>,
}

impl Plan {
    pub fn order(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.pattern).collect()
    }
}

fn as_wildcards(p: &TriplePattern) -> TriplePattern {
    let open = |s: &Slot| match s {
        Slot::Var(_) => Slot::Any,
        other => other.clone(),
    };
    TriplePattern::new(open(&p.subject), open(&p.predicate), open(&p.object))
}

/// Greedy plan: repeatedly take the remaining pattern with the smallest
/// match count, variables counted as wildcards; ties keep textual order.
pub fn plan(q: &Query, g: &Graph) -> Plan {
    let estimates: Vec<usize> = q.bgp.iter().map(|p| g.count(&as_wildcards(p))).collect();
    let mut remaining: Vec<usize> = (0..q.bgp.len()).collect();
    let mut bound: HashSet<&Variable> = HashSet::new();
    let mut steps = Vec::with_capacity(q.bgp.len());
    while !remaining.is_empty() {
        let (pos, &chosen) = remaining
            .iter()
            .enumerate()
            .min_by_key(|&(_, &i)| (estimates[i], i))
            .expect("non-empty");
        remaining.remove(pos);
        let pattern = &q.bgp[chosen];
        let is_bound = |s: &Slot| match s {
            Slot::Term(_) => true,
            Slot::Var(v) => bound.contains(v),
            Slot::Any => false,
        };
        let index = IndexKind::for_bound(
            is_bound(&pattern.subject),
            is_bound(&pattern.predicate),
            is_bound(&pattern.object),
        );
        bound.extend(pattern.variables());
        let total = g.len();
        steps.push(PlanStep {
            pattern: chosen,
            index,
            estimate: estimates[chosen],
            selectivity: if total == 0 {
                0.0
            } else {
                estimates[chosen] as f64 / total as f64
            },
        });
    }
    Plan { steps }
}

#[derive(Clone, Copy, Debug)]
enum Compiled {
    Const(TermId),
    Var(usize),
    Any,
}

struct Executor<'a> {
    graph: &'a Graph,
    partition: Option<&'a SameAsPartition>,
    steps: Vec<[Compiled; 3]>,
    projection: Vec<usize>,
    bindings: Vec<Option<TermId>>,
    rows: HashSet<Vec<TermId>>,
}

impl Executor<'_> {
    fn canonical(&self, id: TermId) -> TermId {
        self.partition.map_or(id, |p| p.canonical_id(id))
    }

    fn run(&mut self, depth: usize) {
        if depth == self.steps.len() {
            let row = self
                .projection
                .iter()
                .map(|&v| self.bindings[v].expect("projected variables are bound"))
                .collect();
            self.rows.insert(row);
            return;
        }
        let step = self.steps[depth];
        let fixed: [Option<TermId>; 3] = step.map(|c| match c {
            Compiled::Const(id) => Some(id),
            Compiled::Var(v) => self.bindings[v],
            Compiled::Any => None,
        });
        // under sameAs, a bound slot matches any member of its class
        let partition = self.partition;
        let expand = |slot: &Option<TermId>| -> Vec<Option<TermId>> {
            match (slot, partition) {
                (Some(id), Some(p)) => p.members(id).iter().map(|&m| Some(m)).collect(),
                (slot, _) => vec![*slot],
            }
        };
        let [ss, ps, os] = [expand(&fixed[0]), expand(&fixed[1]), expand(&fixed[2])];
        for &s in &ss {
            for &p in &ps {
                for &o in &os {
                    let pattern: IdPattern = [s, p, o];
                    let graph = self.graph;
                    for triple in graph.match_ids(pattern) {
                        self.bind_and_recurse(depth, step, triple);
                    }
                }
            }
        }
    }

    fn bind_and_recurse(&mut self, depth: usize, step: [Compiled; 3], triple: [TermId; 3]) {
        let mut newly_bound: [Option<usize>; 3] = [None; 3];
        let mut ok = true;
        for (i, slot) in step.iter().enumerate() {
            if let Compiled::Var(v) = *slot {
                let value = self.canonical(triple[i]);
                match self.bindings[v] {
                    None => {
                        self.bindings[v] = Some(value);
                        newly_bound[i] = Some(v);
                    }
                    Some(existing) if existing == value => {}
                    Some(_) => {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if ok {
            self.run(depth + 1);
        }
        for v in newly_bound.into_iter().flatten() {
            self.bindings[v] = None;
        }
    }
}

/// Evaluates `q` with an index nested-loop join in [`plan`] order.
pub fn evaluate(q: &Query, g: &Graph) -> BindingTable {
    evaluate_with(q, g, None)
}

/// Like [`evaluate`], but when a partition is given every term is compared
/// through its sameAs representative and results report representatives.
pub fn evaluate_with(q: &Query, g: &Graph, partition: Option<&SameAsPartition>) -> BindingTable {
    let variables = q.variables();
    let var_index: HashMap<&Variable, usize> =
        variables.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let empty = || BindingTable::new(q.select.clone(), std::iter::empty());

    let order = plan(q, g).order();
    let mut steps = Vec::with_capacity(order.len());
    for &i in &order {
        let pattern = &q.bgp[i];
        let mut compiled = [Compiled::Any; 3];
        for (slot, out) in pattern.slots().into_iter().zip(compiled.iter_mut()) {
            *out = match slot {
                Slot::Var(v) => Compiled::Var(var_index[v]),
                Slot::Any => Compiled::Any,
                Slot::Term(t) => match g.id_of(t) {
                    Some(id) => Compiled::Const(id),
                    None => return empty(),
                },
            };
        }
        steps.push(compiled);
    }

    let mut exec = Executor {
        graph: g,
        partition,
        steps,
        projection: q.select.iter().map(|v| var_index[v]).collect(),
        bindings: vec![None; variables.len()],
        rows: HashSet::new(),
    };
    exec.run(0);
    BindingTable::new(
        q.select.clone(),
        exec.rows
            .into_iter()
            .map(|row| row.into_iter().map(|id| g.term(id).clone()).collect()),
    )
}

/// Reference evaluator: tries every assignment of stored triples to the
/// patterns, in textual order, rejecting a partial assignment as soon as a
/// pattern fails to unify. Fails if `|g|^k` exceeds `budget`.
pub fn evaluate_naive(
    q: &Query,
    g: &Graph,
    partition: Option<&SameAsPartition>,
    budget: u128,
) -> Result<BindingTable, QueryError> {
    let k = u32::try_from(q.bgp.len()).unwrap_or(u32::MAX);
    let size = (g.len() as u128).saturating_pow(k);
    if size > budget {
        return Err(QueryError::InstanceTooLarge { size, budget });
    }
    let canon = |t: &Term| -> Term {
        match partition {
            Some(p) => p.canonical(g, t),
            None => t.clone(),
        }
    };
    let triples: Vec<[Term; 3]> = g
        .iter()
        .map(|t| {
            [
                canon(t.subject),
                canon(&Term::Iri(t.predicate.clone())),
                canon(t.object),
            ]
        })
        .collect();
    let patterns: Vec<[Slot; 3]> = q
        .bgp
        .iter()
        .map(|p| {
            let c = |s: &Slot| match s {
                Slot::Term(t) => Slot::Term(canon(t)),
                other => other.clone(),
            };
            [c(&p.subject), c(&p.predicate), c(&p.object)]
        })
        .collect();

    fn unify(
        pattern: &[Slot; 3],
        triple: &[Term; 3],
        bindings: &mut HashMap<Variable, Term>,
    ) -> Option<Vec<Variable>> {
        let mut added = Vec::new();
        for (slot, term) in pattern.iter().zip(triple) {
            let ok = match slot {
                Slot::Any => true,
                Slot::Term(t) => t == term,
                Slot::Var(v) => match bindings.get(v) {
                    Some(bound) => bound == term,
                    None => {
                        bindings.insert(v.clone(), term.clone());
                        added.push(v.clone());
                        true
                    }
                },
            };
            if !ok {
                for v in &added {
                    bindings.remove(v);
                }
                return None;
            }
        }
        Some(added)
    }

    fn search(
        depth: usize,
        patterns: &[[Slot; 3]],
        triples: &[[Term; 3]],
        bindings: &mut HashMap<Variable, Term>,
        select: &[Variable],
        rows: &mut Vec<Vec<Term>>,
    ) {
        if depth == patterns.len() {
            rows.push(select.iter().map(|v| bindings[v].clone()).collect());
            return;
        }
        for triple in triples {
            if let Some(added) = unify(&patterns[depth], triple, bindings) {
                search(depth + 1, patterns, triples, bindings, select, rows);
                for v in added {
                    bindings.remove(&v);
                }
            }
        }
    }

    let mut rows = Vec::new();
    search(
        0,
        &patterns,
        &triples,
        &mut HashMap::new(),
        &q.select,
        &mut rows,
    );
    Ok(BindingTable::new(q.select.clone(), rows))
}
