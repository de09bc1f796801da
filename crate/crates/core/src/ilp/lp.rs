//! CPLEX LP text: writer and a parser for the subset the writer produces.
//!
//! The objective constant has no place in the format; it is written as the
//! comment `\ objective constant: <decimal>` and picked up again by
//! [`parse_lp`].

use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use super::{Constraint, Domain, IlpError, IlpModel, LinearProgram, Sense, Variable};
use crate::numeric::{format_decimal, parse_decimal, Rational};

const TERMS_PER_LINE: usize = 8;
const CONSTANT_TAG: &str = "objective constant:";

fn write_expr(out: &mut String, lp: &LinearProgram, terms: &[(usize, Rational)]) {
    for (k, (v, c)) in terms.iter().enumerate() {
        if k > 0 && k % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        let mag = c.abs();
        if k == 0 {
            if c.is_negative() {
                out.push_str(" -");
            }
        } else {
            let _ = write!(out, " {sign}");
        }
        if !mag.is_one() {
            let _ = write!(out, " {}", format_decimal(&mag));
        }
        let _ = write!(out, " {}", lp.variables[*v].name);
    }
}

/// Renders the model as LP text, with comments mapping each variable to the
/// diagram element it stands for.
pub fn emit_lp(m: &IlpModel) -> String {
    let lp = &m.lp;
    let mut out = String::new();
    let mode = match m.mode {
        super::Mode::Weighted => "weighted",
        super::Mode::Unweighted => "unweighted",
    };
    let _ = writeln!(out, "\\ family-free DCJ-indel distance, {mode}");
    let _ = writeln!(out, "\\ {} {}", CONSTANT_TAG, format_decimal(&lp.constant));
    for (v, note) in m.notes.iter().enumerate() {
        let _ = writeln!(out, "\\ {} {}", lp.variables[v].name, note);
    }
    out.push_str(&emit_program(lp));
    out
}

/// LP text of a bare program (no variable comments).
pub fn emit_program(lp: &LinearProgram) -> String {
    let mut out = String::new();
    out.push_str("Minimize\n obj:");
    if lp.objective.is_empty() {
        if !lp.variables.is_empty() {
            let _ = write!(out, " 0 {}", lp.variables[0].name);
        }
    } else {
        write_expr(&mut out, lp, &lp.objective);
    }
    out.push_str("\nSubject To\n");
    for c in &lp.constraints {
        let _ = write!(out, " {}:", c.name);
        if c.terms.is_empty() {
            let _ = write!(out, " 0 {}", lp.variables[0].name);
        } else {
            write_expr(&mut out, lp, &c.terms);
        }
        let op = match c.sense {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        };
        let _ = writeln!(out, " {} {}", op, format_decimal(&c.rhs));
    }
    let generals: Vec<&Variable> = lp
        .variables
        .iter()
        .filter(|v| matches!(v.domain, Domain::Integer { .. }))
        .collect();
    if !generals.is_empty() {
        out.push_str("Bounds\n");
        for v in &generals {
            let (lo, hi) = v.domain.bounds();
            let _ = writeln!(out, " {} <= {} <= {}", lo, v.name, hi);
        }
    }
    let write_list = |out: &mut String, title: &str, vars: &[&Variable]| {
        if vars.is_empty() {
            return;
        }
        let _ = writeln!(out, "{title}");
        for chunk in vars.chunks(TERMS_PER_LINE * 2) {
            let names: Vec<&str> = chunk.iter().map(|v| v.name.as_str()).collect();
            let _ = writeln!(out, " {}", names.join(" "));
        }
    };
    let binaries: Vec<&Variable> = lp.variables.iter().filter(|v| v.domain == Domain::Binary).collect();
    write_list(&mut out, "Binaries", &binaries);
    write_list(&mut out, "Generals", &generals);
    out.push_str("End\n");
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Plus,
    Minus,
    Colon,
    Op(Sense),
}

fn tokenize(line: &str, line_no: usize, out: &mut Vec<(Tok, usize)>) -> Result<(), IlpError> {
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        match c {
            '+' => out.push((Tok::Plus, line_no)),
            '-' => out.push((Tok::Minus, line_no)),
            ':' => out.push((Tok::Colon, line_no)),
            '<' | '>' | '=' => {
                let next = chars.get(i + 1).copied();
                let sense = match (c, next) {
                    ('<', Some('=')) | ('=', Some('<')) => Some(Sense::Le),
                    ('>', Some('=')) | ('=', Some('>')) => Some(Sense::Ge),
                    _ => None,
                };
                match sense {
                    Some(s) => {
                        out.push((Tok::Op(s), line_no));
                        i += 1;
                    }
                    None => out.push((
                        Tok::Op(match c {
                            '<' => Sense::Le,
                            '>' => Sense::Ge,
                            _ => Sense::Eq,
                        }),
                        line_no,
                    )),
                }
            }
            _ => {
                let start = i;
                while i < chars.len() && !chars[i].is_whitespace() && !"+-:<>=".contains(chars[i]) {
                    i += 1;
                }
                out.push((Tok::Word(chars[start..i].iter().collect()), line_no));
                continue;
            }
        }
        i += 1;
    }
    Ok(())
}

fn is_number(w: &str) -> bool {
    w.starts_with(|c: char| c.is_ascii_digit() || c == '.')
}

struct Cursor<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    last_line: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|(t, _)| t)
    }

    fn line(&self) -> usize {
        self.toks.get(self.pos).map_or(self.last_line, |(_, l)| *l)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn err(&self, message: impl Into<String>) -> IlpError {
        IlpError::Parse {
            line: self.line(),
            message: message.into(),
        }
    }

    fn number(&self, w: &str) -> Result<Rational, IlpError> {
        parse_decimal(w).map_err(|_| self.err(format!("bad number `{w}`")))
    }

    /// `[name :]` prefix.
    fn label(&mut self) -> Option<String> {
        if let (Some(Tok::Word(w)), Some(Tok::Colon)) = (self.peek(), self.peek2()) {
            let w = w.clone();
            self.pos += 2;
            return Some(w);
        }
        None
    }

    /// Linear expression up to a comparison operator or the end.
    fn expr(&mut self, names: &mut Names) -> Result<Vec<(String, Rational)>, IlpError> {
        let mut terms = Vec::new();
        loop {
            let mut sign = Rational::one();
            let mut signed = false;
            while let Some(Tok::Plus | Tok::Minus) = self.peek() {
                if self.next() == Some(Tok::Minus) {
                    sign = -sign;
                }
                signed = true;
            }
            let coef = match self.peek() {
                Some(Tok::Word(w)) if is_number(w) => {
                    let c = self.number(&w.clone())?;
                    self.pos += 1;
                    c
                }
                _ => Rational::one(),
            };
            match self.peek() {
                Some(Tok::Word(w)) if !is_number(w) => {
                    names.see(w);
                    terms.push((w.clone(), sign * coef));
                    self.pos += 1;
                }
                _ if signed || !terms.is_empty() && coef != Rational::one() => {
                    return Err(self.err("expected a variable name"));
                }
                _ => return Ok(terms),
            }
            if !matches!(self.peek(), Some(Tok::Plus | Tok::Minus)) {
                return Ok(terms);
            }
        }
    }

    fn signed_number(&mut self) -> Result<Rational, IlpError> {
        let mut sign = Rational::one();
        while let Some(Tok::Plus | Tok::Minus) = self.peek() {
            if self.next() == Some(Tok::Minus) {
                sign = -sign;
            }
        }
        match self.next() {
            Some(Tok::Word(w)) if is_number(&w) => Ok(sign * self.number(&w)?),
            _ => Err(self.err("expected a number")),
        }
    }
}

#[derive(Default)]
struct Names {
    order: Vec<String>,
}

impl Names {
    fn see(&mut self, w: &str) {
        if !self.order.iter().any(|n| n == w) {
            self.order.push(w.to_string());
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Preamble,
    Objective,
    Constraints,
    Bounds,
    Binaries,
    Generals,
    End,
}

fn section_of(line: &str) -> Option<Section> {
    match line.trim().to_ascii_lowercase().as_str() {
        "minimize" | "minimise" | "min" => Some(Section::Objective),
        "subject to" | "such that" | "st" | "s.t." => Some(Section::Constraints),
        "bounds" | "bound" => Some(Section::Bounds),
        "binaries" | "binary" | "bin" => Some(Section::Binaries),
        "generals" | "general" | "gen" => Some(Section::Generals),
        "end" => Some(Section::End),
        _ => None,
    }
}

/// Reads back LP text produced by [`emit_lp`] (and hand-written files in the
/// same subset: minimization, linear rows, finite integer bounds, binary
/// and general integer declarations).
pub fn parse_lp(text: &str) -> Result<LinearProgram, IlpError> {
    let mut section = Section::Preamble;
    let mut toks: HashMap<u8, Vec<(Tok, usize)>> = HashMap::new();
    let mut bound_lines: Vec<(usize, String)> = Vec::new();
    let mut binaries: Vec<String> = Vec::new();
    let mut generals: Vec<String> = Vec::new();
    let mut constant = Rational::zero();
    let mut last_line = 0;
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        last_line = line_no;
        let (body, comment) = match raw.find('\\') {
            Some(p) => (&raw[..p], Some(&raw[p + 1..])),
            None => (raw, None),
        };
        if let Some(c) = comment {
            if let Some(rest) = c.trim().strip_prefix(CONSTANT_TAG) {
                constant = parse_decimal(rest.trim()).map_err(|_| IlpError::Parse {
                    line: line_no,
                    message: "bad objective constant".into(),
                })?;
            }
        }
        if body.trim().is_empty() {
            continue;
        }
        if let Some(s) = section_of(body) {
            section = s;
            continue;
        }
        match section {
            Section::Preamble => {
                return Err(IlpError::Parse {
                    line: line_no,
                    message: "content before `Minimize`".into(),
                })
            }
            Section::End => {
                return Err(IlpError::Parse {
                    line: line_no,
                    message: "content after `End`".into(),
                })
            }
            Section::Objective => tokenize(body, line_no, toks.entry(0).or_default())?,
            Section::Constraints => tokenize(body, line_no, toks.entry(1).or_default())?,
            Section::Bounds => bound_lines.push((line_no, body.to_string())),
            Section::Binaries => binaries.extend(body.split_whitespace().map(String::from)),
            Section::Generals => generals.extend(body.split_whitespace().map(String::from)),
        }
    }
    if section != Section::End {
        return Err(IlpError::Parse {
            line: last_line,
            message: "missing `End`".into(),
        });
    }

    let mut names = Names::default();
    let empty = Vec::new();
    let obj_toks = toks.get(&0).unwrap_or(&empty);
    let mut cur = Cursor { toks: obj_toks, pos: 0, last_line };
    cur.label();
    let objective = cur.expr(&mut names)?;
    if cur.peek().is_some() {
        return Err(cur.err("unexpected token in objective"));
    }

    let row_toks = toks.get(&1).unwrap_or(&empty);
    let mut cur = Cursor { toks: row_toks, pos: 0, last_line };
    let mut rows = Vec::new();
    while cur.peek().is_some() {
        let name = cur.label().unwrap_or_else(|| format!("r{}", rows.len() + 1));
        let terms = cur.expr(&mut names)?;
        let sense = match cur.next() {
            Some(Tok::Op(s)) => s,
            _ => return Err(cur.err(format!("constraint {name}: expected <=, >= or ="))),
        };
        let rhs = cur.signed_number()?;
        rows.push((name, terms, sense, rhs));
    }

    let mut bounds: HashMap<String, (Option<i64>, Option<i64>)> = HashMap::new();
    for (line, body) in &bound_lines {
        let mut bt = Vec::new();
        tokenize(body, *line, &mut bt)?;
        parse_bound(&bt, *line, &mut bounds)?;
    }

    let mut variables = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let perr = |message: String| IlpError::Parse { line: last_line, message };
    for name in &binaries {
        if index.insert(name.clone(), variables.len()).is_some() {
            return Err(perr(format!("variable {name} declared twice")));
        }
        variables.push(Variable {
            name: name.clone(),
            domain: Domain::Binary,
        });
    }
    for name in &generals {
        if index.insert(name.clone(), variables.len()).is_some() {
            return Err(perr(format!("variable {name} declared twice")));
        }
        let (lo, hi) = bounds.get(name).copied().unwrap_or((None, None));
        let upper = hi.ok_or_else(|| perr(format!("general variable {name} has no upper bound")))?;
        variables.push(Variable {
            name: name.clone(),
            domain: Domain::Integer {
                lower: lo.unwrap_or(0),
                upper,
            },
        });
    }
    for name in &names.order {
        if !index.contains_key(name) {
            return Err(perr(format!("continuous variable {name} is not supported")));
        }
    }
    let resolve = |terms: Vec<(String, Rational)>| -> Vec<(usize, Rational)> {
        terms.into_iter().map(|(n, c)| (index[&n], c)).filter(|(_, c)| !c.is_zero()).collect()
    };
    Ok(LinearProgram {
        objective: resolve(objective),
        constraints: rows
            .into_iter()
            .map(|(name, terms, sense, rhs)| Constraint {
                name,
                terms: resolve(terms),
                sense,
                rhs,
            })
            .collect(),
        variables,
        constant,
    })
}

fn parse_bound(
    toks: &[(Tok, usize)],
    line: usize,
    bounds: &mut HashMap<String, (Option<i64>, Option<i64>)>,
) -> Result<(), IlpError> {
    let err = |m: &str| IlpError::Parse {
        line,
        message: m.to_string(),
    };
    let int_of = |neg: bool, w: &str| -> Result<i64, IlpError> {
        let r = parse_decimal(w).map_err(|_| err("bad bound"))?;
        if !r.is_integer() {
            return Err(err("fractional bound on integer variable"));
        }
        Ok(if neg { -r.to_integer() } else { r.to_integer() })
    };
    // flatten leading minus signs into the following number
    let mut items: Vec<(bool, &Tok)> = Vec::new();
    let mut neg = false;
    for (t, _) in toks {
        match t {
            Tok::Minus => neg = !neg,
            Tok::Plus => {}
            other => {
                items.push((neg, other));
                neg = false;
            }
        }
    }
    match items.as_slice() {
        [(n1, Tok::Word(lo)), (_, Tok::Op(Sense::Le)), (_, Tok::Word(v)), (_, Tok::Op(Sense::Le)), (n2, Tok::Word(hi))]
            if is_number(lo) && !is_number(v) =>
        {
            let entry = bounds.entry(v.clone()).or_default();
            entry.0 = Some(int_of(*n1, lo)?);
            entry.1 = Some(int_of(*n2, hi)?);
        }
        [(_, Tok::Word(v)), (_, Tok::Op(op)), (n, Tok::Word(x))] if !is_number(v) && is_number(x) => {
            let val = int_of(*n, x)?;
            let entry = bounds.entry(v.clone()).or_default();
            match op {
                Sense::Le => entry.1 = Some(val),
                Sense::Ge => entry.0 = Some(val),
                Sense::Eq => *entry = (Some(val), Some(val)),
            }
        }
        [(n, Tok::Word(x)), (_, Tok::Op(op)), (_, Tok::Word(v))] if !is_number(v) && is_number(x) => {
            let val = int_of(*n, x)?;
            let entry = bounds.entry(v.clone()).or_default();
            match op {
                Sense::Le => entry.0 = Some(val),
                Sense::Ge => entry.1 = Some(val),
                Sense::Eq => *entry = (Some(val), Some(val)),
            }
        }
        _ => return Err(err("unsupported bound")),
    }
    Ok(())
}
