//! The line-oriented `.nlie` text format.
//!
//! ```text
//! nlie 1
//! name a3
//! # free text
//! arity 3
//! dim 4
//! mu 1 2 3 : 4 = 1
//! delta 1 : 2 3 4 = 1/2
//! form 1 1 = -1
//! ```
//!
//! A bare `mu`, `delta` or `form` line declares that section present with no
//! nonzero entries, which distinguishes a zero bracket from a missing one.

use std::collections::BTreeSet;
use std::fmt;

use nlie_core::algebra::StructureConstants;
use nlie_core::coalgebra::Comultiplication;
use nlie_core::extension::BilinearForm;
use nlie_core::linalg::Matrix;
use nlie_core::scalar::{format_scalar, parse_scalar, Scalar};
use nlie_core::tensor::canonicalize;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NlieDocument {
    pub name: Option<String>,
    pub comments: Vec<String>,
    pub arity: usize,
    pub dim: usize,
    pub mu: Option<StructureConstants>,
    pub delta: Option<Comultiplication>,
    pub form: Option<BilinearForm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

impl NlieDocument {
    pub fn new(arity: usize, dim: usize) -> Self {
        NlieDocument {
            name: None,
            comments: Vec::new(),
            arity,
            dim,
            mu: None,
            delta: None,
            form: None,
        }
    }

    pub fn mu_or_zero(&self) -> StructureConstants {
        self.mu
            .clone()
            .unwrap_or_else(|| StructureConstants::new(self.arity, self.dim).expect("checked on parse"))
    }

    pub fn delta_or_zero(&self) -> Comultiplication {
        self.delta
            .clone()
            .unwrap_or_else(|| Comultiplication::new(self.arity, self.dim).expect("checked on parse"))
    }
}

struct Parser {
    line: usize,
    arity: Option<usize>,
    dim: Option<usize>,
    doc: NlieDocument,
    seen_mu: BTreeSet<(Vec<usize>, usize)>,
    seen_delta: BTreeSet<(usize, Vec<usize>)>,
    form: Option<(Matrix, BTreeSet<(usize, usize)>)>,
}

impl Parser {
    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            message: message.into(),
        }
    }

    fn shape(&self) -> Result<(usize, usize), ParseError> {
        match (self.arity, self.dim) {
            (Some(n), Some(m)) => Ok((n, m)),
            _ => Err(self.err("entry before `arity` and `dim`")),
        }
    }

    fn number(&self, tok: &str, what: &str) -> Result<usize, ParseError> {
        tok.parse().map_err(|_| self.err(format!("expected {what}, found `{tok}`")))
    }

    fn indices(&self, text: &str, len: usize, m: usize) -> Result<Vec<usize>, ParseError> {
        let t: Vec<usize> = text
            .split_whitespace()
            .map(|tok| self.number(tok, "an index"))
            .collect::<Result<_, _>>()?;
        if t.len() != len {
            return Err(self.err(format!("expected {len} indices, found {}", t.len())));
        }
        self.in_range(&t, m)?;
        Ok(t)
    }

    fn in_range(&self, t: &[usize], m: usize) -> Result<(), ParseError> {
        match t.iter().find(|&&i| i == 0 || i > m) {
            Some(i) => Err(self.err(format!("index {i} out of range 1..={m}"))),
            None => Ok(()),
        }
    }

    fn value(&self, text: &str) -> Result<Scalar, ParseError> {
        parse_scalar(text.trim()).map_err(|_| self.err(format!("malformed rational `{}`", text.trim())))
    }

    fn split_value<'a>(&self, rest: &'a str) -> Result<(&'a str, Scalar), ParseError> {
        let (lhs, v) = rest.split_once('=').ok_or_else(|| self.err("missing `=`"))?;
        Ok((lhs, self.value(v)?))
    }

    fn set_shape(&mut self, which: &str, rest: &str) -> Result<(), ParseError> {
        let v = self.number(rest.trim(), "a number")?;
        let slot = if which == "arity" { &mut self.arity } else { &mut self.dim };
        if slot.is_some() {
            return Err(self.err(format!("`{which}` given twice")));
        }
        *slot = Some(v);
        if which == "arity" && v < 2 {
            return Err(self.err("arity must be at least 2"));
        }
        if which == "dim" && v < 1 {
            return Err(self.err("dimension must be at least 1"));
        }
        if let (Some(n), Some(m)) = (self.arity, self.dim) {
            self.doc.arity = n;
            self.doc.dim = m;
        }
        Ok(())
    }

    fn mu_entry(&mut self, rest: &str) -> Result<(), ParseError> {
        let (n, m) = self.shape()?;
        if self.doc.mu.is_none() {
            self.doc.mu = Some(StructureConstants::new(n, m).expect("shape checked"));
        }
        if rest.trim().is_empty() {
            return Ok(());
        }
        let (lhs, v) = self.split_value(rest)?;
        let (tuple, k) = lhs.split_once(':').ok_or_else(|| self.err("missing `:`"))?;
        let t = self.indices(tuple, n, m)?;
        let k = self.indices(k, 1, m)?[0];
        self.store_mu(t, k, v)
    }

    fn store_mu(&mut self, t: Vec<usize>, k: usize, v: Scalar) -> Result<(), ParseError> {
        let Some((key, _)) = canonicalize(&t) else {
            if v.is_zero() {
                return Ok(());
            }
            return Err(self.err("repeated index with nonzero coefficient"));
        };
        if !self.seen_mu.insert((key, k)) {
            return Err(self.err("duplicate entry"));
        }
        let mu = self.doc.mu.as_mut().expect("created above");
        mu.set(&t, k, v).map_err(|e| ParseError {
            line: self.line,
            message: e.to_string(),
        })
    }

    fn delta_entry(&mut self, rest: &str) -> Result<(), ParseError> {
        let (n, m) = self.shape()?;
        if self.doc.delta.is_none() {
            self.doc.delta = Some(Comultiplication::new(n, m).expect("shape checked"));
        }
        if rest.trim().is_empty() {
            return Ok(());
        }
        let (lhs, v) = self.split_value(rest)?;
        let (l, tuple) = lhs.split_once(':').ok_or_else(|| self.err("missing `:`"))?;
        let l = self.indices(l, 1, m)?[0];
        let t = self.indices(tuple, n, m)?;
        let Some((key, _)) = canonicalize(&t) else {
            if v.is_zero() {
                return Ok(());
            }
            return Err(self.err("repeated index with nonzero coefficient"));
        };
        if !self.seen_delta.insert((l, key)) {
            return Err(self.err("duplicate entry"));
        }
        let line = self.line;
        self.doc
            .delta
            .as_mut()
            .expect("created above")
            .set(l, &t, v)
            .map_err(|e| ParseError {
                line,
                message: e.to_string(),
            })
    }

    fn form_entry(&mut self, rest: &str) -> Result<(), ParseError> {
        let (_, m) = self.shape()?;
        if self.form.is_none() {
            self.form = Some((Matrix::zeros(m, m), BTreeSet::new()));
        }
        if rest.trim().is_empty() {
            return Ok(());
        }
        let (lhs, v) = self.split_value(rest)?;
        let ij = self.indices(lhs, 2, m)?;
        let (i, j) = (ij[0].min(ij[1]), ij[0].max(ij[1]));
        let line = self.line;
        let (mat, seen) = self.form.as_mut().expect("created above");
        if !seen.insert((i, j)) {
            return Err(ParseError {
                line,
                message: "duplicate entry".into(),
            });
        }
        mat.set(i - 1, j - 1, v.clone());
        mat.set(j - 1, i - 1, v);
        Ok(())
    }
}

pub fn parse(text: &str) -> Result<NlieDocument, ParseError> {
    let mut p = Parser {
        line: 0,
        arity: None,
        dim: None,
        doc: NlieDocument::new(0, 0),
        seen_mu: BTreeSet::new(),
        seen_delta: BTreeSet::new(),
        form: None,
    };
    let mut header = false;
    for (no, raw) in text.lines().enumerate() {
        p.line = no + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            p.doc.comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
            continue;
        }
        let (word, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        if !header {
            if word != "nlie" || rest.trim() != "1" {
                return Err(p.err("expected header `nlie 1`"));
            }
            header = true;
            continue;
        }
        match word {
            "name" => {
                if p.doc.name.is_some() {
                    return Err(p.err("`name` given twice"));
                }
                p.doc.name = Some(rest.trim().to_string());
            }
            "arity" | "dim" => p.set_shape(word, rest)?,
            "mu" => p.mu_entry(rest)?,
            "delta" => p.delta_entry(rest)?,
            "form" => p.form_entry(rest)?,
            other => return Err(p.err(format!("unknown directive `{other}`"))),
        }
    }
    if !header {
        return Err(ParseError {
            line: p.line.max(1),
            message: "expected header `nlie 1`".into(),
        });
    }
    if p.arity.is_none() || p.dim.is_none() {
        return Err(ParseError {
            line: p.line.max(1),
            message: "missing `arity` or `dim`".into(),
        });
    }
    if let Some((mat, _)) = p.form.take() {
        p.doc.form = Some(BilinearForm::new(mat).expect("built symmetric"));
    }
    Ok(p.doc)
}

/// Canonical text: increasing tuples in lexicographic order, lowest terms, LF endings.
pub fn emit(doc: &NlieDocument) -> String {
    let mut out = String::from("nlie 1\n");
    if let Some(name) = &doc.name {
        out += &format!("name {name}\n");
    }
    for c in &doc.comments {
        if c.is_empty() {
            out += "#\n";
        } else {
            out += &format!("# {c}\n");
        }
    }
    out += &format!("arity {}\ndim {}\n", doc.arity, doc.dim);
    let join = |t: &[usize]| t.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    if let Some(mu) = &doc.mu {
        let mut any = false;
        for (t, k, v) in mu.nonzero() {
            out += &format!("mu {} : {k} = {}\n", join(t), format_scalar(v));
            any = true;
        }
        if !any {
            out += "mu\n";
        }
    }
    if let Some(delta) = &doc.delta {
        let mut lines: Vec<(usize, &Vec<usize>, &Scalar)> =
            delta.constants().nonzero().map(|(t, l, v)| (l, t, v)).collect();
        lines.sort();
        if lines.is_empty() {
            out += "delta\n";
        }
        for (l, t, v) in lines {
            out += &format!("delta {l} : {} = {}\n", join(t), format_scalar(v));
        }
    }
    if let Some(form) = &doc.form {
        let mut any = false;
        for i in 1..=form.dim() {
            for j in i..=form.dim() {
                let v = form.get(i, j);
                if !v.is_zero() {
                    out += &format!("form {i} {j} = {}\n", format_scalar(v));
                    any = true;
                }
            }
        }
        if !any {
            out += "form\n";
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use nlie_core::scalar::{int, ratio};

    const A3: &str = "nlie 1\narity 3\ndim 4\nmu 2 3 4 : 1 = 1\nmu 1 3 4 : 2 = 1\nmu 1 2 4 : 3 = 1\nmu 1 2 3 : 4 = 1\n";

    #[test]
    fn tuples_are_canonicalized_with_sign() {
        let a = parse("nlie 1\narity 3\ndim 4\nmu 2 1 3 : 4 = 1\n").unwrap();
        let b = parse("nlie 1\narity 3\ndim 4\nmu 1 2 3 : 4 = -1\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.mu.unwrap().get(&[1, 2, 3], 4).unwrap(), int(-1));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse("nlie 1\narity 3\ndim 4\nmu 1 1 2 : 3 = 1\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("repeated index"));
        assert_eq!(parse("nlie 1\narity 3\ndim 4\nmu 1 2 3 : 4 = 1\nmu 3 2 1 : 4 = 2\n").unwrap_err().line, 5);
        assert!(parse("nlie 1\narity 3\ndim 4\nmu 1 2 5 : 4 = 1\n").unwrap_err().message.contains("out of range"));
        assert!(parse("nlie 1\narity 3\ndim 4\nmu 1 2 3 : 4 = 1/0\n").unwrap_err().message.contains("malformed"));
        assert_eq!(parse("nlie 1\narity 3\nfoo\n").unwrap_err().line, 3);
        assert_eq!(parse("nlie 2\n").unwrap_err().line, 1);
        assert_eq!(parse("nlie 1\nmu 1 2 3 : 4 = 1\n").unwrap_err().line, 2);
        assert!(parse("nlie 1\narity 2\ndim 2\nform 1 2 = 1\nform 2 1 = 1\n").is_err());
    }

    #[test]
    fn emit_is_canonical() {
        let doc = parse("nlie 1\n#  note\narity 3\ndim 4\nmu 1 2 3 : 4 = 2/4\ndelta 2 : 4 3 1 = 3\nform 2 1 = 5\n").unwrap();
        let text = emit(&doc);
        assert_eq!(
            text,
            "nlie 1\n#  note\narity 3\ndim 4\nmu 1 2 3 : 4 = 1/2\ndelta 2 : 1 3 4 = -3\nform 1 2 = 5\n"
        );
        assert_eq!(emit(&parse(&text).unwrap()), text);
        assert_eq!(*doc.form.unwrap().get(2, 1), int(5));
        assert_eq!(doc.mu.unwrap().get(&[1, 2, 3], 4).unwrap(), ratio(1, 2));
    }

    #[test]
    fn a3_round_trip_sorts_tuples() {
        let text = emit(&parse(A3).unwrap());
        let mu_lines: Vec<&str> = text.lines().filter(|l| l.starts_with("mu")).collect();
        assert_eq!(mu_lines[0], "mu 1 2 3 : 4 = 1");
        assert_eq!(mu_lines[3], "mu 2 3 4 : 1 = 1");
        assert_eq!(emit(&parse(&text).unwrap()), text);
    }

    #[test]
    fn empty_sections_survive() {
        let text = "nlie 1\nname zero\narity 2\ndim 3\nmu\ndelta\n";
        let doc = parse(text).unwrap();
        assert!(doc.mu.as_ref().unwrap().is_zero());
        assert!(doc.form.is_none());
        assert_eq!(emit(&doc), text);
    }
}
