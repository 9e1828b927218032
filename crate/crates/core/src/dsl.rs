//! A small expression language for formal objects and Schur functors.
//!
//! ```text
//! expr := sum
//! sum  := prod ('(+)' prod)*
//! prod := term ('(x)' term)*
//! term := '1' | 'L' | 'ev(' k ')' | 'odd(' k ')' | 'P(' n ')' | 'curve(' g ')'
//!       | 'S[' p1,p2,... '](' expr ')' | 'Sym^' k '(' expr ')'
//!       | 'wedge^' k '(' expr ')' | 'shift^' k '(' expr ')'
//!       | ident [ '{' ('even'|'odd') [';' cert (',' cert)*] '}' ]
//!       | '(' expr ')'
//! cert := '[' p1,p2,... ']'
//! ```
//!
//! Both operators are left associative. A bare identifier is an even atom
//! with no known vanishing.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Limits, Result};
use crate::motive::{Atom, FormalObject, Parity};
use crate::partition::Partition;
use crate::super_linear::{schur_blocks, GradedDim, SuperVectorSpace};

const MAX_DEPTH: usize = 200;

const RESERVED: &[&str] = &[
    "x", "L", "S", "P", "Sym", "wedge", "shift", "curve", "ev", "odd", "even",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Unit,
    Lefschetz,
    EvenLines(usize),
    OddLines(usize),
    Named {
        name: String,
        parity: Parity,
        certificates: Vec<Partition>,
    },
    DirectSum(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Shift(i64, Box<Expr>),
    SchurApply(Partition, Box<Expr>),
    SymPower(usize, Box<Expr>),
    WedgePower(usize, Box<Expr>),
    Preset(Preset),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    ProjectiveSpace(usize),
    Curve(usize),
}

impl Expr {
    pub fn sum(a: Expr, b: Expr) -> Expr {
        Expr::DirectSum(Box::new(a), Box::new(b))
    }

    pub fn tensor(a: Expr, b: Expr) -> Expr {
        Expr::Tensor(Box::new(a), Box::new(b))
    }

    /// Whether `name` can be used as an atom identifier.
    pub fn is_valid_identifier(name: &str) -> bool {
        let mut chars = name.chars();
        matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
            && !RESERVED.contains(&name)
    }
}

fn fmt_parts(f: &mut fmt::Formatter<'_>, p: &Partition) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in p.parts().iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

struct Wrapped<'a>(&'a Expr, bool);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Expr {
    /// Canonical form; parses back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Unit => f.write_str("1"),
            Expr::Lefschetz => f.write_str("L"),
            Expr::EvenLines(k) => write!(f, "ev({k})"),
            Expr::OddLines(k) => write!(f, "odd({k})"),
            Expr::Named {
                name,
                parity,
                certificates,
            } => {
                f.write_str(name)?;
                if *parity == Parity::Even && certificates.is_empty() {
                    return Ok(());
                }
                write!(f, "{{{parity}")?;
                for (i, c) in certificates.iter().enumerate() {
                    f.write_str(if i == 0 { "; " } else { ", " })?;
                    fmt_parts(f, c)?;
                }
                f.write_str("}")
            }
            Expr::DirectSum(a, b) => {
                let rhs = matches!(**b, Expr::DirectSum(..));
                write!(f, "{} (+) {}", a, Wrapped(b, rhs))
            }
            Expr::Tensor(a, b) => {
                let lhs = matches!(**a, Expr::DirectSum(..));
                let rhs = matches!(**b, Expr::DirectSum(..) | Expr::Tensor(..));
                write!(f, "{} (x) {}", Wrapped(a, lhs), Wrapped(b, rhs))
            }
            Expr::Shift(k, e) => write!(f, "shift^{k}({e})"),
            Expr::SchurApply(p, e) => {
                f.write_str("S")?;
                fmt_parts(f, p)?;
                write!(f, "({e})")
            }
            Expr::SymPower(k, e) => write!(f, "Sym^{k}({e})"),
            Expr::WedgePower(k, e) => write!(f, "wedge^{k}({e})"),
            Expr::Preset(Preset::ProjectiveSpace(n)) => write!(f, "P({n})"),
            Expr::Preset(Preset::Curve(g)) => write!(f, "curve({g})"),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{}'", c as char)))
        }
    }

    /// Recognizes `( + )` or `( x )` at the cursor without consuming input
    /// unless it matches.
    fn operator(&mut self, op: u8) -> bool {
        let save = self.pos;
        if self.eat(b'(') && self.eat(op) && self.eat(b')') {
            return true;
        }
        self.pos = save;
        false
    }

    fn at_operator(&mut self) -> bool {
        let save = self.pos;
        let hit = self.operator(b'+') || self.operator(b'x');
        self.pos = save;
        hit
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::parse(start, "number too large"))
    }

    fn signed(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let start = self.pos;
        let n =
            i64::try_from(self.number()?).map_err(|_| Error::parse(start, "number too large"))?;
        Ok(if neg { -n } else { n })
    }

    fn ident(&mut self) -> Option<(usize, &str)> {
        self.skip_ws();
        let start = self.pos;
        if !matches!(self.s.get(start), Some(c) if c.is_ascii_alphabetic() || *c == b'_') {
            return None;
        }
        self.pos += 1;
        while self.pos < self.s.len()
            && (self.s[self.pos].is_ascii_alphanumeric()
                || matches!(self.s[self.pos], b'_' | b'\''))
        {
            self.pos += 1;
        }
        Some((
            start,
            std::str::from_utf8(&self.s[start..self.pos]).expect("ascii identifier"),
        ))
    }

    fn partition(&mut self, nonempty: bool) -> Result<Partition> {
        self.skip_ws();
        let start = self.pos;
        self.expect(b'[')?;
        let mut parts = Vec::new();
        if !self.eat(b']') {
            loop {
                let at = self.pos;
                let p = self.number()?;
                if p == 0 {
                    return Err(Error::parse(at, "partition parts must be positive"));
                }
                parts.push(p);
                if self.eat(b']') {
                    break;
                }
                self.expect(b',')?;
            }
        }
        if nonempty && parts.is_empty() {
            return Err(Error::parse(start, "partition must be nonempty"));
        }
        Partition::new(parts).map_err(|_| {
            Error::parse(
                start,
                "invalid partition literal: parts must be weakly decreasing",
            )
        })
    }

    fn parenthesized(&mut self) -> Result<Expr> {
        self.expect(b'(')?;
        let e = self.sum()?;
        self.expect(b')')?;
        Ok(e)
    }

    fn paren_number(&mut self) -> Result<usize> {
        self.expect(b'(')?;
        let n = self.number()?;
        self.expect(b')')?;
        Ok(n)
    }

    fn positive_exponent(&mut self) -> Result<usize> {
        self.expect(b'^')?;
        let at = self.pos;
        let k = self.number()?;
        if k == 0 {
            return Err(Error::parse(at, "power must be positive"));
        }
        Ok(k)
    }

    fn sum(&mut self) -> Result<Expr> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(Error::parse(self.pos, "expression nested too deeply"));
        }
        let mut e = self.product()?;
        while self.operator(b'+') {
            e = Expr::sum(e, self.product()?);
        }
        self.depth -= 1;
        Ok(e)
    }

    fn product(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        while self.operator(b'x') {
            e = Expr::tensor(e, self.term()?);
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<Expr> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            None => Err(Error::parse(start, "unexpected end of input")),
            Some(b'(') => {
                if self.at_operator() {
                    return Err(Error::parse(start, "expected a term before operator"));
                }
                self.parenthesized()
            }
            Some(b'1') => {
                let n = self.number()?;
                if n != 1 {
                    return Err(Error::parse(start, "the only numeric term is '1'"));
                }
                Ok(Expr::Unit)
            }
            Some(_) => {
                let Some((at, word)) = self.ident() else {
                    return Err(Error::parse(start, "expected a term"));
                };
                let word = word.to_string();
                match word.as_str() {
                    "L" => Ok(Expr::Lefschetz),
                    "ev" => Ok(Expr::EvenLines(self.paren_number()?)),
                    "odd" => Ok(Expr::OddLines(self.paren_number()?)),
                    "P" => Ok(Expr::Preset(Preset::ProjectiveSpace(self.paren_number()?))),
                    "curve" => Ok(Expr::Preset(Preset::Curve(self.paren_number()?))),
                    "S" => {
                        let p = self.partition(true)?;
                        Ok(Expr::SchurApply(p, Box::new(self.parenthesized()?)))
                    }
                    "Sym" => {
                        let k = self.positive_exponent()?;
                        Ok(Expr::SymPower(k, Box::new(self.parenthesized()?)))
                    }
                    "wedge" => {
                        let k = self.positive_exponent()?;
                        Ok(Expr::WedgePower(k, Box::new(self.parenthesized()?)))
                    }
                    "shift" => {
                        self.expect(b'^')?;
                        let k = self.signed()?;
                        Ok(Expr::Shift(k, Box::new(self.parenthesized()?)))
                    }
                    w if RESERVED.contains(&w) => {
                        Err(Error::parse(at, format!("'{w}' is reserved")))
                    }
                    _ => self.named(word),
                }
            }
        }
    }

    fn named(&mut self, name: String) -> Result<Expr> {
        let mut parity = Parity::Even;
        let mut certificates = Vec::new();
        if self.eat(b'{') {
            let at = self.pos;
            parity = match self.ident() {
                Some((_, "even")) => Parity::Even,
                Some((_, "odd")) => Parity::Odd,
                _ => return Err(Error::parse(at, "expected 'even' or 'odd'")),
            };
            if self.eat(b';') {
                loop {
                    certificates.push(self.partition(true)?);
                    if !self.eat(b',') {
                        break;
                    }
                }
            }
            self.expect(b'}')?;
        }
        Ok(Expr::Named {
            name,
            parity,
            certificates,
        })
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
        depth: 0,
    };
    let e = p.sum()?;
    if p.peek().is_some() {
        return Err(Error::parse(p.pos, "unexpected trailing input"));
    }
    Ok(e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Vanishes,
    Nonzero,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Vanishes => "vanishes",
            Verdict::Nonzero => "nonzero",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// The outcome of applying a Schur functor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchurEvaluation {
    pub partition: Partition,
    pub verdict: Verdict,
    /// Graded dimension, for arguments built purely from lines.
    pub dimension: Option<GradedDim>,
    /// `S_λ` of a sum of lines, decomposed back into lines.
    #[serde(skip)]
    pub object: Option<FormalObject>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evaluation {
    Object(FormalObject),
    Schur(SchurEvaluation),
}

impl Evaluation {
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Evaluation::Schur(s) if s.verdict == Verdict::Inconclusive)
    }
}

impl Serialize for Evaluation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v = match self {
            Evaluation::Object(o) => serde_json::json!({
                "kind": "object",
                "display": o.to_string(),
                "atoms": o,
            }),
            Evaluation::Schur(e) => serde_json::json!({
                "kind": "schur",
                "partition": e.partition,
                "verdict": e.verdict,
                "dimension": e.dimension,
            }),
        };
        v.serialize(s)
    }
}

impl fmt::Display for Evaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evaluation::Object(o) => write!(f, "{o}"),
            Evaluation::Schur(e) => {
                write!(f, "S{}: {}", e.partition, e.verdict)?;
                if let Some(d) = &e.dimension {
                    write!(f, ", dimension ({}|{})", d.even, d.odd)?;
                }
                Ok(())
            }
        }
    }
}

pub fn evaluate(e: &Expr, limits: &Limits) -> Result<Evaluation> {
    match e {
        Expr::SchurApply(p, x) => schur(p.clone(), x, limits),
        Expr::SymPower(k, x) => schur(Partition::row(*k), x, limits),
        Expr::WedgePower(k, x) => schur(Partition::column(*k), x, limits),
        _ => Ok(Evaluation::Object(object(e, limits)?)),
    }
}

/// Evaluates `e` to a formal object; a Schur functor is accepted only where
/// its value is known as an object.
pub fn object(e: &Expr, limits: &Limits) -> Result<FormalObject> {
    Ok(match e {
        Expr::Unit => FormalObject::unit(),
        Expr::Lefschetz => FormalObject::lefschetz(1),
        Expr::EvenLines(k) => FormalObject::even_lines(*k),
        Expr::OddLines(k) => FormalObject::odd_lines(*k),
        Expr::Named {
            name,
            parity,
            certificates,
        } => FormalObject::atom(Atom::opaque(name.clone(), *parity, certificates.clone())?),
        Expr::DirectSum(a, b) => object(a, limits)?.direct_sum(&object(b, limits)?),
        Expr::Tensor(a, b) => object(a, limits)?.tensor(&object(b, limits)?, limits),
        Expr::Shift(k, a) => object(a, limits)?.shift(*k),
        Expr::Preset(Preset::ProjectiveSpace(n)) => {
            Limits::check("projective space dimension", *n, limits.max_tensor_dim)?;
            FormalObject::projective_space(*n)
        }
        Expr::Preset(Preset::Curve(g)) => {
            Limits::check("curve genus", *g, limits.max_tensor_dim)?;
            FormalObject::curve(*g)
        }
        Expr::SchurApply(..) | Expr::SymPower(..) | Expr::WedgePower(..) => {
            match evaluate(e, limits)? {
                Evaluation::Schur(SchurEvaluation {
                    object: Some(o), ..
                }) => o,
                Evaluation::Schur(SchurEvaluation {
                    verdict: Verdict::Vanishes,
                    ..
                }) => FormalObject::zero(),
                _ => {
                    return Err(Error::arg(format!(
                        "{e} is not a sum of lines, so it cannot be used as an operand"
                    )))
                }
            }
        }
    })
}

fn schur(lambda: Partition, x: &Expr, limits: &Limits) -> Result<Evaluation> {
    Limits::check(
        "partition weight",
        lambda.weight(),
        limits.max_partition_weight,
    )?;
    let obj = object(x, limits)?;
    let Some((p, q)) = obj.line_dims() else {
        let verdict = if obj.vanishes(&lambda) {
            Verdict::Vanishes
        } else {
            Verdict::Inconclusive
        };
        return Ok(Evaluation::Schur(SchurEvaluation {
            partition: lambda,
            verdict,
            dimension: None,
            object: None,
        }));
    };
    // letters of the super space: even lines first, then odd ones
    let mut letters: Vec<Atom> = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        for (a, m) in obj.atoms() {
            if a.parity() == parity {
                letters.extend(std::iter::repeat_n(a.clone(), m));
            }
        }
    }
    let space = SuperVectorSpace::new(p, q);
    let mut dim = GradedDim::default();
    let mut result = FormalObject::zero();
    for block in schur_blocks(&space, &lambda, limits)? {
        if block.rank == 0 {
            continue;
        }
        if block.odd {
            dim.odd += block.rank;
        } else {
            dim.even += block.rank;
        }
        let mut line = FormalObject::unit();
        for (letter, &mult) in letters.iter().zip(&block.content) {
            for _ in 0..mult {
                line = line.tensor(&FormalObject::atom(letter.clone()), limits);
            }
        }
        let (atom, _) = line.atoms().next().expect("a tensor of lines is one line");
        result = result.direct_sum(&FormalObject::atoms_with_multiplicity(
            atom.clone(),
            block.rank,
        ));
    }
    let verdict = if dim.is_zero() {
        Verdict::Vanishes
    } else {
        Verdict::Nonzero
    };
    debug_assert_eq!(verdict == Verdict::Vanishes, obj.vanishes(&lambda));
    Ok(Evaluation::Schur(SchurEvaluation {
        partition: lambda,
        verdict,
        dimension: Some(dim),
        object: Some(result),
    }))
}
