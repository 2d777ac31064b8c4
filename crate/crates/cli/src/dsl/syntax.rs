//! Lexer, parser and printer for presentation files.
//!
//! ```text
//! algebra NAME {
//!   field 2^E [mod POLY];
//!   gen x [inv] [partner y];
//!   D x = EXPR;
//!   rel EXPR;
//!   bound N;
//! }
//! ```
//!
//! Expressions are sums (`+`) of products (juxtaposition or `*`) of powers
//! (`x^3`, `x^-1`). Integer literals are field elements written as bit
//! patterns over `GF(2)[w]/(POLY)`, so `1` is the unit and `2` is `w`.
//! `#` starts a comment.

use std::fmt::{self, Write as _};

use super::DslError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Lit(u32),
    Var(String),
    Pow(Box<Expr>, i64),
    Mul(Vec<Expr>),
    Add(Vec<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub degree: u32,
    /// Bit pattern of the modulus; `None` takes the default for degrees 1 and 2.
    pub modulus: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenDecl {
    pub name: String,
    pub inverted: bool,
    pub partner: Option<String>,
}

/// A parsed presentation file. Statements are kept in file order within
/// each kind; printing emits the kinds in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub field: FieldSpec,
    pub gens: Vec<GenDecl>,
    pub d_images: Vec<(String, Expr)>,
    pub relations: Vec<Expr>,
    pub bound: Option<u32>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

/// Source positions needed for semantic errors.
#[derive(Clone, Debug, Default)]
pub(crate) struct Positions {
    pub field: Pos,
    pub gens: Vec<Pos>,
    pub d_images: Vec<Pos>,
    /// Every identifier used inside an expression.
    pub uses: Vec<(String, Pos)>,
    /// Every negative exponent, with the position of its base.
    pub inverse_uses: Vec<(Expr, Pos)>,
}

pub(crate) const RESERVED: &[&str] = &["algebra", "field", "mod", "gen", "inv", "partner", "D", "rel", "bound"];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Caret,
    Minus,
    Plus,
    Star,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Semi,
    Eq,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Star => f.write_str("`*`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn syntax(pos: Pos, message: impl Into<String>) -> DslError {
    DslError::Syntax { line: pos.line, column: pos.column, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, DslError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => advance(1, &mut i, &mut col),
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                col += i - start;
                out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                col += i - start;
                let word: String = chars[start..i].iter().collect();
                let value = if let Some(b) = word.strip_prefix("0b") {
                    u64::from_str_radix(b, 2)
                } else if let Some(h) = word.strip_prefix("0x") {
                    u64::from_str_radix(h, 16)
                } else {
                    word.parse()
                };
                let n = value.map_err(|_| syntax(pos, format!("malformed number `{word}`")))?;
                out.push((Tok::Int(n), pos));
            }
            _ => {
                let tok = match c {
                    '^' => Tok::Caret,
                    '-' => Tok::Minus,
                    '+' => Tok::Plus,
                    '*' => Tok::Star,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    ';' => Tok::Semi,
                    '=' => Tok::Eq,
                    other => return Err(syntax(pos, format!("unexpected character `{other}`"))),
                };
                out.push((tok, pos));
                advance(1, &mut i, &mut col);
            }
        }
    }
    out.push((Tok::Eof, Pos { line, column: col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    positions: Positions,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Pos, DslError> {
        if *self.peek() == want {
            Ok(self.bump().1)
        } else {
            Err(syntax(self.pos(), format!("expected {what}, found {}", self.peek())))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), DslError> {
        match self.bump() {
            (Tok::Ident(s), p) => Ok((s, p)),
            (t, p) => Err(syntax(p, format!("expected {what}, found {t}"))),
        }
    }

    fn int(&mut self, what: &str) -> Result<(u64, Pos), DslError> {
        match self.bump() {
            (Tok::Int(n), p) => Ok((n, p)),
            (t, p) => Err(syntax(p, format!("expected {what}, found {t}"))),
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Tok::Ident(s) if s == kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn small(n: u64, p: Pos, what: &str) -> Result<u32, DslError> {
        u32::try_from(n).map_err(|_| syntax(p, format!("{what} {n} is too large")))
    }

    fn file(&mut self) -> Result<Presentation, DslError> {
        if !self.keyword("algebra") {
            return Err(syntax(self.pos(), format!("expected `algebra`, found {}", self.peek())));
        }
        let (name, _) = self.ident("an algebra name")?;
        self.expect(Tok::LBrace, "`{`")?;
        let mut p = Presentation {
            name,
            field: FieldSpec { degree: 1, modulus: None },
            gens: Vec::new(),
            d_images: Vec::new(),
            relations: Vec::new(),
            bound: None,
        };
        let mut field_seen = false;
        loop {
            let (tok, pos) = self.bump();
            match tok {
                Tok::RBrace => break,
                Tok::Ident(kw) if kw == "field" => {
                    if field_seen {
                        return Err(syntax(pos, "duplicate `field` statement"));
                    }
                    field_seen = true;
                    let (base, bp) = self.int("the characteristic 2")?;
                    if base != 2 {
                        return Err(syntax(bp, format!("only characteristic 2 is supported, found {base}")));
                    }
                    self.expect(Tok::Caret, "`^`")?;
                    let (e, ep) = self.int("the extension degree")?;
                    let degree = Self::small(e, ep, "degree")?;
                    let modulus = if self.keyword("mod") {
                        let (m, mp) = self.int("a modulus bit pattern")?;
                        Some(Self::small(m, mp, "modulus")?)
                    } else {
                        None
                    };
                    p.field = FieldSpec { degree, modulus };
                    self.positions.field = pos;
                }
                Tok::Ident(kw) if kw == "gen" => {
                    let (name, np) = self.ident("a generator name")?;
                    let inverted = self.keyword("inv");
                    let partner = if self.keyword("partner") { Some(self.ident("a partner name")?.0) } else { None };
                    p.gens.push(GenDecl { name, inverted, partner });
                    self.positions.gens.push(np);
                }
                Tok::Ident(kw) if kw == "D" => {
                    let (name, np) = self.ident("a generator name")?;
                    self.expect(Tok::Eq, "`=`")?;
                    let e = self.expr()?;
                    p.d_images.push((name, e));
                    self.positions.d_images.push(np);
                }
                Tok::Ident(kw) if kw == "rel" => {
                    let e = self.expr()?;
                    p.relations.push(e);
                }
                Tok::Ident(kw) if kw == "bound" => {
                    if p.bound.is_some() {
                        return Err(syntax(pos, "duplicate `bound` statement"));
                    }
                    let (n, np) = self.int("a degree bound")?;
                    p.bound = Some(Self::small(n, np, "bound")?);
                }
                t => {
                    return Err(syntax(pos, format!("expected a statement (field, gen, D, rel, bound) or `}}`, found {t}")))
                }
            }
            self.expect(Tok::Semi, "`;`")?;
        }
        self.expect(Tok::Eof, "end of input")?;
        Ok(p)
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Int(_) | Tok::LParen)
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut terms = vec![self.term()?];
        while *self.peek() == Tok::Plus {
            self.bump();
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Add(terms) })
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut factors = vec![self.factor()?];
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
                factors.push(self.factor()?);
            } else if self.starts_factor() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Mul(factors) })
    }

    fn factor(&mut self) -> Result<Expr, DslError> {
        let base_pos = self.pos();
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let (n, np) = self.int("an exponent")?;
        let e = i64::try_from(n).map_err(|_| syntax(np, "exponent is too large"))?;
        if negative {
            self.positions.inverse_uses.push((base.clone(), base_pos));
        }
        Ok(Expr::Pow(Box::new(base), if negative { -e } else { e }))
    }

    fn atom(&mut self) -> Result<Expr, DslError> {
        match self.bump() {
            (Tok::Ident(s), p) => {
                self.positions.uses.push((s.clone(), p));
                Ok(Expr::Var(s))
            }
            (Tok::Int(n), p) => Ok(Expr::Lit(Self::small(n, p, "literal")?)),
            (Tok::LParen, _) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            (t, p) => Err(syntax(p, format!("expected an expression, found {t}"))),
        }
    }
}

pub(crate) fn parse_file(text: &str) -> Result<(Presentation, Positions), DslError> {
    let mut parser = Parser { toks: lex(text)?, at: 0, positions: Positions::default() };
    let p = parser.file()?;
    Ok((p, parser.positions))
}

/// Parse a standalone expression (used for elements on the command line and
/// in reports).
pub fn parse_expr(text: &str) -> Result<Expr, DslError> {
    let mut parser = Parser { toks: lex(text)?, at: 0, positions: Positions::default() };
    let e = parser.expr()?;
    parser.expect(Tok::Eof, "end of expression")?;
    Ok(e)
}

impl Expr {
    fn write(&self, out: &mut String, prec: u8) {
        let (own, wrap) = match self {
            Expr::Add(_) => (0, prec > 0),
            Expr::Mul(_) => (1, prec > 1),
            Expr::Pow(..) => (2, prec > 2),
            Expr::Lit(_) | Expr::Var(_) => (3, false),
        };
        if wrap {
            out.push('(');
        }
        match self {
            Expr::Lit(n) => write!(out, "{n}").unwrap(),
            Expr::Var(s) => out.push_str(s),
            Expr::Pow(b, e) => {
                b.write(out, 3);
                write!(out, "^{e}").unwrap();
            }
            Expr::Mul(fs) => {
                for (i, f) in fs.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    f.write(out, own + 1);
                }
            }
            Expr::Add(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        out.push_str(" + ");
                    }
                    t.write(out, own + 1);
                }
            }
        }
        if wrap {
            out.push(')');
        }
    }

    /// Whether `self` is the literal zero.
    pub fn is_zero_literal(&self) -> bool {
        *self == Expr::Lit(0)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s, 0);
        f.write_str(&s)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra {} {{", self.name)?;
        write!(f, "  field 2^{}", self.field.degree)?;
        if let Some(m) = self.field.modulus {
            write!(f, " mod {m:#b}")?;
        }
        writeln!(f, ";")?;
        for g in &self.gens {
            write!(f, "  gen {}", g.name)?;
            if g.inverted {
                write!(f, " inv")?;
            }
            if let Some(p) = &g.partner {
                write!(f, " partner {p}")?;
            }
            writeln!(f, ";")?;
        }
        for (g, e) in &self.d_images {
            writeln!(f, "  D {g} = {e};")?;
        }
        for r in &self.relations {
            writeln!(f, "  rel {r};")?;
        }
        if let Some(b) = self.bound {
            writeln!(f, "  bound {b};")?;
        }
        writeln!(f, "}}")
    }
}
