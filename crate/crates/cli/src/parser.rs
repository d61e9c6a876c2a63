//! Recursive-descent parser for the session language.
//!
//! ```text
//! ring GF(32003)[x, y] order grevlex mod x^3;
//! ideal I = x*y, x^2 + y;
//! matrix M 2 2 = [x, y; y, x];
//! space S = sum(I, I) order 2;
//! height I;
//! perturb T S --target regular;
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use generica_core::ring::{Field, MonomialOrder, Poly, Ring};

use crate::session::{Arg, Command, Decl, Item, Kind, Op, Session};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
    /// Tokens that would have been accepted here; empty for semantic errors.
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    /// `--name`
    Flag(String),
    Sym(char),
    Eof,
}

impl Tok {
    fn show(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("`{s}`"),
            Tok::Flag(s) => format!("`--{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, c: char| {
        *i += 1;
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, c);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                let ch = chars[i];
                advance(&mut i, &mut line, &mut col, ch);
            }
            continue;
        }
        let (l0, c0) = (line, col);
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                let ch = chars[i];
                s.push(ch);
                advance(&mut i, &mut line, &mut col, ch);
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                let ch = chars[i];
                s.push(ch);
                advance(&mut i, &mut line, &mut col, ch);
            }
            Tok::Int(s)
        } else if c == '-' && chars.get(i + 1) == Some(&'-') && chars.get(i + 2).is_some_and(|d| d.is_ascii_alphabetic()) {
            advance(&mut i, &mut line, &mut col, '-');
            advance(&mut i, &mut line, &mut col, '-');
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '-') {
                let ch = chars[i];
                s.push(ch);
                advance(&mut i, &mut line, &mut col, ch);
            }
            Tok::Flag(s)
        } else if "[](),;=+-*^/".contains(c) {
            advance(&mut i, &mut line, &mut col, c);
            Tok::Sym(c)
        } else {
            return Err(ParseError {
                line: l0,
                col: c0,
                message: format!("unexpected character `{c}`"),
                expected: Vec::new(),
            });
        };
        out.push(Spanned { tok, line: l0, col: c0 });
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

const RESERVED: &[&str] = &[
    "ring", "ideal", "tuple", "matrix", "space", "sum", "order", "mod", "GF", "QQ", "grevlex", "lex", "generic",
    "symmetric", "skew", "R",
];

/// What a positional argument or option value must be.
#[derive(Clone, Copy, Debug)]
enum Want {
    Name(Kind),
    Int,
    Word(&'static [&'static str]),
}

const BOOL: &[&str] = &["true", "false"];
const SHAPES: &[&str] = &["generic", "symmetric", "skew"];

fn options_of(op: Op) -> &'static [(&'static str, Want)] {
    use Want::*;
    match op {
        Op::Gb | Op::Dim | Op::Height | Op::Nf | Op::Detideal | Op::Tor | Op::Ext => &[],
        Op::Grade => &[("module", Name(Kind::Ideal)), ("method", Word(&["koszul", "ext", "direct", "all"]))],
        Op::Regseq | Op::Koszul => &[("module", Name(Kind::Ideal))],
        Op::Profile => &[("kind", Word(SHAPES)), ("grade", Word(BOOL))],
        Op::En => &[],
        Op::Perturb => &[
            ("target", Word(&["regular", "height", "proper", "profile", "injective", "preserve"])),
            ("module", Name(Kind::Ideal)),
            ("height", Int),
            ("with", Name(Kind::Ideal)),
            ("avoid", Name(Kind::Space)),
            ("ideal", Name(Kind::Ideal)),
            ("kind", Word(SHAPES)),
            ("from", Int),
            ("r", Int),
            ("q", Int),
            ("budget", Int),
            ("degree", Int),
            ("hypothesis", Word(BOOL)),
        ],
        Op::Stability => &[
            ("predicate", Word(&["regular", "height", "koszul"])),
            ("module", Name(Kind::Ideal)),
            ("height", Int),
            ("max-q", Int),
            ("trials", Int),
            ("slack", Int),
        ],
    }
}

/// Positional signatures; a command matches the first whose leading
/// argument fits.
fn signatures(op: Op) -> &'static [&'static [Want]] {
    use Want::*;
    match op {
        Op::Gb | Op::Dim | Op::Height | Op::Grade => &[&[Name(Kind::Ideal)]],
        Op::Nf => &[&[Name(Kind::Tuple), Name(Kind::Ideal)]],
        Op::Regseq | Op::Koszul => &[&[Name(Kind::Tuple)]],
        Op::Detideal | Op::En => &[&[Name(Kind::Matrix), Int]],
        Op::Profile => &[&[Name(Kind::Matrix)], &[Word(&["generic"]), Int, Int], &[Word(&["symmetric", "skew"]), Int]],
        Op::Tor | Op::Ext => &[&[Name(Kind::Ideal), Name(Kind::Ideal), Int]],
        Op::Perturb => &[&[Name(Kind::Tuple), Name(Kind::Space)], &[Name(Kind::Matrix)]],
        Op::Stability => &[&[Name(Kind::Tuple), Name(Kind::Space)]],
    }
}

fn describe(w: Want) -> String {
    match w {
        Want::Name(k) => format!("{k} name"),
        Want::Int => "integer".into(),
        Want::Word(ws) => ws.iter().map(|w| format!("`{w}`")).collect::<Vec<_>>().join(" or "),
    }
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    session: &'a mut Session,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn err_at(&self, at: &Spanned, message: impl Into<String>) -> ParseError {
        ParseError { line: at.line, col: at.col, message: message.into(), expected: Vec::new() }
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let at = self.peek();
        ParseError {
            line: at.line,
            col: at.col,
            message: format!("unexpected {}", at.tok.show()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.unexpected(&[&format!("`{c}`")]))
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if matches!(&self.peek().tok, Tok::Ident(s) if s == w) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_word(&mut self, w: &str) -> PResult<()> {
        if self.eat_word(w) {
            Ok(())
        } else {
            Err(self.unexpected(&[&format!("`{w}`")]))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, Spanned)> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                Ok((s, self.bump()))
            }
            _ => Err(self.unexpected(&[what])),
        }
    }

    fn integer(&mut self) -> PResult<u64> {
        match &self.peek().tok {
            Tok::Int(s) => {
                let s = s.clone();
                let at = self.bump();
                s.parse().map_err(|_| self.err_at(&at, format!("integer {s} out of range")))
            }
            _ => Err(self.unexpected(&["integer"])),
        }
    }

    fn session(&mut self) -> PResult<()> {
        while self.peek().tok != Tok::Eof {
            self.statement()?;
        }
        Ok(())
    }

    fn statement(&mut self) -> PResult<()> {
        let start = self.peek().clone();
        let word = match &start.tok {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.unexpected(&["`ring`", "declaration", "command"])),
        };
        match word.as_str() {
            "ring" => self.ring_decl(),
            "ideal" | "tuple" | "matrix" | "space" => {
                if self.session.ring.is_none() {
                    return Err(self.err_at(&start, "ring not declared"));
                }
                self.decl(&word)
            }
            w => match Op::from_name(w) {
                Some(op) => {
                    self.bump();
                    let cmd = self.command(op)?;
                    self.session.items.push(Item::Command(cmd));
                    Ok(())
                }
                None => Err(self.err_at(&start, format!("unknown statement `{w}`"))),
            },
        }
    }

    fn ring_decl(&mut self) -> PResult<()> {
        let start = self.bump();
        if self.session.ring.is_some() {
            return Err(self.err_at(&start, "ring already declared"));
        }
        let field = if self.eat_word("QQ") {
            Field::Rational
        } else if self.eat_word("GF") {
            self.expect_sym('(')?;
            let at = self.peek().clone();
            let p = self.integer()?;
            self.expect_sym(')')?;
            let p = u32::try_from(p).map_err(|_| self.err_at(&at, "characteristic too large"))?;
            Field::prime(p).map_err(|e| self.err_at(&at, e.to_string()))?
        } else {
            return Err(self.unexpected(&["`GF`", "`QQ`"]));
        };
        self.expect_sym('[')?;
        let mut vars = Vec::new();
        loop {
            let (v, at) = self.ident("variable")?;
            if RESERVED.contains(&v.as_str()) || Op::from_name(&v).is_some() {
                return Err(self.err_at(&at, format!("`{v}` is reserved")));
            }
            if vars.contains(&v) {
                return Err(self.err_at(&at, format!("duplicate variable `{v}`")));
            }
            vars.push(v);
            if !self.eat_sym(',') {
                break;
            }
        }
        self.expect_sym(']')?;
        let mut order = MonomialOrder::Grevlex;
        if self.eat_word("order") {
            order = if self.eat_word("grevlex") {
                MonomialOrder::Grevlex
            } else if self.eat_word("lex") {
                MonomialOrder::Lex
            } else {
                return Err(self.unexpected(&["`grevlex`", "`lex`"]));
            };
        }
        let ring = Ring::new(field, vars, order).map_err(|e| self.err_at(&start, e.to_string()))?;
        let ring = if self.eat_word("mod") {
            let gens = self.polylist(&ring)?;
            Ring::quotient(ring.poly().clone(), gens)
        } else {
            ring
        };
        self.expect_sym(';')?;
        self.session.ring = Some(ring);
        Ok(())
    }

    fn new_name(&mut self) -> PResult<String> {
        let (name, at) = self.ident("name")?;
        let ring = self.session.ring.as_ref().expect("checked by the caller");
        if RESERVED.contains(&name.as_str()) || Op::from_name(&name).is_some() {
            return Err(self.err_at(&at, format!("`{name}` is reserved")));
        }
        if ring.vars().contains(&name) {
            return Err(self.err_at(&at, format!("`{name}` is a ring variable")));
        }
        if self.session.decl(&name).is_some() {
            return Err(self.err_at(&at, format!("`{name}` already declared")));
        }
        Ok(name)
    }

    fn decl(&mut self, word: &str) -> PResult<()> {
        self.bump();
        let ring = self.session.ring.clone().expect("checked by the caller");
        let name = self.new_name()?;
        let decl = match word {
            "ideal" => {
                self.expect_sym('=')?;
                Decl::Ideal { name, gens: self.polylist(&ring)? }
            }
            "tuple" => {
                self.expect_sym('=')?;
                Decl::Tuple { name, elems: self.polylist(&ring)? }
            }
            "matrix" => {
                let at = self.peek().clone();
                let rows = self.integer()? as usize;
                let cols = self.integer()? as usize;
                if rows == 0 || cols == 0 {
                    return Err(self.err_at(&at, "matrix dimensions must be positive"));
                }
                self.expect_sym('=')?;
                self.expect_sym('[')?;
                let mut entries = Vec::new();
                let mut count = 0;
                loop {
                    let row_at = self.peek().clone();
                    let row = self.polylist(&ring)?;
                    if row.len() != cols {
                        return Err(self.err_at(&row_at, format!("row has {} entries, expected {cols}", row.len())));
                    }
                    entries.extend(row);
                    count += 1;
                    if !self.eat_sym(';') {
                        break;
                    }
                }
                if !self.eat_sym(']') {
                    return Err(self.unexpected(&["`;`", "`]`", "`,`"]));
                }
                if count != rows {
                    return Err(self.err_at(&at, format!("matrix has {count} rows, expected {rows}")));
                }
                Decl::Matrix { name, rows, cols, entries }
            }
            _ => {
                self.expect_sym('=')?;
                self.expect_word("sum")?;
                self.expect_sym('(')?;
                let mut components = Vec::new();
                loop {
                    components.push(self.reference(Kind::Ideal)?);
                    if !self.eat_sym(',') {
                        break;
                    }
                }
                self.expect_sym(')')?;
                self.expect_word("order")?;
                let at = self.peek().clone();
                let order = u32::try_from(self.integer()?).map_err(|_| self.err_at(&at, "order too large"))?;
                Decl::Space { name, components, order }
            }
        };
        self.expect_sym(';')?;
        self.session.items.push(Item::Decl(decl));
        Ok(())
    }

    /// A declared name of the given kind.
    fn reference(&mut self, kind: Kind) -> PResult<String> {
        let (name, at) = self.ident(&format!("{kind} name"))?;
        match self.session.decl(&name) {
            None => Err(self.err_at(&at, format!("unknown name `{name}`"))),
            Some(d) if d.kind() != kind => Err(self.err_at(&at, format!("`{name}` is a {}, expected a {kind}", d.kind()))),
            Some(_) => Ok(name),
        }
    }

    fn fits(&self, want: Want, tok: &Tok) -> bool {
        match (want, tok) {
            (Want::Name(k), Tok::Ident(s)) => self.session.decl(s).is_some_and(|d| d.kind() == k),
            (Want::Int, Tok::Int(_)) => true,
            (Want::Word(ws), Tok::Ident(s)) => ws.contains(&s.as_str()),
            _ => false,
        }
    }

    fn command(&mut self, op: Op) -> PResult<Command> {
        let start = self.toks[self.pos - 1].clone();
        let sigs = signatures(op);
        let first = self.peek().tok.clone();
        let sig = match sigs.iter().find(|s| self.fits(s[0], &first)) {
            Some(s) => *s,
            None => {
                if let Tok::Ident(name) = &first {
                    if self.session.decl(name).is_none() && !sigs.iter().any(|s| matches!(s[0], Want::Word(_))) {
                        let at = self.peek().clone();
                        return Err(self.err_at(&at, format!("unknown name `{name}`")));
                    }
                }
                let wants: Vec<String> = sigs.iter().map(|s| describe(s[0])).collect();
                let wants: Vec<&str> = wants.iter().map(String::as_str).collect();
                return Err(self.unexpected(&wants));
            }
        };
        let mut args = Vec::new();
        for (k, &want) in sig.iter().enumerate() {
            let tok = self.peek().clone();
            if matches!(tok.tok, Tok::Sym(';') | Tok::Flag(_) | Tok::Eof) {
                return Err(self.err_at(
                    &tok,
                    format!("`{}` takes {} arguments, got {k}", op.name(), sig.len()),
                ));
            }
            if !self.fits(want, &tok.tok) {
                if let (Want::Name(_), Tok::Ident(name)) = (want, &tok.tok) {
                    if self.session.decl(name).is_none() {
                        return Err(self.err_at(&tok, format!("unknown name `{name}`")));
                    }
                }
                return Err(self.unexpected(&[&describe(want)]));
            }
            self.bump();
            args.push(match &tok.tok {
                Tok::Int(s) => Arg::Int(s.parse().map_err(|_| self.err_at(&tok, "integer out of range"))?),
                Tok::Ident(s) => Arg::Name(s.clone()),
                _ => unreachable!("checked by fits"),
            });
        }
        let mut options = BTreeMap::new();
        let allowed = options_of(op);
        loop {
            let tok = self.peek().clone();
            match &tok.tok {
                Tok::Sym(';') => {
                    self.bump();
                    break;
                }
                Tok::Flag(key) => {
                    self.bump();
                    let Some(&(_, want)) = allowed.iter().find(|(k, _)| k == key) else {
                        let names: Vec<String> = allowed.iter().map(|(k, _)| format!("--{k}")).collect();
                        return Err(ParseError {
                            line: tok.line,
                            col: tok.col,
                            message: format!("unknown option `--{key}` for `{}`", op.name()),
                            expected: names,
                        });
                    };
                    if options.contains_key(key) {
                        return Err(self.err_at(&tok, format!("option `--{key}` given twice")));
                    }
                    let v = self.peek().clone();
                    if !self.fits(want, &v.tok) {
                        if let (Want::Name(_), Tok::Ident(name)) = (want, &v.tok) {
                            if self.session.decl(name).is_none() {
                                return Err(self.err_at(&v, format!("unknown name `{name}`")));
                            }
                        }
                        return Err(self.unexpected(&[&describe(want)]));
                    }
                    self.bump();
                    let text = match v.tok {
                        Tok::Int(s) | Tok::Ident(s) => s,
                        _ => unreachable!("checked by fits"),
                    };
                    options.insert(key.clone(), text);
                }
                Tok::Eof => return Err(self.unexpected(&["`;`"])),
                _ => {
                    let k = args.len();
                    if matches!(tok.tok, Tok::Ident(_) | Tok::Int(_)) {
                        return Err(self.err_at(
                            &tok,
                            format!("`{}` takes {} arguments, got more than {k}", op.name(), sig.len()),
                        ));
                    }
                    return Err(self.unexpected(&["`;`", "option"]));
                }
            }
        }
        let cmd = Command { op, args, options };
        self.check_command(&cmd, &start)?;
        Ok(cmd)
    }

    /// Checks that need the whole command.
    fn check_command(&self, cmd: &Command, at: &Spanned) -> PResult<()> {
        let arity = |name: &str| -> usize {
            match self.session.decl(name) {
                Some(Decl::Tuple { elems, .. }) => elems.len(),
                Some(Decl::Space { components, .. }) => components.len(),
                _ => 0,
            }
        };
        if matches!(cmd.op, Op::Perturb | Op::Stability) && cmd.args.len() == 2 {
            let (Arg::Name(t), Arg::Name(s)) = (&cmd.args[0], &cmd.args[1]) else { unreachable!() };
            if arity(t) != arity(s) {
                return Err(self.err_at(
                    at,
                    format!("arity mismatch: tuple `{t}` has {} entries, space `{s}` has {}", arity(t), arity(s)),
                ));
            }
            if let Some(a) = cmd.option("avoid") {
                if arity(a) != arity(t) {
                    return Err(self.err_at(at, format!("arity mismatch: avoid space `{a}` has {} entries", arity(a))));
                }
            }
        }
        if cmd.op == Op::Perturb {
            let matrix = cmd.args.len() == 1;
            let target = cmd.option("target").unwrap_or(if matrix { "profile" } else { "regular" });
            let tuple_targets = ["regular", "height", "proper"];
            if matrix == tuple_targets.contains(&target) {
                let what = if matrix { "matrix" } else { "tuple" };
                return Err(self.err_at(at, format!("target `{target}` does not apply to a {what}")));
            }
            if target == "height" && cmd.option("height").is_none() {
                return Err(self.err_at(at, "target `height` needs `--height`"));
            }
            if target == "proper" && cmd.option("with").is_none() {
                return Err(self.err_at(at, "target `proper` needs `--with`"));
            }
            if target == "preserve" && cmd.option("r").is_none() {
                return Err(self.err_at(at, "target `preserve` needs `--r`"));
            }
        }
        if cmd.op == Op::Stability && cmd.option("predicate") == Some("height") && cmd.option("height").is_none() {
            return Err(self.err_at(at, "predicate `height` needs `--height`"));
        }
        Ok(())
    }

    fn polylist(&mut self, ring: &Arc<Ring>) -> PResult<Vec<Poly>> {
        let mut out = vec![self.poly(ring)?];
        while self.eat_sym(',') {
            out.push(self.poly(ring)?);
        }
        Ok(out)
    }

    fn poly(&mut self, ring: &Arc<Ring>) -> PResult<Poly> {
        let mut acc = if self.eat_sym('-') {
            let t = self.term(ring)?;
            ring.neg(&t)
        } else {
            self.eat_sym('+');
            self.term(ring)?
        };
        loop {
            if self.eat_sym('+') {
                let t = self.term(ring)?;
                acc = ring.add(&acc, &t);
            } else if self.eat_sym('-') {
                let t = self.term(ring)?;
                acc = ring.sub(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, ring: &Arc<Ring>) -> PResult<Poly> {
        let mut acc = self.power(ring)?;
        loop {
            if self.eat_sym('*') {
                let f = self.power(ring)?;
                acc = ring.mul(&acc, &f);
            } else if self.peek().tok == Tok::Sym('/') {
                let at = self.bump();
                let d = self.power(ring)?;
                let c = match (d.is_constant(), d.constant_term()) {
                    (true, Some(c)) => c.clone(),
                    (true, None) => return Err(self.err_at(&at, "division by zero")),
                    _ => return Err(self.err_at(&at, "division by a non-constant")),
                };
                acc = ring.scale(&acc, &ring.field().inv(&c));
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self, ring: &Arc<Ring>) -> PResult<Poly> {
        let base = self.atom(ring)?;
        if self.eat_sym('^') {
            let at = self.peek().clone();
            let e = self.integer()?;
            let e = u32::try_from(e).ok().filter(|&e| e <= u16::MAX as u32);
            let e = e.ok_or_else(|| self.err_at(&at, "exponent too large"))?;
            return Ok(ring.pow(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self, ring: &Arc<Ring>) -> PResult<Poly> {
        let at = self.peek().clone();
        match &at.tok {
            Tok::Int(s) => {
                let field = ring.field();
                let ten = field.from_i64(10);
                let mut c = field.zero();
                for d in s.chars() {
                    c = field.add(&field.mul(&c, &ten), &field.from_i64(d.to_digit(10).expect("digit") as i64));
                }
                self.bump();
                Ok(ring.constant(c))
            }
            Tok::Ident(v) => match ring.vars().iter().position(|x| x == v) {
                Some(i) => {
                    self.bump();
                    Ok(ring.var(i))
                }
                None => Err(self.err_at(&at, format!("unknown variable `{v}`"))),
            },
            Tok::Sym('(') => {
                self.bump();
                let p = self.poly(ring)?;
                self.expect_sym(')')?;
                Ok(p)
            }
            Tok::Sym('-') => {
                self.bump();
                let p = self.power(ring)?;
                Ok(ring.neg(&p))
            }
            _ => Err(self.unexpected(&["integer", "variable", "`(`", "`-`"])),
        }
    }
}

/// Parses a whole session.
pub fn parse_session(text: &str) -> Result<Session, ParseError> {
    let mut session = Session::default();
    extend_session(&mut session, text)?;
    Ok(session)
}

/// Parses more statements into an existing session. On error the session
/// keeps the statements before the failing one.
pub fn extend_session(session: &mut Session, text: &str) -> Result<usize, ParseError> {
    let toks = lex(text)?;
    let before = session.items.len();
    let mut p = Parser { toks, pos: 0, session };
    p.session()?;
    Ok(p.session.items.len() - before)
}

/// Parses a single polynomial in the given ring.
pub fn parse_poly(ring: &Arc<Ring>, text: &str) -> Result<Poly, ParseError> {
    let toks = lex(text)?;
    let mut session = Session::default();
    let mut p = Parser { toks, pos: 0, session: &mut session };
    let poly = p.poly(ring)?;
    if p.peek().tok != Tok::Eof {
        return Err(p.unexpected(&["end of input"]));
    }
    Ok(poly)
}
