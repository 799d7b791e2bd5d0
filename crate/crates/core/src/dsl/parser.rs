use std::collections::{BTreeMap, HashSet};

use super::lexer::{tokenize, Spanned, Tok};
use crate::algebra::{term_offset, AlgebraBuilder, AlgebraSpec, BracketTerm, CoeffPoly, DeltaCondition, Family, TermSpec};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tpa::{ProductRule, ProductSpec};

const MAX_DEGREE: u32 = 64;
const MAX_EXPONENT: u32 = 64;
const MAX_BITS: u64 = 4096;
const RESERVED: [&str; 3] = ["m", "n", "delta"];

/// What an identifier inside a rule may refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Indexed,
    Central,
}

struct Ctx<'a> {
    families: &'a BTreeMap<String, Kind>,
    params: &'a BTreeMap<String, Rational>,
}

/// One parsed rule: `(left, right, terms)` with the line it came from.
struct RawRule {
    line: usize,
    left: (String, usize),
    right: (String, usize),
    terms: Vec<TermSpec>,
}

struct Cursor<'a> {
    toks: &'a [Spanned],
    pos: usize,
    line: usize,
    eol_col: usize,
    depth: usize,
}

impl<'a> Cursor<'a> {
    fn new(toks: &'a [Spanned], line: usize, text: &str) -> Self {
        Cursor { toks, pos: 0, line, eol_col: text.chars().count() + 1, depth: 0 }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.eol_col, |t| t.col)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn err<T>(&self, col: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: self.line, column: col, message: message.into() })
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T> {
        match self.peek() {
            Some(t) => self.err(self.col(), format!("expected {wanted}, found {}", t.describe())),
            None => self.err(self.col(), format!("expected {wanted}, found end of line")),
        }
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.unexpected(wanted)
        }
    }

    fn ident(&mut self, wanted: &str) -> Result<(String, usize)> {
        let col = self.col();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok((s, col))
            }
            _ => self.unexpected(wanted),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => self.unexpected(&format!("'{kw}'")),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.unexpected("end of line")
        }
    }

    fn int(&mut self) -> Result<(Rational, usize)> {
        let col = self.col();
        match self.peek() {
            Some(Tok::Int(s)) => {
                let v: Rational = s.parse().map_err(|_| Error::Parse {
                    line: self.line,
                    column: col,
                    message: format!("bad number {s}"),
                })?;
                self.pos += 1;
                if v.bits() > MAX_BITS {
                    return self.err(col, "number too large");
                }
                Ok((v, col))
            }
            _ => self.unexpected("a number"),
        }
    }

    fn small_int(&mut self, wanted: &str) -> Result<i64> {
        let col = self.col();
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        if !matches!(self.peek(), Some(Tok::Int(_))) {
            return self.unexpected(wanted);
        }
        let (v, _) = self.int()?;
        let v = if neg { -v } else { v };
        match v.to_i64() {
            Some(x) if x.abs() <= 1 << 40 => Ok(x),
            _ => self.err(col, "number out of range"),
        }
    }

    // ---- polynomial expressions ----

    fn check_size(&self, p: &CoeffPoly, col: usize) -> Result<()> {
        if p.total_degree() > MAX_DEGREE {
            return self.err(col, "polynomial degree too large");
        }
        if p.monomials().any(|(_, _, c)| c.bits() > MAX_BITS) {
            return self.err(col, "number too large");
        }
        Ok(())
    }

    fn mul(&self, a: &CoeffPoly, b: &CoeffPoly, col: usize) -> Result<CoeffPoly> {
        if a.total_degree() + b.total_degree() > MAX_DEGREE {
            return self.err(col, "polynomial degree too large");
        }
        let p = a * b;
        self.check_size(&p, col)?;
        Ok(p)
    }

    fn div(&self, a: &CoeffPoly, b: &CoeffPoly, col: usize) -> Result<CoeffPoly> {
        match b.as_constant() {
            Some(c) if c.is_zero() => self.err(col, "division by zero"),
            Some(c) => {
                let p = a.scale(&c.recip().expect("nonzero"));
                self.check_size(&p, col)?;
                Ok(p)
            }
            None => self.err(col, "can only divide by a constant"),
        }
    }

    fn sum(&mut self, ctx: &Ctx) -> Result<CoeffPoly> {
        let mut acc = self.product(ctx)?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.product(ctx)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.product(ctx)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self, ctx: &Ctx) -> Result<CoeffPoly> {
        let mut acc = self.unary(ctx)?;
        loop {
            let col = self.col();
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary(ctx)?;
                    acc = self.mul(&acc, &rhs, col)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.unary(ctx)?;
                    acc = self.div(&acc, &rhs, col)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self, ctx: &Ctx) -> Result<CoeffPoly> {
        let mut neg = false;
        let mut depth = 0;
        while let Some(t @ (Tok::Minus | Tok::Plus)) = self.peek() {
            if *t == Tok::Minus {
                neg = !neg;
            }
            self.pos += 1;
            depth += 1;
            if depth > 64 {
                return self.err(self.col(), "too many signs");
            }
        }
        let p = self.power(ctx)?;
        Ok(if neg { -&p } else { p })
    }

    fn power(&mut self, ctx: &Ctx) -> Result<CoeffPoly> {
        let base = self.atom(ctx)?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let col = self.col();
        let (e, _) = self.int()?;
        let e = match e.to_i64() {
            Some(e) if e >= 0 && e <= i64::from(MAX_EXPONENT) => e as u32,
            _ => return self.err(col, "exponent out of range"),
        };
        if base.total_degree() * e > MAX_DEGREE {
            return self.err(col, "polynomial degree too large");
        }
        if let Some(c) = base.as_constant() {
            if c.bits() * u64::from(e) > MAX_BITS {
                return self.err(col, "number too large");
            }
        }
        let p = base.pow(e);
        self.check_size(&p, col)?;
        Ok(p)
    }

    fn atom(&mut self, ctx: &Ctx) -> Result<CoeffPoly> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(_)) => Ok(CoeffPoly::constant(self.int()?.0)),
            Some(Tok::LParen) => {
                self.pos += 1;
                self.depth += 1;
                if self.depth > 64 {
                    return self.err(col, "expression nested too deeply");
                }
                let p = self.sum(ctx)?;
                self.expect(Tok::RParen, "')'")?;
                self.depth -= 1;
                Ok(p)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "m" => Ok(CoeffPoly::m()),
                    "n" => Ok(CoeffPoly::n()),
                    _ => {
                        if let Some(v) = ctx.params.get(&name) {
                            Ok(CoeffPoly::constant(v.clone()))
                        } else if ctx.families.contains_key(&name) || name == "delta" {
                            self.err(col, format!("{name} cannot appear inside a coefficient"))
                        } else {
                            self.err(col, format!("unknown parameter {name}"))
                        }
                    }
                }
            }
            _ => self.unexpected("a coefficient"),
        }
    }

    /// Parses `m+n` followed by an optional constant tail such as `+2*mu-1`.
    fn affine(&mut self, ctx: &Ctx) -> Result<Rational> {
        let col = self.col();
        let ok = matches!(self.peek(), Some(Tok::Ident(s)) if s == "m")
            && self.peek2() == Some(&Tok::Plus)
            && matches!(self.toks.get(self.pos + 2).map(|t| &t.tok), Some(Tok::Ident(s)) if s == "n");
        if !ok {
            return self.err(col, "expected m+n");
        }
        self.pos += 3;
        let mut acc = CoeffPoly::zero();
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.product(ctx)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.product(ctx)?;
                }
                _ => break,
            }
        }
        match acc.as_constant() {
            Some(c) => Ok(c),
            None => self.err(col, "the shift after m+n must be a constant"),
        }
    }

    // ---- terms ----

    fn term(&mut self, ctx: &Ctx) -> Result<TermSpec> {
        let start = self.col();
        let mut neg = false;
        if let Some(t @ (Tok::Minus | Tok::Plus)) = self.peek() {
            neg = *t == Tok::Minus;
            self.pos += 1;
        }
        let mut coeff = CoeffPoly::int(1);
        let mut delta: Option<Rational> = None;
        let mut target: Option<(String, i64)> = None;
        let mut first = true;
        loop {
            let op_col = self.col();
            let divide = if first {
                false
            } else {
                match self.peek() {
                    Some(Tok::Star) => {
                        self.pos += 1;
                        false
                    }
                    Some(Tok::Slash) => {
                        self.pos += 1;
                        true
                    }
                    _ => break,
                }
            };
            first = false;
            let col = self.col();
            if target.is_some() {
                return self.err(col, "the target must be the last factor of a term");
            }
            let special = match (self.peek(), self.peek2()) {
                (Some(Tok::Ident(name)), next) => {
                    let name = name.clone();
                    if name == "delta" {
                        Some((name, true))
                    } else if ctx.families.contains_key(&name) {
                        Some((name, next == Some(&Tok::LParen)))
                    } else if next == Some(&Tok::LParen) && !ctx.params.contains_key(&name) && !RESERVED.contains(&name.as_str()) {
                        return self.err(col, format!("unknown family {name}"));
                    } else {
                        None
                    }
                }
                _ => None,
            };
            match special {
                Some((name, _)) if name == "delta" => {
                    if divide {
                        return self.err(op_col, "cannot divide by delta");
                    }
                    if delta.is_some() {
                        return self.err(col, "a term has at most one delta");
                    }
                    self.pos += 1;
                    self.expect(Tok::LParen, "'(' after delta")?;
                    delta = Some(self.affine(ctx)?);
                    self.expect(Tok::RParen, "')'")?;
                }
                Some((name, has_paren)) => {
                    if divide {
                        return self.err(op_col, format!("cannot divide by {name}"));
                    }
                    self.pos += 1;
                    let kind = ctx.families[&name];
                    match (kind, has_paren) {
                        (Kind::Central, true) => return self.err(col, format!("central element {name} takes no index")),
                        (Kind::Central, false) => target = Some((name, 0)),
                        (Kind::Indexed, false) => return self.err(col, format!("{name} needs an index such as {name}(m+n)")),
                        (Kind::Indexed, true) => {
                            self.pos += 1;
                            let icol = self.col();
                            let shift = self.affine(ctx)?;
                            self.expect(Tok::RParen, "')'")?;
                            match shift.to_i64() {
                                Some(k) if k.abs() <= 1 << 40 => target = Some((name, k)),
                                Some(_) => return self.err(icol, "index shift out of range"),
                                None => {
                                    return self.err(
                                        icol,
                                        format!(
                                            "parity mismatch: shift {shift} does not fit the lattice of {name} \
                                             (half families use the n+1/2 convention)"
                                        ),
                                    )
                                }
                            }
                        }
                    }
                }
                None => {
                    let f = self.power(ctx)?;
                    coeff = if divide { self.div(&coeff, &f, op_col)? } else { self.mul(&coeff, &f, op_col)? };
                }
            }
        }
        let Some((target, shift)) = target else {
            return self.err(start, "term has no target (expected e.g. *L(m+n) or *C_L)");
        };
        if neg {
            coeff = -&coeff;
        }
        let mut t = TermSpec::new(coeff, &target).shift(shift);
        if let Some(d) = delta {
            t = t.delta(d);
        }
        Ok(t)
    }

    /// `= 0` or `= term (+|- term)*`.
    fn rhs(&mut self, ctx: &Ctx) -> Result<Vec<TermSpec>> {
        self.expect(Tok::Eq, "'='")?;
        if matches!(self.peek(), Some(Tok::Int(s)) if s == "0") && self.toks.len() == self.pos + 1 {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut terms = vec![self.term(ctx)?];
        loop {
            match self.peek() {
                None => return Ok(terms),
                Some(Tok::Plus) => {
                    self.pos += 1;
                    terms.push(self.term(ctx)?);
                }
                Some(Tok::Minus) => {
                    // keep the sign for the term itself
                    terms.push(self.term(ctx)?);
                }
                _ => return self.unexpected("'+', '-' or end of line"),
            }
        }
    }

    /// `F(m) G(n) = ...` after the `bracket` or `product` keyword.
    fn rule(&mut self, ctx: &Ctx) -> Result<RawRule> {
        let line = self.line;
        let left = self.operand(ctx, "m")?;
        let right = self.operand(ctx, "n")?;
        let terms = self.rhs(ctx)?;
        Ok(RawRule { line, left, right, terms })
    }

    fn operand(&mut self, ctx: &Ctx, var: &str) -> Result<(String, usize)> {
        let (name, col) = self.ident("a family name")?;
        match ctx.families.get(&name) {
            None => return self.err(col, format!("unknown family {name}")),
            Some(Kind::Central) => {
                return self.err(col, format!("central element {name} cannot appear in a rule"))
            }
            Some(Kind::Indexed) => {}
        }
        self.expect(Tok::LParen, "'('")?;
        let (v, vcol) = self.ident(&format!("'{var}'"))?;
        if v != var {
            return self.err(vcol, format!("expected '{var}', found '{v}'"));
        }
        self.expect(Tok::RParen, "')'")?;
        Ok((name, col))
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn parse_err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, column, message: message.into() })
}

/// Parses the text form of an algebra. Parameter names used in the text are
/// replaced by their values from `params`; the resulting spec records all
/// of `params`.
pub fn parse_algebra(text: &str, params: &BTreeMap<String, Rational>) -> Result<AlgebraSpec> {
    let mut name: Option<String> = None;
    let mut families: Vec<Family> = Vec::new();
    let mut kinds: BTreeMap<String, Kind> = BTreeMap::new();
    let mut rule_lines: Vec<(usize, String, Vec<Spanned>)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let body = strip_comment(raw);
        let toks = tokenize(body, line_no)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(&toks, line_no, body);
        let (kw, kcol) = cur.ident("a keyword")?;
        if name.is_none() && kw != "algebra" {
            return parse_err(line_no, kcol, "the first statement must be 'algebra NAME'");
        }
        match kw.as_str() {
            "algebra" => {
                if name.is_some() {
                    return parse_err(line_no, kcol, "'algebra' given twice");
                }
                let (n, _) = cur.ident("an algebra name")?;
                cur.finish()?;
                name = Some(n);
            }
            "family" => {
                let (fname, fcol) = cur.ident("a family name")?;
                check_new_name(&fname, fcol, line_no, &kinds, params)?;
                let (lat, lcol) = cur.ident("'integer' or 'half'")?;
                cur.keyword("degree-offset")?;
                let shift = cur.small_int("a degree offset")?;
                cur.finish()?;
                let fam = match lat.as_str() {
                    "integer" => Family::integer(&fname, shift),
                    "half" => Family::half(&fname, shift),
                    _ => return parse_err(line_no, lcol, format!("expected 'integer' or 'half', found '{lat}'")),
                };
                kinds.insert(fname, Kind::Indexed);
                families.push(fam);
            }
            "central" => {
                if cur.at_end() {
                    return cur.unexpected("a central element name");
                }
                while !cur.at_end() {
                    let (cname, ccol) = cur.ident("a central element name")?;
                    check_new_name(&cname, ccol, line_no, &kinds, params)?;
                    kinds.insert(cname.clone(), Kind::Central);
                    families.push(Family::central(&cname));
                }
            }
            "bracket" => rule_lines.push((line_no, body.to_string(), toks.clone())),
            "product" => {
                return parse_err(line_no, kcol, "product statements belong in a product file");
            }
            other => return parse_err(line_no, kcol, format!("unknown statement '{other}'")),
        }
    }
    let Some(name) = name else {
        return parse_err(1, 1, "missing 'algebra NAME' header");
    };

    let ctx = Ctx { families: &kinds, params };
    let mut rules = Vec::new();
    for (line_no, body, toks) in &rule_lines {
        let mut cur = Cursor::new(toks, *line_no, body);
        cur.pos = 1;
        rules.push(cur.rule(&ctx)?);
    }
    check_duplicates(&rules)?;

    let mut b = AlgebraBuilder::new(&name).params(params);
    for f in families {
        b = b.family(f);
    }
    for r in rules {
        b = b.rule(&r.left.0, &r.right.0, r.terms);
    }
    b.build().map_err(|e| Error::Parse { line: 1, column: 1, message: e.to_string() })
}

fn check_new_name(
    name: &str,
    col: usize,
    line: usize,
    kinds: &BTreeMap<String, Kind>,
    params: &BTreeMap<String, Rational>,
) -> Result<()> {
    if RESERVED.contains(&name) {
        return parse_err(line, col, format!("'{name}' is reserved"));
    }
    if kinds.contains_key(name) {
        return parse_err(line, col, format!("family {name} declared twice"));
    }
    if params.contains_key(name) {
        return parse_err(line, col, format!("{name} is already a parameter name"));
    }
    Ok(())
}

fn check_duplicates(rules: &[RawRule]) -> Result<()> {
    let mut seen = HashSet::new();
    for r in rules {
        let key = if r.left.0 <= r.right.0 { (&r.left.0, &r.right.0) } else { (&r.right.0, &r.left.0) };
        if !seen.insert(key) {
            return parse_err(r.line, r.left.1, format!("duplicate rule for the pair ({}, {})", r.left.0, r.right.0));
        }
    }
    Ok(())
}

/// Parses `product F(m) G(n) = ...` statements against `base`. An optional
/// `algebra NAME` line must name the base algebra.
pub fn parse_product(text: &str, base: &AlgebraSpec, params: &BTreeMap<String, Rational>) -> Result<ProductSpec> {
    let kinds: BTreeMap<String, Kind> = base
        .families()
        .iter()
        .map(|f| (f.name.clone(), if f.lattice.is_central() { Kind::Central } else { Kind::Indexed }))
        .collect();
    let mut all_params = base.params().clone();
    all_params.extend(params.iter().map(|(k, v)| (k.clone(), v.clone())));
    let ctx = Ctx { families: &kinds, params: &all_params };
    let mut raw = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let body = strip_comment(line);
        let toks = tokenize(body, line_no)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(&toks, line_no, body);
        let (kw, kcol) = cur.ident("a keyword")?;
        match kw.as_str() {
            "algebra" => {
                let (n, ncol) = cur.ident("an algebra name")?;
                cur.finish()?;
                if n != base.name() {
                    return parse_err(line_no, ncol, format!("product is for {n}, not {}", base.name()));
                }
            }
            "product" => raw.push(cur.rule(&ctx)?),
            "bracket" | "family" | "central" => {
                return parse_err(line_no, kcol, format!("'{kw}' statements belong in an algebra file"))
            }
            other => return parse_err(line_no, kcol, format!("unknown statement '{other}'")),
        }
    }
    check_duplicates(&raw)?;
    let fam = |name: &str| base.family_id(name).expect("checked during parsing");
    let mut rules = Vec::new();
    for r in raw {
        let (left, right) = (fam(&r.left.0), fam(&r.right.0));
        let mut terms = Vec::new();
        for t in r.terms {
            let target = fam(&t.target);
            let offset = term_offset(base.families(), left, right, target, t.shift)?;
            terms.push(BracketTerm { target, offset, delta: t.delta.map(DeltaCondition::new), coeff: t.coeff });
        }
        rules.push(ProductRule { left, right, terms });
    }
    ProductSpec::new(base, rules)
}
