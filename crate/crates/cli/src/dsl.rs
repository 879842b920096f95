//! Text syntax for operator expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor factor*
//! factor := rational '*' factor | atom ('^' uint)? | '(' expr ')'
//! atom   := 'D' | 'X' | 'I' | 'J' | 'Delta' | 'E' '(' rational ')' | 'Eval0'
//!         | 'sub' '(' poly ')' | 'series' '(' tpoly (',' uint)? ')' | 'poly' '(' poly ')'
//! ```
//!
//! Juxtaposition is composition and the rightmost factor acts first, so
//! `D X` is `D ∘ X`. Composition binds tighter than `+`, and `^` applies to
//! the atom it follows. Runs of letters split greedily into atoms: `DX` is
//! `D X` and `DeltaD` is `Delta D`. A leading `-` negates the first term,
//! and the shift argument of `E` may carry a sign.
//!
//! `poly` is a polynomial in `x` and `tpoly` a polynomial in `t`, both in
//! the usual notation (`x^2 - 1/2*x + 3`, `t^2 - t^3/3`). `series(f)` keeps
//! `f` with truncation order `max(deg f, 32)`; `series(f, N)` sets it.

use num_traits::Signed;
use opcalc_core::{Error, OpExpr, Poly, Rat, SSeries};
use thiserror::Error;

/// Truncation order of `series(f)` when none is given.
pub const DEFAULT_SERIES_ORDER: usize = 32;

/// Longest names first, so the greedy split prefers `Delta` over `D`.
const ATOMS: [&str; 10] = [
    "series", "Delta", "Eval0", "poly", "sub", "D", "X", "I", "J", "E",
];

const FACTOR_START: [&str; 12] = [
    "'('", "rational", "D", "X", "I", "J", "Delta", "E", "Eval0", "sub", "series", "poly",
];

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: expected {}, found {found}", .expected.join(" | "))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

/// Parses an operator expression.
pub fn parse_operator(text: &str) -> Result<OpExpr, ParseError> {
    let mut p = Parser {
        src: text.chars().collect(),
        pos: 0,
    };
    if p.peek().is_none() {
        return Err(p.error(&["operator expression"]));
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        let mut expected = vec!["'+'", "'-'", "end of input"];
        expected.extend(FACTOR_START);
        return Err(p.error(&expected));
    }
    Ok(e)
}

struct Parser {
    src: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error_at(&self, pos: usize, expected: &[&str]) -> ParseError {
        let (mut line, mut column) = (1, 1);
        for &c in &self.src[..pos.min(self.src.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        let found = match self.src.get(pos) {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        };
        ParseError {
            line,
            column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        self.error_at(self.pos, expected)
    }

    fn peek(&mut self) -> Option<char> {
        while self.src.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[&format!("'{c}'")]))
        }
    }

    fn expr(&mut self) -> Result<OpExpr, ParseError> {
        let negate_first = self.eat('-');
        let first = self.term()?;
        let mut terms = vec![if negate_first { negate(first) } else { first }];
        loop {
            if self.eat('+') {
                terms.push(self.term()?);
            } else if self.eat('-') {
                let t = self.term()?;
                terms.push(negate(t));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            OpExpr::Sum(terms)
        })
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c == '(' || c.is_ascii_alphanumeric())
    }

    fn term(&mut self) -> Result<OpExpr, ParseError> {
        let mut acc = self.factor()?;
        while self.starts_factor() {
            let next = self.factor()?;
            acc = OpExpr::compose(acc, next);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<OpExpr, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    let mut expected = vec!["')'", "'+'", "'-'"];
                    expected.extend(FACTOR_START);
                    return Err(self.error(&expected));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let c = self.rational()?;
                self.expect('*')?;
                let f = self.factor()?;
                Ok(OpExpr::scaled(c, f))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let a = self.atom()?;
                if self.eat('^') {
                    let k = self.uint()?;
                    Ok(a.pow(k))
                } else {
                    Ok(a)
                }
            }
            _ => Err(self.error(&FACTOR_START)),
        }
    }

    fn atom(&mut self) -> Result<OpExpr, ParseError> {
        let at = |name: &str| {
            name.chars()
                .enumerate()
                .all(|(i, c)| self.src.get(self.pos + i) == Some(&c))
        };
        let Some(name) = ATOMS.into_iter().find(|a| at(a)) else {
            return Err(self.error(&FACTOR_START[2..]));
        };
        self.pos += name.len();
        Ok(match name {
            "D" => OpExpr::D,
            "X" => OpExpr::X,
            "I" => OpExpr::Identity,
            "J" => OpExpr::Integral,
            "Delta" => OpExpr::Difference,
            "Eval0" => OpExpr::EvalZero,
            "E" => {
                self.expect('(')?;
                let negative = self.eat('-');
                if !negative {
                    self.eat('+');
                }
                let a = self.rational()?;
                self.expect(')')?;
                OpExpr::Shift(if negative { -a } else { a })
            }
            "sub" => OpExpr::Substitute(self.poly_arg()?),
            "poly" => OpExpr::PolyInX(self.poly_arg()?),
            _ => OpExpr::SeriesInD(self.series_arg()?),
        })
    }

    /// Consumes `( ... )` and returns the character range inside, plus the
    /// position of the first comma at nesting depth zero.
    fn bracketed(&mut self) -> Result<(usize, usize, Option<usize>), ParseError> {
        self.expect('(')?;
        let start = self.pos;
        let mut depth = 0usize;
        let mut comma = None;
        loop {
            match self.src.get(self.pos) {
                None => return Err(self.error(&["')'"])),
                Some('(') => depth += 1,
                Some(')') if depth == 0 => break,
                Some(')') => depth -= 1,
                Some(',') if depth == 0 && comma.is_none() => comma = Some(self.pos),
                _ => {}
            }
            self.pos += 1;
        }
        let end = self.pos;
        self.pos += 1;
        Ok((start, end, comma))
    }

    fn poly_in(&self, start: usize, end: usize, var: char) -> Result<Poly, ParseError> {
        let text: String = self.src[start..end].iter().collect();
        Poly::parse_in(&text, var).map_err(|e| {
            let (pos, detail) = match e {
                Error::PolyParse { column, message } => (start + column - 1, message),
                other => (start, other.to_string()),
            };
            let mut err = self.error_at(pos.min(end), &[&format!("polynomial in {var}")]);
            err.found = format!("{} ({detail})", err.found);
            err
        })
    }

    fn poly_arg(&mut self) -> Result<Poly, ParseError> {
        let (start, end, comma) = self.bracketed()?;
        if let Some(c) = comma {
            return Err(self.error_at(c, &["')'"]));
        }
        self.poly_in(start, end, 'x')
    }

    fn series_arg(&mut self) -> Result<SSeries, ParseError> {
        let (start, end, comma) = self.bracketed()?;
        let f = self.poly_in(start, comma.unwrap_or(end), 't')?;
        let deg = f.degree().unwrap_or(0);
        let order = match comma {
            None => deg.max(DEFAULT_SERIES_ORDER),
            Some(c) => {
                let digits: String = self.src[c + 1..end].iter().collect();
                let first = c + 1 + digits.len() - digits.trim_start().len();
                match digits.trim().parse::<usize>() {
                    Ok(n) if n >= deg => n,
                    Ok(_) => {
                        let want = format!("truncation order >= {deg}");
                        return Err(self.error_at(first, &[&want]));
                    }
                    Err(_) => return Err(self.error_at(first, &["truncation order"])),
                }
            }
        };
        Ok(SSeries::from_poly(&f, order))
    }

    fn digits(&mut self) -> Option<String> {
        self.peek();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.src[start..self.pos].iter().collect())
    }

    fn uint(&mut self) -> Result<usize, ParseError> {
        let at = self.pos;
        match self.digits().map(|d| d.parse::<usize>()) {
            Some(Ok(k)) => Ok(k),
            _ => Err(self.error_at(at, &["unsigned integer"])),
        }
    }

    fn rational(&mut self) -> Result<Rat, ParseError> {
        let Some(num) = self.digits() else {
            return Err(self.error(&["rational"]));
        };
        if self.src.get(self.pos) != Some(&'/') {
            return Ok(num.parse().unwrap());
        }
        self.pos += 1;
        let at = self.pos;
        match self.digits() {
            Some(den) if den.chars().any(|c| c != '0') => {
                Ok(format!("{num}/{den}").parse().unwrap())
            }
            _ => Err(self.error_at(at, &["nonzero denominator"])),
        }
    }
}

fn negate(e: OpExpr) -> OpExpr {
    match e {
        OpExpr::Scale(c, inner) => OpExpr::Scale(-c, inner),
        other => OpExpr::scaled(-Rat::from_integer(1.into()), other),
    }
}

/// Renders an operator in the syntax accepted by [`parse_operator`].
///
/// Reparsing the output gives back the same tree for anything this parser
/// produces, and an equal operator for every other tree.
pub fn render_operator(q: &OpExpr) -> String {
    match q {
        OpExpr::Sum(terms) if terms.is_empty() => "0*I".to_string(),
        OpExpr::Sum(terms) => {
            let mut out = String::new();
            for (i, t) in terms.iter().enumerate() {
                match t {
                    OpExpr::Scale(c, inner) if c.is_negative() => {
                        out.push_str(if i == 0 { "-" } else { " - " });
                        out.push_str(&scaled_term(&-c.clone(), inner));
                    }
                    _ => {
                        if i > 0 {
                            out.push_str(" + ");
                        }
                        out.push_str(&render_term(t));
                    }
                }
            }
            out
        }
        OpExpr::Scale(c, inner) if c.is_negative() => {
            format!("-{}", scaled_term(&-c.clone(), inner))
        }
        _ => render_term(q),
    }
}

/// `c * inner` for `c >= 0`, as it follows a `-` sign.
fn scaled_term(c: &Rat, inner: &OpExpr) -> String {
    if *c == Rat::from_integer(1.into()) {
        render_term(inner)
    } else {
        format!("{c}*{}", render_factor(inner))
    }
}

fn render_term(q: &OpExpr) -> String {
    match q {
        OpExpr::Compose(outer, inner) => {
            let left = match outer.as_ref() {
                OpExpr::Compose(..) => render_term(outer),
                other => render_factor(other),
            };
            format!("{left} {}", render_factor(inner))
        }
        _ => render_factor(q),
    }
}

fn render_factor(q: &OpExpr) -> String {
    match q {
        OpExpr::D => "D".into(),
        OpExpr::X => "X".into(),
        OpExpr::Identity => "I".into(),
        OpExpr::Integral => "J".into(),
        OpExpr::Difference => "Delta".into(),
        OpExpr::EvalZero => "Eval0".into(),
        OpExpr::Shift(a) => format!("E({a})"),
        OpExpr::Substitute(p) => format!("sub({})", p.render('x')),
        OpExpr::PolyInX(p) => format!("poly({})", p.render('x')),
        OpExpr::SeriesInD(f) => {
            format!("series({}, {})", f.to_poly().render('t'), f.trunc_order())
        }
        OpExpr::Scale(c, inner) if !c.is_negative() => format!("{c}*{}", render_factor(inner)),
        OpExpr::Sum(t) if t.is_empty() => "0*I".into(),
        _ => format!("({})", render_operator(q)),
    }
}
