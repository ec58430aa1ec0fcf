//! Reading and writing polynomials and systems in the canonical text form.
//!
//! Grammar of a polynomial:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' int | '^' '(' int ')')*
//! atom   := int ('/' int)? | ident deriv | '(' expr ')'
//! deriv  := '\''* | '^' '(' int ')'
//! ```
//!
//! `x^(k)` written directly after an identifier is the k-th derivative;
//! every other `^` is a power. A system file holds one polynomial per line,
//! `#` starts a comment and an optional `vars x, y, z` line fixes the
//! variable order.

use num_bigint::BigInt;

use crate::diffpoly::{DiffPoly, Rational, Ring, RingRef};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Expr {
    Number(Rational),
    Derivative { name: String, order: u32, at: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col_offset: usize,
}

impl Parser {
    fn new(src: &str, line: usize, col_offset: usize) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            line,
            col_offset,
        }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.col_offset + pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    /// Next character without skipping whitespace.
    fn peek_raw(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => Err(self.error_at(self.pos, format!("expected `{c}`, found `{found}`"))),
            None => Err(self.error_at(self.pos, format!("expected `{c}`, found end of input"))),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error_at(start, "expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn small_integer(&mut self, what: &str) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let n = self.integer()?;
        u32::try_from(n).map_err(|_| self.error_at(start, format!("{what} too large")))
    }

    fn parse(mut self) -> Result<Expr> {
        if self.peek().is_none() {
            return Err(self.error_at(self.pos, "empty expression"));
        }
        let e = self.expr()?;
        match self.peek() {
            None => Ok(e),
            Some(c) => Err(self.error_at(self.pos, format!("unexpected `{c}`"))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some('-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while self.peek() == Some('^') {
            self.pos += 1;
            let exp = if self.peek() == Some('(') {
                self.pos += 1;
                let k = self.small_integer("exponent")?;
                self.expect(')')?;
                k
            } else {
                self.small_integer("exponent")?
            };
            base = Expr::Pow(Box::new(base), exp);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let start = self.pos;
                    let den = self.integer()?;
                    if den == BigInt::from(0) {
                        return Err(self.error_at(start, "zero denominator"));
                    }
                    Ok(Expr::Number(Rational::new(num, den)))
                } else {
                    Ok(Expr::Number(Rational::from_integer(num)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .peek_raw()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let mut order = 0u32;
                while self.peek_raw() == Some('\'') {
                    self.pos += 1;
                    order += 1;
                }
                if order == 0
                    && self.peek_raw() == Some('^')
                    && self.chars.get(self.pos + 1) == Some(&'(')
                {
                    self.pos += 2;
                    order = self.small_integer("derivative order")?;
                    self.expect(')')?;
                }
                Ok(Expr::Derivative { name, order, at: start })
            }
            Some(c) => Err(self.error_at(self.pos, format!("unexpected `{c}`"))),
            None => Err(self.error_at(self.pos, "unexpected end of input")),
        }
    }
}

fn collect_names(e: &Expr, out: &mut Vec<(String, usize)>) {
    match e {
        Expr::Number(_) => {}
        Expr::Derivative { name, at, .. } => out.push((name.clone(), *at)),
        Expr::Neg(a) | Expr::Pow(a, _) => collect_names(a, out),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            collect_names(a, out);
            collect_names(b, out);
        }
    }
}

fn evaluate(e: &Expr, ring: &RingRef) -> DiffPoly {
    match e {
        Expr::Number(c) => DiffPoly::constant(ring, c.clone()),
        Expr::Derivative { name, order, .. } => {
            let v = ring.index_of(name).expect("names collected before evaluation");
            DiffPoly::derivative(ring, v, *order).expect("valid index")
        }
        Expr::Neg(a) => -evaluate(a, ring),
        Expr::Add(a, b) => evaluate(a, ring) + evaluate(b, ring),
        Expr::Sub(a, b) => evaluate(a, ring) - evaluate(b, ring),
        Expr::Mul(a, b) => evaluate(a, ring) * evaluate(b, ring),
        Expr::Pow(a, k) => evaluate(a, ring).pow(*k),
    }
}

fn unknown_variable(line: usize, column: usize, name: &str) -> Error {
    Error::Parse {
        line,
        column,
        message: format!("unknown variable `{name}`"),
    }
}

/// Parse one polynomial over `ring`.
pub fn parse_poly(text: &str, ring: &RingRef) -> Result<DiffPoly> {
    let expr = Parser::new(text, 1, 0).parse()?;
    let mut names = Vec::new();
    collect_names(&expr, &mut names);
    if let Some((name, at)) = names.iter().find(|(n, _)| ring.index_of(n).is_err()) {
        return Err(unknown_variable(1, at + 1, name));
    }
    Ok(evaluate(&expr, ring))
}

/// A parsed system: its variables and one polynomial per equation line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct System {
    pub ring: RingRef,
    pub equations: Vec<DiffPoly>,
}

/// Parse a system file. `vars` overrides any `vars` line in the text; with
/// neither, variables are declared in order of first use.
pub fn parse_system(text: &str, vars: Option<&[String]>) -> Result<System> {
    let mut declared: Option<(Vec<String>, usize)> = None;
    let mut parsed: Vec<(Expr, usize)> = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix("vars").filter(|r| r.starts_with(char::is_whitespace)) {
            if declared.is_some() || !parsed.is_empty() {
                return Err(Error::Parse {
                    line,
                    column: indent + 1,
                    message: "`vars` must come once, before the equations".into(),
                });
            }
            let names: Vec<String> = rest
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect();
            Ring::new(&names).map_err(|e| Error::Parse {
                line,
                column: indent + 1,
                message: e.to_string(),
            })?;
            declared = Some((names, line));
            continue;
        }
        parsed.push((Parser::new(content.trim_start(), line, indent).parse()?, line));
    }

    let explicit: Option<Vec<String>> = match (vars, declared) {
        (Some(v), _) => Some(v.to_vec()),
        (None, Some((v, _))) => Some(v),
        (None, None) => None,
    };
    let mut names: Vec<String> = explicit.clone().unwrap_or_default();
    for (expr, line) in &parsed {
        let mut used = Vec::new();
        collect_names(expr, &mut used);
        for (name, at) in used {
            if names.contains(&name) {
                continue;
            }
            if explicit.is_some() {
                let column = at + 1 + text.lines().nth(line - 1).map_or(0, |l| l.len() - l.trim_start().len());
                return Err(unknown_variable(*line, column, &name));
            }
            names.push(name);
        }
    }
    let ring = Ring::new(&names)?;
    let equations = parsed.iter().map(|(e, _)| evaluate(e, &ring)).collect();
    Ok(System { ring, equations })
}

/// Render a system so that [`parse_system`] reads it back unchanged.
pub fn render_system(system: &System) -> String {
    let mut out = format!("vars {}\n", system.ring.names().join(", "));
    for eq in &system.equations {
        out.push_str(&eq.to_string());
        out.push('\n');
    }
    out
}

/// Parse a comma-separated list of variable names.
pub fn parse_var_list(text: &str) -> Vec<String> {
    text.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::Convention;

    fn ring() -> RingRef {
        Ring::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn derivative_syntax() {
        let r = ring();
        assert_eq!(parse_poly("x^(0)", &r).unwrap(), DiffPoly::var(&r, 0).unwrap());
        assert_eq!(parse_poly("x'''", &r).unwrap(), DiffPoly::derivative(&r, 0, 3).unwrap());
        assert_eq!(parse_poly("x^(100)", &r).unwrap(), DiffPoly::derivative(&r, 0, 100).unwrap());
        let sq = parse_poly("x'^2", &r).unwrap();
        assert_eq!(sq, DiffPoly::derivative(&r, 0, 1).unwrap().pow(2));
        assert_eq!(parse_poly("(y')^2 + y", &r).unwrap().to_string(), "y'^2 + y");
        assert_eq!(parse_poly("x^(4)^2", &r).unwrap().to_string(), "x^(4)^2");
    }

    #[test]
    fn rationals_and_signs() {
        let r = ring();
        let p = parse_poly("-3/2*x - -y + 1/3", &r).unwrap();
        assert_eq!(p.to_string(), "y - 3/2*x + 1/3");
        assert_eq!(parse_poly("2*(x+1) - 2*x", &r).unwrap().to_string(), "2");
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        match parse_poly("x + * y", &r) {
            Err(Error::Parse { line: 1, column: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_poly("x + q", &r) {
            Err(Error::Parse { column: 5, message, .. }) => assert!(message.contains('q')),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("", &r).is_err());
        assert!(parse_poly("x^(", &r).is_err());
        assert!(parse_poly("1/0", &r).is_err());
    }

    #[test]
    fn system_files() {
        let text = "# comment\nvars x, y, z\nx^(100) + y' + z'  # u1\n\nx^(50) + y + z\n";
        let sys = parse_system(text, None).unwrap();
        assert_eq!(sys.ring.names(), ["x", "y", "z"]);
        assert_eq!(sys.equations.len(), 2);
        assert_eq!(sys.equations[0].ord(0, Convention::Strong).unwrap().finite(), Some(100));
        let again = parse_system(&render_system(&sys), None).unwrap();
        assert_eq!(again, sys);
    }

    #[test]
    fn implicit_declaration_in_first_use_order() {
        let sys = parse_system("y' + x\nz\n", None).unwrap();
        assert_eq!(sys.ring.names(), ["y", "x", "z"]);
        let forced = parse_system("y' + x\nz\n", Some(&parse_var_list("x,y,z"))).unwrap();
        assert_eq!(forced.ring.names(), ["x", "y", "z"]);
    }

    #[test]
    fn undeclared_variable_is_an_error() {
        match parse_system("vars x\n  x + y\n", None) {
            Err(Error::Parse { line: 2, column: 7, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_system("x\n1 +\n", None) {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
    }
}
