//! Identity syntax.
//!
//! ```text
//! identity := sum [ "=" sum ]
//! sum      := [+|-] prod { (+|-) prod }
//! prod     := unary { "*" unary }
//! unary    := "-" unary | atom
//! atom     := int [ "/" int ] | name "(" sum {"," sum} ")" | var
//!           | "[" sum {"," sum} "]" | "(" sum ")" | "(" sum "," sum "," sum ")"
//! ```
//! `*` is the binary product, `[..]` a bracket of the given arity, `name(..)` a named
//! operation and `(a,b,c)` the associator `(a*b)*c - a*(b*c)`. Numbers act as scalars.

use std::collections::BTreeMap;

use workbench_core::{Error, Rational, Result, Ring};

use crate::term::{Identity, OpSym, Term};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Sym(char),
    End,
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>> {
    let b: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = b[st..i].iter().collect();
            let v = txt.parse().map_err(|_| Error::Parse(format!("number too large at column {}", st + 1)))?;
            out.push((Tok::Num(v), st + 1));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(b[st..i].iter().collect()), st + 1));
        } else if "+-*/=()[],".contains(c) {
            out.push((Tok::Sym(c), i + 1));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` at column {}", i + 1)));
        }
    }
    out.push((Tok::End, b.len() + 1));
    Ok(out)
}

/// Scalar part plus term part.
#[derive(Clone, Debug, Default)]
struct Lin {
    scalar: Rational,
    terms: BTreeMap<Term, Rational>,
}

impl Lin {
    fn scalar(c: Rational) -> Self {
        Lin { scalar: c, terms: BTreeMap::new() }
    }
    fn term(t: Term) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(t, Rational::one());
        Lin { scalar: Rational::zero(), terms }
    }
    fn is_scalar(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_scaled(&mut self, o: &Lin, s: &Rational) {
        self.scalar = self.scalar.add(&o.scalar.mul(s));
        for (t, c) in &o.terms {
            let v = self.terms.get(t).cloned().unwrap_or_else(Rational::zero).add(&c.mul(s));
            if v.is_zero() {
                self.terms.remove(t);
            } else {
                self.terms.insert(t.clone(), v);
            }
        }
    }
    fn scale(&self, s: &Rational) -> Lin {
        let mut r = Lin::default();
        r.add_scaled(self, s);
        r
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: Vec<String>,
}

fn err_at(col: usize, msg: &str) -> Error {
    Error::Parse(format!("column {col}: {msg}"))
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }
    fn col(&self) -> usize {
        self.toks[self.pos].1
    }
    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err_at(self.col(), &format!("expected `{c}`, found {}", self.describe())))
        }
    }
    fn describe(&self) -> String {
        match self.peek() {
            Tok::Num(n) => format!("`{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".into(),
        }
    }
    fn var(&mut self, name: &str) -> usize {
        if let Some(i) = self.vars.iter().position(|v| v == name) {
            i
        } else {
            self.vars.push(name.to_string());
            self.vars.len() - 1
        }
    }

    fn sum(&mut self) -> Result<Lin> {
        let mut acc = Lin::default();
        let mut sign = Rational::one();
        if self.eat('-') {
            sign = sign.neg();
        } else {
            self.eat('+');
        }
        loop {
            let p = self.prod()?;
            acc.add_scaled(&p, &sign);
            if self.eat('+') {
                sign = Rational::one();
            } else if self.eat('-') {
                sign = Rational::one().neg();
            } else {
                return Ok(acc);
            }
        }
    }

    fn prod(&mut self) -> Result<Lin> {
        let mut acc = self.unary()?;
        loop {
            let col = self.col();
            if !self.eat('*') {
                return Ok(acc);
            }
            let rhs = self.unary()?;
            acc = multiply(&acc, &rhs, col)?;
        }
    }

    fn unary(&mut self) -> Result<Lin> {
        if self.eat('-') {
            return Ok(self.unary()?.scale(&Rational::one().neg()));
        }
        self.atom()
    }

    fn args(&mut self, close: char) -> Result<Vec<(Lin, usize)>> {
        let mut out = Vec::new();
        loop {
            let col = self.col();
            out.push((self.sum()?, col));
            if self.eat(',') {
                continue;
            }
            self.expect(close)?;
            return Ok(out);
        }
    }

    fn atom(&mut self) -> Result<Lin> {
        let col = self.col();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.pos += 1;
                if self.eat('/') {
                    let dcol = self.col();
                    let Tok::Num(d) = self.peek().clone() else {
                        return Err(err_at(dcol, "expected a denominator"));
                    };
                    self.pos += 1;
                    let q = Rational::new(n, d).map_err(|_| err_at(dcol, "zero denominator"))?;
                    return Ok(Lin::scalar(q));
                }
                Ok(Lin::scalar(Rational::integer(n)))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                if self.eat('(') {
                    let args = self.args(')')?;
                    let op = OpSym::Named(name, args.len());
                    return apply(op, &args);
                }
                let v = self.var(&name);
                Ok(Lin::term(Term::Var(v)))
            }
            Tok::Sym('[') => {
                self.pos += 1;
                let args = self.args(']')?;
                if args.len() < 2 {
                    return Err(err_at(col, "a bracket needs at least two entries"));
                }
                apply(OpSym::Bracket(args.len()), &args)
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let args = self.args(')')?;
                match args.len() {
                    1 => Ok(args.into_iter().next().unwrap().0),
                    3 => {
                        let (a, b, c) = (&args[0], &args[1], &args[2]);
                        let ab = multiply(&a.0, &b.0, a.1)?;
                        let bc = multiply(&b.0, &c.0, b.1)?;
                        let mut l = multiply(&ab, &c.0, c.1)?;
                        l.add_scaled(&multiply(&a.0, &bc, a.1)?, &Rational::one().neg());
                        Ok(l)
                    }
                    k => Err(err_at(col, &format!("parenthesised tuple of length {k}; only associators (a,b,c) are allowed"))),
                }
            }
            _ => Err(err_at(col, &format!("unexpected {}", self.describe()))),
        }
    }
}

fn multiply(a: &Lin, b: &Lin, col: usize) -> Result<Lin> {
    if a.is_scalar() {
        return Ok(b.scale(&a.scalar));
    }
    if b.is_scalar() {
        return Ok(a.scale(&b.scalar));
    }
    if !a.scalar.is_zero() || !b.scalar.is_zero() {
        return Err(err_at(col, "product of an element with a constant term"));
    }
    apply(OpSym::Star, &[(a.clone(), col), (b.clone(), col)])
}

/// Multilinear expansion of an operation applied to linear combinations.
fn apply(op: OpSym, args: &[(Lin, usize)]) -> Result<Lin> {
    for (a, col) in args {
        if !a.scalar.is_zero() {
            return Err(err_at(*col, "operation argument has a constant term"));
        }
    }
    let mut partial: Vec<(Vec<Term>, Rational)> = vec![(Vec::new(), Rational::one())];
    for (a, _) in args {
        let mut next = Vec::new();
        for (ts, c) in &partial {
            for (t, d) in &a.terms {
                let mut ts2 = ts.clone();
                ts2.push(t.clone());
                next.push((ts2, c.mul(d)));
            }
        }
        partial = next;
    }
    let mut out = Lin::default();
    for (ts, c) in partial {
        out.add_scaled(&Lin::term(Term::App(op.clone(), ts)), &c);
    }
    Ok(out)
}

/// Parses `lhs = rhs` (stored as `lhs - rhs`) or a bare expression.
pub fn parse_identity(text: &str) -> Result<Identity> {
    parse_with_vars(text, Vec::new())
}

/// Parses with a preset variable order (used so that related identities share variables).
pub fn parse_with_vars(text: &str, vars: Vec<String>) -> Result<Identity> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0, vars };
    let mut lin = p.sum()?;
    if p.eat('=') {
        let rhs = p.sum()?;
        lin.add_scaled(&rhs, &Rational::one().neg());
    }
    if *p.peek() != Tok::End {
        return Err(err_at(p.col(), &format!("unexpected {}", p.describe())));
    }
    if !lin.scalar.is_zero() {
        return Err(Error::Parse("identity has a constant term".into()));
    }
    let mut id = Identity::new(p.vars);
    for (t, c) in lin.terms {
        id.add_term(t, &c);
    }
    Ok(id)
}

/// Checks operation arities against a signature `name -> arity`; `*` needs a binary product.
pub fn check_signature(id: &Identity, sig: &BTreeMap<String, usize>) -> Result<()> {
    for op in id.ops() {
        match &op {
            OpSym::Named(name, k) => match sig.get(name) {
                None => return Err(Error::Parse(format!("unknown operation `{name}`"))),
                Some(a) if a != k => return Err(Error::Parse(format!("`{name}` has arity {a}, used with {k} arguments"))),
                _ => {}
            },
            OpSym::Star => {
                if !sig.values().any(|&a| a == 2) {
                    return Err(Error::Parse("`*` used but no binary operation".into()));
                }
            }
            OpSym::Bracket(k) => {
                if !sig.values().any(|a| a == k) {
                    return Err(Error::Parse(format!("bracket of arity {k} used but no such operation")));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn associativity() {
        let id = parse_identity("(x*y)*z - x*(y*z)").unwrap();
        assert_eq!(id.terms.len(), 2);
        assert_eq!(id.degrees(), vec![1, 1, 1]);
        assert!(id.is_multilinear());
    }

    #[test]
    fn associator_macro_matches_expansion() {
        let a = parse_identity("(x,y,z)").unwrap();
        let b = parse_identity("(x*y)*z - x*(y*z)").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zinbiel_expands() {
        let id = parse_identity("(x*y)*z = x*((y*z)+(z*y))").unwrap();
        assert_eq!(id.terms.len(), 3);
    }

    #[test]
    fn error_column() {
        let e = parse_identity("[x,y]*[z,w").unwrap_err();
        assert!(e.to_string().contains("column 11"), "{e}");
        let e = parse_identity("x*y)").unwrap_err();
        assert!(e.to_string().contains("column 4"), "{e}");
    }

    #[test]
    fn scalars_and_cancellation() {
        let id = parse_identity("2*((y*x)*x)*x - 2*(((y*x)*x)*x)").unwrap();
        assert!(id.is_zero());
        let id = parse_identity("1/2*x*y = x*y/1 - 1/2*(x*y)").unwrap_err();
        assert!(id.to_string().contains("column"));
        assert!(parse_identity("x + 1").is_err());
    }

    #[test]
    fn named_and_brackets() {
        let id = parse_identity("[phi(x),y,[a,b,c]]").unwrap();
        let ops = id.ops();
        assert!(ops.contains(&OpSym::Bracket(3)));
        assert!(ops.contains(&OpSym::Named("phi".into(), 1)));
        let mut sig = BTreeMap::new();
        sig.insert("bracket".to_string(), 3);
        assert!(check_signature(&id, &sig).is_err());
        sig.insert("phi".to_string(), 1);
        assert!(check_signature(&id, &sig).is_ok());
    }
}
