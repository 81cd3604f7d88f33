//! Non-associative terms and identities as linear combinations of terms.

use std::collections::BTreeMap;
use std::fmt;

use workbench_core::{Rational, Ring};

/// Operation symbol as written: `*`, a bracket of some arity, or a named operation `name(..)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum OpSym {
    Star,
    Bracket(usize),
    Named(String, usize),
}

impl OpSym {
    pub fn arity(&self) -> usize {
        match self {
            OpSym::Star => 2,
            OpSym::Bracket(k) | OpSym::Named(_, k) => *k,
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Term {
    Var(usize),
    App(OpSym, Vec<Term>),
}

impl Term {
    pub fn star(a: Term, b: Term) -> Term {
        Term::App(OpSym::Star, vec![a, b])
    }
    /// Occurrence count of each variable.
    pub fn degrees(&self, out: &mut [usize]) {
        match self {
            Term::Var(v) => out[*v] += 1,
            Term::App(_, args) => args.iter().for_each(|a| a.degrees(out)),
        }
    }
    pub fn ops(&self, out: &mut Vec<OpSym>) {
        if let Term::App(op, args) = self {
            if !out.contains(op) {
                out.push(op.clone());
            }
            args.iter().for_each(|a| a.ops(out));
        }
    }
    /// Replaces the occurrences of `v`, in leaf order, by `subst[0], subst[1], ...`.
    pub fn substitute_occurrences(&self, v: usize, subst: &[usize], next: &mut usize) -> Term {
        match self {
            Term::Var(w) if *w == v => {
                let t = Term::Var(subst[*next]);
                *next += 1;
                t
            }
            Term::Var(w) => Term::Var(*w),
            Term::App(op, args) => Term::App(op.clone(), args.iter().map(|a| a.substitute_occurrences(v, subst, next)).collect()),
        }
    }
    pub fn rename(&self, f: &impl Fn(usize) -> usize) -> Term {
        match self {
            Term::Var(w) => Term::Var(f(*w)),
            Term::App(op, args) => Term::App(op.clone(), args.iter().map(|a| a.rename(f)).collect()),
        }
    }
    fn write(&self, vars: &[String], f: &mut fmt::Formatter<'_>, top: bool) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{}", vars[*v]),
            Term::App(OpSym::Star, args) => {
                if !top {
                    write!(f, "(")?;
                }
                args[0].write(vars, f, false)?;
                write!(f, "*")?;
                args[1].write(vars, f, false)?;
                if !top {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Term::App(OpSym::Bracket(_), args) => {
                write!(f, "[")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    a.write(vars, f, true)?;
                }
                write!(f, "]")
            }
            Term::App(OpSym::Named(name, _), args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    a.write(vars, f, true)?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Linear combination of terms, equated to zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Identity {
    pub vars: Vec<String>,
    pub terms: BTreeMap<Term, Rational>,
}

impl Identity {
    pub fn new(vars: Vec<String>) -> Self {
        Identity { vars, terms: BTreeMap::new() }
    }
    pub fn add_term(&mut self, t: Term, c: &Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(t) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }
    /// Degree profile of the first term (all terms share it when multihomogeneous).
    pub fn term_degrees(&self, t: &Term) -> Vec<usize> {
        let mut d = vec![0; self.vars.len()];
        t.degrees(&mut d);
        d
    }
    /// Maximum occurrence count of each variable over all terms.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out = vec![0; self.vars.len()];
        for t in self.terms.keys() {
            let d = self.term_degrees(t);
            for (o, x) in out.iter_mut().zip(d) {
                *o = (*o).max(x);
            }
        }
        out
    }
    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|t| self.term_degrees(t).iter().sum::<usize>()).max().unwrap_or(0)
    }
    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(|t| self.term_degrees(t).iter().all(|&d| d == 1))
    }
    pub fn ops(&self) -> Vec<OpSym> {
        let mut out = Vec::new();
        for t in self.terms.keys() {
            t.ops(&mut out);
        }
        out
    }
    /// Drops variables that occur in no term and renumbers the rest.
    pub fn compact(&self) -> Identity {
        let mut used = vec![false; self.vars.len()];
        for t in self.terms.keys() {
            for (u, d) in used.iter_mut().zip(self.term_degrees(t)) {
                *u |= d > 0;
            }
        }
        let mut map = vec![usize::MAX; self.vars.len()];
        let mut vars = Vec::new();
        for (i, u) in used.iter().enumerate() {
            if *u {
                map[i] = vars.len();
                vars.push(self.vars[i].clone());
            }
        }
        let mut out = Identity::new(vars);
        for (t, c) in &self.terms {
            out.add_term(t.rename(&|v| map[v]), c);
        }
        out
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let neg = c.signum() < 0;
            let a = if neg { c.neg() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
                t.write(&self.vars, f, false)?;
            } else {
                t.write(&self.vars, f, true)?;
            }
        }
        Ok(())
    }
}
