//! SMT-LIB v2 output for real sentences, and a minimal reader that checks
//! scripts against the subset of the standard they use.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::formula::Formula;
use super::real::{Poly, RealSentence};
use crate::error::{Error, Result};
use crate::rational::Rational;

const WIDTH: usize = 100;

/// How the solver is asked about a sentence φ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Form {
    /// `(assert (not φ))`: unsat means φ is valid.
    #[default]
    Validity,
    /// The leading universal variables of φ become constants and the
    /// negated body is asserted, so a sat answer comes with a model of the
    /// counterexample matrices.
    Refutation,
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Form> {
        match s {
            "validity" => Ok(Form::Validity),
            "refutation" => Ok(Form::Refutation),
            _ => Err(Error::InvalidArgument(format!(
                "unknown form `{s}` (expected validity or refutation)"
            ))),
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Validity => "validity",
            Form::Refutation => "refutation",
        })
    }
}

/// S-expression used for output.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Sx {
    Atom(String),
    List(Vec<Sx>),
}

impl Sx {
    fn atom(s: impl Into<String>) -> Sx {
        Sx::Atom(s.into())
    }

    fn app(head: &str, args: impl IntoIterator<Item = Sx>) -> Sx {
        let mut v = vec![Sx::atom(head)];
        v.extend(args);
        Sx::List(v)
    }

    fn is_shallow(&self) -> bool {
        match self {
            Sx::Atom(_) => true,
            Sx::List(xs) => xs.iter().all(|x| matches!(x, Sx::Atom(_))),
        }
    }

    fn pretty(&self, indent: usize, out: &mut String) {
        let flat = self.to_string();
        let Sx::List(xs) = self else {
            out.push_str(&flat);
            return;
        };
        if indent + flat.len() <= WIDTH || xs.is_empty() {
            out.push_str(&flat);
            return;
        }
        out.push('(');
        if xs.iter().all(Sx::is_shallow) {
            let mut col = indent + 1;
            for (k, x) in xs.iter().enumerate() {
                let s = x.to_string();
                if k > 0 {
                    if col + 1 + s.len() > WIDTH {
                        out.push('\n');
                        out.push_str(&" ".repeat(indent + 1));
                        col = indent + 1;
                    } else {
                        out.push(' ');
                        col += 1;
                    }
                }
                out.push_str(&s);
                col += s.len();
            }
            out.push(')');
            return;
        }
        xs[0].pretty(indent + 1, out);
        for x in &xs[1..] {
            out.push('\n');
            out.push_str(&" ".repeat(indent + 2));
            x.pretty(indent + 2, out);
        }
        out.push(')');
    }
}

impl fmt::Display for Sx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sx::Atom(a) => f.write_str(a),
            Sx::List(xs) => {
                f.write_str("(")?;
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

fn numeral(c: &Rational) -> Sx {
    let abs = if c.is_negative() { -c } else { c.clone() };
    let mag = if abs.is_integer() {
        Sx::atom(abs.numer().to_string())
    } else {
        Sx::app(
            "/",
            [Sx::atom(abs.numer().to_string()), Sx::atom(abs.denom().to_string())],
        )
    };
    if c.is_negative() {
        Sx::app("-", [mag])
    } else {
        mag
    }
}

fn monomial(m: &[String], c: &Rational) -> Sx {
    if m.is_empty() {
        return numeral(c);
    }
    let vars: Vec<Sx> = m.iter().map(Sx::atom).collect();
    let product = |vars: Vec<Sx>| {
        if vars.len() == 1 {
            vars.into_iter().next().expect("one factor")
        } else {
            Sx::app("*", vars)
        }
    };
    if c.is_one() {
        product(vars)
    } else if (-c).is_one() {
        Sx::app("-", [product(vars)])
    } else {
        let mut args = vec![numeral(c)];
        args.extend(vars);
        Sx::app("*", args)
    }
}

fn poly(p: &Poly) -> Sx {
    let mut ms: Vec<Sx> = p.terms().map(|(m, c)| monomial(m, c)).collect();
    match ms.len() {
        0 => Sx::atom("0"),
        1 => ms.pop().expect("one term"),
        _ => Sx::app("+", ms),
    }
}

fn binders(vs: &[String]) -> Sx {
    Sx::List(
        vs.iter()
            .map(|v| Sx::List(vec![Sx::atom(v), Sx::atom("Real")]))
            .collect(),
    )
}

fn formula(f: &RealSentence) -> Sx {
    let many = |head: &str, empty: &str, xs: &[RealSentence]| match xs.len() {
        0 => Sx::atom(empty),
        1 => formula(&xs[0]),
        _ => Sx::app(head, xs.iter().map(formula)),
    };
    match f {
        Formula::Atom(p) => Sx::app("=", [poly(p), Sx::atom("0")]),
        Formula::Not(x) => Sx::app("not", [formula(x)]),
        Formula::And(xs) => many("and", "true", xs),
        Formula::Or(xs) => many("or", "false", xs),
        Formula::Implies(a, b) => Sx::app("=>", [formula(a), formula(b)]),
        Formula::Iff(a, b) => Sx::app("=", [formula(a), formula(b)]),
        Formula::Forall(vs, b) => Sx::app("forall", [binders(vs), formula(b)]),
        Formula::Exists(vs, b) => Sx::app("exists", [binders(vs), formula(b)]),
    }
}

fn push_pretty(out: &mut String, e: &Sx) {
    e.pretty(0, out);
    out.push('\n');
}

/// SMT-LIB v2 script over quantified nonlinear real arithmetic. `comments`
/// become leading `;` lines.
pub fn emit_solver_text(r: &RealSentence, form: Form, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            out.push_str("; ");
            out.push_str(line);
            out.push('\n');
        }
    }
    push_pretty(&mut out, &Sx::app("set-logic", [Sx::atom("NRA")]));
    match form {
        Form::Validity => {
            push_pretty(&mut out, &Sx::app("assert", [Sx::app("not", [formula(r)])]));
            push_pretty(&mut out, &Sx::List(vec![Sx::atom("check-sat")]));
        }
        Form::Refutation => {
            let (vars, body) = r.universal_prefix();
            for v in vars {
                push_pretty(&mut out, &Sx::app("declare-const", [Sx::atom(v), Sx::atom("Real")]));
            }
            push_pretty(&mut out, &Sx::app("assert", [Sx::app("not", [formula(body)])]));
            push_pretty(&mut out, &Sx::List(vec![Sx::atom("check-sat")]));
            push_pretty(&mut out, &Sx::List(vec![Sx::atom("get-model")]));
        }
    }
    out
}

/// Parsed s-expression with its byte offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub pos: usize,
    pub kind: NodeKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Symbol(String),
    Numeral(String),
    Decimal(String),
    Keyword(String),
    Str(String),
    List(Vec<Node>),
}

fn is_symbol_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || "~!@$%^&*_-+=<>.?/".contains(c)
}

/// Reads every top-level s-expression of `text`.
pub fn read_sexprs(text: &str) -> Result<Vec<Node>> {
    let err = |pos: usize, msg: &str| Error::parse_at(text, pos, msg);
    let bytes = text.as_bytes();
    let mut stack: Vec<(usize, Vec<Node>)> = Vec::new();
    let mut top = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let node = match c {
            ';' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            c if c.is_ascii_whitespace() => {
                i += 1;
                continue;
            }
            '(' => {
                stack.push((i, Vec::new()));
                i += 1;
                continue;
            }
            ')' => {
                let (pos, items) = stack.pop().ok_or_else(|| err(i, "unbalanced `)`"))?;
                i += 1;
                Node {
                    pos,
                    kind: NodeKind::List(items),
                }
            }
            '|' => {
                let end = text[i + 1..]
                    .find('|')
                    .ok_or_else(|| err(i, "unterminated quoted symbol"))?;
                i += end + 2;
                Node {
                    pos: start,
                    kind: NodeKind::Symbol(text[start + 1..i - 1].to_string()),
                }
            }
            '"' => {
                i += 1;
                loop {
                    match bytes.get(i) {
                        None => return Err(err(start, "unterminated string")),
                        Some(b'"') if bytes.get(i + 1) == Some(&b'"') => i += 2,
                        Some(b'"') => break,
                        Some(_) => i += 1,
                    }
                }
                i += 1;
                Node {
                    pos: start,
                    kind: NodeKind::Str(text[start + 1..i - 1].replace("\"\"", "\"")),
                }
            }
            c if c == ':' || is_symbol_char(c) => {
                i += 1;
                while i < bytes.len() && is_symbol_char(bytes[i] as char) {
                    i += 1;
                }
                let tok = &text[start..i];
                let kind = if let Some(k) = tok.strip_prefix(':') {
                    NodeKind::Keyword(k.to_string())
                } else if tok.bytes().all(|b| b.is_ascii_digit()) {
                    if tok.len() > 1 && tok.starts_with('0') {
                        return Err(err(start, "numeral with leading zero"));
                    }
                    NodeKind::Numeral(tok.to_string())
                } else if tok.as_bytes()[0].is_ascii_digit() {
                    match tok.split_once('.') {
                        Some((a, b))
                            if !a.is_empty()
                                && !b.is_empty()
                                && a.bytes().all(|x| x.is_ascii_digit())
                                && b.bytes().all(|x| x.is_ascii_digit()) =>
                        {
                            NodeKind::Decimal(tok.to_string())
                        }
                        _ => return Err(err(start, "symbol may not start with a digit")),
                    }
                } else {
                    NodeKind::Symbol(tok.to_string())
                };
                Node { pos: start, kind }
            }
            other => return Err(err(i, &format!("unexpected character `{other}`"))),
        };
        match stack.last_mut() {
            Some((_, items)) => items.push(node),
            None => top.push(node),
        }
    }
    if let Some((pos, _)) = stack.pop() {
        return Err(err(pos, "unclosed `(`"));
    }
    Ok(top)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sort {
    Bool,
    Real,
}

/// Summary of a well-sorted script.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub logic: Option<String>,
    pub constants: Vec<String>,
    pub assertions: usize,
    pub commands: Vec<String>,
    /// Deepest nesting of quantifiers in any assertion.
    pub quantifier_depth: usize,
}

struct Checker<'a> {
    text: &'a str,
    globals: HashMap<String, Sort>,
    scopes: Vec<(String, Sort)>,
    depth: usize,
}

impl Checker<'_> {
    fn err(&self, n: &Node, msg: impl Into<String>) -> Error {
        Error::parse_at(self.text, n.pos, msg)
    }

    fn sort_name(&self, n: &Node) -> Result<Sort> {
        match &n.kind {
            NodeKind::Symbol(s) if s == "Real" => Ok(Sort::Real),
            NodeKind::Symbol(s) if s == "Bool" => Ok(Sort::Bool),
            _ => Err(self.err(n, "expected sort Real or Bool")),
        }
    }

    fn symbol<'n>(&self, n: &'n Node) -> Result<&'n str> {
        match &n.kind {
            NodeKind::Symbol(s) => Ok(s),
            _ => Err(self.err(n, "expected a symbol")),
        }
    }

    fn args(&mut self, n: &Node, args: &[Node], min: usize, want: Sort, depth: usize) -> Result<()> {
        if args.len() < min {
            return Err(self.err(n, format!("expected at least {min} arguments")));
        }
        for a in args {
            let s = self.sort(a, depth)?;
            if s != want {
                return Err(self.err(a, format!("expected a {want:?} term")));
            }
        }
        Ok(())
    }

    fn sort(&mut self, n: &Node, depth: usize) -> Result<Sort> {
        self.depth = self.depth.max(depth);
        match &n.kind {
            NodeKind::Numeral(_) | NodeKind::Decimal(_) => Ok(Sort::Real),
            NodeKind::Symbol(s) if s == "true" || s == "false" => Ok(Sort::Bool),
            NodeKind::Symbol(s) => self
                .scopes
                .iter()
                .rev()
                .find(|(name, _)| name == s)
                .map(|(_, sort)| *sort)
                .or_else(|| self.globals.get(s).copied())
                .ok_or_else(|| self.err(n, format!("unknown symbol `{s}`"))),
            NodeKind::List(items) if !items.is_empty() => {
                let head = self.symbol(&items[0])?.to_string();
                let args = &items[1..];
                match head.as_str() {
                    "not" if args.len() == 1 => self.args(n, args, 1, Sort::Bool, depth).map(|_| Sort::Bool),
                    "and" | "or" | "xor" | "=>" => self.args(n, args, 2, Sort::Bool, depth).map(|_| Sort::Bool),
                    "=" | "distinct" => {
                        if args.len() < 2 {
                            return Err(self.err(n, "expected at least 2 arguments"));
                        }
                        let first = self.sort(&args[0], depth)?;
                        for a in &args[1..] {
                            if self.sort(a, depth)? != first {
                                return Err(self.err(a, "mismatched sorts"));
                            }
                        }
                        Ok(Sort::Bool)
                    }
                    "+" | "*" | "/" => self.args(n, args, 2, Sort::Real, depth).map(|_| Sort::Real),
                    "-" => self.args(n, args, 1, Sort::Real, depth).map(|_| Sort::Real),
                    "<" | "<=" | ">" | ">=" => self.args(n, args, 2, Sort::Real, depth).map(|_| Sort::Bool),
                    "forall" | "exists" if args.len() == 2 => {
                        let NodeKind::List(bs) = &args[0].kind else {
                            return Err(self.err(&args[0], "expected a binder list"));
                        };
                        if bs.is_empty() {
                            return Err(self.err(&args[0], "empty binder list"));
                        }
                        let mark = self.scopes.len();
                        for b in bs {
                            match &b.kind {
                                NodeKind::List(pair) if pair.len() == 2 => {
                                    let name = self.symbol(&pair[0])?.to_string();
                                    let sort = self.sort_name(&pair[1])?;
                                    self.scopes.push((name, sort));
                                }
                                _ => return Err(self.err(b, "expected (name Sort)")),
                            }
                        }
                        let body = self.sort(&args[1], depth + 1);
                        self.scopes.truncate(mark);
                        match body? {
                            Sort::Bool => Ok(Sort::Bool),
                            Sort::Real => Err(self.err(&args[1], "quantifier body must be Bool")),
                        }
                    }
                    _ => Err(self.err(n, format!("unsupported application `{head}`"))),
                }
            }
            _ => Err(self.err(n, "unexpected term")),
        }
    }
}

/// Parses and sort-checks an SMT-LIB script in the subset emitted here:
/// `set-logic`, `set-option`, `set-info`, `declare-const`, nullary
/// `declare-fun`, `assert`, `check-sat`, `get-model`, `exit`; terms over
/// Bool and Real with quantifiers and arithmetic.
pub fn read_script(text: &str) -> Result<Script> {
    let mut ck = Checker {
        text,
        globals: HashMap::new(),
        scopes: Vec::new(),
        depth: 0,
    };
    let mut script = Script::default();
    for cmd in read_sexprs(text)? {
        let NodeKind::List(items) = &cmd.kind else {
            return Err(ck.err(&cmd, "expected a command"));
        };
        let Some(head) = items.first() else {
            return Err(ck.err(&cmd, "empty command"));
        };
        let name = ck.symbol(head)?.to_string();
        let args = &items[1..];
        match (name.as_str(), args.len()) {
            ("set-logic", 1) => script.logic = Some(ck.symbol(&args[0])?.to_string()),
            ("set-option" | "set-info", 1 | 2) => {}
            ("declare-const", 2) | ("declare-fun", 3) => {
                let c = ck.symbol(&args[0])?.to_string();
                if name == "declare-fun" && args[1].kind != NodeKind::List(vec![]) {
                    return Err(ck.err(&args[1], "only nullary functions are supported"));
                }
                let sort = ck.sort_name(args.last().expect("nonempty"))?;
                if ck.globals.insert(c.clone(), sort).is_some() {
                    return Err(ck.err(&args[0], format!("`{c}` declared twice")));
                }
                script.constants.push(c);
            }
            ("assert", 1) => {
                if ck.sort(&args[0], 0)? != Sort::Bool {
                    return Err(ck.err(&args[0], "assertion must be Bool"));
                }
                script.assertions += 1;
            }
            ("check-sat" | "get-model" | "exit", 0) => {}
            _ => return Err(ck.err(&cmd, format!("unsupported command `{name}`"))),
        }
        script.commands.push(name);
    }
    script.quantifier_depth = ck.depth;
    Ok(script)
}
