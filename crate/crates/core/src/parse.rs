//! The `(VAR ...) (RULES ...)` text format and the term syntax `f(t1,...,tn)`.
//!
//! Identifiers match `[A-Za-z0-9_'+*-]+`; `->` is the rule arrow; `;` starts a
//! comment running to the end of the line. Identifiers declared in a `VAR`
//! section are variables, everything else is a function symbol whose arity is
//! fixed by its first use. `COMMENT` sections are skipped; any other section
//! is reported as unsupported.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::rewriting::{RewriteRule, Trs};
use crate::term_algebra::{Signature, Sym, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Comma,
    Arrow,
    Ident(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Loc {
    line: usize,
    column: usize,
    offset: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    loc: Loc,
    peeked: Option<(Tok, Loc)>,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || "_'+*-".contains(c)
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Self::resume(
            text,
            Loc {
                line: 1,
                column: 1,
                offset: 0,
            },
        )
    }

    /// Starts lexing at a location previously reported by a lexer over `text`.
    fn resume(text: &'a str, loc: Loc) -> Self {
        Lexer {
            chars: text[loc.offset..].chars().peekable(),
            loc,
            peeked: None,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        self.loc.offset += c.len_utf8();
        if c == '\n' {
            self.loc.line += 1;
            self.loc.column = 1;
        } else {
            self.loc.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn error<T>(loc: Loc, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: loc.line,
            column: loc.column,
            message: message.into(),
        })
    }

    fn lex(&mut self) -> Result<Option<(Tok, Loc)>> {
        self.skip_trivia();
        let start = self.loc;
        let Some(&c) = self.chars.peek() else {
            return Ok(None);
        };
        let tok = match c {
            '(' => {
                self.bump();
                Tok::Open
            }
            ')' => {
                self.bump();
                Tok::Close
            }
            ',' => {
                self.bump();
                Tok::Comma
            }
            '-' if self.arrow_ahead() => {
                self.bump();
                self.bump();
                Tok::Arrow
            }
            c if is_ident_char(c) => {
                let mut name = String::new();
                while let Some(&c) = self.chars.peek() {
                    if !is_ident_char(c) || (c == '-' && self.arrow_ahead()) {
                        break;
                    }
                    name.push(c);
                    self.bump();
                }
                Tok::Ident(name)
            }
            other => return Self::error(start, format!("unexpected character `{other}`")),
        };
        Ok(Some((tok, start)))
    }

    fn arrow_ahead(&self) -> bool {
        let mut it = self.chars.clone();
        it.next() == Some('-') && it.next() == Some('>')
    }

    fn peek(&mut self) -> Result<Option<&(Tok, Loc)>> {
        if self.peeked.is_none() {
            self.peeked = self.lex()?;
        }
        Ok(self.peeked.as_ref())
    }

    fn next(&mut self) -> Result<Option<(Tok, Loc)>> {
        match self.peeked.take() {
            Some(t) => Ok(Some(t)),
            None => self.lex(),
        }
    }

    fn here(&mut self) -> Loc {
        match &self.peeked {
            Some((_, loc)) => *loc,
            None => {
                self.skip_trivia();
                self.loc
            }
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Loc> {
        let here = self.here();
        match self.next()? {
            Some((t, loc)) if t == want => Ok(loc),
            Some((t, loc)) => Self::error(loc, format!("expected {what}, found {}", describe(&t))),
            None => Self::error(here, format!("expected {what}, found end of input")),
        }
    }

    /// Skips raw text up to and including the `)` that closes an already
    /// opened section.
    fn skip_section(&mut self, open: Loc) -> Result<()> {
        debug_assert!(self.peeked.is_none());
        let mut depth = 1;
        while let Some(c) = self.bump() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(());
                    }
                }
                _ => {}
            }
        }
        Self::error(open, "unterminated section")
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Open => "`(`".to_string(),
        Tok::Close => "`)`".to_string(),
        Tok::Comma => "`,`".to_string(),
        Tok::Arrow => "`->`".to_string(),
        Tok::Ident(s) => format!("`{s}`"),
    }
}

/// Builds terms, fixing symbol arities on first use.
struct TermBuilder<'v> {
    variables: &'v BTreeSet<Var>,
    signature: Signature,
    /// When set, unknown symbols are errors unless they are fresh constants
    /// and `allow_fresh` holds.
    closed: Option<bool>,
}

impl TermBuilder<'_> {
    fn term(&mut self, lx: &mut Lexer) -> Result<Term> {
        let here = lx.here();
        let (name, loc) = match lx.next()? {
            Some((Tok::Ident(name), loc)) => (name, loc),
            Some((t, loc)) => {
                return Lexer::error(loc, format!("expected a term, found {}", describe(&t)))
            }
            None => return Lexer::error(here, "expected a term, found end of input"),
        };
        let mut args = Vec::new();
        let has_parens = matches!(lx.peek()?, Some((Tok::Open, _)));
        if has_parens {
            lx.next()?;
            if !matches!(lx.peek()?, Some((Tok::Close, _))) {
                loop {
                    args.push(self.term(lx)?);
                    let here = lx.here();
                    match lx.next()? {
                        Some((Tok::Comma, _)) => continue,
                        Some((Tok::Close, _)) => break,
                        Some((t, l)) => {
                            return Lexer::error(
                                l,
                                format!("expected `,` or `)`, found {}", describe(&t)),
                            )
                        }
                        None => return Lexer::error(here, "unclosed argument list"),
                    }
                }
            } else {
                lx.next()?;
            }
        }
        let var = Var::new(&name);
        if self.variables.contains(&var) {
            if has_parens {
                return Lexer::error(loc, format!("variable `{name}` applied to arguments"));
            }
            return Ok(Term::Var(var));
        }
        let sym = Sym::new(&name);
        match (self.closed, self.signature.arity(&sym)) {
            (Some(_), Some(_)) | (None, _) => {}
            (Some(true), None) if args.is_empty() => {}
            (Some(true), None) => {
                return Lexer::error(loc, format!("unknown function symbol `{name}`"))
            }
            (Some(false), None) => {
                let hint = if args.is_empty() {
                    " (pass --allow-fresh-consts to admit new constants)"
                } else {
                    ""
                };
                return Lexer::error(loc, format!("unknown symbol `{name}`{hint}"));
            }
        }
        if let Err(Error::IllFormedTerm(msg)) = self.signature.declare(sym.clone(), args.len()) {
            return Lexer::error(loc, msg);
        }
        Ok(Term::App(sym, args))
    }
}

/// Parses a rewrite system in the `(VAR ...) (RULES ...)` format.
pub fn parse_trs(text: &str) -> Result<Trs> {
    // variables first, wherever their section appears
    let mut variables: BTreeSet<Var> = BTreeSet::new();
    let mut rule_sections: Vec<Loc> = Vec::new();
    {
        let mut lx = Lexer::new(text);
        while let Some((tok, open)) = lx.next()? {
            if tok != Tok::Open {
                return Lexer::error(open, format!("expected `(`, found {}", describe(&tok)));
            }
            let here = lx.here();
            let head = match lx.next()? {
                Some((Tok::Ident(h), _)) => h,
                Some((t, l)) => {
                    return Lexer::error(
                        l,
                        format!("expected a section name, found {}", describe(&t)),
                    )
                }
                None => return Lexer::error(here, "expected a section name"),
            };
            match head.as_str() {
                "VAR" => loop {
                    let here = lx.here();
                    match lx.next()? {
                        Some((Tok::Ident(v), _)) => {
                            variables.insert(Var::new(&v));
                        }
                        Some((Tok::Close, _)) => break,
                        Some((t, l)) => {
                            return Lexer::error(
                                l,
                                format!("expected a variable name, found {}", describe(&t)),
                            )
                        }
                        None => return Lexer::error(here, "unterminated VAR section"),
                    }
                },
                "RULES" => {
                    rule_sections.push(open);
                    lx.skip_section(open)?;
                }
                "COMMENT" => lx.skip_section(open)?,
                other => {
                    return Lexer::error(open, format!("unsupported feature: section `{other}`"))
                }
            }
        }
    }

    let mut builder = TermBuilder {
        variables: &variables,
        signature: Signature::new(),
        closed: None,
    };
    let mut rules = Vec::new();
    for open in rule_sections {
        let mut lx = Lexer::resume(text, open);
        lx.expect(Tok::Open, "`(`")?;
        lx.next()?; // RULES
        loop {
            if matches!(lx.peek()?, Some((Tok::Close, _))) {
                lx.next()?;
                break;
            }
            let start = lx.here();
            if lx.peek()?.is_none() {
                return Lexer::error(start, "unterminated RULES section");
            }
            let lhs = builder.term(&mut lx)?;
            lx.expect(Tok::Arrow, "`->`")?;
            let rhs = builder.term(&mut lx)?;
            match RewriteRule::new(lhs, rhs) {
                Ok(rule) => rules.push(rule),
                Err(Error::IllFormedRule(msg)) => return Lexer::error(start, msg),
                Err(e) => return Err(e),
            }
        }
    }
    Trs::new(builder.signature, variables, rules)
}

/// Parses a term against the symbols and variables of `trs`. Unknown
/// constants are admitted only with `allow_fresh_consts`.
pub fn parse_term(text: &str, trs: &Trs, allow_fresh_consts: bool) -> Result<Term> {
    let mut builder = TermBuilder {
        variables: trs.variables(),
        signature: trs.signature().clone(),
        closed: Some(allow_fresh_consts),
    };
    let mut lx = Lexer::new(text);
    let t = builder.term(&mut lx)?;
    let here = lx.here();
    if let Some((tok, _)) = lx.next()? {
        return Lexer::error(here, format!("trailing input at {}", describe(&tok)));
    }
    Ok(t)
}

/// Prints `trs` in the format accepted by [`parse_trs`].
pub fn print_trs(trs: &Trs) -> String {
    let mut out = String::from("(VAR");
    for v in trs.variables() {
        write!(out, " {v}").unwrap();
    }
    out.push_str(")\n(RULES\n");
    for r in trs.rules() {
        writeln!(out, "  {r}").unwrap();
    }
    out.push_str(")\n");
    out
}
