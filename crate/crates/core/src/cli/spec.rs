//! Textual chain specifications.
//!
//! ```text
//! chain  := stage ("|" stage)*
//! stage  := name "(" [args] ")"
//! args   := arg ("," arg)*
//! arg    := value | ident "=" value      positional arguments come first
//! value  := number | ident | "[" number "," number "]"
//! ```
//!
//! Filters and their parameters, in positional order:
//!
//! | name      | parameters                                   |
//! |-----------|----------------------------------------------|
//! | `butter`  | `band, order, fc`                            |
//! | `cheby1`  | `band, order, fc, ripple_db`                 |
//! | `loshelf` | `fc, gain_db, q = 0.7071`                    |
//! | `hishelf` | `fc, gain_db, q = 0.7071`                    |
//! | `peak`    | `fc, gain_db, q = 0.7071`                    |
//! | `fir`     | `band, taps, fc, window = hamming`           |
//!
//! `band` is `lp`, `hp` or `bp`; a bandpass takes `fc = [f1, f2]`.
//! `window` is `hamming`, `blackman` or `rect`.

use std::fmt;

use crate::chain::Chain;
use crate::design::{Band, FilterSpec, Window, DEFAULT_Q};
use crate::error::Error;

/// 1-based, inclusive-exclusive column range in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("column {column}: expected {}, found {found}", .expected.join(" or "))]
    Parse {
        column: usize,
        expected: Vec<&'static str>,
        found: String,
    },
    #[error("column {}: unknown filter {name:?} (expected one of {})", .span.start, FILTER_NAMES.join(", "))]
    UnknownFilter { name: String, span: Span },
    #[error("column {}: {filter} has no argument {name:?}", .span.start)]
    UnknownArgument {
        filter: &'static str,
        name: String,
        span: Span,
    },
    #[error("column {}: {filter} is missing required argument {name}", .span.start)]
    MissingRequiredArgument {
        filter: &'static str,
        name: &'static str,
        span: Span,
    },
    #[error("column {}: argument {name} given twice", .span.start)]
    DuplicateArgument { name: &'static str, span: Span },
    #[error("column {}: {name} must be {expected}", .span.start)]
    InvalidValue {
        name: &'static str,
        expected: &'static str,
        span: Span,
    },
    #[error("columns {}-{}: {source}", .span.start, .span.end.saturating_sub(1).max(.span.start))]
    Invalid {
        #[source]
        source: Error,
        span: Span,
    },
}

impl SpecError {
    /// 1-based column of the offending text.
    pub fn column(&self) -> usize {
        match self {
            SpecError::Parse { column, .. } => *column,
            SpecError::UnknownFilter { span, .. }
            | SpecError::UnknownArgument { span, .. }
            | SpecError::MissingRequiredArgument { span, .. }
            | SpecError::DuplicateArgument { span, .. }
            | SpecError::InvalidValue { span, .. }
            | SpecError::Invalid { span, .. } => span.start,
        }
    }

    /// The message followed by the source line and a caret under the column.
    pub fn render(&self, text: &str) -> String {
        let width = text[..text.len().min(self.column().saturating_sub(1))].chars().count();
        format!("{self}\n  {text}\n  {}^", " ".repeat(width))
    }
}

pub const FILTER_NAMES: [&str; 6] = ["butter", "cheby1", "loshelf", "hishelf", "peak", "fir"];

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(f64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Equals,
    Pipe,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s:?}"),
            Tok::Number(x) => write!(f, "{x}"),
            Tok::LParen => f.write_str("\"(\""),
            Tok::RParen => f.write_str("\")\""),
            Tok::LBracket => f.write_str("\"[\""),
            Tok::RBracket => f.write_str("\"]\""),
            Tok::Comma => f.write_str("\",\""),
            Tok::Equals => f.write_str("\"=\""),
            Tok::Pipe => f.write_str("\"|\""),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: Span,
}

fn lex(text: &str) -> Result<Vec<Token>, SpecError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Equals),
            '|' => Some(Tok::Pipe),
            _ => None,
        };
        let tok = if let Some(tok) = single {
            i += 1;
            tok
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start - 1..i].iter().collect())
        } else if c.is_ascii_digit() || matches!(c, '.' | '-' | '+') {
            i += 1;
            while i < chars.len() {
                let d = chars[i];
                let exp_sign = matches!(d, '-' | '+') && matches!(chars[i - 1], 'e' | 'E');
                if d.is_ascii_digit() || matches!(d, '.' | 'e' | 'E') || exp_sign {
                    i += 1;
                } else {
                    break;
                }
            }
            let s: String = chars[start - 1..i].iter().collect();
            match s.parse::<f64>() {
                Ok(x) => Tok::Number(x),
                Err(_) => {
                    return Err(SpecError::Parse {
                        column: start,
                        expected: vec!["number"],
                        found: format!("{s:?}"),
                    })
                }
            }
        } else {
            return Err(SpecError::Parse {
                column: start,
                expected: vec!["filter name", "argument", "\"|\""],
                found: format!("{c:?}"),
            });
        };
        out.push(Token {
            tok,
            span: Span { start, end: i + 1 },
        });
    }
    let end = chars.len() + 1;
    out.push(Token {
        tok: Tok::Eof,
        span: Span { start: end, end },
    });
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Value {
    Number(f64),
    Ident(String),
    Pair(f64, f64),
}

#[derive(Debug)]
struct Arg {
    name: Option<(String, Span)>,
    value: Value,
    span: Span,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: Vec<&'static str>) -> Result<T, SpecError> {
        let t = self.peek();
        Err(SpecError::Parse {
            column: t.span.start,
            expected,
            found: t.tok.to_string(),
        })
    }

    fn expect(&mut self, tok: Tok, label: &'static str) -> Result<Token, SpecError> {
        if self.peek().tok == tok {
            Ok(self.next())
        } else {
            self.fail(vec![label])
        }
    }

    fn number(&mut self) -> Result<f64, SpecError> {
        match self.peek().tok {
            Tok::Number(x) => {
                self.next();
                Ok(x)
            }
            _ => self.fail(vec!["number"]),
        }
    }

    fn value(&mut self) -> Result<(Value, Span), SpecError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Number(x) => {
                self.next();
                Ok((Value::Number(x), t.span))
            }
            Tok::Ident(s) => {
                self.next();
                Ok((Value::Ident(s), t.span))
            }
            Tok::LBracket => {
                self.next();
                let a = self.number()?;
                self.expect(Tok::Comma, "\",\"")?;
                let b = self.number()?;
                let close = self.expect(Tok::RBracket, "\"]\"")?;
                Ok((
                    Value::Pair(a, b),
                    Span {
                        start: t.span.start,
                        end: close.span.end,
                    },
                ))
            }
            _ => self.fail(vec!["number", "identifier", "\"[\""]),
        }
    }

    fn arg(&mut self, keyword_seen: bool) -> Result<Arg, SpecError> {
        let first = self.peek().clone();
        if let Tok::Ident(name) = &first.tok {
            if self.tokens[self.pos + 1].tok == Tok::Equals {
                self.next();
                self.next();
                let (value, vspan) = self.value()?;
                return Ok(Arg {
                    name: Some((name.clone(), first.span)),
                    value,
                    span: Span {
                        start: first.span.start,
                        end: vspan.end,
                    },
                });
            }
        }
        if keyword_seen {
            return self.fail(vec!["keyword argument"]);
        }
        let (value, span) = self.value()?;
        Ok(Arg {
            name: None,
            value,
            span,
        })
    }

    fn stage(&mut self) -> Result<(String, Span, Vec<Arg>, Span), SpecError> {
        let t = self.peek().clone();
        let Tok::Ident(name) = t.tok else {
            return self.fail(vec!["filter name"]);
        };
        self.next();
        self.expect(Tok::LParen, "\"(\"")?;
        let mut args = Vec::new();
        let mut keyword_seen = false;
        if self.peek().tok != Tok::RParen {
            loop {
                let arg = self.arg(keyword_seen)?;
                keyword_seen |= arg.name.is_some();
                args.push(arg);
                match self.peek().tok {
                    Tok::Comma => {
                        self.next();
                    }
                    Tok::RParen => break,
                    _ => return self.fail(vec!["\",\"", "\")\""]),
                }
            }
        }
        let close = self.next();
        let span = Span {
            start: t.span.start,
            end: close.span.end,
        };
        Ok((name, t.span, args, span))
    }
}

#[derive(Clone, Copy)]
enum Kind {
    Band,
    Int,
    Real,
    Cutoff,
    Window,
}

struct Param {
    name: &'static str,
    kind: Kind,
    default: Option<Value>,
}

const fn req(name: &'static str, kind: Kind) -> Param {
    Param {
        name,
        kind,
        default: None,
    }
}

fn eq_params() -> Vec<Param> {
    vec![
        req("fc", Kind::Real),
        req("gain_db", Kind::Real),
        Param {
            name: "q",
            kind: Kind::Real,
            default: Some(Value::Number(DEFAULT_Q)),
        },
    ]
}

fn params(filter: &str) -> Option<(&'static str, Vec<Param>)> {
    Some(match filter {
        "butter" => (
            "butter",
            vec![
                req("band", Kind::Band),
                req("order", Kind::Int),
                req("fc", Kind::Cutoff),
            ],
        ),
        "cheby1" => (
            "cheby1",
            vec![
                req("band", Kind::Band),
                req("order", Kind::Int),
                req("fc", Kind::Cutoff),
                req("ripple_db", Kind::Real),
            ],
        ),
        "loshelf" => ("loshelf", eq_params()),
        "hishelf" => ("hishelf", eq_params()),
        "peak" => ("peak", eq_params()),
        "fir" => (
            "fir",
            vec![
                req("band", Kind::Band),
                req("taps", Kind::Int),
                req("fc", Kind::Cutoff),
                Param {
                    name: "window",
                    kind: Kind::Window,
                    default: Some(Value::Ident("hamming".into())),
                },
            ],
        ),
        _ => return None,
    })
}

/// Argument values after matching, indexed like the parameter table.
struct Bound {
    values: Vec<(Value, Span)>,
}

impl Bound {
    fn band_name(&self, i: usize, name: &'static str) -> Result<&'static str, SpecError> {
        let (v, span) = &self.values[i];
        match v {
            Value::Ident(s) if matches!(s.as_str(), "lp" | "lowpass") => Ok("lp"),
            Value::Ident(s) if matches!(s.as_str(), "hp" | "highpass") => Ok("hp"),
            Value::Ident(s) if matches!(s.as_str(), "bp" | "bandpass") => Ok("bp"),
            _ => Err(SpecError::InvalidValue {
                name,
                expected: "one of lp, hp, bp",
                span: *span,
            }),
        }
    }

    fn real(&self, i: usize, name: &'static str) -> Result<f64, SpecError> {
        match &self.values[i] {
            (Value::Number(x), _) => Ok(*x),
            (_, span) => Err(SpecError::InvalidValue {
                name,
                expected: "a number",
                span: *span,
            }),
        }
    }

    fn int(&self, i: usize, name: &'static str) -> Result<usize, SpecError> {
        match &self.values[i] {
            (Value::Number(x), _) if *x >= 0.0 && x.fract() == 0.0 && *x <= u32::MAX as f64 => Ok(*x as usize),
            (_, span) => Err(SpecError::InvalidValue {
                name,
                expected: "a non-negative integer",
                span: *span,
            }),
        }
    }

    fn band(&self, band_index: usize, fc_index: usize) -> Result<Band, SpecError> {
        let (fc, span) = &self.values[fc_index];
        match (self.band_name(band_index, "band")?, fc) {
            ("lp", Value::Number(f)) => Ok(Band::Lowpass(*f)),
            ("hp", Value::Number(f)) => Ok(Band::Highpass(*f)),
            ("bp", Value::Pair(a, b)) => Ok(Band::Bandpass(*a, *b)),
            ("bp", _) => Err(SpecError::InvalidValue {
                name: "fc",
                expected: "a pair [f1, f2] for a bandpass",
                span: *span,
            }),
            _ => Err(SpecError::InvalidValue {
                name: "fc",
                expected: "a number",
                span: *span,
            }),
        }
    }

    fn window(&self, i: usize) -> Result<Window, SpecError> {
        match &self.values[i] {
            (Value::Ident(s), _) if s == "hamming" => Ok(Window::Hamming),
            (Value::Ident(s), _) if s == "blackman" => Ok(Window::Blackman),
            (Value::Ident(s), _) if s == "rect" || s == "rectangular" => Ok(Window::Rect),
            (_, span) => Err(SpecError::InvalidValue {
                name: "window",
                expected: "one of hamming, blackman, rect",
                span: *span,
            }),
        }
    }
}

fn match_args(filter: &'static str, table: &[Param], args: Vec<Arg>, stage_span: Span) -> Result<Bound, SpecError> {
    let mut slots: Vec<Option<(Value, Span)>> = table.iter().map(|_| None).collect();
    for (i, arg) in args.into_iter().enumerate() {
        let index = match &arg.name {
            None => {
                if i >= table.len() {
                    return Err(SpecError::Parse {
                        column: arg.span.start,
                        expected: vec!["\")\""],
                        found: format!("extra argument to {filter}"),
                    });
                }
                i
            }
            Some((name, span)) => {
                table
                    .iter()
                    .position(|p| p.name == name)
                    .ok_or_else(|| SpecError::UnknownArgument {
                        filter,
                        name: name.clone(),
                        span: *span,
                    })?
            }
        };
        if slots[index].is_some() {
            return Err(SpecError::DuplicateArgument {
                name: table[index].name,
                span: arg.span,
            });
        }
        slots[index] = Some((arg.value, arg.span));
    }
    let values = slots
        .into_iter()
        .zip(table)
        .map(|(slot, p)| match (slot, &p.default) {
            (Some(v), _) => Ok(v),
            (None, Some(d)) => Ok((d.clone(), stage_span)),
            (None, None) => Err(SpecError::MissingRequiredArgument {
                filter,
                name: p.name,
                span: stage_span,
            }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    for ((v, span), p) in values.iter().zip(table) {
        let ok = match p.kind {
            Kind::Band | Kind::Window => matches!(v, Value::Ident(_)),
            Kind::Int | Kind::Real => matches!(v, Value::Number(_)),
            Kind::Cutoff => matches!(v, Value::Number(_) | Value::Pair(..)),
        };
        if !ok {
            let expected = match p.kind {
                Kind::Band => "one of lp, hp, bp",
                Kind::Window => "one of hamming, blackman, rect",
                Kind::Int => "a non-negative integer",
                Kind::Real => "a number",
                Kind::Cutoff => "a number or a pair [f1, f2]",
            };
            return Err(SpecError::InvalidValue {
                name: p.name,
                expected,
                span: *span,
            });
        }
    }
    Ok(Bound { values })
}

fn build(filter: &'static str, b: &Bound) -> Result<FilterSpec, SpecError> {
    Ok(match filter {
        "butter" => FilterSpec::butterworth(b.band(0, 2)?, b.int(1, "order")?),
        "cheby1" => FilterSpec::chebyshev1(b.band(0, 2)?, b.int(1, "order")?, b.real(3, "ripple_db")?),
        "fir" => FilterSpec::fir(b.band(0, 2)?, b.int(1, "taps")?, b.window(3)?),
        _ => {
            let (fc, gain_db, q) = (b.real(0, "fc")?, b.real(1, "gain_db")?, b.real(2, "q")?);
            match filter {
                "loshelf" => FilterSpec::low_shelf(fc, gain_db, q),
                "hishelf" => FilterSpec::high_shelf(fc, gain_db, q),
                _ => FilterSpec::peaking(fc, gain_db, q),
            }
        }
    })
}

/// Parses `text` into an unbound chain.
pub fn parse_chain_spec(text: &str) -> Result<Chain, SpecError> {
    let mut parser = Parser {
        tokens: lex(text)?,
        pos: 0,
    };
    let mut chain = Chain::identity();
    loop {
        let (name, name_span, args, span) = parser.stage()?;
        let (filter, table) = params(&name).ok_or(SpecError::UnknownFilter { name, span: name_span })?;
        let bound = match_args(filter, &table, args, span)?;
        let spec = build(filter, &bound)?;
        let stage = spec.unbound().map_err(|source| SpecError::Invalid { source, span })?;
        chain = crate::chain::compose(chain, stage).expect("unbound stages always compose");
        match parser.peek().tok {
            Tok::Pipe => {
                parser.next();
            }
            Tok::Eof => return Ok(chain),
            _ => return parser.fail(vec!["\"|\"", "end of input"]),
        }
    }
}
