//! Plain-text ideal files.
//!
//! ```text
//! # comment
//! ring: x0..x3 over GF(32003)
//! order: degrevlex
//! ideal:
//!   x0^2, x0*x1, x1^2,
//!   x0*x2^2 + x1*x3^2
//! flags: reduced
//! ```
//!
//! `ring` and `ideal` are required, `order` defaults to `degrevlex`
//! (`elim(k)` selects the elimination order), and `flags` is a comma list of
//! `prime`, `reduced`, `points`, `parametrized(...)`. The variables are a
//! comma list of names or a range `x0..xN`. Each generator lies on one line;
//! generators are separated by commas or line breaks.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::scalar::{FieldKind, Scalar};
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Flag {
    Prime,
    Reduced,
    Points,
    Parametrized(String),
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flag::Prime => f.write_str("prime"),
            Flag::Reduced => f.write_str("reduced"),
            Flag::Points => f.write_str("points"),
            Flag::Parametrized(s) => write!(f, "parametrized({s})"),
        }
    }
}

/// A generator with the position of its first character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone)]
pub struct IdealFile {
    pub vars: Vec<String>,
    pub field: FieldKind,
    pub order: MonomialOrder,
    pub gens: Vec<Generator>,
    pub flags: Vec<Flag>,
}

/// Positions are not part of a file's identity.
impl PartialEq for IdealFile {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
            && self.field == other.field
            && self.order == other.order
            && self.flags == other.flags
            && self.gens.iter().map(|g| &g.text).eq(other.gens.iter().map(|g| &g.text))
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::IdealFile {
        line,
        column,
        message: message.into(),
    }
}

/// Column (1-based) of `part` inside `line`, both slices of the same string.
fn col(line: &str, part: &str) -> usize {
    part.as_ptr() as usize - line.as_ptr() as usize + 1
}

fn parse_vars(spec: &str, line: usize, column: usize) -> Result<Vec<String>> {
    if let Some((a, b)) = spec.split_once("..") {
        let (a, b) = (a.trim(), b.trim());
        let split = |s: &str| -> Option<(String, usize)> {
            let digits = s.len() - s.trim_start_matches(|c: char| !c.is_ascii_digit()).len();
            let (prefix, num) = s.split_at(digits);
            Some((prefix.to_string(), num.parse().ok()?))
        };
        let ((pa, lo), (pb, hi)) = match (split(a), split(b)) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(err(line, column, format!("bad variable range `{spec}`"))),
        };
        if pa != pb || pa.is_empty() || lo > hi {
            return Err(err(line, column, format!("bad variable range `{spec}`")));
        }
        return Ok((lo..=hi).map(|i| format!("{pa}{i}")).collect());
    }
    let vars: Vec<String> = spec.split(',').map(|v| v.trim().to_string()).collect();
    for v in &vars {
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(err(line, column, format!("bad variable name `{v}`")));
        }
    }
    Ok(vars)
}

fn parse_order(spec: &str, line: usize, column: usize) -> Result<MonomialOrder> {
    if spec == "degrevlex" {
        return Ok(MonomialOrder::DegRevLex);
    }
    spec.strip_prefix("elim(")
        .and_then(|s| s.strip_suffix(')'))
        .and_then(|k| k.trim().parse().ok())
        .map(MonomialOrder::Elimination)
        .ok_or_else(|| err(line, column, format!("unknown order `{spec}`; expected degrevlex or elim(k)")))
}

fn parse_flags(spec: &str, line: usize, column: usize) -> Result<Vec<Flag>> {
    let mut out = Vec::new();
    let mut rest = spec.trim();
    while !rest.is_empty() {
        let (item, tail) = if rest.starts_with("parametrized(") {
            let close = rest
                .find(')')
                .ok_or_else(|| err(line, column, "unclosed parametrized("))?;
            (&rest[..=close], &rest[close + 1..])
        } else {
            rest.split_at(rest.find(',').unwrap_or(rest.len()))
        };
        let item = item.trim();
        out.push(match item {
            "prime" => Flag::Prime,
            "reduced" => Flag::Reduced,
            "points" => Flag::Points,
            _ => match item.strip_prefix("parametrized(").and_then(|s| s.strip_suffix(')')) {
                Some(inner) => Flag::Parametrized(inner.trim().to_string()),
                None => return Err(err(line, column, format!("unknown flag `{item}`"))),
            },
        });
        rest = tail.trim_start();
        if let Some(t) = rest.strip_prefix(',') {
            rest = t.trim_start();
        } else if !rest.is_empty() {
            return Err(err(line, column, format!("expected `,` before `{rest}`")));
        }
    }
    Ok(out)
}

impl IdealFile {
    pub fn parse(src: &str) -> Result<Self> {
        let mut vars = None;
        let mut field = None;
        let mut order = None;
        let mut flags = None;
        let mut gens: Option<Vec<Generator>> = None;
        let mut in_ideal = false;

        for (ln, raw) in src.lines().enumerate() {
            let ln = ln + 1;
            let line = raw.split('#').next().unwrap();
            if line.trim().is_empty() {
                continue;
            }
            let indented = line.starts_with(char::is_whitespace);
            let header = line.split_once(':').filter(|(k, _)| {
                !indented && k.trim().chars().all(|c| c.is_ascii_alphabetic() || c == '_')
            });
            let Some((key, value)) = header else {
                if !in_ideal {
                    return Err(err(ln, 1, "expected `key: value`"));
                }
                push_gens(gens.as_mut().unwrap(), raw, line, ln)?;
                continue;
            };
            in_ideal = false;
            let vcol = col(raw, value) + (value.len() - value.trim_start().len());
            let value_t = value.trim();
            let dup = |set: bool| if set { Err(err(ln, 1, format!("duplicate key `{}`", key.trim()))) } else { Ok(()) };
            match key.trim() {
                "ring" => {
                    dup(vars.is_some())?;
                    let (vs, fs) = value_t
                        .rsplit_once(" over ")
                        .ok_or_else(|| err(ln, vcol, "expected `<variables> over <field>`"))?;
                    vars = Some(parse_vars(vs.trim(), ln, vcol)?);
                    let fcol = col(raw, fs);
                    field = Some(fs.trim().parse::<FieldKind>().map_err(|m| err(ln, fcol, m))?);
                }
                "order" => {
                    dup(order.is_some())?;
                    order = Some(parse_order(value_t, ln, vcol)?);
                }
                "flags" => {
                    dup(flags.is_some())?;
                    flags = Some(parse_flags(value_t, ln, vcol)?);
                }
                "ideal" => {
                    dup(gens.is_some())?;
                    let mut g = Vec::new();
                    push_gens(&mut g, raw, value, ln)?;
                    gens = Some(g);
                    in_ideal = true;
                }
                other => return Err(err(ln, 1, format!("unknown key `{other}`"))),
            }
        }
        let vars = vars.ok_or_else(|| err(1, 1, "missing `ring:` header"))?;
        let file = IdealFile {
            vars,
            field: field.unwrap(),
            order: order.unwrap_or(MonomialOrder::DegRevLex),
            gens: gens.ok_or_else(|| err(1, 1, "missing `ideal:` section"))?,
            flags: flags.unwrap_or_default(),
        };
        // syntax check over the rationals; the target field is checked in `polys`
        let ring = file.ring().map_err(|e| err(1, 1, e.to_string()))?;
        file.parse_gens::<BigRational>(&ring)?;
        Ok(file)
    }

    pub fn ring(&self) -> Result<Arc<Ring>> {
        Ring::new(self.vars.clone(), self.order)
    }

    fn parse_gens<F: Scalar>(&self, ring: &Arc<Ring>) -> Result<Vec<Polynomial<F>>> {
        self.gens
            .iter()
            .map(|g| {
                Polynomial::parse(ring, &g.text).map_err(|e| match e {
                    Error::Parse { offset, message } => err(g.line, g.column + offset, message),
                    other => err(g.line, g.column, other.to_string()),
                })
            })
            .collect()
    }

    /// The ring and generators over `F`. Fails if `F` is not the declared
    /// field.
    pub fn polys<F: Scalar>(&self) -> Result<(Arc<Ring>, Vec<Polynomial<F>>)> {
        if F::field() != self.field {
            return Err(Error::UnsupportedField(format!(
                "file declares {}, requested {}",
                self.field,
                F::field()
            )));
        }
        self.polys_over()
    }

    /// The ring and generators over `F`, ignoring the declared field.
    pub fn polys_over<F: Scalar>(&self) -> Result<(Arc<Ring>, Vec<Polynomial<F>>)> {
        let ring = self.ring()?;
        let gens = self.parse_gens(&ring)?;
        Ok((ring, gens))
    }

    pub fn has_flag(&self, f: &Flag) -> bool {
        self.flags.contains(f)
    }

    /// Builds a file from polynomials, printing them in canonical form.
    pub fn from_polys<F: Scalar>(ring: &Arc<Ring>, gens: &[Polynomial<F>], flags: Vec<Flag>) -> Self {
        IdealFile {
            vars: ring.names().to_vec(),
            field: F::field(),
            order: ring.order(),
            gens: gens
                .iter()
                .map(|g| Generator {
                    text: g.to_string(),
                    line: 0,
                    column: 0,
                })
                .collect(),
            flags,
        }
    }
}

fn push_gens(out: &mut Vec<Generator>, raw: &str, part: &str, line: usize) -> Result<()> {
    let base = col(raw, part);
    let mut offset = 0;
    for piece in part.split(',') {
        let start = offset + (piece.len() - piece.trim_start().len());
        offset += piece.len() + 1;
        let text = piece.trim();
        if text.is_empty() {
            continue;
        }
        out.push(Generator {
            text: text.to_string(),
            line,
            column: base + start,
        });
    }
    Ok(())
}

fn vars_to_string(vars: &[String]) -> String {
    // compact range when the names are p0..pN
    let first = &vars[0];
    let digits = first.len() - first.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let prefix = &first[..first.len() - digits];
    let is_range = !prefix.is_empty()
        && vars
            .iter()
            .enumerate()
            .all(|(i, v)| *v == format!("{prefix}{i}"));
    if is_range && vars.len() > 2 {
        format!("{prefix}0..{prefix}{}", vars.len() - 1)
    } else {
        vars.join(", ")
    }
}

impl fmt::Display for IdealFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring: {} over {}", vars_to_string(&self.vars), self.field)?;
        match self.order {
            MonomialOrder::DegRevLex => writeln!(f, "order: degrevlex")?,
            MonomialOrder::Elimination(k) => writeln!(f, "order: elim({k})")?,
        }
        writeln!(f, "ideal:")?;
        for (k, g) in self.gens.iter().enumerate() {
            let sep = if k + 1 < self.gens.len() { "," } else { "" };
            writeln!(f, "  {}{sep}", g.text)?;
        }
        if !self.flags.is_empty() {
            let fl: Vec<String> = self.flags.iter().map(|x| x.to_string()).collect();
            writeln!(f, "flags: {}", fl.join(", "))?;
        }
        Ok(())
    }
}
