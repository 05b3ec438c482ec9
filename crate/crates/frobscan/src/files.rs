//! Text formats for varieties and cubic surfaces.
//!
//! A variety file is a list of `key: value` lines; `#` starts a comment.
//!
//! ```text
//! vars: x y
//! eq: y^2 - x^3 - x
//! bad: 2 3
//! disc_of: x^3 + x
//! ```
//!
//! `vars` must come first and appear once. Each `eq` adds an equation;
//! `bad` lines add explicit bad primes; `disc_of` names a univariate
//! polynomial whose `2 * lc * disc` supplies further bad primes.
//!
//! A surface file describes `y^2 = a x^3 + b(t) x^2 + c(t) x + d(t)` with
//! keys `a` (an integer) and `b`, `c`, `d` (polynomials in `t`); absent
//! keys are zero.

use std::fmt::Write as _;

use frobscan_core::constructions::{ConstructionError, NonExSurface};
use frobscan_core::poly::parse_poly;
use frobscan_core::{CountError, UniPoly, Variety};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {message}")]
pub struct FileError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FileError {
    FileError {
        line,
        message: message.into(),
    }
}

/// Non-empty `(line number, key, value)` entries with comments stripped.
fn entries(text: &str) -> Result<Vec<(usize, &str, &str)>, FileError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| err(i + 1, "expected `key: value`"))?;
        out.push((i + 1, key.trim(), value.trim()));
    }
    Ok(out)
}

pub fn parse_variety(text: &str) -> Result<Variety, FileError> {
    let mut vars: Option<Vec<String>> = None;
    let mut eqs = Vec::new();
    let mut bad = Vec::new();
    let mut disc: Option<(usize, UniPoly)> = None;
    for (line, key, value) in entries(text)? {
        if key != "vars" && vars.is_none() {
            return Err(err(line, "`vars:` must come first"));
        }
        match key {
            "vars" => {
                if vars.is_some() {
                    return Err(err(line, "`vars:` given twice"));
                }
                let names: Vec<String> = value.split_whitespace().map(String::from).collect();
                for (i, n) in names.iter().enumerate() {
                    let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                        && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                    if !ok {
                        return Err(err(line, format!("invalid variable name `{n}`")));
                    }
                    if names[..i].contains(n) {
                        return Err(err(line, format!("variable `{n}` declared twice")));
                    }
                }
                vars = Some(names);
            }
            "eq" => {
                let vs = vars.as_ref().expect("checked above");
                let p = parse_poly(value, vs).map_err(|e| err(line, e.to_string()))?;
                eqs.push(p);
            }
            "bad" => {
                for tok in value.split_whitespace() {
                    let p: u64 = tok
                        .parse()
                        .map_err(|_| err(line, format!("`{tok}` is not a prime")))?;
                    if !frobscan_core::primes::is_prime(p) {
                        return Err(err(line, format!("`{tok}` is not a prime")));
                    }
                    bad.push(p);
                }
            }
            "disc_of" => {
                if disc.is_some() {
                    return Err(err(line, "`disc_of:` given twice"));
                }
                let vs = vars.as_ref().expect("checked above");
                let p = parse_poly(value, vs).map_err(|e| err(line, e.to_string()))?;
                let support = p.support();
                if support.len() != 1 {
                    return Err(err(
                        line,
                        "`disc_of:` needs a polynomial in exactly one variable",
                    ));
                }
                let h = p
                    .to_univariate(support[0])
                    .map_err(|e| err(line, e.to_string()))?;
                disc = Some((line, h));
            }
            other => return Err(err(line, format!("unknown key `{other}`"))),
        }
    }
    let vars = vars.ok_or_else(|| err(0, "missing `vars:` line"))?;
    let mut v = Variety::new(vars, eqs)
        .map_err(|e: CountError| err(0, e.to_string()))?
        .with_bad_primes(bad);
    if let Some((line, h)) = disc {
        v = v
            .with_discriminant_generator(h)
            .map_err(|e| err(line, e.to_string()))?;
    }
    Ok(v)
}

/// Writes `v` back in the variety file format.
pub fn render_variety(v: &Variety) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "vars: {}", v.variables().join(" "));
    for e in v.equations() {
        let _ = writeln!(s, "eq: {e}");
    }
    let bad = v.bad_primes();
    let explicit: Vec<String> = bad.explicit().iter().map(u64::to_string).collect();
    if !explicit.is_empty() {
        let _ = writeln!(s, "bad: {}", explicit.join(" "));
    }
    if let Some(h) = bad.generator() {
        let _ = writeln!(s, "disc_of: {h}");
    }
    s
}

pub fn parse_surface(text: &str) -> Result<NonExSurface, FileError> {
    let t = [String::from("t")];
    let mut a: Option<BigInt> = None;
    let mut polys: [Option<UniPoly>; 3] = [None, None, None];
    for (line, key, value) in entries(text)? {
        let slot = match key {
            "a" => {
                let v = parse_poly(value, &[])
                    .map_err(|e| err(line, e.to_string()))?
                    .as_constant()
                    .ok_or_else(|| err(line, "`a` must be an integer"))?;
                a = Some(v);
                continue;
            }
            "b" => 0,
            "c" => 1,
            "d" => 2,
            other => return Err(err(line, format!("unknown key `{other}`"))),
        };
        if polys[slot].is_some() {
            return Err(err(line, format!("`{key}` given twice")));
        }
        let p = parse_poly(value, &t).map_err(|e| err(line, e.to_string()))?;
        polys[slot] = Some(p.to_univariate(0).map_err(|e| err(line, e.to_string()))?);
    }
    let a = a.ok_or_else(|| err(0, "missing `a:` line"))?;
    let [b, c, d] = polys.map(|p| p.unwrap_or_else(|| UniPoly::new("t", Vec::new())));
    NonExSurface::new(a, b, c, d).map_err(|e: ConstructionError| err(0, e.to_string()))
}

pub fn render_surface(s: &NonExSurface) -> String {
    format!("a: {}\nb: {}\nc: {}\nd: {}\n", s.a(), s.b(), s.c(), s.d())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variety_round_trip() {
        let text = "# curve\nvars: x y\neq: y^2 - x^3 - x  # CM\nbad: 2 3\ndisc_of: x^3 + x\n";
        let v = parse_variety(text).unwrap();
        assert_eq!(v.variables(), &["x", "y"]);
        assert!(!v.is_good(3));
        assert!(v.is_good(5));
        let again = parse_variety(&render_variety(&v)).unwrap();
        assert_eq!(again, v);
    }

    #[test]
    fn variety_errors_carry_lines() {
        let e = parse_variety("eq: x\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_variety("vars: x\neq: x + z\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains('z'));
        let e = parse_variety("vars: x\nbad: 4\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_variety("vars: x y\ndisc_of: x*y\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_variety("vars: x x\n").is_err());
        assert!(parse_variety("vars: x\nfoo: 1\n").is_err());
        assert!(parse_variety("").is_err());
    }

    #[test]
    fn surface_files() {
        let s = parse_surface("a: 2\nb: t\nd: t^5 - 1\n").unwrap();
        assert_eq!(s.a(), &BigInt::from(2));
        assert!(s.c().is_zero());
        assert_eq!(parse_surface(&render_surface(&s)).unwrap(), s);
        let e = parse_surface("a: 1\nd: t^6\n").unwrap_err();
        assert!(e.message.contains("deg d"));
        assert!(parse_surface("a: 0\n").is_err());
        assert!(parse_surface("a: t\n").is_err());
    }
}
