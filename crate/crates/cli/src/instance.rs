//! Instance files.
//!
//! ```text
//! field: prime 2147483647
//! seed: 42
//! x^4
//! x^2*y^2
//! y^4
//! ```
//!
//! The first two lines fix the field and the seed; every further nonblank
//! line is one generator. Lines starting with `#` are comments.

use ratcurve::field::FieldMode;
use ratcurve::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub field: FieldMode,
    pub seed: u64,
    pub generators: Vec<String>,
}

fn header<'a>(line: Option<(usize, &'a str)>, key: &str) -> Result<&'a str> {
    let Some((no, line)) = line else {
        return Err(Error::Parse(format!("missing `{key}:` line")));
    };
    line.strip_prefix(key)
        .and_then(|rest| rest.trim_start().strip_prefix(':'))
        .map(str::trim)
        .ok_or_else(|| Error::Parse(format!("line {}: expected `{key}: ...`, found {line:?}", no + 1)))
}

pub fn parse_field(spec: &str) -> Result<FieldMode> {
    let mut words = spec.split_whitespace();
    match (words.next(), words.next(), words.next()) {
        (Some("rational"), None, None) => Ok(FieldMode::Rational),
        (Some("prime"), Some(p), None) => p
            .parse()
            .map(|p| FieldMode::Prime { p })
            .map_err(|_| Error::InvalidField(format!("modulus {p:?} is not an integer"))),
        _ => Err(Error::InvalidField(format!("expected `prime <p>` or `rational`, found {spec:?}"))),
    }
}

impl Instance {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let field = parse_field(header(lines.next(), "field")?)?;
        let seed_text = header(lines.next(), "seed")?;
        let seed = seed_text
            .parse()
            .map_err(|_| Error::Parse(format!("seed {seed_text:?} is not a nonnegative integer")))?;
        let generators: Vec<String> = lines.map(|(_, l)| l.to_string()).collect();
        if generators.is_empty() {
            return Err(Error::Parse("instance lists no generators".into()));
        }
        Ok(Self { field, seed, generators })
    }

    pub fn render(&self) -> String {
        let mut out = match self.field {
            FieldMode::Prime { p } => format!("field: prime {p}\n"),
            FieldMode::Rational => "field: rational\n".to_string(),
        };
        out.push_str(&format!("seed: {}\n", self.seed));
        for g in &self.generators {
            out.push_str(g);
            out.push('\n');
        }
        out
    }
}

/// `a:b:c` into its coordinate strings.
pub fn split_point(spec: &str) -> Result<Vec<&str>> {
    let coords: Vec<&str> = spec.split(':').map(str::trim).collect();
    if coords.iter().any(|c| c.is_empty()) {
        return Err(Error::Parse(format!("malformed point {spec:?}: expected `a:b:...`")));
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_renders() {
        let text = "field: prime 2147483647\nseed: 7\n# comment\nx^4\n\nx^2*y^2\ny^4\n";
        let inst = Instance::parse(text).unwrap();
        assert_eq!(inst.field, FieldMode::Prime { p: 2147483647 });
        assert_eq!(inst.seed, 7);
        assert_eq!(inst.generators, vec!["x^4", "x^2*y^2", "y^4"]);
        assert_eq!(Instance::parse(&inst.render()).unwrap(), inst);
        let inst = Instance::parse("field: rational\nseed: 0\nx\ny").unwrap();
        assert_eq!(inst.field, FieldMode::Rational);
    }

    #[test]
    fn rejects_malformed_headers() {
        assert!(Instance::parse("seed: 1\nfield: rational\nx").is_err());
        assert!(Instance::parse("field: prime\nseed: 1\nx").is_err());
        assert!(Instance::parse("field: complex\nseed: 1\nx").is_err());
        assert!(Instance::parse("field: rational\nseed: -1\nx").is_err());
        assert!(Instance::parse("field: rational\nseed: 1\n").is_err());
        assert!(Instance::parse("").is_err());
    }

    #[test]
    fn splits_points() {
        assert_eq!(split_point("1:1:1").unwrap(), vec!["1", "1", "1"]);
        assert_eq!(split_point("2 : -3").unwrap(), vec!["2", "-3"]);
        assert!(split_point("1::2").is_err());
    }
}
