//! Line-oriented walk text format.
//!
//! ```text
//! d=2;origin=0,0;steps=ENW
//! d=3;origin=0,0,0;steps=+1,+2,-1
//! ```
//!
//! Compass letters (`E`=+e1, `W`=-e1, `N`=+e2, `S`=-e2) are accepted for d=2
//! only; signed axis tokens `±k` work in any dimension. Serialization emits
//! letters for d=2 and signed tokens otherwise.

use super::point::{LatticePoint, Step};
use super::walk::Walk;
use crate::error::{Error, Result};

pub fn parse(text: &str) -> Result<Walk> {
    let mut fields = text.trim().split(';');
    let d_text = field(fields.next(), "d")?;
    let d: usize = d_text
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad dimension {d_text:?}")))?;
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let origin_text = field(fields.next(), "origin")?;
    let coords = origin_text
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<i32>()
                .map_err(|_| Error::Parse(format!("bad coordinate {c:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: coords.len(),
        });
    }
    let steps_text = field(fields.next(), "steps")?.trim();
    if fields.next().is_some() {
        return Err(Error::Parse("trailing fields after steps".into()));
    }
    let steps = parse_steps(steps_text, d)?;
    Walk::new(LatticePoint::new(&coords)?, steps)
}

pub fn serialize(w: &Walk) -> String {
    let d = w.dim();
    let origin = w
        .start()
        .coords()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let steps = if d == 2 {
        w.steps().iter().filter_map(|s| s.compass()).collect::<String>()
    } else {
        w.steps()
            .iter()
            .map(|s| s.signed_token())
            .collect::<Vec<_>>()
            .join(",")
    };
    format!("d={d};origin={origin};steps={steps}")
}

/// Parses every non-blank line of `text`.
pub fn parse_lines(text: &str) -> Result<Vec<Walk>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse)
        .collect()
}

fn field<'a>(part: Option<&'a str>, key: &str) -> Result<&'a str> {
    let part = part.ok_or_else(|| Error::Parse(format!("missing {key}= field")))?;
    let (k, v) = part
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("expected {key}=..., found {part:?}")))?;
    if k.trim() != key {
        return Err(Error::Parse(format!("expected {key}=..., found {part:?}")));
    }
    Ok(v)
}

fn parse_steps(text: &str, d: usize) -> Result<Vec<Step>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    if text.starts_with(['+', '-']) {
        return text.split(',').map(|t| signed_step(t.trim(), d)).collect();
    }
    if d != 2 {
        return Err(Error::Parse(format!("compass letters need d=2, got d={d}")));
    }
    text.chars()
        .map(|c| match c {
            'E' => Ok(Step::EAST),
            'W' => Ok(Step::WEST),
            'N' => Ok(Step::NORTH),
            'S' => Ok(Step::SOUTH),
            other => Err(Error::Parse(format!("invalid step token {other:?}"))),
        })
        .collect()
}

fn signed_step(token: &str, d: usize) -> Result<Step> {
    let (negative, rest) = match token.as_bytes().first() {
        Some(b'+') => (false, &token[1..]),
        Some(b'-') => (true, &token[1..]),
        _ => return Err(Error::Parse(format!("invalid step token {token:?}"))),
    };
    let axis: usize = rest
        .parse()
        .map_err(|_| Error::Parse(format!("invalid step token {token:?}")))?;
    if axis == 0 || axis > d {
        return Err(Error::Parse(format!("step {token} is not a unit vector of Z^{d}")));
    }
    Ok(Step::new(axis - 1, negative))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i32]) -> LatticePoint {
        LatticePoint::new(c).unwrap()
    }

    #[test]
    fn compass_example() {
        let w = parse("d=2;origin=0,0;steps=ENW").unwrap();
        assert_eq!(w.vertices(), &[p(&[0, 0]), p(&[1, 0]), p(&[1, 1]), p(&[0, 1])]);
        assert_eq!(serialize(&w), "d=2;origin=0,0;steps=ENW");
    }

    #[test]
    fn signed_example() {
        let text = "d=3;origin=0,0,0;steps=+1,+2,-1";
        let w = parse(text).unwrap();
        assert_eq!(
            w.vertices(),
            &[p(&[0, 0, 0]), p(&[1, 0, 0]), p(&[1, 1, 0]), p(&[0, 1, 0])]
        );
        assert_eq!(serialize(&w), text);
    }

    #[test]
    fn signed_tokens_in_two_dimensions() {
        assert_eq!(
            parse("d=2;origin=3,-1;steps=+1,-2").unwrap(),
            parse("d=2;origin=3,-1;steps=ES").unwrap()
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("d=2;origin=0,0;steps=EQ"), Err(Error::Parse(_))));
        assert!(matches!(parse("d=2;origin=0,0;steps=+3"), Err(Error::Parse(_))));
        assert!(matches!(
            parse("d=3;origin=0,0;steps=+1"),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(parse("d=3;origin=0,0,0;steps=EN").is_err());
        assert!(parse("origin=0,0;steps=E").is_err());
        assert!(parse("d=1;origin=0;steps=").is_err());
    }

    #[test]
    fn empty_walk_roundtrip() {
        let w = parse("d=2;origin=2,3;steps=").unwrap();
        assert_eq!(w.len(), 0);
        assert_eq!(serialize(&w), "d=2;origin=2,3;steps=");
    }
}
