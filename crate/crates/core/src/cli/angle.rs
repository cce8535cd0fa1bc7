//! Angle arguments: plain radians or multiples of pi such as `pi/8`,
//! `-3pi/16` or `0.5*pi`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub fn parse_angle(text: &str) -> Result<f64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::usage(format!("cannot parse angle {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let lower = s.to_ascii_lowercase();
    let Some(pos) = lower.find("pi") else {
        let v: f64 = lower.parse().map_err(|_| bad())?;
        return if v.is_finite() { Ok(v) } else { Err(bad()) };
    };
    let (head, tail) = (&lower[..pos], &lower[pos + 2..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let factor = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| bad())?,
    };
    let divisor = if tail.is_empty() {
        1.0
    } else {
        let d = tail.strip_prefix('/').ok_or_else(bad)?;
        d.parse::<f64>().map_err(|_| bad())?
    };
    let v = factor * PI / divisor;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}
