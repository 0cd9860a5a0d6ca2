//! Angle arguments: raw radians or rational multiples of π.
//!
//! Accepted forms: `1.25`, `pi`, `-pi`, `pi/2`, `3pi/4`, `3*pi/4`, `-2pi/3`.

use std::f64::consts::PI;

pub fn parse_angle(input: &str) -> Result<f64, String> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let lower = s.to_ascii_lowercase();
    let value = match lower.find("pi") {
        None => lower.parse::<f64>().map_err(|_| format!("invalid angle `{input}`"))?,
        Some(at) => {
            let coeff = match lower[..at].trim_end_matches('*') {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| format!("invalid coefficient in `{input}`"))?,
            };
            let rest = &lower[at + 2..];
            let denom = match rest {
                "" => 1.0,
                _ => rest
                    .strip_prefix('/')
                    .and_then(|d| d.parse::<f64>().ok())
                    .filter(|d| *d != 0.0)
                    .ok_or_else(|| format!("invalid denominator in `{input}`"))?,
            };
            coeff * PI / denom
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("angle `{input}` is not finite"))
    }
}
