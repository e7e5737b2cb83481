//! Complex literals: "re", "re,im", or "re+imi" / "re-imi".

use num_complex::Complex64;

/// Parses the three accepted spellings. The cartesian form uses a comma, the
/// suffixed form a trailing `i` whose sign splits the literal at the last
/// top-level `+`/`-` (exponent signs do not count).
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Some((re, im)) = s.split_once(',') {
        let re = parse_real(re)?;
        let im = parse_real(im)?;
        return Ok(Complex64::new(re, im));
    }
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        let split = body
            .char_indices()
            .rev()
            .find(|&(k, ch)| {
                (ch == '+' || ch == '-')
                    && k > 0
                    && !matches!(body.as_bytes()[k - 1], b'e' | b'E')
            })
            .map(|(k, _)| k);
        return match split {
            Some(k) => {
                let re = parse_real(&body[..k])?;
                let im = parse_imaginary(&body[k..])?;
                Ok(Complex64::new(re, im))
            }
            None => Ok(Complex64::new(0.0, parse_imaginary(body)?)),
        };
    }
    Ok(Complex64::new(parse_real(s)?, 0.0))
}

fn parse_real(text: &str) -> Result<f64, String> {
    let s = text.trim();
    s.parse::<f64>()
        .map_err(|_| format!("invalid real number `{s}`"))
}

fn parse_imaginary(text: &str) -> Result<f64, String> {
    match text.trim() {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        s => parse_real(s),
    }
}

/// Formats with 17 significant digits so `parse_complex` round-trips exactly.
pub fn format_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{:.16e}", c.re)
    } else {
        format!("{:.16e},{:.16e}", c.re, c.im)
    }
}

/// Six-significant-digit rendering for human output.
pub fn human_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{:.6}", c.re)
    } else if c.im < 0.0 {
        format!("{:.6}-{:.6}i", c.re, -c.im)
    } else {
        format!("{:.6}+{:.6}i", c.re, c.im)
    }
}
