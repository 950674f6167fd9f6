//! CSV emission: locale-free 17-significant-digit numbers and atomic file
//! replacement.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use crate::Result;

/// Formats `v` with 17 significant digits in the style of C's `%.17g`, with
/// trailing fractional zeros removed. The output always round-trips through
/// `str::parse::<f64>`.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0" } else { "0" }.to_string();
    }
    let sci = format!("{:.16e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("exponent digits");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();

    let mut out = String::from(sign);
    if (-5..17).contains(&exp) {
        if exp < 0 {
            out.push_str("0.");
            for _ in 0..(-exp - 1) {
                out.push('0');
            }
            out.push_str(&digits);
        } else {
            let split = exp as usize + 1;
            out.push_str(&digits[..split]);
            out.push('.');
            out.push_str(&digits[split..]);
        }
        strip_fraction_zeros(&mut out);
    } else {
        let mut m = format!("{}.{}", &digits[..1], &digits[1..]);
        strip_fraction_zeros(&mut m);
        out.push_str(&m);
        let _ = write!(out, "e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    out
}

fn strip_fraction_zeros(s: &mut String) {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
}

/// Joins already formatted fields into one CSV line (no trailing newline).
pub fn csv_line<I, S>(fields: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut line = String::new();
    for (i, f) in fields.into_iter().enumerate() {
        if i > 0 {
            line.push(',');
        }
        line.push_str(f.as_ref());
    }
    line
}

/// Incrementally built CSV document.
#[derive(Debug, Default, Clone)]
pub struct CsvDoc {
    text: String,
}

impl CsvDoc {
    pub fn with_header(header: &str) -> Self {
        let mut doc = Self::default();
        doc.text.push_str(header);
        doc.text.push('\n');
        doc
    }

    pub fn push_row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.text.push_str(&csv_line(fields));
        self.text.push('\n');
    }

    pub fn push_numbers(&mut self, values: &[f64]) {
        self.push_row(values.iter().map(|v| fmt_num(*v)));
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn write_atomic(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.text.as_bytes())
    }
}

/// Writes `bytes` to a temporary file next to `path` and renames it into
/// place, so `path` is either absent, the old content, or the full new
/// content.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
