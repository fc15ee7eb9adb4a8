use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use moebius_core::Rational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::CliError;

/// Standard output, or the file given with `--out`.
pub fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(path) => {
            Box::new(BufWriter::new(File::create(path).map_err(|e| {
                CliError::usage(format!("cannot open {}: {e}", path.display()))
            })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// `x` with 12 significant digits, plain decimal notation.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let decimals = if x == 0.0 {
        11
    } else {
        (11 - x.abs().log10().floor() as i32).max(0) as usize
    };
    format!("{x:.decimals$}")
}

/// `{"num": "…", "den": "…", "decimal": …}`.
#[derive(Debug, Serialize)]
pub struct JsonRational {
    pub num: String,
    pub den: String,
    pub decimal: f64,
}

impl From<&Rational> for JsonRational {
    fn from(r: &Rational) -> Self {
        Self {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
            decimal: r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(0.7), "0.700000000000");
        assert_eq!(sig12(3162.2776601683795), "3162.27766017");
        assert_eq!(sig12(0.0), "0.00000000000");
        assert_eq!(sig12(0.8105694691387022), "0.810569469139");
        assert_eq!(sig12(-0.0123), "-0.0123000000000");
    }
}
