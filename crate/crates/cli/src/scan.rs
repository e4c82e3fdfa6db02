//! Grid scans of `lambda(tau)` and the Massey value, written as CSV.

use std::io::Write;
use std::path::Path;

use holink_core::massey::massey_value_closed_form;
use holink_core::special::modular_lambda;
use holink_core::{Error, Tau};
use rayon::prelude::*;

use crate::format::format_sig;

pub const HEADER: &str = "re_tau,im_tau,lambda_re,lambda_im,massey_value";
pub const CSV_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanGrid {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub steps_re: usize,
    pub steps_im: usize,
}

impl ScanGrid {
    /// A range may be degenerate (`min == max`) only when it has one step.
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |msg: String| Err(Error::Validation(msg));
        let all = [self.re_min, self.re_max, self.im_min, self.im_max];
        if all.iter().any(|v| !v.is_finite()) {
            return bad("grid bounds must be finite".into());
        }
        if self.steps_re == 0 || self.steps_im == 0 {
            return bad(format!(
                "steps must be at least 1 (got steps-re = {}, steps-im = {})",
                self.steps_re, self.steps_im
            ));
        }
        if self.im_min <= 0.0 {
            return bad(format!("im-min must be positive, got {}", self.im_min));
        }
        let ordered = |lo: f64, hi: f64, steps: usize| lo < hi || (lo == hi && steps == 1);
        if !ordered(self.re_min, self.re_max, self.steps_re) {
            return bad(format!("need re-min < re-max, got {} and {}", self.re_min, self.re_max));
        }
        if !ordered(self.im_min, self.im_max, self.steps_im) {
            return bad(format!("need im-min < im-max, got {} and {}", self.im_min, self.im_max));
        }
        Ok(())
    }

    fn axis(lo: f64, hi: f64, steps: usize, k: usize) -> f64 {
        if steps == 1 {
            lo
        } else {
            lo + (hi - lo) * k as f64 / (steps - 1) as f64
        }
    }

    pub fn re_at(&self, j: usize) -> f64 {
        Self::axis(self.re_min, self.re_max, self.steps_re, j)
    }

    pub fn im_at(&self, k: usize) -> f64 {
        Self::axis(self.im_min, self.im_max, self.steps_im, k)
    }
}

fn row(re: f64, im: f64) -> Result<String, Error> {
    let tau = Tau::from_parts(re, im)?;
    let lambda = modular_lambda(tau)?;
    let value = match massey_value_closed_form(tau) {
        Ok(v) => v,
        Err(Error::Divergence(_)) => f64::NEG_INFINITY,
        Err(e) => return Err(e),
    };
    let cells = [re, im, lambda.re, lambda.im, value].map(|v| format_sig(v, CSV_DIGITS));
    Ok(cells.join(","))
}

/// The full CSV text; rows are computed in parallel and assembled in order
/// (`Im tau` outer, `Re tau` inner).
pub fn render(grid: &ScanGrid) -> Result<String, Error> {
    grid.validate()?;
    let rows: Vec<String> = (0..grid.steps_im)
        .into_par_iter()
        .map(|k| {
            let im = grid.im_at(k);
            (0..grid.steps_re)
                .map(|j| row(grid.re_at(j), im))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    Ok(out)
}

/// Write through a temporary file in the destination directory and rename it
/// into place, so a failed run never leaves a partial file.
pub fn write_atomically(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(steps_re: usize, steps_im: usize) -> ScanGrid {
        ScanGrid {
            re_min: -0.5,
            re_max: 0.5,
            im_min: 0.8,
            im_max: 1.6,
            steps_re,
            steps_im,
        }
    }

    #[test]
    fn validation() {
        assert!(grid(0, 3).validate().is_err());
        assert!(grid(3, 0).validate().is_err());
        assert!(ScanGrid {
            im_min: 0.0,
            ..grid(2, 2)
        }
        .validate()
        .is_err());
        assert!(ScanGrid {
            re_max: -0.5,
            ..grid(2, 2)
        }
        .validate()
        .is_err());
        assert!(ScanGrid {
            re_max: -0.5,
            ..grid(1, 2)
        }
        .validate()
        .is_ok());
        assert!(ScanGrid {
            re_max: f64::NAN,
            ..grid(1, 2)
        }
        .validate()
        .is_err());
    }

    #[test]
    fn row_major_re_fastest() {
        let csv = render(&grid(3, 2)).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], HEADER);
        assert_eq!(lines.len(), 7);
        let coords: Vec<(String, String)> = lines[1..]
            .iter()
            .map(|l| {
                let mut it = l.split(',');
                (it.next().unwrap().to_string(), it.next().unwrap().to_string())
            })
            .collect();
        assert_eq!(coords[0], ("-0.5".into(), "0.8".into()));
        assert_eq!(coords[1], ("0".into(), "0.8".into()));
        assert_eq!(coords[2], ("0.5".into(), "0.8".into()));
        assert_eq!(coords[3], ("-0.5".into(), "1.6".into()));
    }

    #[test]
    fn deterministic() {
        assert_eq!(render(&grid(4, 4)).unwrap(), render(&grid(4, 4)).unwrap());
    }
}
