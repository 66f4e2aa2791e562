//! Versioned CSV formats for the toolkit's durable outputs.
//!
//! Four row schemas, each with a mandatory first-line version header that
//! readers check exactly (`# hs-eig v1`, `# hs-len v1`, `# hs-weyl v1`,
//! `# hs-wind v1`, plus the coefficient sibling `# hs-coef v1`). Writers
//! are atomic: content goes to a temporary file in the same directory and
//! is renamed into place, so a crash never leaves a half-written table.
//! Floats are printed with Rust's shortest round-trip formatting.

use crate::error::{Error, Result};
use crate::maass::{SpectralPoint, Symmetry};
use crate::scattering::WindingRecord;
use crate::traceform::{CountingCurve, LengthSpectrumEntry};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

const EIG_HEADER: &str = "# hs-eig v1";
const COEF_HEADER: &str = "# hs-coef v1";
const LEN_HEADER: &str = "# hs-len v1";
const WEYL_HEADER: &str = "# hs-weyl v1";
const WIND_HEADER: &str = "# hs-wind v1";

/// One row of an eigenvalue table; the Fourier coefficients live in the
/// sibling coefficient file.
#[derive(Debug, Clone, Copy)]
pub struct EigenvalueRecord {
    pub r: f64,
    pub lambda: f64,
    pub symmetry: Symmetry,
    /// Truncation length of the stored expansion.
    pub truncation: usize,
    pub residual_two_height: f64,
    pub residual_hecke: f64,
}

/// One row of a coefficient table: coefficient a_n of the form labeled by
/// its spectral parameter r.
#[derive(Debug, Clone, Copy)]
pub struct CoefficientRow {
    pub r: f64,
    pub n: usize,
    pub value: f64,
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let name = path
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| Error::Io(format!("path has no file name: {}", path.display())))?;
    let tmp = path.with_file_name(format!("{name}.tmp"));
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn read_rows(path: &Path, header: &str) -> Result<Vec<(usize, Vec<String>)>> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, first)) if first.trim_end() == header => {}
        Some((_, first)) => {
            return Err(Error::Schema(format!(
                "{}: expected header {header:?}, found {first:?}",
                path.display()
            )));
        }
        None => {
            return Err(Error::Schema(format!("{}: empty file", path.display())));
        }
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        rows.push((
            idx + 1,
            line.split(',').map(|t| t.trim().to_string()).collect(),
        ));
    }
    Ok(rows)
}

fn want_cols(row: &[String], n: usize, line: usize) -> Result<()> {
    if row.len() != n {
        return Err(Error::Schema(format!(
            "line {line}: expected {n} columns, found {}",
            row.len()
        )));
    }
    Ok(())
}

fn parse_f64(tok: &str, line: usize) -> Result<f64> {
    tok.parse()
        .map_err(|_| Error::Schema(format!("line {line}: not a number: {tok:?}")))
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Schema(format!("line {line}: not a count: {tok:?}")))
}

/// Path of the coefficient sibling of an eigenvalue table:
/// `dir/name.csv` maps to `dir/name.coeffs.csv`.
pub fn coefficient_sibling(path: &Path) -> Result<PathBuf> {
    let stem = path
        .file_stem()
        .and_then(|n| n.to_str())
        .ok_or_else(|| Error::Io(format!("path has no file name: {}", path.display())))?;
    Ok(path.with_file_name(format!("{stem}.coeffs.csv")))
}

/// Writes accepted spectral points as an eigenvalue table plus the
/// coefficient sibling file next to it.
pub fn write_eigenvalues(path: &Path, points: &[SpectralPoint]) -> Result<()> {
    let mut eig = String::from(EIG_HEADER);
    eig.push_str("\n# r,lambda,symmetry,M,residual_two_height,residual_hecke\n");
    let mut coef = String::from(COEF_HEADER);
    coef.push_str("\n# r,n,a_n\n");
    for p in points {
        let _ = writeln!(
            eig,
            "{},{},{},{},{},{}",
            p.r,
            p.lambda,
            p.symmetry,
            p.coefficients.truncation(),
            p.residual_two_height,
            p.residual_hecke
        );
        for n in 1..=p.coefficients.truncation() {
            let _ = writeln!(coef, "{},{},{}", p.r, n, p.coefficients.coeff(n));
        }
    }
    write_atomic(path, &eig)?;
    write_atomic(&coefficient_sibling(path)?, &coef)
}

/// Reads an eigenvalue table (not the coefficient sibling).
pub fn read_eigenvalues(path: &Path) -> Result<Vec<EigenvalueRecord>> {
    let mut out = Vec::new();
    for (line, row) in read_rows(path, EIG_HEADER)? {
        want_cols(&row, 6, line)?;
        let r = parse_f64(&row[0], line)?;
        let lambda = parse_f64(&row[1], line)?;
        let symmetry = Symmetry::from_str(&row[2])
            .map_err(|_| Error::Schema(format!("line {line}: bad symmetry {:?}", row[2])))?;
        let truncation = parse_usize(&row[3], line)?;
        let residual_two_height = parse_f64(&row[4], line)?;
        let residual_hecke = parse_f64(&row[5], line)?;
        if !(r.is_finite() && lambda.is_finite()) {
            return Err(Error::Schema(format!(
                "line {line}: non-finite spectral data"
            )));
        }
        out.push(EigenvalueRecord {
            r,
            lambda,
            symmetry,
            truncation,
            residual_two_height,
            residual_hecke,
        });
    }
    Ok(out)
}

/// Reads a coefficient table.
pub fn read_coefficients(path: &Path) -> Result<Vec<CoefficientRow>> {
    let mut out = Vec::new();
    for (line, row) in read_rows(path, COEF_HEADER)? {
        want_cols(&row, 3, line)?;
        out.push(CoefficientRow {
            r: parse_f64(&row[0], line)?,
            n: parse_usize(&row[1], line)?,
            value: parse_f64(&row[2], line)?,
        });
    }
    Ok(out)
}

/// Writes a length spectrum table.
pub fn write_lengths(path: &Path, entries: &[LengthSpectrumEntry]) -> Result<()> {
    let mut text = String::from(LEN_HEADER);
    text.push_str("\n# ell,ell0,mult\n");
    for e in entries {
        let _ = writeln!(text, "{},{},{}", e.ell, e.ell0, e.mult);
    }
    write_atomic(path, &text)
}

/// Reads a length spectrum table, revalidating every row.
pub fn read_lengths(path: &Path) -> Result<Vec<LengthSpectrumEntry>> {
    let mut out = Vec::new();
    for (line, row) in read_rows(path, LEN_HEADER)? {
        want_cols(&row, 3, line)?;
        let ell = parse_f64(&row[0], line)?;
        let ell0 = parse_f64(&row[1], line)?;
        let mult = row[2]
            .parse::<u32>()
            .map_err(|_| Error::Schema(format!("line {line}: bad multiplicity {:?}", row[2])))?;
        out.push(
            LengthSpectrumEntry::new(ell, ell0, mult)
                .map_err(|e| Error::Schema(format!("line {line}: {e}")))?,
        );
    }
    Ok(out)
}

/// Writes a counting curve; the fit constants repeat on every row so the
/// table stays flat.
pub fn write_counting_curve(path: &Path, curve: &CountingCurve) -> Result<()> {
    let mut text = String::from(WEYL_HEADER);
    text.push_str("\n# lambda,N,M,main,D,fit_c,fit_residual\n");
    for i in 0..curve.grid.len() {
        let _ = writeln!(
            text,
            "{},{},{},{},{},{},{}",
            curve.grid[i],
            curve.n[i],
            curve.m_winding[i],
            curve.main[i],
            curve.d[i],
            curve.fit_c,
            curve.fit_residual
        );
    }
    write_atomic(path, &text)
}

/// Reads a counting curve, requiring the repeated fit constants to agree
/// across rows.
pub fn read_counting_curve(path: &Path) -> Result<CountingCurve> {
    let rows = read_rows(path, WEYL_HEADER)?;
    if rows.is_empty() {
        return Err(Error::Schema("counting curve has no rows".into()));
    }
    let mut curve = CountingCurve {
        grid: Vec::new(),
        n: Vec::new(),
        m_winding: Vec::new(),
        main: Vec::new(),
        d: Vec::new(),
        fit_c: 0.0,
        fit_residual: 0.0,
    };
    for (i, (line, row)) in rows.iter().enumerate() {
        want_cols(row, 7, *line)?;
        curve.grid.push(parse_f64(&row[0], *line)?);
        curve.n.push(parse_usize(&row[1], *line)?);
        curve.m_winding.push(parse_f64(&row[2], *line)?);
        curve.main.push(parse_f64(&row[3], *line)?);
        curve.d.push(parse_f64(&row[4], *line)?);
        let fit_c = parse_f64(&row[5], *line)?;
        let fit_residual = parse_f64(&row[6], *line)?;
        if i == 0 {
            curve.fit_c = fit_c;
            curve.fit_residual = fit_residual;
        } else if fit_c != curve.fit_c || fit_residual != curve.fit_residual {
            return Err(Error::Schema(format!(
                "line {line}: fit constants differ between rows"
            )));
        }
    }
    Ok(curve)
}

/// Writes winding-number records.
pub fn write_windings(path: &Path, records: &[WindingRecord]) -> Result<()> {
    let mut text = String::from(WIND_HEADER);
    text.push_str("\n# lambda,M,error\n");
    for w in records {
        let _ = writeln!(text, "{},{},{}", w.lambda, w.m, w.quadrature_error);
    }
    write_atomic(path, &text)
}

/// Reads winding-number records.
pub fn read_windings(path: &Path) -> Result<Vec<WindingRecord>> {
    let mut out = Vec::new();
    for (line, row) in read_rows(path, WIND_HEADER)? {
        want_cols(&row, 3, line)?;
        let lambda = parse_f64(&row[0], line)?;
        let m = parse_f64(&row[1], line)?;
        let quadrature_error = parse_f64(&row[2], line)?;
        if quadrature_error < 0.0 {
            return Err(Error::Schema(format!(
                "line {line}: negative quadrature error"
            )));
        }
        out.push(WindingRecord {
            lambda,
            m,
            quadrature_error,
        });
    }
    Ok(out)
}
