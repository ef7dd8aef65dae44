//! Mean squared error and peak signal-to-noise ratio between two rasters.
//!
//! MSE averages squared differences over the red, green and blue channels of
//! every pixel; alpha is ignored. PSNR is `10·log10(MAX² / MSE)` in decibels,
//! infinite for identical images.

use std::io::Write;

use crate::error::{Error, Result};
use crate::raster::Raster;

/// Peak value of an 8-bit sample.
pub const MAX_8BIT: f64 = 255.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityReport {
    pub mse: f64,
    pub psnr_db: f64,
    pub max_i: f64,
}

/// Sum of squared R, G, B differences; exact in integer arithmetic.
pub fn squared_error_sum(original: &Raster, candidate: &Raster) -> Result<u64> {
    if !original.same_dimensions(candidate) {
        return Err(Error::Domain(format!(
            "dimension mismatch: {}×{} vs {}×{}",
            original.width(),
            original.height(),
            candidate.width(),
            candidate.height()
        )));
    }
    Ok(original
        .pixels()
        .iter()
        .zip(candidate.pixels())
        .flat_map(|(a, b)| a[..3].iter().zip(&b[..3]))
        .map(|(&x, &y)| {
            let d = u64::from(x.abs_diff(y));
            d * d
        })
        .sum())
}

pub fn mse(original: &Raster, candidate: &Raster) -> Result<f64> {
    let sum = squared_error_sum(original, candidate)?;
    let samples = 3 * original.pixels().len();
    if samples == 0 {
        return Err(Error::Domain("mse of an empty raster".into()));
    }
    Ok(sum as f64 / samples as f64)
}

pub fn psnr_from_mse(mse: f64, max_i: f64) -> Result<f64> {
    if mse.is_nan() || mse < 0.0 {
        return Err(Error::Domain(format!("mse must be non-negative, got {mse}")));
    }
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (max_i * max_i / mse).log10())
}

pub fn quality_report(original: &Raster, candidate: &Raster) -> Result<QualityReport> {
    let mse = mse(original, candidate)?;
    Ok(QualityReport {
        mse,
        psnr_db: psnr_from_mse(mse, MAX_8BIT)?,
        max_i: MAX_8BIT,
    })
}

pub const CSV_HEADER: [&str; 3] = ["image", "mse", "psnr_db"];

/// `mse` in six-significant-digit scientific notation, `psnr_db` with six
/// decimals (`inf` for identical images).
pub fn csv_fields(image: &str, report: &QualityReport) -> [String; 3] {
    [image.to_owned(), format!("{:.5e}", report.mse), format!("{:.6}", report.psnr_db)]
}

/// Writes a header and one row per `(image, report)`.
pub fn write_csv<W: Write>(out: W, rows: &[(String, QualityReport)]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let to_io = |e: csv::Error| Error::Io(e.into());
    writer.write_record(CSV_HEADER).map_err(to_io)?;
    for (image, report) in rows {
        writer.write_record(csv_fields(image, report)).map_err(to_io)?;
    }
    writer.flush()?;
    Ok(())
}
