//! RGBA image model and lossless PNG/BMP I/O.

use std::fs;
use std::path::Path;

use image::{ImageFormat, RgbaImage};

use crate::error::{Error, Result};

/// One `(r, g, b, a)` sample.
pub type Rgba = [u8; 4];

/// A `width × height` grid of 8-bit RGBA pixels in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    width: u32,
    height: u32,
    pixels: Vec<Rgba>,
}

impl Raster {
    pub fn new(width: u32, height: u32, pixels: Vec<Rgba>) -> Result<Self> {
        if pixels.len() as u64 != u64::from(width) * u64::from(height) {
            return Err(Error::Domain(format!(
                "{} pixels do not fill a {width}×{height} raster",
                pixels.len()
            )));
        }
        Ok(Raster { width, height, pixels })
    }

    pub fn filled(width: u32, height: u32, pixel: Rgba) -> Self {
        Raster {
            width,
            height,
            pixels: vec![pixel; width as usize * height as usize],
        }
    }

    /// Builds a raster by evaluating `f(x, y)` at every position.
    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> Rgba) -> Self {
        let pixels = (0..height).flat_map(|y| (0..width).map(move |x| (x, y))).map(|(x, y)| f(x, y)).collect();
        Raster { width, height, pixels }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[Rgba] {
        &self.pixels
    }

    pub(crate) fn pixels_mut(&mut self) -> &mut [Rgba] {
        &mut self.pixels
    }

    pub fn pixel(&self, x: u32, y: u32) -> Option<Rgba> {
        if x >= self.width || y >= self.height {
            return None;
        }
        self.pixels.get(y as usize * self.width as usize + x as usize).copied()
    }

    pub fn same_dimensions(&self, other: &Raster) -> bool {
        self.width == other.width && self.height == other.height
    }
}

/// Decodes a PNG (or BMP) file into RGBA. Grey, RGB and indexed images are
/// expanded with an opaque alpha channel.
pub fn load_image(path: impl AsRef<Path>) -> Result<Raster> {
    let bytes = fs::read(path.as_ref())?;
    decode_image(&bytes)
}

pub fn decode_image(bytes: &[u8]) -> Result<Raster> {
    let format = image::guess_format(bytes).map_err(|_| Error::UnsupportedFormat("unrecognized image data".into()))?;
    match format {
        ImageFormat::Png | ImageFormat::Bmp => {}
        ImageFormat::Jpeg => {
            return Err(Error::UnsupportedFormat(
                "JPEG is lossy and destroys least-significant bits; use PNG".into(),
            ))
        }
        other => {
            return Err(Error::UnsupportedFormat(format!(
                "{other:?} is not accepted; hidden data needs a lossless format such as PNG"
            )))
        }
    }
    let decoded = image::load_from_memory_with_format(bytes, format).map_err(|e| Error::Decode(e.to_string()))?;
    let rgba = decoded.to_rgba8();
    let (width, height) = rgba.dimensions();
    let pixels = rgba.pixels().map(|p| p.0).collect();
    Raster::new(width, height, pixels)
}

/// Writes an 8-bit RGBA PNG.
pub fn save_image(raster: &Raster, path: impl AsRef<Path>) -> Result<()> {
    let bytes = encode_png(raster)?;
    fs::write(path.as_ref(), bytes)?;
    Ok(())
}

pub fn encode_png(raster: &Raster) -> Result<Vec<u8>> {
    if raster.width == 0 || raster.height == 0 {
        return Err(Error::Domain("cannot store a zero-sized raster".into()));
    }
    let flat = raster.pixels.iter().flatten().copied().collect();
    let buffer = RgbaImage::from_raw(raster.width, raster.height, flat)
        .ok_or_else(|| Error::Domain("pixel buffer does not match dimensions".into()))?;
    let mut out = std::io::Cursor::new(Vec::new());
    buffer
        .write_to(&mut out, ImageFormat::Png)
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    Ok(out.into_inner())
}
