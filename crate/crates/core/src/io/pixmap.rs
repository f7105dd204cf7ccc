//! Portable pixmaps (PPM), plain `P3` and raw `P6`, maxval 255 only.

use std::fmt;
use std::io::Write;

use crate::error::ModelIoError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rgb(pub [u8; 3]);

impl Rgb {
    pub const BLACK: Rgb = Rgb([0, 0, 0]);
    pub const WHITE: Rgb = Rgb([255, 255, 255]);

    /// Parses `rrggbb` or `#rrggbb`, case-insensitively.
    pub fn from_hex(text: &str) -> Option<Rgb> {
        let hex = text.strip_prefix('#').unwrap_or(text);
        if hex.len() != 6 || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
            return None;
        }
        let channel = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).ok();
        Some(Rgb([channel(0)?, channel(2)?, channel(4)?]))
    }
}

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [r, g, b] = self.0;
        write!(f, "#{r:02x}{g:02x}{b:02x}")
    }
}

/// A row-major RGB raster; pixel `(c, r)` is at `r * width + c`, row 0 on top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pixmap {
    width: usize,
    height: usize,
    pixels: Vec<Rgb>,
}

impl Pixmap {
    pub fn new(width: usize, height: usize, fill: Rgb) -> Self {
        Pixmap {
            width,
            height,
            pixels: vec![fill; width * height],
        }
    }

    pub fn from_pixels(width: usize, height: usize, pixels: Vec<Rgb>) -> Result<Self, ModelIoError> {
        if width.checked_mul(height) != Some(pixels.len()) {
            return Err(ModelIoError::Pixmap(format!(
                "{} pixels do not fill a {width}x{height} raster",
                pixels.len()
            )));
        }
        Ok(Pixmap { width, height, pixels })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[Rgb] {
        &self.pixels
    }

    pub fn get(&self, column: usize, row: usize) -> Rgb {
        self.pixels[row * self.width + column]
    }

    pub fn set(&mut self, column: usize, row: usize, color: Rgb) {
        self.pixels[row * self.width + column] = color;
    }

    pub fn set_index(&mut self, index: usize, color: Rgb) {
        self.pixels[index] = color;
    }

    /// Decodes a `P3` or `P6` image.
    pub fn decode(bytes: &[u8]) -> Result<Self, ModelIoError> {
        let mut header = Header { bytes, pos: 0 };
        let raw = match bytes.get(..2) {
            Some(b"P6") => true,
            Some(b"P3") => false,
            _ => return Err(ModelIoError::Pixmap("not a P3 or P6 pixmap".into())),
        };
        header.pos = 2;
        let width = header.number("width")?;
        let height = header.number("height")?;
        let maxval = header.number("maxval")?;
        if maxval != 255 {
            return Err(ModelIoError::Pixmap(format!("maxval {maxval} unsupported (only 255)")));
        }
        if width == 0 || height == 0 {
            return Err(ModelIoError::Pixmap(format!("empty raster {width}x{height}")));
        }
        let count = width
            .checked_mul(height)
            .ok_or_else(|| ModelIoError::Pixmap("raster too large".into()))?;
        let mut pixels = Vec::with_capacity(count);
        if raw {
            // Exactly one whitespace byte separates the header from the samples.
            if !bytes.get(header.pos).is_some_and(u8::is_ascii_whitespace) {
                return Err(ModelIoError::Pixmap("missing whitespace after maxval".into()));
            }
            let data = &bytes[header.pos + 1..];
            if data.len() < count * 3 {
                return Err(ModelIoError::Pixmap(format!(
                    "truncated samples: expected {} bytes, found {}",
                    count * 3,
                    data.len()
                )));
            }
            pixels.extend(data[..count * 3].chunks_exact(3).map(|c| Rgb([c[0], c[1], c[2]])));
        } else {
            for _ in 0..count {
                let mut px = [0u8; 3];
                for channel in &mut px {
                    let v = header.number("sample")?;
                    *channel = u8::try_from(v)
                        .ok()
                        .filter(|_| v <= maxval)
                        .ok_or_else(|| ModelIoError::Pixmap(format!("sample {v} exceeds maxval")))?;
                }
                pixels.push(Rgb(px));
            }
        }
        Ok(Pixmap { width, height, pixels })
    }

    /// Encodes as raw `P6`.
    pub fn encode_p6(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.reserve(self.pixels.len() * 3);
        for px in &self.pixels {
            out.extend_from_slice(&px.0);
        }
        out
    }

    /// Encodes as plain `P3`, one row per line.
    pub fn encode_p3(&self) -> Vec<u8> {
        let mut out = format!("P3\n{} {}\n255\n", self.width, self.height).into_bytes();
        for row in self.pixels.chunks(self.width) {
            let line: Vec<String> = row
                .iter()
                .map(|Rgb([r, g, b])| format!("{r} {g} {b}"))
                .collect();
            writeln!(out, "{}", line.join("  ")).expect("writing to a Vec cannot fail");
        }
        out
    }
}

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    fn skip_space(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&b| b != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize, ModelIoError> {
        self.skip_space();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| ModelIoError::Pixmap(format!("malformed {what} at byte {start}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Pixmap {
        Pixmap::from_pixels(
            3,
            2,
            vec![
                Rgb::BLACK,
                Rgb::WHITE,
                Rgb([1, 2, 3]),
                Rgb([255, 0, 0]),
                Rgb([0, 255, 0]),
                Rgb([0, 0, 255]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn hex_colors() {
        assert_eq!(Rgb::from_hex("#FF8000"), Some(Rgb([255, 128, 0])));
        assert_eq!(Rgb::from_hex("00ff00"), Some(Rgb([0, 255, 0])));
        assert_eq!(Rgb::from_hex("#0f0"), None);
        assert_eq!(Rgb::from_hex("#gg0000"), None);
        assert_eq!(Rgb([255, 128, 0]).to_string(), "#ff8000");
    }

    #[test]
    fn round_trips() {
        let img = sample();
        assert_eq!(Pixmap::decode(&img.encode_p6()).unwrap(), img);
        assert_eq!(Pixmap::decode(&img.encode_p3()).unwrap(), img);
    }

    #[test]
    fn header_comments_and_layout() {
        let text = b"P3\n# a comment\n2 1 # trailing\n255\n0 0 0 255 255 255\n";
        let img = Pixmap::decode(text).unwrap();
        assert_eq!((img.width(), img.height()), (2, 1));
        assert_eq!(img.get(1, 0), Rgb::WHITE);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Pixmap::decode(b"P5\n1 1\n255\n\0").is_err());
        assert!(Pixmap::decode(b"P3\n1 1\n15\n0 0 0").is_err());
        assert!(Pixmap::decode(b"P6\n2 2\n255\n\0\0\0").is_err());
        assert!(Pixmap::decode(b"P3\n1 1\n255\n0 0 256").is_err());
        assert!(Pixmap::decode(b"P3\n1 1\n255\n0 0").is_err());
    }
}
