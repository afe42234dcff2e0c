//! Binary image data model, netpbm file I/O, and grid symmetry transforms.
//!
//! Images are rectangular bit grids in row-major order with 0-based
//! coordinates; value 1 marks the object, 0 the background. Everything
//! outside the canvas counts as background, so every object pixel has a
//! finite distance to the nearest background pixel.
//!
//! Supported formats: PBM P1 (ASCII) and P4 (binary) for reading, P4 for
//! writing, plus PGM P5 and PPM P6 encoders for visualisations. Header
//! comments (`#`) are tolerated on read.

use crate::{medialaxis, DomainError, ParseError, MAX_DIM};

/// A pixel position with 0-based column `x` and row `y`.
///
/// Ordering is row-major (`y` first, then `x`), which is the canonical
/// iteration and tie-breaking order throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PixelPoint {
    pub x: u32,
    pub y: u32,
}

impl PixelPoint {
    pub fn new(x: u32, y: u32) -> Self {
        PixelPoint { x, y }
    }

    /// Squared Euclidean distance between two pixel centres.
    pub fn dist_sq(self, other: PixelPoint) -> u64 {
        let dx = i64::from(self.x) - i64::from(other.x);
        let dy = i64::from(self.y) - i64::from(other.y);
        (dx * dx + dy * dy) as u64
    }
}

impl PartialOrd for PixelPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PixelPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl std::fmt::Display for PixelPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A binary image: rectangular bit grid, row-major, object = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryImage {
    width: u32,
    height: u32,
    bits: Vec<bool>,
}

impl BinaryImage {
    /// Creates an all-background image.
    pub fn new(width: u32, height: u32) -> Result<Self, DomainError> {
        check_dims(width, height)?;
        Ok(BinaryImage {
            width,
            height,
            bits: vec![false; width as usize * height as usize],
        })
    }

    /// Wraps an existing row-major bit buffer.
    pub fn from_bits(width: u32, height: u32, bits: Vec<bool>) -> Result<Self, DomainError> {
        check_dims(width, height)?;
        if bits.len() != width as usize * height as usize {
            return Err(DomainError::BadBufferLength {
                width,
                height,
                len: bits.len(),
            });
        }
        Ok(BinaryImage {
            width,
            height,
            bits,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn in_bounds(&self, p: PixelPoint) -> bool {
        p.x < self.width && p.y < self.height
    }

    fn index(&self, p: PixelPoint) -> usize {
        p.y as usize * self.width as usize + p.x as usize
    }

    /// True iff `p` is inside the canvas and an object pixel.
    pub fn get(&self, p: PixelPoint) -> bool {
        self.in_bounds(p) && self.bits[self.index(p)]
    }

    /// Like [`get`](Self::get) for signed coordinates; everything off the
    /// canvas is background.
    pub fn get_signed(&self, x: i64, y: i64) -> bool {
        if x < 0 || y < 0 || x >= i64::from(self.width) || y >= i64::from(self.height) {
            return false;
        }
        self.bits[y as usize * self.width as usize + x as usize]
    }

    pub fn set(&mut self, p: PixelPoint, value: bool) {
        assert!(self.in_bounds(p), "set out of bounds: {p}");
        let i = self.index(p);
        self.bits[i] = value;
    }

    /// Object pixels in row-major order.
    pub fn object_points(&self) -> impl Iterator<Item = PixelPoint> + '_ {
        let w = self.width;
        self.bits.iter().enumerate().filter_map(move |(i, &b)| {
            b.then(|| PixelPoint::new(i as u32 % w, i as u32 / w))
        })
    }

    /// Number of object pixels.
    pub fn object_area(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty_object(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub(crate) fn bits(&self) -> &[bool] {
        &self.bits
    }
}

/// One of the grid symmetries under which the pipeline is equivariant:
/// in-bounds translations, quarter-turn rotations, and axis mirrorings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridTransform {
    /// Shift the object by `(dx, dy)`; every object pixel must stay on the
    /// canvas.
    Translate { dx: i32, dy: i32 },
    /// `quarter_turns` counter-clockwise 90-degree rotations (mod 4). One
    /// turn maps `(x, y)` to `(y, width - 1 - x)` and swaps the canvas sides.
    Rotate90 { quarter_turns: u8 },
    /// Left-right flip: `x` becomes `width - 1 - x`.
    MirrorHorizontal,
    /// Top-bottom flip: `y` becomes `height - 1 - y`.
    MirrorVertical,
}

impl GridTransform {
    /// Canvas size after the transform.
    pub fn map_dims(self, width: u32, height: u32) -> (u32, u32) {
        match self {
            GridTransform::Rotate90 { quarter_turns } if quarter_turns % 2 == 1 => (height, width),
            _ => (width, height),
        }
    }

    /// Maps a point on a `width` x `height` canvas. Returns `None` for a
    /// translation that leaves the canvas.
    pub fn map_point(self, p: PixelPoint, width: u32, height: u32) -> Option<PixelPoint> {
        match self {
            GridTransform::Translate { dx, dy } => {
                let x = i64::from(p.x) + i64::from(dx);
                let y = i64::from(p.y) + i64::from(dy);
                if x < 0 || y < 0 || x >= i64::from(width) || y >= i64::from(height) {
                    None
                } else {
                    Some(PixelPoint::new(x as u32, y as u32))
                }
            }
            GridTransform::Rotate90 { quarter_turns } => {
                let (mut x, mut y) = (p.x, p.y);
                let (mut w, _h) = (width, height);
                for _ in 0..quarter_turns % 4 {
                    let nx = y;
                    let ny = w - 1 - x;
                    // After one turn the width becomes the previous height.
                    let nw = if w == width { height } else { width };
                    x = nx;
                    y = ny;
                    w = nw;
                }
                Some(PixelPoint::new(x, y))
            }
            GridTransform::MirrorHorizontal => Some(PixelPoint::new(width - 1 - p.x, p.y)),
            GridTransform::MirrorVertical => Some(PixelPoint::new(p.x, height - 1 - p.y)),
        }
    }
}

/// Applies a grid symmetry to the image, mapping the object set pointwise.
///
/// Translations must keep every object pixel on the canvas; otherwise a
/// [`DomainError::TranslationOutOfBounds`] names the first offending pixel.
pub fn apply_transform(img: &BinaryImage, t: GridTransform) -> Result<BinaryImage, DomainError> {
    let (nw, nh) = t.map_dims(img.width, img.height);
    let mut out = BinaryImage::new(nw, nh)?;
    for p in img.object_points() {
        match t.map_point(p, img.width, img.height) {
            Some(q) => out.set(q, true),
            None => {
                let (dx, dy) = match t {
                    GridTransform::Translate { dx, dy } => (dx, dy),
                    _ => unreachable!("only translations can leave the canvas"),
                };
                return Err(DomainError::TranslationOutOfBounds {
                    dx,
                    dy,
                    x: p.x,
                    y: p.y,
                });
            }
        }
    }
    Ok(out)
}

fn check_dims(width: u32, height: u32) -> Result<(), DomainError> {
    if width == 0 || height == 0 || width > MAX_DIM || height > MAX_DIM {
        return Err(DomainError::BadDimensions { width, height });
    }
    Ok(())
}

// --- PBM parsing ------------------------------------------------------------

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Cursor { bytes, pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    /// Skips whitespace and `#` comments (which run to end of line).
    fn skip_separators(&mut self) {
        while let Some(b) = self.peek() {
            match b {
                b' ' | b'\t' | b'\r' | b'\n' | 0x0b | 0x0c => {
                    self.pos += 1;
                }
                b'#' => {
                    while let Some(c) = self.bump() {
                        if c == b'\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
    }

    /// Parses an ASCII unsigned integer after skipping separators; returns
    /// the value and the byte offset where its digits start.
    fn parse_uint(&mut self, what: &str) -> Result<(u64, usize), ParseError> {
        self.skip_separators();
        let start = self.pos;
        let mut value: u64 = 0;
        let mut digits = 0;
        while let Some(b) = self.peek() {
            if b.is_ascii_digit() {
                value = value
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(u64::from(b - b'0')))
                    .ok_or_else(|| ParseError::new(start, format!("{what} overflows")))?;
                digits += 1;
                self.pos += 1;
            } else {
                break;
            }
        }
        if digits == 0 {
            return Err(ParseError::new(
                self.pos,
                format!("expected {what}, found {}", describe_byte(self.peek())),
            ));
        }
        Ok((value, start))
    }
}

fn describe_byte(b: Option<u8>) -> String {
    match b {
        Some(b) if b.is_ascii_graphic() => format!("'{}'", b as char),
        Some(b) => format!("byte 0x{b:02x}"),
        None => "end of input".to_string(),
    }
}

fn parse_pbm_dims(cur: &mut Cursor) -> Result<(u32, u32), ParseError> {
    let (width, wpos) = cur.parse_uint("width")?;
    let (height, hpos) = cur.parse_uint("height")?;
    if width == 0 || width > u64::from(MAX_DIM) {
        return Err(ParseError::new(
            wpos,
            format!("width {width} out of range 1..={MAX_DIM}"),
        ));
    }
    if height == 0 || height > u64::from(MAX_DIM) {
        return Err(ParseError::new(
            hpos,
            format!("height {height} out of range 1..={MAX_DIM}"),
        ));
    }
    Ok((width as u32, height as u32))
}

/// Parses a PBM stream (P1 ASCII or P4 binary). PBM value 1 maps to object.
pub fn load_pbm(bytes: &[u8]) -> Result<BinaryImage, ParseError> {
    let mut cur = Cursor::new(bytes);
    let magic = [cur.bump(), cur.bump()];
    let binary = match magic {
        [Some(b'P'), Some(b'1')] => false,
        [Some(b'P'), Some(b'4')] => true,
        _ => {
            return Err(ParseError::new(
                0,
                "expected PBM magic number \"P1\" or \"P4\"",
            ))
        }
    };
    let (width, height) = parse_pbm_dims(&mut cur)?;
    let mut bits = vec![false; width as usize * height as usize];
    if binary {
        // Exactly one separator byte after the height, then packed rows.
        match cur.bump() {
            Some(b) if b.is_ascii_whitespace() => {}
            other => {
                return Err(ParseError::new(
                    cur.pos.saturating_sub(1),
                    format!(
                        "expected single whitespace after header, found {}",
                        describe_byte(other)
                    ),
                ))
            }
        }
        let row_bytes = (width as usize).div_ceil(8);
        for y in 0..height as usize {
            for bx in 0..row_bytes {
                let byte = cur.bump().ok_or_else(|| {
                    ParseError::new(
                        cur.pos,
                        format!("truncated P4 payload in row {y} (need {row_bytes} bytes per row)"),
                    )
                })?;
                for bit in 0..8 {
                    let x = bx * 8 + bit;
                    if x < width as usize {
                        bits[y * width as usize + x] = byte & (0x80 >> bit) != 0;
                    }
                }
            }
        }
    } else {
        for i in 0..bits.len() {
            cur.skip_separators();
            match cur.bump() {
                Some(b'0') => bits[i] = false,
                Some(b'1') => bits[i] = true,
                other => {
                    return Err(ParseError::new(
                        cur.pos.saturating_sub(other.map_or(0, |_| 1)),
                        format!("expected P1 bit '0' or '1', found {}", describe_byte(other)),
                    ))
                }
            }
        }
    }
    BinaryImage::from_bits(width, height, bits)
        .map_err(|e| ParseError::new(0, format!("invalid image: {e}")))
}

/// Serialises the image as binary PBM (P4). `load_pbm(save_pbm(img))`
/// reproduces `img` exactly.
pub fn save_pbm(img: &BinaryImage) -> Vec<u8> {
    let mut out = format!("P4\n{} {}\n", img.width, img.height).into_bytes();
    let row_bytes = (img.width as usize).div_ceil(8);
    for y in 0..img.height as usize {
        for bx in 0..row_bytes {
            let mut byte = 0u8;
            for bit in 0..8 {
                let x = bx * 8 + bit;
                if x < img.width as usize && img.bits[y * img.width as usize + x] {
                    byte |= 0x80 >> bit;
                }
            }
            out.push(byte);
        }
    }
    out
}

pub(crate) fn encode_pgm(width: u32, height: u32, gray: &[u8]) -> Vec<u8> {
    debug_assert_eq!(gray.len(), width as usize * height as usize);
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(gray);
    out
}

pub(crate) fn encode_ppm(width: u32, height: u32, rgb: &[u8]) -> Vec<u8> {
    debug_assert_eq!(rgb.len(), 3 * width as usize * height as usize);
    let mut out = format!("P6\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(rgb);
    out
}

/// Colour assigned to each skeleton point class in overlays.
const ENDPOINT_RGB: [u8; 3] = [255, 0, 0];
const BRANCHING_RGB: [u8; 3] = [0, 0, 255];
const SIMPLE_RGB: [u8; 3] = [0, 160, 0];

/// Renders the shape with its skeleton as a PPM (P6) overlay: background
/// white, object black, endpoints red, branching points blue, simple points
/// green.
pub fn render_overlay(
    img: &BinaryImage,
    skel: &medialaxis::Skeleton,
) -> Result<Vec<u8>, DomainError> {
    if skel.width() != img.width || skel.height() != img.height {
        return Err(DomainError::DimensionMismatch {
            found_width: skel.width(),
            found_height: skel.height(),
            want_width: img.width,
            want_height: img.height,
        });
    }
    let mut rgb = Vec::with_capacity(3 * img.bits.len());
    for &b in &img.bits {
        rgb.extend_from_slice(if b { &[0, 0, 0] } else { &[255, 255, 255] });
    }
    for (p, _) in skel.iter() {
        if !img.in_bounds(p) {
            return Err(DomainError::OutOfBounds {
                x: p.x,
                y: p.y,
                width: img.width,
                height: img.height,
            });
        }
        let colour = match medialaxis::classify_point(skel, p)? {
            medialaxis::PointClass::Endpoint => ENDPOINT_RGB,
            medialaxis::PointClass::Branching => BRANCHING_RGB,
            medialaxis::PointClass::Simple => SIMPLE_RGB,
        };
        let i = 3 * img.index(p);
        rgb[i..i + 3].copy_from_slice(&colour);
    }
    Ok(encode_ppm(img.width, img.height, &rgb))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn img_from_rows(rows: &[&str]) -> BinaryImage {
        let height = rows.len() as u32;
        let width = rows[0].len() as u32;
        let mut bits = Vec::new();
        for row in rows {
            assert_eq!(row.len() as u32, width, "ragged rows");
            for c in row.chars() {
                bits.push(c == '1' || c == '#');
            }
        }
        BinaryImage::from_bits(width, height, bits).unwrap()
    }

    #[test]
    fn load_p1_smallest_valid_file() {
        let img = load_pbm(b"P1\n1 1\n1\n").unwrap();
        assert_eq!((img.width(), img.height()), (1, 1));
        assert_eq!(
            img.object_points().collect::<Vec<_>>(),
            vec![PixelPoint::new(0, 0)]
        );
    }

    #[test]
    fn load_p1_empty_object() {
        let img = load_pbm(b"P1\n2 1\n0 0\n").unwrap();
        assert_eq!((img.width(), img.height()), (2, 1));
        assert!(img.is_empty_object());
    }

    #[test]
    fn load_p1_with_comments_and_packed_bits() {
        let img = load_pbm(b"P1 # comment\n# another\n 3 2\n110\n001").unwrap();
        assert_eq!(img.object_area(), 3);
        assert!(img.get(PixelPoint::new(0, 0)));
        assert!(img.get(PixelPoint::new(1, 0)));
        assert!(img.get(PixelPoint::new(2, 1)));
    }

    #[test]
    fn load_p4_nine_wide_row_of_ones() {
        // 9 columns require two payload bytes per row; bit 9 is padding.
        let img = load_pbm(b"P4\n9 1\n\xff\x80").unwrap();
        assert_eq!(img.object_area(), 9);
    }

    #[test]
    fn save_single_object_pixel_is_msb() {
        let mut img = BinaryImage::new(1, 1).unwrap();
        img.set(PixelPoint::new(0, 0), true);
        assert_eq!(save_pbm(&img), b"P4\n1 1\n\x80");
    }

    #[test]
    fn save_empty_3x3_payload_all_zero() {
        let img = BinaryImage::new(3, 3).unwrap();
        let bytes = save_pbm(&img);
        assert_eq!(&bytes[..8], b"P4\n3 3\n\x00"[..8].as_ref());
        assert!(bytes[7..].iter().all(|&b| b == 0));
        assert_eq!(bytes.len(), 7 + 3);
    }

    #[test]
    fn parse_errors_name_byte_offsets() {
        let err = load_pbm(b"P7\n1 1\n").unwrap_err();
        assert_eq!(err.offset, 0);

        let err = load_pbm(b"P1\n0 3\n").unwrap_err();
        assert_eq!(err.offset, 3);
        assert!(err.message.contains("width"), "{}", err.message);

        let err = load_pbm(b"P4\n4 2\n\xff").unwrap_err();
        assert!(err.message.contains("truncated"), "{}", err.message);

        let err = load_pbm(b"P1\n2 1\n1 x\n").unwrap_err();
        assert!(err.message.contains("expected P1 bit"), "{}", err.message);
    }

    #[test]
    fn rotate_four_times_and_mirror_twice_are_identity() {
        let img = img_from_rows(&["110", "001"]);
        let mut cur = img.clone();
        for _ in 0..4 {
            cur = apply_transform(&cur, GridTransform::Rotate90 { quarter_turns: 1 }).unwrap();
        }
        assert_eq!(cur, img);
        let once = apply_transform(&img, GridTransform::MirrorHorizontal).unwrap();
        assert_eq!(
            apply_transform(&once, GridTransform::MirrorHorizontal).unwrap(),
            img
        );
        let once = apply_transform(&img, GridTransform::MirrorVertical).unwrap();
        assert_eq!(
            apply_transform(&once, GridTransform::MirrorVertical).unwrap(),
            img
        );
    }

    #[test]
    fn rotate90_maps_single_pixel_counter_clockwise() {
        // (1,0) on a 3x2 canvas lands on (0,1) on the 2x3 canvas.
        let mut img = BinaryImage::new(3, 2).unwrap();
        img.set(PixelPoint::new(1, 0), true);
        let rot = apply_transform(&img, GridTransform::Rotate90 { quarter_turns: 1 }).unwrap();
        assert_eq!((rot.width(), rot.height()), (2, 3));
        assert_eq!(
            rot.object_points().collect::<Vec<_>>(),
            vec![PixelPoint::new(0, 1)]
        );
    }

    #[test]
    fn rotate90_brute_force_coordinate_map() {
        // Check the composed map against applying the single-turn map k times
        // for every pixel of an asymmetric image.
        let img = img_from_rows(&["1100", "0010", "0001"]);
        for k in 0..4u8 {
            let direct = apply_transform(&img, GridTransform::Rotate90 { quarter_turns: k }).unwrap();
            let mut stepped = img.clone();
            for _ in 0..k {
                stepped =
                    apply_transform(&stepped, GridTransform::Rotate90 { quarter_turns: 1 }).unwrap();
            }
            assert_eq!(direct, stepped, "k={k}");
        }
    }

    #[test]
    fn translation_out_of_bounds_is_rejected() {
        let img = img_from_rows(&["10", "00"]);
        let err = apply_transform(&img, GridTransform::Translate { dx: -1, dy: 0 }).unwrap_err();
        assert_eq!(
            err,
            DomainError::TranslationOutOfBounds {
                dx: -1,
                dy: 0,
                x: 0,
                y: 0
            }
        );
        let ok = apply_transform(&img, GridTransform::Translate { dx: 1, dy: 1 }).unwrap();
        assert_eq!(
            ok.object_points().collect::<Vec<_>>(),
            vec![PixelPoint::new(1, 1)]
        );
    }

    #[test]
    fn transforms_preserve_object_cardinality() {
        let img = img_from_rows(&["10110", "01001", "11100"]);
        let n = img.object_area();
        for t in [
            GridTransform::Rotate90 { quarter_turns: 1 },
            GridTransform::Rotate90 { quarter_turns: 2 },
            GridTransform::Rotate90 { quarter_turns: 3 },
            GridTransform::MirrorHorizontal,
            GridTransform::MirrorVertical,
        ] {
            assert_eq!(apply_transform(&img, t).unwrap().object_area(), n);
        }
    }

    #[test]
    fn row_major_point_order() {
        let a = PixelPoint::new(5, 0);
        let b = PixelPoint::new(0, 1);
        assert!(a < b);
        let c = PixelPoint::new(1, 1);
        assert!(b < c);
    }
}
