//! Exact squared Euclidean distance transform and the strict disk predicate.
//!
//! The transform follows the classic two-pass separable scheme: a vertical
//! scan produces per-column distances to the nearest background row, then a
//! lower-envelope scan per row combines them into exact squared Euclidean
//! distances. All arithmetic stays in integers on squared values, so the
//! result is deterministic and exact.
//!
//! The canvas is conceptually surrounded by background: the transform runs
//! on a grid padded with a one-pixel background ring, which yields exactly
//! the minimum over all real background pixels and all virtual pixel centres
//! outside the canvas (the nearest outside centre always lies on that ring).
//!
//! The inscribed disk around an object pixel `p` is the *strict* disk
//! `{q : dist²(p,q) < d2[p]}`. Since the nearest background sits at exactly
//! `d2[p]`, strict disks are always fully contained in the object.

use crate::pixelgrid::{encode_pgm, BinaryImage, PixelPoint};
use crate::{isqrt, DomainError};

/// Per-pixel exact squared Euclidean distance to the nearest background
/// pixel centre (including virtual centres outside the canvas).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquaredDistanceField {
    width: u32,
    height: u32,
    d2: Vec<u32>,
}

impl SquaredDistanceField {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Squared distance at `p`; zero iff `p` is background or off-canvas.
    pub fn d2(&self, p: PixelPoint) -> u32 {
        if p.x < self.width && p.y < self.height {
            self.d2[p.y as usize * self.width as usize + p.x as usize]
        } else {
            0
        }
    }

    /// Largest squared distance in the field (0 for an empty object).
    pub fn max_d2(&self) -> u32 {
        self.d2.iter().copied().max().unwrap_or(0)
    }

    pub(crate) fn values(&self) -> &[u32] {
        &self.d2
    }
}

/// Computes the exact squared Euclidean distance transform of the object,
/// with everything outside the canvas treated as background.
pub fn compute_edt(img: &BinaryImage) -> SquaredDistanceField {
    let w = img.width() as usize;
    let h = img.height() as usize;
    // Padded grid with a one-pixel background ring.
    let pw = w + 2;
    let ph = h + 2;
    let inf = (pw + ph) as i64; // larger than any attainable column distance

    // Vertical pass: g[x][y] = distance to the nearest background row in
    // column x of the padded grid.
    let mut g = vec![0i64; pw * ph];
    let obj = |x: usize, y: usize| -> bool {
        x >= 1 && y >= 1 && x <= w && y <= h && img.bits()[(y - 1) * w + (x - 1)]
    };
    for x in 0..pw {
        g[x] = if obj(x, 0) { inf } else { 0 };
        for y in 1..ph {
            g[y * pw + x] = if obj(x, y) {
                g[(y - 1) * pw + x] + 1
            } else {
                0
            };
        }
        for y in (0..ph - 1).rev() {
            let below = g[(y + 1) * pw + x];
            if below + 1 < g[y * pw + x] {
                g[y * pw + x] = below + 1;
            }
        }
    }

    // Horizontal pass: lower envelope of the parabolas
    // f(x, i) = (x - i)^2 + g(i)^2 per row.
    let mut d2 = vec![0u32; w * h];
    let mut s = vec![0usize; pw];
    let mut t = vec![0i64; pw];
    for y in 1..=h {
        let row = &g[y * pw..(y + 1) * pw];
        let f = |x: i64, i: usize| -> i64 {
            let d = x - i as i64;
            d * d + row[i] * row[i]
        };
        let sep = |i: usize, u: usize| -> i64 {
            let (i, u) = (i as i64, u as i64);
            let gi = row[i as usize];
            let gu = row[u as usize];
            (u * u - i * i + gu * gu - gi * gi) / (2 * (u - i))
        };
        let mut q: isize = 0;
        s[0] = 0;
        t[0] = 0;
        for u in 1..pw {
            while q >= 0 && f(t[q as usize], s[q as usize]) > f(t[q as usize], u) {
                q -= 1;
            }
            if q < 0 {
                q = 0;
                s[0] = u;
            } else {
                let wpos = 1 + sep(s[q as usize], u);
                if wpos < pw as i64 {
                    q += 1;
                    s[q as usize] = u;
                    t[q as usize] = wpos;
                }
            }
        }
        for u in (0..pw).rev() {
            let val = f(u as i64, s[q as usize]);
            if (1..=w).contains(&u) {
                d2[(y - 1) * w + (u - 1)] = val as u32;
            }
            if u as i64 == t[q as usize] {
                q -= 1;
            }
        }
    }

    SquaredDistanceField {
        width: img.width(),
        height: img.height(),
        d2,
    }
}

/// True iff the strict inscribed disk centred at `center` covers `q`,
/// i.e. `dist²(center, q) < d2[center]`.
///
/// Every covered pixel is an object pixel: the nearest background lies at
/// squared distance exactly `d2[center]`.
pub fn disk_covers(
    df: &SquaredDistanceField,
    center: PixelPoint,
    q: PixelPoint,
) -> Result<bool, DomainError> {
    let r2 = df.d2(center);
    if r2 == 0 {
        return Err(DomainError::NotObject {
            x: center.x,
            y: center.y,
        });
    }
    Ok(center.dist_sq(q) < u64::from(r2))
}

/// Offsets `(dx, dy)` with `dx² + dy² < d2`, i.e. the strict disk around the
/// origin, in row-major order.
pub fn disk_offsets(d2: u32) -> Vec<(i32, i32)> {
    if d2 == 0 {
        return Vec::new();
    }
    let r = isqrt(u64::from(d2) - 1) as i32;
    let mut out = Vec::new();
    for dy in -r..=r {
        let rem = u64::from(d2) - 1 - (dy as i64 * dy as i64) as u64;
        let rx = isqrt(rem) as i32;
        for dx in -rx..=rx {
            out.push((dx, dy));
        }
    }
    out
}

/// Renders the distance field as a PGM (P5): grey value
/// `round(255 * sqrt(d2) / max sqrt(d2))`, rounding half away from zero.
/// An all-zero field renders all black.
pub fn render_distance(df: &SquaredDistanceField) -> Vec<u8> {
    let max = df.max_d2();
    let gray: Vec<u8> = if max == 0 {
        vec![0; df.d2.len()]
    } else {
        let max_r = (f64::from(max)).sqrt();
        df.d2
            .iter()
            .map(|&v| ((f64::from(v)).sqrt() / max_r * 255.0 + 0.5).floor() as u8)
            .collect()
    };
    encode_pgm(df.width, df.height, &gray)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pixelgrid::BinaryImage;

    fn img_from_rows(rows: &[&str]) -> BinaryImage {
        let height = rows.len() as u32;
        let width = rows[0].len() as u32;
        let mut bits = Vec::new();
        for row in rows {
            for c in row.chars() {
                bits.push(c == '1' || c == '#');
            }
        }
        BinaryImage::from_bits(width, height, bits).unwrap()
    }

    /// Brute-force oracle: scan all in-canvas background centres plus
    /// virtual border rings, widening the ring until the field is stable.
    pub(crate) fn edt_oracle(img: &BinaryImage) -> Vec<u64> {
        let w = i64::from(img.width());
        let h = i64::from(img.height());
        let mut best = vec![u64::MAX; (w * h) as usize];
        let scan = |bg: &[(i64, i64)], best: &mut [u64]| {
            for p in img.object_points() {
                let idx = (i64::from(p.y) * w + i64::from(p.x)) as usize;
                for &(bx, by) in bg {
                    let dx = i64::from(p.x) - bx;
                    let dy = i64::from(p.y) - by;
                    let d = (dx * dx + dy * dy) as u64;
                    if d < best[idx] {
                        best[idx] = d;
                    }
                }
            }
        };
        let interior_bg: Vec<(i64, i64)> = (0..h)
            .flat_map(|y| (0..w).map(move |x| (x, y)))
            .filter(|&(x, y)| !img.get(PixelPoint::new(x as u32, y as u32)))
            .collect();
        scan(&interior_bg, &mut best);
        let mut ring = 1i64;
        loop {
            let mut cells = Vec::new();
            for x in -ring..=w - 1 + ring {
                cells.push((x, -ring));
                cells.push((x, h - 1 + ring));
            }
            for y in -ring + 1..h - 1 + ring {
                cells.push((-ring, y));
                cells.push((w - 1 + ring, y));
            }
            let before = best.clone();
            scan(&cells, &mut best);
            // Once the ring is farther than the current maximum, no further
            // ring can improve anything.
            let max_obj = img
                .object_points()
                .map(|p| best[(i64::from(p.y) * w + i64::from(p.x)) as usize])
                .max();
            if before == best && max_obj.map_or(true, |m| (ring * ring) as u64 >= m) {
                break;
            }
            ring += 1;
        }
        for v in best.iter_mut() {
            if *v == u64::MAX {
                *v = 0; // background
            }
        }
        best
    }

    #[test]
    fn all_background_is_zero() {
        let img = BinaryImage::new(2, 2).unwrap();
        let df = compute_edt(&img);
        assert!(df.values().iter().all(|&v| v == 0));
    }

    #[test]
    fn single_object_pixel_has_unit_distance() {
        let img = img_from_rows(&["1"]);
        let df = compute_edt(&img);
        assert_eq!(df.d2(PixelPoint::new(0, 0)), 1);
    }

    #[test]
    fn three_by_three_all_object() {
        let img = img_from_rows(&["111", "111", "111"]);
        let df = compute_edt(&img);
        for y in 0..3 {
            for x in 0..3 {
                let expected = if (x, y) == (1, 1) { 4 } else { 1 };
                assert_eq!(df.d2(PixelPoint::new(x, y)), expected, "at ({x},{y})");
            }
        }
    }

    #[test]
    fn matches_brute_force_oracle_on_fixtures() {
        for rows in [
            &["1"][..],
            &["11111"][..],
            &["111", "111", "111"][..],
            &["11111", "11111", "11111", "11111", "11111"][..],
            &["0110", "1111", "0110"][..],
            &["10101", "01010", "10101"][..],
        ] {
            let img = img_from_rows(rows);
            let df = compute_edt(&img);
            let oracle = edt_oracle(&img);
            for (i, &v) in df.values().iter().enumerate() {
                assert_eq!(u64::from(v), oracle[i], "pixel {i} of {rows:?}");
            }
        }
    }

    #[test]
    fn disk_covers_examples() {
        // d2 = 1 covers only the centre.
        let img = img_from_rows(&["1"]);
        let df = compute_edt(&img);
        let c = PixelPoint::new(0, 0);
        assert!(disk_covers(&df, c, c).unwrap());
        assert!(!disk_covers(&df, c, PixelPoint::new(1, 0)).unwrap());

        // d2 = 4 covers the 3x3 block (offsets with squared norm 0, 1, 2).
        let img = img_from_rows(&["111", "111", "111"]);
        let df = compute_edt(&img);
        let c = PixelPoint::new(1, 1);
        assert_eq!(df.d2(c), 4);
        let mut covered = 0;
        for y in 0..3 {
            for x in 0..3 {
                if disk_covers(&df, c, PixelPoint::new(x, y)).unwrap() {
                    covered += 1;
                }
            }
        }
        assert_eq!(covered, 9);
        assert!(!disk_covers(&df, c, PixelPoint::new(3, 1)).unwrap());
    }

    #[test]
    fn disk_offsets_examples() {
        assert_eq!(disk_offsets(1), vec![(0, 0)]);
        // d2 = 2: centre plus 4-neighbours, not diagonals.
        let offs = disk_offsets(2);
        assert_eq!(offs.len(), 5);
        assert!(offs.contains(&(0, -1)) && offs.contains(&(-1, 0)));
        assert!(!offs.contains(&(1, 1)));
        // d2 = 4: full 3x3 block.
        assert_eq!(disk_offsets(4).len(), 9);
    }

    #[test]
    fn disk_covers_rejects_background_centre() {
        let img = img_from_rows(&["10"]);
        let df = compute_edt(&img);
        let err = disk_covers(&df, PixelPoint::new(1, 0), PixelPoint::new(0, 0)).unwrap_err();
        assert_eq!(err, DomainError::NotObject { x: 1, y: 0 });
    }

    #[test]
    fn render_distance_examples() {
        let img = BinaryImage::new(2, 2).unwrap();
        let bytes = render_distance(&compute_edt(&img));
        assert!(bytes.ends_with(&[0, 0, 0, 0]));

        let img = img_from_rows(&["1"]);
        let bytes = render_distance(&compute_edt(&img));
        assert_eq!(*bytes.last().unwrap(), 255);

        // 3x3 all-object: centre 255, ring round(255/2) = 128.
        let img = img_from_rows(&["111", "111", "111"]);
        let bytes = render_distance(&compute_edt(&img));
        let pixels = &bytes[bytes.len() - 9..];
        assert_eq!(pixels, &[128, 128, 128, 128, 255, 128, 128, 128, 128]);
    }
}
