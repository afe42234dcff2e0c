//! Object reconstruction from skeletons and incremental coverage counting.
//!
//! The reconstruction of a skeleton is the union of the strict inscribed
//! disks of its points. The [`CoverageMap`] tracks, per pixel, how many
//! member disks cover it, which makes the *unique reconstruction impact* of
//! a point (pixels lost if only that point is removed) an O(disk) query and
//! supports exact incremental removal and re-insertion. All greedy path
//! strategies are built on this map.

use std::collections::BTreeMap;

use crate::distfield::disk_offsets;
use crate::medialaxis::Skeleton;
use crate::pixelgrid::{encode_ppm, BinaryImage, PixelPoint};
use crate::DomainError;

/// Per-pixel count of member disks covering each pixel, together with the
/// member point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageMap {
    width: u32,
    height: u32,
    count: Vec<u32>,
    total_covered: usize,
    members: BTreeMap<PixelPoint, u32>,
}

impl CoverageMap {
    /// An empty map (no members, all counts zero) on the given canvas.
    pub fn empty(width: u32, height: u32) -> Result<Self, DomainError> {
        // Reuse the canvas validation of BinaryImage.
        let img = BinaryImage::new(width, height)?;
        Ok(CoverageMap {
            width,
            height,
            count: vec![0; img.width() as usize * img.height() as usize],
            total_covered: 0,
            members: BTreeMap::new(),
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Number of member disks covering `p` (0 off-canvas).
    pub fn count_at(&self, p: PixelPoint) -> u32 {
        if p.x < self.width && p.y < self.height {
            self.count[p.y as usize * self.width as usize + p.x as usize]
        } else {
            0
        }
    }

    /// Number of pixels with a positive count, i.e. the reconstruction area.
    pub fn total_covered(&self) -> usize {
        self.total_covered
    }

    pub fn member_count(&self) -> usize {
        self.members.len()
    }

    pub fn is_member(&self, p: PixelPoint) -> bool {
        self.members.contains_key(&p)
    }

    /// Member points with radii in row-major order.
    pub fn members(&self) -> impl Iterator<Item = (PixelPoint, u32)> + '_ {
        self.members.iter().map(|(&p, &r)| (p, r))
    }

    /// The covered set as a binary image.
    pub fn to_image(&self) -> BinaryImage {
        let bits = self.count.iter().map(|&c| c > 0).collect();
        BinaryImage::from_bits(self.width, self.height, bits).expect("valid dims")
    }

    fn disk_pixels(&self, p: PixelPoint, d2: u32) -> impl Iterator<Item = usize> + '_ {
        let w = i64::from(self.width);
        let h = i64::from(self.height);
        disk_offsets(d2).into_iter().filter_map(move |(dx, dy)| {
            let x = i64::from(p.x) + i64::from(dx);
            let y = i64::from(p.y) + i64::from(dy);
            (x >= 0 && y >= 0 && x < w && y < h).then(|| (y * w + x) as usize)
        })
    }

    /// Unique reconstruction impact of member `p`: the number of pixels
    /// covered by its disk alone, i.e. lost if only `p` were removed.
    pub fn unique_impact(&self, p: PixelPoint) -> Result<usize, DomainError> {
        let d2 = *self
            .members
            .get(&p)
            .ok_or(DomainError::NotInSet { x: p.x, y: p.y })?;
        Ok(self
            .disk_pixels(p, d2)
            .filter(|&i| self.count[i] == 1)
            .count())
    }

    /// Removes member `p`, decrementing counts over its disk. Returns the
    /// pixels whose count dropped to zero (the newly uncovered set, of size
    /// equal to the unique impact of `p` before removal).
    pub fn remove_point(&mut self, p: PixelPoint) -> Result<Vec<PixelPoint>, DomainError> {
        let d2 = self
            .members
            .remove(&p)
            .ok_or(DomainError::NotInSet { x: p.x, y: p.y })?;
        let w = self.width as usize;
        let mut uncovered = Vec::new();
        let pixels: Vec<usize> = self.disk_pixels(p, d2).collect();
        for i in pixels {
            self.count[i] -= 1;
            if self.count[i] == 0 {
                self.total_covered -= 1;
                uncovered.push(PixelPoint::new((i % w) as u32, (i / w) as u32));
            }
        }
        Ok(uncovered)
    }

    /// Adds a point with the given squared radius, incrementing counts over
    /// its disk: the exact inverse of [`remove_point`](Self::remove_point).
    /// Returns the number of newly covered pixels.
    pub fn add_point(&mut self, p: PixelPoint, d2: u32) -> Result<usize, DomainError> {
        if p.x >= self.width || p.y >= self.height {
            return Err(DomainError::OutOfBounds {
                x: p.x,
                y: p.y,
                width: self.width,
                height: self.height,
            });
        }
        if d2 == 0 {
            return Err(DomainError::NotObject { x: p.x, y: p.y });
        }
        if self.members.contains_key(&p) {
            return Err(DomainError::AlreadyPresent { x: p.x, y: p.y });
        }
        self.members.insert(p, d2);
        let mut newly = 0;
        let pixels: Vec<usize> = self.disk_pixels(p, d2).collect();
        for i in pixels {
            if self.count[i] == 0 {
                self.total_covered += 1;
                newly += 1;
            }
            self.count[i] = self.count[i].saturating_add(1);
        }
        Ok(newly)
    }

    /// Joint reconstruction impact of a set of members: the number of
    /// pixels covered only by disks of `points`. Computed by removing the
    /// points sequentially and restoring them afterwards, so the map is
    /// unchanged on return.
    pub fn impact_of_set(&mut self, points: &[PixelPoint]) -> Result<usize, DomainError> {
        let mut removed: Vec<(PixelPoint, u32)> = Vec::with_capacity(points.len());
        let mut lost = 0usize;
        for &p in points {
            let d2 = match self.members.get(&p) {
                Some(&d2) => d2,
                None => {
                    // Restore before reporting, to keep the map unchanged.
                    for &(q, r2) in removed.iter().rev() {
                        self.add_point(q, r2).expect("restoring removed point");
                    }
                    return Err(DomainError::NotInSet { x: p.x, y: p.y });
                }
            };
            lost += self.remove_point(p)?.len();
            removed.push((p, d2));
        }
        for &(q, r2) in removed.iter().rev() {
            self.add_point(q, r2).expect("restoring removed point");
        }
        Ok(lost)
    }

    #[cfg(debug_assertions)]
    fn check_total(&self) -> bool {
        self.total_covered == self.count.iter().filter(|&&c| c > 0).count()
    }
}

/// Builds the coverage map of all skeleton points.
pub fn build_coverage(skel: &Skeleton) -> CoverageMap {
    let mut cov = CoverageMap::empty(skel.width(), skel.height()).expect("valid skeleton dims");
    for (p, d2) in skel.iter() {
        cov.add_point(p, d2).expect("skeleton points are unique");
    }
    #[cfg(debug_assertions)]
    debug_assert!(cov.check_total());
    cov
}

/// Maps a skeleton back to its object: the union of the strict inscribed
/// disks of all points. The empty skeleton yields the empty image.
pub fn reconstruct(skel: &Skeleton) -> BinaryImage {
    build_coverage(skel).to_image()
}

/// Renders the coverage counts as a false-colour PPM (P6): count 0 is
/// white; counts 1..max map linearly from blue (HSV hue 240) to red (hue 0).
pub fn render_overlap(cov: &CoverageMap) -> Vec<u8> {
    let max = cov.count.iter().copied().max().unwrap_or(0);
    let mut rgb = Vec::with_capacity(cov.count.len() * 3);
    for &c in &cov.count {
        if c == 0 {
            rgb.extend_from_slice(&[255, 255, 255]);
        } else {
            let hue = if max <= 1 {
                240.0
            } else {
                240.0 * (1.0 - (f64::from(c) - 1.0) / (f64::from(max) - 1.0))
            };
            rgb.extend_from_slice(&hue_to_rgb(hue));
        }
    }
    encode_ppm(cov.width, cov.height, &rgb)
}

/// HSV to RGB for full saturation and value.
fn hue_to_rgb(hue: f64) -> [u8; 3] {
    let h = (hue / 60.0).rem_euclid(6.0);
    let x = 1.0 - (h % 2.0 - 1.0).abs();
    let (r, g, b) = match h as u32 {
        0 => (1.0, x, 0.0),
        1 => (x, 1.0, 0.0),
        2 => (0.0, 1.0, x),
        3 => (0.0, x, 1.0),
        4 => (x, 0.0, 1.0),
        _ => (1.0, 0.0, x),
    };
    [
        (r * 255.0 + 0.5) as u8,
        (g * 255.0 + 0.5) as u8,
        (b * 255.0 + 0.5) as u8,
    ]
}
