//! Quality criteria and topology/geometry measures for scale-space states.
//!
//! The three per-scale quality measures are the reconstruction error
//! (missing object pixels relative to the full reconstruction), skeleton
//! minimality (points per reconstructed pixel, kept as an exact rational),
//! and skeleton complexity (endpoints plus branching points). Topology
//! counts 8-connected object components and enclosed background holes;
//! the diameter is the exact maximum pairwise pixel-centre distance.

use std::collections::BTreeMap;

use crate::medialaxis::{classify_point, PointClass, Skeleton};
use crate::pixelgrid::{BinaryImage, PixelPoint};
use crate::reconstruct::{build_coverage, CoverageMap};
use crate::scalespace::{Direction, ScaleSpacePath};
use crate::DomainError;

/// Exact skeleton minimality: member points per reconstructed pixel.
///
/// Comparison and equality are value-based (cross-multiplied), so `1/2`
/// equals `2/4`. Undefined for an empty reconstruction; operations return
/// `Option<Minimality>` and the CSV writers emit `NA` there.
#[derive(Debug, Clone, Copy)]
pub struct Minimality {
    points: u64,
    area: u64,
}

impl Minimality {
    pub fn new(points: usize, area: usize) -> Option<Self> {
        (area > 0).then_some(Minimality {
            points: points as u64,
            area: area as u64,
        })
    }

    pub fn points(&self) -> u64 {
        self.points
    }

    pub fn area(&self) -> u64 {
        self.area
    }

    pub fn as_f64(&self) -> f64 {
        self.points as f64 / self.area as f64
    }

    /// Decimal with six places, rounding half away from zero.
    pub fn to_decimal_6(&self) -> String {
        let scaled = (2 * u128::from(self.points) * 1_000_000 + u128::from(self.area))
            / (2 * u128::from(self.area));
        format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
    }
}

impl PartialEq for Minimality {
    fn eq(&self, other: &Self) -> bool {
        u128::from(self.points) * u128::from(other.area)
            == u128::from(other.points) * u128::from(self.area)
    }
}

impl Eq for Minimality {}

impl PartialOrd for Minimality {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Minimality {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (u128::from(self.points) * u128::from(other.area))
            .cmp(&(u128::from(other.points) * u128::from(self.area)))
    }
}

impl std::fmt::Display for Minimality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.points, self.area)
    }
}

/// Reconstruction error: object pixels of the full reconstruction that are
/// missing at the current scale. False positives cannot occur because every
/// state reconstructs from a subset of the full point set, so a negative
/// difference signals a violated invariant.
pub fn reconstruction_error(o0_area: usize, area: usize) -> Result<usize, DomainError> {
    o0_area
        .checked_sub(area)
        .ok_or(DomainError::Internal("reconstruction exceeds initial area"))
}

/// Skeleton minimality at a scale: `points / area`, `None` when the
/// reconstruction is empty.
pub fn minimality(points: usize, area: usize) -> Option<Minimality> {
    Minimality::new(points, area)
}

/// Skeleton complexity: the number of endpoints plus branching points.
pub fn complexity(skel: &Skeleton) -> usize {
    skel.points()
        .filter(|&p| {
            classify_point(skel, p).expect("point is in skeleton") != PointClass::Simple
        })
        .count()
}

/// Connected-component and hole counts of a binary object: 8-connectivity
/// for the object, 4-connectivity for the background; a hole is a background
/// component that does not touch the canvas border.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Topology {
    pub components: usize,
    pub holes: usize,
}

/// Flood-fill topology of the object set.
pub fn topology(img: &BinaryImage) -> Topology {
    let w = img.width() as usize;
    let h = img.height() as usize;
    let at = |x: usize, y: usize| img.bits()[y * w + x];
    let mut seen = vec![false; w * h];

    let mut components = 0;
    for start in 0..w * h {
        if !img.bits()[start] || seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let (x, y) = (i % w, i / w);
            for dy in -1i64..=1 {
                for dx in -1i64..=1 {
                    let (nx, ny) = (x as i64 + dx, y as i64 + dy);
                    if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                        continue;
                    }
                    let j = ny as usize * w + nx as usize;
                    if at(nx as usize, ny as usize) && !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
    }

    // Background reachable 4-connectedly from the border is outside; the
    // remaining background components are holes.
    let mut outside = vec![false; w * h];
    let mut stack = Vec::new();
    for x in 0..w {
        for y in [0, h - 1] {
            let i = y * w + x;
            if !img.bits()[i] && !outside[i] {
                outside[i] = true;
                stack.push(i);
            }
        }
    }
    for y in 0..h {
        for x in [0, w - 1] {
            let i = y * w + x;
            if !img.bits()[i] && !outside[i] {
                outside[i] = true;
                stack.push(i);
            }
        }
    }
    let neighbours_4 = [(0i64, -1i64), (-1, 0), (1, 0), (0, 1)];
    while let Some(i) = stack.pop() {
        let (x, y) = ((i % w) as i64, (i / w) as i64);
        for (dx, dy) in neighbours_4 {
            let (nx, ny) = (x + dx, y + dy);
            if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                continue;
            }
            let j = ny as usize * w + nx as usize;
            if !img.bits()[j] && !outside[j] {
                outside[j] = true;
                stack.push(j);
            }
        }
    }

    let mut hole_seen = vec![false; w * h];
    let mut holes = 0;
    for start in 0..w * h {
        if img.bits()[start] || outside[start] || hole_seen[start] {
            continue;
        }
        holes += 1;
        hole_seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let (x, y) = ((i % w) as i64, (i / w) as i64);
            for (dx, dy) in neighbours_4 {
                let (nx, ny) = (x + dx, y + dy);
                if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                    continue;
                }
                let j = ny as usize * w + nx as usize;
                if !img.bits()[j] && !outside[j] && !hole_seen[j] {
                    hole_seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }

    Topology { components, holes }
}

/// Boundary pixels: object pixels with a background 4-neighbour (pixels
/// outside the canvas count as background). The maximum pairwise distance
/// of the object is attained on this set.
fn boundary_points(img: &BinaryImage) -> Vec<PixelPoint> {
    img.object_points()
        .filter(|&p| {
            let (x, y) = (i64::from(p.x), i64::from(p.y));
            !(img.get_signed(x - 1, y)
                && img.get_signed(x + 1, y)
                && img.get_signed(x, y - 1)
                && img.get_signed(x, y + 1))
        })
        .collect()
}

/// Exact squared diameter: the maximum pairwise squared Euclidean distance
/// between object pixel centres, brute-forced over boundary pixels.
/// `None` for an empty object, `Some(0)` for a singleton.
pub fn diameter_squared(img: &BinaryImage) -> Option<u64> {
    let boundary = boundary_points(img);
    if boundary.is_empty() {
        return None;
    }
    let mut max = 0u64;
    for (i, &a) in boundary.iter().enumerate() {
        for &b in &boundary[i + 1..] {
            max = max.max(a.dist_sq(b));
        }
    }
    Some(max)
}

/// Exact diameter in pixel units; see [`diameter_squared`].
pub fn diameter(img: &BinaryImage) -> Option<f64> {
    diameter_squared(img).map(|d| (d as f64).sqrt())
}

/// All per-scale measures of one scale-space state.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleMetrics {
    pub level: usize,
    /// Current point-set size.
    pub points: usize,
    /// Reconstruction area in pixels.
    pub area: usize,
    /// Missing pixels relative to the full reconstruction.
    pub error: usize,
    /// `None` when the reconstruction is empty.
    pub minimality: Option<Minimality>,
    /// Endpoints plus branching points of the current point set.
    pub complexity: usize,
    /// 8-connected components of the reconstruction.
    pub components: usize,
    /// Enclosed background components of the reconstruction.
    pub holes: usize,
    /// Squared diameter of the reconstruction; `None` when empty.
    pub diameter_sq: Option<u64>,
}

fn snapshot(cov: &CoverageMap, level: usize, full_area: usize) -> Result<ScaleMetrics, DomainError> {
    let points = cov.member_count();
    let area = cov.total_covered();
    let members: BTreeMap<PixelPoint, u32> = cov.members().collect();
    let current = Skeleton::from_parts(cov.width(), cov.height(), members)?;
    let image = cov.to_image();
    let topo = topology(&image);
    Ok(ScaleMetrics {
        level,
        points,
        area,
        error: reconstruction_error(full_area, area)?,
        minimality: minimality(points, area),
        complexity: complexity(&current),
        components: topo.components,
        holes: topo.holes,
        diameter_sq: diameter_squared(&image),
    })
}

/// Walks a path over its ground skeleton and measures the state at the
/// requested levels (all `0..=m` when `levels` is `None`), maintaining the
/// coverage incrementally. Levels must be given in strictly increasing
/// order.
pub fn trace_path(
    path: &ScaleSpacePath,
    ground: &Skeleton,
    levels: Option<&[usize]>,
) -> Result<Vec<ScaleMetrics>, DomainError> {
    let m = path.num_steps();
    let all_levels: Vec<usize>;
    let wanted: &[usize] = match levels {
        Some(ls) => ls,
        None => {
            all_levels = (0..=m).collect();
            &all_levels
        }
    };
    for w in wanted.windows(2) {
        if w[1] <= w[0] {
            return Err(DomainError::BadParameter {
                name: "levels",
                value: w[1] as u64,
                reason: "levels must be strictly increasing",
            });
        }
    }
    if let Some(&last) = wanted.last() {
        if last > m {
            return Err(DomainError::LevelOutOfRange { level: last, max: m });
        }
    }

    let ground_skel = ground.restricted_to(path.ground().iter().copied())?;
    let full_cov = build_coverage(&ground_skel);
    let full_area = full_cov.total_covered();

    let mut cov = match path.direction() {
        Direction::Sparsify => full_cov,
        Direction::Densify => CoverageMap::empty(ground.width(), ground.height())?,
    };

    let mut out = Vec::with_capacity(wanted.len());
    let mut want_iter = wanted.iter().peekable();
    for level in 0..=m {
        if want_iter.peek() == Some(&&level) {
            out.push(snapshot(&cov, level, full_area)?);
            want_iter.next();
        }
        if level < m {
            for &p in path.step(level) {
                match path.direction() {
                    Direction::Sparsify => {
                        cov.remove_point(p)?;
                    }
                    Direction::Densify => {
                        let d2 = ground.radius_sq(p).ok_or(DomainError::NotInSet {
                            x: p.x,
                            y: p.y,
                        })?;
                        cov.add_point(p, d2)?;
                    }
                }
            }
        }
    }
    Ok(out)
}
