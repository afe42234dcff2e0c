//! Discrete skeleton computation by homotopic maximal-disk thinning, point
//! classification, and arc decomposition.
//!
//! Conventions: the object uses 8-connectivity, the background
//! 4-connectivity. Thinning visits object pixels ordered by increasing
//! squared boundary distance with row-major tie-breaking, removes a pixel
//! only if the removal is homotopic (the standard 8/4 simple-point test),
//! never removes a maximal-disk centre, and protects endpoints. A final
//! sweep restores one-pixel thinness where retained maximal centres left
//! two-pixel-wide ridges.
//!
//! Point classes follow the endpoint / branching / simple trichotomy on
//! 8-neighbourhoods; arcs are maximal chains of simple points terminated by
//! significant (end or branching) points.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::canon::canonical_transform;
use crate::distfield::{compute_edt, SquaredDistanceField};
use crate::pixelgrid::{BinaryImage, PixelPoint};
use crate::{isqrt, DomainError, ParseError, MAX_DIM};

/// The 8-neighbourhood offsets in row-major order. Bit `i` of a
/// neighbourhood mask corresponds to `NEIGHBOURS_8[i]`.
pub(crate) const NEIGHBOURS_8: [(i32, i32); 8] = [
    (-1, -1),
    (0, -1),
    (1, -1),
    (-1, 0),
    (1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
];

/// A skeleton: a finite set of grid points, each carrying the squared
/// radius of its inscribed disk.
///
/// Outputs of [`skeletonize`] additionally satisfy the thinness invariant
/// (no 2x2 block of skeleton points); the type itself also carries
/// "overcomplete" point sets used by extended densification, which may be
/// thicker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    width: u32,
    height: u32,
    points: BTreeMap<PixelPoint, u32>,
}

impl Skeleton {
    /// Builds a skeleton from explicit points and squared radii.
    pub fn from_parts(
        width: u32,
        height: u32,
        points: BTreeMap<PixelPoint, u32>,
    ) -> Result<Self, DomainError> {
        if width == 0 || height == 0 || width > MAX_DIM || height > MAX_DIM {
            return Err(DomainError::BadDimensions { width, height });
        }
        for (&p, &r2) in &points {
            if p.x >= width || p.y >= height {
                return Err(DomainError::OutOfBounds {
                    x: p.x,
                    y: p.y,
                    width,
                    height,
                });
            }
            if r2 == 0 {
                return Err(DomainError::NotObject { x: p.x, y: p.y });
            }
        }
        Ok(Skeleton {
            width,
            height,
            points,
        })
    }

    /// The full-object point set with radii from the distance field: the
    /// maximally overcomplete skeleton, used as ground for extended
    /// densification.
    pub fn from_object(
        img: &BinaryImage,
        df: &SquaredDistanceField,
    ) -> Result<Self, DomainError> {
        check_field(img, df)?;
        let points = img.object_points().map(|p| (p, df.d2(p))).collect();
        Ok(Skeleton {
            width: img.width(),
            height: img.height(),
            points,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: PixelPoint) -> bool {
        self.points.contains_key(&p)
    }

    /// Squared disk radius of `p`, if `p` is a skeleton point.
    pub fn radius_sq(&self, p: PixelPoint) -> Option<u32> {
        self.points.get(&p).copied()
    }

    /// Points with radii in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (PixelPoint, u32)> + '_ {
        self.points.iter().map(|(&p, &r)| (p, r))
    }

    pub fn points(&self) -> impl Iterator<Item = PixelPoint> + '_ {
        self.points.keys().copied()
    }

    pub(crate) fn remove(&mut self, p: PixelPoint) -> Option<u32> {
        self.points.remove(&p)
    }

    /// The skeleton restricted to `keep`; every kept point must be present.
    pub fn restricted_to<I>(&self, keep: I) -> Result<Skeleton, DomainError>
    where
        I: IntoIterator<Item = PixelPoint>,
    {
        let mut points = BTreeMap::new();
        for p in keep {
            let r2 = self
                .points
                .get(&p)
                .copied()
                .ok_or(DomainError::NotInSet { x: p.x, y: p.y })?;
            points.insert(p, r2);
        }
        Ok(Skeleton {
            width: self.width,
            height: self.height,
            points,
        })
    }

    /// Renders the point set as a binary mask on the skeleton's canvas.
    pub fn to_mask(&self) -> BinaryImage {
        let mut img = BinaryImage::new(self.width, self.height).expect("valid dims");
        for &p in self.points.keys() {
            img.set(p, true);
        }
        img
    }

    /// Serialises as SKEL2: `SKEL2\n<width> <height>\n<count>\n` followed by
    /// one `x y d2` line per point in row-major order. Bit-exact across
    /// platforms.
    pub fn to_skel_bytes(&self) -> Vec<u8> {
        let mut out = format!("SKEL2\n{} {}\n{}\n", self.width, self.height, self.len());
        for (&p, &r2) in &self.points {
            out.push_str(&format!("{} {} {}\n", p.x, p.y, r2));
        }
        out.into_bytes()
    }

    pub fn from_skel_bytes(bytes: &[u8]) -> Result<Skeleton, ParseError> {
        let text = std::str::from_utf8(bytes)
            .map_err(|e| ParseError::new(e.valid_up_to(), "SKEL2 is not valid UTF-8"))?;
        let mut offset = 0usize;
        let mut lines = text.split_inclusive('\n');
        let mut next_line = |what: &str| -> Result<(usize, &str), ParseError> {
            let line = lines
                .next()
                .ok_or_else(|| ParseError::new(offset, format!("missing {what}")))?;
            let start = offset;
            offset += line.len();
            Ok((start, line.trim_end_matches(['\n', '\r'])))
        };
        let (start, magic) = next_line("SKEL2 magic")?;
        if magic != "SKEL2" {
            return Err(ParseError::new(start, "expected SKEL2 magic"));
        }
        let (start, dims) = next_line("dimension line")?;
        let mut it = dims.split_ascii_whitespace();
        let parse =
            |tok: Option<&str>, what: &str| -> Result<u32, ParseError> {
                tok.and_then(|t| t.parse().ok())
                    .ok_or_else(|| ParseError::new(start, format!("bad {what}")))
            };
        let width = parse(it.next(), "width")?;
        let height = parse(it.next(), "height")?;
        let (cstart, count_line) = next_line("count line")?;
        let count: usize = count_line
            .trim()
            .parse()
            .map_err(|_| ParseError::new(cstart, "bad point count"))?;
        let mut points = BTreeMap::new();
        for i in 0..count {
            let (lstart, line) = next_line(&format!("point line {i}"))?;
            let mut it = line.split_ascii_whitespace();
            let mut field = |what: &str| -> Result<u32, ParseError> {
                it.next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| ParseError::new(lstart, format!("bad {what} in point line")))
            };
            let x = field("x")?;
            let y = field("y")?;
            let d2 = field("d2")?;
            points.insert(PixelPoint::new(x, y), d2);
        }
        if points.len() != count {
            return Err(ParseError::new(0, "duplicate points in SKEL2"));
        }
        Skeleton::from_parts(width, height, points)
            .map_err(|e| ParseError::new(0, format!("invalid skeleton: {e}")))
    }
}

fn check_field(img: &BinaryImage, df: &SquaredDistanceField) -> Result<(), DomainError> {
    if df.width() != img.width() || df.height() != img.height() {
        return Err(DomainError::DimensionMismatch {
            found_width: df.width(),
            found_height: df.height(),
            want_width: img.width(),
            want_height: img.height(),
        });
    }
    Ok(())
}

/// Classification of a skeleton point by its 8-neighbourhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    /// At most one neighbour; or exactly two that are 8-adjacent to each
    /// other; or exactly three all on one side (above, below, left, right).
    Endpoint,
    /// At least three neighbours, no two of which are horizontally or
    /// vertically adjacent to each other.
    Branching,
    /// Anything else.
    Simple,
}

/// Classifies by the 8-bit neighbourhood occupancy mask.
pub(crate) fn class_of_mask(mask: u8) -> PointClass {
    let offs: Vec<(i32, i32)> = (0..8)
        .filter(|&i| mask & (1 << i) != 0)
        .map(|i| NEIGHBOURS_8[i])
        .collect();
    let n = offs.len();
    if n <= 1 {
        return PointClass::Endpoint;
    }
    if n == 2 {
        let (a, b) = (offs[0], offs[1]);
        if (a.0 - b.0).abs() <= 1 && (a.1 - b.1).abs() <= 1 {
            return PointClass::Endpoint;
        }
    }
    if n == 3 {
        let one_sided = offs.iter().all(|o| o.1 == -1)
            || offs.iter().all(|o| o.1 == 1)
            || offs.iter().all(|o| o.0 == -1)
            || offs.iter().all(|o| o.0 == 1);
        if one_sided {
            return PointClass::Endpoint;
        }
    }
    if n >= 3 {
        let any_4_adjacent = offs.iter().enumerate().any(|(i, a)| {
            offs[i + 1..]
                .iter()
                .any(|b| (a.0 - b.0).abs() + (a.1 - b.1).abs() == 1)
        });
        if !any_4_adjacent {
            return PointClass::Branching;
        }
    }
    PointClass::Simple
}

fn mask_in<F: Fn(i64, i64) -> bool>(contains: F, p: PixelPoint) -> u8 {
    let mut mask = 0u8;
    for (i, (dx, dy)) in NEIGHBOURS_8.iter().enumerate() {
        if contains(i64::from(p.x) + i64::from(*dx), i64::from(p.y) + i64::from(*dy)) {
            mask |= 1 << i;
        }
    }
    mask
}

/// Classifies a skeleton point as endpoint, branching, or simple.
pub fn classify_point(skel: &Skeleton, p: PixelPoint) -> Result<PointClass, DomainError> {
    if !skel.contains(p) {
        return Err(DomainError::NotInSet { x: p.x, y: p.y });
    }
    let mask = mask_in(
        |x, y| {
            x >= 0
                && y >= 0
                && x < i64::from(skel.width)
                && y < i64::from(skel.height)
                && skel.contains(PixelPoint::new(x as u32, y as u32))
        },
        p,
    );
    Ok(class_of_mask(mask))
}

// --- simple-point (homotopic removal) test ----------------------------------

/// Component counting inside the 3x3 neighbourhood for one occupancy mask:
/// number of 8-connected object components among the 8 neighbours, and
/// number of 4-connected background components that touch the centre
/// 4-adjacently. Deletion is homotopic iff both are 1.
fn simple_point_for_mask(mask: u8) -> bool {
    let cells: Vec<(i32, i32)> = NEIGHBOURS_8.to_vec();
    let set: Vec<bool> = (0..8).map(|i| mask & (1 << i) != 0).collect();

    let components = |want: bool, diagonal: bool| -> Vec<Vec<usize>> {
        let mut seen = [false; 8];
        let mut comps = Vec::new();
        for start in 0..8 {
            if set[start] != want || seen[start] {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(i) = stack.pop() {
                for j in 0..8 {
                    if seen[j] || set[j] != want {
                        continue;
                    }
                    let dx = (cells[i].0 - cells[j].0).abs();
                    let dy = (cells[i].1 - cells[j].1).abs();
                    let adjacent = if diagonal {
                        dx <= 1 && dy <= 1
                    } else {
                        dx + dy == 1
                    };
                    if adjacent {
                        seen[j] = true;
                        comp.push(j);
                        stack.push(j);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    };

    let object_components = components(true, true).len();
    // Background components that include one of the four edge-adjacent cells
    // (indices 1, 3, 4, 6 in NEIGHBOURS_8).
    let bg_adjacent = components(false, false)
        .iter()
        .filter(|comp| comp.iter().any(|&i| matches!(i, 1 | 3 | 4 | 6)))
        .count();
    object_components == 1 && bg_adjacent == 1
}

fn simple_point_table() -> &'static [bool; 256] {
    static TABLE: OnceLock<[bool; 256]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [false; 256];
        for (mask, slot) in t.iter_mut().enumerate() {
            *slot = simple_point_for_mask(mask as u8);
        }
        t
    })
}

/// True iff deleting `p` from the point set (given as a mask image)
/// preserves the local topology: one 8-connected object component in the
/// punctured neighbourhood and one 4-connected background component
/// 4-adjacent to `p`.
pub fn is_removal_homotopic(set: &BinaryImage, p: PixelPoint) -> Result<bool, DomainError> {
    if !set.get(p) {
        return Err(DomainError::NotInSet { x: p.x, y: p.y });
    }
    let mask = mask_in(|x, y| set.get_signed(x, y), p);
    Ok(simple_point_table()[mask as usize])
}

// --- maximal disk detection ---------------------------------------------------

/// Set inclusion of strict discrete disks: every pixel of the disk at `p`
/// must lie strictly inside the disk radius of `q`.
fn ball_contained(p: PixelPoint, offsets: &[(i32, i32)], q: PixelPoint, d2_q: u32) -> bool {
    let (qx, qy) = (i64::from(q.x), i64::from(q.y));
    for &(dx, dy) in offsets {
        let ddx = i64::from(p.x) + i64::from(dx) - qx;
        let ddy = i64::from(p.y) + i64::from(dy) - qy;
        if ddx * ddx + ddy * ddy >= i64::from(d2_q) {
            return false;
        }
    }
    true
}

/// Shared scratch for maximality scans: disk offsets per squared radius.
#[derive(Default)]
struct OffsetCache {
    per_d2: BTreeMap<u32, Vec<(i32, i32)>>,
}

impl OffsetCache {
    fn get(&mut self, d2: u32) -> &[(i32, i32)] {
        self.per_d2
            .entry(d2)
            .or_insert_with(|| crate::distfield::disk_offsets(d2))
    }
}

/// A containing disk must hold `p` itself, so its centre lies within
/// Euclidean distance `sqrt(max_d2)`; candidates are scanned in growing
/// Chebyshev rings because containers usually sit right next to `p`.
fn is_maximal(
    df: &SquaredDistanceField,
    p: PixelPoint,
    max_d2: u32,
    cache: &mut OffsetCache,
) -> bool {
    let d2_p = df.d2(p);
    let radius = isqrt(u64::from(max_d2).saturating_sub(1)) as i64 + 1;
    let (px, py) = (i64::from(p.x), i64::from(p.y));
    let (w, h) = (i64::from(df.width()), i64::from(df.height()));
    for ring in 1..=radius {
        for (dx, dy) in chebyshev_ring(ring) {
            let (x, y) = (px + dx, py + dy);
            if x < 0 || y < 0 || x >= w || y >= h {
                continue;
            }
            let q = PixelPoint::new(x as u32, y as u32);
            let d2_q = df.d2(q);
            // A container has a strictly larger disk and holds p itself.
            if d2_q <= d2_p || (dx * dx + dy * dy) as u64 >= u64::from(d2_q) {
                continue;
            }
            if ball_contained(p, cache.get(d2_p), q, d2_q) {
                return false;
            }
        }
    }
    true
}

fn chebyshev_ring(t: i64) -> impl Iterator<Item = (i64, i64)> {
    let top = (-t..=t).map(move |dx| (dx, -t));
    let bottom = (-t..=t).map(move |dx| (dx, t));
    let left = (-t + 1..t).map(move |dy| (-t, dy));
    let right = (-t + 1..t).map(move |dy| (t, dy));
    top.chain(bottom).chain(left).chain(right)
}

/// True iff no other inscribed disk contains the disk centred at `p` as a
/// point set (the exact discrete medial-axis membership test).
pub fn detect_maximal_disk(
    df: &SquaredDistanceField,
    p: PixelPoint,
) -> Result<bool, DomainError> {
    if df.d2(p) == 0 {
        return Err(DomainError::NotObject { x: p.x, y: p.y });
    }
    Ok(is_maximal(df, p, df.max_d2(), &mut OffsetCache::default()))
}

// --- thinning ----------------------------------------------------------------

struct Mask<'a> {
    width: u32,
    height: u32,
    alive: &'a [bool],
}

impl Mask<'_> {
    fn get(&self, x: i64, y: i64) -> bool {
        x >= 0
            && y >= 0
            && x < i64::from(self.width)
            && y < i64::from(self.height)
            && self.alive[y as usize * self.width as usize + x as usize]
    }

    fn neighbour_mask(&self, p: PixelPoint) -> u8 {
        mask_in(|x, y| self.get(x, y), p)
    }

    fn in_full_2x2(&self, p: PixelPoint) -> bool {
        let (x, y) = (i64::from(p.x), i64::from(p.y));
        for (bx, by) in [(x - 1, y - 1), (x, y - 1), (x - 1, y), (x, y)] {
            if self.get(bx, by)
                && self.get(bx + 1, by)
                && self.get(bx, by + 1)
                && self.get(bx + 1, by + 1)
            {
                return true;
            }
        }
        false
    }
}

/// Computes the discrete skeleton by homotopic maximal-disk thinning.
///
/// Object pixels are visited in increasing `d2` order with row-major
/// tie-breaking; a pixel is deleted only if it is not a maximal-disk centre
/// and its deletion is homotopic. The loop runs to a fixpoint; a final
/// sweep then removes pixels sitting in full 2x2 blocks (homotopically and
/// never endpoints), which restores one-pixel thinness where ridges of
/// maximal centres were retained.
///
/// Tie-breaking happens in the canonical orientation of the shape (see the
/// crate-internal canonicalisation), so the skeleton transform commutes
/// exactly with grid symmetries for shapes without self-symmetry.
///
/// The result has the same 8-connected component count and the same hole
/// count as the input object.
pub fn skeletonize(
    img: &BinaryImage,
    df: &SquaredDistanceField,
) -> Result<Skeleton, DomainError> {
    check_field(img, df)?;
    if img.is_empty_object() {
        return Ok(Skeleton {
            width: img.width(),
            height: img.height(),
            points: BTreeMap::new(),
        });
    }

    let d = canonical_transform(img);
    if d.is_identity() {
        let alive = thin_core(img, df);
        let points = collect_points(img.width(), df, &alive);
        return Ok(Skeleton {
            width: img.width(),
            height: img.height(),
            points,
        });
    }

    let cimg = d.apply_image(img);
    let cdf = compute_edt(&cimg);
    let alive = thin_core(&cimg, &cdf);
    let inv = d.inverse();
    let cw = cimg.width();
    let points = collect_points(cw, &cdf, &alive)
        .into_keys()
        .map(|q| {
            let p = inv.map_point(q, cw, cimg.height());
            (p, df.d2(p))
        })
        .collect();
    Ok(Skeleton {
        width: img.width(),
        height: img.height(),
        points,
    })
}

fn collect_points(
    width: u32,
    df: &SquaredDistanceField,
    alive: &[bool],
) -> BTreeMap<PixelPoint, u32> {
    let w = width as usize;
    alive
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| {
            b.then(|| {
                let p = PixelPoint::new((i % w) as u32, (i / w) as u32);
                (p, df.d2(p))
            })
        })
        .collect()
}

/// The thinning loops, in whichever frame the caller chose.
fn thin_core(img: &BinaryImage, df: &SquaredDistanceField) -> Vec<bool> {
    let w = img.width() as usize;
    let mut alive: Vec<bool> = img.bits().to_vec();

    let mut order: Vec<(u32, usize)> = alive
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| {
            b.then(|| {
                let p = PixelPoint::new((i % w) as u32, (i / w) as u32);
                (df.d2(p), i)
            })
        })
        .collect();
    order.sort_unstable();

    let max_d2 = df.max_d2();
    let mut cache = OffsetCache::default();
    let maximal: Vec<bool> = order
        .iter()
        .map(|&(_, i)| {
            is_maximal(
                df,
                PixelPoint::new((i % w) as u32, (i / w) as u32),
                max_d2,
                &mut cache,
            )
        })
        .collect();

    let simple = simple_point_table();
    let mask_at = |alive: &[bool], i: usize| -> u8 {
        let p = PixelPoint::new((i % w) as u32, (i / w) as u32);
        Mask {
            width: img.width(),
            height: img.height(),
            alive,
        }
        .neighbour_mask(p)
    };

    // Erosion: anchored by maximal-disk centres, constrained by homotopy.
    // Geometric endpoint protection stays out of this phase; applied to a
    // still-thick set it freezes transient boundary tips into spurious
    // spokes. Real limbs survive through their own maximal disks.
    loop {
        let mut changed = false;
        for (k, &(_, i)) in order.iter().enumerate() {
            if !alive[i] || maximal[k] {
                continue;
            }
            if simple[mask_at(&alive, i) as usize] {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    // Thinness sweep: retained maximal centres can form 2-wide ridges. The
    // set is thin enough here for the endpoint classification to be
    // meaningful, so limb tips are protected.
    loop {
        let mut changed = false;
        for &(_, i) in &order {
            if !alive[i] {
                continue;
            }
            let p = PixelPoint::new((i % w) as u32, (i / w) as u32);
            let in_block = Mask {
                width: img.width(),
                height: img.height(),
                alive: &alive,
            }
            .in_full_2x2(p);
            if !in_block {
                continue;
            }
            let mask = mask_at(&alive, i);
            if simple[mask as usize] && class_of_mask(mask) != PointClass::Endpoint {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    alive
}

// --- arcs ----------------------------------------------------------------------

/// A maximal chain of skeleton points: consecutive points are 8-neighbours,
/// the first and last are significant (end or branching) points, interior
/// points are simple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonArc {
    points: Vec<PixelPoint>,
}

impl SkeletonArc {
    pub fn points(&self) -> &[PixelPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Row-major smallest member, used as a deterministic tie-break key.
    pub fn min_point(&self) -> PixelPoint {
        *self.points.iter().min().expect("arcs are non-empty")
    }
}

fn neighbours_in(skel: &Skeleton, p: PixelPoint) -> Vec<PixelPoint> {
    NEIGHBOURS_8
        .iter()
        .filter_map(|&(dx, dy)| {
            let x = i64::from(p.x) + i64::from(dx);
            let y = i64::from(p.y) + i64::from(dy);
            if x < 0 || y < 0 || x >= i64::from(skel.width) || y >= i64::from(skel.height) {
                return None;
            }
            let q = PixelPoint::new(x as u32, y as u32);
            skel.contains(q).then_some(q)
        })
        .collect()
}

/// Decomposes the skeleton into arcs.
///
/// Every simple point belongs to exactly one arc; arcs terminate at
/// significant points; adjacent significant points form two-point arcs;
/// isolated points form single-point arcs. Pure cycles of simple points
/// (rings without any significant point) yield no arcs.
pub fn decompose_arcs(skel: &Skeleton) -> Vec<SkeletonArc> {
    use std::collections::BTreeSet;

    let class: BTreeMap<PixelPoint, PointClass> = skel
        .points()
        .map(|p| (p, classify_point(skel, p).expect("point is in skeleton")))
        .collect();
    let significant = |p: PixelPoint| class[&p] != PointClass::Simple;

    let mut arcs = Vec::new();
    let mut visited: BTreeSet<PixelPoint> = BTreeSet::new();

    for s in skel.points().filter(|&p| significant(p)) {
        for n in neighbours_in(skel, s) {
            if significant(n) || visited.contains(&n) {
                continue;
            }
            let mut arc = vec![s, n];
            visited.insert(n);
            loop {
                let cur = *arc.last().expect("non-empty");
                let next = neighbours_in(skel, cur)
                    .into_iter()
                    .find(|&q| !significant(q) && !visited.contains(&q));
                if let Some(q) = next {
                    visited.insert(q);
                    arc.push(q);
                    continue;
                }
                let before = arc[arc.len() - 2];
                let terminal = neighbours_in(skel, cur)
                    .into_iter()
                    .find(|&q| significant(q) && q != before)
                    .or_else(|| {
                        // A chain can close back onto its own anchor.
                        neighbours_in(skel, cur)
                            .into_iter()
                            .find(|&q| q == s)
                    });
                if let Some(t) = terminal {
                    arc.push(t);
                }
                break;
            }
            arcs.push(SkeletonArc { points: arc });
        }
    }

    // Directly adjacent significant points form two-point arcs; isolated
    // significant points are their own single-point arcs.
    for p in skel.points().filter(|&p| significant(p)) {
        let nbs = neighbours_in(skel, p);
        if nbs.is_empty() {
            arcs.push(SkeletonArc { points: vec![p] });
            continue;
        }
        for q in nbs {
            if significant(q) && p < q {
                arcs.push(SkeletonArc { points: vec![p, q] });
            }
        }
    }

    arcs
}
