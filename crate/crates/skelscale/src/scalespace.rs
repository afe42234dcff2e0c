//! Scale-space paths and the task-specific path strategies.
//!
//! A path is an ordered partition `P_1..P_m` of a ground set: the skeleton
//! for sparsification and densification, or the whole object for extended
//! densification. Sparsification starts from the full set and removes
//! `P_ell` at level `ell`; densification starts empty and adds it. The
//! family of per-level point sets and reconstructions forms the scale-space.
//!
//! Strategies:
//!
//! - [`random_path`]: uniform random singleton removals (the uncommitted
//!   baseline), driven by a splitmix64 stream with rejection sampling.
//! - [`branch_pruning_path`]: repeatedly removes the endpoint-arc with the
//!   smallest reconstruction impact, excluding branching points, falling
//!   back to the whole remaining skeleton when no endpoint arc exists.
//!   Keeps skeleton complexity non-increasing and never splits a surviving
//!   component.
//! - [`compression_path`]: per step removes the `r` points with the
//!   smallest unique reconstruction impact, with impacts maintained
//!   incrementally through a pixel-to-covering-points index.
//! - [`densify_compression_order`]: greedy bottom-up counterpart, adding
//!   the point with the largest marginal coverage gain each step. Exact but
//!   inherently slower than top-down compression.
//! - [`stiffness_path`]: extended densification over the whole object that
//!   alternates one-pixel dilation of the current structure with
//!   skeletonisation of the uncovered remainder.
//!
//! Every tie is broken in row-major order, so all strategies are fully
//! deterministic; random paths are deterministic per seed.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use crate::distfield::{compute_edt, disk_offsets};
use crate::medialaxis::{
    classify_point, decompose_arcs, skeletonize, PointClass, Skeleton, NEIGHBOURS_8,
};
use crate::pixelgrid::{BinaryImage, PixelPoint};
use crate::reconstruct::{build_coverage, reconstruct};
use crate::{DomainError, ParseError};

/// Whether a path removes points from the full set or adds them to an empty
/// one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Sparsify,
    Densify,
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Direction::Sparsify => "sparsify",
            Direction::Densify => "densify",
        })
    }
}

impl std::str::FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sparsify" => Ok(Direction::Sparsify),
            "densify" => Ok(Direction::Densify),
            other => Err(format!("unknown direction {other:?}")),
        }
    }
}

/// An ordered partition of a ground point set into non-empty steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleSpacePath {
    direction: Direction,
    steps: Vec<Vec<PixelPoint>>,
    ground: BTreeSet<PixelPoint>,
}

impl ScaleSpacePath {
    /// Wraps steps and ground without validating the partition properties;
    /// use [`validate_path`] on paths from untrusted sources.
    pub fn new(
        direction: Direction,
        steps: Vec<Vec<PixelPoint>>,
        ground: BTreeSet<PixelPoint>,
    ) -> Self {
        ScaleSpacePath {
            direction,
            steps,
            ground,
        }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Number of steps `m`; the scale parameter ranges over `0..=m`.
    pub fn num_steps(&self) -> usize {
        self.steps.len()
    }

    /// The 0-indexed step applied in the transition from level `i` to
    /// `i + 1`.
    pub fn step(&self, i: usize) -> &[PixelPoint] {
        &self.steps[i]
    }

    pub fn steps(&self) -> &[Vec<PixelPoint>] {
        &self.steps
    }

    pub fn ground(&self) -> &BTreeSet<PixelPoint> {
        &self.ground
    }

    /// Serialises as PATH1: `PATH1\n<direction> <m>\n` followed by one
    /// `<k> : x1 y1 x2 y2 ...` line per step (`k` is 1-based).
    pub fn to_path_bytes(&self) -> Vec<u8> {
        let mut out = format!("PATH1\n{} {}\n", self.direction, self.steps.len());
        for (k, step) in self.steps.iter().enumerate() {
            out.push_str(&format!("{} :", k + 1));
            for p in step {
                out.push_str(&format!(" {} {}", p.x, p.y));
            }
            out.push('\n');
        }
        out.into_bytes()
    }

    /// Parses a PATH1 stream and binds it to the given ground set. The
    /// result is not validated; run [`validate_path`] afterwards.
    pub fn from_path_bytes(
        bytes: &[u8],
        ground: BTreeSet<PixelPoint>,
    ) -> Result<ScaleSpacePath, ParseError> {
        let text = std::str::from_utf8(bytes)
            .map_err(|e| ParseError::new(e.valid_up_to(), "PATH1 is not valid UTF-8"))?;
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
        let (start, magic) = next_line("PATH1 magic")?;
        if magic != "PATH1" {
            return Err(ParseError::new(start, "expected PATH1 magic"));
        }
        let (start, header) = next_line("direction line")?;
        let mut it = header.split_ascii_whitespace();
        let direction: Direction = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| ParseError::new(start, "bad direction (sparsify|densify)"))?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| ParseError::new(start, "bad step count"))?;
        let mut steps = Vec::with_capacity(m);
        for k in 1..=m {
            let (lstart, line) = next_line(&format!("step line {k}"))?;
            let (index_part, rest) = line
                .split_once(':')
                .ok_or_else(|| ParseError::new(lstart, "step line missing ':'"))?;
            let index: usize = index_part
                .trim()
                .parse()
                .map_err(|_| ParseError::new(lstart, "bad step index"))?;
            if index != k {
                return Err(ParseError::new(
                    lstart,
                    format!("step index {index} out of order, expected {k}"),
                ));
            }
            let coords: Vec<u32> = rest
                .split_ascii_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| ParseError::new(lstart, format!("bad coordinate {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            if coords.len() % 2 != 0 {
                return Err(ParseError::new(lstart, "odd number of coordinates"));
            }
            let step: Vec<PixelPoint> = coords
                .chunks_exact(2)
                .map(|c| PixelPoint::new(c[0], c[1]))
                .collect();
            steps.push(step);
        }
        Ok(ScaleSpacePath {
            direction,
            steps,
            ground,
        })
    }
}

/// The first way in which a path fails to be an ordered partition of its
/// ground set. `step` is the 1-based index of the violating step, or 0 when
/// the partition as a whole misses ground points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathViolation {
    pub step: usize,
    pub kind: PathViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathViolationKind {
    EmptyStep,
    DuplicatePoint(PixelPoint),
    OutsideGround(PixelPoint),
    GroundNotCovered(PixelPoint),
}

impl std::fmt::Display for PathViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.kind {
            PathViolationKind::EmptyStep => write!(f, "step {} is empty", self.step),
            PathViolationKind::DuplicatePoint(p) => {
                write!(f, "step {} repeats point {p}", self.step)
            }
            PathViolationKind::OutsideGround(p) => {
                write!(f, "step {} contains {p} outside the ground set", self.step)
            }
            PathViolationKind::GroundNotCovered(p) => {
                write!(f, "ground point {p} is not covered by any step")
            }
        }
    }
}

/// Checks that the steps are non-empty, pairwise disjoint, and that their
/// union equals the ground set; reports the first violation.
pub fn validate_path(path: &ScaleSpacePath) -> Result<(), PathViolation> {
    let mut seen: BTreeSet<PixelPoint> = BTreeSet::new();
    for (i, step) in path.steps.iter().enumerate() {
        let k = i + 1;
        if step.is_empty() {
            return Err(PathViolation {
                step: k,
                kind: PathViolationKind::EmptyStep,
            });
        }
        for &p in step {
            if !path.ground.contains(&p) {
                return Err(PathViolation {
                    step: k,
                    kind: PathViolationKind::OutsideGround(p),
                });
            }
            if !seen.insert(p) {
                return Err(PathViolation {
                    step: k,
                    kind: PathViolationKind::DuplicatePoint(p),
                });
            }
        }
    }
    if let Some(&missing) = path.ground.difference(&seen).next() {
        return Err(PathViolation {
            step: 0,
            kind: PathViolationKind::GroundNotCovered(missing),
        });
    }
    Ok(())
}

/// One scale of the evolution: the level, the current point set with its
/// radii, and the reconstruction (computed on demand).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleState {
    level: usize,
    width: u32,
    height: u32,
    sigma: BTreeMap<PixelPoint, u32>,
}

impl ScaleState {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn point_count(&self) -> usize {
        self.sigma.len()
    }

    pub fn contains(&self, p: PixelPoint) -> bool {
        self.sigma.contains_key(&p)
    }

    pub fn points(&self) -> impl Iterator<Item = PixelPoint> + '_ {
        self.sigma.keys().copied()
    }

    /// The current point set as a skeleton.
    pub fn skeleton(&self) -> Skeleton {
        Skeleton::from_parts(self.width, self.height, self.sigma.clone())
            .expect("state points are valid")
    }

    /// The reconstruction `u_ell` of the current point set.
    pub fn image(&self) -> BinaryImage {
        reconstruct(&self.skeleton())
    }

    /// Continues the evolution from this state to a later level.
    pub fn advanced(
        &self,
        path: &ScaleSpacePath,
        skel0: &Skeleton,
        level: usize,
    ) -> Result<ScaleState, DomainError> {
        let m = path.num_steps();
        if level < self.level || level > m {
            return Err(DomainError::LevelOutOfRange { level, max: m });
        }
        let mut sigma = self.sigma.clone();
        for i in self.level..level {
            for &p in path.step(i) {
                match path.direction() {
                    Direction::Sparsify => {
                        sigma
                            .remove(&p)
                            .ok_or(DomainError::NotInSet { x: p.x, y: p.y })?;
                    }
                    Direction::Densify => {
                        let d2 = skel0
                            .radius_sq(p)
                            .ok_or(DomainError::NotInSet { x: p.x, y: p.y })?;
                        if sigma.insert(p, d2).is_some() {
                            return Err(DomainError::AlreadyPresent { x: p.x, y: p.y });
                        }
                    }
                }
            }
        }
        Ok(ScaleState {
            level,
            width: self.width,
            height: self.height,
            sigma,
        })
    }
}

/// Evolves the path to the given level, starting from the full ground set
/// (sparsify) or from the empty set (densify). Radii are looked up in
/// `skel0`, which must cover the ground set; for sparsification the ground
/// must equal the skeleton point set.
pub fn evolve(
    path: &ScaleSpacePath,
    skel0: &Skeleton,
    level: usize,
) -> Result<ScaleState, DomainError> {
    let m = path.num_steps();
    if level > m {
        return Err(DomainError::LevelOutOfRange { level, max: m });
    }
    for &p in &path.ground {
        if !skel0.contains(p) {
            return Err(DomainError::GroundMismatch);
        }
    }
    if path.direction == Direction::Sparsify && path.ground.len() != skel0.len() {
        return Err(DomainError::GroundMismatch);
    }
    let sigma = match path.direction {
        Direction::Sparsify => path
            .ground
            .iter()
            .map(|&p| (p, skel0.radius_sq(p).expect("checked above")))
            .collect(),
        Direction::Densify => BTreeMap::new(),
    };
    let start = ScaleState {
        level: 0,
        width: skel0.width(),
        height: skel0.height(),
        sigma,
    };
    start.advanced(path, skel0, level)
}

/// Splitmix64 generator state. Identical seeds produce identical streams on
/// every platform, which makes random paths reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngState {
    s: u64,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        RngState { s: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.s = self.s.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.s;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..n` by rejection sampling.
    pub fn next_below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "next_below requires a non-empty range");
        let threshold = n.wrapping_neg() % n; // 2^64 mod n
        loop {
            let v = self.next_u64();
            if v >= threshold {
                return v % n;
            }
        }
    }
}

/// Uniform random sparsification: `m = |Sigma|` singleton steps, each point
/// drawn uniformly from the remaining candidates (kept sorted row-major).
pub fn random_path(skel: &Skeleton, seed: u64) -> Result<ScaleSpacePath, DomainError> {
    if skel.is_empty() {
        return Err(DomainError::EmptySkeleton);
    }
    let mut rng = RngState::new(seed);
    let mut candidates: Vec<PixelPoint> = skel.points().collect();
    let mut steps = Vec::with_capacity(candidates.len());
    while !candidates.is_empty() {
        let i = rng.next_below(candidates.len() as u64) as usize;
        steps.push(vec![candidates.remove(i)]);
    }
    Ok(ScaleSpacePath {
        direction: Direction::Sparsify,
        steps,
        ground: skel.points().collect(),
    })
}

/// Branch pruning: each step removes the whole endpoint-arc of smallest
/// reconstruction impact, excluding branching points. When no arc contains
/// an endpoint (only rings remain), the whole remaining skeleton is one
/// final step. Ties between arcs break on (impact, size, sorted point
/// list).
pub fn branch_pruning_path(skel: &Skeleton) -> Result<ScaleSpacePath, DomainError> {
    if skel.is_empty() {
        return Err(DomainError::EmptySkeleton);
    }
    let ground: BTreeSet<PixelPoint> = skel.points().collect();
    let mut current = skel.clone();
    let mut cov = build_coverage(skel);
    let mut steps = Vec::new();

    while !current.is_empty() {
        let classes: BTreeMap<PixelPoint, PointClass> = current
            .points()
            .map(|p| (p, classify_point(&current, p).expect("point present")))
            .collect();
        let arcs = decompose_arcs(&current);
        let mut candidates: Vec<Vec<PixelPoint>> = arcs
            .iter()
            .filter(|a| {
                a.points()
                    .iter()
                    .any(|p| classes[p] == PointClass::Endpoint)
            })
            .map(|a| {
                // Loop arcs repeat their anchor; work on the point set.
                let mut pts = a.points().to_vec();
                pts.sort_unstable();
                pts.dedup();
                pts
            })
            .collect();
        if candidates.is_empty() {
            candidates.push(current.points().collect());
        }

        let mut best: Option<(usize, usize, &Vec<PixelPoint>)> = None;
        for arc in &candidates {
            let impact = cov.impact_of_set(arc)?;
            let better = match &best {
                None => true,
                Some((bi, bl, bp)) => {
                    (impact, arc.len(), arc) < (*bi, *bl, *bp)
                }
            };
            if better {
                best = Some((impact, arc.len(), arc));
            }
        }
        let chosen = best.expect("at least one candidate").2;

        let mut step: Vec<PixelPoint> = chosen
            .iter()
            .copied()
            .filter(|p| classes[p] != PointClass::Branching)
            .collect();
        if step.is_empty() {
            // Degenerate all-branching remainder: finish in one step.
            step = current.points().collect();
        }
        for &p in &step {
            cov.remove_point(p)?;
            current.remove(p);
        }
        steps.push(step);
    }

    Ok(ScaleSpacePath {
        direction: Direction::Sparsify,
        steps,
        ground,
    })
}

fn disk_pixel_indices(width: u32, height: u32, p: PixelPoint, d2: u32) -> Vec<usize> {
    let w = i64::from(width);
    let h = i64::from(height);
    disk_offsets(d2)
        .into_iter()
        .filter_map(|(dx, dy)| {
            let x = i64::from(p.x) + i64::from(dx);
            let y = i64::from(p.y) + i64::from(dy);
            (x >= 0 && y >= 0 && x < w && y < h).then(|| (y * w + x) as usize)
        })
        .collect()
}

/// Greedy compression: each step removes the `r` remaining points with the
/// smallest unique reconstruction impact (impacts frozen at the step start,
/// ties row-major). Impacts are maintained incrementally: a pixel whose
/// cover count drops to one credits its unique remaining owner, found
/// through a pixel-to-covering-points index.
pub fn compression_path(skel: &Skeleton, r: usize) -> Result<ScaleSpacePath, DomainError> {
    if r < 1 {
        return Err(DomainError::BadParameter {
            name: "r",
            value: r as u64,
            reason: "points per step must be at least 1",
        });
    }
    if skel.is_empty() {
        return Err(DomainError::EmptySkeleton);
    }
    let width = skel.width();
    let height = skel.height();
    let pts: Vec<(PixelPoint, u32)> = skel.iter().collect(); // row-major
    let n = pts.len();
    let cells = width as usize * height as usize;

    let mut count = vec![0u32; cells];
    let mut covers: Vec<Vec<u32>> = vec![Vec::new(); cells];
    for (i, &(p, d2)) in pts.iter().enumerate() {
        for pix in disk_pixel_indices(width, height, p, d2) {
            count[pix] += 1;
            covers[pix].push(i as u32);
        }
    }
    let mut impact: Vec<usize> = pts
        .iter()
        .map(|&(p, d2)| {
            disk_pixel_indices(width, height, p, d2)
                .into_iter()
                .filter(|&pix| count[pix] == 1)
                .count()
        })
        .collect();

    let mut alive = vec![true; n];
    let mut alive_count = n;
    let mut steps = Vec::new();
    while alive_count > 0 {
        let s = r.min(alive_count);
        let mut order: Vec<(usize, u32)> = (0..n)
            .filter(|&i| alive[i])
            .map(|i| (impact[i], i as u32))
            .collect();
        if s < order.len() {
            order.select_nth_unstable(s - 1);
            order.truncate(s);
        }
        order.sort_unstable();
        let mut chosen: Vec<u32> = order.into_iter().map(|(_, i)| i).collect();

        for &i in &chosen {
            let i = i as usize;
            alive[i] = false;
            alive_count -= 1;
            let (p, d2) = pts[i];
            for pix in disk_pixel_indices(width, height, p, d2) {
                count[pix] -= 1;
                if count[pix] == 1 {
                    let owner = covers[pix]
                        .iter()
                        .copied()
                        .find(|&j| alive[j as usize])
                        .expect("a pixel with count 1 has exactly one live cover");
                    impact[owner as usize] += 1;
                }
            }
        }

        chosen.sort_unstable(); // row-major order within the step
        steps.push(chosen.into_iter().map(|i| pts[i as usize].0).collect());
    }

    Ok(ScaleSpacePath {
        direction: Direction::Sparsify,
        steps,
        ground: skel.points().collect(),
    })
}

#[derive(PartialEq, Eq)]
struct GainEntry {
    gain: usize,
    idx: u32,
}

impl Ord for GainEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Max gain first; among equal gains the smallest index wins.
        (self.gain, std::cmp::Reverse(self.idx)).cmp(&(other.gain, std::cmp::Reverse(other.idx)))
    }
}

impl PartialOrd for GainEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Densification counterpart of compression: starting from the empty set,
/// each step adds the point whose disk covers the most pixels not yet
/// covered (ties row-major). Exact lazy-greedy evaluation; marginal gains
/// only shrink, so stale heap keys are upper bounds.
pub fn densify_compression_order(skel: &Skeleton) -> Result<ScaleSpacePath, DomainError> {
    if skel.is_empty() {
        return Err(DomainError::EmptySkeleton);
    }
    let width = skel.width();
    let height = skel.height();
    let pts: Vec<(PixelPoint, u32)> = skel.iter().collect();
    let n = pts.len();
    let mut covered = vec![false; width as usize * height as usize];

    let fresh_gain = |covered: &[bool], i: usize| -> usize {
        let (p, d2) = pts[i];
        disk_pixel_indices(width, height, p, d2)
            .into_iter()
            .filter(|&pix| !covered[pix])
            .count()
    };

    let mut heap: BinaryHeap<GainEntry> = (0..n)
        .map(|i| GainEntry {
            gain: fresh_gain(&covered, i),
            idx: i as u32,
        })
        .collect();

    let mut steps = Vec::with_capacity(n);
    while let Some(top) = heap.pop() {
        let fresh = fresh_gain(&covered, top.idx as usize);
        let candidate = GainEntry {
            gain: fresh,
            idx: top.idx,
        };
        if heap.peek().is_none_or(|next| candidate >= *next) {
            let (p, d2) = pts[candidate.idx as usize];
            for pix in disk_pixel_indices(width, height, p, d2) {
                covered[pix] = true;
            }
            steps.push(vec![p]);
        } else {
            heap.push(candidate);
        }
    }

    Ok(ScaleSpacePath {
        direction: Direction::Densify,
        steps,
        ground: skel.points().collect(),
    })
}

fn image_from_set(
    width: u32,
    height: u32,
    set: &BTreeSet<PixelPoint>,
) -> Result<BinaryImage, DomainError> {
    let mut img = BinaryImage::new(width, height)?;
    for &p in set {
        img.set(p, true);
    }
    Ok(img)
}

/// Extended densification for stiffness enhancement: level 1 is the
/// skeleton of the shape; every further step one-pixel-dilates the current
/// structure inside the object and adds the skeleton of the still-uncovered
/// auxiliary shape (computed on the auxiliary shape's own distance field).
/// The path partitions the whole object, so the final level reconstructs the
/// input exactly.
pub fn stiffness_path(img: &BinaryImage) -> Result<ScaleSpacePath, DomainError> {
    if img.is_empty_object() {
        return Err(DomainError::EmptyObject);
    }
    let width = img.width();
    let height = img.height();
    let df = compute_edt(img);
    let skel0 = skeletonize(img, &df)?;

    let object: BTreeSet<PixelPoint> = img.object_points().collect();
    let mut gamma: BTreeSet<PixelPoint> = skel0.points().collect();
    let mut aux: BTreeSet<PixelPoint> = object.difference(&gamma).copied().collect();
    let mut steps: Vec<Vec<PixelPoint>> = vec![gamma.iter().copied().collect()];

    let cap = object.len();
    let mut iterations = 0usize;
    while gamma.len() < object.len() {
        iterations += 1;
        if iterations > cap {
            return Err(DomainError::Internal("stiffness path stopped making progress"));
        }

        // Strengthen by one-pixel dilation, clipped to the object.
        let mut dilated = gamma.clone();
        for &p in &gamma {
            for (dx, dy) in NEIGHBOURS_8 {
                let x = i64::from(p.x) + i64::from(dx);
                let y = i64::from(p.y) + i64::from(dy);
                if x < 0 || y < 0 || x >= i64::from(width) || y >= i64::from(height) {
                    continue;
                }
                let q = PixelPoint::new(x as u32, y as u32);
                if object.contains(&q) {
                    dilated.insert(q);
                }
            }
        }

        aux = aux.difference(&dilated).copied().collect();
        let aux_img = image_from_set(width, height, &aux)?;
        let aux_skel = skeletonize(&aux_img, &compute_edt(&aux_img))?;

        let mut next = dilated;
        next.extend(aux_skel.points());
        let step: Vec<PixelPoint> = next.difference(&gamma).copied().collect();
        if step.is_empty() {
            return Err(DomainError::Internal("stiffness path stopped making progress"));
        }
        gamma = next;
        steps.push(step);
    }

    Ok(ScaleSpacePath {
        direction: Direction::Densify,
        steps,
        ground: object,
    })
}
