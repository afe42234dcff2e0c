// scratch: rot90/mirror equivariance of skeletonize + strategy paths on blobs
use std::collections::BTreeSet;
use skelscale::distfield::compute_edt;
use skelscale::medialaxis::skeletonize;
use skelscale::pixelgrid::{apply_transform, BinaryImage, GridTransform, PixelPoint};
use skelscale::scalespace::{branch_pruning_path, compression_path, RngState};
use skelscale::metrics::trace_path;

fn blob(seed: u64, w: u32, h: u32) -> BinaryImage {
    let mut rng = RngState::new(seed);
    let mut img = BinaryImage::new(w, h).unwrap();
    let ndisks = 2 + rng.next_below(4);
    for _ in 0..ndisks {
        let r = 2 + rng.next_below(5) as i64;
        let cx = (r + 1) as i64 + rng.next_below((w as i64 - 2 * (r + 1)).max(1) as u64) as i64;
        let cy = (r + 1) as i64 + rng.next_below((h as i64 - 2 * (r + 1)).max(1) as u64) as i64;
        for dy in -r..=r { for dx in -r..=r {
            if dx*dx + dy*dy <= r*r {
                let (x, y) = (cx+dx, cy+dy);
                if x >= 1 && y >= 1 && x < w as i64 -1 && y < h as i64 -1 {
                    img.set(PixelPoint::new(x as u32, y as u32), true);
                }
            }
        }}
    }
    img
}

fn main() {
    let ts = [
        GridTransform::Rotate90 { quarter_turns: 1 },
        GridTransform::Rotate90 { quarter_turns: 2 },
        GridTransform::Rotate90 { quarter_turns: 3 },
        GridTransform::MirrorHorizontal,
        GridTransform::MirrorVertical,
    ];
    let mut skel_mismatch = 0;
    let mut size_mismatch = 0;
    let mut area_curve_mismatch = 0;
    let n = 300u64;
    for seed in 0..n {
        let img = blob(seed, 30, 30);
        if img.is_empty_object() { continue; }
        let skel = skeletonize(&img, &compute_edt(&img)).unwrap();
        if skel.is_empty() { continue; }
        for t in ts {
            let timg = apply_transform(&img, t).unwrap();
            let tskel = skeletonize(&timg, &compute_edt(&timg)).unwrap();
            let mapped: BTreeSet<PixelPoint> = skel.points()
                .map(|p| t.map_point(p, img.width(), img.height()).unwrap()).collect();
            let got: BTreeSet<PixelPoint> = tskel.points().collect();
            if mapped != got {
                skel_mismatch += 1;
                if mapped.len() != got.len() { size_mismatch += 1; }
                continue;
            }
            // strategies: per-level area curves must match when skeletons map exactly
            for which in 0..2 {
                let (p1, p2) = if which == 0 {
                    (branch_pruning_path(&skel).unwrap(), branch_pruning_path(&tskel).unwrap())
                } else {
                    (compression_path(&skel, 1).unwrap(), compression_path(&tskel, 1).unwrap())
                };
                if p1.num_steps() != p2.num_steps() { area_curve_mismatch += 1; continue; }
                let r1 = trace_path(&p1, &skel, None).unwrap();
                let r2 = trace_path(&p2, &tskel, None).unwrap();
                if r1.iter().zip(&r2).any(|(a, b)| a.area != b.area) {
                    area_curve_mismatch += 1;
                }
            }
        }
    }
    println!("skeleton set mismatches: {skel_mismatch} (size mismatches {size_mismatch}) / {} pairs", n*5);
    println!("strategy area-curve mismatches: {area_curve_mismatch}");
}
