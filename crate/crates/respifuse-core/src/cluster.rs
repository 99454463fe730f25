//! Point-cloud generation and X-means clustering of radar images.
//!
//! Pixels are sampled with probability proportional to range-compensated
//! power `rho * |I|^2`, clustered by recursive BIC-scored 2-means splitting
//! (k-means++ initialization), and summarized by power-weighted
//! representative positions.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;

use crate::geom::Vec2;
use crate::imaging::{ImageGrid, RadarImage};
use crate::rng::{substream, unit_f64, Stage};
use crate::{flt, CoreError, Result};

/// Fraction of the point cloud below which a cluster is dropped as noise.
pub const DEFAULT_MIN_CLUSTER_FRAC: f64 = 0.01;

/// Power floor relative to the strongest pixel weight, dB.
pub const DEFAULT_NOISE_FLOOR_DB: f64 = -20.0;

/// Cluster label rendered as letters: A, B, ..., Z, AA, AB, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClusterLabel(pub usize);

impl fmt::Display for ClusterLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut n = self.0;
        let mut buf = [0u8; 8];
        let mut len = 0;
        loop {
            buf[len] = b'A' + (n % 26) as u8;
            len += 1;
            if n < 26 {
                break;
            }
            n = n / 26 - 1;
        }
        for i in (0..len).rev() {
            write!(f, "{}", buf[i] as char)?;
        }
        Ok(())
    }
}

/// Random points drawn from one radar image window.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub radar_id: usize,
    pub points: Vec<Vec2>,
    /// Source-pixel weight of each point (range-compensated power).
    pub weights: Vec<f64>,
    pub t_start: f64,
    pub t_end: f64,
}

/// One cluster of the point cloud.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetCluster {
    pub label: ClusterLabel,
    /// Indices into the source point cloud.
    pub members: Vec<usize>,
    /// Power-weighted centroid of the members.
    pub representative: Vec2,
    pub mean_power: f64,
}

/// Grid-aligned integer cluster labels; 0 marks pixels with no cluster.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterImage {
    pub nx: usize,
    pub ny: usize,
    /// Row-major labels, `1 + cluster index` or 0.
    pub labels: Vec<usize>,
}

/// Draw `n_points` points with density proportional to `rho * mean |I|^2`
/// over the window `[t_start, t_end]` (seconds), with uniform jitter inside
/// each chosen pixel. Pixels more than 20 dB below the strongest weight are
/// excluded.
pub fn sample_point_cloud(
    image: &RadarImage,
    t_start: f64,
    t_end: f64,
    n_points: usize,
    seed: u64,
) -> Result<PointCloud> {
    sample_point_cloud_with_floor(image, t_start, t_end, n_points, DEFAULT_NOISE_FLOOR_DB, seed)
}

/// [`sample_point_cloud`] with an explicit power floor in dB.
pub fn sample_point_cloud_with_floor(
    image: &RadarImage,
    t_start: f64,
    t_end: f64,
    n_points: usize,
    noise_floor_db: f64,
    seed: u64,
) -> Result<PointCloud> {
    if n_points == 0 {
        return Err(CoreError::InvalidParam("n_points must be > 0"));
    }
    let rel_lo = (t_start - image.t0) / image.slow_dt;
    let rel_hi = (t_end - image.t0) / image.slow_dt;
    let f_lo = flt::round(rel_lo) as i64;
    let f_hi = flt::round(rel_hi) as i64;
    if f_lo < 0 || f_hi <= f_lo || f_hi > image.n_frames as i64 {
        return Err(CoreError::WindowOutOfRange);
    }
    let power = image.mean_power(f_lo as usize, f_hi as usize)?;

    let nx = image.grid.nx();
    let mut weights = vec![0.0f64; power.len()];
    let mut max_w = 0.0f64;
    for (p, &pw) in power.iter().enumerate() {
        let center = image.grid.pixel_center(p % nx, p / nx);
        let w = center.norm() * pw;
        weights[p] = w;
        max_w = max_w.max(w);
    }
    if max_w <= 0.0 {
        return Err(CoreError::AllZeroImage);
    }
    let floor = max_w * flt::powf(10.0, noise_floor_db / 10.0);
    let mut cumulative = Vec::with_capacity(weights.len());
    let mut total = 0.0f64;
    for w in weights.iter_mut() {
        if *w < floor {
            *w = 0.0;
        }
        total += *w;
        cumulative.push(total);
    }

    let mut rng = substream(seed, Stage::PointCloud, image.radar_id as u64, 0);
    let mut points = Vec::with_capacity(n_points);
    let mut point_weights = Vec::with_capacity(n_points);
    for _ in 0..n_points {
        let u = unit_f64(&mut rng) * total;
        let pix = match cumulative.binary_search_by(|c| c.partial_cmp(&u).unwrap()) {
            Ok(i) => i + 1,
            Err(i) => i,
        }
        .min(cumulative.len() - 1);
        let center = image.grid.pixel_center(pix % nx, pix / nx);
        let jx = (unit_f64(&mut rng) - 0.5) * image.grid.pixel_size;
        let jy = (unit_f64(&mut rng) - 0.5) * image.grid.pixel_size;
        points.push(Vec2::new(center.x + jx, center.y + jy));
        point_weights.push(weights[pix]);
    }

    Ok(PointCloud {
        radar_id: image.radar_id,
        points,
        weights: point_weights,
        t_start,
        t_end,
    })
}

// ---------------------------------------------------------------------------
// X-means
// ---------------------------------------------------------------------------

/// X-means clustering: recursive 2-means splits accepted when the BIC
/// improves, followed by a global Lloyd refinement. Clusters holding less
/// than `min_cluster_frac` of the points are discarded as noise.
///
/// The partition is invariant to the input point order: points are processed
/// in a canonical (lexicographic) order internally.
pub fn xmeans(
    cloud: &PointCloud,
    k_max: usize,
    min_cluster_frac: f64,
    seed: u64,
) -> Result<Vec<TargetCluster>> {
    if cloud.points.is_empty() {
        return Err(CoreError::InvalidParam("point cloud is empty"));
    }
    if k_max < 1 {
        return Err(CoreError::InvalidParam("k_max must be >= 1"));
    }
    let n = cloud.points.len();

    // Canonical processing order makes the result independent of the input
    // permutation (only labels can change, and those are re-derived below).
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let pa = cloud.points[a];
        let pb = cloud.points[b];
        pa.x.partial_cmp(&pb.x)
            .unwrap()
            .then(pa.y.partial_cmp(&pb.y).unwrap())
    });
    let points: Vec<Vec2> = order.iter().map(|&i| cloud.points[i]).collect();

    let mut rng = substream(seed, Stage::Clustering, cloud.radar_id as u64, 0);

    // Recursive splitting.
    let mut final_sets: Vec<Vec<usize>> = Vec::new();
    let mut queue: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut n_clusters = 1usize;
    while let Some(set) = queue.pop() {
        let can_split = set.len() >= 4 && n_clusters < k_max;
        if !can_split {
            final_sets.push(set);
            continue;
        }
        match try_split(&points, &set, &mut rng) {
            Some((left, right)) => {
                n_clusters += 1;
                queue.push(right);
                queue.push(left);
            }
            None => final_sets.push(set),
        }
    }

    // Global refinement with the discovered centroids.
    let mut centroids: Vec<Vec2> = final_sets.iter().map(|s| centroid(&points, s)).collect();
    let all: Vec<usize> = (0..n).collect();
    let assignment = lloyd(&points, &all, &mut centroids, 100);

    // Collect, drop tiny clusters, and order labels by position.
    let min_members = ((n as f64) * min_cluster_frac) as usize;
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); centroids.len()];
    for (local, &c) in assignment.iter().enumerate() {
        groups[c].push(local);
    }
    let mut clusters: Vec<(Vec2, Vec<usize>)> = groups
        .into_iter()
        .filter(|g| g.len() > min_members && !g.is_empty())
        .map(|g| {
            // Map back to the caller's point indices.
            let members: Vec<usize> = g.iter().map(|&local| order[local]).collect();
            (weighted_centroid(cloud, &members), members)
        })
        .collect();
    clusters.sort_by(|a, b| {
        a.0.x
            .partial_cmp(&b.0.x)
            .unwrap()
            .then(a.0.y.partial_cmp(&b.0.y).unwrap())
    });

    Ok(clusters
        .into_iter()
        .enumerate()
        .map(|(i, (rep, mut members))| {
            members.sort_unstable();
            let mean_power = members.iter().map(|&m| cloud.weights[m]).sum::<f64>()
                / members.len() as f64;
            TargetCluster {
                label: ClusterLabel(i),
                members,
                representative: rep,
                mean_power,
            }
        })
        .collect())
}

fn centroid(points: &[Vec2], set: &[usize]) -> Vec2 {
    let mut acc = Vec2::ZERO;
    for &i in set {
        acc = acc + points[i];
    }
    acc * (1.0 / set.len() as f64)
}

fn weighted_centroid(cloud: &PointCloud, members: &[usize]) -> Vec2 {
    let mut acc = Vec2::ZERO;
    let mut wsum = 0.0;
    for &i in members {
        let w = cloud.weights[i].max(0.0);
        acc = acc + cloud.points[i] * w;
        wsum += w;
    }
    if wsum > 0.0 {
        acc * (1.0 / wsum)
    } else {
        centroid(&cloud.points, members)
    }
}

/// k-means++ seeding for `k` centers over `set`.
fn kmeanspp(points: &[Vec2], set: &[usize], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec2> {
    let first = set[(unit_f64(rng) * set.len() as f64) as usize % set.len()];
    let mut centers = vec![points[first]];
    let mut d2: Vec<f64> = set
        .iter()
        .map(|&i| points[i].distance(points[first]))
        .map(|d| d * d)
        .collect();
    while centers.len() < k {
        let total: f64 = d2.iter().sum();
        let next = if total <= 0.0 {
            set[(unit_f64(rng) * set.len() as f64) as usize % set.len()]
        } else {
            let mut u = unit_f64(rng) * total;
            let mut chosen = set[set.len() - 1];
            for (j, &i) in set.iter().enumerate() {
                u -= d2[j];
                if u <= 0.0 {
                    chosen = i;
                    break;
                }
            }
            chosen
        };
        centers.push(points[next]);
        for (j, &i) in set.iter().enumerate() {
            let d = points[i].distance(points[next]);
            d2[j] = d2[j].min(d * d);
        }
    }
    centers
}

/// Lloyd iterations over `set`; returns the assignment (centroid index per
/// set entry). Empty centroids are removed.
fn lloyd(
    points: &[Vec2],
    set: &[usize],
    centroids: &mut Vec<Vec2>,
    max_iter: usize,
) -> Vec<usize> {
    let mut assignment = vec![0usize; set.len()];
    for _ in 0..max_iter {
        // Assign.
        for (j, &i) in set.iter().enumerate() {
            let mut best = 0;
            let mut best_d = f64::MAX;
            for (c, center) in centroids.iter().enumerate() {
                let d = points[i].distance(*center);
                if d < best_d {
                    best_d = d;
                    best = c;
                }
            }
            assignment[j] = best;
        }
        // Update.
        let mut sums = vec![Vec2::ZERO; centroids.len()];
        let mut counts = vec![0usize; centroids.len()];
        for (j, &i) in set.iter().enumerate() {
            sums[assignment[j]] = sums[assignment[j]] + points[i];
            counts[assignment[j]] += 1;
        }
        let mut moved = 0.0f64;
        let mut keep: Vec<Vec2> = Vec::with_capacity(centroids.len());
        let mut remap = vec![usize::MAX; centroids.len()];
        for (c, count) in counts.iter().enumerate() {
            if *count == 0 {
                continue;
            }
            let new = sums[c] * (1.0 / *count as f64);
            moved = moved.max(new.distance(centroids[c]));
            remap[c] = keep.len();
            keep.push(new);
        }
        for a in assignment.iter_mut() {
            *a = remap[*a];
        }
        *centroids = keep;
        if moved < 1e-9 {
            break;
        }
    }
    assignment
}

/// Spherical-Gaussian BIC of a clustering over a point subset.
fn bic(points: &[Vec2], sets: &[&[usize]]) -> f64 {
    let d = 2.0;
    let n: usize = sets.iter().map(|s| s.len()).sum();
    let k = sets.len();
    if n <= k {
        return f64::MIN;
    }
    let mut rss = 0.0;
    for s in sets {
        let c = centroid(points, s);
        for &i in *s {
            rss += points[i].distance(c).powi(2);
        }
    }
    let variance = rss / (d * (n - k) as f64);
    if variance <= 1e-18 {
        // Degenerate (coincident points); more clusters cannot help.
        return f64::MIN;
    }
    let nf = n as f64;
    let mut loglik = 0.0;
    for s in sets {
        let nj = s.len() as f64;
        loglik += nj * flt::ln(nj / nf);
    }
    loglik += -(nf * d / 2.0) * flt::ln(2.0 * core::f64::consts::PI * variance)
        - d * (n - k) as f64 / 2.0;
    let params = k as f64 * (d + 1.0);
    loglik - params / 2.0 * flt::ln(nf)
}

/// Try one BIC-scored 2-means split of `set`.
fn try_split(
    points: &[Vec2],
    set: &[usize],
    rng: &mut ChaCha8Rng,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut centroids = kmeanspp(points, set, 2, rng);
    let assignment = lloyd(points, set, &mut centroids, 50);
    if centroids.len() < 2 {
        return None;
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (j, &i) in set.iter().enumerate() {
        if assignment[j] == 0 {
            left.push(i);
        } else {
            right.push(i);
        }
    }
    if left.is_empty() || right.is_empty() {
        return None;
    }
    let parent = bic(points, &[set]);
    let child = bic(points, &[&left, &right]);
    if child > parent {
        Some((left, right))
    } else {
        None
    }
}

/// Paint each retained point's pixel with its cluster label (majority vote
/// per pixel); unclaimed pixels stay 0.
pub fn cluster_image(
    clusters: &[TargetCluster],
    cloud: &PointCloud,
    grid: &ImageGrid,
) -> ClusterImage {
    let nx = grid.nx();
    let ny = grid.ny();
    let mut counts = vec![0usize; nx * ny * (clusters.len() + 1)];
    for (ci, cluster) in clusters.iter().enumerate() {
        for &m in &cluster.members {
            if let Some((ix, iy)) = grid.pixel_containing(cloud.points[m]) {
                counts[(iy * nx + ix) * (clusters.len() + 1) + ci + 1] += 1;
            }
        }
    }
    let stride = clusters.len() + 1;
    let labels = (0..nx * ny)
        .map(|p| {
            let row = &counts[p * stride..(p + 1) * stride];
            let mut best = 0usize;
            let mut best_count = 0usize;
            for (label, &c) in row.iter().enumerate().skip(1) {
                if c > best_count {
                    best_count = c;
                    best = label;
                }
            }
            best
        })
        .collect();
    ClusterImage { nx, ny, labels }
}
