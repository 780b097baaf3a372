//! Basin-of-attraction rendering to binary PPM.
//!
//! Each pixel center is used as a seed. Converged pixels are colored by the
//! nearest known root (within [`ROOT_MATCH_TOL`]) and darkened linearly with
//! the iteration count; everything else gets [`FAILED_COLOR`].

use num_complex::Complex64;
use polydescent::{newton_classical, newton_descent, Polynomial, SolveStatus, SolverConfig};
use rayon::prelude::*;

use crate::Method;

pub const ROOT_MATCH_TOL: f64 = 1e-4;
pub const FAILED_COLOR: [u8; 3] = [255, 255, 255];

const PALETTE: [[u8; 3]; 8] = [
    [230, 57, 70],
    [42, 157, 143],
    [69, 123, 157],
    [244, 162, 97],
    [131, 56, 236],
    [255, 209, 102],
    [6, 214, 160],
    [239, 71, 111],
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub center: Complex64,
    pub width: f64,
    pub height: f64,
    pub px_w: usize,
    pub px_h: usize,
}

impl Region {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.width > 0.0
            && self.height > 0.0
            && self.width.is_finite()
            && self.height.is_finite())
        {
            return Err(format!(
                "region extents must be positive, got {} x {}",
                self.width, self.height
            ));
        }
        if self.px_w == 0 || self.px_h == 0 {
            return Err(format!(
                "pixel counts must be positive, got {} x {}",
                self.px_w, self.px_h
            ));
        }
        Ok(())
    }

    /// Center of pixel `(x, y)`; row 0 is the top edge.
    pub fn pixel_center(&self, x: usize, y: usize) -> Complex64 {
        let re = -0.5 * self.width + (x as f64 + 0.5) * self.width / self.px_w as f64;
        let im = 0.5 * self.height - (y as f64 + 0.5) * self.height / self.px_h as f64;
        self.center + Complex64::new(re, im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasinPixel {
    /// Index into the root list, `None` if the seed did not converge to a known root.
    pub root: Option<usize>,
    pub iterations: usize,
    pub status: SolveStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasinImage {
    pub width: usize,
    pub height: usize,
    /// Row-major, top row first.
    pub pixels: Vec<BasinPixel>,
    pub roots: Vec<Complex64>,
    /// Iteration count at which shading bottoms out.
    pub shade_cap: usize,
}

impl BasinImage {
    /// Pixel count per root index, then the count of failed pixels.
    pub fn class_counts(&self) -> (Vec<usize>, usize) {
        let mut counts = vec![0; self.roots.len()];
        let mut failed = 0;
        for px in &self.pixels {
            match px.root {
                Some(i) => counts[i] += 1,
                None => failed += 1,
            }
        }
        (counts, failed)
    }

    pub fn color(&self, px: &BasinPixel) -> [u8; 3] {
        let Some(i) = px.root else {
            return FAILED_COLOR;
        };
        let base = PALETTE[i % PALETTE.len()];
        let cap = self.shade_cap.max(1);
        let shade = 1.0 - 0.75 * px.iterations.min(cap) as f64 / cap as f64;
        base.map(|c| (c as f64 * shade).round() as u8)
    }

    /// Binary P6, 8 bits per channel.
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.reserve(3 * self.pixels.len());
        for px in &self.pixels {
            out.extend_from_slice(&self.color(px));
        }
        out
    }
}

fn nearest_root(roots: &[Complex64], z: Complex64) -> Option<usize> {
    roots
        .iter()
        .enumerate()
        .map(|(i, r)| (i, (r - z).norm()))
        .filter(|(_, d)| *d <= ROOT_MATCH_TOL)
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(i, _)| i)
}

pub fn render(
    p: &Polynomial,
    roots: &[Complex64],
    region: &Region,
    method: Method,
    cfg: &SolverConfig,
    shade_cap: usize,
) -> BasinImage {
    let rows: Vec<Vec<BasinPixel>> = (0..region.px_h)
        .into_par_iter()
        .map(|y| {
            (0..region.px_w)
                .map(|x| {
                    let seed = region.pixel_center(x, y);
                    let res = match method {
                        Method::Newton => newton_classical(p, seed, cfg),
                        Method::Descent => newton_descent(p, seed, cfg),
                    }
                    .expect("nonconstant polynomial");
                    let root = res.root.and_then(|z| nearest_root(roots, z));
                    BasinPixel {
                        root,
                        iterations: res.trace.iterations(),
                        status: res.status,
                    }
                })
                .collect()
        })
        .collect();
    BasinImage {
        width: region.px_w,
        height: region.px_h,
        pixels: rows.into_iter().flatten().collect(),
        roots: roots.to_vec(),
        shade_cap,
    }
}
