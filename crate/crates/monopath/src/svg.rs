//! SVG rendering of a three-dimensional arrangement sliced by the plane
//! `x_1 + x_2 + x_3 = 0`.
//!
//! Slice coordinates use the fixed orthonormal basis `u_1 = (1, −1, 0)/√2`,
//! `u_2 = (1, 1, −2)/√6`, so the hyperplane `x_i − x_j = s` becomes the line
//! `A α + B β = s` with `A = (e_i − e_j)·u_1`, `B = (e_i − e_j)·u_2`.  This is
//! the one place in the crate where floating point appears; coordinates are
//! rounded to six decimals.

use crate::arrangements::DeformedArrangement;
use crate::{Error, Result};

const PAIR_COLORS: [(usize, usize, &str); 3] =
    [(1, 2, "#d62728"), (1, 3, "#2ca02c"), (2, 3, "#1f77b4")];

/// Renders each hyperplane of a `d = 3` arrangement as one SVG line element,
/// clipped to the square window of the given half-width.
pub fn render_slice(
    arrangement: &DeformedArrangement,
    half_width: f64,
    size: u32,
) -> Result<String> {
    if arrangement.d() != 3 {
        return Err(Error::UnsupportedDimension {
            required: 3,
            got: arrangement.d(),
        });
    }
    assert!(half_width > 0.0 && size > 0);

    let u1 = [1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt(), 0.0];
    let u2 = [1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt(), -2.0 / 6f64.sqrt()];

    let mut body = String::new();
    body.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{size}\" height=\"{size}\" fill=\"white\" stroke=\"#cccccc\"/>\n"
    ));
    for h in arrangement.hyperplanes() {
        let a = u1[h.i - 1] - u1[h.j - 1];
        let b = u2[h.i - 1] - u2[h.j - 1];
        let Some(((x1, y1), (x2, y2))) = clip_line(a, b, h.s as f64, half_width) else {
            continue;
        };
        let color = PAIR_COLORS
            .iter()
            .find(|&&(i, j, _)| i == h.i && j == h.j)
            .map(|&(_, _, c)| c)
            .unwrap_or("#333333");
        let map = |alpha: f64, beta: f64| -> (f64, f64) {
            let scale = f64::from(size) / (2.0 * half_width);
            ((alpha + half_width) * scale, (half_width - beta) * scale)
        };
        let (px1, py1) = map(x1, y1);
        let (px2, py2) = map(x2, y2);
        body.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"1.5\"/>\n",
            round6(px1),
            round6(py1),
            round6(px2),
            round6(py2),
            color
        ));
    }

    Ok(format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" \
         viewBox=\"0 0 {size} {size}\">\n{body}</svg>\n"
    ))
}

/// Intersects `a·α + b·β = s` with the square `[−w, w]^2`; returns the two
/// extreme intersection points, or nothing when the line misses the window.
fn clip_line(a: f64, b: f64, s: f64, w: f64) -> Option<((f64, f64), (f64, f64))> {
    let mut hits: Vec<(f64, f64)> = Vec::new();
    let eps = 1e-9;
    let mut push = |alpha: f64, beta: f64| {
        if alpha.abs() <= w + eps && beta.abs() <= w + eps {
            let point = (alpha.clamp(-w, w), beta.clamp(-w, w));
            if !hits
                .iter()
                .any(|&(x, y)| (x - point.0).abs() < eps && (y - point.1).abs() < eps)
            {
                hits.push(point);
            }
        }
    };
    if a.abs() > eps {
        for beta in [-w, w] {
            push((s - b * beta) / a, beta);
        }
    }
    if b.abs() > eps {
        for alpha in [-w, w] {
            push(alpha, (s - a * alpha) / b);
        }
    }
    if hits.len() < 2 {
        return None;
    }
    // the two most distant intersections span the clipped segment
    let mut best = (hits[0], hits[1]);
    let mut best_dist = -1.0;
    for p in &hits {
        for q in &hits {
            let dist = (p.0 - q.0).powi(2) + (p.1 - q.1).powi(2);
            if dist > best_dist {
                best_dist = dist;
                best = (*p, *q);
            }
        }
    }
    if best_dist < eps {
        return None;
    }
    Some(best)
}

fn round6(value: f64) -> f64 {
    (value * 1e6).round() / 1e6
}
