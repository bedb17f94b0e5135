//! Interior-point discovery: analytic-center style ascent from the centroid
//! of per-polynomial maximizers, falling back to seeded random sampling of a
//! declared or probed bounding box. Candidate points are snapped to dyadic
//! rationals and certified by exact evaluation.

use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Rat, SparsePolynomial};

use super::ConvexBodySpec;

const SNAP_BITS: u32 = 28;

fn snap(x: f64) -> Rat {
    let scaled = (x * (1u64 << SNAP_BITS) as f64).round();
    if !scaled.is_finite() {
        return Rat::from_integer(0.into());
    }
    Rat::new(
        BigInt::from(scaled as i64),
        BigInt::from(1u64 << SNAP_BITS),
    )
}

fn default_box(n: usize) -> Vec<(Rat, Rat)> {
    vec![(Rat::from_integer((-2).into()), Rat::from_integer(2.into())); n]
}

/// Backtracking gradient ascent on a smooth objective.
fn ascend<F, G>(obj: F, grad: G, start: Vec<f64>, iters: usize) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> Vec<f64>,
{
    let mut x = start;
    let mut fx = obj(&x);
    for _ in 0..iters {
        let g = grad(&x);
        let norm: f64 = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !norm.is_finite() || norm < 1e-14 {
            break;
        }
        let mut step = 1.0 / norm.max(1.0);
        let mut improved = false;
        for _ in 0..40 {
            let cand: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a + step * b).collect();
            let fc = obj(&cand);
            if fc.is_finite() && fc > fx {
                x = cand;
                fx = fc;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    x
}

/// Uncertified f64 estimate of max over the box of the product of the body
/// polynomials, along with its maximizer (used for the fallback deformation
/// bound and as an ascent seed).
pub fn product_peak_estimate(body: &ConvexBodySpec) -> (Vec<f64>, f64) {
    let n = body.dimension();
    let bx = body
        .bounding_box
        .clone()
        .unwrap_or_else(|| default_box(n));
    let vs = body.var_set();
    let polys: Vec<SparsePolynomial> = body.polynomials.iter().map(|p| p.extend_vars(&vs)).collect();
    // map user order -> canonical order for evaluation
    let order: Vec<usize> = vs
        .names()
        .iter()
        .map(|nme| body.variables.iter().position(|v| v == nme).unwrap())
        .collect();
    let to_canon = |pt: &[f64]| -> Vec<f64> { order.iter().map(|&i| pt[i]).collect() };
    let log_obj = |pt: &[f64]| -> f64 {
        let c = to_canon(pt);
        let mut acc = 0.0;
        for p in &polys {
            let v = p.eval_f64(&c);
            if v <= 0.0 {
                return f64::NEG_INFINITY;
            }
            acc += v.ln();
        }
        acc
    };
    let log_grad = |pt: &[f64]| -> Vec<f64> {
        let c = to_canon(pt);
        let mut g = vec![0.0; n];
        for p in &polys {
            let v = p.eval_f64(&c);
            let pg = p.gradient_f64(&c);
            // gradient comes back in canonical order; scatter to user order
            for (ci, &oi) in order.iter().enumerate() {
                g[oi] += pg[ci] / v;
            }
        }
        g
    };
    // starts: per-polynomial maximizers, box center, and a deterministic
    // grid of box samples (the log objective needs a feasible start)
    let center: Vec<f64> = bx
        .iter()
        .map(|(lo, hi)| (rat_f64(lo) + rat_f64(hi)) / 2.0)
        .collect();
    let mut starts = vec![center.clone()];
    for p in &polys {
        let obj = |pt: &[f64]| p.eval_f64(&to_canon(pt));
        let grd = |pt: &[f64]| {
            let pg = p.gradient_f64(&to_canon(pt));
            let mut g = vec![0.0; n];
            for (ci, &oi) in order.iter().enumerate() {
                g[oi] = pg[ci];
            }
            g
        };
        starts.push(ascend(obj, grd, center.clone(), 200));
    }
    // centroid of the per-polynomial maximizers
    if starts.len() > 2 {
        let k = (starts.len() - 1) as f64;
        let centroid: Vec<f64> = (0..n)
            .map(|i| starts[1..].iter().map(|s| s[i]).sum::<f64>() / k)
            .collect();
        starts.push(centroid);
    }
    {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e3779b9);
        let mut feasible_samples = 0;
        for _ in 0..2000 {
            let pt: Vec<f64> = bx
                .iter()
                .map(|(lo, hi)| {
                    let u: f64 = rng.gen();
                    rat_f64(lo) + u * (rat_f64(hi) - rat_f64(lo))
                })
                .collect();
            if log_obj(&pt).is_finite() {
                starts.push(pt);
                feasible_samples += 1;
                if feasible_samples >= 8 {
                    break;
                }
            }
        }
    }
    let mut best: Option<(Vec<f64>, f64)> = None;
    for s in starts {
        let refined = ascend(log_obj, log_grad, s, 400);
        let v = log_obj(&refined);
        if v.is_finite() && best.as_ref().map(|(_, b)| v > *b).unwrap_or(true) {
            best = Some((refined, v));
        }
    }
    match best {
        Some((x, v)) => (x, v.exp()),
        None => (center, 0.0),
    }
}

fn rat_f64(r: &Rat) -> f64 {
    crate::algebra::SparsePolynomial::constant(
        crate::algebra::VarSet::new(vec![]),
        r.clone(),
    )
    .eval_f64(&[])
}

/// Certified interior point of the deformed body C_t (exact membership),
/// or `None` after the search budget is exhausted.
pub fn find_interior_point(body: &ConvexBodySpec, t: &Rat, seed: u64) -> Option<Vec<Rat>> {
    let n = body.dimension();
    if n == 0 {
        // zero-dimensional slice: membership is a constant check
        let vals = body.eval_all(&[]);
        let prod = super::rat_product(&vals);
        if vals.iter().all(|v| v.is_positive()) && prod > *t {
            return Some(vec![]);
        }
        return None;
    }
    // ascent candidate
    let (peak, _) = product_peak_estimate(body);
    let cand: Vec<Rat> = peak.iter().map(|&x| snap(x)).collect();
    if super::contains(body, t, &cand) {
        return Some(cand);
    }
    // seeded random sampling in the box
    let bx = body
        .bounding_box
        .clone()
        .unwrap_or_else(|| default_box(n));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..4000 {
        let pt: Vec<Rat> = bx
            .iter()
            .map(|(lo, hi)| {
                let u: f64 = rng.gen();
                let x = rat_f64(lo) + u * (rat_f64(hi) - rat_f64(lo));
                snap(x)
            })
            .collect();
        if super::contains(body, t, &pt) {
            return Some(pt);
        }
    }
    None
}

/// Certified point of the slice `axis = value` of C_t, or `None`.
pub fn slice_feasible_point(
    body: &ConvexBodySpec,
    t: &Rat,
    axis: &str,
    value: &Rat,
    seed: u64,
) -> Option<Vec<Rat>> {
    let restricted = body.restrict(axis, value);
    find_interior_point(&restricted, t, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, rat, VarSet};

    fn body(polys: &[&str], vars: &[&str]) -> ConvexBodySpec {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let vs = VarSet::new(names.clone());
        let ps = polys
            .iter()
            .map(|s| parse_polynomial(s, &vs).unwrap())
            .collect();
        ConvexBodySpec::new(ps, names, None)
    }

    #[test]
    fn disk_interior() {
        let disk = body(&["1 - x^2 - y^2"], &["x", "y"]);
        let pt = find_interior_point(&disk, &rat(1, 4), 7).unwrap();
        assert!(super::super::contains(&disk, &rat(1, 4), &pt));
    }

    #[test]
    fn empty_for_large_t() {
        let disk = body(&["1 - x^2 - y^2"], &["x", "y"]);
        // product max over the disk is 1 (at the origin): t = 2 is empty
        assert!(find_interior_point(&disk, &rat(2, 1), 7).is_none());
    }

    #[test]
    fn slice_feasibility() {
        let disk = body(&["1 - x^2 - y^2"], &["x", "y"]);
        assert!(slice_feasible_point(&disk, &rat(1, 4), "x", &rat(1, 2), 3).is_some());
        assert!(slice_feasible_point(&disk, &rat(1, 4), "x", &rat(9, 10), 3).is_none());
    }

    #[test]
    fn product_peak_triangle() {
        // peak of (1-x-y) y (x-y+1) over the triangle is 4/27 at (0, 1/3)
        let tri = body(&["1 - x - y", "y", "x - y + 1"], &["x", "y"]);
        let (_, peak) = product_peak_estimate(&tri);
        assert!((peak - 4.0 / 27.0).abs() < 1e-6, "peak = {peak}");
    }
}
