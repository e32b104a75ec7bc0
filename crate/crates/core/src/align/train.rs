use std::collections::BTreeSet;

use log::{debug, warn};
use ndarray::{Array2, ArrayView1, ArrayView2};
use serde::{Deserialize, Serialize};

use crate::align::LinearMap;
use crate::embed::EmbeddingSpace;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Optimizer settings for [`train_map`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlignConfig {
    pub learning_rate: f64,
    pub max_iterations: usize,
    /// Training stops once `(loss_prev - loss) / loss_prev` drops below this.
    pub convergence_tol: f64,
    pub seed: u64,
}

impl Default for AlignConfig {
    fn default() -> Self {
        AlignConfig {
            learning_rate: 0.01,
            max_iterations: 50_000,
            convergence_tol: 1e-9,
            seed: 0,
        }
    }
}

impl AlignConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::InvalidParam("learning_rate must be positive".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidParam("max_iterations must be at least 1".into()));
        }
        if !(self.convergence_tol >= 0.0) {
            return Err(Error::InvalidParam("convergence_tol must be non-negative".into()));
        }
        Ok(())
    }
}

const CHECKPOINT_EVERY: usize = 100;
/// Consecutive step-size halvings after which the step is considered
/// numerically zero.
const MAX_HALVINGS: usize = 60;

/// Anchor rows present in both spaces, deduplicated and in sorted word order.
fn anchor_rows<T: Real>(src: &EmbeddingSpace<T>, dst: &EmbeddingSpace<T>, anchors: &[String], strict: bool) -> Result<(Vec<String>, Array2<T>, Array2<T>)> {
    let unique: BTreeSet<&str> = anchors.iter().map(String::as_str).collect();
    let mut usable = Vec::with_capacity(unique.len());
    let mut dropped = 0usize;
    for w in unique {
        if src.contains(w) && dst.contains(w) {
            usable.push(w.to_string());
        } else if strict {
            return Err(Error::UnknownWord(w.to_string()));
        } else {
            dropped += 1;
        }
    }
    if dropped > 0 {
        warn!("{dropped} anchor(s) missing from one of the vocabularies were dropped");
    }
    let xs = Array2::from_shape_fn((usable.len(), src.dim()), |(i, j)| src.vector(&usable[i]).unwrap()[j]);
    let ys = Array2::from_shape_fn((usable.len(), dst.dim()), |(i, j)| dst.vector(&usable[i]).unwrap()[j]);
    Ok((usable, xs, ys))
}

/// Mean squared residual `mean ||W x - y||^2` over anchor rows, computed
/// directly from the residuals.
fn residual_loss<T: Real>(w: ArrayView2<'_, T>, xs: &Array2<T>, ys: &Array2<T>) -> T {
    let n = T::of_usize(xs.nrows());
    let residual = xs.dot(&w.t()) - ys;
    residual.iter().map(|r| *r * *r).sum::<T>() / n
}

/// Gradient of the mean loss, `(2/n) sum (W x - y) x^T`.
fn residual_gradient<T: Real>(w: ArrayView2<'_, T>, xs: &Array2<T>, ys: &Array2<T>) -> Array2<T> {
    let n = T::of_usize(xs.nrows());
    let residual = xs.dot(&w.t()) - ys;
    residual.t().dot(xs) * (T::of(2.0) / n)
}

/// Mean squared mapping error of `map` over `anchors`.
pub fn map_loss<T: Real>(map: &LinearMap<T>, src: &EmbeddingSpace<T>, dst: &EmbeddingSpace<T>, anchors: &[String]) -> Result<T> {
    check_dims(map.weights.view(), src, dst)?;
    if anchors.is_empty() {
        return Err(Error::TooFewAnchors(0));
    }
    let mut total = T::zero();
    for a in anchors {
        let x = src.vector(a)?;
        let y = dst.vector(a)?;
        let mapped = map.weights.dot(&ArrayView1::from(x));
        total += mapped.iter().zip(y).map(|(m, t)| (*m - *t) * (*m - *t)).sum::<T>();
    }
    Ok(total / T::of_usize(anchors.len()))
}

/// Analytic gradient of [`map_loss`] with respect to `W`.
pub fn loss_gradient<T: Real>(src: &EmbeddingSpace<T>, dst: &EmbeddingSpace<T>, anchors: &[String], w: &Array2<T>) -> Result<Array2<T>> {
    check_dims(w.view(), src, dst)?;
    let (_, xs, ys) = anchor_rows(src, dst, anchors, true)?;
    if xs.nrows() == 0 {
        return Err(Error::TooFewAnchors(0));
    }
    Ok(residual_gradient(w.view(), &xs, &ys))
}

/// Largest entrywise relative error between the analytic gradient and
/// central finite differences of the loss at `w`.
///
/// Relative errors are taken against `max(|analytic|, |numeric|)`, floored at
/// `1e-3` of the largest gradient entry so entries that are zero up to
/// rounding do not dominate.
pub fn gradient_check<T: Real>(src: &EmbeddingSpace<T>, dst: &EmbeddingSpace<T>, anchors: &[String], w: &Array2<T>, epsilon: T) -> Result<T> {
    if !(epsilon > T::zero() && epsilon <= T::of(1e-2)) {
        return Err(Error::InvalidParam("epsilon must lie in (0, 1e-2]".into()));
    }
    let analytic = loss_gradient(src, dst, anchors, w)?;
    let map = |w: Array2<T>| LinearMap::from_matrix("", "", w);
    let mut numeric = Array2::zeros(w.raw_dim());
    for idx in ndarray::indices(w.raw_dim()) {
        let mut plus = w.clone();
        plus[idx] += epsilon;
        let mut minus = w.clone();
        minus[idx] -= epsilon;
        let lp = map_loss(&map(plus)?, src, dst, anchors)?;
        let lm = map_loss(&map(minus)?, src, dst, anchors)?;
        numeric[idx] = (lp - lm) / (T::of(2.0) * epsilon);
    }
    let scale = analytic.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let floor = (scale * T::of(1e-3)).max(T::min_positive_value());
    Ok(analytic
        .iter()
        .zip(numeric.iter())
        .map(|(a, f)| (*a - *f).abs() / a.abs().max(f.abs()).max(floor))
        .fold(T::zero(), |m, e| m.max(e)))
}

fn check_dims<T: Real>(w: ArrayView2<'_, T>, src: &EmbeddingSpace<T>, dst: &EmbeddingSpace<T>) -> Result<()> {
    if w.ncols() != src.dim() {
        return Err(Error::DimensionMismatch { expected: src.dim(), got: w.ncols() });
    }
    if w.nrows() != dst.dim() {
        return Err(Error::DimensionMismatch { expected: dst.dim(), got: w.nrows() });
    }
    Ok(())
}

/// Learns `W` minimizing the mean squared residual over the anchors with
/// full-batch gradient descent.
///
/// The loop works on the anchor Gram matrices, so one step costs
/// `O(dst_dim * src_dim^2)` regardless of the anchor count. The loss is tracked
/// through the exact quadratic change of each step, which stays accurate when
/// the loss is many orders of magnitude below `mean ||y||^2`. Any step that
/// would raise the loss is retried at half the step size.
pub fn train_map<T: Real>(src: &EmbeddingSpace<T>, dst: &EmbeddingSpace<T>, anchors: &[String], cfg: &AlignConfig) -> Result<LinearMap<T>> {
    cfg.validate()?;
    let (usable, xs, ys) = anchor_rows(src, dst, anchors, false)?;
    if usable.len() < 2 {
        return Err(Error::TooFewAnchors(usable.len()));
    }
    if usable.len() < src.dim() {
        warn!(
            "only {} anchors for a {}-dimensional source space; the map is underdetermined",
            usable.len(),
            src.dim()
        );
    }
    let n = T::of_usize(usable.len());
    let two_over_n = T::of(2.0) / n;

    // Gram matrices: S_xx = X^T X (src x src), S_yx = Y^T X (dst x src).
    let sxx = xs.t().dot(&xs);
    let syx = ys.t().dot(&xs);

    let mut w: Array2<T> = if src.dim() == dst.dim() {
        Array2::eye(src.dim())
    } else {
        Array2::zeros((dst.dim(), src.dim()))
    };
    let mut loss = residual_loss(w.view(), &xs, &ys);
    if !loss.is_finite() {
        return Err(Error::Diverged(0));
    }
    let mut lr = T::of(cfg.learning_rate);
    let tol = T::of(cfg.convergence_tol);
    let mut trace = vec![(0, loss)];
    let mut iterations = 0;

    while iterations < cfg.max_iterations && loss > T::zero() {
        let grad = (w.dot(&sxx) - &syx) * two_over_n;
        if grad.iter().any(|g| !g.is_finite()) {
            return Err(Error::Diverged(iterations + 1));
        }
        let grad_sq: T = grad.iter().map(|g| *g * *g).sum();
        if grad_sq == T::zero() {
            break;
        }
        // Curvature along the gradient: <G S_xx, G> / n.
        let curvature: T = grad.dot(&sxx).iter().zip(grad.iter()).map(|(a, b)| *a * *b).sum::<T>() / n;

        let mut halvings = 0;
        let delta = loop {
            let delta = -lr * grad_sq + lr * lr * curvature;
            if delta.is_finite() && delta <= T::zero() {
                break Some(delta);
            }
            if !delta.is_finite() && halvings == MAX_HALVINGS {
                return Err(Error::Diverged(iterations + 1));
            }
            if halvings == MAX_HALVINGS {
                break None;
            }
            lr /= T::of(2.0);
            halvings += 1;
        };
        if halvings > 0 {
            debug!("learning rate halved {halvings}x to {lr} at iteration {}", iterations + 1);
        }
        let Some(delta) = delta else { break };

        w.scaled_add(-lr, &grad);
        iterations += 1;
        let prev = loss;
        loss = (loss + delta).max(T::zero());
        if iterations % CHECKPOINT_EVERY == 0 {
            trace.push((iterations, loss));
        }
        if prev > T::zero() && (prev - loss) / prev < tol {
            break;
        }
    }
    if w.iter().any(|v| !v.is_finite()) {
        return Err(Error::Diverged(iterations));
    }

    let final_loss = residual_loss(w.view(), &xs, &ys);
    if trace.last().map(|(it, _)| *it) != Some(iterations) {
        trace.push((iterations, loss));
    }
    debug!("trained {}x{} map on {} anchors: {iterations} iterations, loss {final_loss:e}", w.nrows(), w.ncols(), usable.len());

    Ok(LinearMap {
        source_id: src.id().to_string(),
        target_id: dst.id().to_string(),
        weights: w,
        anchors_used: usable.len(),
        final_loss,
        iterations_run: iterations,
        loss_trace: trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::generate_synthetic_space;
    use ndarray::array;

    fn words(s: &EmbeddingSpace<f64>) -> Vec<String> {
        s.words().to_vec()
    }

    fn space_from(rows: Array2<f64>) -> EmbeddingSpace<f64> {
        let names = (0..rows.nrows()).map(|i| format!("a{i}")).collect();
        EmbeddingSpace::new("s", names, rows).unwrap()
    }

    #[test]
    fn identical_spaces_give_identity() {
        let s = generate_synthetic_space::<f64>(30, 5, 1);
        let map = train_map(&s, &s, &words(&s), &AlignConfig::default()).unwrap();
        assert!(map.final_loss < 1e-8);
        for ((i, j), v) in map.weights.indexed_iter() {
            let target = if i == j { 1.0 } else { 0.0 };
            assert!((v - target).abs() < 1e-3);
        }
    }

    #[test]
    fn absent_anchors_error() {
        let s = generate_synthetic_space::<f64>(5, 3, 1);
        let err = train_map(&s, &s, &["zzz".to_string()], &AlignConfig::default()).unwrap_err();
        assert!(err.to_string().contains("fewer than 2 usable anchors"));
    }

    #[test]
    fn loss_examples() {
        let s = generate_synthetic_space::<f64>(6, 3, 4);
        let anchors = words(&s);
        let id = LinearMap::identity(3);
        assert_eq!(map_loss(&id, &s, &s, &anchors).unwrap(), 0.0);

        let zero = LinearMap::from_matrix("", "", Array2::<f64>::zeros((3, 3))).unwrap();
        // unit rows: mean ||y||^2 = 1
        assert!((map_loss(&zero, &s, &s, &anchors).unwrap() - 1.0).abs() < 1e-12);
        assert!(map_loss(&id, &s, &s, &["nope".to_string()]).is_err());
    }

    #[test]
    fn hand_computed_loss() {
        // three anchors, 2-d, W = [[1, 2], [0, -1]]
        let src = space_from(array![[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]);
        let dst = space_from(array![[1.0, 1.0], [2.0, 0.0], [0.0, 3.0]]);
        let w = LinearMap::from_matrix("", "", array![[1.0, 2.0], [0.0, -1.0]]).unwrap();
        // W x: (1,0) (2,-1) (3,-1); residuals (0,-1) (0,-1) (3,-4); squares 1 + 1 + 25
        let anchors: Vec<String> = (0..3).map(|i| format!("a{i}")).collect();
        assert!((map_loss(&w, &src, &dst, &anchors).unwrap() - 27.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn scalar_gradient() {
        // loss = (w x - y)^2, gradient 2 x (w x - y)
        let src = space_from(array![[1.5]]);
        let dst = space_from(array![[-0.5]]);
        let anchors = vec!["a0".to_string()];
        let w = array![[0.8]];
        let g = loss_gradient(&src, &dst, &anchors, &w).unwrap();
        assert!((g[[0, 0]] - 2.0 * 1.5 * (0.8 * 1.5 + 0.5)).abs() < 1e-12);
        let fd = {
            let e = 1e-5;
            let l = |v: f64| (v * 1.5 + 0.5).powi(2);
            (l(0.8 + e) - l(0.8 - e)) / (2.0 * e)
        };
        assert!((g[[0, 0]] - fd).abs() < 1e-8);
        assert!(gradient_check(&src, &dst, &anchors, &w, 1e-5).unwrap() < 1e-8);
    }

    #[test]
    fn gradient_vanishes_at_normal_equations_optimum() {
        // Four anchors in 2-d; the optimum is W* = S_yx S_xx^{-1}.
        let src = space_from(array![[1.0, 0.0], [0.0, 2.0], [1.0, 1.0], [-1.0, 0.5]]);
        let dst = space_from(array![[0.5, 1.0], [1.0, -1.0], [2.0, 0.0], [0.0, 0.3]]);
        let anchors: Vec<String> = (0..4).map(|i| format!("a{i}")).collect();
        let x = src.vectors();
        let y = dst.vectors();
        let sxx = x.t().dot(x);
        let syx = y.t().dot(x);
        let det = sxx[[0, 0]] * sxx[[1, 1]] - sxx[[0, 1]] * sxx[[1, 0]];
        let inv = array![[sxx[[1, 1]], -sxx[[0, 1]]], [-sxx[[1, 0]], sxx[[0, 0]]]] / det;
        let w_star = syx.dot(&inv);
        let g = loss_gradient(&src, &dst, &anchors, &w_star).unwrap();
        assert!(g.iter().map(|v| v * v).sum::<f64>().sqrt() < 1e-6);

        // and gradient descent lands there too
        let cfg = AlignConfig { learning_rate: 0.1, ..AlignConfig::default() };
        let map = train_map(&src, &dst, &anchors, &cfg).unwrap();
        for (a, b) in map.weights.iter().zip(w_star.iter()) {
            assert!((a - b).abs() < 1e-4, "{a} vs {b}");
        }
    }

    #[test]
    fn random_gradient_check() {
        let src = generate_synthetic_space::<f64>(10, 4, 21);
        let dst = generate_synthetic_space::<f64>(10, 4, 22);
        let anchors = words(&src);
        let w = generate_synthetic_space::<f64>(4, 4, 23).vectors().clone();
        assert!(gradient_check(&src, &dst, &anchors, &w, 1e-5).unwrap() < 1e-4);
        assert!(gradient_check(&src, &dst, &anchors, &w, 0.0).is_err());
    }

    #[test]
    fn trace_is_monotone_even_with_huge_learning_rate() {
        let src = generate_synthetic_space::<f64>(40, 6, 2);
        let dst = generate_synthetic_space::<f64>(40, 6, 3);
        let cfg = AlignConfig { learning_rate: 50.0, max_iterations: 2_000, ..AlignConfig::default() };
        let map = train_map(&src, &dst, &words(&src), &cfg).unwrap();
        assert!(map.loss_trace.windows(2).all(|p| p[1].1 <= p[0].1));
        assert!(map.final_loss.is_finite());
        assert_eq!(map.loss_trace.last().unwrap().0, map.iterations_run);
    }

    #[test]
    fn rectangular_map_starts_from_zero() {
        let src = generate_synthetic_space::<f64>(20, 3, 2);
        let dst = generate_synthetic_space::<f64>(20, 5, 3);
        let map = train_map(&src, &dst, &words(&src), &AlignConfig { max_iterations: 10, ..Default::default() }).unwrap();
        assert_eq!((map.target_dim(), map.source_dim()), (5, 3));
    }

    #[test]
    fn config_validation() {
        let s = generate_synthetic_space::<f64>(5, 3, 1);
        for cfg in [
            AlignConfig { learning_rate: 0.0, ..Default::default() },
            AlignConfig { max_iterations: 0, ..Default::default() },
        ] {
            assert!(matches!(train_map(&s, &s, &words(&s), &cfg), Err(Error::InvalidParam(_))));
        }
    }
}
