//! Dense bias-free ReLU networks: representation, forward evaluation,
//! masked evaluation, and spectral-norm utilities.
//!
//! Everything here is 64-bit and immutable after construction. Networks
//! apply ReLU after every layer except the last; with no biases they are
//! positively homogeneous, which is what lets sup-error estimation sample
//! the unit sphere instead of the whole ball.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::dist::{standard_normal, Distribution};
use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

/// Default power-iteration settings for spectral norms.
pub const SPECTRAL_TOL: f64 = 1e-9;
pub const SPECTRAL_MAX_ITERS: usize = 1000;

/// Slack accepted when validating "norm at most one" style constraints.
pub const UNIT_SLACK: f64 = 1e-12;

/// Row-major dense matrix of finite 64-bit weights.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDimensions { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(Error::DataLength {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(Error::NonFinite {
                context: "matrix entries",
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![0.0; rows * cols])
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim, dim)?;
        for i in 0..dim {
            m.entries[i * dim + i] = 1.0;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        debug_assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matvec input",
                expected: self.cols,
                got: x.len(),
            });
        }
        Ok(self.matvec_unchecked(x))
    }

    fn matvec_unchecked(&self, x: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut acc = 0.0;
            for (w, xi) in self.row(r).iter().zip(x) {
                acc += w * xi;
            }
            out.push(acc);
        }
        out
    }

    fn transposed_matvec(&self, y: &[f64]) -> Vec<f64> {
        debug_assert_eq!(y.len(), self.rows);
        let mut out = vec![0.0; self.cols];
        for r in 0..self.rows {
            let yr = y[r];
            for (o, w) in out.iter_mut().zip(self.row(r)) {
                *o += w * yr;
            }
        }
        out
    }

    /// Entrywise division by a positive scalar.
    pub fn divided_by(&self, scale: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e / scale).collect(),
        }
    }
}

/// Binary mask with the same layout as a `DenseMatrix`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMask {
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

impl DenseMask {
    pub fn new(rows: usize, cols: usize, entries: Vec<u8>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDimensions { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(Error::DataLength {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if entries.iter().any(|&e| e > 1) {
            return Err(Error::Domain {
                context: "mask entries must be 0 or 1",
                value: f64::from(*entries.iter().find(|&&e| e > 1).unwrap()),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![0; rows * cols])
    }

    pub fn ones(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![1; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        debug_assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c]
    }

    pub(crate) fn set(&mut self, r: usize, c: usize, bit: u8) {
        debug_assert!(bit <= 1);
        self.entries[r * self.cols + c] = bit;
    }

    pub fn count_ones(&self) -> usize {
        self.entries.iter().filter(|&&e| e == 1).count()
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }
}

/// Ordered per-layer masks for a network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskSet {
    masks: Vec<DenseMask>,
}

impl MaskSet {
    pub fn new(masks: Vec<DenseMask>) -> Self {
        Self { masks }
    }

    pub fn all_ones(net: &DenseNetwork) -> Self {
        Self {
            masks: net
                .layers
                .iter()
                .map(|l| DenseMask::ones(l.rows, l.cols).expect("layer dims are nonzero"))
                .collect(),
        }
    }

    pub fn all_zeros(net: &DenseNetwork) -> Self {
        Self {
            masks: net
                .layers
                .iter()
                .map(|l| DenseMask::zeros(l.rows, l.cols).expect("layer dims are nonzero"))
                .collect(),
        }
    }

    pub fn masks(&self) -> &[DenseMask] {
        &self.masks
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn validate_against(&self, net: &DenseNetwork) -> Result<()> {
        if self.masks.len() != net.layers.len() {
            return Err(Error::DimensionMismatch {
                context: "mask count vs network depth",
                expected: net.layers.len(),
                got: self.masks.len(),
            });
        }
        for (mask, layer) in self.masks.iter().zip(&net.layers) {
            if mask.shape() != layer.shape() {
                return Err(Error::ShapeMismatch {
                    context: "mask vs layer",
                    left: mask.shape(),
                    right: layer.shape(),
                });
            }
        }
        Ok(())
    }

    /// The explicitly pruned network, entry `mask * weight`.
    pub fn apply(&self, net: &DenseNetwork) -> Result<DenseNetwork> {
        self.validate_against(net)?;
        let layers = self
            .masks
            .iter()
            .zip(&net.layers)
            .map(|(mask, layer)| DenseMatrix {
                rows: layer.rows,
                cols: layer.cols,
                entries: mask
                    .entries
                    .iter()
                    .zip(&layer.entries)
                    .map(|(&s, &w)| f64::from(s) * w)
                    .collect(),
            })
            .collect();
        Ok(DenseNetwork { layers })
    }
}

/// An `l`-layer bias-free ReLU network: ReLU after every layer but the last.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseNetwork {
    layers: Vec<DenseMatrix>,
}

impl DenseNetwork {
    pub fn new(layers: Vec<DenseMatrix>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::DimensionMismatch {
                context: "network depth",
                expected: 1,
                got: 0,
            });
        }
        for pair in layers.windows(2) {
            if pair[1].cols != pair[0].rows {
                return Err(Error::ShapeMismatch {
                    context: "consecutive layers",
                    left: pair[0].shape(),
                    right: pair[1].shape(),
                });
            }
        }
        Ok(Self { layers })
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[DenseMatrix] {
        &self.layers
    }

    pub fn layer(&self, i: usize) -> &DenseMatrix {
        &self.layers[i]
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].cols
    }

    pub fn output_dim(&self) -> usize {
        self.layers[self.layers.len() - 1].rows
    }

    /// `[d_0, d_1, ..., d_l]`.
    pub fn widths(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.layers.len() + 1);
        w.push(self.input_dim());
        for layer in &self.layers {
            w.push(layer.rows);
        }
        w
    }

    /// Forward pass on an arbitrary vector (no norm restriction).
    pub fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                context: "network input",
                expected: self.input_dim(),
                got: x.len(),
            });
        }
        let last = self.layers.len() - 1;
        let mut h = self.layers[0].matvec_unchecked(x);
        if last > 0 {
            relu_in_place(&mut h);
        }
        for (i, layer) in self.layers.iter().enumerate().skip(1) {
            h = layer.matvec_unchecked(&h);
            if i < last {
                relu_in_place(&mut h);
            }
        }
        Ok(h)
    }

    /// Forward pass with per-layer masks applied on the fly. Bit-identical
    /// to `evaluate` on `masks.apply(self)`: the products are performed in
    /// the same order (`(mask * weight) * x`).
    pub fn evaluate_masked(&self, masks: &MaskSet, x: &[f64]) -> Result<Vec<f64>> {
        masks.validate_against(self)?;
        if x.len() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                context: "network input",
                expected: self.input_dim(),
                got: x.len(),
            });
        }
        let last = self.layers.len() - 1;
        let mut h = x.to_vec();
        for (i, (layer, mask)) in self.layers.iter().zip(masks.masks()).enumerate() {
            let mut next = Vec::with_capacity(layer.rows);
            for r in 0..layer.rows {
                let mut acc = 0.0;
                for ((w, s), xi) in layer.row(r).iter().zip(mask.row(r)).zip(&h) {
                    acc += (f64::from(*s) * w) * xi;
                }
                next.push(acc);
            }
            if i < last {
                relu_in_place(&mut next);
            }
            h = next;
        }
        Ok(h)
    }
}

fn relu_in_place(v: &mut [f64]) {
    for e in v.iter_mut() {
        *e = e.max(0.0);
    }
}

/// A vector constrained to the (closed) Euclidean unit ball.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitVector {
    coords: Vec<f64>,
}

impl UnitVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionMismatch {
                context: "unit vector",
                expected: 1,
                got: 0,
            });
        }
        if coords.iter().any(|e| !e.is_finite()) {
            return Err(Error::NonFinite {
                context: "unit vector coords",
            });
        }
        let norm = l2_norm(&coords);
        if norm > 1.0 + UNIT_SLACK {
            return Err(Error::Domain {
                context: "unit vector norm exceeds 1",
                value: norm,
            });
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.coords)
    }
}

pub fn l2_norm(v: &[f64]) -> f64 {
    v.iter().map(|e| e * e).sum::<f64>().sqrt()
}

/// Forward pass on a unit-ball input; ReLU after every layer but the last.
pub fn forward(net: &DenseNetwork, x: &UnitVector) -> Result<Vec<f64>> {
    net.evaluate(x.coords())
}

/// Forward pass of the pruned network `mask ⊙ weights`.
pub fn masked_forward(net: &DenseNetwork, masks: &MaskSet, x: &UnitVector) -> Result<Vec<f64>> {
    net.evaluate_masked(masks, x.coords())
}

/// Largest singular value by power iteration on `MᵀM`, deterministic
/// all-ones start. Converges when the estimate moves by at most `tol`
/// relative; failing that, reports the last estimate.
pub fn spectral_norm(m: &DenseMatrix, tol: f64, max_iters: usize) -> Result<f64> {
    if tol <= 0.0 {
        return Err(Error::Domain {
            context: "spectral_norm tolerance",
            value: tol,
        });
    }
    let cols = m.cols();
    let mut v = vec![1.0 / (cols as f64).sqrt(); cols];
    let mut last = f64::NAN;
    for _ in 0..max_iters {
        let u = m.matvec_unchecked(&v);
        let sigma = l2_norm(&u);
        if sigma == 0.0 {
            // v is in the null space; with the fixed start this only
            // happens for the zero matrix.
            return Ok(0.0);
        }
        if (sigma - last).abs() <= tol * sigma {
            return Ok(sigma);
        }
        last = sigma;
        let w = m.transposed_matvec(&u);
        let wn = l2_norm(&w);
        if wn == 0.0 {
            return Ok(sigma);
        }
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / wn;
        }
    }
    Err(Error::Convergence {
        context: "spectral_norm power iteration",
        iterations: max_iters,
        last,
    })
}

/// `spectral_norm` with the crate defaults; convergence failures fall back
/// to the carried estimate (callers that need the distinction use
/// `spectral_norm` directly).
pub fn spectral_norm_estimate(m: &DenseMatrix) -> f64 {
    match spectral_norm(m, SPECTRAL_TOL, SPECTRAL_MAX_ITERS) {
        Ok(s) => s,
        Err(Error::Convergence { last, .. }) => last,
        Err(_) => unreachable!("default tolerance is valid"),
    }
}

/// Divide every layer by `max(1, spectral norm)`; returns the scales so the
/// caller can undo the normalization on outputs (positive homogeneity makes
/// the product of scales the exact correction factor).
pub fn normalize_network(net: &DenseNetwork) -> (DenseNetwork, Vec<f64>) {
    let mut scales = Vec::with_capacity(net.depth());
    let mut layers = Vec::with_capacity(net.depth());
    for layer in net.layers() {
        let scale = spectral_norm_estimate(layer).max(1.0);
        scales.push(scale);
        layers.push(layer.divided_by(scale));
    }
    (DenseNetwork { layers }, scales)
}

/// Random network with i.i.d. entries from `dist`; layer `k` maps
/// `widths[k] -> widths[k+1]`. Entries are drawn layer by layer in row-major
/// order, so the result is a pure function of `(widths, dist, seed)`.
pub fn random_network(widths: &[usize], dist: Distribution, seed: u64) -> Result<DenseNetwork> {
    if widths.len() < 2 {
        return Err(Error::DimensionMismatch {
            context: "network widths",
            expected: 2,
            got: widths.len(),
        });
    }
    if widths.iter().any(|&w| w == 0) {
        return Err(Error::InvalidDimensions { rows: 0, cols: 0 });
    }
    dist.validate()?;
    let mut rng = rng_from_seed(seed);
    let mut layers = Vec::with_capacity(widths.len() - 1);
    for k in 0..widths.len() - 1 {
        let (rows, cols) = (widths[k + 1], widths[k]);
        let entries = dist.sample_many(&mut rng, rows * cols);
        layers.push(DenseMatrix::new(rows, cols, entries)?);
    }
    DenseNetwork::new(layers)
}

/// `n` uniform points on the unit sphere (Gaussian direction method).
/// Samples are drawn from one sequential stream, so the first `k` of an
/// `n`-sample call equal the `k`-sample call for the same seed.
pub fn sample_unit_sphere(dim: usize, seed: u64, n: usize) -> Result<Vec<UnitVector>> {
    if dim == 0 {
        return Err(Error::DimensionMismatch {
            context: "sphere dimension",
            expected: 1,
            got: 0,
        });
    }
    let mut rng = rng_from_seed(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let coords = loop {
            let g: Vec<f64> = (0..dim).map(|_| standard_normal(&mut rng)).collect();
            let norm = l2_norm(&g);
            if norm > 1e-12 {
                break g.into_iter().map(|c| c / norm).collect::<Vec<f64>>();
            }
        };
        out.push(UnitVector { coords });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive_seed;
    use approx::assert_relative_eq;

    fn net_1x1(w: f64) -> DenseNetwork {
        DenseNetwork::new(vec![DenseMatrix::new(1, 1, vec![w]).unwrap()]).unwrap()
    }

    #[test]
    fn forward_at_zero_is_zero() {
        let net = random_network(&[3, 5, 2], Distribution::uniform_symmetric(), 9).unwrap();
        let x = UnitVector::new(vec![0.0; 3]).unwrap();
        assert_eq!(forward(&net, &x).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn single_linear_layer() {
        let net = net_1x1(2.0);
        let x = UnitVector::new(vec![0.5]).unwrap();
        assert_eq!(forward(&net, &x).unwrap(), vec![1.0]);
    }

    #[test]
    fn ones_mask_is_identity_bit_exact() {
        let net = random_network(&[4, 6, 3], Distribution::uniform_symmetric(), 21).unwrap();
        let masks = MaskSet::all_ones(&net);
        for uv in sample_unit_sphere(4, 1, 20).unwrap() {
            let a = forward(&net, &uv).unwrap();
            let b = masked_forward(&net, &masks, &uv).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn zeros_mask_gives_zero_output() {
        let net = random_network(&[4, 6, 3], Distribution::uniform_symmetric(), 22).unwrap();
        let masks = MaskSet::all_zeros(&net);
        let x = sample_unit_sphere(4, 2, 1).unwrap().pop().unwrap();
        assert_eq!(masked_forward(&net, &masks, &x).unwrap(), vec![0.0; 3]);
    }

    #[test]
    fn masked_forward_equals_premultiplied_bit_exact() {
        use rand::Rng;
        let mut seed_rng = rng_from_seed(77);
        for _ in 0..100 {
            let seed: u64 = seed_rng.gen();
            let net =
                random_network(&[3, 7, 2], Distribution::uniform_symmetric(), seed).unwrap();
            let mut mask_rng = rng_from_seed(derive_seed(seed, "mask", 0));
            let masks = MaskSet::new(
                net.layers()
                    .iter()
                    .map(|l| {
                        let bits = (0..l.rows() * l.cols())
                            .map(|_| u8::from(mask_rng.gen::<f64>() < 0.5))
                            .collect();
                        DenseMask::new(l.rows(), l.cols(), bits).unwrap()
                    })
                    .collect(),
            );
            let pruned = masks.apply(&net).unwrap();
            let x = sample_unit_sphere(3, derive_seed(seed, "x", 0), 1)
                .unwrap()
                .pop()
                .unwrap();
            assert_eq!(
                masked_forward(&net, &masks, &x).unwrap(),
                forward(&pruned, &x).unwrap()
            );
        }
    }

    #[test]
    fn positive_homogeneity() {
        let net = random_network(&[3, 8, 8, 2], Distribution::uniform_symmetric(), 5).unwrap();
        let x = sample_unit_sphere(3, 3, 1).unwrap().pop().unwrap();
        let base = net.evaluate(x.coords()).unwrap();
        for alpha in [0.0, 0.5, 1.0, 2.0] {
            let scaled: Vec<f64> = x.coords().iter().map(|c| alpha * c).collect();
            let out = net.evaluate(&scaled).unwrap();
            for (o, b) in out.iter().zip(&base) {
                assert_relative_eq!(*o, alpha * b, epsilon = 1e-9, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn spectral_norm_identity_and_diag() {
        let id = DenseMatrix::identity(6).unwrap();
        assert_relative_eq!(
            spectral_norm(&id, 1e-9, 1000).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        let d = DenseMatrix::new(2, 2, vec![3.0, 0.0, 0.0, 1.0]).unwrap();
        assert_relative_eq!(
            spectral_norm(&d, 1e-9, 1000).unwrap(),
            3.0,
            epsilon = 1e-9
        );
    }

    #[test]
    fn spectral_norm_matches_sampling_oracle() {
        let mut rng = rng_from_seed(40);
        let entries: Vec<f64> = (0..15).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
        let m = DenseMatrix::new(5, 3, entries).unwrap();
        let sigma = spectral_norm(&m, 1e-12, 10_000).unwrap();
        let mut best = 0.0f64;
        for x in sample_unit_sphere(3, 41, 100_000).unwrap() {
            let y = m.matvec(x.coords()).unwrap();
            best = best.max(l2_norm(&y));
        }
        assert!(best <= sigma + 1e-9, "sampled {best} above estimate {sigma}");
        assert!((sigma - best) <= 1e-3 * sigma.max(1.0), "oracle gap too wide");
    }

    #[test]
    fn spectral_norm_dominates_sampled_directions() {
        let mut rng = rng_from_seed(42);
        let entries: Vec<f64> = (0..24).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
        let m = DenseMatrix::new(4, 6, entries).unwrap();
        let sigma = spectral_norm(&m, SPECTRAL_TOL, SPECTRAL_MAX_ITERS).unwrap();
        for x in sample_unit_sphere(6, 43, 1000).unwrap() {
            assert!(l2_norm(&m.matvec(x.coords()).unwrap()) <= sigma + 1e-9);
        }
    }

    #[test]
    fn normalize_network_examples() {
        // Already within the ball: unchanged, scales all one.
        let small = DenseNetwork::new(vec![
            DenseMatrix::new(1, 2, vec![0.3, 0.2]).unwrap(),
            DenseMatrix::new(1, 1, vec![0.9]).unwrap(),
        ])
        .unwrap();
        let (normed, scales) = normalize_network(&small);
        assert_eq!(normed, small);
        assert_eq!(scales, vec![1.0, 1.0]);

        let big = net_1x1(2.0);
        let (normed, scales) = normalize_network(&big);
        assert_eq!(scales.len(), 1);
        assert_relative_eq!(scales[0], 2.0, epsilon = 1e-9);
        assert_relative_eq!(normed.layer(0).get(0, 0), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn normalize_preserves_function_up_to_scale() {
        let net = random_network(&[3, 6, 2], Distribution::Uniform { a: -3.0, b: 3.0 }, 8)
            .unwrap();
        let (normed, scales) = normalize_network(&net);
        let factor: f64 = scales.iter().product();
        for x in sample_unit_sphere(3, 9, 100).unwrap() {
            let orig = forward(&net, &x).unwrap();
            let scaled = forward(&normed, &x).unwrap();
            for (o, s) in orig.iter().zip(&scaled) {
                assert_relative_eq!(*o, factor * s, epsilon = 1e-9, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn random_network_is_deterministic_and_in_support() {
        let a = random_network(&[3, 5, 2], Distribution::uniform_symmetric(), 7).unwrap();
        let b = random_network(&[3, 5, 2], Distribution::uniform_symmetric(), 7).unwrap();
        assert_eq!(a, b);
        for layer in a.layers() {
            assert!(layer.entries().iter().all(|e| e.abs() <= 1.0));
        }
    }

    #[test]
    fn random_network_entry_mean_is_near_zero() {
        let net =
            random_network(&[1000, 1000], Distribution::uniform_symmetric(), 31).unwrap();
        let entries = net.layer(0).entries();
        let mean = entries.iter().sum::<f64>() / entries.len() as f64;
        // stderr of the mean of 1e6 U[-1,1] draws: (1/sqrt(3)) / 1000
        let stderr = (1.0f64 / 3.0).sqrt() / 1000.0;
        assert!(mean.abs() <= 3.0 * stderr, "mean {mean} vs 3*stderr {stderr}");
    }

    #[test]
    fn sphere_samples_have_unit_norm() {
        for uv in sample_unit_sphere(7, 13, 1000).unwrap() {
            assert!((uv.norm() - 1.0).abs() <= 1e-12);
        }
        for uv in sample_unit_sphere(1, 14, 100).unwrap() {
            let c = uv.coords()[0];
            assert!(c == 1.0 || c == -1.0);
        }
    }

    #[test]
    fn sphere_coordinate_means_vanish() {
        let samples = sample_unit_sphere(3, 15, 100_000).unwrap();
        for k in 0..3 {
            let mean =
                samples.iter().map(|s| s.coords()[k]).sum::<f64>() / samples.len() as f64;
            // per-coordinate variance on S^2 is 1/3
            let stderr = (1.0f64 / 3.0).sqrt() / (samples.len() as f64).sqrt();
            assert!(mean.abs() <= 3.0 * stderr, "coord {k} mean {mean}");
        }
    }

    #[test]
    fn unit_vector_rejects_long_vectors() {
        assert!(UnitVector::new(vec![0.8, 0.7]).is_err());
        assert!(UnitVector::new(vec![0.6, 0.8]).is_ok());
    }

    #[test]
    fn shape_errors() {
        let net = net_1x1(1.0);
        assert!(net.evaluate(&[1.0, 2.0]).is_err());
        assert!(DenseMatrix::new(2, 2, vec![1.0; 3]).is_err());
        assert!(DenseMatrix::new(0, 2, vec![]).is_err());
        assert!(DenseMask::new(1, 2, vec![0, 2]).is_err());
        let bad = DenseNetwork::new(vec![
            DenseMatrix::new(2, 3, vec![0.0; 6]).unwrap(),
            DenseMatrix::new(2, 4, vec![0.0; 8]).unwrap(),
        ]);
        assert!(bad.is_err());
    }
}
