//! Weighted epsilon-insensitive support vector regression with an RBF
//! kernel, trained by sequential minimal optimization over maximal-violating
//! pairs (the working-set rule of Fan, Chen and Lin, JMLR 6, 2005).
//!
//! Sample weights fold into per-sample box constraints `C_i = C * |X| *
//! w_i / sum(w)`, so uniform weights recover the plain box `C` and scaling
//! all weights by a positive constant changes nothing.

/// Hyperparameters of the weak learner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvrParams {
    /// Box constraint before per-sample weighting.
    pub c: f64,
    /// Half-width of the insensitive tube.
    pub epsilon: f64,
    /// RBF kernel coefficient `gamma`.
    pub gamma: f64,
    /// Maximum KKT violation accepted as converged.
    pub tolerance: f64,
}

impl SvrParams {
    /// Library defaults for `n`-dimensional inputs: `C = 1`, `epsilon =
    /// 0.1`, `gamma = 1/n`.
    pub fn for_dimension(n: usize) -> Self {
        assert!(n > 0, "dimension must be positive");
        SvrParams {
            c: 1.0,
            epsilon: 0.1,
            gamma: 1.0 / n as f64,
            tolerance: 1e-3,
        }
    }
}

/// A trained regression model: the support vectors and their net dual
/// coefficients `alpha_i - alpha_i^*`, plus the bias.
#[derive(Debug, Clone, PartialEq)]
pub struct SvrModel {
    pub support_vectors: Vec<Vec<f64>>,
    /// Net dual coefficient of each support vector.
    pub coefficients: Vec<f64>,
    /// Per-sample box cap of each support vector (diagnostic).
    pub caps: Vec<f64>,
    pub bias: f64,
    pub gamma: f64,
    pub c: f64,
    pub epsilon: f64,
}

impl SvrModel {
    /// Predicted target at `x`.
    pub fn predict(&self, x: &[f64]) -> f64 {
        let mut sum = self.bias;
        for (sv, coef) in self.support_vectors.iter().zip(&self.coefficients) {
            sum += coef * rbf(sv, x, self.gamma);
        }
        sum
    }
}

fn rbf(a: &[f64], b: &[f64], gamma: f64) -> f64 {
    let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    (-gamma * d2).exp()
}

/// Upper bound on pair updates, counted in "full passes" of `|X|` updates.
const FULL_PASSES: usize = 10;

/// Fit a weighted epsilon-SVR to `(xs, ys)`.
///
/// `weights` must be non-negative with a positive sum; they are normalized
/// internally, so only relative magnitudes matter. Training stops once the
/// largest KKT violation drops below `params.tolerance` or after
/// `10 * |X|` full passes.
pub fn fit(xs: &[Vec<f64>], ys: &[f64], weights: &[f64], params: &SvrParams) -> SvrModel {
    let n = xs.len();
    assert!(n >= 2, "SVR needs at least two samples");
    assert_eq!(n, ys.len(), "xs and ys must have equal length");
    assert_eq!(n, weights.len(), "xs and weights must have equal length");
    assert!(
        ys.iter().all(|y| y.is_finite()),
        "targets must be finite"
    );
    assert!(
        weights.iter().all(|w| w.is_finite() && *w >= 0.0),
        "weights must be non-negative"
    );
    let weight_sum: f64 = weights.iter().sum();
    assert!(weight_sum > 0.0, "weights must not all be zero");
    let dim = xs[0].len();
    assert!(
        xs.iter().all(|x| x.len() == dim),
        "all samples must share one dimension"
    );

    let caps: Vec<f64> = weights
        .iter()
        .map(|w| params.c * n as f64 * w / weight_sum)
        .collect();

    // Dense kernel matrix; training sets stay small (at most a few hundred
    // samples), so n^2 storage is the fast and simple choice.
    let kernel: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| rbf(&xs[i], &xs[j], params.gamma)).collect())
        .collect();

    // Dual variables: k < n holds alpha_k (positive part), k >= n holds
    // alpha_{k-n}^* (negative part). beta_i = alpha_i - alpha_i^* is the net
    // coefficient and f[i] = sum_j beta_j K_ij its current kernel expansion.
    let mut alpha = vec![0.0_f64; 2 * n];
    let mut f = vec![0.0_f64; n];

    // KKT criterion value of dual variable k: the bias must satisfy
    // b >= crit(k) for every k that can still move "down" and b <= crit(k)
    // for every k that can move "up"; a violating pair is one where those
    // requirements cross.
    let crit = |k: usize, f: &[f64]| -> f64 {
        if k < n {
            f[k] + params.epsilon - ys[k]
        } else {
            f[k - n] - params.epsilon - ys[k - n]
        }
    };

    let max_updates = FULL_PASSES * n * n;
    let mut updates = 0;
    let (mut lo_crit, mut up_crit);
    loop {
        // Maximal violating pair: u maximizes crit over variables that may
        // decrease, v minimizes crit over variables that may increase.
        let mut u = usize::MAX;
        let mut v = usize::MAX;
        lo_crit = f64::NEG_INFINITY;
        up_crit = f64::INFINITY;
        for k in 0..2 * n {
            let i = k % n;
            if caps[i] <= 0.0 {
                continue;
            }
            let c = crit(k, &f);
            let in_lo = if k < n { alpha[k] > 0.0 } else { alpha[k] < caps[i] };
            let in_up = if k < n { alpha[k] < caps[i] } else { alpha[k] > 0.0 };
            if in_lo && c > lo_crit {
                lo_crit = c;
                u = k;
            }
            if in_up && c < up_crit {
                up_crit = c;
                v = k;
            }
        }
        if lo_crit - up_crit <= params.tolerance || updates >= max_updates {
            break;
        }

        let (iu, iv) = (u % n, v % n);
        // Minimize the dual along the feasible pair direction: alpha[u]
        // moves by s_u * theta, alpha[v] by -s_v * theta, which shifts the
        // net coefficients beta_iu by theta and beta_iv by -theta.
        let denom = kernel[iu][iu] + kernel[iv][iv] - 2.0 * kernel[iu][iv];
        let mut theta = if denom > 1e-12 {
            (up_crit - lo_crit) / denom
        } else {
            f64::NEG_INFINITY
        };
        // Clip to the box of both variables.
        let lower_u = if u < n { -alpha[u] } else { alpha[u] - caps[iu] };
        let lower_v = if v < n { alpha[v] - caps[iv] } else { -alpha[v] };
        theta = theta.max(lower_u).max(lower_v);

        if u < n {
            alpha[u] += theta;
        } else {
            alpha[u] -= theta;
        }
        if v < n {
            alpha[v] -= theta;
        } else {
            alpha[v] += theta;
        }
        alpha[u] = alpha[u].clamp(0.0, caps[iu]);
        alpha[v] = alpha[v].clamp(0.0, caps[iv]);
        if iu != iv {
            for j in 0..n {
                f[j] += theta * (kernel[iu][j] - kernel[iv][j]);
            }
        }
        updates += 1;
    }

    let bias = -(lo_crit + up_crit) / 2.0;
    let mut support_vectors = Vec::new();
    let mut coefficients = Vec::new();
    let mut sv_caps = Vec::new();
    for i in 0..n {
        let beta = alpha[i] - alpha[i + n];
        if beta.abs() > 1e-12 {
            support_vectors.push(xs[i].clone());
            coefficients.push(beta);
            sv_caps.push(caps[i]);
        }
    }
    SvrModel {
        support_vectors,
        coefficients,
        caps: sv_caps,
        bias,
        gamma: params.gamma,
        c: params.c,
        epsilon: params.epsilon,
    }
}
