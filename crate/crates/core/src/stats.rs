//! One-pass moment accumulation and quantile summaries.

/// Streaming central-moment accumulator (mean through fourth moment) with an
/// associative merge, so partial accumulators from different chunks can be
/// combined in any order.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    n: u64,
    m1: f64,
    m2: f64,
    m3: f64,
    m4: f64,
}

impl Moments {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_values(values: impl IntoIterator<Item = f64>) -> Self {
        let mut m = Self::new();
        for v in values {
            m.push(v);
        }
        m
    }

    pub fn push(&mut self, x: f64) {
        let n0 = self.n as f64;
        self.n += 1;
        let n = self.n as f64;
        let delta = x - self.m1;
        let delta_n = delta / n;
        let delta_n2 = delta_n * delta_n;
        let term1 = delta * delta_n * n0;
        self.m4 += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * self.m2
            - 4.0 * delta_n * self.m3;
        self.m3 += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * self.m2;
        self.m2 += term1;
        self.m1 += delta_n;
    }

    pub fn merge(&self, other: &Self) -> Self {
        if self.n == 0 {
            return *other;
        }
        if other.n == 0 {
            return *self;
        }
        let na = self.n as f64;
        let nb = other.n as f64;
        let n = na + nb;
        let delta = other.m1 - self.m1;
        let delta2 = delta * delta;
        let delta3 = delta * delta2;
        let delta4 = delta2 * delta2;
        let m1 = (na * self.m1 + nb * other.m1) / n;
        let m2 = self.m2 + other.m2 + delta2 * na * nb / n;
        let m3 = self.m3 + other.m3
            + delta3 * na * nb * (na - nb) / (n * n)
            + 3.0 * delta * (na * other.m2 - nb * self.m2) / n;
        let m4 = self.m4 + other.m4
            + delta4 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n)
            + 6.0 * delta2 * (na * na * other.m2 + nb * nb * self.m2) / (n * n)
            + 4.0 * delta * (na * other.m3 - nb * self.m3) / n;
        Moments { n: self.n + other.n, m1, m2, m3, m4 }
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.m1
    }

    /// Population variance.
    pub fn variance(&self) -> f64 {
        self.m2 / self.n as f64
    }

    pub fn stdev(&self) -> f64 {
        self.variance().sqrt()
    }

    pub fn skewness(&self) -> f64 {
        (self.n as f64).sqrt() * self.m3 / self.m2.powf(1.5)
    }

    /// Full (non-excess) kurtosis; 3 for a normal sample in the limit.
    pub fn kurtosis(&self) -> f64 {
        self.n as f64 * self.m4 / (self.m2 * self.m2)
    }

    /// Standard error of the mean.
    pub fn standard_error(&self) -> f64 {
        (self.variance() / self.n as f64).sqrt()
    }
}

/// Linear-interpolation quantile of an ascending-sorted slice.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty() && (0.0..=1.0).contains(&q));
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        let w = pos - lo as f64;
        sorted[lo] * (1.0 - w) + sorted[hi] * w
    }
}

pub const SUMMARY_QUANTILES: [f64; 7] = [0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99];

/// Moments plus a fixed quantile ladder for one empirical distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct DistSummary {
    pub n: usize,
    pub mean: f64,
    pub stdev: f64,
    pub skewness: f64,
    pub kurtosis: f64,
    /// (probability, value) pairs at `SUMMARY_QUANTILES`.
    pub quantiles: Vec<(f64, f64)>,
}

impl DistSummary {
    pub fn from_values(mut values: Vec<f64>) -> Self {
        let moments = Moments::from_values(values.iter().copied());
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let quantiles = SUMMARY_QUANTILES.iter().map(|&q| (q, quantile(&values, q))).collect();
        DistSummary {
            n: values.len(),
            mean: moments.mean(),
            stdev: moments.stdev(),
            skewness: moments.skewness(),
            kurtosis: moments.kurtosis(),
            quantiles,
        }
    }

    pub fn quantile_at(&self, q: f64) -> f64 {
        self.quantiles
            .iter()
            .find(|(p, _)| (p - q).abs() < 1e-12)
            .map(|&(_, v)| v)
            .expect("quantile not in summary ladder")
    }
}
