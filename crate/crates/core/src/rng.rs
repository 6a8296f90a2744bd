//! Reproducible Gaussian shock streams.
//!
//! Shocks are standard normals obtained by applying the inverse normal CDF to
//! uniforms from a counter-based generator (ChaCha8). Each simulated path
//! gets its own substream keyed by (seed, path index), so path i draws the
//! same shocks no matter how paths are scheduled across threads.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Per-path shock stream: substream `path` of the generator keyed by `seed`.
pub struct ShockStream {
    rng: ChaCha8Rng,
}

impl ShockStream {
    pub fn new(seed: u64, path: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(path);
        ShockStream { rng }
    }

    /// Uniform on the open interval (0, 1): bit-center of a 53-bit lattice.
    #[inline]
    pub fn next_open_uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
    }

    #[inline]
    pub fn next_normal(&mut self) -> f64 {
        standard_normal_quantile(self.next_open_uniform())
    }
}

/// Inverse standard normal CDF (Wichura's AS 241, PPND16). Relative error
/// below 1e-15 over (0, 1); returns +-infinity at the endpoints.
pub fn standard_normal_quantile(p: f64) -> f64 {
    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        return q * poly(&A_NUM, r) / poly(&A_DEN, r);
    }
    let r = if q < 0.0 { p } else { 1.0 - p };
    let r = (-r.ln()).sqrt();
    let x = if r <= 5.0 {
        let r = r - 1.6;
        poly(&C_NUM, r) / poly(&C_DEN, r)
    } else {
        let r = r - 5.0;
        poly(&E_NUM, r) / poly(&E_DEN, r)
    };
    if q < 0.0 {
        -x
    } else {
        x
    }
}

#[inline]
fn poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

const A_NUM: [f64; 8] = [
    3.3871328727963666080e0,
    1.3314166789178437745e2,
    1.9715909503065514427e3,
    1.3731693765509461125e4,
    4.5921953931549871457e4,
    6.7265770927008700853e4,
    3.3430575583588128105e4,
    2.5090809287301226727e3,
];
const A_DEN: [f64; 8] = [
    1.0,
    4.2313330701600911252e1,
    6.8718700749205790830e2,
    5.3941960214247511077e3,
    2.1213794301586595867e4,
    3.9307895800092710610e4,
    2.8729085735721942674e4,
    5.2264952788528545610e3,
];
const C_NUM: [f64; 8] = [
    1.42343711074968357734e0,
    4.63033784615654529590e0,
    5.76949722146069140550e0,
    3.64784832476320460504e0,
    1.27045825245236838258e0,
    2.41780725177450611770e-1,
    2.27238449892691845833e-2,
    7.74545014278341407640e-4,
];
const C_DEN: [f64; 8] = [
    1.0,
    2.05319162663775882187e0,
    1.67638483018380384940e0,
    6.89767334985100004550e-1,
    1.48103976427480074590e-1,
    1.51986665636164571966e-2,
    5.47593808499534494600e-4,
    1.05075007164441684324e-9,
];
const E_NUM: [f64; 8] = [
    6.6579046435011037772e0,
    5.4637849111641143699e0,
    1.7848265399172913578e0,
    2.9656057182850489123e-1,
    2.6532189526576123093e-2,
    1.2426609473880784386e-3,
    2.7115555687434875780e-5,
    2.0103343992922881308e-7,
];
const E_DEN: [f64; 8] = [
    1.0,
    5.9983220655588793769e-1,
    1.3692988092273580531e-1,
    1.4875361290850614853e-2,
    7.8686913114561329610e-4,
    1.8463183175100546818e-5,
    1.4215117583164458887e-7,
    2.0442631033899397564e-15,
];
