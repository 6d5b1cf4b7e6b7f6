//! The octonions on the basis `1, e_1, …, e_7` with `e_i e_{i+1} = e_{i+3}`
//! (indices mod 7), and the derivation algebra `g_2 ⊂ so(7)` acting on the
//! imaginary part.

use nalgebra::DMatrix;

/// Oriented lines of the Fano plane, 1-based.
pub const TRIPLES: [(usize, usize, usize); 7] =
    [(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3)];

pub type Octonion = [f64; 8];

pub fn mul(x: &Octonion, y: &Octonion) -> Octonion {
    let mut z = [0.0; 8];
    z[0] = x[0] * y[0];
    for a in 1..8 {
        z[a] += x[0] * y[a] + x[a] * y[0];
        z[0] -= x[a] * y[a];
    }
    for &(a, b, c) in &TRIPLES {
        z[c] += x[a] * y[b] - x[b] * y[a];
        z[a] += x[b] * y[c] - x[c] * y[b];
        z[b] += x[c] * y[a] - x[a] * y[c];
    }
    z
}

pub fn basis(a: usize) -> Octonion {
    let mut x = [0.0; 8];
    x[a] = 1.0;
    x
}

/// Applies a `7×7` matrix to the imaginary part, killing the real part.
pub fn act(d: &DMatrix<f64>, x: &Octonion) -> Octonion {
    let mut y = [0.0; 8];
    for i in 0..7 {
        for j in 0..7 {
            y[i + 1] += d[(i, j)] * x[j + 1];
        }
    }
    y
}

/// Residual of the Leibniz rule `D(xy) - D(x)y - xD(y)` over all pairs of
/// imaginary units, flattened.
pub fn leibniz_residual(d: &DMatrix<f64>) -> Vec<f64> {
    let mut out = Vec::with_capacity(7 * 7 * 8);
    for a in 1..8 {
        for b in 1..8 {
            let (x, y) = (basis(a), basis(b));
            let lhs = act(d, &mul(&x, &y));
            let r1 = mul(&act(d, &x), &y);
            let r2 = mul(&x, &act(d, &y));
            out.extend((0..8).map(|k| lhs[k] - r1[k] - r2[k]));
        }
    }
    out
}
