//! Dense matrix exponential by scaling and squaring with a degree-13 Padé
//! approximant, for real or complex square matrices.
//!
//! This is deliberately a brute-force tool: the fast closed-form routines
//! elsewhere in the crate (displacement matrices, the factored amplifier
//! evolution) are cross-checked against `expm` in the test suites, and the
//! dense amplifier oracle builds on it directly.

use ndarray::Array2;
use num_complex::Complex64 as C64;

/// Padé coefficients of the diagonal 13/13 approximant to `exp`.
const PADE_13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// Largest 1-norm for which the unscaled 13/13 approximant reaches double
/// precision.
const THETA_13: f64 = 5.371920351148152;

/// Scalar entry types supported by [`expm`].
pub trait ExpmScalar: ndarray::LinalgScalar {
    fn from_f64(x: f64) -> Self;
    /// Modulus, used for pivoting and norm estimates.
    fn modulus(self) -> f64;
}

impl ExpmScalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }

    fn modulus(self) -> f64 {
        self.abs()
    }
}

impl ExpmScalar for C64 {
    fn from_f64(x: f64) -> Self {
        C64::new(x, 0.0)
    }

    fn modulus(self) -> f64 {
        self.norm()
    }
}

/// Matrix exponential `exp(A)` of a square matrix.
pub fn expm<T: ExpmScalar>(a: &Array2<T>) -> Array2<T> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix exponential needs a square matrix");

    // Scale A by 2^-s so its 1-norm drops below the Padé threshold.
    let norm = one_norm(a);
    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let a1 = a.mapv(|x| x * T::from_f64(0.5f64.powi(s)));

    let a2 = a1.dot(&a1);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);
    let b: Vec<T> = PADE_13.iter().map(|&c| T::from_f64(c)).collect();

    // U = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
    let u_high = scaled(&a6, b[13]) + scaled(&a4, b[11]) + scaled(&a2, b[9]);
    let mut u_poly = a6.dot(&u_high) + scaled(&a6, b[7]) + scaled(&a4, b[5]) + scaled(&a2, b[3]);
    add_to_diagonal(&mut u_poly, b[1]);
    let u = a1.dot(&u_poly);

    // V = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    let v_high = scaled(&a6, b[12]) + scaled(&a4, b[10]) + scaled(&a2, b[8]);
    let mut v = a6.dot(&v_high) + scaled(&a6, b[6]) + scaled(&a4, b[4]) + scaled(&a2, b[2]);
    add_to_diagonal(&mut v, b[0]);

    // exp(A / 2^s) = (V - U)^-1 (V + U), then square s times.
    let mut r = solve_matrix(&v - &u, &v + &u);
    for _ in 0..s {
        r = r.dot(&r);
    }
    r
}

fn scaled<T: ExpmScalar>(m: &Array2<T>, c: T) -> Array2<T> {
    m.mapv(|x| x * c)
}

fn add_to_diagonal<T: ExpmScalar>(m: &mut Array2<T>, c: T) {
    for i in 0..m.nrows() {
        m[(i, i)] = m[(i, i)] + c;
    }
}

fn one_norm<T: ExpmScalar>(m: &Array2<T>) -> f64 {
    let mut best: f64 = 0.0;
    for col in m.columns() {
        best = best.max(col.iter().map(|x| x.modulus()).sum());
    }
    best
}

/// Solve `A X = B` for the matrix `X` by Gaussian elimination with partial
/// pivoting. Panics on an exactly singular pivot; the Padé denominator
/// `V - U` is always well conditioned for scaled inputs.
fn solve_matrix<T: ExpmScalar>(mut a: Array2<T>, mut b: Array2<T>) -> Array2<T> {
    let n = a.nrows();
    assert_eq!(n, b.nrows());
    let cols = b.ncols();
    let zero = T::from_f64(0.0);
    for k in 0..n {
        // Pivot on the largest modulus in column k.
        let mut pivot = k;
        let mut best = a[(k, k)].modulus();
        for r in k + 1..n {
            let m = a[(r, k)].modulus();
            if m > best {
                best = m;
                pivot = r;
            }
        }
        assert!(best > 0.0, "singular matrix in linear solve");
        if pivot != k {
            for c in 0..n {
                let tmp = a[(k, c)];
                a[(k, c)] = a[(pivot, c)];
                a[(pivot, c)] = tmp;
            }
            for c in 0..cols {
                let tmp = b[(k, c)];
                b[(k, c)] = b[(pivot, c)];
                b[(pivot, c)] = tmp;
            }
        }
        let inv = T::from_f64(1.0) / a[(k, k)];
        for r in k + 1..n {
            let factor = a[(r, k)] * inv;
            if factor.modulus() == 0.0 {
                continue;
            }
            a[(r, k)] = zero;
            for c in k + 1..n {
                a[(r, c)] = a[(r, c)] - factor * a[(k, c)];
            }
            for c in 0..cols {
                b[(r, c)] = b[(r, c)] - factor * b[(k, c)];
            }
        }
    }
    // Back substitution.
    for k in (0..n).rev() {
        let inv = T::from_f64(1.0) / a[(k, k)];
        for c in 0..cols {
            let mut s = b[(k, c)];
            for j in k + 1..n {
                s = s - a[(k, j)] * b[(j, c)];
            }
            b[(k, c)] = s * inv;
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn exponential_of_zero_is_identity() {
        let z = Array2::<f64>::zeros((5, 5));
        let e = expm(&z);
        for i in 0..5 {
            for j in 0..5 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(e[(i, j)], expect, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn exponential_of_diagonal_is_elementwise() {
        let mut d = Array2::<f64>::zeros((4, 4));
        for (i, &v) in [-2.0, 0.5, 1.0, 7.3].iter().enumerate() {
            d[(i, i)] = v;
        }
        let e = expm(&d);
        for (i, &v) in [-2.0_f64, 0.5, 1.0, 7.3].iter().enumerate() {
            assert_abs_diff_eq!(e[(i, i)], v.exp(), epsilon = 1e-12 * v.exp());
        }
    }

    #[test]
    fn exponential_of_nilpotent_matrix_is_exact_polynomial() {
        // exp([[0, a], [0, 0]]) = [[1, a], [0, 1]].
        let mut m = Array2::<f64>::zeros((2, 2));
        m[(0, 1)] = 3.25;
        let e = expm(&m);
        assert_abs_diff_eq!(e[(0, 0)], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e[(0, 1)], 3.25, epsilon = 1e-14);
        assert_abs_diff_eq!(e[(1, 0)], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e[(1, 1)], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn exponential_of_rotation_generator_is_rotation() {
        let theta = 11.7; // forces several squaring steps
        let mut m = Array2::<f64>::zeros((2, 2));
        m[(0, 1)] = -theta;
        m[(1, 0)] = theta;
        let e = expm(&m);
        assert_abs_diff_eq!(e[(0, 0)], theta.cos(), epsilon = 1e-12);
        assert_abs_diff_eq!(e[(0, 1)], -theta.sin(), epsilon = 1e-12);
        assert_abs_diff_eq!(e[(1, 0)], theta.sin(), epsilon = 1e-12);
        assert_abs_diff_eq!(e[(1, 1)], theta.cos(), epsilon = 1e-12);
    }

    #[test]
    fn exponential_of_antihermitian_matrix_is_unitary() {
        let n = 8;
        let mut m = Array2::from_elem((n, n), C64::new(0.0, 0.0));
        // Deterministic pseudo-random antihermitian fill.
        let mut seed = 0.37_f64;
        let mut next = || {
            seed = (seed * 997.0 + 0.123).fract();
            seed - 0.5
        };
        for i in 0..n {
            for j in i..n {
                let v = C64::new(next(), next());
                if i == j {
                    m[(i, i)] = C64::new(0.0, v.im);
                } else {
                    m[(i, j)] = v;
                    m[(j, i)] = -v.conj();
                }
            }
        }
        let e = expm(&m);
        for i in 0..n {
            for j in 0..n {
                let mut s = C64::new(0.0, 0.0);
                for k in 0..n {
                    s += e[(i, k)] * e[(j, k)].conj();
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(s.norm(), expect, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn exponential_times_inverse_exponential_is_identity() {
        let n = 6;
        let mut m = Array2::<f64>::zeros((n, n));
        let mut seed = 0.81_f64;
        for i in 0..n {
            for j in 0..n {
                seed = (seed * 313.0 + 0.517).fract();
                m[(i, j)] = seed - 0.5;
            }
        }
        let prod = expm(&m).dot(&expm(&m.mapv(|x| -x)));
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(prod[(i, j)], expect, epsilon = 1e-12);
            }
        }
    }
}
