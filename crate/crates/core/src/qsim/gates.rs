//! Standard single-qubit matrices, row-major.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::{Matrix2, C_ONE, C_ZERO};

pub fn identity() -> Matrix2 {
    [[C_ONE, C_ZERO], [C_ZERO, C_ONE]]
}

pub fn hadamard() -> Matrix2 {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

pub fn pauli_x() -> Matrix2 {
    [[C_ZERO, C_ONE], [C_ONE, C_ZERO]]
}

pub fn pauli_z() -> Matrix2 {
    [[C_ONE, C_ZERO], [C_ZERO, -C_ONE]]
}

/// `diag(1, e^{iθ})`.
pub fn phase(theta: f64) -> Matrix2 {
    [[C_ONE, C_ZERO], [C_ZERO, Complex64::from_polar(1.0, theta)]]
}

/// `exp(-iθZ/2)`.
pub fn rz(theta: f64) -> Matrix2 {
    [
        [Complex64::from_polar(1.0, -theta / 2.0), C_ZERO],
        [C_ZERO, Complex64::from_polar(1.0, theta / 2.0)],
    ]
}

/// `exp(-iθX/2)`.
pub fn rx(theta: f64) -> Matrix2 {
    let c = Complex64::new((theta / 2.0).cos(), 0.0);
    let s = Complex64::new(0.0, -(theta / 2.0).sin());
    [[c, s], [s, c]]
}

pub fn matmul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[C_ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Logical gate teleported by one XY measurement at `angle` on a cluster
/// wire: `H · diag(1, e^{-i·angle})`.
pub fn teleport_step(angle: f64) -> Matrix2 {
    matmul(&hadamard(), &phase(-angle))
}
