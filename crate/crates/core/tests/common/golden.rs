//! Reference table rows at three significant digits, shares to two decimals.

/// `(ε₁, ½‖(u−v)'‖², μ, total, gap, share %)`.
pub type PrimalRow = (f64, f64, f64, f64, f64, f64);
/// `(ε₂, quadratic, total)`; the quadratic part and the measure coincide, share 50 %.
pub type DualRow = (f64, f64, f64);
/// `(ε₁, ε₂, D_G, Υ, sum)`.
pub type CombinedRow = (f64, f64, f64, f64, f64);

pub const CLASSICAL_PRIMAL: [PrimalRow; 5] = [
    (0.1, 1.54e-01, 4.09e-02, 1.95e-01, 1.95e-01, 20.92),
    (0.05, 4.82e-02, 6.37e-03, 5.45e-02, 5.45e-02, 11.68),
    (0.025, 1.36e-02, 8.98e-04, 1.45e-02, 1.45e-02, 6.20),
    (0.0125, 3.62e-03, 1.20e-04, 3.73e-03, 3.73e-03, 3.20),
    (0.00625, 9.33e-04, 1.54e-05, 9.49e-04, 9.49e-04, 1.63),
];

pub const CLASSICAL_DUAL: [DualRow; 5] = [
    (0.05, 4.08e-03, 8.17e-03),
    (0.025, 5.10e-04, 1.02e-03),
    (0.0125, 6.38e-05, 1.28e-04),
    (0.00625, 7.98e-06, 1.60e-05),
    (0.003125, 9.97e-07, 1.99e-06),
];

pub const CLASSICAL_COMBINED: [CombinedRow; 10] = [
    (0.1, 0.1, 9.72e-02, 1.63e-01, 2.61e-01),
    (0.1, 0.05, 1.32e-01, 7.15e-02, 2.03e-01),
    (0.05, 0.05, 3.72e-02, 2.55e-02, 6.27e-02),
    (0.05, 0.025, 4.44e-02, 1.11e-02, 5.55e-02),
    (0.025, 0.025, 1.19e-02, 3.59e-03, 1.55e-02),
    (0.025, 0.0125, 1.30e-02, 1.57e-03, 1.46e-02),
    (0.0125, 0.0125, 3.38e-03, 4.78e-04, 3.86e-03),
    (0.0125, 0.00625, 3.54e-03, 2.09e-04, 3.75e-03),
    (0.00625, 0.00625, 9.03e-04, 6.17e-05, 9.65e-04),
    (0.00625, 0.003125, 9.24e-04, 2.70e-05, 9.51e-04),
];

pub const DOUBLE_PRIMAL: [PrimalRow; 5] = [
    (0.2, 2.18e-01, 8.71e-02, 3.05e-01, 3.05e-01, 28.57),
    (0.1, 7.41e-02, 1.48e-02, 8.89e-02, 8.89e-02, 16.67),
    (0.05, 2.20e-02, 2.20e-03, 2.42e-02, 2.42e-02, 9.09),
    (0.025, 6.05e-03, 3.02e-04, 6.35e-03, 6.35e-03, 4.76),
    (0.0125, 1.59e-03, 3.97e-05, 1.63e-03, 1.63e-03, 2.44),
];

pub const DOUBLE_DUAL: [DualRow; 5] = [
    (0.2, 8.53e-02, 1.71e-01),
    (0.1, 1.07e-02, 2.13e-02),
    (0.05, 1.33e-03, 2.67e-03),
    (0.025, 1.67e-04, 3.33e-04),
    (0.0125, 2.08e-05, 4.17e-05),
];

pub const DOUBLE_COMBINED: [CombinedRow; 10] = [
    (0.2, 0.2, 1.27e-01, 3.48e-01, 4.75e-01),
    (0.1, 0.2, 5.96e-02, 2.00e-01, 2.60e-01),
    (0.1, 0.1, 5.10e-02, 5.93e-02, 1.10e-01),
    (0.05, 0.1, 1.58e-02, 2.98e-02, 4.56e-02),
    (0.05, 0.05, 1.81e-02, 8.82e-03, 2.69e-02),
    (0.025, 0.05, 4.93e-03, 4.08e-03, 9.02e-03),
    (0.025, 0.025, 5.47e-03, 1.21e-03, 6.68e-03),
    (0.0125, 0.025, 1.42e-03, 5.35e-04, 1.96e-03),
    (0.0125, 0.0125, 1.51e-03, 1.59e-04, 1.67e-03),
    (0.00625, 0.0125, 3.85e-04, 6.86e-05, 4.53e-04),
];
