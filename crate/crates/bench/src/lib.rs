//! Fixtures shared by the benchmarks.

use grslice_core::poisson::GroupChart;
use grslice_core::polynomial::Polynomial;
use grslice_core::slice::slice_generators;

/// Slice sizes small enough to benchmark repeatedly.
pub const SLICE_SIZES: &[(usize, usize)] = &[(2, 1), (2, 2), (3, 1)];

pub fn slice_ideal(n: usize, k: usize) -> Vec<Polynomial> {
    slice_generators(n, k).expect("valid slice size")
}

/// Principal 2×2 minor coefficient of order `s` on the chart, a typical
/// bracket operand of moderate size.
pub fn principal_minor(chart: &GroupChart, s: usize) -> Polynomial {
    chart.minor_series(&[0, 1], &[0, 1]).coeff(s).clone()
}
