#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "pinnet/oscillator.hpp"

namespace pinnet {

/// Sampling-based estimate of the decrement constants (P, Delta, eta) of the
/// per-oscillator quadratic condition
///   (x-y)^T P (f(x) - Delta x - f(y) + Delta y) <= -eta |x-y|^2.
/// Sampling over a box cannot certify the condition globally, so `certified`
/// is always false; the estimate is a sanity tool for gain selection.
struct QuadEstimate {
    Eigen::VectorXd P;       // positive diagonal weights
    Eigen::VectorXd Delta;   // componentwise-equal diagonal shift
    double eta = 0;          // observed decrement margin, > 0 when usable
    Eigen::VectorXd box_lo, box_hi;
    int samples = 0;
    bool certified = false;
};

/// Draws `samples` pairs (x, y) uniform in the box and, for each candidate
/// shift in `delta_grid` (ascending), computes the empirical maximum of
///   (x-y)^T P (f(x) - d x - f(y) + d y) / |x-y|^2.
/// Returns the smallest grid value with a negative maximum; eta is its
/// negation. Throws if no grid point achieves negativity.
QuadEstimate estimate_quad(const Oscillator& osc, const Eigen::VectorXd& P,
                           const Eigen::VectorXd& box_lo,
                           const Eigen::VectorXd& box_hi, int samples,
                           std::uint64_t seed,
                           const std::vector<double>& delta_grid);

/// Convenience grid {0, step, 2*step, ..., max}.
std::vector<double> delta_grid(double max, double step);

}  // namespace pinnet
