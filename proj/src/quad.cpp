#include "pinnet/quad.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "pinnet/rng.hpp"

namespace pinnet {

std::vector<double> delta_grid(double max, double step) {
    if (step <= 0 || max < 0) throw std::invalid_argument("delta_grid: bad bounds");
    std::vector<double> g;
    for (double d = 0; d <= max + 1e-12; d += step) g.push_back(d);
    return g;
}

QuadEstimate estimate_quad(const Oscillator& osc, const Eigen::VectorXd& P,
                           const Eigen::VectorXd& box_lo,
                           const Eigen::VectorXd& box_hi, int samples,
                           std::uint64_t seed,
                           const std::vector<double>& delta_grid) {
    const int n = osc.dimension();
    if (P.size() != n || box_lo.size() != n || box_hi.size() != n)
        throw std::invalid_argument("estimate_quad: dimension mismatch");
    if ((P.array() <= 0).any())
        throw std::invalid_argument("estimate_quad: P must be positive diagonal");
    if ((box_lo.array() >= box_hi.array()).any())
        throw std::invalid_argument("estimate_quad: empty box");
    if (samples < 1000) throw std::invalid_argument("estimate_quad: samples >= 1000");
    if (delta_grid.empty()) throw std::invalid_argument("estimate_quad: empty grid");

    std::vector<double> grid = delta_grid;
    std::sort(grid.begin(), grid.end());

    Rng rng(seed);
    Eigen::VectorXd x(n), y(n), d(n), fd(n), fx(n), fy(n);

    // For componentwise-equal Delta = delta*I the per-pair quotient is
    // (a - delta*b)/|d|^2 with a = d.P.(f(x)-f(y)) and b = d.P.d, so one pass
    // over the samples suffices for the whole grid.
    double max_ratio = -std::numeric_limits<double>::infinity();  // a/b
    std::vector<double> worst(grid.size(), -std::numeric_limits<double>::infinity());
    for (int s = 0; s < samples; ++s) {
        for (int c = 0; c < n; ++c) x[c] = rng.uniform(box_lo[c], box_hi[c]);
        for (int c = 0; c < n; ++c) y[c] = rng.uniform(box_lo[c], box_hi[c]);
        d = x - y;
        const double n2 = d.squaredNorm();
        if (n2 == 0) continue;
        osc.eval_into(x, fx);
        osc.eval_into(y, fy);
        fd = fx - fy;
        const double a = (d.array() * P.array() * fd.array()).sum();
        const double b = (d.array() * P.array() * d.array()).sum();
        max_ratio = std::max(max_ratio, a / b);
        for (size_t g = 0; g < grid.size(); ++g)
            worst[g] = std::max(worst[g], (a - grid[g] * b) / n2);
    }

    for (size_t g = 0; g < grid.size(); ++g) {
        if (worst[g] < 0) {
            QuadEstimate est;
            est.P = P;
            est.Delta = Eigen::VectorXd::Constant(n, grid[g]);
            est.eta = -worst[g];
            est.box_lo = box_lo;
            est.box_hi = box_hi;
            est.samples = samples;
            return est;
        }
    }
    throw std::runtime_error(
        "estimate_quad: no grid point achieves a negative margin (empirical "
        "threshold " +
        std::to_string(max_ratio) + "); extend the Delta grid or tighten the box");
}

}  // namespace pinnet
