#pragma once

#include <Eigen/Dense>

namespace pinnet {

/// Componentwise monotone coupling output function. `identity` passes states
/// through; `affine-sine` is g(x) = a*x + b*sin(x) with a > |b|, so the slope
/// is bounded below by alpha_lower = a - |b| > 0.
class CouplingFunction {
public:
    enum class Kind { Identity, AffineSine };

    static CouplingFunction identity();
    static CouplingFunction affine_sine(double a, double b);

    Kind kind() const { return kind_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double alpha_lower() const;

    double apply(double x) const;
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

private:
    Kind kind_ = Kind::Identity;
    double a_ = 0, b_ = 0;
};

}  // namespace pinnet
