#include "pinnet/coupling_function.hpp"

#include <cmath>
#include <stdexcept>

namespace pinnet {

CouplingFunction CouplingFunction::identity() {
    CouplingFunction g;
    g.kind_ = Kind::Identity;
    return g;
}

CouplingFunction CouplingFunction::affine_sine(double a, double b) {
    if (!(a > std::abs(b)))
        throw std::invalid_argument("affine_sine: need a > |b| for a monotone g");
    CouplingFunction g;
    g.kind_ = Kind::AffineSine;
    g.a_ = a;
    g.b_ = b;
    return g;
}

double CouplingFunction::alpha_lower() const {
    return kind_ == Kind::Identity ? 1.0 : a_ - std::abs(b_);
}

double CouplingFunction::apply(double x) const {
    return kind_ == Kind::Identity ? x : a_ * x + b_ * std::sin(x);
}

Eigen::VectorXd CouplingFunction::apply(const Eigen::VectorXd& x) const {
    if (kind_ == Kind::Identity) return x;
    return a_ * x.array() + b_ * x.array().sin();
}

}  // namespace pinnet
