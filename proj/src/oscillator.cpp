#include "pinnet/oscillator.hpp"

#include <cmath>
#include <stdexcept>

namespace pinnet {

double chua_h(double x) {
    return (2.0 / 7.0) * x - (3.0 / 14.0) * (std::abs(x + 1) - std::abs(x - 1));
}

double chua_h_slope(double x) {
    if (x > -1.0 && x < 1.0) return 2.0 / 7.0 - 3.0 / 7.0;  // -1/7
    if (x == -1.0 || x == 1.0) return -1.0 / 7.0;           // kink: middle segment
    return 2.0 / 7.0;
}

Oscillator Oscillator::lorenz(double beta, double alpha, double b) {
    Oscillator o(Kind::Lorenz, 3);
    o.p0_ = beta;
    o.p1_ = alpha;
    o.p2_ = b;
    return o;
}

Oscillator Oscillator::chen(double a, double b, double c) {
    Oscillator o(Kind::Chen, 3);
    o.p0_ = a;
    o.p1_ = b;
    o.p2_ = c;
    return o;
}

Oscillator Oscillator::rossler(double mu, bool alt_sign) {
    Oscillator o(Kind::Rossler, 3);
    o.p0_ = mu;
    o.alt_sign_ = alt_sign;
    return o;
}

Oscillator Oscillator::chua(double k, double l) {
    Oscillator o(Kind::Chua, 3);
    o.p0_ = k;
    o.p1_ = l;
    return o;
}

Oscillator Oscillator::linear_test(const Eigen::MatrixXd& M) {
    if (M.rows() != M.cols() || M.rows() < 1)
        throw std::invalid_argument("linear_test: M must be square, n >= 1");
    Oscillator o(Kind::LinearTest, static_cast<int>(M.rows()));
    o.M_ = M;
    return o;
}

void Oscillator::eval_into(const Eigen::Ref<const Eigen::VectorXd>& x,
                           Eigen::Ref<Eigen::VectorXd> dx) const {
    switch (kind_) {
        case Kind::Lorenz:
            dx[0] = p0_ * (x[1] - x[0]);
            dx[1] = p1_ * x[0] - x[1] - x[0] * x[2];
            dx[2] = x[0] * x[1] - p2_ * x[2];
            break;
        case Kind::Chen:
            dx[0] = p0_ * (x[1] - x[0]);
            dx[1] = (p2_ - p0_) * x[0] - x[1] * x[2] + p2_ * x[1];
            dx[2] = x[0] * x[1] - p1_ * x[2];
            break;
        case Kind::Rossler:
            dx[0] = alt_sign_ ? -(x[1] - x[2]) : -(x[1] + x[2]);
            dx[1] = x[0] + 0.2 * x[1];
            dx[2] = 0.2 + x[2] * (x[0] - p0_);
            break;
        case Kind::Chua:
            dx[0] = p0_ * (x[1] - chua_h(x[0]));
            dx[1] = x[0] - x[1] + x[2];
            dx[2] = -p1_ * x[1];
            break;
        case Kind::LinearTest:
            dx.noalias() = M_ * x;
            break;
    }
}

Eigen::VectorXd Oscillator::eval(const Eigen::VectorXd& x, double t) const {
    (void)t;  // all built-in systems are autonomous
    if (x.size() != dim_) throw std::invalid_argument("eval: wrong state dimension");
    if (!x.allFinite()) throw std::invalid_argument("eval: non-finite state");
    Eigen::VectorXd dx(dim_);
    eval_into(x, dx);
    return dx;
}

Eigen::MatrixXd Oscillator::jacobian(const Eigen::VectorXd& x) const {
    if (x.size() != dim_) throw std::invalid_argument("jacobian: wrong state dimension");
    if (!x.allFinite()) throw std::invalid_argument("jacobian: non-finite state");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(dim_, dim_);
    switch (kind_) {
        case Kind::Lorenz:
            J << -p0_, p0_, 0,
                 p1_ - x[2], -1, -x[0],
                 x[1], x[0], -p2_;
            break;
        case Kind::Chen:
            J << -p0_, p0_, 0,
                 p2_ - p0_, p2_ - x[2], -x[1],
                 x[1], x[0], -p1_;
            break;
        case Kind::Rossler:
            J << 0, -1, (alt_sign_ ? 1.0 : -1.0),
                 1, 0.2, 0,
                 x[2], 0, x[0] - p0_;
            break;
        case Kind::Chua:
            J << -p0_ * chua_h_slope(x[0]), p0_, 0,
                 1, -1, 1,
                 0, -p1_, 0;
            break;
        case Kind::LinearTest:
            J = M_;
            break;
    }
    return J;
}

double Oscillator::param(const std::string& name) const {
    switch (kind_) {
        case Kind::Lorenz:
            if (name == "beta") return p0_;
            if (name == "alpha") return p1_;
            if (name == "b") return p2_;
            break;
        case Kind::Chen:
            if (name == "a") return p0_;
            if (name == "b") return p1_;
            if (name == "c") return p2_;
            break;
        case Kind::Rossler:
            if (name == "mu") return p0_;
            break;
        case Kind::Chua:
            if (name == "k") return p0_;
            if (name == "l") return p1_;
            break;
        case Kind::LinearTest:
            break;
    }
    throw std::invalid_argument("unknown oscillator parameter: " + name);
}

void Oscillator::set_param(const std::string& name, double value) {
    if (!std::isfinite(value))
        throw std::invalid_argument("oscillator parameter must be finite: " + name);
    switch (kind_) {
        case Kind::Lorenz:
            if (name == "beta") { p0_ = value; return; }
            if (name == "alpha") { p1_ = value; return; }
            if (name == "b") { p2_ = value; return; }
            break;
        case Kind::Chen:
            if (name == "a") { p0_ = value; return; }
            if (name == "b") { p1_ = value; return; }
            if (name == "c") { p2_ = value; return; }
            break;
        case Kind::Rossler:
            if (name == "mu") { p0_ = value; return; }
            break;
        case Kind::Chua:
            if (name == "k") { p0_ = value; return; }
            if (name == "l") { p1_ = value; return; }
            break;
        case Kind::LinearTest:
            break;
    }
    throw std::invalid_argument("unknown oscillator parameter: " + name);
}

void Oscillator::set_rossler_alt_sign(bool v) {
    if (kind_ != Kind::Rossler)
        throw std::invalid_argument("rossler_alt_sign only applies to Rossler");
    alt_sign_ = v;
}

void Oscillator::default_init_box(Eigen::VectorXd& lo, Eigen::VectorXd& hi) const {
    lo.resize(dim_);
    hi.resize(dim_);
    switch (kind_) {
        case Kind::Lorenz:
        case Kind::Chen:
            lo << -20, -20, 0;
            hi << 20, 20, 50;
            break;
        case Kind::Rossler:
            lo << -10, -10, -10;
            hi << 10, 10, 10;
            break;
        case Kind::Chua:
            lo << -2, -2, -2;
            hi << 2, 2, 2;
            break;
        case Kind::LinearTest:
            lo.setConstant(-1);
            hi.setConstant(1);
            break;
    }
}

Oscillator::Kind oscillator_kind_from_string(const std::string& name) {
    if (name == "lorenz") return Oscillator::Kind::Lorenz;
    if (name == "chen") return Oscillator::Kind::Chen;
    if (name == "rossler") return Oscillator::Kind::Rossler;
    if (name == "chua") return Oscillator::Kind::Chua;
    if (name == "linear-test") return Oscillator::Kind::LinearTest;
    throw std::invalid_argument("unknown oscillator kind: " + name);
}

}  // namespace pinnet
