#pragma once

#include <Eigen/Dense>
#include <string>

namespace pinnet {

/// Piecewise-linear Chua nonlinearity h(x) = (2/7)x - (3/14)(|x+1| - |x-1|).
double chua_h(double x);

/// Derivative of chua_h; at the kinks |x| = 1 the middle-segment slope -1/7
/// is used.
double chua_h_slope(double x);

/// Intrinsic node dynamics f(x, t) with an analytic Jacobian. All built-in
/// systems are autonomous and three-dimensional; LinearTest is f(x) = M x for
/// an arbitrary square M and exists for testing and calibration.
class Oscillator {
public:
    enum class Kind { Lorenz, Chen, Rossler, Chua, LinearTest };

    static Oscillator lorenz(double beta = 10.0, double alpha = 28.0,
                             double b = 8.0 / 3.0);
    static Oscillator chen(double a = 35.0, double b = 3.0, double c = 28.0);
    /// The first Rossler equation defaults to dx1/dt = -(x2 + x3); with
    /// alt_sign = true it becomes -(x2 - x3) instead.
    static Oscillator rossler(double mu = 5.7, bool alt_sign = false);
    static Oscillator chua(double k = 9.0, double l = 100.0 / 7.0);
    static Oscillator linear_test(const Eigen::MatrixXd& M);

    Kind kind() const { return kind_; }
    int dimension() const { return dim_; }

    Eigen::VectorXd eval(const Eigen::VectorXd& x, double t) const;
    Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;

    /// In-place evaluation used by the integrator hot path.
    void eval_into(const Eigen::Ref<const Eigen::VectorXd>& x,
                   Eigen::Ref<Eigen::VectorXd> dx) const;

    /// Named parameter access, e.g. "alpha" for Lorenz or "mu" for Rossler.
    double param(const std::string& name) const;
    void set_param(const std::string& name, double value);

    bool rossler_alt_sign() const { return alt_sign_; }
    void set_rossler_alt_sign(bool v);

    /// Default initial-condition box covering the attractor region.
    void default_init_box(Eigen::VectorXd& lo, Eigen::VectorXd& hi) const;

private:
    Oscillator(Kind kind, int dim) : kind_(kind), dim_(dim) {}

    Kind kind_;
    int dim_;
    double p0_ = 0, p1_ = 0, p2_ = 0;
    bool alt_sign_ = false;
    Eigen::MatrixXd M_;
};

Oscillator::Kind oscillator_kind_from_string(const std::string& name);

}  // namespace pinnet
