#pragma once

#include <Eigen/Dense>

#include <functional>

namespace cccsafe {

/// Extended class-K-infinity function used in barrier conditions. Linear and
/// scaled-sqrt variants cover the configurable cases; Custom admits any
/// callable with alpha(0) = 0, strictly increasing.
class ClassK {
  public:
    enum class Kind { Linear, ScaledSqrt, Custom };

    /// alpha(r) = rate * r; the only continuously differentiable variant.
    static ClassK linear(double rate);
    /// alpha(r) = coeff * sign(r) * sqrt(|r|).
    static ClassK scaled_sqrt(double coeff);
    static ClassK custom(std::function<double(double)> fn);

    double operator()(double r) const;

    Kind kind() const { return kind_; }
    double parameter() const { return param_; }
    /// True only for the Linear variant, as required by extend_cbf.
    bool differentiable() const { return kind_ == Kind::Linear; }

  private:
    ClassK(Kind kind, double param, std::function<double(double)> fn)
        : kind_(kind), param_(param), fn_(std::move(fn)) {}

    Kind kind_;
    double param_ = 0.0;
    std::function<double(double)> fn_;
};

/// Checks alpha(0) = 0 and strict monotonicity on a uniform grid over
/// [-range, range]; a cheap certificate for Custom callables.
bool is_class_k_on_grid(const ClassK& alpha, double range, int samples);

/// Lie derivatives of a barrier along the drift and control directions:
/// hdot(x, u) = lfh + lgh . u.
struct LieDerivatives {
    double lfh = 0.0;
    Eigen::VectorXd lgh;
};

/// Barrier value, state gradient and Lie derivatives at one state.
struct BarrierEvaluation {
    double value = 0.0;
    Eigen::Vector3d gradient = Eigen::Vector3d::Zero();
    LieDerivatives lie;
};

/// hdot = lfh + lgh . u. Throws std::invalid_argument on dimension mismatch.
double h_dot(const LieDerivatives& lie, const Eigen::VectorXd& input);

/// Pointwise barrier-function condition: sup_u hdot > -alpha(h). The sup is
/// infinite whenever lgh is nonzero, so only the lgh = 0 case is a real test.
bool cbf_condition_holds(const BarrierEvaluation& eval, const ClassK& alpha, double tol = 1e-12);

/// Minimum-norm safety filter, closed form of the QP
///   min ||u - desired||^2  s.t.  lfh + lgh . u >= -alpha(h):
/// u = desired + max{0, eta} lgh / ||lgh||^2 with
/// eta = -lfh - lgh . desired - alpha(h), and u = desired when lgh = 0.
/// Single-input problems are routed through the scalar min/max form so the
/// two formulations agree bit for bit.
Eigen::VectorXd filter_closed_form(const Eigen::VectorXd& desired, const BarrierEvaluation& eval,
                                   const ClassK& alpha, double tol = 1e-12);

/// Scalar-input safe command k_s = -(lfh + alpha(h)) / lgh.
/// Throws std::invalid_argument unless lgh is a nonzero scalar.
double scalar_safe_input(const LieDerivatives& lie, double h, const ClassK& alpha);

/// Scalar-input filter: min{desired, safe} when lgh < 0, desired when
/// lgh = 0, max{desired, safe} when lgh > 0.
double scalar_filter(double desired, double safe, int lgh_sign);

/// Extended barrier h_e = lfh + alpha(h) for measures with lgh identically
/// zero. Requires a continuously differentiable alpha (Linear variant).
double extend_cbf(double h, double lfh, const ClassK& alpha);

}  // namespace cccsafe
