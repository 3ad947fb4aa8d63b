#include "cccsafe/cbf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cccsafe {

ClassK ClassK::linear(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("ClassK::linear: rate must be > 0");
    return ClassK(Kind::Linear, rate, {});
}

ClassK ClassK::scaled_sqrt(double coeff) {
    if (!(coeff > 0.0)) throw std::invalid_argument("ClassK::scaled_sqrt: coeff must be > 0");
    return ClassK(Kind::ScaledSqrt, coeff, {});
}

ClassK ClassK::custom(std::function<double(double)> fn) {
    if (!fn) throw std::invalid_argument("ClassK::custom: callable required");
    return ClassK(Kind::Custom, 0.0, std::move(fn));
}

double ClassK::operator()(double r) const {
    switch (kind_) {
        case Kind::Linear:
            return param_ * r;
        case Kind::ScaledSqrt:
            return r < 0.0 ? -param_ * std::sqrt(-r) : param_ * std::sqrt(r);
        case Kind::Custom:
            return fn_(r);
    }
    return 0.0;
}

bool is_class_k_on_grid(const ClassK& alpha, double range, int samples) {
    if (alpha(0.0) != 0.0) return false;
    double prev = alpha(-range);
    for (int i = 1; i <= samples; ++i) {
        const double r = -range + 2.0 * range * static_cast<double>(i) / samples;
        const double value = alpha(r);
        if (!(value > prev)) return false;
        prev = value;
    }
    return true;
}

double h_dot(const LieDerivatives& lie, const Eigen::VectorXd& input) {
    if (lie.lgh.size() != input.size()) {
        throw std::invalid_argument("h_dot: input dimension does not match lgh");
    }
    return lie.lfh + lie.lgh.dot(input);
}

bool cbf_condition_holds(const BarrierEvaluation& eval, const ClassK& alpha, double tol) {
    if (tol < 0.0) throw std::invalid_argument("cbf_condition_holds: tol must be >= 0");
    if (eval.lie.lgh.norm() > tol) return true;
    return eval.lie.lfh > -alpha(eval.value);
}

Eigen::VectorXd filter_closed_form(const Eigen::VectorXd& desired, const BarrierEvaluation& eval,
                                   const ClassK& alpha, double tol) {
    const Eigen::VectorXd& lgh = eval.lie.lgh;
    if (lgh.size() != desired.size()) {
        throw std::invalid_argument("filter_closed_form: desired dimension does not match lgh");
    }
    if (lgh.size() == 1) {
        const double g = lgh[0];
        const int sign = g > tol ? 1 : (g < -tol ? -1 : 0);
        if (sign == 0) return desired;
        const double safe = scalar_safe_input(eval.lie, eval.value, alpha);
        Eigen::VectorXd out(1);
        out[0] = scalar_filter(desired[0], safe, sign);
        return out;
    }
    if (lgh.norm() <= tol) return desired;
    const double eta = -eval.lie.lfh - lgh.dot(desired) - alpha(eval.value);
    if (eta <= 0.0) return desired;
    return desired + (eta / lgh.squaredNorm()) * lgh;
}

double scalar_safe_input(const LieDerivatives& lie, double h, const ClassK& alpha) {
    if (lie.lgh.size() != 1) {
        throw std::invalid_argument("scalar_safe_input: lgh must be scalar");
    }
    const double g = lie.lgh[0];
    if (g == 0.0) {
        throw std::invalid_argument("scalar_safe_input: lgh must be nonzero");
    }
    return -(lie.lfh + alpha(h)) / g;
}

double scalar_filter(double desired, double safe, int lgh_sign) {
    if (lgh_sign < 0) return std::min(desired, safe);
    if (lgh_sign > 0) return std::max(desired, safe);
    return desired;
}

double extend_cbf(double h, double lfh, const ClassK& alpha) {
    if (!alpha.differentiable()) {
        throw std::invalid_argument("extend_cbf: alpha must be continuously differentiable (linear)");
    }
    return lfh + alpha(h);
}

}  // namespace cccsafe
