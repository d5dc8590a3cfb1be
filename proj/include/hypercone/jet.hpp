#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "hypercone/common.hpp"

namespace hypercone::deriv {

// Truncated second-order Taylor scalar: value, gradient and Hessian with
// respect to m independent parameters. Propagating these through a closed
// form gives exact first and second partial derivatives.
class Jet {
  public:
    double val = 0.0;
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;

    Jet() = default;
    Jet(double v, int m)
        : val(v), grad(Eigen::VectorXd::Zero(m)), hess(Eigen::MatrixXd::Zero(m, m)) {}

    static Jet variable(double v, int index, int m) {
        Jet j(v, m);
        j.grad[index] = 1.0;
        return j;
    }
    static Jet constant(double v, int m) { return Jet(v, m); }

    int dim() const { return static_cast<int>(grad.size()); }

    Jet operator-() const {
        Jet r(*this);
        r.val = -r.val;
        r.grad = -r.grad;
        r.hess = -r.hess;
        return r;
    }

    Jet& operator+=(const Jet& o) {
        val += o.val;
        grad += o.grad;
        hess += o.hess;
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        val -= o.val;
        grad -= o.grad;
        hess -= o.hess;
        return *this;
    }
    Jet& operator+=(double c) {
        val += c;
        return *this;
    }
    Jet& operator-=(double c) {
        val -= c;
        return *this;
    }
    Jet& operator*=(double c) {
        val *= c;
        grad *= c;
        hess *= c;
        return *this;
    }
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator+(Jet a, double c) { return a += c; }
inline Jet operator+(double c, Jet a) { return a += c; }
inline Jet operator-(Jet a, double c) { return a -= c; }
inline Jet operator-(double c, const Jet& a) { return (-a) += c; }
inline Jet operator*(Jet a, double c) { return a *= c; }
inline Jet operator*(double c, Jet a) { return a *= c; }

inline Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.val * b.val, a.dim());
    r.grad = a.grad * b.val + b.grad * a.val;
    r.hess = a.hess * b.val + b.hess * a.val + a.grad * b.grad.transpose() +
             b.grad * a.grad.transpose();
    return r;
}

// Composition with a scalar function given value and first two derivatives
// at x.val.
inline Jet chain(const Jet& x, double f, double df, double d2f) {
    Jet r(f, x.dim());
    r.grad = df * x.grad;
    r.hess = df * x.hess + d2f * (x.grad * x.grad.transpose());
    return r;
}

inline Jet inverse(const Jet& x) {
    if (x.val == 0.0) throw EvaluationError("jet: division by zero");
    const double iv = 1.0 / x.val;
    return chain(x, iv, -iv * iv, 2.0 * iv * iv * iv);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * inverse(b); }
inline Jet operator/(const Jet& a, double c) { return a * (1.0 / c); }
inline Jet operator/(double c, const Jet& b) { return inverse(b) *= c; }

inline Jet cosh(const Jet& x) { return chain(x, std::cosh(x.val), std::sinh(x.val), std::cosh(x.val)); }
inline Jet sinh(const Jet& x) { return chain(x, std::sinh(x.val), std::cosh(x.val), std::sinh(x.val)); }
inline Jet tanh(const Jet& x) {
    const double t = std::tanh(x.val);
    const double s = 1.0 - t * t;
    return chain(x, t, s, -2.0 * t * s);
}
inline Jet exp(const Jet& x) {
    const double e = std::exp(x.val);
    return chain(x, e, e, e);
}
inline Jet log(const Jet& x) {
    if (x.val <= 0.0) throw EvaluationError("jet: log of non-positive value");
    return chain(x, std::log(x.val), 1.0 / x.val, -1.0 / (x.val * x.val));
}
inline Jet sqrt(const Jet& x) {
    if (x.val <= 0.0) throw EvaluationError("jet: sqrt of non-positive value");
    const double s = std::sqrt(x.val);
    return chain(x, s, 0.5 / s, -0.25 / (s * x.val));
}
inline Jet sin(const Jet& x) { return chain(x, std::sin(x.val), std::cos(x.val), -std::sin(x.val)); }
inline Jet cos(const Jet& x) { return chain(x, std::cos(x.val), -std::sin(x.val), -std::cos(x.val)); }

inline Jet pow(const Jet& x, int n) {
    if (n == 0) return Jet::constant(1.0, x.dim());
    if (n == 1) return x;
    const double f = std::pow(x.val, n);
    const double df = n * std::pow(x.val, n - 1);
    const double d2f = double(n) * (n - 1) * std::pow(x.val, n - 2);
    return chain(x, f, df, d2f);
}

}  // namespace hypercone::deriv
