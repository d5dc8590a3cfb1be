#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "hypercone/common.hpp"
#include "hypercone/jet.hpp"

namespace hypercone::deriv {

// Open coordinate box [lo, hi] per axis on which a map is declared smooth.
struct Box {
    Eigen::VectorXd lo, hi;

    static Box cube(int m, double half_width) {
        Box b;
        b.lo = Eigen::VectorXd::Constant(m, -half_width);
        b.hi = Eigen::VectorXd::Constant(m, half_width);
        return b;
    }
    static Box of(std::initializer_list<std::pair<double, double>> ranges) {
        Box b;
        b.lo.resize(static_cast<int>(ranges.size()));
        b.hi.resize(static_cast<int>(ranges.size()));
        int i = 0;
        for (auto [l, h] : ranges) {
            b.lo[i] = l;
            b.hi[i] = h;
            ++i;
        }
        return b;
    }
    int dim() const { return static_cast<int>(lo.size()); }
    bool contains(const Eigen::VectorXd& x, double margin = 0.0) const {
        for (int i = 0; i < dim(); ++i)
            if (x[i] < lo[i] + margin || x[i] > hi[i] - margin) return false;
        return true;
    }
};

// Parametric map from m real parameters to an ambient vector. Evaluation is
// available on plain doubles and on second-order jets; both are built from
// the same closed-form rule.
class ParamMap {
  public:
    using EvalD = std::function<void(std::span<const double>, std::span<double>)>;
    using EvalJ = std::function<void(std::span<const Jet>, std::span<Jet>)>;

    ParamMap() = default;
    ParamMap(int domain_dim, int ambient_dim, Box box, EvalD fd, EvalJ fj)
        : m_(domain_dim), n_(ambient_dim), box_(std::move(box)),
          f_d_(std::move(fd)), f_j_(std::move(fj)) {}

    int domain_dim() const { return m_; }
    int ambient_dim() const { return n_; }
    const Box& box() const { return box_; }

    Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;
    void eval_raw(std::span<const double> in, std::span<double> out) const { f_d_(in, out); }
    void eval_jets(std::span<const Jet> in, std::span<Jet> out) const { f_j_(in, out); }

  private:
    int m_ = 0, n_ = 0;
    Box box_;
    EvalD f_d_;
    EvalJ f_j_;
};

// Wraps a generic callable (templated on the scalar type) into a ParamMap.
template <class F>
ParamMap make_param_map(int domain_dim, int ambient_dim, Box box, F f) {
    auto fd = [f](std::span<const double> in, std::span<double> out) { f(in, out); };
    auto fj = [f](std::span<const Jet> in, std::span<Jet> out) { f(in, out); };
    return ParamMap(domain_dim, ambient_dim, std::move(box), std::move(fd), std::move(fj));
}

// Value, first and second partial derivatives of a map at a point. Second
// derivatives are stored once per unordered pair (i <= j).
struct Jet2 {
    Eigen::VectorXd value;
    std::vector<Eigen::VectorXd> grad;    // m entries
    std::vector<Eigen::VectorXd> hess;    // m(m+1)/2 entries
    int m = 0;

    static int sym_index(int i, int j, int m) {
        if (i > j) std::swap(i, j);
        return i * m - i * (i - 1) / 2 + (j - i);
    }
    const Eigen::VectorXd& d1(int i) const { return grad[i]; }
    const Eigen::VectorXd& d2(int i, int j) const { return hess[sym_index(i, j, m)]; }
};

enum class JetBackend { ExactJet, FiniteDifference };

// Evaluates the 2-jet of a map. The exact backend propagates truncated
// Taylor arithmetic through the closed form; the finite-difference backend
// uses central differences with one Richardson extrapolation level.
Jet2 eval_jet2(const ParamMap& map, const Eigen::VectorXd& x,
               JetBackend backend = JetBackend::ExactJet);

// Third directional derivative along dir, obtained by differencing exact
// 2-jets along the direction.
Eigen::VectorXd directional_derivative3(const ParamMap& map, const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& dir);

// Finite-difference step sizes used by the FD backend.
double fd_step_first(double coord);
double fd_step_second(double coord);

}  // namespace hypercone::deriv
