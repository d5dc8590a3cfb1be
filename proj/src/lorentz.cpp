#include "hypercone/lorentz.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace hypercone::lorentz {

double minkowski_dot(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) {
        throw DimensionError("minkowski_dot: dimension mismatch " +
                             std::to_string(x.size()) + " vs " + std::to_string(y.size()));
    }
    if (x.size() < 1) throw DimensionError("minkowski_dot: empty vector");
    return -x[0] * y[0] + x.tail(x.size() - 1).dot(y.tail(y.size() - 1));
}

int WedgeBasis::index_of(int i, int j, int k, int l) const {
    // Lexicographic rank of the sorted quadruple.
    const int d = ambient_dim;
    auto choose3 = [](int n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; };
    auto choose2 = [](int n) { return n < 2 ? 0 : n * (n - 1) / 2; };
    int rank = 0;
    for (int x = 0; x < i; ++x) rank += choose3(d - 1 - x);
    for (int x = i + 1; x < j; ++x) rank += choose2(d - 1 - x);
    for (int x = j + 1; x < k; ++x) rank += d - 1 - x;
    rank += l - k - 1;
    return rank;
}

const WedgeBasis& wedge_basis(int ambient_dim) {
    static std::mutex mtx;
    static std::map<int, WedgeBasis> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(ambient_dim);
    if (it == cache.end()) {
        if (ambient_dim < 4) throw DimensionError("wedge_basis: ambient dimension < 4");
        WedgeBasis basis;
        basis.ambient_dim = ambient_dim;
        for (int i = 0; i < ambient_dim; ++i)
            for (int j = i + 1; j < ambient_dim; ++j)
                for (int k = j + 1; k < ambient_dim; ++k)
                    for (int l = k + 1; l < ambient_dim; ++l)
                        basis.quadruples.push_back({i, j, k, l});
        it = cache.emplace(ambient_dim, std::move(basis)).first;
    }
    return it->second;
}

Multivector4::Multivector4(int ambient_dim)
    : basis_(&wedge_basis(ambient_dim)),
      coeffs_(Eigen::VectorXd::Zero(static_cast<int>(basis_->quadruples.size()))) {}

Multivector4& Multivector4::operator+=(const Multivector4& other) {
    if (ambient_dim() != other.ambient_dim())
        throw DimensionError("Multivector4: ambient dimension mismatch");
    coeffs_ += other.coeffs_;
    return *this;
}

Multivector4& Multivector4::operator-=(const Multivector4& other) {
    if (ambient_dim() != other.ambient_dim())
        throw DimensionError("Multivector4: ambient dimension mismatch");
    coeffs_ -= other.coeffs_;
    return *this;
}

Multivector4& Multivector4::operator*=(double s) {
    coeffs_ *= s;
    return *this;
}

Multivector4 wedge4(const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
    const auto dim = a.size();
    if (b.size() != dim || c.size() != dim || d.size() != dim)
        throw DimensionError("wedge4: dimension mismatch");
    Multivector4 out(static_cast<int>(dim));
    const WedgeBasis& basis = wedge_basis(static_cast<int>(dim));
    Eigen::Matrix4d minor;
    for (int j = 0; j < out.basis_size(); ++j) {
        const auto& q = basis.quadruples[j];
        for (int col = 0; col < 4; ++col) {
            minor(0, col) = a[q[col]];
            minor(1, col) = b[q[col]];
            minor(2, col) = c[q[col]];
            minor(3, col) = d[q[col]];
        }
        out.coeff(j) = minor.determinant();
    }
    return out;
}

double multivector_dot(const Multivector4& p, const Multivector4& q) {
    if (p.ambient_dim() != q.ambient_dim())
        throw DimensionError("multivector_dot: ambient dimension mismatch");
    double sum = 0.0;
    for (int j = 0; j < p.basis_size(); ++j)
        sum += p.metric_sign(j) * p.coeff(j) * q.coeff(j);
    return sum;
}

int timelike_basis_count(int ambient_dim) {
    const int n = ambient_dim - 1;
    return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6;
}

std::vector<Vec> orthonormalize(const std::vector<Vec>& vectors,
                                int expected_timelike, int expected_spacelike) {
    if (vectors.empty()) return {};
    const auto dim = vectors.front().size();
    double scale = 0.0;
    for (const auto& v : vectors) {
        if (v.size() != dim) throw DimensionError("orthonormalize: dimension mismatch");
        scale = std::max(scale, v.norm());
    }
    const double pivot_floor = 1e-10 * scale;

    std::vector<Vec> units;
    std::vector<int> signs;
    for (const auto& v : vectors) {
        Vec r = v;
        for (size_t k = 0; k < units.size(); ++k)
            r -= signs[k] * minkowski_dot(r, units[k]) * units[k];
        const double n2 = minkowski_norm2(r);
        const double pivot = std::sqrt(std::fabs(n2));
        if (pivot < pivot_floor)
            throw DegeneracyError("orthonormalize: near-degenerate pivot " + std::to_string(pivot));
        units.push_back(r / pivot);
        signs.push_back(n2 < 0.0 ? -1 : +1);
    }

    int timelike = 0;
    for (int s : signs)
        if (s < 0) ++timelike;
    const int spacelike = static_cast<int>(signs.size()) - timelike;
    if (timelike != expected_timelike || spacelike != expected_spacelike)
        throw SignatureError("orthonormalize: signature (" + std::to_string(timelike) + "," +
                             std::to_string(spacelike) + ") does not match expected (" +
                             std::to_string(expected_timelike) + "," +
                             std::to_string(expected_spacelike) + ")");

    std::vector<Vec> out;
    out.reserve(units.size());
    for (size_t k = 0; k < units.size(); ++k)
        if (signs[k] < 0) out.push_back(units[k]);
    for (size_t k = 0; k < units.size(); ++k)
        if (signs[k] > 0) out.push_back(units[k]);
    return out;
}

}  // namespace hypercone::lorentz
