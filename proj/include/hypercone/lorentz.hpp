#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "hypercone/common.hpp"

namespace hypercone::lorentz {

// Vector of the ambient Minkowski space L^{n+1}. Coordinate 0 is timelike,
// the signature of the inner product is (-,+,...,+).
using Vec = Eigen::VectorXd;

double minkowski_dot(const Vec& x, const Vec& y);
inline double minkowski_norm2(const Vec& x) { return minkowski_dot(x, x); }

// Shared basis table for rank-4 alternating tensors over a given ambient
// dimension: all sorted index quadruples in lexicographic order.
struct WedgeBasis {
    int ambient_dim = 0;
    std::vector<std::array<int, 4>> quadruples;
    int index_of(int i, int j, int k, int l) const;  // sorted input required
};

const WedgeBasis& wedge_basis(int ambient_dim);

// Element of Lambda^4 L^{n+1} in dense coefficient storage on the sorted
// wedge basis. Antisymmetry is structural: only sorted quadruples carry a
// coefficient.
class Multivector4 {
  public:
    explicit Multivector4(int ambient_dim);

    int ambient_dim() const { return basis_->ambient_dim; }
    int basis_size() const { return static_cast<int>(coeffs_.size()); }

    double coeff(int j) const { return coeffs_[j]; }
    double& coeff(int j) { return coeffs_[j]; }
    const Eigen::VectorXd& coeffs() const { return coeffs_; }
    Eigen::VectorXd& coeffs() { return coeffs_; }

    const std::array<int, 4>& quadruple(int j) const { return basis_->quadruples[j]; }

    // Sign of <A_J, A_J> under the induced Minkowski product: -1 when the
    // quadruple contains the timelike axis, +1 otherwise.
    int metric_sign(int j) const { return basis_->quadruples[j][0] == 0 ? -1 : +1; }
    // Split sign used in coordinate equations: +1 on timelike basis
    // elements, -1 on spacelike ones.
    int epsilon(int j) const { return -metric_sign(j); }

    Multivector4& operator+=(const Multivector4& other);
    Multivector4& operator-=(const Multivector4& other);
    Multivector4& operator*=(double s);

    friend Multivector4 operator+(Multivector4 a, const Multivector4& b) { return a += b; }
    friend Multivector4 operator-(Multivector4 a, const Multivector4& b) { return a -= b; }
    friend Multivector4 operator*(double s, Multivector4 a) { return a *= s; }
    friend Multivector4 operator*(Multivector4 a, double s) { return a *= s; }

    // Euclidean norm of the coefficient vector; used for residuals where an
    // indefinite norm would hide error.
    double coeff_norm() const { return coeffs_.norm(); }

  private:
    const WedgeBasis* basis_;
    Eigen::VectorXd coeffs_;
};

// Coefficient on each sorted quadruple (i<j<k<l) is the determinant of the
// rows a,b,c,d restricted to those columns.
Multivector4 wedge4(const Vec& a, const Vec& b, const Vec& c, const Vec& d);

// Inner product induced by the Minkowski metric: for simple 4-vectors it
// equals det(<a_i, b_j>); extends bilinearly with the per-basis sign.
double multivector_dot(const Multivector4& p, const Multivector4& q);

// Number of wedge basis elements containing the timelike axis, C(n,3) for
// ambient dimension n+1.
int timelike_basis_count(int ambient_dim);

// Gram-Schmidt with the Minkowski product. Output is ordered timelike
// first, Gram matrix diag(-1,..,-1,+1,..,+1). Throws DegeneracyError when a
// pivot falls under 1e-10 times the input scale and SignatureError when the
// resulting signature does not match the expectation.
std::vector<Vec> orthonormalize(const std::vector<Vec>& vectors,
                                int expected_timelike, int expected_spacelike);

}  // namespace hypercone::lorentz
