#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "hypercone/immersion.hpp"
#include "hypercone/lorentz.hpp"
#include "hypercone/param_map.hpp"

namespace hypercone::hyperbolic {

using lorentz::Vec;

// Point on the upper sheet of the hyperboloid <x,x> = -1, x0 > 0.
class HPoint {
  public:
    static HPoint from(Vec x);
    const Vec& coords() const { return x_; }
    int ambient_dim() const { return static_cast<int>(x_.size()); }

  private:
    explicit HPoint(Vec x) : x_(std::move(x)) {}
    Vec x_;
};

// Radial projection of a timelike future vector onto the hyperboloid.
Vec project_to_hyperboloid(const Vec& x);

struct HTangent {
    HPoint base;
    Vec vec;
};
HTangent make_tangent(const HPoint& p, const Vec& v);

// exp_p(v) = cosh|v| p + sinh|v| v/|v|, with the series limit at v = 0.
HPoint exp_point(const HPoint& p, const Vec& v);

// arccosh(-<p,q>).
double dist(const HPoint& p, const HPoint& q);

enum class UmbilicKind { Equidistant, Horosphere, GeodesicSphere, TotallyGeodesic };

// One of the four umbilical inclusion families of H^n, anchored at a
// canonical representative; codimension > 1 composes a hypersurface
// inclusion with totally geodesic steps, so the extra normals are constant.
// The first normal points along the mean curvature vector.
class UmbilicalInclusion {
  public:
    static UmbilicalInclusion equidistant(double d, int n, int codim = 1);
    static UmbilicalInclusion horosphere(int n, int codim = 1);
    static UmbilicalInclusion geodesic_sphere(double rho, int n, int codim = 1);
    static UmbilicalInclusion totally_geodesic(int n, int codim = 1);

    UmbilicKind kind() const { return kind_; }
    double parameter() const { return param_; }
    int space_dim() const { return n_; }              // n of H^n
    int ambient_coord_dim() const { return n_ + 1; }
    int codim() const { return codim_; }
    int model_dim() const { return n_ - codim_; }
    int model_coord_dim() const;
    immersion::Ambient model_ambient() const;

    // Intrinsic sectional curvature c of the inclusion.
    double curvature() const;
    // Norm of the mean curvature vector; classifies the family
    // (< 1 equidistant / totally geodesic, = 1 horosphere, > 1 sphere).
    double mean_curvature_norm() const;

    template <class S>
    void include_point(std::span<const S> model_pt, std::span<S> out) const;
    template <class S>
    void normal_at(int j, std::span<const S> model_pt, std::span<S> out) const;
    template <class S>
    void model_chart(std::span<const S> params, std::span<S> out) const;

    // Double-precision entry point with model-point validation.
    std::pair<HPoint, std::vector<Vec>> include(const Vec& model_pt) const;

    // Graph chart of the intrinsic model composed with the inclusion, as a
    // map (k parameters) -> L^{n+1}.
    deriv::ParamMap chart_map(const deriv::Box& box) const;
    // Graph chart into model coordinates.
    deriv::ParamMap model_chart_map(const deriv::Box& box) const;

  private:
    UmbilicalInclusion(UmbilicKind kind, double param, int n, int codim);
    UmbilicKind kind_;
    double param_;
    int n_;
    int codim_;
};

struct UmbilicReport {
    double max_shape_dev = 0.0;      // |A_eta1 - |H| I| over the grid
    double max_extra_shape = 0.0;    // |A_etaj|, j >= 2
    double max_curvature_dev = 0.0;  // Gauss-equation curvature vs c
    double max_frame_dev = 0.0;      // frame orthonormality and orthogonality
    int samples = 0;
};

// Numerically verifies the shape operators and intrinsic curvature of an
// inclusion over a chart grid. Report only; never throws on deviation.
UmbilicReport umbilic_check(const UmbilicalInclusion& inc, int grid_per_axis,
                            double chart_halfwidth = 0.6);

// ---------------------------------------------------------------------------
// Template definitions.

template <class S>
void UmbilicalInclusion::model_chart(std::span<const S> params, std::span<S> out) const {
    using std::sqrt;
    const int k = model_dim();
    switch (kind_) {
        case UmbilicKind::Equidistant:
        case UmbilicKind::TotallyGeodesic: {
            S q = params[0] * params[0];
            for (int i = 1; i < k; ++i) q += params[i] * params[i];
            out[0] = sqrt(q + 1.0);
            for (int i = 0; i < k; ++i) out[i + 1] = params[i];
            break;
        }
        case UmbilicKind::Horosphere:
            for (int i = 0; i < k; ++i) out[i] = params[i];
            break;
        case UmbilicKind::GeodesicSphere: {
            S q = params[0] * params[0];
            for (int i = 1; i < k; ++i) q += params[i] * params[i];
            for (int i = 0; i < k; ++i) out[i] = params[i];
            out[k] = sqrt(1.0 - q);
            break;
        }
    }
}

template <class S>
void UmbilicalInclusion::include_point(std::span<const S> model_pt, std::span<S> out) const {
    const int k = model_dim();
    const int out_dim = ambient_coord_dim();
    const double zero = 0.0;
    switch (kind_) {
        case UmbilicKind::TotallyGeodesic: {
            for (int i = 0; i <= k; ++i) out[i] = model_pt[i];
            for (int i = k + 1; i < out_dim; ++i) out[i] = zero * model_pt[0];
            break;
        }
        case UmbilicKind::Equidistant: {
            const double cd = std::cosh(param_), sd = std::sinh(param_);
            for (int i = 0; i <= k; ++i) out[i] = cd * model_pt[i];
            out[k + 1] = sd + zero * model_pt[0];
            for (int i = k + 2; i < out_dim; ++i) out[i] = zero * model_pt[0];
            break;
        }
        case UmbilicKind::Horosphere: {
            S q = model_pt[0] * model_pt[0];
            for (int i = 1; i < k; ++i) q += model_pt[i] * model_pt[i];
            out[0] = 0.5 * q + 1.0;
            out[1] = 0.5 * q;
            for (int i = 0; i < k; ++i) out[i + 2] = model_pt[i];
            for (int i = k + 2; i < out_dim; ++i) out[i] = zero * model_pt[0];
            break;
        }
        case UmbilicKind::GeodesicSphere: {
            const double cr = std::cosh(param_), sr = std::sinh(param_);
            out[0] = cr + zero * model_pt[0];
            for (int i = 0; i <= k; ++i) out[i + 1] = sr * model_pt[i];
            for (int i = k + 2; i < out_dim; ++i) out[i] = zero * model_pt[0];
            break;
        }
    }
}

template <class S>
void UmbilicalInclusion::normal_at(int j, std::span<const S> model_pt, std::span<S> out) const {
    const int k = model_dim();
    const int out_dim = ambient_coord_dim();
    const double zero = 0.0;
    if (j < 0 || j >= codim_) throw PreconditionError("normal_at: index out of range");

    if (j >= 1 || kind_ == UmbilicKind::TotallyGeodesic) {
        // Constant normals of the totally geodesic steps.
        for (int i = 0; i < out_dim; ++i) out[i] = zero * model_pt[0];
        out[k + 1 + j] = 1.0 + zero * model_pt[0];
        return;
    }
    switch (kind_) {
        case UmbilicKind::Equidistant: {
            // Mean curvature points toward the base hyperplane.
            const double cd = std::cosh(param_), sd = std::sinh(param_);
            for (int i = 0; i <= k; ++i) out[i] = -sd * model_pt[i];
            out[k + 1] = -cd + zero * model_pt[0];
            for (int i = k + 2; i < out_dim; ++i) out[i] = zero * model_pt[0];
            break;
        }
        case UmbilicKind::Horosphere: {
            // eta1 = (1,1,0,..) - i(y), the inward unit normal along H.
            S q = model_pt[0] * model_pt[0];
            for (int i = 1; i < k; ++i) q += model_pt[i] * model_pt[i];
            out[0] = -0.5 * q;
            out[1] = 1.0 - 0.5 * q;
            for (int i = 0; i < k; ++i) out[i + 2] = -model_pt[i];
            for (int i = k + 2; i < out_dim; ++i) out[i] = zero * model_pt[0];
            break;
        }
        case UmbilicKind::GeodesicSphere: {
            // Mean curvature points toward the center.
            const double cr = std::cosh(param_), sr = std::sinh(param_);
            out[0] = -sr + zero * model_pt[0];
            for (int i = 0; i <= k; ++i) out[i + 1] = -cr * model_pt[i];
            for (int i = k + 2; i < out_dim; ++i) out[i] = zero * model_pt[0];
            break;
        }
        case UmbilicKind::TotallyGeodesic:
            break;  // handled above
    }
}

}  // namespace hypercone::hyperbolic
