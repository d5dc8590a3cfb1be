#pragma once

#include <optional>
#include <string>

#include "hypercone/hyperbolic.hpp"
#include "hypercone/immersion.hpp"
#include "hypercone/param_map.hpp"

namespace hypercone::cone {

// Parametric surface in the intrinsic model of an umbilical inclusion,
// together with the claims the catalog makes about it. Claims are verified
// numerically before they are relied on.
struct SurfaceSpec {
    std::string name;
    deriv::ParamMap map;  // (u,v) -> model coordinates
    immersion::Ambient model_ambient = immersion::Ambient::Hyperboloid;
    bool claimed_minimal = false;
    bool claimed_totally_geodesic = false;
};

struct SurfaceParams {
    double a = 1.0;
    double b = 1.0;
    double eps = 0.1;
};

// Catalog of closed-form surfaces. model_coord_dim is the coordinate size
// of the intrinsic model the surface should land in; surfaces pad with
// zeros when the model is larger than their natural home.
//   totally_geodesic_h2     H^2 chart inside a hyperboloid model
//   helicoid_h3             (cosh u cosh av, cosh u sinh av, sinh u cos bv, sinh u sin bv)
//   euclidean_helicoid      (u cos av, u sin av, a v) in a flat model
//   complex_curve           (x, y, x^2 - y^2, 2xy) in a flat 4-dim model
//   sphere_patch            totally geodesic S^2 graph chart in a round model
//   perturbed_nonminimal    helicoid_h3 plus an eps-bump, radially reprojected
SurfaceSpec surface_catalog(const std::string& name, const SurfaceParams& params,
                            int model_coord_dim);

// Generalized cone data: surface, inclusion, fiber dimension nu = codim,
// and the fiber coordinate box.
struct ConeSpec {
    SurfaceSpec surface;
    hyperbolic::UmbilicalInclusion inclusion;
    int nu = 1;
    deriv::Box t_box;

    int dim() const { return 2 + nu; }
    int ambient_coord_dim() const { return inclusion.ambient_coord_dim(); }
};

ConeSpec make_cone(SurfaceSpec surface, const hyperbolic::UmbilicalInclusion& inclusion,
                   const deriv::Box& t_box);

// G(x, t_1..t_nu): iterated-geodesic flow through the inclusion's normal
// frame, f_0 = i(g(x)), f_j = cosh t_j f_{j-1} + sinh t_j eta_j.
deriv::ParamMap cone_map(const ConeSpec& spec);

// h = i o g as a two-parameter map into H^n.
deriv::ParamMap composed_surface_map(const ConeSpec& spec);

// Conformal factor of G_* on surface directions:
//   r = h_1 (cosh t_1 - |H| sinh t_1),  h_j = prod_{k>j} cosh t_k.
double radius_r(const ConeSpec& spec, const Eigen::VectorXd& t);

// Closed-form induced metric r^2 <,>_g + (h_1^2 dt_1^2 + .. + dt_nu^2) as a
// (2+nu) x (2+nu) block-diagonal matrix. Throws DegeneracyError at r = 0.
Eigen::MatrixXd cone_metric_closed(const ConeSpec& spec, const Eigen::Vector2d& x,
                                   const Eigen::VectorXd& t);

// Squared norm of the surface second fundamental form within the model
// space (the inclusion-normal part of alpha removed), in orthonormal frames
// of the induced metric.
double surface_alpha_norm2(const ConeSpec& spec, const Eigen::Vector2d& x);

// Closed-form scalar curvature of the cone: -m(m-1) - |alpha_g|^2 / r^2.
double scalar_curvature_formula(const ConeSpec& spec, const Eigen::Vector2d& x,
                                const Eigen::VectorXd& t);

struct ImmersionCriterion {
    bool immersion_everywhere = true;
    std::optional<double> degenerate_t1;  // tanh t_1 = 1 / |H| locus when |H| > 1
};
ImmersionCriterion immersion_criterion(const ConeSpec& spec);

// Fiber coordinates to normal vector: w(t) at the surface point x with
// G(x, t) = exp_{h(x)} w and w in the span of the inclusion normals.
Eigen::VectorXd fiber_normal_vector(const ConeSpec& spec, const Eigen::Vector2d& x,
                                    const Eigen::VectorXd& t);

struct MinimalityReport {
    double max_model_mean_curvature = 0.0;      // route through the intrinsic model
    double max_projected_mean_curvature = 0.0;  // route through H^n, inclusion part removed
    int samples = 0;
};

// Mean-curvature check of the generating surface on a grid; both routes
// must agree that the surface is minimal for the catalog claim to hold.
MinimalityReport check_minimal(const ConeSpec& spec, int grid_per_axis);

// Plain-text key-value serialization of a cone configuration.
std::string cone_config_text(const ConeSpec& spec, const SurfaceParams& params);

}  // namespace hypercone::cone
