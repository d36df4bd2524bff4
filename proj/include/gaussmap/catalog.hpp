#pragma once

// Model immersions with closed-form reference data, the normal sections
// used on them, and the scalar solvers for the harmonic angle.
//
// Sphere factors use hyperspherical charts: S^1 is (cos φ, sin φ) with φ
// periodic in [0, 2π); S^k, k ≥ 2, uses polar angles restricted to
// [0.35, π - 0.35] followed by one periodic azimuth, which keeps the metric
// uniformly nondegenerate on the whole box.

#include <optional>
#include <string>
#include <vector>

#include "gaussmap/laplace.hpp"
#include "gaussmap/manifold.hpp"

namespace gaussmap {

struct KnownData {
  std::vector<double> principal_curvatures;  // eigenvalues of S_ν, with multiplicity
  std::optional<double> mean_curvature;      // H = <H⃗, ν> in the sphere view
  std::optional<double> shape_norm_sq;       // |S_ν|²
  std::optional<double> second_form_norm_sq; // |B|² in the sphere view
};

struct CatalogEntry {
  std::string name;
  Immersion immersion;
  /// Unit normal inside the unit sphere, present for sphere hypersurfaces.
  std::optional<NormalSection> unit_normal;
  std::optional<KnownData> known;
  std::string provenance;
  bool isoparametric = false;
  bool negative_control = false;
  /// True when the chosen ν makes H negative.
  bool negative_mean_curvature = false;

  bool is_sphere_hypersurface() const {
    return immersion.ambient().kind == SpaceKind::Sphere &&
           immersion.ambient().dim == immersion.dim() + 1 && unit_normal.has_value();
  }
};

/// S^k(√(k/n)) × S^{n-k}(√((n-k)/n)) ⊂ S^{n+1}; needs 1 ≤ k ≤ n-1, n ≤ 4.
CatalogEntry clifford_torus(int k, int n);
/// S^1(r) × S^1(√(1-r²)) ⊂ S^3, 0 < r < 1.
CatalogEntry circle_product(double r);
/// S^{n-1}(r) × S^1(√(1-r²)) ⊂ S^{n+1}, 2 ≤ n ≤ 4.
CatalogEntry h_torus(double r, int n);
/// Small sphere S^n(ρ) ⊂ S^{n+1} at height √(1-ρ²), 1 ≤ n ≤ 4.
CatalogEntry umbilical_sphere(double rho, int n);
/// Veronese surface S^2 → S^4.
CatalogEntry veronese();
/// Circle product with first radius r + eps·cos v: not CMC for eps ≠ 0.
CatalogEntry perturbed_torus(double r, double eps);
/// Graph (u, v, a sin u cos v) lifted to the hyperboloid in R^{3,1}.
CatalogEntry lorentz_surface(double a);
/// Plane (u, v) ↦ (u, v, 0) in R^3.
CatalogEntry flat_plane();
/// Unit sphere S^2 as a surface of R^3.
CatalogEntry round_sphere();

/// Parses "circles(0.6)", "clifford(1,2)", "htorus(0.5,3)", "umbilical(0.5,2)",
/// "veronese", "perturbed(0.6,0.03)", "lorentz(0.4)", "plane", "sphere".
CatalogEntry example_by_name(const std::string& spec);
/// One line per example family, with its parameter signature.
std::vector<std::string> example_names();

/// η = sin θ ν + cos θ μ on a sphere hypersurface.
NormalSection section_theta(const CatalogEntry& entry, double theta);

/// cos(θ + φ u_0) ν_1 + sin(θ + φ u_0) ν_2 over the jet normal frame of a
/// codimension-2 surface of a sphere (used on the Veronese surface).
NormalSection rotating_normal_section(const Immersion& imm, double theta, double twist);

struct QuadraticPH {
  double linear = 0.0;    // coefficient of x
  double constant = 0.0;  // constant term, always negative
  double positive_root = 0.0;
  double b_h = 0.0;       // square of the positive root
};

/// P_H(x) = x² + (n(n-2)/√(n(n-1))) H x - n(H²+1) and B_H = x₊².
QuadraticPH p_h_and_b_h(int n, double h);

struct ThetaSolution {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double residual = 0.0;  // max over both roots of |nH(cot θ - tan θ) - C|
};

/// Solves nH(cot θ - tan θ) = C with θ1 ∈ (0, π/2), θ2 = θ1 + π/2.
ThetaSolution solve_theta(int n, double h, double c);

/// |nH(cot θ - tan θ) - C|.
double theta_equation_residual(int n, double h, double c, double theta);

}  // namespace gaussmap
