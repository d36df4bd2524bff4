#pragma once

// Immersions evaluated through jets and the pointwise extrinsic geometry
// built from them: metric, Christoffel symbols, orthonormal tangent and
// normal frames, second fundamental form, mean curvature vector, shape
// operators, the Simons operator and the normal connection.
//
// Ambient vectors are always expressed in the coordinates of the flat
// embedding space: R^m for flat and spherical immersions (the unit sphere
// S^{m-1} sits in R^m) and R^{m-1,1} with the form diag(1,...,1,-1) for the
// Lorentz model of hyperbolic space.

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gaussmap/jet.hpp"
#include "gaussmap/sampling.hpp"

namespace gaussmap {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using JetVec = std::vector<Jet3>;

/// A vector-valued map of the chart variables, evaluated through jets.
using JetField = std::function<JetVec(std::span<const Jet3>)>;

enum class SpaceKind { Flat, Sphere, Hyperbolic };

struct AmbientSpace {
  SpaceKind kind = SpaceKind::Flat;
  int dim = 0;  // intrinsic dimension of the model space

  static AmbientSpace flat(int m) { return {SpaceKind::Flat, m}; }
  /// Unit sphere S^m in R^{m+1}.
  static AmbientSpace sphere(int m) { return {SpaceKind::Sphere, m}; }
  /// Hyperboloid {<x,x> = -1, x_last > 0} in R^{m,1}.
  static AmbientSpace hyperbolic(int m) { return {SpaceKind::Hyperbolic, m}; }

  int embedding_dim() const { return kind == SpaceKind::Flat ? dim : dim + 1; }
  double curvature() const;
  bool lorentz() const { return kind == SpaceKind::Hyperbolic; }
};

/// Which enclosing space decides what counts as normal.
enum class View { Flat, Sphere, Hyperbolic };

const char* to_string(View v);

/// Signature-aware pairing of two ambient vectors.
double pair(const Vec& a, const Vec& b, bool lorentz);
Jet3 pair(std::span<const Jet3> a, std::span<const Jet3> b, bool lorentz);

class Immersion {
 public:
  Immersion(std::string name, int n, AmbientSpace ambient, JetField chart,
            std::vector<ParamInterval> box);

  const std::string& name() const { return name_; }
  int dim() const { return n_; }
  const AmbientSpace& ambient() const { return ambient_; }
  const std::vector<ParamInterval>& box() const { return box_; }
  const JetField& chart() const { return chart_; }

  JetVec evaluate(std::span<const Jet3> vars) const;
  JetVec evaluate_at(std::span<const double> p) const;
  bool contains(std::span<const double> p) const;

  /// Curvature of the view and whether the view is compatible with the
  /// immersion's ambient (Sphere view needs a spherical immersion, etc.).
  double view_curvature(View v) const;

 private:
  std::string name_;
  int n_;
  AmbientSpace ambient_;
  JetField chart_;
  std::vector<ParamInterval> box_;
};

struct NormalSection {
  JetField eta;
  std::string label;
};

/// Evaluate a field at a chart point (lifting the variables first).
JetVec evaluate_field(const JetField& field, std::span<const double> p);
Vec values_of(std::span<const Jet3> v);
/// Ambient vector of first derivatives ∂_i v.
Vec partial_values(std::span<const Jet3> v, int i);
JetVec partial(std::span<const Jet3> v, int i);

struct PointFrame {
  std::vector<double> point;
  View view = View::Flat;
  int n = 0;  // intrinsic dimension
  int m = 0;  // embedding-space dimension
  double curvature = 0.0;
  bool lorentz = false;

  Vec position;
  std::vector<Vec> d1;  // ∂_i f
  std::vector<Vec> d2;  // ∂_i∂_j f, row-major n×n
  Mat metric;
  Mat inverse_metric;
  std::vector<Mat> christoffel;  // christoffel[k](i, j) = Γ^k_ij
  Mat tangent_coords;            // column a = chart components of E_a
  std::vector<Vec> tangent;      // g-orthonormal E_a
  std::vector<Vec> normal;       // orthonormal ν_a of the view
  std::vector<Vec> second_form;  // B_ij, row-major n×n
  Vec mean_curvature;            // H⃗ = (1/n) g^{ij} B_ij

  const Vec& d2f(int i, int j) const { return d2[static_cast<std::size_t>(i * n + j)]; }
  const Vec& B(int i, int j) const { return second_form[static_cast<std::size_t>(i * n + j)]; }
  int codim() const { return static_cast<int>(normal.size()); }

  double dot(const Vec& a, const Vec& b) const { return pair(a, b, lorentz); }
  Vec tangent_part(const Vec& v) const;
  Vec normal_part(const Vec& v) const;
  /// Chart components X^i of a tangent vector X = X^i ∂_i f.
  Vec chart_components(const Vec& x) const;
  /// B(X, Y) for ambient tangent vectors.
  Vec second_form_on(const Vec& x, const Vec& y) const;
  /// Levi-Civita projection of the view: removes the position component in
  /// the sphere and hyperbolic views, identity in the flat view.
  Vec project_to_view(const Vec& v) const;
  /// Coordinates of a normal vector in the frame's normal basis.
  Vec normal_coords(const Vec& eta) const;
  Vec from_normal_coords(std::span<const double> coords) const;
};

/// Full pointwise frame. The normal frame comes from Gram–Schmidt of the
/// coordinate basis e_1..e_m, in that order, against the tangent vectors
/// (and against the position in the sphere/hyperbolic views); a seed whose
/// residual norm falls below 0.1 is skipped. If the sequential pass does not
/// fill the normal space, the fallback picks, among all e_i, the one with the
/// largest residual until the frame is complete; a best residual below 1e-8
/// is a FrameError. For a spherical immersion seen in the flat view the
/// frame is the sphere-view frame followed by the position vector μ.
PointFrame frame_at(const Immersion& imm, View view, std::span<const double> p);

/// Maximum deviation of the frame from its structural invariants
/// (orthonormality, normality of B, position orthogonality).
double frame_invariant_residual(const PointFrame& frame);

/// S_η in the orthonormal tangent frame: (S_η)_ab = <B(E_a, E_b), η>.
Mat shape_operator(const PointFrame& frame, const Vec& eta, double tol = 1e-8);

struct SimonsMatrix {
  Mat entries;

  Vec eigenvalues() const;
  bool is_symmetric(double tol) const;
};

/// <S_{ν_a}, S_{ν_b}> over the frame's own normal basis.
SimonsMatrix simons_matrix(const PointFrame& frame);
/// Same Gram matrix over caller-supplied normal vectors.
SimonsMatrix simons_matrix_in(const PointFrame& frame, std::span<const Vec> normals);
/// Coordinates of B̃η in the normal frame, given η's coordinates.
Vec simons_apply(const PointFrame& frame, std::span<const double> eta_coords);
/// B̃η as an ambient vector.
Vec simons_apply_vector(const PointFrame& frame, const Vec& eta);

/// Normal component of the view's covariant derivative of η along a tangent
/// direction.
Vec normal_connection(const Immersion& imm, View view, const NormalSection& section,
                      std::span<const double> p, const Vec& direction);

struct ParallelReport {
  double max_residual = 0.0;
  bool parallel = false;
};

ParallelReport is_parallel(const Immersion& imm, View view, const NormalSection& section,
                           const SamplePlan& plan, double tol = 1e-9);

/// Ric^⊥_M(η) = c n η in a space of constant curvature c.
Vec normal_ricci(View view, int n, std::span<const double> eta_coords);

/// Numerical rank of {B_ij} inside the normal space (threshold on the
/// singular values relative to the largest one).
int second_form_rank(const PointFrame& frame, double threshold = 1e-8);

// ---- jet-level helpers shared with the laplace and catalog modules ----

/// g^{ij} as jets (Gauss–Jordan on the jet-valued metric).
std::vector<JetVec> inverse_metric_jets(std::span<const JetVec> d1, bool lorentz);

/// <H⃗, η> = (1/n) g^{ij} <∂_i∂_j f, η> as a jet (η must be normal).
Jet3 mean_curvature_pairing(const Immersion& imm, std::span<const Jet3> vars,
                            std::span<const Jet3> eta);

/// grad φ = g^{ij} ∂_j φ ∂_i f at the frame point.
Vec surface_gradient(const PointFrame& frame, const Jet3& phi);

/// Δ_M φ = g^{ij}(∂_i∂_j φ − Γ^k_ij ∂_k φ).
double laplace_beltrami(const PointFrame& frame, const Jet3& phi);

/// Orthonormal jet frame of the view's normal space: Gram–Schmidt in jet
/// arithmetic against (position,) ∂_1 f, ..., ∂_n f with seeds chosen by
/// the pivoted rule on values, so the result is a smooth local frame.
std::vector<JetVec> normal_frame_jets(const Immersion& imm, View view,
                                      std::span<const Jet3> vars);

/// Normalised projection of `reference` onto the view's normal space, in
/// jets. Used to build smooth unit normals with a prescribed orientation.
JetVec project_normal_jets(const Immersion& imm, View view, std::span<const Jet3> vars,
                           std::span<const Jet3> reference);

}  // namespace gaussmap
