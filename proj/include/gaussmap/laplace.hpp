#pragma once

// Rough Laplacian of fields along an immersion, Killing fields of the model
// spaces, and the pointwise identities relating them to the second
// fundamental form, the Simons operator and the Gauss map of a unit normal
// section.
//
// All covariant derivatives are evaluated from jets of the fields: the
// ambient connection of the view is the flat derivative followed by the
// closed-form projection P(Y) = Y - c<Y,x>x onto the model space.

#include <optional>

#include "gaussmap/manifold.hpp"

namespace gaussmap {

enum class KillingKind { Euclidean, Spherical, Hyperbolic, Octonionic };

const char* to_string(KillingKind k);

/// V(x) = A x + b. The matrix is skew for the Euclidean form, or skew with
/// respect to diag(1,...,1,-1) in the hyperbolic case; b is zero except for
/// Euclidean fields.
class KillingField {
 public:
  static KillingField euclidean(Mat a, Vec b);
  static KillingField spherical(Mat a);
  static KillingField hyperbolic(Mat a);
  /// Right multiplication x ↦ x·v by an imaginary octonion, given as its
  /// 8×8 matrix; validated as a spherical Killing field of S^7.
  static KillingField octonionic(Mat right_translation);

  /// Random field with entries uniform in [-1, 1]; `m` is the size of the
  /// embedding space.
  static KillingField random(KillingKind kind, int m, SeededUniform& rng);

  KillingKind kind() const { return kind_; }
  const Mat& matrix() const { return a_; }
  const Vec& translation() const { return b_; }
  int size() const { return static_cast<int>(a_.rows()); }

  Vec at(const Vec& x) const;
  JetVec at(std::span<const Jet3> x) const;
  /// V restricted to the image of the immersion.
  JetField along(const Immersion& imm) const;

 private:
  KillingField(KillingKind kind, Mat a, Vec b);

  KillingKind kind_;
  Mat a_;
  Vec b_;
};

/// ∇²W = g^{ij}(∇_i∇_j W - Γ^k_ij ∇_k W) at chart point p.
Vec rough_laplacian(const Immersion& imm, View view, const JetField& w, std::span<const double> p);

/// Closed-form value predicted for ∇²V by the Killing identities:
/// n∇_H V, plus -nV + V^⊤ in the sphere view, or +nV - V^⊤ in the
/// hyperbolic view.
Vec killing_laplacian_prediction(const Immersion& imm, View view, const KillingField& v,
                                 std::span<const double> p);

/// |∇²V - prediction| (Euclidean coordinate norm).
double killing_laplacian_residual(const Immersion& imm, View view, const KillingField& v,
                                  std::span<const double> p);

/// Ric_M(Z, W) = c(n<Z,W> - <Z^⊤,W^⊤>) in a space of constant curvature c.
double ambient_ricci(const PointFrame& frame, const Vec& z, const Vec& w);

struct TangentPartResult {
  double residual = 0.0;    // max over E_a of |LHS - RHS|
  double lhs = 0.0;         // max |<∇²η, E_a>|
  double ricci = 0.0;       // max |Ric_M(η, E_a)|
  double gradient = 0.0;    // max |n<grad<H,η>, E_a>|
  double mean = 0.0;        // max |n<H, ∇_{E_a}η>|
  double trace = 0.0;       // max |2 tr S_{∇^⊥η}(E_a)|
};

/// <∇²η, X> against Ric_M(η,X) - n<grad<H,η>,X> + n<H,∇_Xη> - 2 tr S_{∇^⊥η}(X)
/// for X ranging over the orthonormal tangent frame.
TangentPartResult check_tangent_part(const Immersion& imm, View view, const NormalSection& eta,
                                     std::span<const double> p);

/// Max over the tangent frame of |(∇_{E_a}η)^⊥| at p.
double normal_derivative_norm(const Immersion& imm, View view, const NormalSection& eta,
                              std::span<const double> p);

/// |(∇²η)^⊥ + B̃η| for a parallel section; a section whose normal derivative
/// exceeds `parallel_tol` at p is rejected with ContractError.
double check_n2eta(const Immersion& imm, View view, const NormalSection& eta,
                   std::span<const double> p, double parallel_tol = 1e-8);

struct KillingPairingResult {
  double eq_a = 0.0;
  double eq_lemma = 0.0;
  std::optional<double> eq_useful;
};

/// Residuals of the three identities for f = <η, V>. `with_useful` asks for
/// the parallel-section identity and then requires η parallel at p.
KillingPairingResult check_killing_pairing(const Immersion& imm, View view,
                                           const NormalSection& eta, const KillingField& v,
                                           std::span<const double> p, bool with_useful,
                                           double parallel_tol = 1e-8);

/// Δγ_η, componentwise Laplace–Beltrami of η in the flat coordinates of the
/// embedding space.
Vec gauss_map_laplacian(const Immersion& imm, const NormalSection& eta, std::span<const double> p);

/// |Δγ - <Δγ,γ>γ|, zero exactly where the unit map γ = η is harmonic.
double harmonicity_residual(const Immersion& imm, const NormalSection& eta,
                            std::span<const double> p);

/// |B̃η - <B̃η,η>η| in the flat view: how far η is from an eigenvector of
/// the Simons operator.
double off_eigen_residual(const Immersion& imm, const NormalSection& eta, std::span<const double> p);

struct SphereHypersurfaceDecomposition {
  Vec grad_term;     // n a grad H
  double nu_coeff;   // a|S_ν|² - n b H
  double mu_coeff;   // n b - n a H
  double mean_curvature;
  double shape_norm_sq;
  double residual;   // |grad_term + nu_coeff ν + mu_coeff μ + Δγ_η|
};

/// Pieces of -Δγ_η for η = sin θ ν + cos θ μ on a hypersurface of the unit
/// sphere, with ν the given unit normal inside the sphere.
SphereHypersurfaceDecomposition sphere_hypersurface_laplacian(const Immersion& imm,
                                                              const NormalSection& nu,
                                                              double theta,
                                                              std::span<const double> p);

/// |(∇²η)^⊥ + |∇η|² η|.
double euler_lagrange_residual(const Immersion& imm, View view, const NormalSection& eta,
                               std::span<const double> p);

/// η = sin θ ν + cos θ μ as a field, ν given, μ the position vector.
NormalSection mix_with_position(const Immersion& imm, const NormalSection& nu, double theta);

}  // namespace gaussmap
