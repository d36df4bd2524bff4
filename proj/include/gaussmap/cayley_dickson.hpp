#pragma once

// Cayley–Dickson doubling R → C → H → O on R^{2^level}:
//
//   (x1, x2)·(y1, y2) = (x1 y1 - ȳ2 x2,  y2 x1 + x2 ȳ1),   (x1, x2)‾ = (x̄1, -x2)
//
// The sign convention of the octonion table is whatever this recursion
// induces on the standard basis e_0 = 1, e_1, ..., e_7. The recursion is
// templated so the same code multiplies plain numbers and jets.

#include <array>
#include <string>
#include <vector>

#include "gaussmap/catalog.hpp"
#include "gaussmap/laplace.hpp"
#include "gaussmap/manifold.hpp"

namespace gaussmap {

inline constexpr int kOctonionLevel = 3;

class CDNumber {
 public:
  /// Zero at the given level (0 = R, 1 = C, 2 = H, 3 = O).
  explicit CDNumber(int level);
  CDNumber(int level, std::vector<double> coeffs);
  static CDNumber one(int level);
  static CDNumber basis(int level, int index);

  int level() const { return level_; }
  int size() const { return static_cast<int>(c_.size()); }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& coeffs() const { return c_; }
  double re() const { return c_[0]; }

 private:
  int level_;
  std::vector<double> c_;
};

/// Recursive product of two coefficient vectors of equal power-of-two size.
template <class T>
std::vector<T> cd_mul(const std::vector<T>& x, const std::vector<T>& y);
/// Recursive conjugate.
template <class T>
std::vector<T> cd_conj(const std::vector<T>& x);

CDNumber cd_mul(const CDNumber& x, const CDNumber& y);
CDNumber cd_conj(const CDNumber& x);
/// |x| = sqrt(x·x̄) (the real part of x·x̄).
double cd_norm(const CDNumber& x);
/// x̄ / |x|².
CDNumber cd_inv(const CDNumber& x);

/// Columns x·e_i.
Mat left_translation_matrix(const CDNumber& x);
/// Columns e_i·x.
Mat right_translation_matrix(const CDNumber& x);

struct SignedIndex {
  int sign = 1;
  int index = 0;
  bool operator==(const SignedIndex&) const = default;
};

/// e_a·e_b = sign·e_index for all basis pairs at a level.
std::vector<std::vector<SignedIndex>> multiplication_table(int level);
/// Rows of whitespace-separated tokens such as "+e3" or "-e5".
std::string format_multiplication_table(const std::vector<std::vector<SignedIndex>>& table);
std::vector<std::vector<SignedIndex>> parse_multiplication_table(const std::string& text);

/// The octonionic Killing field x ↦ x·v of S^7; v must be imaginary.
KillingField octonionic_killing(const CDNumber& v);

/// Pads a hypersurface of S^k (3 ≤ k ≤ 7) into S^7 by zeroing the last 7-k
/// coordinates; the unit normal is padded the same way.
CatalogEntry embed_in_s7(const CatalogEntry& entry);

/// γ(x) = x^{-1}·η(x) at chart point p; EmbeddingError if the value leaves
/// the unit sphere of Im(O) by more than 1e-10.
CDNumber octonionic_gauss_map(const CatalogEntry& entry, std::span<const double> p);

struct OctonionLaplacianCheck {
  double residual = 0.0;        // |-Δγ - (k-1)Γ(grad H) - (|B|² + k-1)γ|
  double harmonicity = 0.0;     // |Δγ - <Δγ,γ>γ|
  double grad_h_norm = 0.0;
  double factor = 0.0;          // |B|² + k - 1
};

/// Componentwise Laplacian of the octonionic Gauss map against its closed form.
OctonionLaplacianCheck octonionic_laplacian_check(const CatalogEntry& entry,
                                                  std::span<const double> p);

/// |Δ<γ,v> + (|B|² + k - 1)<γ,v>| for a fixed imaginary unit v.
double octonionic_superharmonicity_residual(const CatalogEntry& entry, const CDNumber& v,
                                            std::span<const double> p);

}  // namespace gaussmap
