#pragma once

// Order-3 forward-mode jets in a small number of chart variables.
//
// Storage convention (fixed repo-wide): coefficients are RAW partial
// derivatives, not Taylor coefficients. A jet in d variables stores
//
//   f, ∂_i f, ∂_i∂_j f (i ≤ j), ∂_i∂_j∂_k f (i ≤ j ≤ k)
//
// in degree-major order, and within a degree in lexicographic order of the
// sorted variable-index tuple. For d = 2 the slots are
//
//   1 | ∂0 ∂1 | ∂00 ∂01 ∂11 | ∂000 ∂001 ∂011 ∂111
//
// which is the same as descending-lexicographic order of exponent vectors.
// Every jet also carries the order up to which its coefficients are
// meaningful; taking a partial derivative lowers it by one and arithmetic
// propagates the minimum.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace gaussmap {

inline constexpr int kMaxJetDim = 4;
inline constexpr int kMaxJetOrder = 3;
inline constexpr int kMaxJetCoeffs = 35;  // C(kMaxJetDim + 3, 3)

/// Number of stored coefficients for a jet in `dim` variables: C(dim+3, 3).
int jet_coeff_count(int dim);

/// Slot of the multi-index given as a sorted or unsorted list of variable
/// indices (empty list = value slot).
int jet_slot(int dim, std::span<const int> vars);

class Jet3 {
 public:
  /// Placeholder jet with no variables; only assignable.
  Jet3() = default;

  static Jet3 constant(int dim, double value);
  static Jet3 variable(int dim, int slot, double value);

  int dim() const { return dim_; }
  int order() const { return order_; }
  int size() const;

  double value() const { return c_[0]; }
  double d(int i) const;
  double d(int i, int j) const;
  double d(int i, int j, int k) const;
  double coeff(int slot) const { return c_[static_cast<std::size_t>(slot)]; }
  std::span<const double> coeffs() const;

  /// ∂/∂u_i as a jet of one order lower.
  Jet3 partial(int i) const;

  Jet3 operator-() const;
  Jet3& operator+=(const Jet3& rhs);
  Jet3& operator-=(const Jet3& rhs);
  Jet3& operator*=(const Jet3& rhs);
  Jet3& operator/=(const Jet3& rhs);
  Jet3& operator+=(double rhs);
  Jet3& operator-=(double rhs);
  Jet3& operator*=(double rhs);
  Jet3& operator/=(double rhs);

  friend Jet3 operator+(Jet3 a, const Jet3& b) { return a += b; }
  friend Jet3 operator-(Jet3 a, const Jet3& b) { return a -= b; }
  friend Jet3 operator*(const Jet3& a, const Jet3& b);
  friend Jet3 operator/(const Jet3& a, const Jet3& b);
  friend Jet3 operator+(Jet3 a, double b) { return a += b; }
  friend Jet3 operator-(Jet3 a, double b) { return a -= b; }
  friend Jet3 operator*(Jet3 a, double b) { return a *= b; }
  friend Jet3 operator/(Jet3 a, double b) { return a /= b; }
  friend Jet3 operator+(double a, Jet3 b) { return b += a; }
  friend Jet3 operator-(double a, const Jet3& b) { return -b + a; }
  friend Jet3 operator*(double a, Jet3 b) { return b *= a; }
  friend Jet3 operator/(double a, const Jet3& b);

  /// f(a) given f and its first three derivatives at value(a).
  friend Jet3 compose(const Jet3& a, double f0, double f1, double f2, double f3);

 private:
  void check_same_dim(const Jet3& other) const;
  void truncate();

  std::int32_t dim_ = 0;
  std::int32_t order_ = kMaxJetOrder;
  std::array<double, kMaxJetCoeffs> c_{};
};

Jet3 sqrt(const Jet3& a);
Jet3 sin(const Jet3& a);
Jet3 cos(const Jet3& a);
Jet3 exp(const Jet3& a);
Jet3 reciprocal(const Jet3& a);
/// Angle of the point (x, y); undefined at the origin.
Jet3 atan2(const Jet3& y, const Jet3& x);

/// Seeds jets for the chart variables: jet i has value values[i] and unit
/// first derivative in slot i.
std::vector<Jet3> lift_vars(std::span<const double> values);

enum class ArithOp { Add, Sub, Mul, Div };
enum class Elementary { Sqrt, Sin, Cos, Exp, Reciprocal };

Jet3 arith(const Jet3& a, const Jet3& b, ArithOp op);
Jet3 elementary(const Jet3& a, Elementary f);

}  // namespace gaussmap
