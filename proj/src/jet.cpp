#include "gaussmap/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaussmap/errors.hpp"

namespace gaussmap {
namespace {

struct ProductTerm {
  std::uint8_t out;
  std::uint8_t a;
  std::uint8_t b;
  std::uint8_t out_degree;
  double weight;
};

// Index tables for one jet dimension.
struct JetLayout {
  int dim = 0;
  int count = 0;
  std::array<int, kMaxJetOrder + 2> degree_begin{};
  std::vector<std::array<int, kMaxJetDim>> exps;
  std::array<int, 256> slot_of_code{};
  std::vector<ProductTerm> product;
  std::array<std::array<int, kMaxJetCoeffs>, kMaxJetDim> shift{};

  static int code(const std::array<int, kMaxJetDim>& e) {
    return e[0] + 4 * e[1] + 16 * e[2] + 64 * e[3];
  }

  int slot(const std::array<int, kMaxJetDim>& e) const { return slot_of_code[code(e)]; }
};

int binomial(int n, int k) {
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

JetLayout build_layout(int dim) {
  JetLayout lay;
  lay.dim = dim;
  lay.slot_of_code.fill(-1);
  auto push = [&](std::array<int, kMaxJetDim> e) {
    lay.slot_of_code[JetLayout::code(e)] = static_cast<int>(lay.exps.size());
    lay.exps.push_back(e);
  };
  lay.degree_begin[0] = 0;
  push({0, 0, 0, 0});
  lay.degree_begin[1] = static_cast<int>(lay.exps.size());
  for (int i = 0; i < dim; ++i) {
    std::array<int, kMaxJetDim> e{};
    ++e[i];
    push(e);
  }
  lay.degree_begin[2] = static_cast<int>(lay.exps.size());
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      std::array<int, kMaxJetDim> e{};
      ++e[i];
      ++e[j];
      push(e);
    }
  lay.degree_begin[3] = static_cast<int>(lay.exps.size());
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      for (int k = j; k < dim; ++k) {
        std::array<int, kMaxJetDim> e{};
        ++e[i];
        ++e[j];
        ++e[k];
        push(e);
      }
  lay.count = static_cast<int>(lay.exps.size());
  lay.degree_begin[4] = lay.count;

  // Leibniz: ∂^γ(ab) = Σ_{α ≤ γ} Π_k C(γ_k, α_k) ∂^α a ∂^{γ-α} b.
  for (int out = 0; out < lay.count; ++out) {
    const auto& g = lay.exps[static_cast<std::size_t>(out)];
    const int deg = g[0] + g[1] + g[2] + g[3];
    for (int a0 = 0; a0 <= g[0]; ++a0)
      for (int a1 = 0; a1 <= g[1]; ++a1)
        for (int a2 = 0; a2 <= g[2]; ++a2)
          for (int a3 = 0; a3 <= g[3]; ++a3) {
            const std::array<int, kMaxJetDim> al{a0, a1, a2, a3};
            const std::array<int, kMaxJetDim> be{g[0] - a0, g[1] - a1, g[2] - a2, g[3] - a3};
            const int w = binomial(g[0], a0) * binomial(g[1], a1) * binomial(g[2], a2) *
                          binomial(g[3], a3);
            lay.product.push_back({static_cast<std::uint8_t>(out),
                                   static_cast<std::uint8_t>(lay.slot(al)),
                                   static_cast<std::uint8_t>(lay.slot(be)),
                                   static_cast<std::uint8_t>(deg), static_cast<double>(w)});
          }
  }

  for (int i = 0; i < kMaxJetDim; ++i) lay.shift[static_cast<std::size_t>(i)].fill(-1);
  for (int i = 0; i < dim; ++i)
    for (int s = 0; s < lay.degree_begin[3]; ++s) {
      auto e = lay.exps[static_cast<std::size_t>(s)];
      ++e[static_cast<std::size_t>(i)];
      lay.shift[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] = lay.slot(e);
    }
  return lay;
}

const JetLayout& layout(int dim) {
  static const std::array<JetLayout, kMaxJetDim + 1> layouts = [] {
    std::array<JetLayout, kMaxJetDim + 1> all;
    for (int d = 0; d <= kMaxJetDim; ++d) all[static_cast<std::size_t>(d)] = build_layout(d);
    return all;
  }();
  if (dim < 0 || dim > kMaxJetDim) {
    throw DomainError("jet dimension " + std::to_string(dim) + " outside [1, " +
                      std::to_string(kMaxJetDim) + "]");
  }
  return layouts[static_cast<std::size_t>(dim)];
}

}  // namespace

int jet_coeff_count(int dim) { return layout(dim).count; }

int jet_slot(int dim, std::span<const int> vars) {
  if (vars.size() > static_cast<std::size_t>(kMaxJetOrder)) {
    throw DomainError("multi-index of degree > 3");
  }
  std::array<int, kMaxJetDim> e{};
  for (int v : vars) {
    if (v < 0 || v >= dim) throw DomainError("jet variable index out of range");
    ++e[static_cast<std::size_t>(v)];
  }
  return layout(dim).slot(e);
}

Jet3 Jet3::constant(int dim, double value) {
  if (dim < 1) throw DomainError("jet dimension must be positive");
  layout(dim);
  Jet3 j;
  j.dim_ = dim;
  j.c_[0] = value;
  return j;
}

Jet3 Jet3::variable(int dim, int slot, double value) {
  Jet3 j = constant(dim, value);
  if (slot < 0 || slot >= dim) throw DomainError("variable slot out of range");
  j.c_[static_cast<std::size_t>(1 + slot)] = 1.0;
  return j;
}

int Jet3::size() const { return layout(dim_).count; }

std::span<const double> Jet3::coeffs() const {
  return {c_.data(), static_cast<std::size_t>(size())};
}

double Jet3::d(int i) const {
  const std::array<int, 1> v{i};
  return c_[static_cast<std::size_t>(jet_slot(dim_, v))];
}

double Jet3::d(int i, int j) const {
  const std::array<int, 2> v{i, j};
  return c_[static_cast<std::size_t>(jet_slot(dim_, v))];
}

double Jet3::d(int i, int j, int k) const {
  const std::array<int, 3> v{i, j, k};
  return c_[static_cast<std::size_t>(jet_slot(dim_, v))];
}

void Jet3::check_same_dim(const Jet3& other) const {
  if (dim_ < 1 || other.dim_ < 1) throw ContractError("arithmetic on an uninitialised jet");
  if (dim_ != other.dim_) {
    throw ContractError("jet dimension mismatch: " + std::to_string(dim_) + " vs " +
                        std::to_string(other.dim_));
  }
}

void Jet3::truncate() {
  const auto& lay = layout(dim_);
  for (int s = lay.degree_begin[static_cast<std::size_t>(order_ + 1)]; s < lay.count; ++s) {
    c_[static_cast<std::size_t>(s)] = 0.0;
  }
}

Jet3 Jet3::partial(int i) const {
  if (i < 0 || i >= dim_) throw DomainError("partial: variable index out of range");
  if (order_ < 1) throw DomainError("partial of an order-0 jet");
  const auto& lay = layout(dim_);
  Jet3 r;
  r.dim_ = dim_;
  r.order_ = order_ - 1;
  const auto& sh = lay.shift[static_cast<std::size_t>(i)];
  for (int s = 0; s < lay.degree_begin[static_cast<std::size_t>(r.order_ + 1)]; ++s) {
    r.c_[static_cast<std::size_t>(s)] = c_[static_cast<std::size_t>(sh[static_cast<std::size_t>(s)])];
  }
  return r;
}

Jet3 Jet3::operator-() const {
  Jet3 r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Jet3& Jet3::operator+=(const Jet3& rhs) {
  check_same_dim(rhs);
  for (std::size_t s = 0; s < c_.size(); ++s) c_[s] += rhs.c_[s];
  if (rhs.order_ < order_) {
    order_ = rhs.order_;
    truncate();
  }
  return *this;
}

Jet3& Jet3::operator-=(const Jet3& rhs) {
  check_same_dim(rhs);
  for (std::size_t s = 0; s < c_.size(); ++s) c_[s] -= rhs.c_[s];
  if (rhs.order_ < order_) {
    order_ = rhs.order_;
    truncate();
  }
  return *this;
}

Jet3& Jet3::operator*=(const Jet3& rhs) { return *this = *this * rhs; }
Jet3& Jet3::operator/=(const Jet3& rhs) { return *this = *this / rhs; }

Jet3& Jet3::operator+=(double rhs) {
  c_[0] += rhs;
  return *this;
}

Jet3& Jet3::operator-=(double rhs) {
  c_[0] -= rhs;
  return *this;
}

Jet3& Jet3::operator*=(double rhs) {
  for (auto& x : c_) x *= rhs;
  return *this;
}

Jet3& Jet3::operator/=(double rhs) {
  if (rhs == 0.0) throw SingularJetError("jet divided by zero scalar");
  for (auto& x : c_) x /= rhs;
  return *this;
}

Jet3 operator*(const Jet3& a, const Jet3& b) {
  a.check_same_dim(b);
  const auto& lay = layout(a.dim_);
  Jet3 r;
  r.dim_ = a.dim_;
  r.order_ = std::min(a.order_, b.order_);
  for (const ProductTerm& t : lay.product) {
    if (t.out_degree > r.order_) continue;
    r.c_[t.out] += t.weight * a.c_[t.a] * b.c_[t.b];
  }
  return r;
}

Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }

Jet3 operator/(double a, const Jet3& b) { return reciprocal(b) * a; }

Jet3 compose(const Jet3& a, double f0, double f1, double f2, double f3) {
  if (a.dim_ < 1) throw ContractError("compose on an uninitialised jet");
  Jet3 delta = a;
  delta.c_[0] = 0.0;
  // δ has no constant term, so the cubic Taylor polynomial is exact to order 3.
  Jet3 t = delta * (f3 / 6.0);
  t += f2 / 2.0;
  t = t * delta;
  t += f1;
  t = t * delta;
  t += f0;
  return t;
}

Jet3 sqrt(const Jet3& a) {
  const double v = a.value();
  if (!(v > 0.0)) throw DomainError("sqrt of nonpositive jet value " + std::to_string(v));
  const double s = std::sqrt(v);
  return compose(a, s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v));
}

Jet3 sin(const Jet3& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return compose(a, s, c, -s, -c);
}

Jet3 cos(const Jet3& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return compose(a, c, -s, -c, s);
}

Jet3 exp(const Jet3& a) {
  const double e = std::exp(a.value());
  return compose(a, e, e, e, e);
}

Jet3 reciprocal(const Jet3& a) {
  const double v = a.value();
  if (v == 0.0) throw SingularJetError("reciprocal of a jet with zero value");
  const double r = 1.0 / v;
  return compose(a, r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r);
}

Jet3 atan2(const Jet3& y, const Jet3& x) {
  const double x0 = x.value();
  const double y0 = y.value();
  if (x0 == 0.0 && y0 == 0.0) throw DomainError("atan2 at the origin");
  // atan2(y, x) = θ0 + atan(w), w = (x0 y - y0 x) / (x0 x + y0 y), w(p) = 0.
  const Jet3 w = (x0 * y - y0 * x) / (x0 * x + y0 * y);
  return compose(w, std::atan2(y0, x0), 1.0, 0.0, -2.0);
}

std::vector<Jet3> lift_vars(std::span<const double> values) {
  if (values.empty()) throw DomainError("lift_vars needs at least one variable");
  const int d = static_cast<int>(values.size());
  if (d > kMaxJetDim) throw DomainError("too many chart variables for Jet3");
  std::vector<Jet3> out;
  out.reserve(values.size());
  for (int i = 0; i < d; ++i) out.push_back(Jet3::variable(d, i, values[static_cast<std::size_t>(i)]));
  return out;
}

Jet3 arith(const Jet3& a, const Jet3& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add:
      return a + b;
    case ArithOp::Sub:
      return a - b;
    case ArithOp::Mul:
      return a * b;
    case ArithOp::Div:
      return a / b;
  }
  throw ContractError("unknown arithmetic op");
}

Jet3 elementary(const Jet3& a, Elementary f) {
  switch (f) {
    case Elementary::Sqrt:
      return sqrt(a);
    case Elementary::Sin:
      return sin(a);
    case Elementary::Cos:
      return cos(a);
    case Elementary::Exp:
      return exp(a);
    case Elementary::Reciprocal:
      return reciprocal(a);
  }
  throw ContractError("unknown elementary function");
}

}  // namespace gaussmap
