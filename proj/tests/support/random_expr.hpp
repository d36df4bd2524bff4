#pragma once

// Random composed functions of a few variables, evaluated both on doubles
// and on jets, plus a tensor-product central-difference oracle for their
// partial derivatives up to order 3.

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gaussmap/jet.hpp"
#include "gaussmap/sampling.hpp"

namespace gaussmap::testing {

struct Expr {
  enum Op { Var, Const, Add, Sub, Mul, Sin, Cos, Exp, SqrtOnePlusSq, InvTwoPlusSin } op = Const;
  int var = 0;
  double value = 0.0;
  std::shared_ptr<Expr> a, b;

  template <class T>
  T eval(const std::vector<T>& x) const {
    switch (op) {
      case Var:
        return x[static_cast<std::size_t>(var)];
      case Const:
        return x[0] * 0.0 + value;
      case Add:
        return a->eval(x) + b->eval(x);
      case Sub:
        return a->eval(x) - b->eval(x);
      case Mul:
        return a->eval(x) * b->eval(x);
      case Sin: {
        using std::sin;
        return sin(a->eval(x));
      }
      case Cos: {
        using std::cos;
        return cos(a->eval(x));
      }
      case Exp: {
        using std::exp;
        return exp(0.5 * a->eval(x));
      }
      case SqrtOnePlusSq: {
        using std::sqrt;
        const T u = a->eval(x);
        return sqrt(1.0 + u * u);
      }
      case InvTwoPlusSin: {
        using std::sin;
        return 1.0 / (2.0 + sin(a->eval(x)));
      }
    }
    return x[0];
  }

  std::string str() const {
    switch (op) {
      case Var:
        return "x" + std::to_string(var);
      case Const:
        return std::to_string(value);
      case Add:
        return "(" + a->str() + " + " + b->str() + ")";
      case Sub:
        return "(" + a->str() + " - " + b->str() + ")";
      case Mul:
        return "(" + a->str() + " * " + b->str() + ")";
      case Sin:
        return "sin(" + a->str() + ")";
      case Cos:
        return "cos(" + a->str() + ")";
      case Exp:
        return "exp(0.5*" + a->str() + ")";
      case SqrtOnePlusSq:
        return "sqrt(1+" + a->str() + "^2)";
      case InvTwoPlusSin:
        return "1/(2+sin(" + a->str() + "))";
    }
    return "?";
  }
};

inline std::shared_ptr<Expr> random_expr(SeededUniform& rng, int dim, int depth) {
  auto e = std::make_shared<Expr>();
  const double pick = rng.next();
  if (depth == 0 || (depth < 3 && pick < 0.2)) {
    if (rng.next() < 0.8) {
      e->op = Expr::Var;
      e->var = static_cast<int>(rng.next() * dim) % dim;
    } else {
      e->op = Expr::Const;
      e->value = rng.in(-1.5, 1.5);
    }
    return e;
  }
  static constexpr Expr::Op kOps[] = {Expr::Add, Expr::Sub, Expr::Mul, Expr::Sin, Expr::Cos,
                                      Expr::Exp, Expr::SqrtOnePlusSq, Expr::InvTwoPlusSin};
  e->op = kOps[static_cast<int>(rng.next() * 8) % 8];
  e->a = random_expr(rng, dim, depth - 1);
  if (e->op == Expr::Add || e->op == Expr::Sub || e->op == Expr::Mul) e->b = random_expr(rng, dim, depth - 1);
  return e;
}

/// Central difference of order k in one variable (k = 0..3), second-order
/// accurate; `f` takes the shifted point.
template <class F>
double central(F&& f, std::vector<double> x, int var, int k, double h) {
  auto at = [&](double s) {
    auto y = x;
    y[static_cast<std::size_t>(var)] += s * h;
    return f(y);
  };
  switch (k) {
    case 0:
      return f(x);
    case 1:
      return (at(1) - at(-1)) / (2 * h);
    case 2:
      return (at(1) - 2 * at(0) + at(-1)) / (h * h);
    default:
      return (at(2) - 2 * at(1) + 2 * at(-1) - at(-2)) / (2 * h * h * h);
  }
}

/// ∂^α f at x by applying `central` once per variable (tensor-product stencil).
inline double fd_partial(const Expr& e, const std::vector<double>& x, const std::vector<int>& alpha, double h) {
  std::function<double(const std::vector<double>&, std::size_t)> rec = [&](const std::vector<double>& y,
                                                                          std::size_t d) -> double {
    if (d == alpha.size()) return e.eval(y);
    return central([&](const std::vector<double>& z) { return rec(z, d + 1); }, y, static_cast<int>(d),
                   alpha[d], h);
  };
  return rec(x, 0);
}

struct OracleResult {
  double worst[4] = {0, 0, 0, 0};  // worst relative error per order (index 0 unused)
};

/// Compares every stored jet coefficient of `e` at `x` against the
/// central-difference oracle. Relative error uses max(1, |fd|) as scale.
inline OracleResult compare_with_fd(const Expr& e, const std::vector<double>& x) {
  OracleResult out;
  const int dim = static_cast<int>(x.size());
  const Jet3 j = e.eval(lift_vars(x));
  const double steps[4] = {0.0, 1e-5, 1e-4, 5e-3};
  auto check = [&](const std::vector<int>& idx) {
    const int order = static_cast<int>(idx.size());
    std::vector<int> alpha(static_cast<std::size_t>(dim), 0);
    for (int v : idx) ++alpha[static_cast<std::size_t>(v)];
    const double fd = fd_partial(e, x, alpha, steps[order]);
    const double jet = j.coeff(jet_slot(dim, idx));
    const double rel = std::abs(jet - fd) / std::max(1.0, std::abs(fd));
    out.worst[order] = std::max(out.worst[order], rel);
  };
  for (int i = 0; i < dim; ++i) {
    check({i});
    for (int k = i; k < dim; ++k) {
      check({i, k});
      for (int l = k; l < dim; ++l) check({i, k, l});
    }
  }
  return out;
}

}  // namespace gaussmap::testing
