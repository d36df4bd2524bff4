#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "gaussmap/catalog.hpp"
#include "gaussmap/errors.hpp"
#include "gaussmap/laplace.hpp"

namespace gaussmap {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::vector<double>> samples(const Immersion& imm, int count, std::uint64_t seed = 21) {
  return make_sample_plan(imm.box(), seed, count, false).points;
}

NormalSection wiggle(const CatalogEntry& e) {
  return {[imm = e.immersion, nu = e.unit_normal->eta](std::span<const Jet3> v) {
            JetVec x = imm.evaluate(v);
            const JetVec n = nu(v);
            for (std::size_t k = 0; k < x.size(); ++k) x[k] = sin(v[0]) * n[k] + cos(v[0]) * x[k];
            return x;
          },
          "wiggle"};
}

NormalSection constant_section(const Immersion& imm, const View view, int index) {
  return {[imm, view, index](std::span<const Jet3> v) {
            return normal_frame_jets(imm, view, v)[static_cast<std::size_t>(index)];
          },
          "frame"};
}

// ---- finite-difference oracle for the rough Laplacian -------------------
//
// Same definition, evaluated with nested central differences of plain
// doubles: Z_j = P(∂_j W), ∇²W = g^{ij}(P(∂_i Z_j) - Γ^k_ij Z_k).

struct FdGeometry {
  const Immersion& imm;
  View view;
  std::function<Vec(const Vec&)> field;  // W as a function of the ambient point

  double c() const { return view == View::Flat ? 0.0 : (view == View::Sphere ? 1.0 : -1.0); }
  bool lorentz() const { return view == View::Hyperbolic; }
  Vec point(const std::vector<double>& p) const { return values_of(imm.evaluate_at(p)); }
  Vec proj(const Vec& y, const Vec& x) const { return y - c() * pair(y, x, lorentz()) * x; }

  template <class F>
  static auto diff(F&& f, std::vector<double> p, int i, double h) {
    auto q = p;
    p[static_cast<std::size_t>(i)] += h;
    q[static_cast<std::size_t>(i)] -= h;
    return ((f(p) - f(q)) / (2 * h)).eval();
  }

  Vec z(const std::vector<double>& p, int j) const {
    const Vec dw = diff([&](const std::vector<double>& q) { return field(point(q)); }, p, j, 1e-4);
    return proj(dw, point(p));
  }

  Vec rough_laplacian(const std::vector<double>& p) const {
    const int n = imm.dim();
    const Vec x = point(p);
    std::vector<Vec> d1;
    for (int i = 0; i < n; ++i) d1.push_back(diff([&](const std::vector<double>& q) { return point(q); }, p, i, 1e-5));
    Mat g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = pair(d1[static_cast<std::size_t>(i)], d1[static_cast<std::size_t>(j)], lorentz());
    const Mat gi = g.inverse();
    Vec out = Vec::Zero(x.size());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Vec dz = diff([&](const std::vector<double>& q) { return z(q, j); }, p, i, 1e-4);
        const Vec dij = diff([&](const std::vector<double>& q) {
          return diff([&](const std::vector<double>& r) { return point(r); }, q, j, 1e-4);
        }, p, i, 1e-4);
        Vec term = proj(dz, x);
        for (int k = 0; k < n; ++k) {
          double gamma = 0;
          for (int l = 0; l < n; ++l) gamma += gi(k, l) * pair(dij, d1[static_cast<std::size_t>(l)], lorentz());
          term -= gamma * z(p, k);
        }
        out += gi(i, j) * term;
      }
    }
    return out;
  }
};

TEST(RoughLaplacian, FlatViewMatchesFiniteDifferences) {
  const auto e = perturbed_torus(0.6, 0.05);
  auto w_double = [](const Vec& x) {
    Vec w(4);
    w << std::sin(x(1)), x(0) * x(2), std::cos(x(3)), x(0) * x(0);
    return w;
  };
  JetField w_jet = [imm = e.immersion](std::span<const Jet3> v) {
    const JetVec x = imm.evaluate(v);
    return JetVec{sin(x[1]), x[0] * x[2], cos(x[3]), x[0] * x[0]};
  };
  FdGeometry fd{e.immersion, View::Flat, w_double};
  for (const auto& p : samples(e.immersion, 5)) {
    EXPECT_LE((rough_laplacian(e.immersion, View::Flat, w_jet, p) - fd.rough_laplacian(p)).norm(), 1e-5);
  }
}

TEST(RoughLaplacian, SphereViewMatchesFiniteDifferences) {
  const auto e = perturbed_torus(0.6, 0.05);
  // A tangent field of S^3: U - <U,x>x.
  auto w_double = [](const Vec& x) {
    Vec u(4);
    u << std::sin(x(1)), x(0) * x(2), 0.5, x(0);
    return (u - u.dot(x) * x).eval();
  };
  JetField w_jet = [imm = e.immersion](std::span<const Jet3> v) {
    JetVec x = imm.evaluate(v);
    const JetVec u{sin(x[1]), x[0] * x[2], x[0] * 0.0 + 0.5, x[0]};
    const Jet3 ux = pair(u, x, false);
    JetVec out(4);
    for (std::size_t k = 0; k < 4; ++k) out[k] = u[k] - ux * x[k];
    return out;
  };
  FdGeometry fd{e.immersion, View::Sphere, w_double};
  for (const auto& p : samples(e.immersion, 5)) {
    EXPECT_LE((rough_laplacian(e.immersion, View::Sphere, w_jet, p) - fd.rough_laplacian(p)).norm(), 1e-5);
  }
}

TEST(RoughLaplacian, HyperbolicViewMatchesFiniteDifferences) {
  const auto e = lorentz_surface(0.5);
  SeededUniform rng(9);
  const KillingField v = KillingField::random(KillingKind::Hyperbolic, 4, rng);
  FdGeometry fd{e.immersion, View::Hyperbolic, [&](const Vec& x) { return v.at(x); }};
  for (const auto& p : samples(e.immersion, 5)) {
    EXPECT_LE((rough_laplacian(e.immersion, View::Hyperbolic, v.along(e.immersion), p) - fd.rough_laplacian(p)).norm(),
              1e-5);
  }
}

TEST(KillingFields, RandomFieldsPreserveTheModelForm) {
  SeededUniform rng(4);
  for (int t = 0; t < 20; ++t) {
    const Mat a = KillingField::random(KillingKind::Euclidean, 4, rng).matrix();
    EXPECT_LE((a + a.transpose()).norm(), 1e-12);
    const Mat s = KillingField::random(KillingKind::Spherical, 5, rng).matrix();
    EXPECT_LE((s + s.transpose()).norm(), 1e-12);
    const Mat h = KillingField::random(KillingKind::Hyperbolic, 4, rng).matrix();
    Mat g = Mat::Identity(4, 4);
    g(3, 3) = -1;
    EXPECT_LE((h.transpose() * g + g * h).norm(), 1e-12);
  }
  Mat bad = Mat::Identity(3, 3);
  EXPECT_THROW(KillingField::spherical(bad), ContractError);
  EXPECT_THROW(KillingField::hyperbolic(bad), ContractError);
  EXPECT_THROW(KillingField::euclidean(bad, Vec::Zero(3)), ContractError);
}

TEST(KillingFields, LaplacianIdentitiesInEveryView) {
  SeededUniform rng(12);
  struct Case {
    const char* example;
    View view;
    KillingKind kind;
  };
  for (const Case c : {Case{"perturbed(0.6,0.05)", View::Flat, KillingKind::Euclidean},
                       Case{"veronese", View::Flat, KillingKind::Euclidean},
                       Case{"sphere", View::Flat, KillingKind::Euclidean},
                       Case{"perturbed(0.6,0.05)", View::Sphere, KillingKind::Spherical},
                       Case{"htorus(0.5,3)", View::Sphere, KillingKind::Spherical},
                       Case{"veronese", View::Sphere, KillingKind::Spherical},
                       Case{"lorentz(0.5)", View::Hyperbolic, KillingKind::Hyperbolic},
                       Case{"lorentz(1.2)", View::Hyperbolic, KillingKind::Hyperbolic}}) {
    const auto e = example_by_name(c.example);
    const int m = e.immersion.ambient().embedding_dim();
    for (int f = 0; f < 3; ++f) {
      const KillingField v = KillingField::random(c.kind, m, rng);
      for (const auto& p : samples(e.immersion, 8)) {
        EXPECT_LE(killing_laplacian_residual(e.immersion, c.view, v, p), 1e-10) << c.example;
      }
    }
  }
}

TEST(KillingFields, MinimalSphereViewHasNoMeanCurvatureTerm) {
  // On a minimal surface of S^3 the prediction reduces to -nV + V^T.
  SeededUniform rng(3);
  const auto e = clifford_torus(1, 2);
  const KillingField v = KillingField::random(KillingKind::Spherical, 4, rng);
  for (const auto& p : samples(e.immersion, 6)) {
    const PointFrame fr = frame_at(e.immersion, View::Sphere, p);
    const Vec vx = v.at(fr.position);
    const Vec expected = -2.0 * vx + fr.tangent_part(vx);
    EXPECT_LE((killing_laplacian_prediction(e.immersion, View::Sphere, v, p) - expected).norm(), 1e-12);
  }
}

TEST(AmbientRicci, ConstantCurvatureValues) {
  const auto e = circle_product(0.6);
  const std::vector<double> p{0.3, 0.8};
  const PointFrame sp = frame_at(e.immersion, View::Sphere, p);
  const PointFrame fl = frame_at(e.immersion, View::Flat, p);
  const Vec nu = sp.normal[0];
  EXPECT_NEAR(ambient_ricci(sp, nu, nu), 2.0, 1e-14);
  EXPECT_NEAR(ambient_ricci(sp, sp.tangent[0], sp.tangent[0]), 1.0, 1e-14);
  EXPECT_NEAR(ambient_ricci(fl, nu, nu), 0.0, 1e-14);
}

TEST(TangentPart, ParallelSectionOnCmcHypersurfaceVanishes) {
  const auto e = circle_product(0.6);
  for (const auto& p : samples(e.immersion, 10)) {
    const auto r = check_tangent_part(e.immersion, View::Sphere, *e.unit_normal, p);
    EXPECT_LE(r.residual, 1e-12);
    EXPECT_LE(r.lhs, 1e-12);
    EXPECT_LE(r.gradient, 1e-12);
  }
}

TEST(TangentPart, NonParallelSectionHasNonzeroTerms) {
  const auto e = circle_product(0.6);
  double lhs = 0, trace = 0;
  for (const auto& p : samples(e.immersion, 10)) {
    const auto r = check_tangent_part(e.immersion, View::Flat, wiggle(e), p);
    EXPECT_LE(r.residual, 1e-8);
    lhs = std::max(lhs, r.lhs);
    trace = std::max(trace, r.trace);
  }
  EXPECT_GT(lhs, 1e-2);
  EXPECT_GT(trace, 1e-2);
}

TEST(TangentPart, PlaneWithConstantNormal) {
  const auto e = flat_plane();
  for (const auto& p : samples(e.immersion, 4)) {
    const auto r = check_tangent_part(e.immersion, View::Flat, constant_section(e.immersion, View::Flat, 0), p);
    EXPECT_EQ(r.residual, 0.0);
    EXPECT_EQ(r.lhs, 0.0);
  }
}

TEST(NormalPart, CliffordTorusUnitNormal) {
  const auto e = clifford_torus(1, 2);
  for (const auto& p : samples(e.immersion, 10)) {
    EXPECT_LE(check_n2eta(e.immersion, View::Sphere, *e.unit_normal, p), 1e-9);
    const PointFrame fr = frame_at(e.immersion, View::Sphere, p);
    const Vec nu = values_of(evaluate_field(e.unit_normal->eta, p));
    EXPECT_LE((simons_apply_vector(fr, nu) - 2.0 * nu).norm(), 1e-12);
  }
}

TEST(NormalPart, UmbilicalSphereFlatView) {
  const auto e = umbilical_sphere(0.5, 2);
  const NormalSection nu = section_theta(e, kPi / 2);
  for (const auto& p : samples(e.immersion, 10)) {
    EXPECT_LE(check_n2eta(e.immersion, View::Flat, nu, p), 1e-9);
  }
}

TEST(NormalPart, PlaneAndNonParallelSections) {
  const auto pl = flat_plane();
  const std::vector<double> q{0.1, 0.2};
  EXPECT_EQ(check_n2eta(pl.immersion, View::Flat, constant_section(pl.immersion, View::Flat, 0), q), 0.0);
  const auto e = circle_product(0.6);
  const std::vector<double> p{0.5, 0.9};
  EXPECT_THROW(check_n2eta(e.immersion, View::Flat, wiggle(e), p), ContractError);
  EXPECT_GT(normal_derivative_norm(e.immersion, View::Flat, wiggle(e), p), 0.1);
}

TEST(KillingPairing, MinimalTorusEquationA) {
  SeededUniform rng(31);
  const auto e = clifford_torus(1, 2);
  for (int f = 0; f < 3; ++f) {
    const KillingField v = KillingField::random(KillingKind::Spherical, 4, rng);
    for (const auto& p : samples(e.immersion, 8)) {
      const auto r = check_killing_pairing(e.immersion, View::Sphere, *e.unit_normal, v, p, true);
      EXPECT_LE(r.eq_a, 1e-10);
      EXPECT_LE(r.eq_lemma, 1e-10);
      ASSERT_TRUE(r.eq_useful.has_value());
      EXPECT_LE(*r.eq_useful, 1e-10);
      // Minimal: <∇²V, η> = -Ric(η, V).
      const PointFrame fr = frame_at(e.immersion, View::Sphere, p);
      const Vec nu = values_of(evaluate_field(e.unit_normal->eta, p));
      const Vec lap = rough_laplacian(e.immersion, View::Sphere, v.along(e.immersion), p);
      EXPECT_NEAR(lap.dot(nu), -ambient_ricci(fr, nu, v.at(fr.position)), 1e-10);
    }
  }
}

TEST(KillingPairing, PlaneTranslation) {
  const auto e = flat_plane();
  const KillingField v = KillingField::euclidean(Mat::Zero(3, 3), Vec::Constant(3, 0.7));
  for (const auto& p : samples(e.immersion, 4)) {
    const auto r = check_killing_pairing(e.immersion, View::Flat, constant_section(e.immersion, View::Flat, 0), v, p, true);
    EXPECT_LE(r.eq_a, 1e-15);
    EXPECT_LE(r.eq_lemma, 1e-15);
    EXPECT_LE(*r.eq_useful, 1e-15);
  }
}

TEST(KillingPairing, CircleProductConstantMixWithRotation) {
  SeededUniform rng(8);
  const auto e = circle_product(0.6);
  const KillingField s = KillingField::random(KillingKind::Spherical, 4, rng);
  const KillingField v = KillingField::euclidean(s.matrix(), Vec::Zero(4));
  for (double theta : {0.4, 1.1}) {
    for (const auto& p : samples(e.immersion, 8)) {
      const auto r = check_killing_pairing(e.immersion, View::Flat, section_theta(e, theta), v, p, true);
      EXPECT_LE(*r.eq_useful, 1e-8);
    }
  }
  const std::vector<double> p{0.5, 0.9};
  EXPECT_THROW(check_killing_pairing(e.immersion, View::Flat, wiggle(e), v, p, true), ContractError);
  EXPECT_FALSE(check_killing_pairing(e.immersion, View::Flat, wiggle(e), v, p, false).eq_useful.has_value());
}

TEST(GaussMap, MinimalTorusPositionIsEigenfunction) {
  const auto e = clifford_torus(1, 2);
  for (const auto& p : samples(e.immersion, 8)) {
    const Vec x = values_of(e.immersion.evaluate_at(p));
    EXPECT_LE((gauss_map_laplacian(e.immersion, section_theta(e, 0.0), p) + 2.0 * x).norm(), 1e-12);
  }
}

TEST(GaussMap, UnitNormalOfNonMinimalProductIsNotHarmonic) {
  for (double r : {0.3, 0.6}) {
    const auto e = circle_product(r);
    const double h = (1 - 2 * r * r) / (2 * r * std::sqrt(1 - r * r));
    for (const auto& p : samples(e.immersion, 8)) {
      EXPECT_NEAR(harmonicity_residual(e.immersion, section_theta(e, kPi / 2), p), 2 * std::abs(h), 1e-12);
    }
  }
}

TEST(GaussMap, PlaneConstantNormalIsHarmonic) {
  const auto e = flat_plane();
  for (const auto& p : samples(e.immersion, 4)) {
    const NormalSection eta = constant_section(e.immersion, View::Flat, 0);
    EXPECT_EQ(gauss_map_laplacian(e.immersion, eta, p).norm(), 0.0);
    EXPECT_EQ(harmonicity_residual(e.immersion, eta, p), 0.0);
  }
}

TEST(GaussMap, LaplacianMatchesDivergenceForm) {
  // Componentwise Δ by (1/√g) ∂_i(√g g^{ij} ∂_j η) with central differences.
  const auto e = perturbed_torus(0.6, 0.05);
  const NormalSection eta = section_theta(e, 0.9);
  auto val = [&](const std::vector<double>& q) { return values_of(evaluate_field(eta.eta, q)); };
  auto pos = [&](const std::vector<double>& q) { return values_of(e.immersion.evaluate_at(q)); };
  auto d = [](auto&& f, std::vector<double> q, int i, double h) {
    auto r = q;
    q[static_cast<std::size_t>(i)] += h;
    r[static_cast<std::size_t>(i)] -= h;
    return ((f(q) - f(r)) / (2 * h)).eval();
  };
  auto metric = [&](const std::vector<double>& q) {
    Mat g(2, 2);
    const Vec a = d(pos, q, 0, 1e-5), b = d(pos, q, 1, 1e-5);
    g << a.dot(a), a.dot(b), a.dot(b), b.dot(b);
    return g;
  };
  for (const auto& p : samples(e.immersion, 4)) {
    Vec div = Vec::Zero(4);
    for (int i = 0; i < 2; ++i) {
      div += d(
          [&](const std::vector<double>& q) {
            const Mat g = metric(q);
            const Mat gi = g.inverse();
            Vec flux = Vec::Zero(4);
            for (int j = 0; j < 2; ++j) flux += gi(i, j) * d(val, q, j, 1e-5);
            return (std::sqrt(g.determinant()) * flux).eval();
          },
          p, i, 1e-3);
    }
    const Vec fd = div / std::sqrt(metric(p).determinant());
    EXPECT_LE((gauss_map_laplacian(e.immersion, eta, p) - fd).norm(), 1e-5);
  }
}

TEST(SphereDecomposition, MinimalTorusCoefficients) {
  const auto e = clifford_torus(1, 2);
  for (double theta : {0.0, 0.4, kPi / 2, 2.0}) {
    for (const auto& p : samples(e.immersion, 6)) {
      const auto d = sphere_hypersurface_laplacian(e.immersion, *e.unit_normal, theta, p);
      EXPECT_LE(d.grad_term.norm(), 1e-12);
      EXPECT_NEAR(d.nu_coeff, 2 * std::sin(theta), 1e-12);
      EXPECT_NEAR(d.mu_coeff, 2 * std::cos(theta), 1e-12);
      EXPECT_LE(d.residual, 1e-12);
    }
  }
}

TEST(SphereDecomposition, HTorusAtRightAngle) {
  const auto e = h_torus(0.5, 3);
  for (const auto& p : samples(e.immersion, 6)) {
    const auto d = sphere_hypersurface_laplacian(e.immersion, *e.unit_normal, kPi / 2, p);
    EXPECT_NEAR(d.mu_coeff, -3 * d.mean_curvature, 1e-12);
    EXPECT_NEAR(d.mean_curvature, *e.known->mean_curvature, 1e-12);
    EXPECT_LE(d.residual, 1e-10);
  }
}

TEST(SphereDecomposition, NonCmcHasGradientTerm) {
  const auto e = perturbed_torus(0.6, 0.05);
  double worst = 0, grad = 0;
  for (const auto& p : samples(e.immersion, 8)) {
    const auto d = sphere_hypersurface_laplacian(e.immersion, *e.unit_normal, 0.8, p);
    worst = std::max(worst, d.residual);
    grad = std::max(grad, d.grad_term.norm());
  }
  EXPECT_LE(worst, 1e-10);
  EXPECT_GT(grad, 1e-3);
}

TEST(EulerLagrange, EigenSectionsAndControls) {
  const auto c = clifford_torus(1, 2);
  const auto e = circle_product(0.6);
  const auto pl = flat_plane();
  double wig = 0;
  for (const auto& p : samples(c.immersion, 8)) {
    EXPECT_LE(euler_lagrange_residual(c.immersion, View::Sphere, *c.unit_normal, p), 1e-9);
    wig = std::max(wig, euler_lagrange_residual(e.immersion, View::Flat, wiggle(e), p));
  }
  EXPECT_GT(wig, 1e-3);
  const std::vector<double> q{0.2, 0.3};
  EXPECT_EQ(euler_lagrange_residual(pl.immersion, View::Flat, constant_section(pl.immersion, View::Flat, 0), q), 0.0);
}

TEST(OffEigen, MixedSectionOfHTorus) {
  const auto e = h_torus(0.5, 3);
  const auto c = clifford_torus(1, 2);
  for (const auto& p : samples(e.immersion, 6)) {
    EXPECT_GT(off_eigen_residual(e.immersion, section_theta(e, kPi / 4), p), 0.1);
  }
  for (const auto& p : samples(c.immersion, 6)) {
    EXPECT_LE(off_eigen_residual(c.immersion, section_theta(c, kPi / 4), p), 1e-12);
  }
}

TEST(MixWithPosition, AgreesWithSectionTheta) {
  const auto e = circle_product(0.3);
  const NormalSection a = mix_with_position(e.immersion, *e.unit_normal, 0.7);
  const NormalSection b = section_theta(e, 0.7);
  for (const auto& p : samples(e.immersion, 4)) {
    EXPECT_LE((values_of(evaluate_field(a.eta, p)) - values_of(evaluate_field(b.eta, p))).norm(), 1e-15);
  }
}

}  // namespace
}  // namespace gaussmap
