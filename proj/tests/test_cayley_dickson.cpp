#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "gaussmap/cayley_dickson.hpp"
#include "gaussmap/errors.hpp"

namespace gaussmap {
namespace {

CDNumber random_cd(int level, SeededUniform& rng, bool imaginary = false) {
  std::vector<double> c(std::size_t{1} << level);
  for (auto& v : c) v = rng.in(-1, 1);
  if (imaginary) c[0] = 0;
  return CDNumber(level, c);
}

Vec as_vec(const CDNumber& x) { return Eigen::Map<const Vec>(x.coeffs().data(), x.size()); }

double dist(const CDNumber& a, const CDNumber& b) { return (as_vec(a) - as_vec(b)).norm(); }

CDNumber sub(const CDNumber& a, const CDNumber& b) {
  std::vector<double> c(a.coeffs());
  for (int i = 0; i < a.size(); ++i) c[static_cast<std::size_t>(i)] -= b[i];
  return CDNumber(a.level(), c);
}

TEST(CayleyDickson, ComplexAndQuaternionUnits) {
  const CDNumber i1 = CDNumber::basis(1, 1);
  EXPECT_EQ(dist(cd_mul(i1, i1), sub(CDNumber(1), CDNumber::one(1))), 0.0);
  const CDNumber i = CDNumber::basis(2, 1), j = CDNumber::basis(2, 2), k = CDNumber::basis(2, 3);
  EXPECT_EQ(dist(cd_mul(i, j), k), 0.0);
  EXPECT_EQ(dist(cd_mul(j, k), i), 0.0);
  EXPECT_EQ(dist(cd_mul(k, i), j), 0.0);
  EXPECT_EQ(dist(cd_mul(j, i), sub(CDNumber(2), k)), 0.0);
}

TEST(CayleyDickson, OneIsATwoSidedUnit) {
  SeededUniform rng(3);
  for (int level = 0; level <= kOctonionLevel; ++level) {
    const CDNumber x = random_cd(level, rng);
    EXPECT_EQ(dist(cd_mul(CDNumber::one(level), x), x), 0.0);
    EXPECT_EQ(dist(cd_mul(x, CDNumber::one(level)), x), 0.0);
  }
}

TEST(CayleyDickson, OctonionTableMatchesReferenceFile) {
  std::ifstream in(std::string(GAUSSMAP_FIXTURES) + "/octonion_table.txt");
  ASSERT_TRUE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  const auto golden = parse_multiplication_table(buf.str());
  const auto table = multiplication_table(kOctonionLevel);
  ASSERT_EQ(golden.size(), 8u);
  EXPECT_EQ(table, golden);
  EXPECT_EQ(parse_multiplication_table(format_multiplication_table(table)), table);
}

TEST(CayleyDickson, TableParserRejectsGarbage) {
  EXPECT_THROW(parse_multiplication_table("+e1 e2\n"), UsageError);
  EXPECT_THROW(parse_multiplication_table("+x1\n"), UsageError);
}

TEST(CayleyDickson, NormIsMultiplicativeUpToOctonions) {
  SeededUniform rng(11);
  for (int level = 0; level <= kOctonionLevel; ++level) {
    for (int t = 0; t < 200; ++t) {
      const CDNumber x = random_cd(level, rng), y = random_cd(level, rng);
      EXPECT_NEAR(cd_norm(cd_mul(x, y)), cd_norm(x) * cd_norm(y), 1e-14);
    }
  }
}

TEST(CayleyDickson, SedenionsLoseTheNormProperty) {
  // (e1 + e10)(e5 + e14) = 0 in the sixteen-dimensional algebra.
  std::vector<double> a(16, 0.0), b(16, 0.0);
  a[1] = a[10] = 1;
  b[5] = b[14] = 1;
  const auto p = cd_mul(a, b);
  double s = 0;
  for (double v : p) s += v * v;
  EXPECT_NEAR(s, 0.0, 1e-15);
}

TEST(CayleyDickson, TranslationsByUnitsAreOrthogonal) {
  SeededUniform rng(19);
  EXPECT_TRUE(left_translation_matrix(CDNumber::one(3)).isIdentity(0.0));
  for (int t = 0; t < 100; ++t) {
    CDNumber x = random_cd(3, rng);
    std::vector<double> c(x.coeffs());
    const double nx = cd_norm(x);
    for (auto& v : c) v /= nx;
    x = CDNumber(3, c);
    const Mat l = left_translation_matrix(x), r = right_translation_matrix(x);
    EXPECT_LE((l.transpose() * l - Mat::Identity(8, 8)).norm(), 1e-13);
    EXPECT_LE((r.transpose() * r - Mat::Identity(8, 8)).norm(), 1e-13);
    const CDNumber v = random_cd(3, rng, true);
    const Mat rv = right_translation_matrix(v);
    EXPECT_LE((rv + rv.transpose()).norm(), 1e-13);
    const CDNumber y = random_cd(3, rng);
    EXPECT_LE((r * as_vec(y) - as_vec(cd_mul(y, x))).norm(), 1e-14);
    EXPECT_LE((l * as_vec(y) - as_vec(cd_mul(x, y))).norm(), 1e-14);
  }
}

TEST(CayleyDickson, OctonionsAreAlternativeButNotAssociative) {
  SeededUniform rng(23);
  for (int t = 0; t < 100; ++t) {
    const CDNumber x = random_cd(3, rng), y = random_cd(3, rng);
    EXPECT_LE(dist(cd_mul(cd_mul(x, x), y), cd_mul(x, cd_mul(x, y))), 1e-13);
    EXPECT_LE(dist(cd_mul(cd_mul(y, x), x), cd_mul(y, cd_mul(x, x))), 1e-13);
  }
  const CDNumber e1 = CDNumber::basis(3, 1), e2 = CDNumber::basis(3, 2), e4 = CDNumber::basis(3, 4);
  EXPECT_NEAR(dist(cd_mul(cd_mul(e1, e2), e4), cd_mul(e1, cd_mul(e2, e4))), 2.0, 1e-15);
  for (int t = 0; t < 10; ++t) {
    const CDNumber a = random_cd(2, rng), b = random_cd(2, rng), c = random_cd(2, rng);
    EXPECT_LE(dist(cd_mul(cd_mul(a, b), c), cd_mul(a, cd_mul(b, c))), 1e-14);
  }
}

TEST(CayleyDickson, InverseAndConjugate) {
  SeededUniform rng(29);
  const CDNumber x = random_cd(3, rng);
  EXPECT_LE(dist(cd_mul(x, cd_inv(x)), CDNumber::one(3)), 1e-14);
  EXPECT_LE(dist(cd_mul(cd_inv(x), x), CDNumber::one(3)), 1e-14);
  EXPECT_NEAR(cd_mul(x, cd_conj(x)).re(), cd_norm(x) * cd_norm(x), 1e-14);
  EXPECT_THROW(cd_inv(CDNumber(3)), SingularJetError);
  EXPECT_THROW(cd_mul(CDNumber(2), CDNumber(3)), ContractError);
  EXPECT_THROW(CDNumber(4), DomainError);
}

TEST(CayleyDickson, JetProductObeysLeibniz) {
  SeededUniform rng(31);
  const std::vector<double> p{0.4, -0.2};
  const auto u = lift_vars(p);
  std::vector<Jet3> x, y;
  for (int i = 0; i < 8; ++i) {
    x.push_back(sin(u[0] * rng.in(-1, 1) + u[1] * rng.in(-1, 1)));
    y.push_back(cos(u[0] * rng.in(-1, 1)) * u[1] + rng.in(-1, 1));
  }
  const auto xy = cd_mul(x, y);
  auto part = [](const std::vector<Jet3>& v, int which) {
    std::vector<double> out;
    for (const Jet3& j : v) out.push_back(which < 0 ? j.value() : j.d(which));
    return out;
  };
  const auto x0 = part(x, -1), y0 = part(y, -1);
  const auto value = cd_mul(x0, y0);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(xy[static_cast<std::size_t>(i)].value(), value[static_cast<std::size_t>(i)], 1e-15);
  for (int dir = 0; dir < 2; ++dir) {
    const auto a = cd_mul(part(x, dir), y0), b = cd_mul(x0, part(y, dir));
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(xy[i].d(dir), a[i] + b[i], 1e-14);
  }
}

TEST(OctonionicKilling, RightMultiplicationIsTangent) {
  SeededUniform rng(37);
  const CDNumber v = random_cd(3, rng, true);
  const KillingField k = octonionic_killing(v);
  EXPECT_EQ(k.kind(), KillingKind::Octonionic);
  for (int t = 0; t < 20; ++t) {
    const Vec x = as_vec(random_cd(3, rng)).normalized();
    EXPECT_NEAR(k.at(x).dot(x), 0.0, 1e-14);
  }
  EXPECT_THROW(octonionic_killing(CDNumber::one(3)), ContractError);
  EXPECT_THROW(octonionic_killing(CDNumber::basis(2, 1)), ContractError);
}

TEST(OctonionicGaussMap, EmbeddingPadsWithZeros) {
  const auto e = embed_in_s7(clifford_torus(1, 2));
  const auto plan = make_sample_plan(e.immersion.box(), 5, 10, false);
  for (const auto& p : plan.points) {
    const Vec x = values_of(e.immersion.evaluate_at(p));
    ASSERT_EQ(x.size(), 8);
    EXPECT_NEAR(x.norm(), 1.0, 1e-14);
    EXPECT_EQ(x.tail(4).norm(), 0.0);
  }
  EXPECT_THROW(embed_in_s7(veronese()), ContractError);
}

class OctonionicLaplacian : public ::testing::TestWithParam<const char*> {};

TEST_P(OctonionicLaplacian, ClosedFormHolds) {
  const auto e = example_by_name(GetParam());
  const auto plan = make_sample_plan(e.immersion.box(), 41, 12, false);
  for (const auto& p : plan.points) {
    const CDNumber g = octonionic_gauss_map(e, p);
    EXPECT_NEAR(g.re(), 0.0, 1e-13);
    EXPECT_NEAR(cd_norm(g), 1.0, 1e-13);
    const auto c = octonionic_laplacian_check(e, p);
    EXPECT_LE(c.residual, 1e-8);
    if (e.isoparametric) {
      EXPECT_LE(c.harmonicity, 1e-8);
      EXPECT_LE(c.grad_h_norm, 1e-10);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(CayleyDickson, OctonionicLaplacian,
                         ::testing::Values("clifford(1,2)", "circles(0.6)", "umbilical(0.5,2)", "htorus(0.5,3)",
                                           "clifford(2,4)", "perturbed(0.6,0.05)"));

TEST(OctonionicGaussMap, CliffordFactorAndSuperharmonicity) {
  const auto e = clifford_torus(1, 2);
  const std::vector<double> p{0.3, 1.1};
  EXPECT_NEAR(octonionic_laplacian_check(e, p).factor, 4.0, 1e-12);
  SeededUniform rng(43);
  const CDNumber v = random_cd(3, rng, true);
  EXPECT_LE(octonionic_superharmonicity_residual(e, v, p), 1e-8);
}

TEST(OctonionicGaussMap, PerturbedTorusIsNotHarmonic) {
  const auto e = perturbed_torus(0.6, 0.05);
  const auto plan = make_sample_plan(e.immersion.box(), 41, 32, false);
  double worst = 0;
  for (const auto& p : plan.points) worst = std::max(worst, octonionic_laplacian_check(e, p).harmonicity);
  EXPECT_GT(worst, 1e-3);
}

}  // namespace
}  // namespace gaussmap
