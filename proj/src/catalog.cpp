#include "gaussmap/catalog.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <regex>

#include "gaussmap/errors.hpp"

namespace gaussmap {
namespace {

constexpr double kPolarMargin = 0.35;
constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

// Unit sphere S^k from k angles: polar angles first, azimuth last.
JetVec unit_sphere_chart(std::span<const Jet3> ang) {
  const std::size_t k = ang.size();
  JetVec x;
  Jet3 prod = Jet3::constant(ang[0].dim(), 1.0);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    x.push_back(prod * cos(ang[i]));
    prod = prod * sin(ang[i]);
  }
  x.push_back(prod * cos(ang[k - 1]));
  x.push_back(prod * sin(ang[k - 1]));
  return x;
}

std::vector<ParamInterval> sphere_box(int k) {
  std::vector<ParamInterval> box;
  for (int i = 0; i + 1 < k; ++i) box.push_back({kPolarMargin, kPi - kPolarMargin, false});
  box.push_back({0.0, 2.0 * kPi, true});
  return box;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

// S^k(r1) × S^l(r2) ⊂ S^{k+l+1}, with ν = (-r2 x̂, r1 ŷ).
CatalogEntry sphere_product(const std::string& name, int k, int l, double r1, std::string provenance) {
  const int n = k + l;
  require(n <= kMaxJetDim, name + ": total dimension exceeds " + std::to_string(kMaxJetDim));
  const double r2 = std::sqrt(1.0 - r1 * r1);
  auto split = [k, l](std::span<const Jet3> vars) {
    return std::pair{unit_sphere_chart(vars.subspan(0, static_cast<std::size_t>(k))),
                     unit_sphere_chart(vars.subspan(static_cast<std::size_t>(k), static_cast<std::size_t>(l)))};
  };
  JetField chart = [split, r1, r2](std::span<const Jet3> vars) {
    auto [x, y] = split(vars);
    JetVec out;
    for (const Jet3& c : x) out.push_back(r1 * c);
    for (const Jet3& c : y) out.push_back(r2 * c);
    return out;
  };
  JetField normal = [split, r1, r2](std::span<const Jet3> vars) {
    auto [x, y] = split(vars);
    JetVec out;
    for (const Jet3& c : x) out.push_back(-r2 * c);
    for (const Jet3& c : y) out.push_back(r1 * c);
    return out;
  };
  std::vector<ParamInterval> box = sphere_box(k);
  for (const auto& iv : sphere_box(l)) box.push_back(iv);

  KnownData known;
  const double lam1 = r2 / r1;
  const double lam2 = -r1 / r2;
  for (int i = 0; i < k; ++i) known.principal_curvatures.push_back(lam1);
  for (int i = 0; i < l; ++i) known.principal_curvatures.push_back(lam2);
  const double h = (k * lam1 + l * lam2) / n;
  known.mean_curvature = h;
  known.shape_norm_sq = k * lam1 * lam1 + l * lam2 * lam2;
  known.second_form_norm_sq = known.shape_norm_sq;

  CatalogEntry e{name,
                 Immersion(name, n, AmbientSpace::sphere(n + 1), std::move(chart), std::move(box)),
                 NormalSection{std::move(normal), "nu"},
                 known,
                 std::move(provenance)};
  e.isoparametric = true;
  e.negative_mean_curvature = h < -1e-14;
  return e;
}

std::vector<double> parse_args(const std::string& raw, const std::string& family) {
  std::vector<double> out;
  if (raw.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = raw.find(',', start);
    std::string tok = raw.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto b = tok.find_first_not_of(" \t");
    const auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw UsageError("empty parameter in '" + family + "'");
    tok = tok.substr(b, e - b + 1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw UsageError("bad number '" + tok + "' in '" + family + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int as_int(double v, const std::string& family) {
  if (v != std::floor(v) || std::abs(v) > 1e6) throw UsageError("'" + family + "' expects an integer parameter");
  return static_cast<int>(v);
}

}  // namespace

CatalogEntry clifford_torus(int k, int n) {
  require(n >= 2 && k >= 1 && k <= n - 1, "clifford_torus: need 1 <= k <= n-1");
  return sphere_product("clifford(" + std::to_string(k) + "," + std::to_string(n) + ")", k, n - k,
                        std::sqrt(static_cast<double>(k) / n),
                        "minimal Clifford torus, |S_nu|^2 = n");
}

CatalogEntry circle_product(double r) {
  require(r > 0.0 && r < 1.0, "circle_product: need 0 < r < 1");
  return sphere_product("circles(" + fmt(r) + ")", 1, 1, r,
                        "product of circles, principal curvatures sqrt(1-r^2)/r and -r/sqrt(1-r^2)");
}

CatalogEntry h_torus(double r, int n) {
  require(r > 0.0 && r < 1.0, "h_torus: need 0 < r < 1");
  require(n >= 2, "h_torus: need n >= 2");
  return sphere_product("htorus(" + fmt(r) + "," + std::to_string(n) + ")", n - 1, 1, r,
                        "H(r)-torus S^{n-1}(r) x S^1(sqrt(1-r^2))");
}

CatalogEntry umbilical_sphere(double rho, int n) {
  require(rho > 0.0 && rho < 1.0, "umbilical_sphere: need 0 < rho < 1");
  require(n >= 1 && n <= kMaxJetDim, "umbilical_sphere: need 1 <= n <= 4");
  const double height = std::sqrt(1.0 - rho * rho);
  JetField chart = [rho, height](std::span<const Jet3> vars) {
    JetVec out;
    for (const Jet3& c : unit_sphere_chart(vars)) out.push_back(rho * c);
    out.push_back(Jet3::constant(vars[0].dim(), height));
    return out;
  };
  JetField normal = [rho, height](std::span<const Jet3> vars) {
    JetVec out;
    for (const Jet3& c : unit_sphere_chart(vars)) out.push_back(-height * c);
    out.push_back(Jet3::constant(vars[0].dim(), rho));
    return out;
  };
  const std::string name = "umbilical(" + fmt(rho) + "," + std::to_string(n) + ")";
  const double lam = height / rho;
  KnownData known;
  known.principal_curvatures.assign(static_cast<std::size_t>(n), lam);
  known.mean_curvature = lam;
  known.shape_norm_sq = n * lam * lam;
  known.second_form_norm_sq = known.shape_norm_sq;
  CatalogEntry e{name,
                 Immersion(name, n, AmbientSpace::sphere(n + 1), std::move(chart), sphere_box(n)),
                 NormalSection{std::move(normal), "nu"},
                 known,
                 "totally umbilical small sphere, principal curvature sqrt(1-rho^2)/rho"};
  e.isoparametric = true;
  return e;
}

CatalogEntry veronese() {
  JetField chart = [](std::span<const Jet3> vars) {
    const JetVec s = unit_sphere_chart(vars);
    const Jet3& x = s[0];
    const Jet3& y = s[1];
    const Jet3& z = s[2];
    const double r3 = std::sqrt(3.0);
    return JetVec{r3 * y * z, r3 * z * x, r3 * x * y, (r3 / 2.0) * (x * x - y * y),
                  0.5 * (x * x + y * y - 2.0 * (z * z))};
  };
  KnownData known;
  known.mean_curvature = 0.0;
  known.second_form_norm_sq = 4.0 / 3.0;
  return CatalogEntry{"veronese",
                      Immersion("veronese", 2, AmbientSpace::sphere(4), std::move(chart), sphere_box(2)),
                      std::nullopt,
                      known,
                      "Veronese surface, minimal in S^4 with |B|^2 = 4/3"};
}

CatalogEntry perturbed_torus(double r, double eps) {
  require(r > 0.0 && r < 1.0, "perturbed_torus: need 0 < r < 1");
  require(std::abs(eps) <= 0.05, "perturbed_torus: need |eps| <= 0.05");
  require(r - std::abs(eps) > 0.0 && r + std::abs(eps) < 1.0, "perturbed_torus: radius leaves (0,1)");
  const std::string name = "perturbed(" + fmt(r) + "," + fmt(eps) + ")";
  auto radii = [r, eps](std::span<const Jet3> vars) {
    const Jet3 rho = r + eps * cos(vars[1]);
    const Jet3 sigma = sqrt(1.0 - rho * rho);
    return std::pair{rho, sigma};
  };
  JetField chart = [radii](std::span<const Jet3> vars) {
    auto [rho, sigma] = radii(vars);
    return JetVec{rho * cos(vars[0]), rho * sin(vars[0]), sigma * cos(vars[1]), sigma * sin(vars[1])};
  };
  Immersion imm(name, 2, AmbientSpace::sphere(3), chart,
                {{0.0, 2.0 * kPi, true}, {0.0, 2.0 * kPi, true}});
  JetField normal = [imm, radii](std::span<const Jet3> vars) {
    auto [rho, sigma] = radii(vars);
    const JetVec ref{-sigma * cos(vars[0]), -sigma * sin(vars[0]), rho * cos(vars[1]), rho * sin(vars[1])};
    return project_normal_jets(imm, View::Sphere, vars, ref);
  };
  CatalogEntry e{name, imm, NormalSection{std::move(normal), "nu"}, std::nullopt,
                 "radial perturbation of the product of circles; not CMC"};
  e.negative_control = true;
  return e;
}

CatalogEntry lorentz_surface(double a) {
  require(std::isfinite(a) && std::abs(a) <= 2.0, "lorentz_surface: need |a| <= 2");
  const std::string name = "lorentz(" + fmt(a) + ")";
  JetField chart = [a](std::span<const Jet3> vars) {
    const Jet3& u = vars[0];
    const Jet3& v = vars[1];
    const Jet3 h = a * sin(u) * cos(v);
    const Jet3 t = sqrt(1.0 + u * u + v * v + h * h);
    return JetVec{u, v, h, t};
  };
  return CatalogEntry{name,
                      Immersion(name, 2, AmbientSpace::hyperbolic(3), std::move(chart),
                                {{-1.0, 1.0, false}, {-1.0, 1.0, false}}),
                      std::nullopt, std::nullopt, "graph surface in the hyperboloid model"};
}

CatalogEntry flat_plane() {
  JetField chart = [](std::span<const Jet3> vars) {
    return JetVec{vars[0], vars[1], Jet3::constant(vars[0].dim(), 0.0)};
  };
  KnownData known;
  known.mean_curvature = 0.0;
  known.second_form_norm_sq = 0.0;
  return CatalogEntry{"plane",
                      Immersion("plane", 2, AmbientSpace::flat(3), std::move(chart),
                                {{-1.0, 1.0, false}, {-1.0, 1.0, false}}),
                      std::nullopt, known, "totally geodesic plane"};
}

CatalogEntry round_sphere() {
  JetField chart = [](std::span<const Jet3> vars) { return unit_sphere_chart(vars); };
  return CatalogEntry{"sphere",
                      Immersion("sphere", 2, AmbientSpace::flat(3), std::move(chart), sphere_box(2)),
                      std::nullopt, std::nullopt, "unit sphere in R^3"};
}

CatalogEntry example_by_name(const std::string& spec) {
  static const std::regex pattern(R"(^\s*([a-z]+)\s*(?:\(([^()]*)\))?\s*$)");
  std::smatch m;
  if (!std::regex_match(spec, m, pattern)) throw UsageError("malformed example '" + spec + "'");
  const std::string family = m[1];
  const auto args = parse_args(m[2], family);
  auto want = [&](std::size_t count) {
    if (args.size() != count) {
      throw UsageError("'" + family + "' takes " + std::to_string(count) + " parameter(s)");
    }
  };
  try {
    if (family == "clifford") {
      want(2);
      return clifford_torus(as_int(args[0], family), as_int(args[1], family));
    }
    if (family == "circles") {
      want(1);
      return circle_product(args[0]);
    }
    if (family == "htorus") {
      want(2);
      return h_torus(args[0], as_int(args[1], family));
    }
    if (family == "umbilical") {
      want(2);
      return umbilical_sphere(args[0], as_int(args[1], family));
    }
    if (family == "veronese") {
      want(0);
      return veronese();
    }
    if (family == "perturbed") {
      want(2);
      return perturbed_torus(args[0], args[1]);
    }
    if (family == "lorentz") {
      want(1);
      return lorentz_surface(args[0]);
    }
    if (family == "plane") {
      want(0);
      return flat_plane();
    }
    if (family == "sphere") {
      want(0);
      return round_sphere();
    }
  } catch (const DomainError& err) {
    throw UsageError(err.what());
  }
  throw UsageError("unknown example '" + family + "'");
}

std::vector<std::string> example_names() {
  return {"clifford(k,n)", "circles(r)", "htorus(r,n)", "umbilical(rho,n)", "veronese",
          "perturbed(r,eps)", "lorentz(a)", "plane", "sphere"};
}

NormalSection section_theta(const CatalogEntry& entry, double theta) {
  if (!entry.is_sphere_hypersurface()) {
    throw ContractError("'" + entry.name + "' is not a hypersurface of the unit sphere");
  }
  NormalSection s = mix_with_position(entry.immersion, *entry.unit_normal, theta);
  s.label = "theta=" + fmt(theta);
  return s;
}

NormalSection rotating_normal_section(const Immersion& imm, double theta, double twist) {
  if (imm.ambient().kind != SpaceKind::Sphere || imm.ambient().dim != imm.dim() + 2) {
    throw ContractError("'" + imm.name() + "' is not a codimension-2 surface of a sphere");
  }
  JetField field = [imm, theta, twist](std::span<const Jet3> vars) {
    const auto frame = normal_frame_jets(imm, View::Sphere, vars);
    const Jet3 angle = theta + twist * vars[0];
    const Jet3 c = cos(angle);
    const Jet3 s = sin(angle);
    JetVec out;
    for (std::size_t k = 0; k < frame[0].size(); ++k) out.push_back(c * frame[0][k] + s * frame[1][k]);
    return out;
  };
  return {std::move(field), "theta=" + fmt(theta) + ",twist=" + fmt(twist)};
}

QuadraticPH p_h_and_b_h(int n, double h) {
  require(n >= 2, "p_h_and_b_h: need n >= 2");
  require(h >= 0.0, "p_h_and_b_h: need H >= 0");
  QuadraticPH q;
  const double beta = n * (n - 2) / std::sqrt(static_cast<double>(n) * (n - 1));
  q.linear = beta * h;
  q.constant = -n * (h * h + 1.0);
  q.positive_root = (-q.linear + std::sqrt(q.linear * q.linear - 4.0 * q.constant)) / 2.0;
  // x₊² = -linear·x₊ - constant; exact when the linear term vanishes.
  q.b_h = -q.constant - q.linear * q.positive_root;
  return q;
}

double theta_equation_residual(int n, double h, double c, double theta) {
  return std::abs(n * h * (1.0 / std::tan(theta) - std::tan(theta)) - c);
}

ThetaSolution solve_theta(int n, double h, double c) {
  require(n >= 1, "solve_theta: need n >= 1");
  if (h == 0.0) throw DomainError("solve_theta: the equation degenerates for H = 0");
  // nH t² + C t - nH = 0; the roots multiply to -1, so exactly one is positive.
  const double a = n * h;
  const double disc = std::sqrt(c * c + 4.0 * a * a);
  const double q = -0.5 * (c + (c >= 0.0 ? disc : -disc));
  const double r1 = q / a;
  const double r2 = -a / q;
  const double t = r1 > 0.0 ? r1 : r2;
  ThetaSolution s;
  s.theta1 = std::atan(t);
  s.theta2 = s.theta1 + kPi / 2.0;
  s.residual = std::max(theta_equation_residual(n, h, c, s.theta1), theta_equation_residual(n, h, c, s.theta2));
  return s;
}

}  // namespace gaussmap
