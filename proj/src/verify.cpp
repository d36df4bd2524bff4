#include "gaussmap/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>

#include "gaussmap/catalog.hpp"
#include "gaussmap/cayley_dickson.hpp"
#include "gaussmap/errors.hpp"
#include "gaussmap/laplace.hpp"

namespace gaussmap {
namespace {

constexpr double kPi = std::numbers::pi;
// Pinned thresholds that do not scale with the tolerance profile.
constexpr double kAlgebraTolerance = 1e-12;
constexpr double kOffsetAngle = 0.1;
constexpr double kOffsetThreshold = 1e-4;
constexpr double kNegativeControlThreshold = 1e-3;
constexpr double kNonExistenceThreshold = 1e-4;
constexpr std::uint64_t kFieldStream = 0x9e3779b97f4a7c15ULL;

const std::vector<CheckInfo> kChecks = {
    {"killing-flat", "circles(0.6)", "rough Laplacian of Euclidean Killing fields in the flat view",
     {"samples", "fields"}},
    {"killing-sphere", "circles(0.6)", "rough Laplacian of sphere Killing fields in the sphere view",
     {"samples", "fields"}},
    {"killing-hyperbolic", "lorentz(0.5)", "rough Laplacian of Lorentz Killing fields in the hyperbolic view",
     {"samples", "fields"}},
    {"tangent-part", "circles(0.6)", "tangential part of the rough Laplacian of a unit normal section",
     {"samples"}},
    {"n2eta", "circles(0.6)", "normal part of the rough Laplacian of a parallel section equals -B~(eta)",
     {"samples"}},
    {"corol2", "circles(0.6)", "Laplacian of <eta,V> for Killing fields V", {"samples", "fields"}},
    {"euler-lagrange", "clifford(1,2)", "harmonic-section equation for Simons eigen-sections",
     {"samples", "thetas"}},
    {"thm3-equivalence", "htorus(0.5,3)", "harmonic Gauss map iff Simons eigen-section",
     {"samples", "scan"}},
    {"harm-theta", "circles(0.6)", "harmonic angle of eta = sin(theta) nu + cos(theta) mu",
     {"samples", "theta"}},
    {"lemmasphere-decomp", "circles(0.6)", "decomposition of the Gauss map Laplacian on sphere hypersurfaces",
     {"samples"}},
    {"isorn-spectrum", "clifford(1,2)", "constancy of the Simons spectrum on isoparametric fixtures",
     {"samples"}},
    {"octonion-lapoc", "clifford(1,2)", "octonion algebra and the octonionic Gauss map Laplacian",
     {"samples", "pairs"}},
    {"nhS4-scan", "veronese", "harmonicity over a grid of unit normal sections of a surface in S^4",
     {"samples", "grid"}},
    {"classification-scan", "circles(0.6)", "harmonicity of sections with non-constant coefficients",
     {"samples", "thetas"}},
};

std::string fmt(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

double parse_number(const std::string& key, const std::string& raw) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (ec != std::errc{} || ptr != raw.data() + raw.size() || !std::isfinite(v)) {
    throw UsageError("parameter '" + key + "' is not a number: '" + raw + "'");
  }
  return v;
}

// Worst value, with NaN sticking once seen.
void worst(double& acc, double x) {
  if (std::isnan(x) || x > acc) acc = x;
}

struct SectionSpec {
  View view;
  NormalSection section;
  bool parallel;
};

JetField frame_normal(const Immersion& imm, View view, int index) {
  return [imm, view, index](std::span<const Jet3> vars) {
    return normal_frame_jets(imm, view, vars)[static_cast<std::size_t>(index)];
  };
}

NormalSection wiggle_section(const CatalogEntry& e) {
  JetField f = [imm = e.immersion, nu = e.unit_normal->eta](std::span<const Jet3> vars) {
    JetVec x = imm.evaluate(vars);
    const JetVec n = nu(vars);
    const Jet3 s = sin(vars[0]);
    const Jet3 c = cos(vars[0]);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = s * n[k] + c * x[k];
    return x;
  };
  return {std::move(f), "sin(u0)nu+cos(u0)mu"};
}

// sin(θ + φ u_0) ν + cos(θ + φ u_0) μ.
NormalSection twisted_section(const CatalogEntry& e, double theta, double twist) {
  JetField f = [imm = e.immersion, nu = e.unit_normal->eta, theta, twist](std::span<const Jet3> vars) {
    JetVec x = imm.evaluate(vars);
    const JetVec n = nu(vars);
    const Jet3 angle = theta + twist * vars[0];
    const Jet3 s = sin(angle);
    const Jet3 c = cos(angle);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = s * n[k] + c * x[k];
    return x;
  };
  return {std::move(f), "theta=" + fmt(theta) + ",twist=" + fmt(twist)};
}

class Runner {
 public:
  explicit Runner(const VerifyRequest& req)
      : req_(req),
        info_(check_info(req.check_id)),
        tol_(req.tolerances),
        entry_(example_by_name(req.example.empty() ? info_.default_example : req.example)),
        rng_(req.seed ^ kFieldStream) {
    for (const auto& [k, v] : req.params) {
      if (std::find(info_.params.begin(), info_.params.end(), k) == info_.params.end()) {
        throw UsageError("check '" + info_.id + "' does not take parameter '" + k + "'");
      }
    }
    const int count = static_cast<int>(get("samples", kDefaultSampleCount));
    if (count < 1 || count > 100000) throw UsageError("samples must be in 1..100000");
    plan_ = make_sample_plan(entry_.immersion.box(), req.seed, count);
  }

  std::vector<CheckRecord> run() {
    static const std::map<std::string, void (Runner::*)()> dispatch = {
        {"killing-flat", &Runner::killing_flat},
        {"killing-sphere", &Runner::killing_sphere},
        {"killing-hyperbolic", &Runner::killing_hyperbolic},
        {"tangent-part", &Runner::tangent_part},
        {"n2eta", &Runner::n2eta},
        {"corol2", &Runner::corol2},
        {"euler-lagrange", &Runner::euler_lagrange},
        {"thm3-equivalence", &Runner::thm3_equivalence},
        {"harm-theta", &Runner::harm_theta},
        {"lemmasphere-decomp", &Runner::lemmasphere_decomp},
        {"isorn-spectrum", &Runner::isorn_spectrum},
        {"octonion-lapoc", &Runner::octonion_lapoc},
        {"nhS4-scan", &Runner::nhs4_scan},
        {"classification-scan", &Runner::classification_scan},
    };
    (this->*dispatch.at(info_.id))();
    return std::move(out_);
  }

 private:
  double get(const std::string& key, double fallback) const {
    auto it = req_.params.find(key);
    return it == req_.params.end() ? fallback : parse_number(key, it->second);
  }
  std::optional<double> get_opt(const std::string& key) const {
    auto it = req_.params.find(key);
    if (it == req_.params.end()) return std::nullopt;
    return parse_number(key, it->second);
  }
  int get_count(const std::string& key, int fallback, int lo, int hi) const {
    const double v = get(key, fallback);
    if (v != std::floor(v) || v < lo || v > hi) {
      throw UsageError("parameter '" + key + "' must be an integer in " + std::to_string(lo) + ".." +
                       std::to_string(hi));
    }
    return static_cast<int>(v);
  }

  CheckRecord& add(const std::string& label, double residual, double tolerance, Expect expect,
                   std::vector<std::pair<std::string, double>> values = {}, int samples = -1) {
    CheckRecord r;
    r.check_id = info_.id;
    r.example = entry_.name;
    r.label = label;
    r.params = req_.params;
    r.samples = samples < 0 ? static_cast<int>(plan_.points.size()) : samples;
    r.max_residual = residual;
    r.tolerance = tolerance;
    r.expect = expect;
    r.verdict = judge(expect, residual, tolerance);
    r.values = std::move(values);
    out_.push_back(std::move(r));
    return out_.back();
  }

  double over_samples(const std::function<double(std::span<const double>)>& f) const {
    double acc = 0.0;
    for (const auto& p : plan_.points) worst(acc, f(p));
    return acc;
  }

  const Immersion& imm() const { return entry_.immersion; }
  int ambient_size() const { return imm().ambient().embedding_dim(); }

  void need_hypersurface() const {
    if (!entry_.is_sphere_hypersurface()) {
      throw UsageError("check '" + info_.id + "' needs a hypersurface of the unit sphere, got '" +
                       entry_.name + "'");
    }
  }

  KillingField field_for(View view) {
    switch (view) {
      case View::Flat:
        return KillingField::random(KillingKind::Euclidean, ambient_size(), rng_);
      case View::Sphere:
        return KillingField::random(KillingKind::Spherical, ambient_size(), rng_);
      case View::Hyperbolic:
        return KillingField::random(KillingKind::Hyperbolic, ambient_size(), rng_);
    }
    throw ContractError("unknown view");
  }

  // Test sections for the lemma checks, with their views.
  std::vector<SectionSpec> sections() const {
    std::vector<SectionSpec> s;
    const SpaceKind kind = imm().ambient().kind;
    const int codim = imm().ambient().dim - imm().dim();
    if (entry_.is_sphere_hypersurface()) {
      for (double theta : {0.0, kPi / 4.0, kPi / 2.0}) {
        s.push_back({View::Flat, section_theta(entry_, theta), true});
      }
      s.push_back({View::Flat, wiggle_section(entry_), false});
      s.push_back({View::Sphere, *entry_.unit_normal, true});
    } else if (kind == SpaceKind::Sphere && codim == 2) {
      s.push_back({View::Sphere, rotating_normal_section(imm(), 0.4, 0.0), false});
      s.push_back({View::Sphere, rotating_normal_section(imm(), 0.4, 0.8), false});
    } else {
      const View v = kind == SpaceKind::Hyperbolic ? View::Hyperbolic : View::Flat;
      const int codim_view = ambient_size() - imm().dim() - (v == View::Flat ? 0 : 1);
      s.push_back({v, {frame_normal(imm(), v, 0), "frame-normal-1"}, codim_view == 1});
    }
    return s;
  }

  std::string view_label(const SectionSpec& s) const {
    return std::string(to_string(s.view)) + ":" + s.section.label;
  }

  void killing(View view) {
    const int fields = get_count("fields", 5, 1, 100);
    try {
      imm().view_curvature(view);
    } catch (const ContractError& e) {
      throw UsageError(e.what());
    }
    for (int f = 0; f < fields; ++f) {
      const KillingField v = field_for(view);
      const double r = over_samples([&](auto p) { return killing_laplacian_residual(imm(), view, v, p); });
      add(std::string(to_string(view)) + ":field=" + std::to_string(f), r, tol_.derived, Expect::Pass);
    }
  }
  void killing_flat() { killing(View::Flat); }
  void killing_sphere() { killing(View::Sphere); }
  void killing_hyperbolic() { killing(View::Hyperbolic); }

  void tangent_part() {
    for (const auto& s : sections()) {
      TangentPartResult agg;
      for (const auto& p : plan_.points) {
        const TangentPartResult r = check_tangent_part(imm(), s.view, s.section, p);
        worst(agg.residual, r.residual);
        worst(agg.lhs, r.lhs);
        worst(agg.ricci, r.ricci);
        worst(agg.gradient, r.gradient);
        worst(agg.mean, r.mean);
        worst(agg.trace, r.trace);
      }
      add(view_label(s), agg.residual, tol_.derived, Expect::Pass,
          {{"lhs", agg.lhs}, {"ricci", agg.ricci}, {"gradient", agg.gradient}, {"mean", agg.mean},
           {"trace", agg.trace}});
    }
  }

  void n2eta() {
    bool any = false;
    for (const auto& s : sections()) {
      if (!s.parallel) continue;
      any = true;
      const double par = over_samples([&](auto p) { return normal_derivative_norm(imm(), s.view, s.section, p); });
      const double r = over_samples([&](auto p) { return check_n2eta(imm(), s.view, s.section, p, tol_.contract); });
      add(view_label(s), r, tol_.derived, Expect::Pass, {{"parallel_residual", par}});
    }
    if (!any) throw UsageError("'" + entry_.name + "' has no parallel test sections");
  }

  void corol2() {
    const int fields = get_count("fields", 3, 1, 100);
    for (const auto& s : sections()) {
      double a = 0.0, lemma = 0.0, useful = 0.0;
      for (int f = 0; f < fields; ++f) {
        const KillingField v = field_for(s.view);
        for (const auto& p : plan_.points) {
          const auto r = check_killing_pairing(imm(), s.view, s.section, v, p, s.parallel, tol_.contract);
          worst(a, r.eq_a);
          worst(lemma, r.eq_lemma);
          if (r.eq_useful) worst(useful, *r.eq_useful);
        }
      }
      const int n = fields * static_cast<int>(plan_.points.size());
      add(view_label(s) + ":eq_a", a, tol_.derived, Expect::Pass, {}, n);
      add(view_label(s) + ":eq_lemma", lemma, tol_.derived, Expect::Pass, {}, n);
      if (s.parallel) add(view_label(s) + ":eq_useful", useful, tol_.derived, Expect::Pass, {}, n);
    }
  }

  // Angles θ with sin θ ν + cos θ μ an eigenvector of the flat-view Simons
  // operator at the first sample, and the eigenvalues.
  std::pair<std::vector<double>, Vec> eigen_thetas() const {
    const auto& p0 = plan_.points.front();
    const PointFrame fr = frame_at(imm(), View::Flat, p0);
    const Vec nu = values_of(evaluate_field(entry_.unit_normal->eta, p0));
    const std::vector<Vec> basis{nu, fr.position};
    const SimonsMatrix sm = simons_matrix_in(fr, basis);
    Eigen::SelfAdjointEigenSolver<Mat> es(sm.entries);
    std::vector<double> thetas;
    for (int i = 0; i < 2; ++i) thetas.push_back(std::atan2(es.eigenvectors()(0, i), es.eigenvectors()(1, i)));
    return {thetas, es.eigenvalues()};
  }

  double max_harmonicity(const NormalSection& s) const {
    return over_samples([&](auto p) { return harmonicity_residual(imm(), s, p); });
  }

  void euler_lagrange() {
    need_hypersurface();
    if (entry_.isoparametric) {
      const auto [thetas, eig] = eigen_thetas();
      for (std::size_t i = 0; i < thetas.size(); ++i) {
        const NormalSection s = section_theta(entry_, thetas[i]);
        const double r = over_samples([&](auto p) { return euler_lagrange_residual(imm(), View::Flat, s, p); });
        add("flat:eigen-" + std::to_string(i), r, tol_.derived, Expect::Pass,
            {{"theta", thetas[i]}, {"eigenvalue", eig(static_cast<Eigen::Index>(i))}});
      }
      const double r = over_samples(
          [&](auto p) { return euler_lagrange_residual(imm(), View::Sphere, *entry_.unit_normal, p); });
      add("sphere:nu", r, tol_.derived, Expect::Pass);
      return;
    }
    const int count = get_count("thetas", 32, 1, 4096);
    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    for (int j = 0; j < count; ++j) {
      const double theta = 2.0 * kPi * j / count;
      const NormalSection s = section_theta(entry_, theta);
      const double r = over_samples([&](auto p) { return euler_lagrange_residual(imm(), View::Flat, s, p); });
      if (r < best) {
        best = r;
        best_theta = theta;
      }
    }
    add("theta-grid:min", best, kNegativeControlThreshold, Expect::Fail,
        {{"argmin_theta", best_theta}, {"grid", count}});
  }

  void thm3_equivalence() {
    need_hypersurface();
    if (!entry_.isoparametric) {
      throw UsageError("thm3-equivalence needs a fixture with parallel mean curvature vector");
    }
    const auto [thetas, eig] = eigen_thetas();
    std::vector<std::pair<std::string, double>> cases;
    for (std::size_t i = 0; i < thetas.size(); ++i) cases.emplace_back("eigen-" + std::to_string(i), thetas[i]);
    cases.emplace_back("mixed-45", kPi / 4.0);
    for (const auto& [label, theta] : cases) {
      const NormalSection s = section_theta(entry_, theta);
      const double harm = max_harmonicity(s);
      const double off = over_samples([&](auto p) { return off_eigen_residual(imm(), s, p); });
      // The equivalence holds when both sides fall on the same side of tol.
      const Expect expect = off <= tol_.derived ? Expect::Pass : Expect::Fail;
      add(label, harm, tol_.derived, expect, {{"theta", theta}, {"off_eigen", off}});
    }
    if (get("scan", 0.0) != 0.0) {
      for (double twist : {0.5, 1.0}) {
        const NormalSection s = twisted_section(entry_, kPi / 3.0, twist);
        add("scan:" + s.label, max_harmonicity(s), tol_.derived, Expect::Info,
            {{"off_eigen", over_samples([&](auto p) { return off_eigen_residual(imm(), s, p); })}});
      }
    }
  }

  struct ShapeData {
    double h;
    double shape_sq;
    double grad_h;
  };
  ShapeData shape_data() const {
    const auto& p0 = plan_.points.front();
    const PointFrame fr = frame_at(imm(), View::Sphere, p0);
    const auto vars = lift_vars(p0);
    const JetVec nu = entry_.unit_normal->eta(vars);
    ShapeData d;
    d.h = mean_curvature_pairing(imm(), vars, nu).value();
    d.shape_sq = shape_operator(fr, values_of(nu)).squaredNorm();
    d.grad_h = over_samples([&](auto p) {
      const PointFrame f = frame_at(imm(), View::Sphere, p);
      const auto v = lift_vars(p);
      return surface_gradient(f, mean_curvature_pairing(imm(), v, entry_.unit_normal->eta(v))).norm();
    });
    return d;
  }

  void harm_theta() {
    need_hypersurface();
    const int n = imm().dim();
    const ShapeData d = shape_data();
    add("grad-H", d.grad_h, tol_.derived, entry_.isoparametric ? Expect::Pass : Expect::Info,
        {{"H", d.h}, {"shape_norm_sq", d.shape_sq}});
    auto section_record = [&](const std::string& label, double theta, Expect expect, double tol) {
      add(label, max_harmonicity(section_theta(entry_, theta)), tol, expect, {{"theta", theta}});
    };
    if (auto theta = get_opt("theta")) {
      section_record("theta", *theta, Expect::Pass, tol_.derived);
      return;
    }
    if (std::abs(d.h) <= tol_.derived) {
      section_record("theta=0", 0.0, Expect::Pass, tol_.derived);
      section_record("theta=pi/2", kPi / 2.0, Expect::Pass, tol_.derived);
      const bool all = std::abs(d.shape_sq - n) <= tol_.derived;
      section_record("theta=pi/4", kPi / 4.0, all ? Expect::Pass : Expect::Fail,
                     all ? tol_.derived : kOffsetThreshold);
      return;
    }
    const double c = d.shape_sq - n;
    const ThetaSolution sol = solve_theta(n, d.h, c);
    add("theta-equation", sol.residual, tol_.derived, Expect::Pass,
        {{"theta1", sol.theta1}, {"theta2", sol.theta2}});
    section_record("theta1", sol.theta1, Expect::Pass, tol_.derived);
    section_record("theta2", sol.theta2, Expect::Pass, tol_.derived);
    section_record("theta1-0.1", sol.theta1 - kOffsetAngle, Expect::Fail, kOffsetThreshold);
    section_record("theta1+0.1", sol.theta1 + kOffsetAngle, Expect::Fail, kOffsetThreshold);
    section_record("theta=0", 0.0, Expect::Fail, kOffsetThreshold);
    section_record("theta=pi/2", kPi / 2.0, Expect::Fail, kOffsetThreshold);
    if (n == 2 && entry_.known && entry_.known->principal_curvatures.size() == 2) {
      // Closed forms: λ1 + λ2 for the product of circles, (λ²-1)/λ for the
      // umbilical sphere; both equal (|S|² - 2)/(2H).
      const auto& k = entry_.known->principal_curvatures;
      const double target = k[0] == k[1] ? (k[0] * k[0] - 1.0) / k[0] : k[0] + k[1];
      const double lhs = 1.0 / std::tan(sol.theta1) - std::tan(sol.theta1);
      add("closed-form-angle", std::abs(lhs - target), tol_.derived, Expect::Pass,
          {{"cot_minus_tan", lhs}, {"closed_form", target}});
    }
  }

  void lemmasphere_decomp() {
    need_hypersurface();
    const int n = imm().dim();
    for (double theta : {0.0, kPi / 6.0, kPi / 4.0, kPi / 3.0, kPi / 2.0, 2.0 * kPi / 3.0}) {
      double r = 0.0;
      for (const auto& p : plan_.points) worst(r, sphere_hypersurface_laplacian(imm(), *entry_.unit_normal, theta, p).residual);
      const auto d0 = sphere_hypersurface_laplacian(imm(), *entry_.unit_normal, theta, plan_.points.front());
      add("theta=" + fmt(theta), r, tol_.derived, Expect::Pass,
          {{"grad_term", d0.grad_term.norm()}, {"nu_coeff", d0.nu_coeff}, {"mu_coeff", d0.mu_coeff}});
      if (entry_.known && entry_.known->mean_curvature && entry_.known->shape_norm_sq) {
        const double h = *entry_.known->mean_curvature;
        const double a = std::sin(theta), b = std::cos(theta);
        const double nu_ref = a * *entry_.known->shape_norm_sq - n * b * h;
        const double mu_ref = n * b - n * a * h;
        double dev = 0.0;
        for (const auto& p : plan_.points) {
          const auto d = sphere_hypersurface_laplacian(imm(), *entry_.unit_normal, theta, p);
          worst(dev, std::max({std::abs(d.nu_coeff - nu_ref), std::abs(d.mu_coeff - mu_ref), d.grad_term.norm()}));
        }
        add("theta=" + fmt(theta) + ":closed-form", dev, tol_.derived, Expect::Pass,
            {{"nu_coeff", nu_ref}, {"mu_coeff", mu_ref}});
      }
    }
  }

  void isorn_spectrum() {
    need_hypersurface();
    const auto [thetas, eig0] = eigen_thetas();
    double spread = 0.0;
    for (const auto& p : plan_.points) {
      const PointFrame fr = frame_at(imm(), View::Flat, p);
      const Vec e = simons_matrix(fr).eigenvalues();
      worst(spread, (e - eig0).cwiseAbs().maxCoeff());
    }
    std::vector<std::pair<std::string, double>> vals;
    for (Eigen::Index i = 0; i < eig0.size(); ++i) vals.emplace_back("eigenvalue_" + std::to_string(i), eig0(i));
    add("spectrum-spread", spread, tol_.spectrum, entry_.isoparametric ? Expect::Pass : Expect::Fail, vals);
    if (!entry_.isoparametric) return;
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      const NormalSection s = section_theta(entry_, thetas[i]);
      const double el = over_samples([&](auto p) { return euler_lagrange_residual(imm(), View::Flat, s, p); });
      add("eigen-" + std::to_string(i) + ":euler-lagrange", el, tol_.derived, Expect::Pass, {{"theta", thetas[i]}});
      add("eigen-" + std::to_string(i) + ":harmonicity", max_harmonicity(s), tol_.derived, Expect::Pass,
          {{"theta", thetas[i]}});
    }
  }

  CDNumber random_octonion(bool imaginary) {
    std::vector<double> c(8);
    for (double& x : c) x = rng_.in(-1.0, 1.0);
    if (imaginary) c[0] = 0.0;
    return {kOctonionLevel, std::move(c)};
  }

  CDNumber unit(const CDNumber& x) {
    std::vector<double> c = x.coeffs();
    const double nrm = cd_norm(x);
    for (double& v : c) v /= nrm;
    return {x.level(), std::move(c)};
  }

  void octonion_algebra() {
    const int pairs = get_count("pairs", 1000, 1, 1000000);
    double mult = 0.0;
    for (int i = 0; i < pairs; ++i) {
      const CDNumber x = random_octonion(false), y = random_octonion(false);
      worst(mult, std::abs(cd_norm(cd_mul(x, y)) - cd_norm(x) * cd_norm(y)));
    }
    add("algebra:norm-multiplicative", mult, kAlgebraTolerance, Expect::Pass, {}, pairs);
    double orth = 0.0, skew = 0.0;
    const int trials = 100;
    for (int i = 0; i < trials; ++i) {
      const CDNumber u = unit(random_octonion(false));
      const CDNumber v = random_octonion(true);
      for (const Mat& m : {left_translation_matrix(u), right_translation_matrix(u)}) {
        worst(orth, (m.transpose() * m - Mat::Identity(8, 8)).cwiseAbs().maxCoeff());
      }
      for (const Mat& m : {left_translation_matrix(v), right_translation_matrix(v)}) {
        worst(skew, (m + m.transpose()).cwiseAbs().maxCoeff());
      }
    }
    add("algebra:translation-orthogonal", orth, kAlgebraTolerance, Expect::Pass, {}, trials);
    add("algebra:translation-skew", skew, kAlgebraTolerance, Expect::Pass, {}, trials);
    int witnesses = 0;
    for (int a = 1; a < 8; ++a)
      for (int b = 1; b < 8; ++b)
        for (int c = 1; c < 8; ++c) {
          const CDNumber ea = CDNumber::basis(3, a), eb = CDNumber::basis(3, b), ec = CDNumber::basis(3, c);
          if (cd_mul(cd_mul(ea, eb), ec).coeffs() != cd_mul(ea, cd_mul(eb, ec)).coeffs()) ++witnesses;
        }
    add("algebra:non-associative-triples", witnesses, 0.0, Expect::Fail, {}, 343);
  }

  void octonion_lapoc() {
    need_hypersurface();
    const int k = imm().ambient().dim;
    if (k < 3 || k > 7) throw UsageError("octonion-lapoc needs a hypersurface of S^k with 3 <= k <= 7");
    octonion_algebra();
    double identity = 0.0, harm = 0.0, factor = 0.0;
    for (const auto& p : plan_.points) {
      const auto r = octonionic_laplacian_check(entry_, p);
      worst(identity, r.residual);
      worst(harm, r.harmonicity);
      factor = r.factor;
    }
    add("gauss-map:laplacian-identity", identity, tol_.derived, Expect::Pass, {{"factor", factor}});
    if (entry_.isoparametric) {
      add("gauss-map:harmonicity", harm, tol_.derived, Expect::Pass);
      const CDNumber v = unit(random_octonion(true));
      const double sup = over_samples([&](auto p) { return octonionic_superharmonicity_residual(entry_, v, p); });
      add("gauss-map:superharmonicity", sup, tol_.derived, Expect::Pass);
    } else {
      add("gauss-map:harmonicity", harm, kNegativeControlThreshold, Expect::Fail);
    }
  }

  void nhs4_scan() {
    if (imm().ambient().kind != SpaceKind::Sphere || imm().ambient().dim != imm().dim() + 2) {
      throw UsageError("nhS4-scan needs a codimension-2 surface of a sphere");
    }
    const double minimal = over_samples([&](auto p) { return frame_at(imm(), View::Sphere, p).mean_curvature.norm(); });
    add("minimality", minimal, tol_.structural, Expect::Pass);
    if (entry_.known && entry_.known->second_form_norm_sq) {
      const double target = *entry_.known->second_form_norm_sq;
      double bmax = 0.0;
      double rank_min = 1e9;
      for (const auto& p : plan_.points) {
        const PointFrame fr = frame_at(imm(), View::Sphere, p);
        double b2 = 0.0;
        for (const Vec& nu : fr.normal) b2 += shape_operator(fr, nu).squaredNorm();
        worst(bmax, std::abs(b2 - target));
        rank_min = std::min(rank_min, static_cast<double>(second_form_rank(fr)));
      }
      add("second-form-norm", bmax, tol_.derived, Expect::Pass, {{"target", target}});
      add("second-form-rank", rank_min, 0.0, Expect::Info);
    }
    const int grid = get_count("grid", 16, 1, 256);
    double best = std::numeric_limits<double>::infinity();
    double arg_theta = 0.0, arg_twist = 0.0;
    for (int i = 0; i < grid; ++i) {
      const double theta = 2.0 * kPi * i / grid;
      for (int j = 0; j < grid; ++j) {
        const double twist = grid == 1 ? 0.0 : -1.5 + 3.0 * j / (grid - 1);
        const double r = max_harmonicity(rotating_normal_section(imm(), theta, twist));
        if (r < best) {
          best = r;
          arg_theta = theta;
          arg_twist = twist;
        }
      }
    }
    add("section-grid:min-harmonicity", best, kNonExistenceThreshold, Expect::Fail,
        {{"argmin_theta", arg_theta}, {"argmin_twist", arg_twist}, {"grid", grid}});
  }

  void classification_scan() {
    need_hypersurface();
    if (imm().dim() != 2 || imm().ambient().dim != 3) {
      throw UsageError("classification-scan needs a surface of S^3");
    }
    double rank_min = 1e9;
    for (const auto& p : plan_.points) {
      rank_min = std::min(rank_min, static_cast<double>(second_form_rank(frame_at(imm(), View::Flat, p))));
    }
    add("second-form-rank", rank_min, 0.0, Expect::Info);
    const int count = get_count("thetas", 16, 1, 4096);
    for (double twist : {0.0, 0.5, 1.0}) {
      double best = std::numeric_limits<double>::infinity();
      double arg = 0.0;
      for (int j = 0; j < count; ++j) {
        const double theta = 2.0 * kPi * j / count;
        const double r = max_harmonicity(twisted_section(entry_, theta, twist));
        if (r < best) {
          best = r;
          arg = theta;
        }
      }
      add("twist=" + fmt(twist) + ":min-harmonicity", best, 0.0, Expect::Info, {{"argmin_theta", arg}});
    }
  }

  const VerifyRequest& req_;
  const CheckInfo& info_;
  const ToleranceProfile& tol_;
  CatalogEntry entry_;
  SeededUniform rng_;
  SamplePlan plan_;
  std::vector<CheckRecord> out_;
};

}  // namespace

const char* to_string(Expect e) {
  switch (e) {
    case Expect::Pass:
      return "pass";
    case Expect::Fail:
      return "fail";
    case Expect::Info:
      return "info";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::FailExpected:
      return "fail-expected";
    case Verdict::UnexpectedPass:
      return "unexpected-pass";
    case Verdict::Info:
      return "info";
  }
  return "?";
}

Verdict judge(Expect expect, double residual, double tolerance) {
  switch (expect) {
    case Expect::Pass:
      return residual <= tolerance ? Verdict::Pass : Verdict::Fail;
    case Expect::Fail:
      return residual > tolerance ? Verdict::FailExpected : Verdict::UnexpectedPass;
    case Expect::Info:
      return Verdict::Info;
  }
  return Verdict::Fail;
}

bool is_failure(Verdict v) { return v == Verdict::Fail || v == Verdict::UnexpectedPass; }

const std::vector<CheckInfo>& check_catalog() { return kChecks; }

const CheckInfo& check_info(const std::string& id) {
  for (const auto& c : kChecks)
    if (c.id == id) return c;
  throw UsageError("unknown check '" + id + "'");
}

std::vector<CheckRecord> run_check(const VerifyRequest& request) {
  Runner runner(request);
  return runner.run();
}

std::vector<std::pair<std::string, std::string>> suite_plan() {
  std::vector<std::pair<std::string, std::string>> plan = {
      {"killing-flat", "circles(0.6)"},
      {"killing-sphere", "circles(0.6)"},
      {"killing-hyperbolic", "lorentz(0.5)"},
  };
  const std::vector<std::string> lemma_examples = {"clifford(1,2)", "circles(0.6)", "umbilical(0.5,2)",
                                                   "htorus(0.5,3)"};
  for (const char* check : {"tangent-part", "n2eta", "corol2", "thm3-equivalence", "isorn-spectrum"}) {
    for (const auto& ex : lemma_examples) plan.emplace_back(check, ex);
  }
  for (const char* ex : {"clifford(1,2)", "circles(0.3)", "circles(0.6)", "circles(0.8)", "umbilical(0.5,2)"}) {
    plan.emplace_back("harm-theta", ex);
  }
  for (const char* ex : {"clifford(1,2)", "circles(0.6)", "htorus(0.5,3)"}) plan.emplace_back("lemmasphere-decomp", ex);
  for (const char* ex : {"clifford(1,2)", "htorus(0.5,3)", "perturbed(0.6,0.03)"}) plan.emplace_back("euler-lagrange", ex);
  for (const char* ex : {"clifford(1,2)", "umbilical(0.5,2)", "perturbed(0.6,0.03)"}) plan.emplace_back("octonion-lapoc", ex);
  plan.emplace_back("nhS4-scan", "veronese");
  plan.emplace_back("classification-scan", "circles(0.6)");
  return plan;
}

std::vector<CheckRecord> run_suite(std::uint64_t seed, const ToleranceProfile& tolerances) {
  std::vector<CheckRecord> all;
  for (const auto& [check, example] : suite_plan()) {
    VerifyRequest req{check, example, {}, seed, tolerances};
    auto recs = run_check(req);
    all.insert(all.end(), std::make_move_iterator(recs.begin()), std::make_move_iterator(recs.end()));
  }
  return all;
}

}  // namespace gaussmap
