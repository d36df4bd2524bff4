#include "gaussmap/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "gaussmap/errors.hpp"

namespace gaussmap {
namespace {

constexpr double kRankThreshold = 1e-10;
constexpr double kSeedThreshold = 0.1;
constexpr double kSeedExhausted = 1e-8;
constexpr double kModelMembership = 1e-9;

double view_curvature_of(View v) {
  switch (v) {
    case View::Flat:
      return 0.0;
    case View::Sphere:
      return 1.0;
    case View::Hyperbolic:
      return -1.0;
  }
  return 0.0;
}

// v minus its components along an orthonormal (possibly one timelike)
// family; two passes for stability.
Vec orthogonalize(Vec v, const std::vector<Vec>& basis, bool lorentz) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vec& q : basis) v -= (pair(v, q, lorentz) / pair(q, q, lorentz)) * q;
  }
  return v;
}

// Indices of the coordinate vectors e_i used to complete `base` to a frame
// with `target` additional spacelike unit vectors. Sequential pass first,
// then the pivoted fallback.
std::vector<int> select_normal_seeds(const std::vector<Vec>& base, int m, int target,
                                     bool lorentz) {
  std::vector<int> chosen;
  std::vector<Vec> accepted = base;
  auto residual = [&](int i) {
    Vec e = Vec::Zero(m);
    e(i) = 1.0;
    Vec v = orthogonalize(e, accepted, lorentz);
    return std::pair{v, pair(v, v, lorentz)};
  };
  for (int i = 0; i < m && static_cast<int>(chosen.size()) < target; ++i) {
    auto [v, nn] = residual(i);
    if (nn > kSeedThreshold * kSeedThreshold) {
      chosen.push_back(i);
      accepted.push_back(v / std::sqrt(nn));
    }
  }
  while (static_cast<int>(chosen.size()) < target) {
    int best = -1;
    double best_nn = 0.0;
    Vec best_v;
    for (int i = 0; i < m; ++i) {
      if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
      auto [v, nn] = residual(i);
      if (nn > best_nn) {
        best = i;
        best_nn = nn;
        best_v = v;
      }
    }
    if (best < 0 || best_nn < kSeedExhausted * kSeedExhausted) {
      throw FrameError("normal frame: coordinate seeds exhausted");
    }
    chosen.push_back(best);
    accepted.push_back(best_v / std::sqrt(best_nn));
  }
  return chosen;
}

bool excludes_position(const Immersion& imm, View view) {
  return view != View::Flat || imm.ambient().kind == SpaceKind::Sphere;
}

JetVec jet_normalize(const JetVec& v, bool lorentz) {
  const Jet3 inv = 1.0 / sqrt(pair(v, v, lorentz));
  JetVec out;
  out.reserve(v.size());
  for (const Jet3& x : v) out.push_back(x * inv);
  return out;
}

void jet_orthogonalize(JetVec& v, const std::vector<std::pair<JetVec, double>>& basis,
                       bool lorentz) {
  for (const auto& [q, eps] : basis) {
    const Jet3 coef = pair(v, q, lorentz) * eps;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= coef * q[k];
  }
}

// Jet basis of (position,) tangent directions, orthonormalised.
std::vector<std::pair<JetVec, double>> jet_base(const JetVec& f, int n, bool with_position,
                                                bool lorentz) {
  std::vector<std::pair<JetVec, double>> basis;
  if (with_position) {
    const Jet3 nn = pair(f, f, lorentz);
    const double eps = nn.value() < 0.0 ? -1.0 : 1.0;
    const Jet3 inv = 1.0 / sqrt(nn * eps);
    JetVec q;
    for (const Jet3& x : f) q.push_back(x * inv);
    basis.emplace_back(std::move(q), eps);
  }
  for (int i = 0; i < n; ++i) {
    JetVec v = partial(f, i);
    jet_orthogonalize(v, basis, lorentz);
    basis.emplace_back(jet_normalize(v, lorentz), 1.0);
  }
  return basis;
}

}  // namespace

double AmbientSpace::curvature() const {
  switch (kind) {
    case SpaceKind::Flat:
      return 0.0;
    case SpaceKind::Sphere:
      return 1.0;
    case SpaceKind::Hyperbolic:
      return -1.0;
  }
  return 0.0;
}

const char* to_string(View v) {
  switch (v) {
    case View::Flat:
      return "flat";
    case View::Sphere:
      return "sphere";
    case View::Hyperbolic:
      return "hyperbolic";
  }
  return "?";
}

double pair(const Vec& a, const Vec& b, bool lorentz) {
  double s = a.dot(b);
  if (lorentz) {
    const Eigen::Index last = a.size() - 1;
    s -= 2.0 * a(last) * b(last);
  }
  return s;
}

Jet3 pair(std::span<const Jet3> a, std::span<const Jet3> b, bool lorentz) {
  if (a.size() != b.size() || a.empty()) throw ContractError("pair: size mismatch");
  Jet3 s = a[0] * b[0];
  for (std::size_t k = 1; k < a.size(); ++k) {
    if (lorentz && k + 1 == a.size()) {
      s -= a[k] * b[k];
    } else {
      s += a[k] * b[k];
    }
  }
  if (lorentz && a.size() == 1) s = -s;
  return s;
}

Immersion::Immersion(std::string name, int n, AmbientSpace ambient, JetField chart,
                     std::vector<ParamInterval> box)
    : name_(std::move(name)),
      n_(n),
      ambient_(ambient),
      chart_(std::move(chart)),
      box_(std::move(box)) {
  if (n_ < 1 || n_ > kMaxJetDim) throw DomainError("immersion dimension out of range");
  if (static_cast<int>(box_.size()) != n_) throw DomainError("parameter box size != dimension");
  if (ambient_.embedding_dim() <= n_) throw DomainError("ambient too small for immersion");
}

JetVec Immersion::evaluate(std::span<const Jet3> vars) const {
  if (static_cast<int>(vars.size()) != n_) throw DomainError("chart expects n variables");
  JetVec out = chart_(vars);
  if (static_cast<int>(out.size()) != ambient_.embedding_dim()) {
    throw ContractError("chart of '" + name_ + "' returned wrong ambient size");
  }
  return out;
}

JetVec Immersion::evaluate_at(std::span<const double> p) const {
  const auto vars = lift_vars(p);
  return evaluate(vars);
}

bool Immersion::contains(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != n_) return false;
  for (int i = 0; i < n_; ++i) {
    const auto& iv = box_[static_cast<std::size_t>(i)];
    const double x = p[static_cast<std::size_t>(i)];
    if (!(x >= iv.lo - 1e-12 && x <= iv.hi + 1e-12)) return false;
  }
  return true;
}

double Immersion::view_curvature(View v) const {
  const SpaceKind k = ambient_.kind;
  const bool ok = (v == View::Flat && k != SpaceKind::Hyperbolic) ||
                  (v == View::Sphere && k == SpaceKind::Sphere) ||
                  (v == View::Hyperbolic && k == SpaceKind::Hyperbolic);
  if (!ok) {
    throw ContractError(std::string("view '") + to_string(v) + "' incompatible with ambient of '" +
                        name_ + "'");
  }
  return view_curvature_of(v);
}

JetVec evaluate_field(const JetField& field, std::span<const double> p) {
  const auto vars = lift_vars(p);
  return field(vars);
}

Vec values_of(std::span<const Jet3> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) out(static_cast<Eigen::Index>(k)) = v[k].value();
  return out;
}

Vec partial_values(std::span<const Jet3> v, int i) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) out(static_cast<Eigen::Index>(k)) = v[k].d(i);
  return out;
}

JetVec partial(std::span<const Jet3> v, int i) {
  JetVec out;
  out.reserve(v.size());
  for (const Jet3& x : v) out.push_back(x.partial(i));
  return out;
}

Vec PointFrame::tangent_part(const Vec& v) const {
  Vec out = Vec::Zero(m);
  for (const Vec& e : tangent) out += dot(v, e) * e;
  return out;
}

Vec PointFrame::normal_part(const Vec& v) const {
  Vec out = Vec::Zero(m);
  for (const Vec& nu : normal) out += dot(v, nu) * nu;
  return out;
}

Vec PointFrame::chart_components(const Vec& x) const {
  Vec rhs(n);
  for (int j = 0; j < n; ++j) rhs(j) = dot(x, d1[static_cast<std::size_t>(j)]);
  return inverse_metric * rhs;
}

Vec PointFrame::second_form_on(const Vec& x, const Vec& y) const {
  const Vec xi = chart_components(x);
  const Vec yi = chart_components(y);
  Vec out = Vec::Zero(m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out += xi(i) * yi(j) * B(i, j);
  return out;
}

Vec PointFrame::project_to_view(const Vec& v) const {
  if (curvature == 0.0) return v;
  return v - curvature * dot(v, position) * position;
}

Vec PointFrame::normal_coords(const Vec& eta) const {
  Vec c(codim());
  for (int a = 0; a < codim(); ++a) c(a) = dot(eta, normal[static_cast<std::size_t>(a)]);
  return c;
}

Vec PointFrame::from_normal_coords(std::span<const double> coords) const {
  if (static_cast<int>(coords.size()) != codim()) throw ContractError("normal coords size");
  Vec out = Vec::Zero(m);
  for (int a = 0; a < codim(); ++a) out += coords[static_cast<std::size_t>(a)] * normal[static_cast<std::size_t>(a)];
  return out;
}

PointFrame frame_at(const Immersion& imm, View view, std::span<const double> p) {
  if (!imm.contains(p)) throw DomainError("chart point outside the domain box of '" + imm.name() + "'");
  PointFrame fr;
  fr.curvature = imm.view_curvature(view);
  fr.view = view;
  fr.point.assign(p.begin(), p.end());
  fr.n = imm.dim();
  fr.m = imm.ambient().embedding_dim();
  fr.lorentz = imm.ambient().lorentz();
  const int n = fr.n;
  const int m = fr.m;

  const JetVec f = imm.evaluate_at(p);
  fr.position = values_of(f);
  if (imm.ambient().kind != SpaceKind::Flat) {
    const double expected = imm.ambient().kind == SpaceKind::Sphere ? 1.0 : -1.0;
    if (std::abs(fr.dot(fr.position, fr.position) - expected) > kModelMembership) {
      throw DomainError("immersion '" + imm.name() + "' leaves its model space");
    }
  }
  for (int i = 0; i < n; ++i) fr.d1.push_back(partial_values(f, i));
  fr.d2.resize(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec v(m);
      for (int k = 0; k < m; ++k) v(k) = f[static_cast<std::size_t>(k)].d(i, j);
      fr.d2[static_cast<std::size_t>(i * n + j)] = v;
    }

  fr.metric.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      fr.metric(i, j) = fr.dot(fr.d1[static_cast<std::size_t>(i)], fr.d1[static_cast<std::size_t>(j)]);
  if (!(fr.metric.determinant() >= kRankThreshold)) {
    throw RankError("degenerate metric at a sample point of '" + imm.name() + "'");
  }
  fr.inverse_metric = fr.metric.inverse();

  fr.christoffel.assign(static_cast<std::size_t>(n), Mat::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec lowered(n);
      for (int l = 0; l < n; ++l) lowered(l) = fr.dot(fr.d2f(i, j), fr.d1[static_cast<std::size_t>(l)]);
      const Vec raised = fr.inverse_metric * lowered;
      for (int k = 0; k < n; ++k) fr.christoffel[static_cast<std::size_t>(k)](i, j) = raised(k);
    }

  for (int i = 0; i < n; ++i) {
    Vec v = orthogonalize(fr.d1[static_cast<std::size_t>(i)], fr.tangent, fr.lorentz);
    fr.tangent.push_back(v / std::sqrt(fr.dot(v, v)));
  }
  fr.tangent_coords.resize(n, n);
  for (int a = 0; a < n; ++a) fr.tangent_coords.col(a) = fr.chart_components(fr.tangent[static_cast<std::size_t>(a)]);

  const bool exclude = excludes_position(imm, view);
  std::vector<Vec> base = fr.tangent;
  Vec unit_position;
  if (exclude) {
    unit_position = fr.position / std::sqrt(std::abs(fr.dot(fr.position, fr.position)));
    base.push_back(unit_position);
  }
  const int target = m - n - (exclude ? 1 : 0);
  const auto seeds = select_normal_seeds(base, m, target, fr.lorentz);
  std::vector<Vec> accepted = base;
  for (int s : seeds) {
    Vec e = Vec::Zero(m);
    e(s) = 1.0;
    Vec v = orthogonalize(e, accepted, fr.lorentz);
    v /= std::sqrt(fr.dot(v, v));
    accepted.push_back(v);
    fr.normal.push_back(v);
  }
  if (view == View::Flat && exclude) fr.normal.push_back(unit_position);

  fr.second_form.resize(static_cast<std::size_t>(n * n));
  fr.mean_curvature = Vec::Zero(m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec b = Vec::Zero(m);
      for (const Vec& nu : fr.normal) b += fr.dot(fr.d2f(i, j), nu) * nu;
      fr.second_form[static_cast<std::size_t>(i * n + j)] = b;
      fr.mean_curvature += fr.inverse_metric(i, j) * b;
    }
  fr.mean_curvature /= static_cast<double>(n);
  return fr;
}

double frame_invariant_residual(const PointFrame& fr) {
  double worst = 0.0;
  auto track = [&](double x) { worst = std::max(worst, std::abs(x)); };
  for (std::size_t a = 0; a < fr.tangent.size(); ++a) {
    for (std::size_t b = 0; b < fr.tangent.size(); ++b)
      track(fr.dot(fr.tangent[a], fr.tangent[b]) - (a == b ? 1.0 : 0.0));
    for (const Vec& nu : fr.normal) track(fr.dot(fr.tangent[a], nu));
  }
  for (std::size_t a = 0; a < fr.normal.size(); ++a) {
    for (std::size_t b = 0; b < fr.normal.size(); ++b)
      track(fr.dot(fr.normal[a], fr.normal[b]) - (a == b ? 1.0 : 0.0));
    if (fr.view != View::Flat) track(fr.dot(fr.normal[a], fr.position));
  }
  for (const Vec& b : fr.second_form)
    for (const Vec& e : fr.tangent) track(fr.dot(b, e));
  return worst;
}

Mat shape_operator(const PointFrame& fr, const Vec& eta, double tol) {
  const Vec tan = fr.tangent_part(eta);
  if (std::sqrt(std::abs(fr.dot(tan, tan))) > tol) {
    throw ContractError("shape_operator: vector has a tangential component");
  }
  if (fr.view != View::Flat && std::abs(fr.dot(eta, fr.position)) > tol) {
    throw ContractError("shape_operator: vector not tangent to the model space");
  }
  Mat h(fr.n, fr.n);
  for (int i = 0; i < fr.n; ++i)
    for (int j = 0; j < fr.n; ++j) h(i, j) = fr.dot(fr.B(i, j), eta);
  return fr.tangent_coords.transpose() * h * fr.tangent_coords;
}

Vec SimonsMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Mat> solver(entries, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

bool SimonsMatrix::is_symmetric(double tol) const {
  return (entries - entries.transpose()).cwiseAbs().maxCoeff() <= tol;
}

SimonsMatrix simons_matrix_in(const PointFrame& fr, std::span<const Vec> normals) {
  std::vector<Mat> shapes;
  shapes.reserve(normals.size());
  for (const Vec& nu : normals) shapes.push_back(shape_operator(fr, nu));
  const auto r = static_cast<Eigen::Index>(normals.size());
  SimonsMatrix sm{Mat(r, r)};
  for (Eigen::Index a = 0; a < r; ++a)
    for (Eigen::Index b = 0; b < r; ++b)
      sm.entries(a, b) = shapes[static_cast<std::size_t>(a)].cwiseProduct(shapes[static_cast<std::size_t>(b)]).sum();
  return sm;
}

SimonsMatrix simons_matrix(const PointFrame& fr) { return simons_matrix_in(fr, fr.normal); }

Vec simons_apply(const PointFrame& fr, std::span<const double> eta_coords) {
  if (static_cast<int>(eta_coords.size()) != fr.codim()) throw ContractError("simons_apply: size");
  const Eigen::Map<const Vec> c(eta_coords.data(), static_cast<Eigen::Index>(eta_coords.size()));
  return simons_matrix(fr).entries * c;
}

Vec simons_apply_vector(const PointFrame& fr, const Vec& eta) {
  const Mat s_eta = shape_operator(fr, eta);
  Vec out = Vec::Zero(fr.m);
  for (const Vec& nu : fr.normal) out += s_eta.cwiseProduct(shape_operator(fr, nu)).sum() * nu;
  return out;
}

Vec normal_connection(const Immersion& imm, View view, const NormalSection& section,
                      std::span<const double> p, const Vec& direction) {
  const PointFrame fr = frame_at(imm, view, p);
  const JetVec eta = evaluate_field(section.eta, p);
  const Vec xi = fr.chart_components(direction);
  Vec d = Vec::Zero(fr.m);
  for (int i = 0; i < fr.n; ++i) d += xi(i) * partial_values(eta, i);
  return fr.normal_part(fr.project_to_view(d));
}

ParallelReport is_parallel(const Immersion& imm, View view, const NormalSection& section,
                           const SamplePlan& plan, double tol) {
  ParallelReport rep;
  for (const auto& p : plan.points) {
    if (!imm.contains(p)) throw DomainError("is_parallel: sample outside the domain box");
    const PointFrame fr = frame_at(imm, view, p);
    const JetVec eta = evaluate_field(section.eta, p);
    for (const Vec& e : fr.tangent) {
      const Vec xi = fr.chart_components(e);
      Vec d = Vec::Zero(fr.m);
      for (int i = 0; i < fr.n; ++i) d += xi(i) * partial_values(eta, i);
      const Vec nd = fr.normal_part(fr.project_to_view(d));
      rep.max_residual = std::max(rep.max_residual, std::sqrt(std::abs(fr.dot(nd, nd))));
    }
  }
  rep.parallel = rep.max_residual <= tol;
  return rep;
}

Vec normal_ricci(View view, int n, std::span<const double> eta_coords) {
  const double c = view_curvature_of(view);
  Vec out(static_cast<Eigen::Index>(eta_coords.size()));
  for (std::size_t a = 0; a < eta_coords.size(); ++a) out(static_cast<Eigen::Index>(a)) = c * n * eta_coords[a];
  return out;
}

int second_form_rank(const PointFrame& fr, double threshold) {
  std::vector<Vec> cols;
  for (int i = 0; i < fr.n; ++i)
    for (int j = i; j < fr.n; ++j) cols.push_back(fr.normal_coords(fr.B(i, j)));
  Mat a(fr.codim(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) a.col(static_cast<Eigen::Index>(c)) = cols[c];
  Eigen::JacobiSVD<Mat> svd(a);
  const Vec& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > threshold) ++rank;
  return rank;
}

std::vector<JetVec> inverse_metric_jets(std::span<const JetVec> d1, bool lorentz) {
  const std::size_t n = d1.size();
  const int dim = d1.front().front().dim();
  std::vector<JetVec> a(n, JetVec(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = pair(d1[i], d1[j], lorentz);
      a[i][n + j] = Jet3::constant(dim, i == j ? 1.0 : 0.0);
    }
  }
  // Gauss–Jordan without pivoting: the metric is positive definite.
  for (std::size_t c = 0; c < n; ++c) {
    const Jet3 inv = reciprocal(a[c][c]);
    for (auto& x : a[c]) x = x * inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const Jet3 f = a[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<JetVec> inv(n, JetVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

Jet3 mean_curvature_pairing(const Immersion& imm, std::span<const Jet3> vars,
                            std::span<const Jet3> eta) {
  const JetVec f = imm.evaluate(vars);
  const bool lorentz = imm.ambient().lorentz();
  const int n = imm.dim();
  std::vector<JetVec> d1;
  for (int i = 0; i < n; ++i) d1.push_back(partial(f, i));
  const auto ginv = inverse_metric_jets(d1, lorentz);
  Jet3 phi = Jet3::constant(vars.front().dim(), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const JetVec dij = partial(d1[static_cast<std::size_t>(i)], j);
      phi += ginv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * pair(dij, eta, lorentz);
    }
  }
  return phi / static_cast<double>(n);
}

Vec surface_gradient(const PointFrame& fr, const Jet3& phi) {
  if (phi.order() < 1) throw DomainError("surface_gradient needs a first-order jet");
  Vec out = Vec::Zero(fr.m);
  for (int i = 0; i < fr.n; ++i)
    for (int j = 0; j < fr.n; ++j) out += fr.inverse_metric(i, j) * phi.d(j) * fr.d1[static_cast<std::size_t>(i)];
  return out;
}

double laplace_beltrami(const PointFrame& fr, const Jet3& phi) {
  if (phi.order() < 2) throw DomainError("laplace_beltrami needs a second-order jet");
  double s = 0.0;
  for (int i = 0; i < fr.n; ++i)
    for (int j = 0; j < fr.n; ++j) {
      double t = phi.d(i, j);
      for (int k = 0; k < fr.n; ++k) t -= fr.christoffel[static_cast<std::size_t>(k)](i, j) * phi.d(k);
      s += fr.inverse_metric(i, j) * t;
    }
  return s;
}

std::vector<JetVec> normal_frame_jets(const Immersion& imm, View view, std::span<const Jet3> vars) {
  imm.view_curvature(view);
  const bool lorentz = imm.ambient().lorentz();
  const bool exclude = excludes_position(imm, view);
  const JetVec f = imm.evaluate(vars);
  const int n = imm.dim();
  const int m = imm.ambient().embedding_dim();
  auto basis = jet_base(f, n, exclude, lorentz);
  // Seed choice mirrors frame_at: tangent vectors first, then position.
  std::vector<Vec> base_values;
  for (std::size_t k = exclude ? 1 : 0; k < basis.size(); ++k) base_values.push_back(values_of(basis[k].first));
  if (exclude) base_values.push_back(values_of(basis[0].first));
  const int target = m - n - (exclude ? 1 : 0);
  const auto seeds = select_normal_seeds(base_values, m, target, lorentz);
  const int dim = vars.front().dim();
  std::vector<JetVec> out;
  for (int s : seeds) {
    JetVec v;
    for (int k = 0; k < m; ++k) v.push_back(Jet3::constant(dim, k == s ? 1.0 : 0.0));
    jet_orthogonalize(v, basis, lorentz);
    v = jet_normalize(v, lorentz);
    basis.emplace_back(v, 1.0);
    out.push_back(std::move(v));
  }
  if (view == View::Flat && exclude) out.push_back(basis[0].first);
  return out;
}

JetVec project_normal_jets(const Immersion& imm, View view, std::span<const Jet3> vars,
                           std::span<const Jet3> reference) {
  imm.view_curvature(view);
  const bool lorentz = imm.ambient().lorentz();
  const JetVec f = imm.evaluate(vars);
  // In the flat view the position is part of the normal space.
  const bool with_position = view != View::Flat;
  const auto basis = jet_base(f, imm.dim(), with_position, lorentz);
  JetVec v(reference.begin(), reference.end());
  if (v.size() != f.size()) throw ContractError("project_normal_jets: reference size");
  jet_orthogonalize(v, basis, lorentz);
  return jet_normalize(v, lorentz);
}

}  // namespace gaussmap
