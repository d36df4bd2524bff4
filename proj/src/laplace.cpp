#include "gaussmap/laplace.hpp"

#include <algorithm>
#include <cmath>

#include "gaussmap/errors.hpp"

namespace gaussmap {
namespace {

constexpr double kSkewTolerance = 1e-12;

Mat lorentz_form(int m) {
  Mat g = Mat::Identity(m, m);
  g(m - 1, m - 1) = -1.0;
  return g;
}

void require_skew(const Mat& a, const Mat& g, const char* what) {
  if (a.rows() != a.cols()) throw ContractError(std::string(what) + ": matrix must be square");
  const double err = (a.transpose() * g + g * a).cwiseAbs().maxCoeff();
  if (err > kSkewTolerance) {
    throw ContractError(std::string(what) + ": matrix is not skew for the model form");
  }
}

View native_view(const Immersion& imm) {
  return imm.ambient().kind == SpaceKind::Hyperbolic ? View::Hyperbolic : View::Flat;
}

// Pointwise data shared by the identity checks: the frame, the section
// value and its covariant derivatives along the tangent frame.
struct SectionAt {
  PointFrame fr;
  std::vector<Jet3> vars;
  JetVec eta;
  Vec value;
  std::vector<Vec> nabla;  // ∇_{E_a} η

  SectionAt(const Immersion& imm, View view, const JetField& field, std::span<const double> p)
      : fr(frame_at(imm, view, p)), vars(lift_vars(p)), eta(field(vars)), value(values_of(eta)) {
    if (static_cast<int>(eta.size()) != fr.m) throw ContractError("section has the wrong ambient size");
    for (const Vec& e : fr.tangent) nabla.push_back(along(e));
  }

  // ∇_X η for an ambient tangent vector X.
  Vec along(const Vec& x) const {
    const Vec xi = fr.chart_components(x);
    Vec d = Vec::Zero(fr.m);
    for (int i = 0; i < fr.n; ++i) d += xi(i) * partial_values(eta, i);
    return fr.project_to_view(d);
  }
};

}  // namespace

const char* to_string(KillingKind k) {
  switch (k) {
    case KillingKind::Euclidean:
      return "euclidean";
    case KillingKind::Spherical:
      return "spherical";
    case KillingKind::Hyperbolic:
      return "hyperbolic";
    case KillingKind::Octonionic:
      return "octonionic";
  }
  return "?";
}

KillingField::KillingField(KillingKind kind, Mat a, Vec b)
    : kind_(kind), a_(std::move(a)), b_(std::move(b)) {}

KillingField KillingField::euclidean(Mat a, Vec b) {
  require_skew(a, Mat::Identity(a.rows(), a.rows()), "euclidean Killing field");
  if (b.size() != a.rows()) throw ContractError("euclidean Killing field: translation size");
  return {KillingKind::Euclidean, std::move(a), std::move(b)};
}

KillingField KillingField::spherical(Mat a) {
  require_skew(a, Mat::Identity(a.rows(), a.rows()), "spherical Killing field");
  Vec b = Vec::Zero(a.rows());
  return {KillingKind::Spherical, std::move(a), std::move(b)};
}

KillingField KillingField::hyperbolic(Mat a) {
  require_skew(a, lorentz_form(static_cast<int>(a.rows())), "hyperbolic Killing field");
  Vec b = Vec::Zero(a.rows());
  return {KillingKind::Hyperbolic, std::move(a), std::move(b)};
}

KillingField KillingField::octonionic(Mat right_translation) {
  if (right_translation.rows() != 8) throw ContractError("octonionic Killing field needs an 8x8 matrix");
  require_skew(right_translation, Mat::Identity(8, 8), "octonionic Killing field");
  Vec b = Vec::Zero(8);
  return {KillingKind::Octonionic, std::move(right_translation), std::move(b)};
}

KillingField KillingField::random(KillingKind kind, int m, SeededUniform& rng) {
  if (m < 2) throw DomainError("Killing field needs m >= 2");
  Mat s = Mat::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      s(i, j) = rng.in(-1.0, 1.0);
      s(j, i) = -s(i, j);
    }
  switch (kind) {
    case KillingKind::Euclidean: {
      Vec b(m);
      for (int i = 0; i < m; ++i) b(i) = rng.in(-1.0, 1.0);
      return euclidean(s, b);
    }
    case KillingKind::Spherical:
      return spherical(s);
    case KillingKind::Hyperbolic:
      return hyperbolic(lorentz_form(m) * s);
    case KillingKind::Octonionic:
      throw ContractError("octonionic fields are built from an imaginary octonion");
  }
  throw ContractError("unknown Killing kind");
}

Vec KillingField::at(const Vec& x) const { return a_ * x + b_; }

JetVec KillingField::at(std::span<const Jet3> x) const {
  const auto m = static_cast<std::size_t>(a_.rows());
  if (x.size() != m) throw ContractError("Killing field: point has the wrong size");
  JetVec out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Jet3 s = Jet3::constant(x[0].dim(), b_(static_cast<Eigen::Index>(i)));
    for (std::size_t j = 0; j < m; ++j) {
      const double aij = a_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (aij != 0.0) s += aij * x[j];
    }
    out.push_back(s);
  }
  return out;
}

JetField KillingField::along(const Immersion& imm) const {
  return [field = *this, imm](std::span<const Jet3> vars) { return field.at(imm.evaluate(vars)); };
}

Vec rough_laplacian(const Immersion& imm, View view, const JetField& w, std::span<const double> p) {
  const PointFrame fr = frame_at(imm, view, p);
  const auto vars = lift_vars(p);
  const JetVec f = imm.evaluate(vars);
  const JetVec wj = w(vars);
  if (static_cast<int>(wj.size()) != fr.m) throw ContractError("field has the wrong ambient size");
  // Z_j = P(∂_j W), kept as first-order jets so it can be differentiated once more.
  std::vector<JetVec> z;
  for (int j = 0; j < fr.n; ++j) {
    JetVec zj = partial(wj, j);
    if (fr.curvature != 0.0) {
      const Jet3 coef = fr.curvature * pair(zj, f, fr.lorentz);
      for (std::size_t k = 0; k < zj.size(); ++k) zj[k] -= coef * f[k];
    }
    z.push_back(std::move(zj));
  }
  std::vector<Vec> z0;
  for (const auto& zj : z) z0.push_back(values_of(zj));
  Vec out = Vec::Zero(fr.m);
  for (int i = 0; i < fr.n; ++i)
    for (int j = 0; j < fr.n; ++j) {
      Vec t = fr.project_to_view(partial_values(z[static_cast<std::size_t>(j)], i));
      for (int k = 0; k < fr.n; ++k) t -= fr.christoffel[static_cast<std::size_t>(k)](i, j) * z0[static_cast<std::size_t>(k)];
      out += fr.inverse_metric(i, j) * t;
    }
  return out;
}

Vec killing_laplacian_prediction(const Immersion& imm, View view, const KillingField& v,
                                 std::span<const double> p) {
  const PointFrame fr = frame_at(imm, view, p);
  if (v.size() != fr.m) throw ContractError("Killing field size does not match the ambient");
  const double n = fr.n;
  const Vec vp = v.at(fr.position);
  Vec out = n * fr.project_to_view(v.matrix() * fr.mean_curvature);
  if (fr.curvature != 0.0) out += fr.curvature * (-n * vp + fr.tangent_part(vp));
  return out;
}

double killing_laplacian_residual(const Immersion& imm, View view, const KillingField& v,
                                  std::span<const double> p) {
  const Vec lhs = rough_laplacian(imm, view, v.along(imm), p);
  return (lhs - killing_laplacian_prediction(imm, view, v, p)).norm();
}

double ambient_ricci(const PointFrame& fr, const Vec& z, const Vec& w) {
  if (fr.curvature == 0.0) return 0.0;
  return fr.curvature * (fr.n * fr.dot(z, w) - fr.dot(fr.tangent_part(z), fr.tangent_part(w)));
}

TangentPartResult check_tangent_part(const Immersion& imm, View view, const NormalSection& eta,
                                     std::span<const double> p) {
  const SectionAt s(imm, view, eta.eta, p);
  const PointFrame& fr = s.fr;
  const Vec lap = rough_laplacian(imm, view, eta.eta, p);
  const Jet3 phi = mean_curvature_pairing(imm, s.vars, s.eta);
  const Vec grad = surface_gradient(fr, phi);
  const double n = fr.n;
  std::vector<Vec> nabla_perp;
  for (const Vec& d : s.nabla) nabla_perp.push_back(fr.normal_part(d));

  TangentPartResult r;
  for (int a = 0; a < fr.n; ++a) {
    const Vec& x = fr.tangent[static_cast<std::size_t>(a)];
    const double lhs = fr.dot(lap, x);
    const double ric = ambient_ricci(fr, s.value, x);
    const double g = -n * fr.dot(grad, x);
    const double h = n * fr.dot(fr.mean_curvature, s.nabla[static_cast<std::size_t>(a)]);
    double tr = 0.0;
    for (int i = 0; i < fr.n; ++i) {
      tr += fr.dot(fr.second_form_on(x, fr.tangent[static_cast<std::size_t>(i)]),
                   nabla_perp[static_cast<std::size_t>(i)]);
    }
    tr *= -2.0;
    r.residual = std::max(r.residual, std::abs(lhs - (ric + g + h + tr)));
    r.lhs = std::max(r.lhs, std::abs(lhs));
    r.ricci = std::max(r.ricci, std::abs(ric));
    r.gradient = std::max(r.gradient, std::abs(g));
    r.mean = std::max(r.mean, std::abs(h));
    r.trace = std::max(r.trace, std::abs(tr));
  }
  return r;
}

double normal_derivative_norm(const Immersion& imm, View view, const NormalSection& eta,
                              std::span<const double> p) {
  const SectionAt s(imm, view, eta.eta, p);
  double worst = 0.0;
  for (const Vec& d : s.nabla) worst = std::max(worst, s.fr.normal_part(d).norm());
  return worst;
}

double check_n2eta(const Immersion& imm, View view, const NormalSection& eta,
                   std::span<const double> p, double parallel_tol) {
  if (normal_derivative_norm(imm, view, eta, p) > parallel_tol) {
    throw ContractError("section '" + eta.label + "' is not parallel");
  }
  const PointFrame fr = frame_at(imm, view, p);
  const Vec eta0 = values_of(evaluate_field(eta.eta, p));
  const Vec lap = fr.normal_part(rough_laplacian(imm, view, eta.eta, p));
  return (lap + simons_apply_vector(fr, eta0)).norm();
}

KillingPairingResult check_killing_pairing(const Immersion& imm, View view,
                                           const NormalSection& eta, const KillingField& v,
                                           std::span<const double> p, bool with_useful,
                                           double parallel_tol) {
  const SectionAt s(imm, view, eta.eta, p);
  const PointFrame& fr = s.fr;
  if (v.size() != fr.m) throw ContractError("Killing field size does not match the ambient");
  const double n = fr.n;
  const double c = fr.curvature;
  const Mat& a = v.matrix();
  const JetField vfield = v.along(imm);
  const JetVec vj = vfield(s.vars);
  const Vec v0 = values_of(vj);

  const Jet3 f = pair(s.eta, vj, fr.lorentz);
  const double lap_f = laplace_beltrami(fr, f);
  const Vec lap_v = rough_laplacian(imm, view, vfield, p);
  const Vec lap_eta_perp = fr.normal_part(rough_laplacian(imm, view, eta.eta, p));
  const Jet3 phi = mean_curvature_pairing(imm, s.vars, s.eta);
  const Vec grad = surface_gradient(fr, phi);
  const Vec nabla_eta_v = fr.project_to_view(a * s.value);
  const Vec& h = fr.mean_curvature;
  const Vec v_tan = fr.tangent_part(v0);

  KillingPairingResult r;
  {
    const double lhs = -fr.dot(lap_v, s.value);
    const double rhs = ambient_ricci(fr, s.value, v0) + n * fr.dot(h, nabla_eta_v);
    r.eq_a = std::abs(lhs - rhs);
  }
  {
    double cross = 0.0;
    double trace = 0.0;
    for (int i = 0; i < fr.n; ++i) {
      const Vec& e = fr.tangent[static_cast<std::size_t>(i)];
      const Vec& d = s.nabla[static_cast<std::size_t>(i)];
      cross += fr.dot(d, fr.project_to_view(a * e));
      trace += fr.dot(fr.second_form_on(v_tan, e), fr.normal_part(d));
    }
    const double rhs = fr.dot(lap_eta_perp, v0) - c * n * fr.dot(s.value, v0) -
                       n * fr.dot(grad, v0) + n * fr.dot(h, s.along(v_tan)) -
                       n * fr.dot(h, nabla_eta_v) + 2.0 * cross - 2.0 * trace;
    r.eq_lemma = std::abs(lap_f - rhs);
  }
  if (with_useful) {
    double worst = 0.0;
    for (const Vec& d : s.nabla) worst = std::max(worst, fr.normal_part(d).norm());
    if (worst > parallel_tol) throw ContractError("section '" + eta.label + "' is not parallel");
    const double rhs = n * fr.dot(grad, v0) + n * fr.dot(h, nabla_eta_v) +
                       fr.dot(simons_apply_vector(fr, s.value), v0) + c * n * fr.dot(s.value, v0);
    r.eq_useful = std::abs(-lap_f - rhs);
  }
  return r;
}

Vec gauss_map_laplacian(const Immersion& imm, const NormalSection& eta, std::span<const double> p) {
  const PointFrame fr = frame_at(imm, native_view(imm), p);
  const JetVec e = evaluate_field(eta.eta, p);
  Vec out(static_cast<Eigen::Index>(e.size()));
  for (std::size_t k = 0; k < e.size(); ++k) out(static_cast<Eigen::Index>(k)) = laplace_beltrami(fr, e[k]);
  return out;
}

double harmonicity_residual(const Immersion& imm, const NormalSection& eta,
                            std::span<const double> p) {
  const Vec gamma = values_of(evaluate_field(eta.eta, p));
  const Vec lap = gauss_map_laplacian(imm, eta, p);
  return (lap - lap.dot(gamma) * gamma).norm();
}

double off_eigen_residual(const Immersion& imm, const NormalSection& eta, std::span<const double> p) {
  const PointFrame fr = frame_at(imm, native_view(imm), p);
  const Vec e = values_of(evaluate_field(eta.eta, p));
  const Vec b = simons_apply_vector(fr, e);
  return (b - fr.dot(b, e) * e).norm();
}

NormalSection mix_with_position(const Immersion& imm, const NormalSection& nu, double theta) {
  const double a = std::sin(theta);
  const double b = std::cos(theta);
  JetField field = [imm, f = nu.eta, a, b](std::span<const Jet3> vars) {
    JetVec x = imm.evaluate(vars);
    const JetVec n = f(vars);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = a * n[k] + b * x[k];
    return x;
  };
  return {std::move(field), nu.label + "+position"};
}

SphereHypersurfaceDecomposition sphere_hypersurface_laplacian(const Immersion& imm,
                                                              const NormalSection& nu,
                                                              double theta,
                                                              std::span<const double> p) {
  if (imm.ambient().kind != SpaceKind::Sphere || imm.ambient().dim != imm.dim() + 1) {
    throw ContractError("'" + imm.name() + "' is not a hypersurface of the unit sphere");
  }
  const PointFrame fr = frame_at(imm, View::Sphere, p);
  const auto vars = lift_vars(p);
  const JetVec nuj = nu.eta(vars);
  const Vec nu0 = values_of(nuj);
  const double n = fr.n;
  const double a = std::sin(theta);
  const double b = std::cos(theta);
  const Jet3 hj = mean_curvature_pairing(imm, vars, nuj);
  const Mat s = shape_operator(fr, nu0);

  SphereHypersurfaceDecomposition d;
  d.mean_curvature = hj.value();
  d.shape_norm_sq = s.squaredNorm();
  d.grad_term = n * a * surface_gradient(fr, hj);
  d.nu_coeff = a * d.shape_norm_sq - n * b * d.mean_curvature;
  d.mu_coeff = n * b - n * a * d.mean_curvature;
  const Vec lap = gauss_map_laplacian(imm, mix_with_position(imm, nu, theta), p);
  d.residual = (d.grad_term + d.nu_coeff * nu0 + d.mu_coeff * fr.position + lap).norm();
  return d;
}

double euler_lagrange_residual(const Immersion& imm, View view, const NormalSection& eta,
                               std::span<const double> p) {
  const SectionAt s(imm, view, eta.eta, p);
  double energy = 0.0;
  for (const Vec& d : s.nabla) energy += s.fr.dot(d, d);
  const Vec lap = s.fr.normal_part(rough_laplacian(imm, view, eta.eta, p));
  return (lap + energy * s.value).norm();
}

}  // namespace gaussmap
