#include "gaussmap/cayley_dickson.hpp"

#include <cmath>
#include <sstream>

#include "gaussmap/errors.hpp"

namespace gaussmap {
namespace {

constexpr double kEmbeddingTolerance = 1e-10;

void check_level(int level) {
  if (level < 0 || level > kOctonionLevel) throw DomainError("Cayley-Dickson level must be 0..3");
}

bool power_of_two(std::size_t s) { return s != 0 && (s & (s - 1)) == 0; }

template <class T>
std::vector<T> sub(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

template <class T>
std::vector<T> add(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

template <class T>
std::pair<std::vector<T>, std::vector<T>> halves(const std::vector<T>& x) {
  const auto h = static_cast<std::ptrdiff_t>(x.size() / 2);
  return {std::vector<T>(x.begin(), x.begin() + h), std::vector<T>(x.begin() + h, x.end())};
}

template <class T>
std::vector<T> concat(std::vector<T> a, const std::vector<T>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

JetVec pad(JetVec v, std::size_t size) {
  const int dim = v.front().dim();
  while (v.size() < size) v.push_back(Jet3::constant(dim, 0.0));
  return v;
}

Vec pad(const Vec& v, Eigen::Index size) {
  Vec out = Vec::Zero(size);
  out.head(v.size()) = v;
  return out;
}

int sphere_dimension(const CatalogEntry& entry) {
  if (!entry.is_sphere_hypersurface()) {
    throw ContractError("'" + entry.name + "' is not a hypersurface of a unit sphere");
  }
  const int k = entry.immersion.ambient().dim;
  if (k < 3 || k > 7) throw ContractError("octonionic Gauss map needs 3 <= k <= 7");
  return k;
}

std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

Vec to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// x^{-1}·η as jets, both padded to R^8.
JetVec gamma_jets(const CatalogEntry& entry, std::span<const Jet3> vars) {
  const JetVec x = pad(entry.immersion.evaluate(vars), 8);
  const JetVec eta = pad(entry.unit_normal->eta(vars), 8);
  const Jet3 inv = reciprocal(pair(x, x, false));
  JetVec xinv = cd_conj(x);
  for (Jet3& c : xinv) c *= inv;
  return cd_mul(xinv, eta);
}

}  // namespace

template <class T>
std::vector<T> cd_conj(const std::vector<T>& x) {
  if (!power_of_two(x.size())) throw ContractError("Cayley-Dickson size must be a power of two");
  if (x.size() == 1) return x;
  auto [x1, x2] = halves(x);
  for (T& c : x2) c = -c;
  return concat(cd_conj(x1), x2);
}

template <class T>
std::vector<T> cd_mul(const std::vector<T>& x, const std::vector<T>& y) {
  if (x.size() != y.size()) throw ContractError("Cayley-Dickson levels differ");
  if (!power_of_two(x.size())) throw ContractError("Cayley-Dickson size must be a power of two");
  if (x.size() == 1) return {x[0] * y[0]};
  auto [x1, x2] = halves(x);
  auto [y1, y2] = halves(y);
  return concat(sub(cd_mul(x1, y1), cd_mul(cd_conj(y2), x2)),
                add(cd_mul(y2, x1), cd_mul(x2, cd_conj(y1))));
}

template std::vector<double> cd_mul(const std::vector<double>&, const std::vector<double>&);
template std::vector<Jet3> cd_mul(const std::vector<Jet3>&, const std::vector<Jet3>&);
template std::vector<double> cd_conj(const std::vector<double>&);
template std::vector<Jet3> cd_conj(const std::vector<Jet3>&);

CDNumber::CDNumber(int level) : level_(level) {
  check_level(level);
  c_.assign(std::size_t{1} << level, 0.0);
}

CDNumber::CDNumber(int level, std::vector<double> coeffs) : level_(level), c_(std::move(coeffs)) {
  check_level(level);
  if (c_.size() != (std::size_t{1} << level)) throw ContractError("coefficient count must be 2^level");
}

CDNumber CDNumber::one(int level) { return basis(level, 0); }

CDNumber CDNumber::basis(int level, int index) {
  CDNumber x(level);
  if (index < 0 || index >= x.size()) throw DomainError("basis index out of range");
  x.c_[static_cast<std::size_t>(index)] = 1.0;
  return x;
}

CDNumber cd_mul(const CDNumber& x, const CDNumber& y) {
  if (x.level() != y.level()) throw ContractError("Cayley-Dickson levels differ");
  return {x.level(), cd_mul(x.coeffs(), y.coeffs())};
}

CDNumber cd_conj(const CDNumber& x) { return {x.level(), cd_conj(x.coeffs())}; }

double cd_norm(const CDNumber& x) { return std::sqrt(cd_mul(x, cd_conj(x)).re()); }

CDNumber cd_inv(const CDNumber& x) {
  const double nn = cd_mul(x, cd_conj(x)).re();
  if (nn == 0.0) throw SingularJetError("inverse of the zero element");
  std::vector<double> c = cd_conj(x.coeffs());
  for (double& v : c) v /= nn;
  return {x.level(), std::move(c)};
}

Mat left_translation_matrix(const CDNumber& x) {
  Mat m(x.size(), x.size());
  for (int i = 0; i < x.size(); ++i) m.col(i) = to_vec(cd_mul(x, CDNumber::basis(x.level(), i)).coeffs());
  return m;
}

Mat right_translation_matrix(const CDNumber& x) {
  Mat m(x.size(), x.size());
  for (int i = 0; i < x.size(); ++i) m.col(i) = to_vec(cd_mul(CDNumber::basis(x.level(), i), x).coeffs());
  return m;
}

std::vector<std::vector<SignedIndex>> multiplication_table(int level) {
  check_level(level);
  const int s = 1 << level;
  std::vector<std::vector<SignedIndex>> table(static_cast<std::size_t>(s));
  for (int a = 0; a < s; ++a) {
    for (int b = 0; b < s; ++b) {
      const CDNumber p = cd_mul(CDNumber::basis(level, a), CDNumber::basis(level, b));
      SignedIndex e{0, -1};
      for (int c = 0; c < s; ++c) {
        if (p[c] == 0.0) continue;
        if (e.index >= 0 || std::abs(p[c]) != 1.0) throw ContractError("basis product is not a signed basis element");
        e = {p[c] > 0 ? 1 : -1, c};
      }
      table[static_cast<std::size_t>(a)].push_back(e);
    }
  }
  return table;
}

std::string format_multiplication_table(const std::vector<std::vector<SignedIndex>>& table) {
  std::ostringstream out;
  for (const auto& row : table) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ' ';
      out << (row[j].sign > 0 ? '+' : '-') << 'e' << row[j].index;
    }
    out << '\n';
  }
  return out.str();
}

std::vector<std::vector<SignedIndex>> parse_multiplication_table(const std::string& text) {
  std::vector<std::vector<SignedIndex>> table;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::istringstream toks(line);
    std::vector<SignedIndex> row;
    std::string tok;
    while (toks >> tok) {
      if (tok.size() < 3 || (tok[0] != '+' && tok[0] != '-') || tok[1] != 'e') {
        throw UsageError("bad table token '" + tok + "'");
      }
      row.push_back({tok[0] == '+' ? 1 : -1, std::stoi(tok.substr(2))});
    }
    table.push_back(std::move(row));
  }
  return table;
}

KillingField octonionic_killing(const CDNumber& v) {
  if (v.level() != kOctonionLevel) throw ContractError("octonionic Killing field needs an octonion");
  if (std::abs(v.re()) > 1e-12) throw ContractError("octonionic Killing field needs Re(v) = 0");
  return KillingField::octonionic(right_translation_matrix(v));
}

CatalogEntry embed_in_s7(const CatalogEntry& entry) {
  sphere_dimension(entry);
  const Immersion& base = entry.immersion;
  JetField chart = [base](std::span<const Jet3> vars) { return pad(base.evaluate(vars), 8); };
  JetField normal = [f = entry.unit_normal->eta](std::span<const Jet3> vars) { return pad(f(vars), 8); };
  const std::string name = entry.name + " in S^7";
  CatalogEntry out{name, Immersion(name, base.dim(), AmbientSpace::sphere(7), std::move(chart), base.box()),
                   NormalSection{std::move(normal), entry.unit_normal->label}, entry.known,
                   entry.provenance};
  out.isoparametric = entry.isoparametric;
  out.negative_control = entry.negative_control;
  out.negative_mean_curvature = entry.negative_mean_curvature;
  return out;
}

CDNumber octonionic_gauss_map(const CatalogEntry& entry, std::span<const double> p) {
  sphere_dimension(entry);
  if (!entry.immersion.contains(p)) throw DomainError("chart point outside the domain box");
  const auto vars = lift_vars(p);
  const CDNumber g(kOctonionLevel, to_std(values_of(gamma_jets(entry, vars))));
  if (std::abs(g.re()) > kEmbeddingTolerance || std::abs(cd_norm(g) - 1.0) > kEmbeddingTolerance) {
    throw EmbeddingError("octonionic Gauss map left the unit sphere of Im(O)");
  }
  return g;
}

OctonionLaplacianCheck octonionic_laplacian_check(const CatalogEntry& entry,
                                                  std::span<const double> p) {
  const int k = sphere_dimension(entry);
  const CDNumber gval = octonionic_gauss_map(entry, p);
  const PointFrame fr = frame_at(entry.immersion, View::Sphere, p);
  const auto vars = lift_vars(p);
  const JetVec gamma = gamma_jets(entry, vars);
  Vec lap(8);
  for (int i = 0; i < 8; ++i) lap(i) = laplace_beltrami(fr, gamma[static_cast<std::size_t>(i)]);

  const JetVec nu = entry.unit_normal->eta(vars);
  const Jet3 h = mean_curvature_pairing(entry.immersion, vars, nu);
  const Vec grad_h = surface_gradient(fr, h);
  const Mat s = shape_operator(fr, values_of(nu));
  const CDNumber xinv = cd_inv(CDNumber(kOctonionLevel, to_std(pad(fr.position, 8))));
  const Vec translated = to_vec(cd_mul(xinv, CDNumber(kOctonionLevel, to_std(pad(grad_h, 8)))).coeffs());
  const Vec g = to_vec(gval.coeffs());

  OctonionLaplacianCheck r;
  r.factor = s.squaredNorm() + (k - 1);
  r.grad_h_norm = grad_h.norm();
  r.residual = (-lap - (k - 1) * translated - r.factor * g).norm();
  r.harmonicity = (lap - lap.dot(g) * g).norm();
  return r;
}

double octonionic_superharmonicity_residual(const CatalogEntry& entry, const CDNumber& v,
                                            std::span<const double> p) {
  const int k = sphere_dimension(entry);
  if (v.level() != kOctonionLevel) throw ContractError("pole must be an octonion");
  const PointFrame fr = frame_at(entry.immersion, View::Sphere, p);
  const auto vars = lift_vars(p);
  const JetVec gamma = gamma_jets(entry, vars);
  Jet3 f = Jet3::constant(vars[0].dim(), 0.0);
  for (int i = 0; i < 8; ++i) f += v[i] * gamma[static_cast<std::size_t>(i)];
  const Mat s = shape_operator(fr, values_of(entry.unit_normal->eta(vars)));
  return std::abs(laplace_beltrami(fr, f) + (s.squaredNorm() + (k - 1)) * f.value());
}

}  // namespace gaussmap
