#include "gaussmap/sampling.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#include "gaussmap/errors.hpp"

namespace gaussmap {

SamplePlan make_sample_plan(const std::vector<ParamInterval>& box, std::uint64_t seed, int count,
                            bool include_corners) {
  if (box.empty()) throw DomainError("sample plan needs a nonempty box");
  if (count < 0) throw DomainError("negative sample count");
  SamplePlan plan;
  plan.seed = seed;
  SeededUniform rng(seed);
  for (int s = 0; s < count; ++s) {
    std::vector<double> p;
    p.reserve(box.size());
    for (const auto& iv : box) p.push_back(rng.in(iv.lo, iv.hi));
    plan.points.push_back(std::move(p));
  }
  if (include_corners) {
    const std::size_t n = box.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<double> p(n);
      for (std::size_t i = 0; i < n; ++i) p[i] = (mask >> i) & 1U ? box[i].hi : box[i].lo;
      plan.points.push_back(std::move(p));
    }
  }
  return plan;
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* raw = std::getenv("GAUSSMAP_SEED");
  if (raw == nullptr || *raw == '\0') return fallback;
  std::uint64_t value = 0;
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc{} || ptr != end) return fallback;
  return value;
}

ToleranceProfile ToleranceProfile::by_name(const std::string& name) {
  ToleranceProfile p;
  p.name = name;
  if (name == "default") return p;
  if (name == "strict") {
    p.structural = 1e-12;
    p.derived = 1e-10;
    p.spectrum = 1e-11;
    p.contract = 1e-10;
    return p;
  }
  if (name == "loose") {
    p.structural = 1e-8;
    p.derived = 1e-6;
    p.spectrum = 1e-7;
    p.contract = 1e-6;
    return p;
  }
  throw UsageError("unknown tolerance profile '" + name + "' (default|strict|loose)");
}

}  // namespace gaussmap
