#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace gaussmap {

/// One chart-variable interval of an immersion's parameter box.
struct ParamInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool periodic = false;
};

/// Deterministic uniform doubles in [0, 1) from the standardised mt19937_64
/// stream (no std::uniform_real_distribution, whose output is unspecified).
class SeededUniform {
 public:
  explicit SeededUniform(std::uint64_t seed) : engine_(seed) {}

  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double in(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 engine_;
};

struct SamplePlan {
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> points;
};

inline constexpr int kDefaultSampleCount = 64;
inline constexpr std::uint64_t kDefaultSeed = 42;

/// `count` seeded points in the box followed by the 2^n box corners.
SamplePlan make_sample_plan(const std::vector<ParamInterval>& box, std::uint64_t seed,
                            int count = kDefaultSampleCount, bool include_corners = true);

/// Seed from GAUSSMAP_SEED if set and parseable, else `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback = kDefaultSeed);

/// Tolerance knobs shared by every check.
struct ToleranceProfile {
  std::string name = "default";
  double structural = 1e-10;  // frame orthonormality, sphere membership, minimality
  double derived = 1e-8;      // identities assembled from several jet pipelines
  double spectrum = 1e-9;     // spread of Simons eigenvalues across samples
  double contract = 1e-8;     // normality / parallelism preconditions

  /// "default", "strict" or "loose"; anything else is a UsageError.
  static ToleranceProfile by_name(const std::string& name);
};

}  // namespace gaussmap
