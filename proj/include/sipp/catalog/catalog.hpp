#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sipp/realize/realize.hpp"
#include "sipp/signpat/signed_perm.hpp"

namespace sipp {

/// Largest n accepted by the exhaustive enumerator.
inline constexpr std::size_t kEnumerateDimCap = 5;

/// Calls `emit` for every m x n pattern with at most max_zeros zeros. With
/// dedup each class is emitted once as its canonical form (the smaller of
/// the forms of S and S^T for square shapes). Throws DimensionCapped unless
/// m <= n <= 5.
void enumerate_patterns(std::size_t m, std::size_t n, std::size_t max_zeros, bool dedup,
                        const std::function<void(const SignPattern&)>& emit);

std::vector<SignPattern> enumerate_patterns(std::size_t m, std::size_t n, std::size_t max_zeros, bool dedup);

/// Canonical key used for atlas deduplication.
SignPattern atlas_key(const SignPattern& s);

enum class ClassStatus { CertifiedAllows, CertifiedBlocked, Unknown };

const char* to_string(ClassStatus s);
ClassStatus class_status_from_string(const std::string& s);

struct Classification {
  SignPattern pattern;
  ClassStatus status = ClassStatus::Unknown;
  /// Violated necessary condition (CertifiedBlocked).
  std::string condition;
  /// Seed or method that produced the realization (CertifiedAllows).
  std::string provenance;
  std::optional<Matrix<double>> realization;
  double residual = 0.0;
  /// The realization has the SIPP (float check), so it can seed others.
  bool realization_has_sipp = false;

  friend bool operator==(const Classification& a, const Classification& b);
};

struct Seed {
  std::string name;
  Matrix<double> q;
};

/// Row orthogonal matrices with the SIPP available as realization seeds.
class SeedLibrary {
 public:
  /// Hessenberg, hollow and padded seeds up to order 7.
  static SeedLibrary builtin();
  /// builtin() plus the JSON matrices found in $SIPP_ATLAS_CACHE.
  static SeedLibrary with_cache();

  /// Keeps q only if it is row orthogonal with the SIPP.
  bool add(std::string name, const Matrix<double>& q);
  const std::vector<Seed>& seeds() const { return seeds_; }

 private:
  std::vector<Seed> seeds_;
};

/// Loads every *.json matrix in dir as a seed; unreadable files are skipped.
std::size_t load_seed_directory(SeedLibrary& lib, const std::filesystem::path& dir);

struct ClassifyOptions {
  int descent_restarts = 12;
  int descent_iterations = 200;
  std::uint64_t rng_seed = 0x5eed;
  RealizeOptions realize;
};

/// First necessary condition the pattern fails, or "".
std::string necessary_condition_violation(const SignPattern& s);

/// Signed permutations with p1 sign(q) p2 agreeing with s on the support of
/// sign(q), if any.
std::optional<std::pair<SignedPerm, SignedPerm>> embed_pattern(const SignPattern& seed, const SignPattern& s);

/// Necessary conditions first, then seeds, then direct descent. Never
/// claims CertifiedBlocked from a failed search.
Classification classify(const SignPattern& s, const SeedLibrary& seeds, const ClassifyOptions& opts = {});
Classification classify(const SignPattern& s);

/// Levenberg-Marquardt on Q = S o exp(T) for ||Q Q^T - I||; returns a
/// realization with residual <= res and entries bounded away from 0.
std::optional<Matrix<double>> descent_realization(const SignPattern& s, const ClassifyOptions& opts = {});

struct AtlasBuildOptions {
  std::size_t m = 3;
  std::size_t n = 3;
  std::size_t max_zeros = 9;
  unsigned threads = 0;  // 0: hardware concurrency
  ClassifyOptions classify;
};

std::vector<Classification> build_atlas(const AtlasBuildOptions& opts, const SeedLibrary& seeds);

/// Consistency violations: realizations that do not re-verify, blocked
/// entries without a failing condition, allowed entries failing one, and
/// duplicate keys.
std::vector<std::string> audit_atlas(const std::vector<Classification>& atlas);

inline constexpr int kAtlasSchemaVersion = 1;

nlohmann::json classification_to_json(const Classification& c);
Classification classification_from_json(const nlohmann::json& j);

/// Line-delimited JSON: a schema header line, then one entry per line.
void save_atlas(const std::filesystem::path& path, const std::vector<Classification>& atlas);
/// Throws Parse naming the offending line.
std::vector<Classification> load_atlas(const std::filesystem::path& path);

}  // namespace sipp
