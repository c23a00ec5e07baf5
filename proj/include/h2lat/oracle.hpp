#pragma once

// Brute-force oracles: bounded enumeration of classes and cross-checks of the
// classification routines against direct definitional tests.

#include "h2lat/lattice.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace h2lat {

enum class Predicate { Exceptional, KNull, Characteristic };
std::string to_string(Predicate p);
Predicate predicate_from_string(const std::string& s);

struct EnumQuery {
  Model model = Model::rational(0);
  std::optional<Integer> square;
  /// Pairing with K_0.
  std::optional<Integer> k_pairing;
  int coeff_bound = 1;
  std::optional<Predicate> predicate;
  /// Lifts the coefficient and work limits.
  bool allow_large = false;
};

inline constexpr int kCoeffSafetyLimit = 8;
/// Upper limit on search nodes visited by one enumeration.
inline constexpr std::size_t kWorkLimit = 50'000'000;

/// Every class with |coefficient| <= coeff_bound satisfying the numeric
/// constraints (and the library predicate, when set), sorted.
std::vector<HomClass> enumerate(const EnumQuery& q);

enum class OrbitTarget { NullSpherical, Exceptional };

struct OrbitOptions {
  /// -1 means 2n.
  int max_depth = -1;
  /// Classes whose leading coefficient exceeds this in absolute value are not expanded (0: unlimited).
  long leading_cap = 0;
  std::size_t max_states = 2'000'000;
};

struct OrbitResult {
  bool found = false;
  /// Canonical (E-sorted) target reached.
  std::optional<HomClass> hit;
  int depth = 0;
  std::size_t visited = 0;
  /// True when the search stopped on max_states or the leading cap rather than
  /// exhausting the depth budget.
  bool truncated = false;
};

/// Breadth-first search over the orbit of x under the twist generators
/// (rational: E_i - E_j and H - E_i - E_j - E_k; ruled: E_i - E_j and
/// F - E_i - E_j), with states deduplicated up to permutation of the E_i.
OrbitResult orbit_search(const HomClass& x, OrbitTarget target, const OrbitOptions& opts = {});

/// Direct test through all x in {0,1}^rank.
bool characteristic_by_parity_scan(const HomClass& xi);

struct Disagreement {
  HomClass cls;
  std::string check;
  bool library;
  bool oracle;
  std::string detail;
};

struct CrosscheckReport {
  EnumQuery query;
  std::string mode;
  std::size_t checked = 0;
  std::size_t confirmed = 0;
  std::vector<HomClass> classes;
  std::vector<Disagreement> disagreements;
  bool ok() const { return disagreements.empty(); }
};

/// Runs the matching library decision on every enumerated class and compares it
/// with the definitional oracle. The checked predicate is the query's, or is
/// inferred from (square, k_pairing) = (-1, -1) / (-2, 0); otherwise every
/// class gets a reduction-certificate check.
CrosscheckReport crosscheck(const EnumQuery& q, const OrbitOptions& orbit = {});

nlohmann::json to_json(const CrosscheckReport& r);

}  // namespace h2lat
