#pragma once

// Factoring lattice isometries that fix K_0 (and optionally an area class
// alpha) into words of reflections along null spherical classes.

#include "h2lat/lattice.hpp"
#include "h2lat/matrix.hpp"
#include "h2lat/reduction.hpp"

#include <optional>
#include <string>
#include <vector>

namespace h2lat {

using IsometryMatrix = IntMatrix;

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Checks M^T G M = G, M K = K, alpha o M = alpha (when given) and, for ruled
/// models, M F = F.
ValidationReport validate(const IsometryMatrix& m, const FormClass& k, const std::optional<FormClass>& alpha = std::nullopt);

/// Raised when a validated matrix cannot be factored.
class DecompositionError : public LatticeError {
 public:
  using LatticeError::LatticeError;
};

/// Word of binary and ternary K_0-twists whose product equals m (rational model).
ReflectionWord decompose_k(const IsometryMatrix& m);

struct AlphaOptions {
  /// Accept an exceptional set that is only complete up to a degree bound (n >= 9).
  bool accept_bounded = false;
  std::optional<Integer> degree_bound;
};

/// Word of (K_0, alpha)-twists whose product equals m (rational model).
ReflectionWord decompose_k_alpha(const IsometryMatrix& m, const FormClass& alpha, const AlphaOptions& opts = {});

/// Word of (K_0, alpha)-twists for the ruled model. Without alpha, a form giving
/// every E_i area 1 and F area 2 is used, for which every K_0-twist is an
/// alpha-twist.
ReflectionWord decompose_ruled(const IsometryMatrix& m, const std::optional<FormClass>& alpha = std::nullopt);

/// The ruled form described above.
FormClass balanced_ruled_form(const Model& m);

/// Generators a decomposition may use: K_0-null classes (alpha-null when alpha is given).
/// Rational n <= 8 and all ruled models.
std::vector<HomClass> twist_generators(const Model& m, const std::optional<FormClass>& alpha = std::nullopt);

}  // namespace h2lat
