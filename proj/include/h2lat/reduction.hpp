#pragma once

// Symplectic genus formulas and Cremona reduction of rational classes.

#include "h2lat/lattice.hpp"
#include "h2lat/matrix.hpp"

#include <string>
#include <vector>

namespace h2lat {

/// Ordered list of reflection generators, stored in application order: the
/// first generator acts first, so matrix() = R(g_k) ... R(g_2) R(g_1).
class ReflectionWord {
 public:
  explicit ReflectionWord(Model model) : model_(model) {}

  const Model& model() const { return model_; }
  const std::vector<HomClass>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }
  bool empty() const { return generators_.empty(); }

  /// Appends a generator applied after the existing ones.
  void push(HomClass gamma);
  /// Appends every generator of `next` (applied after this word).
  void append(const ReflectionWord& next);
  /// The inverse word: generators reversed (each reflection is an involution).
  ReflectionWord inverse() const;

  HomClass apply(const HomClass& x) const;
  IntMatrix matrix() const;

 private:
  Model model_;
  std::vector<HomClass> generators_;
};

/// Gamma_{ijk} = R(H - E_i - E_j - E_k), 1-based distinct indices.
HomClass ternary_root(const Model& m, int i, int j, int k);
/// E_i - E_j.
HomClass binary_root(const Model& m, int i, int j);

enum class NormalFormKind {
  Zero,
  PlusMinusBasisE,   // class is K_0-equivalent to -E_i
  Binary,            // E_i - E_j
  Ternary,           // H - E_i - E_j - E_k (either sign)
  ExceptionalEi,     // class is K_0-equivalent to +E_i
  ExceptionalHEiEj,  // H - E_i - E_j (either sign); terminal only with two free indices
  Reduced,
  NegativeCoefficient,
  Irreducible,
};

std::string to_string(NormalFormKind kind);

struct NormalForm {
  NormalFormKind kind;
  HomClass representative;
  ReflectionWord word;
  /// word.apply(input) == (sign_flipped ? -representative : representative).
  bool sign_flipped = false;
  /// Number of Gamma-type (ternary) steps taken.
  int ternary_steps = 0;
  /// Set for Irreducible results: why the loop stopped.
  std::string diagnostic;
};

Rational eta_k(const HomClass& e, const FormClass& k);
Rational gt_dimension(const HomClass& e, const FormClass& k);

/// a >= 0, all b_i >= 0 and a >= b_1 + b_2 + b_3 for the sorted coefficients
/// of aH - sum b_i E_i (absent entries count as 0).
bool is_reduced(const HomClass& xi);

NormalForm cremona_reduce(const HomClass& xi);

/// Cremona reduction restricted to E-indices >= first_free (1-based). Every
/// generator used fixes E_1..E_{first_free-1}; the input must have zero
/// coefficient on those classes.
NormalForm cremona_reduce_from(const HomClass& xi, int first_free);

/// Applies the square -1 reflections R(E_i) (and a global sign) so that the
/// H-coefficient and all b_i are nonnegative.
HomClass sign_normalize(const HomClass& xi);

bool is_exceptional(const HomClass& xi, const FormClass& k);
bool is_k_null_spherical(const HomClass& xi, const FormClass& k);

/// True when k equals -3H + sum (+-E_i); writes the sign pattern (true = -E_i).
bool is_k_delta(const FormClass& k, std::vector<bool>* delta = nullptr);
bool is_k0(const FormClass& k);

struct EtaBound {
  Rational value;
  /// The bound equals the symplectic genus (the class is reduced).
  bool exact;
};

/// max over the 2^n classes K_delta of eta_{K_delta}(e), for H-coefficient > 0.
EtaBound eta_lower_bound(const HomClass& e);
inline constexpr int kEtaSweepMaxN = 20;

}  // namespace h2lat
