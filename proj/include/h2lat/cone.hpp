#pragma once

// Exceptional classes, the symplectic cone and the Lagrangian sphere criterion.

#include "h2lat/lattice.hpp"
#include "h2lat/reduction.hpp"

#include <optional>
#include <string>
#include <vector>

namespace h2lat {

/// A set of classes found by enumeration. When `complete` is false only
/// classes with H-coefficient <= degree_bound were searched.
struct ClassSet {
  Model model;
  FormClass k;
  std::vector<HomClass> classes;
  bool complete;
  Integer degree_bound;
};
using ExceptionalSet = ClassSet;

/// Integral classes of K-pairing -1 and square -1 that are exceptional.
/// Rational n <= 8 is exhaustive; n >= 9 requires degree_bound. K must be K_0
/// or (rational) one of the K_delta sign variants.
ExceptionalSet enumerate_exceptional(const Model& model, const std::optional<FormClass>& k = std::nullopt,
                                     const std::optional<Integer>& degree_bound = std::nullopt);

/// K_0-null spherical classes (square -2, K_0-pairing 0), same completeness rules.
ClassSet enumerate_null_spherical(const Model& model, const std::optional<Integer>& degree_bound = std::nullopt);

/// Default degree bound for n >= 9 cone checks: 3 * ceil(max |coeff|) * rank.
Integer default_degree_bound(const FormClass& tau);

enum class ConeStatus { Yes, No, YesUpToBound };
std::string to_string(ConeStatus s);

struct ConeVerdict {
  ConeStatus status;
  /// Violating exceptional class for No answers caused by an exceptional class.
  std::optional<HomClass> witness;
  std::string reason;
  /// Degree bound searched for YesUpToBound answers.
  std::optional<Integer> bound;
  /// Ruled answers only test tau^2 > 0 and tau(E) > 0.
  bool conditions_only = false;
};

ConeVerdict in_cone(const FormClass& tau, const std::optional<FormClass>& k = std::nullopt,
                    const std::optional<Integer>& degree_bound = std::nullopt);

int euler_characteristic(const Model& m);

struct LagrangianVerdict {
  bool yes;
  /// Failed clause for No answers.
  std::string reason;
  /// Reduction of the class to a binary or ternary class (rational models).
  std::optional<NormalForm> certificate;
  /// For n >= 4 a ternary normal form is carried one step further to a binary class.
  std::optional<HomClass> binary_class;
  ConeVerdict cone;
  bool characteristic = false;
  /// False only for characteristic classes when the Euler characteristic is 6.
  bool uniqueness_applicable = true;
};

/// Decides whether xi is represented by a Lagrangian sphere for a symplectic
/// form in class tau with canonical class K_0: xi must be K_0-null spherical
/// and tau(xi) = 0. Throws when tau fails the cone test (YesUpToBound answers
/// are accepted only with accept_bounded).
LagrangianVerdict is_lagrangian_spherical(const HomClass& xi, const FormClass& tau,
                                          const std::optional<FormClass>& k = std::nullopt,
                                          bool accept_bounded = false,
                                          const std::optional<Integer>& degree_bound = std::nullopt);

struct InflationVerdict {
  bool admissible;
  std::string failed;
};

/// A^2 > 0, tau(A) > 0, A - PD(K) tau-positive with nonnegative square, and
/// A.E >= 0 for every exceptional E.
InflationVerdict inflation_check(const HomClass& a, const FormClass& tau,
                                 const std::optional<FormClass>& k = std::nullopt, bool accept_bounded = false,
                                 const std::optional<Integer>& degree_bound = std::nullopt);
bool inflation_admissible(const HomClass& a, const FormClass& tau, const std::optional<FormClass>& k = std::nullopt,
                          bool accept_bounded = false, const std::optional<Integer>& degree_bound = std::nullopt);

}  // namespace h2lat
