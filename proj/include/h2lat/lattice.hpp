#pragma once

// Intersection lattices of CP^2 # n(-CP^2) and (Sigma_h x S^2) # n(-CP^2).
//
// Coefficient vectors are ordered (H, E_1..E_n) for the rational model and
// (T, F, E_1..E_n) for the ruled model. Cohomology classes are identified
// with homology classes through Poincare duality, so a FormClass uses the
// same coordinates and pairs through the same gram matrix.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace h2lat {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown for contract violations: model mismatch, inadmissible reflections,
/// operations called on the wrong model kind and so on.
class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ModelKind { Rational, Ruled };

class Model {
 public:
  static Model rational(int n);
  static Model ruled(int genus, int n);

  ModelKind kind() const { return kind_; }
  bool is_rational() const { return kind_ == ModelKind::Rational; }
  bool is_ruled() const { return kind_ == ModelKind::Ruled; }
  int genus() const { return genus_; }
  int n() const { return n_; }
  std::size_t rank() const { return static_cast<std::size_t>(n_) + (is_rational() ? 1 : 2); }
  /// Coefficient slot of E_i, 1-based i.
  std::size_t e_slot(int i) const { return static_cast<std::size_t>(i - 1) + (is_rational() ? 1 : 2); }
  std::size_t first_e_slot() const { return is_rational() ? 1 : 2; }

  /// Gram entry b_i . b_j of the standard basis.
  int gram(std::size_t i, std::size_t j) const;

  std::string to_string() const;

  friend bool operator==(const Model&, const Model&) = default;

 private:
  Model(ModelKind kind, int genus, int n) : kind_(kind), genus_(genus), n_(n) {}

  ModelKind kind_;
  int genus_;
  int n_;
};

template <typename Scalar>
class Vec {
 public:
  Vec(Model model, std::vector<Scalar> coeffs);
  static Vec zero(const Model& model) { return Vec(model, std::vector<Scalar>(model.rank())); }

  const Model& model() const { return model_; }
  std::size_t size() const { return coeffs_.size(); }
  const Scalar& operator[](std::size_t i) const { return coeffs_[i]; }
  Scalar& operator[](std::size_t i) { return coeffs_[i]; }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  Vec operator-() const;
  Vec& operator+=(const Vec& other);
  Vec& operator-=(const Vec& other);
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(const Scalar& s, Vec v) {
    for (auto& c : v.coeffs_) c *= s;
    return v;
  }

  friend bool operator==(const Vec& a, const Vec& b) {
    return a.model_ == b.model_ && a.coeffs_ == b.coeffs_;
  }
  /// Lexicographic on coefficients; models must agree.
  friend bool operator<(const Vec& a, const Vec& b) { return a.coeffs_ < b.coeffs_; }

 private:
  Model model_;
  std::vector<Scalar> coeffs_;
};

/// Integral homology class.
using HomClass = Vec<Integer>;
/// Real (here: exact rational) cohomology class, e.g. [omega] or a canonical class.
using FormClass = Vec<Rational>;

extern template class Vec<Integer>;
extern template class Vec<Rational>;

// Basis vectors.
HomClass basis_h(const Model& m);
HomClass basis_t(const Model& m);
HomClass basis_f(const Model& m);
HomClass basis_e(const Model& m, int i);
HomClass unit(const Model& m, std::size_t slot);

/// PD(K_0): -3H + sum E_i, or -2T + (2h-2)F + sum E_i.
HomClass canonical_k0(const Model& m);
FormClass as_form(const HomClass& x);
/// Returns the integral class when every coefficient of the form is integral.
bool try_as_hom(const FormClass& f, HomClass& out);

Integer pairing(const HomClass& x, const HomClass& y);
Rational form_pairing(const FormClass& tau, const HomClass& x);
Rational form_square(const FormClass& tau);
Rational form_dot(const FormClass& x, const FormClass& y);
inline Integer square(const HomClass& x) { return pairing(x, x); }

/// R(gamma)(beta) = beta - 2 (gamma.beta)/(gamma.gamma) gamma, for gamma^2 in {+-1, +-2}.
HomClass reflect(const HomClass& gamma, const HomClass& beta);
bool is_admissible_root(const HomClass& gamma);

bool is_characteristic(const HomClass& xi);

void require_same_model(const Model& a, const Model& b);

}  // namespace h2lat
