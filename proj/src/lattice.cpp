#include "h2lat/lattice.hpp"

#include <sstream>

namespace h2lat {

Model Model::rational(int n) {
  if (n < 0) throw LatticeError("number of blow-ups must be nonnegative");
  return Model(ModelKind::Rational, 0, n);
}

Model Model::ruled(int genus, int n) {
  if (genus < 1) throw LatticeError("ruled base genus must be positive");
  if (n < 0) throw LatticeError("number of blow-ups must be nonnegative");
  return Model(ModelKind::Ruled, genus, n);
}

int Model::gram(std::size_t i, std::size_t j) const {
  if (is_rational()) {
    if (i != j) return 0;
    return i == 0 ? 1 : -1;
  }
  if (i < 2 || j < 2) return (i + j == 1) ? 1 : 0;  // T.F = 1, T.T = F.F = 0
  return i == j ? -1 : 0;
}

std::string Model::to_string() const {
  std::ostringstream os;
  if (is_rational())
    os << "rational:" << n_;
  else
    os << "ruled:h=" << genus_ << ",n=" << n_;
  return os.str();
}

void require_same_model(const Model& a, const Model& b) {
  if (!(a == b)) throw LatticeError("incompatible lattice models");
}

template <typename Scalar>
Vec<Scalar>::Vec(Model model, std::vector<Scalar> coeffs) : model_(model), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != model_.rank())
    throw LatticeError("coefficient vector length " + std::to_string(coeffs_.size()) +
                       " does not match rank " + std::to_string(model_.rank()));
}

template <typename Scalar>
bool Vec<Scalar>::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

template <typename Scalar>
Vec<Scalar> Vec<Scalar>::operator-() const {
  Vec out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

template <typename Scalar>
Vec<Scalar>& Vec<Scalar>::operator+=(const Vec& other) {
  require_same_model(model_, other.model_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

template <typename Scalar>
Vec<Scalar>& Vec<Scalar>::operator-=(const Vec& other) {
  require_same_model(model_, other.model_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

template class Vec<Integer>;
template class Vec<Rational>;

HomClass unit(const Model& m, std::size_t slot) {
  HomClass v = HomClass::zero(m);
  v[slot] = 1;
  return v;
}

HomClass basis_h(const Model& m) {
  if (!m.is_rational()) throw LatticeError("H exists only in the rational model");
  return unit(m, 0);
}

HomClass basis_t(const Model& m) {
  if (!m.is_ruled()) throw LatticeError("T exists only in the ruled model");
  return unit(m, 0);
}

HomClass basis_f(const Model& m) {
  if (!m.is_ruled()) throw LatticeError("F exists only in the ruled model");
  return unit(m, 1);
}

HomClass basis_e(const Model& m, int i) {
  if (i < 1 || i > m.n()) throw LatticeError("index out of range: E" + std::to_string(i));
  return unit(m, m.e_slot(i));
}

HomClass canonical_k0(const Model& m) {
  HomClass k = HomClass::zero(m);
  if (m.is_rational()) {
    k[0] = -3;
  } else {
    k[0] = -2;
    k[1] = 2 * m.genus() - 2;
  }
  for (std::size_t i = m.first_e_slot(); i < m.rank(); ++i) k[i] = 1;
  return k;
}

FormClass as_form(const HomClass& x) {
  std::vector<Rational> c(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) c[i] = x[i];
  return FormClass(x.model(), std::move(c));
}

bool try_as_hom(const FormClass& f, HomClass& out) {
  std::vector<Integer> c(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].get_den() != 1) return false;
    c[i] = f[i].get_num();
  }
  out = HomClass(f.model(), std::move(c));
  return true;
}

namespace {

template <typename A, typename B, typename Out>
void bilinear(const Model& m, const std::vector<A>& x, const std::vector<B>& y, Out& acc) {
  std::size_t e0 = m.first_e_slot();
  if (m.is_rational()) {
    acc = x[0] * y[0];
  } else {
    acc = x[0] * y[1] + x[1] * y[0];
  }
  for (std::size_t i = e0; i < x.size(); ++i) acc -= x[i] * y[i];
}

}  // namespace

Integer pairing(const HomClass& x, const HomClass& y) {
  require_same_model(x.model(), y.model());
  Integer acc;
  bilinear(x.model(), x.coeffs(), y.coeffs(), acc);
  return acc;
}

Rational form_pairing(const FormClass& tau, const HomClass& x) {
  require_same_model(tau.model(), x.model());
  const Model& m = x.model();
  Rational acc;
  std::size_t e0 = m.first_e_slot();
  if (m.is_rational()) {
    acc = tau[0] * x[0];
  } else {
    acc = tau[0] * x[1] + tau[1] * x[0];
  }
  for (std::size_t i = e0; i < x.size(); ++i) acc -= tau[i] * x[i];
  return acc;
}

Rational form_square(const FormClass& tau) {
  Rational acc;
  bilinear(tau.model(), tau.coeffs(), tau.coeffs(), acc);
  return acc;
}

Rational form_dot(const FormClass& x, const FormClass& y) {
  require_same_model(x.model(), y.model());
  Rational acc;
  bilinear(x.model(), x.coeffs(), y.coeffs(), acc);
  return acc;
}

bool is_admissible_root(const HomClass& gamma) {
  Integer s = square(gamma);
  return s == 1 || s == -1 || s == 2 || s == -2;
}

HomClass reflect(const HomClass& gamma, const HomClass& beta) {
  require_same_model(gamma.model(), beta.model());
  Integer s = square(gamma);
  if (!(s == 1 || s == -1 || s == 2 || s == -2))
    throw LatticeError("reflection undefined for this square");
  // 2(gamma.beta)/s is integral because s divides 2.
  Integer factor = 2 * pairing(gamma, beta);
  factor /= s;
  HomClass out = beta;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= factor * gamma[i];
  return out;
}

bool is_characteristic(const HomClass& xi) {
  const Model& m = xi.model();
  for (std::size_t i = 0; i < m.rank(); ++i) {
    HomClass b = unit(m, i);
    Integer lhs = pairing(xi, b) - m.gram(i, i);
    if (mpz_even_p(lhs.get_mpz_t()) == 0) return false;
  }
  return true;
}

}  // namespace h2lat
