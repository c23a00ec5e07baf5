#include "h2lat/cone.hpp"

#include "h2lat/parser.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace h2lat {

namespace {

constexpr long kMaxDegreeBound = 100000;

long isqrt(long v) {
  if (v <= 0) return 0;
  long r = static_cast<long>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// All c in Z^n with sum c = sum and sum c^2 = sq. With nonpositive, only c <= 0;
// with nonnegative, only c >= 0.
void solve_e_part(int n, long sum, long sq, int sign_restriction, const std::function<void(const std::vector<long>&)>& emit) {
  std::vector<long> c(static_cast<std::size_t>(n));
  std::function<void(int, long, long)> rec = [&](int i, long s, long q) {
    long k = n - i;
    if (k == 0) {
      if (s == 0 && q == 0) emit(c);
      return;
    }
    if (q < 0 || ((q - s) % 2) != 0 || s * s > k * q) return;
    long r = isqrt(q);
    long lo = sign_restriction > 0 ? 0 : -r;
    long hi = sign_restriction < 0 ? 0 : r;
    for (long v = lo; v <= hi; ++v) {
      c[static_cast<std::size_t>(i)] = v;
      rec(i + 1, s - v, q - v * v);
    }
  };
  rec(0, sum, sq);
}

long to_long_bound(const Integer& b) {
  if (b < 0) throw LatticeError("degree bound must be nonnegative");
  if (b > kMaxDegreeBound) throw LatticeError("degree bound too large (max " + std::to_string(kMaxDegreeBound) + ")");
  return b.get_si();
}

HomClass make_rational(const Model& m, long a, const std::vector<long>& c) {
  HomClass x = HomClass::zero(m);
  x[0] = a;
  for (std::size_t i = 0; i < c.size(); ++i) x[i + 1] = c[i];
  return x;
}

// Integer a-range where (9-n)a^2 - lin*a + cst <= 0, for n <= 8.
std::vector<long> quadratic_range(int n, long lin, long cst) {
  std::vector<long> out;
  for (long a = -64; a <= 64; ++a)
    if ((9 - n) * a * a - lin * a + cst <= 0) out.push_back(a);
  return out;
}

HomClass apply_delta(const HomClass& x, const std::vector<bool>& delta) {
  HomClass y = x;
  for (std::size_t i = 0; i < delta.size(); ++i)
    if (delta[i]) y[i + 1] = -y[i + 1];
  return y;
}

void sort_unique(std::vector<HomClass>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<HomClass> ruled_exceptional(const Model& m) {
  std::vector<HomClass> out;
  for (int i = 1; i <= m.n(); ++i) {
    out.push_back(basis_e(m, i));
    out.push_back(basis_f(m) - basis_e(m, i));
  }
  sort_unique(out);
  return out;
}

// Exceptional classes for K_0 with a <= bound, one per permutation orbit of the
// E-part: c ascending (b_1 >= b_2 >= ...).
std::vector<HomClass> sorted_exceptional(const Model& m, long bound) {
  const int n = m.n();
  const FormClass k0 = as_form(canonical_k0(m));
  std::vector<HomClass> out;
  if (n >= 1) {
    std::vector<long> c(static_cast<std::size_t>(n), 0);
    c.back() = 1;
    out.push_back(make_rational(m, 0, c));
  }
  std::vector<long> b(static_cast<std::size_t>(n));
  for (long a = 1; a <= bound; ++a) {
    // b non-increasing, b >= 0, sum b = 3a - 1, sum b^2 = a^2 + 1.
    std::function<void(int, long, long, long)> rec = [&](int i, long s, long q, long cap) {
      long k = n - i;
      if (k == 0) {
        if (s == 0 && q == 0) {
          std::vector<long> c(b.size());
          for (std::size_t j = 0; j < b.size(); ++j) c[j] = -b[j];
          HomClass x = make_rational(m, a, c);
          if (is_exceptional(x, k0)) out.push_back(std::move(x));
        }
        return;
      }
      if (q < 0 || s < 0 || ((q - s) % 2) != 0 || s * s > k * q || s > k * cap) return;
      long hi = std::min(cap, isqrt(q));
      for (long v = hi; v >= 0; --v) {
        if (v * k < s) break;  // the remaining entries are at most v
        b[static_cast<std::size_t>(i)] = v;
        rec(i + 1, s - v, q - v * v, v);
      }
    };
    rec(0, 3 * a - 1, a * a + 1, a);
  }
  return out;
}

FormClass resolve_k(const Model& m, const std::optional<FormClass>& k) {
  if (!k) return as_form(canonical_k0(m));
  require_same_model(m, k->model());
  return *k;
}

}  // namespace

ExceptionalSet enumerate_exceptional(const Model& model, const std::optional<FormClass>& k_opt,
                                     const std::optional<Integer>& degree_bound) {
  FormClass k = resolve_k(model, k_opt);
  if (model.is_ruled()) {
    if (!is_k0(k)) throw LatticeError("ruled exceptional classes are listed for K_0 only; conjugate to K_0 first");
    return {model, k, ruled_exceptional(model), true, 0};
  }
  std::vector<bool> delta;
  if (!is_k_delta(k, &delta)) throw LatticeError("canonical class must be K_0 or a K_delta sign variant");
  const int n = model.n();
  const FormClass k0 = as_form(canonical_k0(model));
  std::vector<HomClass> found;
  auto take = [&](long a, const std::vector<long>& c) {
    HomClass x = make_rational(model, a, c);
    if (is_exceptional(x, k0)) found.push_back(x);
  };
  ExceptionalSet out{model, k, {}, true, 0};
  if (n <= 8) {
    // Cauchy-Schwarz on sum c = 1 - 3a, sum c^2 = a^2 + 1.
    std::vector<long> as = quadratic_range(n, 6, 1 - n);
    for (long a : as) solve_e_part(n, 1 - 3 * a, a * a + 1, 0, [&](const std::vector<long>& c) { take(a, c); });
    out.degree_bound = as.empty() ? 0 : as.back();
  } else {
    if (!degree_bound) throw LatticeError("n >= 9: exceptional set is infinite, a degree bound is required");
    long bound = to_long_bound(*degree_bound);
    // Exceptional classes for K_0 have a >= 0 and, for a > 0, all b_i >= 0;
    // search sorted E-parts and expand permutations.
    for (const auto& x : sorted_exceptional(model, bound)) {
      std::vector<Integer> c(x.coeffs().begin() + 1, x.coeffs().end());
      do {
        HomClass y = x;
        for (std::size_t i = 0; i < c.size(); ++i) y[i + 1] = c[i];
        found.push_back(std::move(y));
      } while (std::next_permutation(c.begin(), c.end()));
    }
    out.complete = false;
    out.degree_bound = bound;
  }
  for (auto& x : found) x = apply_delta(x, delta);
  sort_unique(found);
  out.classes = std::move(found);
  return out;
}

ClassSet enumerate_null_spherical(const Model& model, const std::optional<Integer>& degree_bound) {
  FormClass k0 = as_form(canonical_k0(model));
  ClassSet out{model, k0, {}, true, 0};
  if (model.is_ruled()) {
    for (int i = 1; i <= model.n(); ++i)
      for (int j = i + 1; j <= model.n(); ++j) {
        HomClass b = binary_root(model, i, j);
        HomClass t = basis_f(model) - basis_e(model, i) - basis_e(model, j);
        out.classes.insert(out.classes.end(), {b, -b, t, -t});
      }
    sort_unique(out.classes);
    return out;
  }
  const int n = model.n();
  auto take = [&](long a, const std::vector<long>& c) {
    HomClass x = make_rational(model, a, c);
    if (is_k_null_spherical(x, k0)) out.classes.push_back(x);
  };
  if (n <= 8) {
    // sum c = -3a, sum c^2 = a^2 + 2, so 9a^2 <= n(a^2 + 2).
    std::vector<long> as = quadratic_range(n, 0, -2 * n);
    for (long a : as) solve_e_part(n, -3 * a, a * a + 2, 0, [&](const std::vector<long>& c) { take(a, c); });
    out.degree_bound = as.empty() ? 0 : as.back();
  } else {
    if (!degree_bound) throw LatticeError("n >= 9: null spherical set is infinite, a degree bound is required");
    long bound = to_long_bound(*degree_bound);
    for (long a = -bound; a <= bound; ++a) {
      int restriction = a > 0 ? -1 : (a < 0 ? 1 : 0);
      solve_e_part(n, -3 * a, a * a + 2, restriction, [&](const std::vector<long>& c) { take(a, c); });
    }
    out.complete = false;
    out.degree_bound = bound;
  }
  sort_unique(out.classes);
  return out;
}

Integer default_degree_bound(const FormClass& tau) {
  Rational mx = 0;
  for (const auto& c : tau.coeffs()) mx = std::max(mx, Rational(abs(c)));
  Integer ceil_mx;
  mpz_cdiv_q(ceil_mx.get_mpz_t(), mx.get_num_mpz_t(), mx.get_den_mpz_t());
  return 3 * ceil_mx * static_cast<long>(tau.model().rank());
}

std::string to_string(ConeStatus s) {
  switch (s) {
    case ConeStatus::Yes: return "Yes";
    case ConeStatus::No: return "No";
    case ConeStatus::YesUpToBound: return "YesUpToBound";
  }
  return "?";
}

ConeVerdict in_cone(const FormClass& tau, const std::optional<FormClass>& k_opt,
                    const std::optional<Integer>& degree_bound) {
  const Model& m = tau.model();
  FormClass k = resolve_k(m, k_opt);
  ConeVerdict v{ConeStatus::Yes, std::nullopt, {}, std::nullopt, m.is_ruled()};
  if (form_square(tau) <= 0) {
    v.status = ConeStatus::No;
    v.reason = "square not positive";
    return v;
  }
  std::optional<HomClass> worst;
  Rational worst_area;
  auto consider = [&](const HomClass& e) {
    Rational area = form_pairing(tau, e);
    if (area <= 0 && (!worst || area < worst_area)) {
      worst = e;
      worst_area = area;
    }
  };
  ExceptionalSet set{m, k, {}, true, 0};
  if (m.is_rational() && m.n() >= 9) {
    std::vector<bool> delta;
    if (!is_k_delta(k, &delta)) throw LatticeError("canonical class must be K_0 or a K_delta sign variant");
    Integer bound = degree_bound ? *degree_bound : default_degree_bound(tau);
    set.complete = false;
    set.degree_bound = bound;
    // tau(delta(E)) = delta(tau)(E); over permutations of E the minimum pairs
    // the ascending E-part with the ascending coefficients of delta(tau).
    FormClass t = tau;
    for (std::size_t i = 0; i < delta.size(); ++i)
      if (delta[i]) t[i + 1] = -t[i + 1];
    std::vector<std::size_t> order(static_cast<std::size_t>(m.n()));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i + 1;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) { return t[p] < t[q]; });
    for (const auto& x : sorted_exceptional(m, to_long_bound(bound))) {
      HomClass e = HomClass::zero(m);
      e[0] = x[0];
      for (std::size_t i = 0; i < order.size(); ++i) e[order[i]] = x[i + 1];
      consider(apply_delta(e, delta));
    }
  } else {
    set = enumerate_exceptional(m, k);
    for (const auto& e : set.classes) consider(e);
  }
  if (worst) {
    v.status = ConeStatus::No;
    v.witness = *worst;
    v.reason = "nonpositive area " + worst_area.get_str() + " on exceptional class " + print_class(*worst);
    return v;
  }
  if (!set.complete) {
    v.status = ConeStatus::YesUpToBound;
    v.bound = set.degree_bound;
  }
  return v;
}

int euler_characteristic(const Model& m) {
  if (m.is_rational()) return 3 + m.n();
  return 4 - 4 * m.genus() + m.n();
}

LagrangianVerdict is_lagrangian_spherical(const HomClass& xi, const FormClass& tau, const std::optional<FormClass>& k_opt,
                                          bool accept_bounded, const std::optional<Integer>& degree_bound) {
  const Model& m = xi.model();
  require_same_model(m, tau.model());
  FormClass k = resolve_k(m, k_opt);
  LagrangianVerdict v{false, {}, std::nullopt, std::nullopt, {ConeStatus::No, std::nullopt, {}, std::nullopt, false}};
  v.characteristic = is_characteristic(xi);
  v.uniqueness_applicable = !(v.characteristic && euler_characteristic(m) == 6);

  if (!is_k_null_spherical(xi, k)) {
    if (square(xi) != -2)
      v.reason = "not K-null spherical: square is " + square(xi).get_str() + ", not -2";
    else if (form_pairing(k, xi) != 0)
      v.reason = "not K-null spherical: K-pairing is " + form_pairing(k, xi).get_str() + ", not 0";
    else if (m.is_rational())
      v.reason = "not K-null spherical: reduction ends in " + to_string(cremona_reduce(xi).kind);
    else
      v.reason = "not K-null spherical: not in the ruled null list";
    return v;
  }
  if (form_pairing(tau, xi) != 0) {
    v.reason = "nonzero area";
    return v;
  }
  v.cone = in_cone(tau, k, degree_bound);
  if (v.cone.status == ConeStatus::No) throw LatticeError("invalid form: not in the symplectic cone (" + v.cone.reason + ")");
  if (v.cone.status == ConeStatus::YesUpToBound && !accept_bounded)
    throw LatticeError("invalid form: cone membership only verified up to degree " + v.cone.bound->get_str());

  v.yes = true;
  if (m.is_rational()) {
    NormalForm nf = cremona_reduce(xi);
    HomClass rep = nf.representative;
    if (nf.kind == NormalFormKind::Ternary && m.n() >= 4) {
      // H - E_i - E_j - E_k goes to E_l - E_k under R(H - E_i - E_j - E_l).
      std::vector<int> used, unused;
      for (int i = 1; i <= m.n(); ++i) (rep[m.e_slot(i)] != 0 ? used : unused).push_back(i);
      HomClass g = ternary_root(m, used[0], used[1], unused[0]);
      v.binary_class = reflect(g, rep);
    } else if (nf.kind == NormalFormKind::Binary) {
      v.binary_class = rep;
    }
    v.certificate = std::move(nf);
  }
  return v;
}

InflationVerdict inflation_check(const HomClass& a, const FormClass& tau, const std::optional<FormClass>& k_opt,
                                 bool accept_bounded, const std::optional<Integer>& degree_bound) {
  const Model& m = a.model();
  require_same_model(m, tau.model());
  FormClass k = resolve_k(m, k_opt);
  if (square(a) <= 0) return {false, "A^2 > 0"};
  if (form_pairing(tau, a) <= 0) return {false, "tau(A) > 0"};
  FormClass shifted = as_form(a) - k;
  if (form_dot(tau, shifted) <= 0) return {false, "tau(A - PD(K)) > 0"};
  if (form_square(shifted) < 0) return {false, "(A - PD(K))^2 >= 0"};

  std::optional<Integer> bound = degree_bound;
  if (m.is_rational() && m.n() >= 9 && !bound) bound = default_degree_bound(tau);
  ExceptionalSet set = enumerate_exceptional(m, k, bound);
  if (!set.complete && !accept_bounded)
    throw LatticeError("incomplete exceptional set (n >= 9); pass an explicit override to accept a bounded check");
  ConeVerdict cone = in_cone(tau, k, bound);
  if (cone.status == ConeStatus::No) throw LatticeError("invalid form: not in the symplectic cone (" + cone.reason + ")");
  for (const auto& e : set.classes)
    if (pairing(a, e) < 0) return {false, "A.E >= 0 fails for E = " + print_class(e)};
  return {true, {}};
}

bool inflation_admissible(const HomClass& a, const FormClass& tau, const std::optional<FormClass>& k,
                          bool accept_bounded, const std::optional<Integer>& degree_bound) {
  return inflation_check(a, tau, k, accept_bounded, degree_bound).admissible;
}

}  // namespace h2lat
