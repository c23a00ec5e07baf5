#include "h2lat/reduction.hpp"

#include <algorithm>
#include <optional>

namespace h2lat {

void ReflectionWord::push(HomClass gamma) {
  require_same_model(model_, gamma.model());
  if (!is_admissible_root(gamma)) throw LatticeError("reflection undefined for this square");
  generators_.push_back(std::move(gamma));
}

void ReflectionWord::append(const ReflectionWord& next) {
  require_same_model(model_, next.model_);
  generators_.insert(generators_.end(), next.generators_.begin(), next.generators_.end());
}

ReflectionWord ReflectionWord::inverse() const {
  ReflectionWord out(model_);
  out.generators_.assign(generators_.rbegin(), generators_.rend());
  return out;
}

HomClass ReflectionWord::apply(const HomClass& x) const {
  HomClass y = x;
  for (const auto& g : generators_) y = reflect(g, y);
  return y;
}

IntMatrix ReflectionWord::matrix() const {
  std::vector<HomClass> cols;
  cols.reserve(model_.rank());
  for (std::size_t j = 0; j < model_.rank(); ++j) cols.push_back(apply(unit(model_, j)));
  return IntMatrix::from_columns(cols);
}

HomClass ternary_root(const Model& m, int i, int j, int k) {
  if (i == j || j == k || i == k) throw LatticeError("ternary root needs distinct indices");
  return basis_h(m) - basis_e(m, i) - basis_e(m, j) - basis_e(m, k);
}

HomClass binary_root(const Model& m, int i, int j) {
  if (i == j) throw LatticeError("binary root needs distinct indices");
  return basis_e(m, i) - basis_e(m, j);
}

std::string to_string(NormalFormKind kind) {
  switch (kind) {
    case NormalFormKind::Zero: return "Zero";
    case NormalFormKind::PlusMinusBasisE: return "PlusMinusBasisE";
    case NormalFormKind::Binary: return "Binary";
    case NormalFormKind::Ternary: return "Ternary";
    case NormalFormKind::ExceptionalEi: return "ExceptionalEi";
    case NormalFormKind::ExceptionalHEiEj: return "ExceptionalHEiEj";
    case NormalFormKind::Reduced: return "Reduced";
    case NormalFormKind::NegativeCoefficient: return "NegativeCoefficient";
    case NormalFormKind::Irreducible: return "Irreducible";
  }
  return "?";
}

Rational eta_k(const HomClass& e, const FormClass& k) {
  Rational v = (form_pairing(k, e) + Rational(square(e))) / 2 + 1;
  v.canonicalize();
  return v;
}

Rational gt_dimension(const HomClass& e, const FormClass& k) {
  Rational v = (Rational(square(e)) - form_pairing(k, e)) / 2;
  v.canonicalize();
  return v;
}

namespace {

void require_rational(const Model& m) {
  if (!m.is_rational()) throw LatticeError("reduced form defined for rational model only");
}

// b_i = -(coefficient of E_i), sorted descending.
std::vector<Integer> sorted_b(const HomClass& xi) {
  std::vector<Integer> b;
  for (std::size_t s = 1; s < xi.size(); ++s) b.push_back(-xi[s]);
  std::sort(b.begin(), b.end(), std::greater<>());
  return b;
}

Integer top3(const std::vector<Integer>& b_sorted, std::size_t from = 0) {
  Integer s = 0;
  for (std::size_t i = from; i < b_sorted.size() && i < from + 3; ++i) s += b_sorted[i];
  return s;
}

struct Terminal {
  NormalFormKind kind;
  bool negate;
};

std::optional<Terminal> match_terminal(const HomClass& x, int nfree) {
  if (x.is_zero()) return Terminal{NormalFormKind::Zero, false};
  std::vector<Integer> vals;
  for (std::size_t s = 1; s < x.size(); ++s)
    if (x[s] != 0) vals.push_back(x[s]);
  const Integer& a = x[0];
  if (a == 0) {
    if (vals.size() == 1 && (vals[0] == 1 || vals[0] == -1))
      return Terminal{NormalFormKind::ExceptionalEi, vals[0] < 0};
    if (vals.size() == 2 && vals[0] + vals[1] == 0 && (vals[0] == 1 || vals[0] == -1))
      return Terminal{NormalFormKind::Binary, false};
    return std::nullopt;
  }
  if (a == 1 || a == -1) {
    int sgn = a > 0 ? 1 : -1;
    for (const auto& v : vals)
      if (v != -sgn) return std::nullopt;
    if (vals.size() == 3) return Terminal{NormalFormKind::Ternary, sgn < 0};
    if (vals.size() == 2 && nfree == 2) return Terminal{NormalFormKind::ExceptionalHEiEj, sgn < 0};
  }
  return std::nullopt;
}

}  // namespace

bool is_reduced(const HomClass& xi) {
  require_rational(xi.model());
  if (xi[0] < 0) return false;
  std::vector<Integer> b = sorted_b(xi);
  if (!b.empty() && b.back() < 0) return false;
  return xi[0] >= top3(b);
}

NormalForm cremona_reduce(const HomClass& xi) { return cremona_reduce_from(xi, 1); }

NormalForm cremona_reduce_from(const HomClass& xi, int first_free) {
  const Model& m = xi.model();
  require_rational(m);
  const int n = m.n();
  if (first_free < 1 || first_free > n + 1) throw LatticeError("first free index out of range");
  for (int j = 1; j < first_free; ++j)
    if (xi[m.e_slot(j)] != 0) throw LatticeError("class has support on a frozen index E" + std::to_string(j));
  const int nfree = n - first_free + 1;

  Integer cap = abs(xi[0]) + n + 4;
  NormalForm nf{NormalFormKind::Irreducible, xi, ReflectionWord(m), false, 0, {}};
  HomClass& x = nf.representative;

  while (true) {
    if (auto t = match_terminal(x, nfree)) {
      if (t->negate) {
        x = -x;
        nf.sign_flipped = !nf.sign_flipped;
      }
      nf.kind = t->kind;
      if (nf.kind == NormalFormKind::ExceptionalEi && nf.sign_flipped) nf.kind = NormalFormKind::PlusMinusBasisE;
      return nf;
    }
    if (x[0] < 0) {
      x = -x;
      nf.sign_flipped = !nf.sign_flipped;
      continue;
    }
    // Selection sort of b descending (E-coefficients ascending) over the free
    // indices, realized by transposition twists R(E_p - E_q).
    for (int p = first_free; p <= n; ++p) {
      int best = p;
      for (int q = p + 1; q <= n; ++q)
        if (x[m.e_slot(q)] < x[m.e_slot(best)]) best = q;
      if (best != p) {
        HomClass g = binary_root(m, p, best);
        x = reflect(g, x);
        nf.word.push(std::move(g));
      }
    }
    Integer defect = x[0];
    bool negative = false;
    for (int k = 0; k < 3 && first_free + k <= n; ++k) defect += x[m.e_slot(first_free + k)];
    for (int p = first_free; p <= n; ++p)
      if (x[m.e_slot(p)] > 0) negative = true;

    if (defect >= 0) {
      nf.kind = negative ? NormalFormKind::NegativeCoefficient : NormalFormKind::Reduced;
      return nf;
    }
    if (nfree < 3) {
      nf.kind = NormalFormKind::Irreducible;
      nf.diagnostic = "no ternary twist available with fewer than three free indices";
      return nf;
    }
    if (nf.ternary_steps >= cap) {
      nf.kind = NormalFormKind::Irreducible;
      nf.diagnostic = "iteration cap of " + cap.get_str() + " ternary steps exceeded";
      return nf;
    }
    HomClass g = ternary_root(m, first_free, first_free + 1, first_free + 2);
    x = reflect(g, x);
    nf.word.push(std::move(g));
    ++nf.ternary_steps;
  }
}

HomClass sign_normalize(const HomClass& xi) {
  require_rational(xi.model());
  HomClass y = xi;
  y[0] = abs(y[0]);
  for (std::size_t s = 1; s < y.size(); ++s) y[s] = -abs(y[s]);
  return y;
}

bool is_k_delta(const FormClass& k, std::vector<bool>* delta) {
  const Model& m = k.model();
  if (!m.is_rational() || k[0] != -3) return false;
  std::vector<bool> d;
  for (std::size_t s = 1; s < k.size(); ++s) {
    if (k[s] == 1)
      d.push_back(false);
    else if (k[s] == -1)
      d.push_back(true);
    else
      return false;
  }
  if (delta) *delta = std::move(d);
  return true;
}

bool is_k0(const FormClass& k) { return k == as_form(canonical_k0(k.model())); }

namespace {

bool in_ruled_exceptional_list(const HomClass& xi) {
  const Model& m = xi.model();
  for (int i = 1; i <= m.n(); ++i) {
    HomClass e = basis_e(m, i);
    if (xi == e || xi == basis_f(m) - e) return true;
  }
  return false;
}

bool in_ruled_null_list(const HomClass& xi) {
  const Model& m = xi.model();
  for (int i = 1; i <= m.n(); ++i)
    for (int j = i + 1; j <= m.n(); ++j) {
      HomClass b = binary_root(m, i, j);
      HomClass t = basis_f(m) - basis_e(m, i) - basis_e(m, j);
      if (xi == b || xi == -b || xi == t || xi == -t) return true;
    }
  return false;
}

}  // namespace

bool is_exceptional(const HomClass& xi, const FormClass& k) {
  require_same_model(xi.model(), k.model());
  if (xi.model().is_ruled()) {
    if (!is_k0(k)) throw LatticeError("ruled exceptional classes are listed for K_0 only; conjugate to K_0 first");
    return in_ruled_exceptional_list(xi);
  }
  if (square(xi) != -1 || form_pairing(k, xi) != -1) return false;
  NormalForm nf = cremona_reduce(sign_normalize(xi));
  return nf.kind == NormalFormKind::ExceptionalEi || nf.kind == NormalFormKind::PlusMinusBasisE ||
         nf.kind == NormalFormKind::ExceptionalHEiEj;
}

bool is_k_null_spherical(const HomClass& xi, const FormClass& k) {
  require_same_model(xi.model(), k.model());
  if (!is_k0(k)) throw LatticeError("canonical class is not K_0; conjugate to K_0 first");
  if (xi.model().is_ruled()) return in_ruled_null_list(xi);
  if (square(xi) != -2 || form_pairing(k, xi) != 0) return false;
  NormalForm nf = cremona_reduce(xi);
  return nf.kind == NormalFormKind::Binary || nf.kind == NormalFormKind::Ternary;
}

EtaBound eta_lower_bound(const HomClass& e) {
  const Model& m = e.model();
  require_rational(m);
  if (e[0] <= 0) throw LatticeError("K_delta family not certified in K_e: H-coefficient must be positive");
  if (m.n() > kEtaSweepMaxN)
    throw LatticeError("n too large for the 2^n sweep (max " + std::to_string(kEtaSweepMaxN) + ")");
  const int n = m.n();
  // Gray-code sweep over delta; s_i = (-1)^{delta_i}, K_delta(e) = -3a - sum s_i c_i.
  std::vector<int> s(static_cast<std::size_t>(n), 1);
  Integer k = -3 * e[0];
  for (int i = 1; i <= n; ++i) k -= e[m.e_slot(i)];
  Integer best = k;
  const unsigned long total = 1UL << n;
  for (unsigned long t = 1; t < total; ++t) {
    int j = __builtin_ctzl(t);
    k += 2 * s[static_cast<std::size_t>(j)] * e[m.e_slot(j + 1)];
    s[static_cast<std::size_t>(j)] = -s[static_cast<std::size_t>(j)];
    if (k > best) best = k;
  }
  Rational eta = (Rational(best) + Rational(square(e))) / 2 + 1;
  eta.canonicalize();
  return {eta, is_reduced(e)};
}

}  // namespace h2lat
