#include "h2lat/twist.hpp"

#include "h2lat/cone.hpp"
#include "h2lat/parser.hpp"

#include <algorithm>

namespace h2lat {

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::string s;
  for (const auto& v : violations) s += (s.empty() ? "" : "; ") + v;
  return s;
}

ValidationReport validate(const IsometryMatrix& m, const FormClass& k, const std::optional<FormClass>& alpha) {
  const Model& model = m.model();
  require_same_model(model, k.model());
  if (alpha) require_same_model(model, alpha->model());
  ValidationReport r;
  std::vector<HomClass> cols;
  for (std::size_t j = 0; j < model.rank(); ++j) cols.push_back(m.column(j));

  bool gram_ok = true;
  for (std::size_t i = 0; i < model.rank() && gram_ok; ++i)
    for (std::size_t j = i; j < model.rank(); ++j)
      if (pairing(cols[i], cols[j]) != model.gram(i, j)) {
        gram_ok = false;
        break;
      }
  if (!gram_ok) r.violations.push_back("gram not preserved");
  if (!(m.apply(k) == k)) r.violations.push_back("K not preserved");
  if (alpha) {
    for (std::size_t j = 0; j < model.rank(); ++j)
      if (form_pairing(*alpha, cols[j]) != form_pairing(*alpha, unit(model, j))) {
        r.violations.push_back("alpha not preserved");
        break;
      }
  }
  if (model.is_ruled()) {
    HomClass f = basis_f(model);
    HomClass image = m.apply(f);
    if (image == -f)
      r.violations.push_back("fiber class reversed (F -> -F)");
    else if (!(image == f))
      r.violations.push_back("fiber class not preserved up to sign");
  }
  return r;
}

namespace {

// C <- R(gamma) C.
void left_reflect(IntMatrix& c, const HomClass& gamma) {
  std::vector<HomClass> cols;
  cols.reserve(c.dim());
  for (std::size_t j = 0; j < c.dim(); ++j) cols.push_back(reflect(gamma, c.column(j)));
  c = IntMatrix::from_columns(cols);
}

void left_apply(IntMatrix& c, const ReflectionWord& w) {
  for (const auto& g : w.generators()) left_reflect(c, g);
}

int basis_e_index(const HomClass& x) {
  const Model& m = x.model();
  for (int i = 1; i <= m.n(); ++i)
    if (x == basis_e(m, i)) return i;
  return 0;
}

void require_valid(const ValidationReport& r, const char* what) {
  if (!r.ok()) throw DecompositionError(std::string(what) + ": " + r.summary());
}

void verify_product(const ReflectionWord& w, const IntMatrix& m) {
  if (!(w.matrix() == m)) throw DecompositionError("internal: word product does not reproduce the matrix");
}

// Brings C(E_{n-1}), C(E_n) back to E_{n-1}, E_n once C fixes H, E_1..E_{n-2}
// up to a possible swap of the last two.
void close_last_two(IntMatrix& c, ReflectionWord& f, const FormClass* alpha) {
  const Model& m = c.model();
  const int n = m.n();
  if (n >= 2) {
    HomClass a = c.column(m.e_slot(n - 1));
    HomClass b = c.column(m.e_slot(n));
    if (a == basis_e(m, n) && b == basis_e(m, n - 1)) {
      HomClass g = binary_root(m, n, n - 1);
      if (alpha && form_pairing(*alpha, g) != 0) throw DecompositionError("residual swap is not area-neutral");
      left_reflect(c, g);
      f.push(g);
    }
  }
  if (!c.is_identity()) throw DecompositionError("residual not resolvable: matrix is not generated by K_0-twists");
}

}  // namespace

ReflectionWord decompose_k(const IsometryMatrix& m) {
  const Model& model = m.model();
  if (!model.is_rational()) throw LatticeError("decompose_k expects the rational model");
  FormClass k0 = as_form(canonical_k0(model));
  require_valid(validate(m, k0), "matrix does not fix K_0");

  const int n = model.n();
  IntMatrix c = m;
  ReflectionWord f(model);  // f.matrix() * m == identity at the end
  for (int i = 1; i <= n - 2; ++i) {
    HomClass x = c.column(model.e_slot(i));
    NormalForm nf = cremona_reduce_from(x, i);
    if (nf.kind != NormalFormKind::ExceptionalEi)
      throw DecompositionError("residual not resolvable: image of E" + std::to_string(i) + " reduced to " +
                               to_string(nf.kind));
    left_apply(c, nf.word);
    f.append(nf.word);
    int k = basis_e_index(nf.representative);
    if (k != i) {
      HomClass g = binary_root(model, i, k);
      left_reflect(c, g);
      f.push(g);
    }
  }
  close_last_two(c, f, nullptr);
  ReflectionWord w = f.inverse();
  verify_product(w, m);
  return w;
}

namespace {

// Exceptional classes E'_1..E'_{n-2}: each of minimal alpha-area among those
// orthogonal to the earlier ones; ties go to the lexicographically smallest
// coefficient vector.
std::vector<HomClass> minimal_area_frame(const ExceptionalSet& set, const FormClass& alpha) {
  const Model& m = alpha.model();
  std::vector<HomClass> frame;
  for (int i = 1; i <= m.n() - 2; ++i) {
    const HomClass* best = nullptr;
    Rational best_area;
    for (const auto& e : set.classes) {
      bool orth = true;
      for (const auto& prev : frame)
        if (pairing(e, prev) != 0) {
          orth = false;
          break;
        }
      if (!orth) continue;
      Rational area = form_pairing(alpha, e);
      if (!best || area < best_area || (area == best_area && e < *best)) {
        best = &e;
        best_area = area;
      }
    }
    if (!best) throw DecompositionError("alpha-minimality basis construction failed");
    frame.push_back(*best);
  }
  return frame;
}

}  // namespace

ReflectionWord decompose_k_alpha(const IsometryMatrix& m, const FormClass& alpha, const AlphaOptions& opts) {
  const Model& model = m.model();
  if (!model.is_rational()) throw LatticeError("decompose_k_alpha expects the rational model");
  FormClass k0 = as_form(canonical_k0(model));
  require_valid(validate(m, k0, alpha), "matrix not in D_{K_0,alpha}");
  const int n = model.n();

  ConeVerdict cone = in_cone(alpha, k0, opts.degree_bound);
  if (cone.status == ConeStatus::No) throw LatticeError("alpha not in the symplectic cone: " + cone.reason);
  std::optional<Integer> bound = opts.degree_bound;
  if (n >= 9 && !bound) bound = default_degree_bound(alpha);
  ExceptionalSet set = enumerate_exceptional(model, k0, bound);
  if (!set.complete && !opts.accept_bounded)
    throw DecompositionError("alpha-minimality basis construction failed: exceptional set incomplete for n >= 9");

  // psi: K_0-twists sending the minimal-area frame to E_1..E_{n-2}.
  std::vector<HomClass> frame = minimal_area_frame(set, alpha);
  ReflectionWord psi(model);
  for (int i = 1; i <= n - 2; ++i) {
    HomClass x = psi.apply(frame[static_cast<std::size_t>(i - 1)]);
    NormalForm nf = cremona_reduce_from(x, i);
    if (nf.kind != NormalFormKind::ExceptionalEi) throw DecompositionError("alpha-minimality basis construction failed");
    psi.append(nf.word);
    int k = basis_e_index(nf.representative);
    if (k != i) psi.push(binary_root(model, i, k));
  }
  IntMatrix psi_m = psi.matrix();
  IntMatrix psi_inv_m = psi.inverse().matrix();
  // In the frame transported by psi the area class is psi(alpha) and the
  // matrix is psi m psi^{-1}.
  FormClass alpha_t = psi_m.apply(alpha);
  IntMatrix c = psi_m * m * psi_inv_m;

  ReflectionWord f(model);
  for (int i = 1; i <= n - 2; ++i) {
    int guard = 0;
    while (true) {
      HomClass x = c.column(model.e_slot(i));
      int k = basis_e_index(x);
      if (k >= i) {
        if (k != i) {
          HomClass g = binary_root(model, i, k);
          if (form_pairing(alpha_t, g) != 0) throw DecompositionError("internal: closing transposition not area-neutral");
          left_reflect(c, g);
          f.push(g);
        }
        break;
      }
      if (x[0] <= 0 || ++guard > 4 * (n + 4) + Integer(abs(x[0])).get_si())
        throw DecompositionError("residual not resolvable: image of E" + std::to_string(i) + " is " + print_class(x));
      // Three free indices with the largest b = -coefficient; ties to the smaller index.
      std::vector<int> idx;
      for (int j = i; j <= n; ++j) idx.push_back(j);
      std::stable_sort(idx.begin(), idx.end(),
                       [&](int p, int q) { return x[model.e_slot(p)] < x[model.e_slot(q)]; });
      HomClass g = ternary_root(model, idx[0], idx[1], idx[2]);
      if (pairing(g, x) >= 0) throw DecompositionError("residual not resolvable: reduction stalled at " + print_class(x));
      if (form_pairing(alpha_t, g) != 0)
        throw DecompositionError("internal: ternary twist " + print_class(g) + " is not area-neutral");
      left_reflect(c, g);
      f.push(g);
    }
  }
  close_last_two(c, f, &alpha_t);

  // f psi m psi^{-1} = id, so m = psi^{-1} f^{-1} psi = prod R(psi^{-1} gamma).
  ReflectionWord psi_inv = psi.inverse();
  ReflectionWord f_inv = f.inverse();
  ReflectionWord w(model);
  for (const auto& g : f_inv.generators()) w.push(psi_inv.apply(g));
  for (const auto& g : w.generators())
    if (square(g) != -2 || form_pairing(k0, g) != 0 || form_pairing(alpha, g) != 0)
      throw DecompositionError("internal: generator " + print_class(g) + " is not a (K_0, alpha)-twist");
  verify_product(w, m);
  return w;
}

FormClass balanced_ruled_form(const Model& m) {
  if (!m.is_ruled()) throw LatticeError("balanced form is defined for the ruled model");
  FormClass a = FormClass::zero(m);
  a[0] = 2;            // alpha(F)
  a[1] = m.n() + 1;    // alpha(T)
  for (int i = 1; i <= m.n(); ++i) a[m.e_slot(i)] = -1;  // alpha(E_i) = 1
  return a;
}

ReflectionWord decompose_ruled(const IsometryMatrix& m, const std::optional<FormClass>& alpha_opt) {
  const Model& model = m.model();
  if (!model.is_ruled()) throw LatticeError("decompose_ruled expects the ruled model");
  FormClass alpha = alpha_opt ? *alpha_opt : balanced_ruled_form(model);
  FormClass k0 = as_form(canonical_k0(model));
  require_valid(validate(m, k0, alpha), "matrix not in D_{K_0,alpha}");
  ConeVerdict cone = in_cone(alpha, k0);
  if (cone.status == ConeStatus::No) throw LatticeError("alpha not in the symplectic cone: " + cone.reason);
  const int n = model.n();
  if (n == 0) {
    if (!m.is_identity()) throw DecompositionError("no twists available");
    return ReflectionWord(model);
  }

  const HomClass fiber = basis_f(model);
  IntMatrix c = m;
  ReflectionWord f(model);
  std::vector<int> remaining;
  for (int i = 1; i <= n; ++i) remaining.push_back(i);

  auto apply_twist = [&](const HomClass& g) {
    if (form_pairing(alpha, g) != 0) throw DecompositionError("internal: twist " + print_class(g) + " is not area-neutral");
    left_reflect(c, g);
    f.push(g);
  };

  while (!remaining.empty()) {
    // Exceptional class of minimal area among the remaining indices.
    std::optional<HomClass> e;
    int e_index = 0;
    Rational e_area;
    for (int i : remaining)
      for (const HomClass& cand : {basis_e(model, i), fiber - basis_e(model, i)}) {
        Rational area = form_pairing(alpha, cand);
        if (!e || area < e_area || (area == e_area && cand < *e)) {
          e = cand;
          e_index = i;
          e_area = area;
        }
      }
    HomClass image = c.apply(*e);
    if (!(image == *e)) {
      if (pairing(image, *e) == 0) {
        apply_twist(*e - image);
      } else if (image == fiber - *e) {
        int other = 0;
        for (int j : remaining)
          if (j != e_index) {
            other = j;
            break;
          }
        if (other == 0) throw DecompositionError("residual not resolvable: fiber flip with a single exceptional pair");
        HomClass e2 = basis_e(model, other);
        apply_twist(e2 - *e);
        apply_twist(fiber - e2 - *e);
      } else {
        throw DecompositionError("residual not resolvable: exceptional class sent to " + print_class(image));
      }
    }
    if (!(c.apply(*e) == *e)) throw DecompositionError("internal: exceptional class not fixed");
    remaining.erase(std::find(remaining.begin(), remaining.end(), e_index));
  }
  if (!c.is_identity()) throw DecompositionError("residual not resolvable: matrix is not generated by K_0-twists");
  ReflectionWord w = f.inverse();
  verify_product(w, m);
  return w;
}

std::vector<HomClass> twist_generators(const Model& m, const std::optional<FormClass>& alpha) {
  if (m.is_rational() && m.n() > 8) throw LatticeError("generator list is finite only for n <= 8");
  ClassSet all = enumerate_null_spherical(m);
  std::vector<HomClass> out;
  for (const auto& g : all.classes) {
    if (!(-g < g)) continue;  // one representative per +-pair
    if (alpha && form_pairing(*alpha, g) != 0) continue;
    out.push_back(g);
  }
  return out;
}

}  // namespace h2lat
