#include "h2lat/oracle.hpp"

#include "h2lat/cone.hpp"
#include "h2lat/parser.hpp"
#include "h2lat/reduction.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <set>

namespace h2lat {

std::string to_string(Predicate p) {
  switch (p) {
    case Predicate::Exceptional: return "exceptional";
    case Predicate::KNull: return "knull";
    case Predicate::Characteristic: return "characteristic";
  }
  return "?";
}

Predicate predicate_from_string(const std::string& s) {
  if (s == "exceptional") return Predicate::Exceptional;
  if (s == "knull") return Predicate::KNull;
  if (s == "characteristic") return Predicate::Characteristic;
  throw LatticeError("unknown predicate: " + s);
}

namespace {

Integer k0_pairing(const HomClass& x) { return pairing(canonical_k0(x.model()), x); }

struct Search {
  const EnumQuery& q;
  std::atomic<std::size_t>& work;
  int n;
  long b;
  std::optional<long> sq_target;   // sum of c_i^2
  std::optional<long> sum_target;  // sum of c_i
  std::vector<long> c;
  std::vector<std::vector<long>> found;

  void run(int slot, long sq_left, long sum_left) {
    if (++work > kWorkLimit && !q.allow_large) throw LatticeError("query exceeds the enumeration work limit");
    int rest = n - slot;
    if (rest == 0) {
      if ((!sq_target || sq_left == 0) && (!sum_target || sum_left == 0)) found.push_back(c);
      return;
    }
    if (sq_target && sum_target) {
      if (sum_left * sum_left > static_cast<long>(rest) * sq_left) return;
      if (((sum_left - sq_left) % 2) != 0) return;
    }
    if (sum_target && std::labs(sum_left) > rest * b) return;
    long lo = -b, hi = b;
    if (sq_target) {
      long r = static_cast<long>(std::sqrt(static_cast<double>(sq_left)));
      while (r * r > sq_left) --r;
      while ((r + 1) * (r + 1) <= sq_left) ++r;
      lo = std::max(lo, -r);
      hi = std::min(hi, r);
    }
    for (long v = lo; v <= hi; ++v) {
      c[static_cast<std::size_t>(slot)] = v;
      run(slot + 1, sq_left - v * v, sum_left - v);
    }
  }
};

bool passes(const HomClass& x, Predicate p) {
  FormClass k0 = as_form(canonical_k0(x.model()));
  switch (p) {
    case Predicate::Exceptional: return is_exceptional(x, k0);
    case Predicate::KNull: return is_k_null_spherical(x, k0);
    case Predicate::Characteristic: return is_characteristic(x);
  }
  return false;
}

}  // namespace

std::vector<HomClass> enumerate(const EnumQuery& q) {
  if (q.coeff_bound < 1) throw LatticeError("coeff_bound must be positive");
  if (q.coeff_bound > kCoeffSafetyLimit && !q.allow_large)
    throw LatticeError("coefficient bound exceeds safety limit (" + std::to_string(kCoeffSafetyLimit) + ")");
  const Model& m = q.model;
  const long b = q.coeff_bound;
  if (!q.square && !q.allow_large) {
    double box = std::pow(2.0 * b + 1.0, static_cast<double>(m.rank()));
    if (box > static_cast<double>(kWorkLimit)) throw LatticeError("query space too large without a square constraint");
  }
  if (q.square && !q.square->fits_slong_p()) return {};
  if (q.k_pairing && !q.k_pairing->fits_slong_p()) return {};

  // Shards: one per leading coefficient (H, or the pair T, F).
  std::vector<std::pair<long, long>> leads;
  for (long a = -b; a <= b; ++a) {
    if (m.is_rational())
      leads.emplace_back(a, 0);
    else
      for (long f = -b; f <= b; ++f) leads.emplace_back(a, f);
  }

  std::atomic<std::size_t> work{0};
  auto shard = [&](long t, long f) {
    Search s{q, work, m.n(), b, std::nullopt, std::nullopt, std::vector<long>(static_cast<std::size_t>(m.n())), {}};
    long lead_sq = m.is_rational() ? t * t : 2 * t * f;
    if (q.square) {
      long sq = lead_sq - q.square->get_si();
      if (sq < 0) return std::vector<HomClass>{};
      s.sq_target = sq;
    }
    if (q.k_pairing) {
      long k = q.k_pairing->get_si();
      s.sum_target = m.is_rational() ? -3 * t - k : -2 * f + (2L * m.genus() - 2) * t - k;
    }
    s.run(0, s.sq_target.value_or(0), s.sum_target.value_or(0));
    std::vector<HomClass> out;
    for (const auto& cs : s.found) {
      HomClass x = HomClass::zero(m);
      x[0] = t;
      if (m.is_ruled()) x[1] = f;
      for (int i = 1; i <= m.n(); ++i) x[m.e_slot(i)] = cs[static_cast<std::size_t>(i - 1)];
      if (!q.predicate || passes(x, *q.predicate)) out.push_back(std::move(x));
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  std::vector<std::future<std::vector<HomClass>>> parts;
  for (auto [t, f] : leads) parts.push_back(std::async(std::launch::async, shard, t, f));
  std::vector<HomClass> all;
  for (auto& p : parts) {
    auto v = p.get();
    std::vector<HomClass> merged;
    merged.reserve(all.size() + v.size());
    std::merge(all.begin(), all.end(), v.begin(), v.end(), std::back_inserter(merged));
    all = std::move(merged);
  }
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

namespace {

HomClass canonical(HomClass x) {
  const Model& m = x.model();
  std::vector<Integer> e(x.coeffs().begin() + static_cast<long>(m.first_e_slot()), x.coeffs().end());
  std::sort(e.begin(), e.end());
  for (std::size_t i = 0; i < e.size(); ++i) x[m.first_e_slot() + i] = e[i];
  return x;
}

// Counts of E-coefficient values in a canonical class.
bool e_pattern(const HomClass& x, int minus_ones, int ones) {
  const Model& m = x.model();
  int mo = 0, po = 0;
  for (std::size_t i = m.first_e_slot(); i < x.size(); ++i) {
    if (x[i] == -1)
      ++mo;
    else if (x[i] == 1)
      ++po;
    else if (x[i] != 0)
      return false;
  }
  return mo == minus_ones && po == ones;
}

bool is_target(const HomClass& x, OrbitTarget t) {
  const Model& m = x.model();
  if (m.is_rational()) {
    const Integer& a = x[0];
    // H - E_i - E_j is in the orbit of some E_k once n >= 3; at n = 2 it is its own orbit.
    if (t == OrbitTarget::Exceptional) return (a == 0 && e_pattern(x, 0, 1)) || (a == 1 && e_pattern(x, 2, 0));
    if (a == 0) return e_pattern(x, 1, 1);
    if (a == 1) return e_pattern(x, 3, 0);
    if (a == -1) return e_pattern(x, 0, 3);
    return false;
  }
  if (x[0] != 0) return false;
  const Integer& f = x[1];
  if (t == OrbitTarget::Exceptional) return (f == 0 && e_pattern(x, 0, 1)) || (f == 1 && e_pattern(x, 1, 0));
  if (f == 0) return e_pattern(x, 1, 1);
  if (f == 1) return e_pattern(x, 2, 0);
  if (f == -1) return e_pattern(x, 0, 2);
  return false;
}

std::vector<HomClass> moves(const HomClass& x) {
  const Model& m = x.model();
  const int n = m.n();
  std::vector<HomClass> out;
  std::set<std::vector<Integer>> tried;
  auto e = [&](int i) -> const Integer& { return x[m.e_slot(i)]; };
  if (m.is_rational()) {
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k) {
          if (!tried.insert({e(i), e(j), e(k)}).second) continue;
          out.push_back(canonical(reflect(ternary_root(m, i, j, k), x)));
        }
  } else {
    HomClass fib = basis_f(m);
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        if (!tried.insert({e(i), e(j)}).second) continue;
        out.push_back(canonical(reflect(fib - basis_e(m, i) - basis_e(m, j), x)));
      }
  }
  return out;
}

}  // namespace

OrbitResult orbit_search(const HomClass& x, OrbitTarget target, const OrbitOptions& opts) {
  const int depth_limit = opts.max_depth < 0 ? 2 * x.model().n() : opts.max_depth;
  const std::size_t lead = x.model().is_rational() ? 0 : 1;
  OrbitResult r;
  HomClass start = canonical(x);
  std::set<HomClass> seen{start};
  std::vector<HomClass> frontier{start};
  r.visited = 1;
  if (is_target(start, target)) {
    r.found = true;
    r.hit = start;
    return r;
  }
  for (int d = 1; d <= depth_limit && !frontier.empty(); ++d) {
    std::vector<HomClass> next;
    for (const auto& s : frontier) {
      if (opts.leading_cap > 0 && abs(s[lead]) > opts.leading_cap) {
        r.truncated = true;
        continue;
      }
      for (auto& y : moves(s)) {
        if (!seen.insert(y).second) continue;
        ++r.visited;
        if (is_target(y, target)) {
          r.found = true;
          r.hit = y;
          r.depth = d;
          return r;
        }
        if (seen.size() >= opts.max_states) {
          r.truncated = true;
          r.depth = d;
          return r;
        }
        next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
    r.depth = d;
  }
  return r;
}

bool characteristic_by_parity_scan(const HomClass& xi) {
  const Model& m = xi.model();
  const std::size_t r = m.rank();
  if (r > 24) throw LatticeError("parity scan limited to rank 24");
  for (unsigned long mask = 0; mask < (1UL << r); ++mask) {
    HomClass v = HomClass::zero(m);
    for (std::size_t i = 0; i < r; ++i)
      if (mask & (1UL << i)) v[i] = 1;
    Integer diff = pairing(xi, v) - square(v);
    if (mpz_odd_p(diff.get_mpz_t())) return false;
  }
  return true;
}

CrosscheckReport crosscheck(const EnumQuery& q, const OrbitOptions& orbit) {
  CrosscheckReport rep;
  rep.query = q;
  std::optional<Predicate> p = q.predicate;
  if (!p && q.square && q.k_pairing) {
    if (*q.square == -1 && *q.k_pairing == -1) p = Predicate::Exceptional;
    if (*q.square == -2 && *q.k_pairing == 0) p = Predicate::KNull;
  }
  rep.mode = p ? to_string(*p) : "certificate";

  EnumQuery numeric = q;
  numeric.predicate.reset();
  rep.classes = enumerate(numeric);
  const Model& m = q.model;
  FormClass k0 = as_form(canonical_k0(m));

  std::optional<std::vector<HomClass>> known;
  if (p == Predicate::Exceptional && m.is_rational() && m.n() <= 8) known = enumerate_exceptional(m).classes;

  auto compare = [&](const HomClass& x, const std::string& check, bool lib, bool ora, const std::string& detail) {
    if (lib != ora) rep.disagreements.push_back({x, check, lib, ora, detail});
    return lib == ora;
  };

  for (const auto& x : rep.classes) {
    ++rep.checked;
    bool agree = true;
    if (p == Predicate::Exceptional || p == Predicate::KNull) {
      bool exc = p == Predicate::Exceptional;
      Integer sq = square(x), kx = k0_pairing(x);
      bool numeric_ok = exc ? (sq == -1 && kx == -1) : (sq == -2 && kx == 0);
      OrbitResult o;
      if (numeric_ok) o = orbit_search(x, exc ? OrbitTarget::Exceptional : OrbitTarget::NullSpherical, orbit);
      bool ora = numeric_ok && o.found;
      bool lib = exc ? is_exceptional(x, k0) : is_k_null_spherical(x, k0);
      std::string detail = "orbit depth " + std::to_string(o.depth) + ", " + std::to_string(o.visited) + " states" +
                           (o.truncated ? ", truncated" : "");
      agree = compare(x, exc ? "exceptional" : "knull", lib, ora, detail) && agree;
      if (known) {
        bool listed = std::binary_search(known->begin(), known->end(), x);
        agree = compare(x, "enumerate_exceptional", listed, ora, detail) && agree;
      }
    } else if (p == Predicate::Characteristic) {
      agree = compare(x, "characteristic", is_characteristic(x), characteristic_by_parity_scan(x), "parity scan");
    } else {
      if (m.rank() <= 24)
        agree = compare(x, "characteristic", is_characteristic(x), characteristic_by_parity_scan(x), "parity scan");
      if (m.is_rational()) {
        NormalForm nf = cremona_reduce(x);
        HomClass expect = nf.sign_flipped ? -nf.representative : nf.representative;
        bool sound = nf.word.apply(x) == expect;
        for (const auto& g : nf.word.generators())
          sound = sound && square(g) == -2 && pairing(canonical_k0(m), g) == 0;
        agree = compare(x, "reduction certificate", true, sound, to_string(nf.kind)) && agree;
      }
    }
    if (agree) ++rep.confirmed;
  }
  return rep;
}

nlohmann::json to_json(const CrosscheckReport& r) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : r.classes) classes.push_back(print_class(c));
  nlohmann::json dis = nlohmann::json::array();
  for (const auto& d : r.disagreements)
    dis.push_back({{"class", to_json(d.cls)},
                   {"text", print_class(d.cls)},
                   {"check", d.check},
                   {"library", d.library},
                   {"oracle", d.oracle},
                   {"detail", d.detail}});
  nlohmann::json q = {{"model", model_to_json(r.query.model)}, {"coeff_bound", r.query.coeff_bound}};
  if (r.query.square) q["square"] = integer_to_json(*r.query.square);
  if (r.query.k_pairing) q["k_pairing"] = integer_to_json(*r.query.k_pairing);
  return {{"query", q},
          {"mode", r.mode},
          {"classes", classes},
          {"disagreements", dis},
          {"summary", {{"checked", r.checked}, {"confirmed", r.confirmed}, {"ok", r.ok()}}}};
}

}  // namespace h2lat
