// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run all criteria
//   acceptance 3 5        run the listed criteria only

#include "h2lat/cone.hpp"
#include "h2lat/oracle.hpp"
#include "h2lat/parser.hpp"
#include "h2lat/reduction.hpp"
#include "h2lat/twist.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

using namespace h2lat;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

Model R(int n) { return Model::rational(n); }
FormClass K0(const Model& m) { return as_form(canonical_k0(m)); }

// 1. Exceptional counts n = 1..8.
Outcome exceptional_counts() {
  const std::size_t expected[] = {1, 3, 6, 10, 16, 27, 56, 240};
  std::ostringstream os;
  bool ok = true;
  for (int n = 1; n <= 8; ++n) {
    ExceptionalSet s = enumerate_exceptional(R(n));
    std::size_t ref = oracle::exceptional_classes(n).size();
    bool good = s.complete && s.classes.size() == expected[n - 1] && ref == expected[n - 1];
    for (const auto& e : s.classes) good = good && square(e) == -1 && pairing(canonical_k0(R(n)), e) == -1;
    ok = ok && good;
    os << s.classes.size() << (n < 8 ? "," : "");
  }
  return {ok, "counts " + os.str()};
}

// 2. K-null spherical counts n = 2..8.
Outcome null_counts() {
  const std::size_t expected[] = {2, 8, 20, 40, 72, 126, 240};
  std::ostringstream os;
  bool ok = true;
  for (int n = 2; n <= 8; ++n) {
    ClassSet s = enumerate_null_spherical(R(n));
    std::size_t passing = 0;
    for (const auto& x : s.classes)
      if (square(x) == -2 && pairing(canonical_k0(R(n)), x) == 0 && is_k_null_spherical(x, K0(R(n)))) ++passing;
    std::size_t ref = oracle::null_classes(n).size();
    ok = ok && passing == expected[n - 2] && s.classes.size() == passing && ref == passing;
    os << passing << (n < 8 ? "," : "");
  }
  return {ok, "counts " + os.str()};
}

// 3. Every null class reduces to Binary/Ternary with a sound word; at n = 3
//    only +-(H - E1 - E2 - E3) end Ternary.
Outcome reduction_totality() {
  bool ok = true;
  std::size_t total = 0;
  std::string why;
  for (int n = 2; n <= 8; ++n) {
    Model m = R(n);
    for (const auto& x : enumerate_null_spherical(m).classes) {
      ++total;
      NormalForm nf = cremona_reduce(x);
      bool terminal = nf.kind == NormalFormKind::Binary || nf.kind == NormalFormKind::Ternary;
      HomClass expect = nf.sign_flipped ? -nf.representative : nf.representative;
      bool sound = nf.word.apply(x) == expect && nf.word.matrix().apply(x) == expect;
      for (const auto& g : nf.word.generators()) sound = sound && square(g) == -2 && pairing(canonical_k0(m), g) == 0;
      if (n == 3) {
        HomClass t = parse_class("H - E1 - E2 - E3", m);
        bool should_be_ternary = x == t || x == -t;
        if (should_be_ternary != (nf.kind == NormalFormKind::Ternary)) {
          ok = false;
          why = " n=3 mismatch at " + print_class(x);
        }
      }
      if (!terminal || !sound) {
        ok = false;
        why = " failed at " + print_class(x);
      }
    }
  }
  return {ok, std::to_string(total) + " classes" + why};
}

// 4. The n = 11 class with a positive E-coefficient.
Outcome non_spherical_certificate() {
  Model m = R(11);
  HomClass x = parse_class("3H + E1 - E2 - E3 - E4 - E5 - E6 - E7 - E8 - E9 - E10 - E11", m);
  bool numeric = square(x) == -2 && pairing(canonical_k0(m), x) == 0;
  NormalForm nf = cremona_reduce(x);
  bool rejected = nf.kind == NormalFormKind::NegativeCoefficient && !is_k_null_spherical(x, K0(m));
  OrbitOptions opts;
  opts.max_depth = 6;
  OrbitResult o = orbit_search(x, OrbitTarget::NullSpherical, opts);
  bool bfs_ok = !o.found && !o.truncated;
  std::ostringstream os;
  os << "kind " << to_string(nf.kind) << ", depth-6 orbit " << o.visited << " states, target "
     << (o.found ? "found" : "not found");
  return {numeric && rejected && bfs_ok, os.str()};
}

ReflectionWord random_word(const std::vector<HomClass>& gens, const Model& m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(0, 12);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  ReflectionWord w(m);
  int l = len(rng);
  for (int i = 0; i < l; ++i) w.push(gens[pick(rng)]);
  return w;
}

bool generators_valid(const ReflectionWord& w, const std::optional<FormClass>& alpha) {
  for (const auto& g : w.generators()) {
    if (square(g) != -2 || pairing(canonical_k0(g.model()), g) != 0) return false;
    if (alpha && form_pairing(*alpha, g) != 0) return false;
  }
  return true;
}

// 5. Round trips for the three decompositions, 1000 words each.
Outcome decomposition_round_trip() {
  std::mt19937_64 rng(20240611);
  int ok_k = 0, ok_a = 0, ok_r = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    Model m = R(2 + t % 7);
    auto gens = twist_generators(m);
    ReflectionWord in = random_word(gens, m, rng);
    IntMatrix mat = in.matrix();
    try {
      ReflectionWord out = decompose_k(mat);
      if (out.matrix() == mat && generators_valid(out, std::nullopt)) ++ok_k;
    } catch (const LatticeError&) {
    }
  }
  for (int t = 0; t < trials; ++t) {
    Model m = R(2 + t % 7);
    FormClass alpha = -K0(m);
    auto gens = twist_generators(m, alpha);
    ReflectionWord in = random_word(gens, m, rng);
    IntMatrix mat = in.matrix();
    try {
      ReflectionWord out = decompose_k_alpha(mat, alpha);
      if (out.matrix() == mat && generators_valid(out, alpha)) ++ok_a;
    } catch (const LatticeError&) {
    }
  }
  for (int t = 0; t < trials; ++t) {
    Model m = Model::ruled(1 + t % 2, 1 + (t / 2) % 4);
    FormClass alpha = balanced_ruled_form(m);
    auto gens = twist_generators(m, alpha);
    IntMatrix mat = IntMatrix::identity(m);
    if (!gens.empty()) mat = random_word(gens, m, rng).matrix();
    try {
      ReflectionWord out = decompose_ruled(mat, alpha);
      if (out.matrix() == mat && generators_valid(out, alpha)) ++ok_r;
    } catch (const LatticeError&) {
    }
  }
  std::ostringstream os;
  os << "K " << ok_k << "/" << trials << ", K-alpha " << ok_a << "/" << trials << ", ruled " << ok_r << "/" << trials;
  return {ok_k == trials && ok_a == trials && ok_r == trials, os.str()};
}

// 6. Lagrangian criterion on random cone-valid forms.
Outcome lagrangian_consistency() {
  std::mt19937_64 rng(606);
  int forms = 0, checks = 0, yes = 0, binary_equal = 0;
  bool ok = true;
  std::string why;
  while (forms < 200) {
    int n = 2 + forms % 5;
    Model m = R(n);
    // Areas drawn from a short list so that equal-area pairs are common.
    std::uniform_int_distribution<int> pick(0, 3);
    const Rational areas[] = {Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(1)};
    FormClass tau = FormClass::zero(m);
    tau[0] = 3;
    for (int i = 1; i <= n; ++i) tau[i] = -areas[pick(rng)];
    if (in_cone(tau).status != ConeStatus::Yes) continue;
    // independent cone check with the plain exceptional list
    bool cone_ref = form_square(tau) > 0;
    for (const auto& e : oracle::exceptional_classes(n))
      if (form_pairing(tau, oracle::to_hom(e)) <= 0) cone_ref = false;
    if (!cone_ref) {
      ok = false;
      why = " cone disagreement at " + print_class(tau);
    }
    ++forms;
    for (const auto& x : enumerate_null_spherical(m).classes) {
      ++checks;
      bool zero = form_pairing(tau, x) == 0;
      LagrangianVerdict v = is_lagrangian_spherical(x, tau);
      if (v.yes != zero) {
        ok = false;
        why = " mismatch at " + print_class(x) + " for " + print_class(tau);
      }
      if (v.yes) {
        ++yes;
        if (x[0] == 0) ++binary_equal;
      }
    }
  }
  std::ostringstream os;
  os << forms << " forms, " << checks << " checks, " << yes << " yes (" << binary_equal << " binary)" << why;
  return {ok && binary_equal > 0, os.str()};
}

// 7. Reflection algebra on random instances.
Outcome reflection_algebra() {
  std::mt19937_64 rng(7);
  const int N = 10000;
  int inv = 0, iso = 0, kfix = 0, chr = 0;
  auto model = [&](int t) { return t % 2 ? R(1 + t % 9) : Model::ruled(1 + t % 3, 1 + t % 5); };
  auto admissible = [&](const Model& m) {
    while (true) {
      HomClass g = oracle::random_class(m, rng, 2);
      if (is_admissible_root(g)) return g;
    }
  };
  for (int t = 0; t < N; ++t) {
    Model m = model(t);
    HomClass g = admissible(m), x = oracle::random_class(m, rng, 9);
    if (reflect(g, reflect(g, x)) == x) ++inv;
  }
  for (int t = 0; t < N; ++t) {
    Model m = model(t);
    HomClass g = admissible(m), x = oracle::random_class(m, rng, 9), y = oracle::random_class(m, rng, 9);
    if (pairing(reflect(g, x), reflect(g, y)) == pairing(x, y)) ++iso;
  }
  for (int t = 0; t < N; ++t) {
    Model m = t % 2 ? R(2 + t % 7) : Model::ruled(1 + t % 3, 2 + t % 4);
    auto gens = twist_generators(m);
    const HomClass& g = gens[static_cast<std::size_t>(t) % gens.size()];
    HomClass k = canonical_k0(g.model());
    if (reflect(g, k) == k) ++kfix;
  }
  for (int t = 0; t < N; ++t) {
    Model m = model(t);
    HomClass g = admissible(m), x = oracle::random_class(m, rng, 5);
    if (t % 3 == 0) x = canonical_k0(m) + 2 * x;  // characteristic inputs too
    if (is_characteristic(reflect(g, x)) == is_characteristic(x)) ++chr;
  }
  std::ostringstream os;
  os << "involution " << inv << ", isometry " << iso << ", K0 " << kfix << ", characteristic " << chr << " of " << N;
  return {inv == N && iso == N && kfix == N && chr == N, os.str()};
}

// 8. parse(print(x)) == x.
Outcome parser_round_trip() {
  std::mt19937_64 rng(8);
  const int N = 10000;
  int good = 0;
  for (int t = 0; t < N; ++t) {
    Model m = t % 2 ? R(t % 15) : Model::ruled(1 + t % 4, t % 9);
    HomClass x = oracle::random_class(m, rng, 1 + t % 100);
    if (t % 97 == 0) x[0] = Integer("-123456789012345678901234567890");
    if (parse_class(print_class(x), m) == x) ++good;
  }
  return {good == N, std::to_string(good) + "/" + std::to_string(N)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const Criterion all[] = {
      {1, "exceptional counts n=1..8", 10, exceptional_counts},
      {2, "K-null spherical counts n=2..8", 30, null_counts},
      {3, "reduction totality", 30, reduction_totality},
      {4, "non-spherical certificate at n=11", 60, non_spherical_certificate},
      {5, "decomposition round trip", 120, decomposition_round_trip},
      {6, "Lagrangian criterion consistency", 60, lagrangian_consistency},
      {7, "reflection algebra", 30, reflection_algebra},
      {8, "parser round trip", 5, parser_round_trip},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::stoi(argv[i]));
  int failures = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = s < c.budget_s;
    bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] criterion %d: %s (%.2fs, budget %.0fs) %s%s\n", pass ? "PASS" : "FAIL", c.id, c.name, s,
                c.budget_s, o.detail.c_str(), in_time ? "" : " [over budget]");
  }
  return failures == 0 ? 0 : 1;
}
