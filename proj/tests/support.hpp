#pragma once

// Test-side oracles. These work on plain machine integers and do not call the
// library's enumeration or reduction code.

#include "h2lat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

// aH + sum c_i E_i.
struct RClass {
  long a = 0;
  std::vector<long> c;
  friend bool operator==(const RClass&, const RClass&) = default;
};

inline long sq(const RClass& x) {
  long s = x.a * x.a;
  for (long v : x.c) s -= v * v;
  return s;
}

inline long k0(const RClass& x) {
  return -3 * x.a - std::accumulate(x.c.begin(), x.c.end(), 0L);
}

inline h2lat::HomClass to_hom(const RClass& x) {
  h2lat::Model m = h2lat::Model::rational(static_cast<int>(x.c.size()));
  h2lat::HomClass h = h2lat::HomClass::zero(m);
  h[0] = x.a;
  for (std::size_t i = 0; i < x.c.size(); ++i) h[i + 1] = x.c[i];
  return h;
}

// All (a, c) with sq = s and K_0-pairing = k. The range of a is scanned
// wide; the E-part uses |c_i| <= sqrt(a^2 - s).
inline std::vector<RClass> solutions(int n, long s, long k, long a_max = 40) {
  std::vector<RClass> out;
  for (long a = -a_max; a <= a_max; ++a) {
    long csq = a * a - s;
    if (csq < 0) continue;
    long csum = -3 * a - k;
    if (csum * csum > static_cast<long>(n) * csq) continue;
    long r = static_cast<long>(std::floor(std::sqrt(static_cast<double>(csq))));
    std::vector<long> c(static_cast<std::size_t>(n));
    std::function<void(int, long, long)> rec = [&](int i, long sql, long suml) {
      if (i == n) {
        if (sql == 0 && suml == 0) out.push_back({a, c});
        return;
      }
      if (suml * suml > static_cast<long>(n - i) * sql) return;
      for (long v = -r; v <= r; ++v) {
        if (v * v > sql) continue;
        c[static_cast<std::size_t>(i)] = v;
        rec(i + 1, sql - v * v, suml - v);
      }
    };
    rec(0, csq, csum);
  }
  return out;
}

// Plain Cremona loop on b_i = -c_i: sort b descending, apply the ternary
// reflection while a < b1 + b2 + b3 and the result keeps a >= 0.
inline RClass cremona(RClass x, int max_steps = 200) {
  for (int step = 0; step < max_steps; ++step) {
    if (x.a < 0) {
      x.a = -x.a;
      for (auto& v : x.c) v = -v;
    }
    std::sort(x.c.begin(), x.c.end());  // c ascending = b descending
    if (x.c.size() < 3) return x;
    long d = x.a + x.c[0] + x.c[1] + x.c[2];
    // a = 0 is terminal; a + d < 0 only happens on H - E1 - E2 - E3.
    if (d >= 0 || x.a == 0 || x.a + d < 0) return x;
    x.a += d;
    for (int i = 0; i < 3; ++i) x.c[static_cast<std::size_t>(i)] -= d;
  }
  return x;
}

inline int count_value(const RClass& x, long v) {
  return static_cast<int>(std::count(x.c.begin(), x.c.end(), v));
}
inline bool only_small(const RClass& x, int ones, int minus_ones) {
  return count_value(x, 1) == ones && count_value(x, -1) == minus_ones &&
         count_value(x, 0) == static_cast<int>(x.c.size()) - ones - minus_ones;
}

// Up to sign the Cremona loop ends at E_i, E_i - E_j or H - E_i - E_j - E_k
// for these orbits; H - E_i - E_j appears only when n = 2.
inline bool reaches_exceptional(const RClass& x) {
  RClass y = cremona(x);
  if (y.a == 0) return only_small(y, 1, 0);
  if (y.c.size() == 2 && y.a == 1) return only_small(y, 0, 2);
  return false;
}

inline bool reaches_root(const RClass& x) {
  RClass y = cremona(x);
  if (y.a == 0) return only_small(y, 1, 1);
  if (y.a == 1) return only_small(y, 0, 3);
  return false;
}

inline std::vector<RClass> exceptional_classes(int n) {
  std::vector<RClass> out;
  for (auto& x : solutions(n, -1, -1))
    if (reaches_exceptional(x)) out.push_back(x);
  return out;
}

inline std::vector<RClass> null_classes(int n) {
  std::vector<RClass> out;
  for (auto& x : solutions(n, -2, 0))
    if (reaches_root(x)) out.push_back(x);
  return out;
}

inline h2lat::HomClass random_class(const h2lat::Model& m, std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  h2lat::HomClass x = h2lat::HomClass::zero(m);
  for (std::size_t i = 0; i < m.rank(); ++i) x[i] = d(rng);
  return x;
}

}  // namespace oracle
