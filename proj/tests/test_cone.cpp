#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "h2lat/cone.hpp"
#include "h2lat/parser.hpp"
#include "support.hpp"

#include <set>

using namespace h2lat;

namespace {

Model R(int n) { return Model::rational(n); }
HomClass C(const char* s, const Model& m) { return parse_class(s, m); }
FormClass F(const char* s, const Model& m) { return parse_form(s, m); }

}  // namespace

TEST_CASE("exceptional enumeration matches the plain oracle") {
  const int expected[] = {1, 3, 6, 10, 16, 27, 56, 240};
  for (int n = 1; n <= 8; ++n) {
    ExceptionalSet s = enumerate_exceptional(R(n));
    CHECK(s.complete);
    auto ref = oracle::exceptional_classes(n);
    CHECK(s.classes.size() == ref.size());
    CHECK(ref.size() == static_cast<std::size_t>(expected[n - 1]));
    std::set<HomClass> lib(s.classes.begin(), s.classes.end());
    for (const auto& x : ref) CHECK(lib.count(oracle::to_hom(x)) == 1);
    for (const auto& e : s.classes) {
      CHECK(square(e) == -1);
      CHECK(pairing(canonical_k0(R(n)), e) == -1);
    }
  }
  CHECK(enumerate_exceptional(R(1)).classes == std::vector<HomClass>{basis_e(R(1), 1)});
}

TEST_CASE("exceptional enumeration, ruled and K_delta") {
  Model ru = Model::ruled(1, 2);
  ExceptionalSet s = enumerate_exceptional(ru);
  std::set<HomClass> got(s.classes.begin(), s.classes.end());
  std::set<HomClass> want{C("E1", ru), C("E2", ru), C("F - E1", ru), C("F - E2", ru)};
  CHECK(got == want);
  CHECK(s.complete);

  // K_delta with E1 flipped: the set is the image under E1 -> -E1.
  FormClass kd = as_form(canonical_k0(R(3)));
  kd[1] = -kd[1];
  ExceptionalSet sd = enumerate_exceptional(R(3), kd);
  CHECK(sd.classes.size() == 6);
  for (const auto& e : sd.classes) {
    CHECK(square(e) == -1);
    CHECK(form_pairing(kd, e) == -1);
  }
  FormClass bad = as_form(canonical_k0(R(3)));
  bad[0] = 5;
  CHECK_THROWS(enumerate_exceptional(R(3), bad));
}

TEST_CASE("n >= 9 needs a degree bound") {
  CHECK_THROWS(enumerate_exceptional(R(9)));
  ExceptionalSet s = enumerate_exceptional(R(9), std::nullopt, Integer(3));
  CHECK_FALSE(s.complete);
  for (const auto& e : s.classes) CHECK(e[0] <= 3);
  // All 9 classes E_i and the 36 classes H - E_i - E_j are below degree 1.
  std::size_t low = 0;
  for (const auto& e : s.classes)
    if (e[0] <= 1) ++low;
  CHECK(low == 9 + 36);
}

TEST_CASE("null spherical enumeration") {
  const int expected[] = {2, 8, 20, 40, 72, 126, 240};
  for (int n = 2; n <= 8; ++n) {
    ClassSet s = enumerate_null_spherical(R(n));
    CHECK(s.classes.size() == static_cast<std::size_t>(expected[n - 2]));
    CHECK(s.classes.size() == oracle::null_classes(n).size());
  }
  ClassSet ru = enumerate_null_spherical(Model::ruled(2, 3));
  CHECK(ru.classes.size() == 4 * 3);  // +-(E_i - E_j), +-(F - E_i - E_j)
}

TEST_CASE("cone membership") {
  CHECK(in_cone(F("3H - E1 - E2 - E3 - E4 - E5 - E6", R(6))).status == ConeStatus::Yes);
  ConeVerdict v = in_cone(F("H", R(1)));
  CHECK(v.status == ConeStatus::No);
  REQUIRE(v.witness);
  CHECK(*v.witness == basis_e(R(1), 1));
  CHECK(in_cone(F("H", R(0))).status == ConeStatus::Yes);
  CHECK(in_cone(F("H - E1", R(1))).status == ConeStatus::No);
  CHECK(in_cone(F("3H - 3/2 E1", R(1))).status == ConeStatus::Yes);
  // 2H - E1 - E2 - E3 pairs to zero with H - E1 - E2.
  CHECK(in_cone(F("2H - E1 - E2 - E3", R(3))).status == ConeStatus::No);
  ConeVerdict big = in_cone(F("3H - E1 - E2 - E3 - E4 - E5 - E6 - E7 - E8 - 1/10 E9", R(9)));
  CHECK(big.status == ConeStatus::YesUpToBound);
  CHECK(big.bound);
  Model ru = Model::ruled(2, 2);
  ConeVerdict rv = in_cone(F("2T + 3F - E1 - E2", ru));
  CHECK(rv.status == ConeStatus::Yes);
  CHECK(rv.conditions_only);
  CHECK(in_cone(F("2T + 3F - 2E1 - E2", ru)).status == ConeStatus::No);
}

TEST_CASE("bounded cone check at n = 9 matches the expanded class list") {
  std::mt19937_64 rng(19);
  Model m = R(9);
  ExceptionalSet all = enumerate_exceptional(m, std::nullopt, Integer(4));
  for (int t = 0; t < 60; ++t) {
    std::uniform_int_distribution<int> b(0, 6);
    FormClass tau = FormClass::zero(m);
    tau[0] = 3;
    for (int i = 1; i <= 9; ++i) tau[i] = Rational(-b(rng), 6);
    if (form_square(tau) <= 0) continue;
    std::optional<Rational> low;
    for (const auto& e : all.classes) {
      Rational area = form_pairing(tau, e);
      if (!low || area < *low) low = area;
    }
    ConeVerdict v = in_cone(tau, std::nullopt, Integer(4));
    CHECK((v.status == ConeStatus::No) == (*low <= 0));
    if (v.witness) CHECK(form_pairing(tau, *v.witness) == *low);
    if (v.status != ConeStatus::No) CHECK(v.status == ConeStatus::YesUpToBound);
  }
}

TEST_CASE("cone answers match the definition on random forms") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 300; ++t) {
    int n = 1 + t % 6;
    Model m = R(n);
    std::uniform_int_distribution<int> b(0, 4), a(1, 12);
    FormClass tau = FormClass::zero(m);
    tau[0] = a(rng);
    for (int i = 1; i <= n; ++i) tau[i] = Rational(-b(rng), 2);
    bool expect = form_square(tau) > 0;
    for (const auto& x : oracle::exceptional_classes(n))
      if (form_pairing(tau, oracle::to_hom(x)) <= 0) expect = false;
    CHECK((in_cone(tau).status == ConeStatus::Yes) == expect);
  }
}

TEST_CASE("Lagrangian sphere criterion") {
  LagrangianVerdict a = is_lagrangian_spherical(C("E1 - E2", R(2)), F("3H - E1 - E2", R(2)));
  CHECK(a.yes);
  LagrangianVerdict b = is_lagrangian_spherical(C("E1 - E2", R(2)), F("3H - E1 - 3/2 E2", R(2)));
  CHECK_FALSE(b.yes);
  CHECK(b.reason == "nonzero area");
  // Interior version of the boundary example: 3H - E1 - E2 - 3/2 E3.
  CHECK(is_lagrangian_spherical(C("E1 - E2", R(3)), F("3H - E1 - E2 - 3/2 E3", R(3))).yes);
  CHECK_THROWS(is_lagrangian_spherical(C("E1 - E2", R(3)), F("3H - E1 - E2 - 2E3", R(3))));

  LagrangianVerdict t = is_lagrangian_spherical(C("H - E1 - E2 - E3", R(4)), F("3H - E1 - E2 - E3 - 1/2 E4", R(4)));
  CHECK(t.yes);
  REQUIRE(t.binary_class);
  HomClass bc = *t.binary_class;
  CHECK(bc[0] == 0);
  CHECK(square(bc) == -2);
  REQUIRE(t.certificate);
  CHECK(t.certificate->kind == NormalFormKind::Ternary);

  LagrangianVerdict ch = is_lagrangian_spherical(C("H - E1 - E2 - E3", R(3)), F("3H - E1 - E2 - E3", R(3)));
  CHECK(ch.yes);
  CHECK(ch.characteristic);
  CHECK_FALSE(ch.uniqueness_applicable);

  LagrangianVerdict sq = is_lagrangian_spherical(C("H", R(2)), F("3H - E1 - E2", R(2)));
  CHECK_FALSE(sq.yes);
  CHECK(sq.reason.rfind("not K-null spherical", 0) == 0);

  Model ru = Model::ruled(1, 2);
  CHECK(is_lagrangian_spherical(C("E1 - E2", ru), F("2T + 3F - E1 - E2", ru)).yes);
}

TEST_CASE("inflation admissibility") {
  CHECK(inflation_admissible(C("H", R(1)), F("3H - E1", R(1))));
  CHECK_FALSE(inflation_admissible(C("E1", R(1)), F("3H - E1", R(1))));
  CHECK_FALSE(inflation_admissible(C("H - E1", R(1)), F("3H - E1", R(1))));
  CHECK_FALSE(inflation_admissible(C("2H + E1", R(1)), F("3H - E1", R(1))));
  InflationVerdict v = inflation_check(C("E1", R(1)), F("3H - E1", R(1)));
  CHECK_FALSE(v.failed.empty());
  CHECK_THROWS(inflation_admissible(C("H", R(1)), F("H", R(1))));
}

TEST_CASE("euler characteristic") {
  CHECK(euler_characteristic(R(3)) == 6);
  CHECK(euler_characteristic(Model::ruled(1, 2)) == 2);
  CHECK(euler_characteristic(Model::ruled(2, 0)) == -4);
}
