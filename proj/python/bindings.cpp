// Python bindings. Results cross the boundary as JSON text; the package
// __init__ decodes them.

#include "h2lat/cone.hpp"
#include "h2lat/oracle.hpp"
#include "h2lat/parser.hpp"
#include "h2lat/reduction.hpp"
#include "h2lat/twist.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

namespace py = pybind11;
using nlohmann::json;
using namespace h2lat;

namespace {

// Expression text, or a JSON coefficient list "[1, -1, 0]".
HomClass load_class(const Model& m, const std::string& s) {
  if (!s.empty() && s.front() == '[') {
    json j = json::parse(s);
    std::vector<Integer> c;
    for (const auto& v : j) c.push_back(integer_from_json(v));
    return HomClass(m, std::move(c));
  }
  return parse_class(s, m);
}

FormClass load_form(const Model& m, const std::string& s) {
  if (!s.empty() && s.front() == '[') {
    json j = json::parse(s);
    std::vector<Rational> c;
    for (const auto& v : j) c.push_back(rational_from_json(v));
    return FormClass(m, std::move(c));
  }
  return parse_form(s, m);
}

std::optional<Integer> bound(std::optional<long> b) {
  if (!b) return std::nullopt;
  return Integer(*b);
}

json nf_json(const NormalForm& nf) {
  json w = json::array();
  for (const auto& g : nf.word.generators()) w.push_back(to_json(g)["coeffs"]);
  return {{"kind", to_string(nf.kind)},
          {"representative", to_json(nf.representative)["coeffs"]},
          {"text", print_class(nf.representative)},
          {"sign_flipped", nf.sign_flipped},
          {"word", w},
          {"diagnostic", nf.diagnostic}};
}

json classes_json(const std::vector<HomClass>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x)["coeffs"]);
  return out;
}

std::string classify(const std::string& model, const std::string& cls) {
  Model m = parse_model_spec(model);
  HomClass x = load_class(m, cls);
  FormClass k0 = as_form(canonical_k0(m));
  json j = {{"text", print_class(x)},
            {"square", integer_to_json(square(x))},
            {"k0_pairing", integer_to_json(pairing(canonical_k0(m), x))},
            {"characteristic", is_characteristic(x)},
            {"exceptional", is_exceptional(x, k0)},
            {"knull", is_k_null_spherical(x, k0)}};
  if (m.is_rational()) j["normal_form"] = nf_json(cremona_reduce(x));
  return j.dump();
}

std::string reduce(const std::string& model, const std::string& cls) {
  Model m = parse_model_spec(model);
  return nf_json(cremona_reduce(load_class(m, cls))).dump();
}

std::string lagrangian(const std::string& model, const std::string& cls, const std::string& form, bool accept_bounded,
                       std::optional<long> degree_bound) {
  Model m = parse_model_spec(model);
  LagrangianVerdict v =
      is_lagrangian_spherical(load_class(m, cls), load_form(m, form), std::nullopt, accept_bounded, bound(degree_bound));
  json j = {{"yes", v.yes},
            {"reason", v.reason},
            {"cone", to_string(v.cone.status)},
            {"characteristic", v.characteristic},
            {"uniqueness_applicable", v.uniqueness_applicable}};
  if (v.certificate) j["certificate"] = nf_json(*v.certificate);
  if (v.binary_class) j["binary_class"] = to_json(*v.binary_class)["coeffs"];
  return j.dump();
}

std::string cone(const std::string& model, const std::string& form, std::optional<long> degree_bound) {
  Model m = parse_model_spec(model);
  ConeVerdict v = in_cone(load_form(m, form), std::nullopt, bound(degree_bound));
  json j = {{"status", to_string(v.status)}, {"reason", v.reason}, {"conditions_only", v.conditions_only}};
  if (v.witness) j["witness"] = to_json(*v.witness)["coeffs"];
  if (v.bound) j["degree_bound"] = integer_to_json(*v.bound);
  return j.dump();
}

std::string exceptional(const std::string& model, std::optional<long> degree_bound) {
  ExceptionalSet s = enumerate_exceptional(parse_model_spec(model), std::nullopt, bound(degree_bound));
  return json{{"complete", s.complete}, {"classes", classes_json(s.classes)}}.dump();
}

std::string null_spherical(const std::string& model, std::optional<long> degree_bound) {
  ClassSet s = enumerate_null_spherical(parse_model_spec(model), bound(degree_bound));
  return json{{"complete", s.complete}, {"classes", classes_json(s.classes)}}.dump();
}

std::string decompose(const std::string& model, const std::string& matrix_rows, const std::optional<std::string>& alpha) {
  Model m = parse_model_spec(model);
  json rows = json::parse(matrix_rows);
  std::vector<Integer> flat;
  for (const auto& r : rows)
    for (const auto& v : r) flat.push_back(integer_from_json(v));
  IntMatrix mat(m, std::move(flat));
  std::optional<FormClass> a;
  if (alpha) a = load_form(m, *alpha);
  ReflectionWord w(m);
  if (m.is_ruled())
    w = decompose_ruled(mat, a);
  else if (a)
    w = decompose_k_alpha(mat, *a);
  else
    w = decompose_k(mat);
  return json{{"word", classes_json(w.generators())}, {"verified", w.matrix() == mat}}.dump();
}

std::string cross(const std::string& model, std::optional<long> sq, std::optional<long> k, int coeff_bound,
                  const std::optional<std::string>& predicate) {
  EnumQuery q;
  q.model = parse_model_spec(model);
  if (sq) q.square = Integer(*sq);
  if (k) q.k_pairing = Integer(*k);
  q.coeff_bound = coeff_bound;
  if (predicate) q.predicate = predicate_from_string(*predicate);
  return to_json(crosscheck(q)).dump();
}

std::string reflect_json(const std::string& model, const std::string& gamma, const std::string& beta) {
  Model m = parse_model_spec(model);
  return to_json(reflect(load_class(m, gamma), load_class(m, beta)))["coeffs"].dump();
}

std::string pairing_json(const std::string& model, const std::string& x, const std::string& y) {
  Model m = parse_model_spec(model);
  return integer_to_json(pairing(load_class(m, x), load_class(m, y))).dump();
}

std::string print_json(const std::string& model, const std::string& cls) {
  return print_class(load_class(parse_model_spec(model), cls));
}

std::string parse_json(const std::string& model, const std::string& text) {
  return to_json(parse_class(text, parse_model_spec(model)))["coeffs"].dump();
}

}  // namespace

PYBIND11_MODULE(_h2lat, mod) {
  mod.doc() = "exact lattice computations for rational and ruled 4-manifolds";
  py::register_exception<ParseError>(mod, "ParseError", PyExc_ValueError);
  py::register_exception<LatticeError>(mod, "LatticeError", PyExc_ValueError);

  mod.def("classify", &classify, py::arg("model"), py::arg("cls"));
  mod.def("reduce", &reduce, py::arg("model"), py::arg("cls"));
  mod.def("lagrangian", &lagrangian, py::arg("model"), py::arg("cls"), py::arg("form"),
          py::arg("accept_bounded") = false, py::arg("degree_bound") = py::none());
  mod.def("cone", &cone, py::arg("model"), py::arg("form"), py::arg("degree_bound") = py::none());
  mod.def("exceptional", &exceptional, py::arg("model"), py::arg("degree_bound") = py::none());
  mod.def("null_spherical", &null_spherical, py::arg("model"), py::arg("degree_bound") = py::none());
  mod.def("decompose", &decompose, py::arg("model"), py::arg("matrix"), py::arg("alpha") = py::none());
  mod.def("crosscheck", &cross, py::arg("model"), py::arg("square") = py::none(), py::arg("k_pairing") = py::none(),
          py::arg("bound") = 1, py::arg("predicate") = py::none());
  mod.def("reflect", &reflect_json, py::arg("model"), py::arg("gamma"), py::arg("beta"));
  mod.def("pairing", &pairing_json, py::arg("model"), py::arg("x"), py::arg("y"));
  mod.def("print_class", &print_json, py::arg("model"), py::arg("cls"));
  mod.def("parse_class", &parse_json, py::arg("model"), py::arg("text"));
}
