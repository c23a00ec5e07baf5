// h2lat: command-line front end.
//
// Exit codes: 0 yes/ok, 1 no/violation, 2 input error.

#include "h2lat/cone.hpp"
#include "h2lat/lattice.hpp"
#include "h2lat/matrix.hpp"
#include "h2lat/oracle.hpp"
#include "h2lat/parser.hpp"
#include "h2lat/reduction.hpp"
#include "h2lat/twist.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

using nlohmann::json;
using namespace h2lat;

namespace {

struct Config {
  std::string model_spec;
  std::string output = "text";
  std::optional<long long> degree_bound;
  std::optional<unsigned long long> seed;
  bool json() const { return output == "json"; }
};

// Input problems (exit 2) as opposed to negative verdicts.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Model require_model(const Config& c) {
  if (c.model_spec.empty()) throw InputError("--model is required");
  return parse_model_spec(c.model_spec);
}

HomClass load_class(const Config& c, const std::string& text, const std::string& file) {
  if (!file.empty()) {
    HomClass x = hom_from_json(read_json_file(file));
    if (!c.model_spec.empty()) require_same_model(parse_model_spec(c.model_spec), x.model());
    return x;
  }
  if (text.empty()) throw InputError("a class is required (--class or --class-file)");
  return parse_class(text, require_model(c));
}

FormClass load_form(const Config& c, const std::string& text, const std::string& file, const Model& m) {
  if (!file.empty()) {
    FormClass f = form_from_json(read_json_file(file));
    require_same_model(m, f.model());
    return f;
  }
  if (text.empty()) throw InputError("a form is required (--form or --form-file)");
  return parse_form(text, m);
}

std::optional<Integer> bound_of(const Config& c) {
  if (!c.degree_bound) return std::nullopt;
  if (*c.degree_bound <= 0) throw InputError("--degree-bound must be positive");
  return Integer(static_cast<long>(*c.degree_bound));
}

IntMatrix load_matrix(const Config& c, const std::string& path) {
  json j = read_json_file(path);
  std::optional<Model> m;
  json entries;
  if (j.is_object()) {
    if (j.contains("model")) m = model_from_json(j.at("model"));
    if (j.contains("matrix"))
      entries = j.at("matrix");
    else if (j.contains("entries"))
      entries = j.at("entries");
    else
      throw InputError("matrix file needs a \"matrix\" array");
  } else {
    entries = j;
  }
  if (!c.model_spec.empty()) {
    Model cm = parse_model_spec(c.model_spec);
    if (m && !(*m == cm)) throw InputError("matrix model " + m->to_string() + " differs from --model " + cm.to_string());
    m = cm;
  }
  if (!m) throw InputError("model missing: pass --model or a \"model\" header");
  std::vector<Integer> flat;
  if (!entries.is_array()) throw InputError("matrix must be an array");
  for (const auto& row : entries) {
    if (row.is_array())
      for (const auto& v : row) flat.push_back(integer_from_json(v));
    else
      flat.push_back(integer_from_json(row));
  }
  if (flat.size() != m->rank() * m->rank())
    throw InputError("matrix has " + std::to_string(flat.size()) + " entries, expected " +
                     std::to_string(m->rank() * m->rank()));
  return IntMatrix(*m, std::move(flat));
}

json matrix_to_json(const IntMatrix& mat) {
  json rows = json::array();
  for (std::size_t r = 0; r < mat.dim(); ++r) {
    json row = json::array();
    for (std::size_t col = 0; col < mat.dim(); ++col) row.push_back(integer_to_json(mat.at(r, col)));
    rows.push_back(row);
  }
  return {{"model", model_to_json(mat.model())}, {"matrix", rows}};
}

json word_to_json(const ReflectionWord& w) {
  json out = json::array();
  for (const auto& g : w.generators()) out.push_back(print_class(g));
  return out;
}

std::string word_text(const ReflectionWord& w) {
  if (w.empty()) return "[]";
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? ", R(" : "R(") + print_class(w.generators()[i]) + ")";
  return s + "]";
}

int emit(const Config& c, const json& j, const std::string& text, int code) {
  if (c.json())
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
  return code;
}

json normal_form_json(const NormalForm& nf) {
  json j = {{"kind", to_string(nf.kind)},
            {"representative", print_class(nf.representative)},
            {"sign_flipped", nf.sign_flipped},
            {"ternary_steps", nf.ternary_steps},
            {"word", word_to_json(nf.word)}};
  if (!nf.diagnostic.empty()) j["diagnostic"] = nf.diagnostic;
  return j;
}

std::string normal_form_text(const NormalForm& nf) {
  std::ostringstream os;
  os << "normal form: " << to_string(nf.kind) << " " << (nf.sign_flipped ? "-(" : "") << print_class(nf.representative)
     << (nf.sign_flipped ? ")" : "") << "\n";
  os << "word: " << word_text(nf.word) << "\n";
  if (!nf.diagnostic.empty()) os << "diagnostic: " << nf.diagnostic << "\n";
  return os.str();
}

int cmd_classify(const Config& c, const HomClass& x) {
  const Model& m = x.model();
  FormClass k0 = as_form(canonical_k0(m));
  Integer sq = square(x);
  Integer kx = pairing(canonical_k0(m), x);
  bool ch = is_characteristic(x);
  bool exc = is_exceptional(x, k0);
  bool kn = is_k_null_spherical(x, k0);
  json j = {{"model", model_to_json(m)},
            {"class", to_json(x)},
            {"text", print_class(x)},
            {"square", integer_to_json(sq)},
            {"k0_pairing", integer_to_json(kx)},
            {"characteristic", ch},
            {"exceptional", exc},
            {"knull", kn}};
  std::ostringstream os;
  os << "class: " << print_class(x) << "  (" << m.to_string() << ")\n"
     << "square: " << sq << "\nK0 pairing: " << kx << "\n"
     << "characteristic: " << (ch ? "yes" : "no") << "\n"
     << "exceptional: " << (exc ? "yes" : "no") << "\n"
     << "knull: " << (kn ? "yes" : "no") << "\n";
  if (m.is_rational()) {
    NormalForm nf = cremona_reduce(x);
    j["normal_form"] = normal_form_json(nf);
    os << normal_form_text(nf);
  }
  return emit(c, j, os.str(), 0);
}

int cmd_reduce(const Config& c, const HomClass& x) {
  NormalForm nf = cremona_reduce(x);
  json j = {{"model", model_to_json(x.model())}, {"class", print_class(x)}, {"normal_form", normal_form_json(nf)}};
  return emit(c, j, normal_form_text(nf), nf.kind == NormalFormKind::Irreducible ? 1 : 0);
}

int cmd_lagrangian(const Config& c, const HomClass& x, const FormClass& tau, bool accept_bounded) {
  LagrangianVerdict v = is_lagrangian_spherical(x, tau, std::nullopt, accept_bounded, bound_of(c));
  json j = {{"model", model_to_json(x.model())},
            {"class", print_class(x)},
            {"form", print_class(tau)},
            {"verdict", v.yes ? "yes" : "no"},
            {"cone", to_string(v.cone.status)},
            {"characteristic", v.characteristic},
            {"uniqueness_applicable", v.uniqueness_applicable}};
  std::ostringstream os;
  if (v.yes) {
    os << "Yes\n";
    if (v.certificate) {
      j["certificate"] = normal_form_json(*v.certificate);
      os << normal_form_text(*v.certificate);
    }
    if (v.binary_class) {
      j["binary_class"] = print_class(*v.binary_class);
      os << "binary class: " << print_class(*v.binary_class) << "\n";
    }
    if (v.characteristic) os << "characteristic: yes\n";
    if (!v.uniqueness_applicable) os << "uniqueness: not applicable (characteristic, Euler characteristic 6)\n";
  } else {
    j["reason"] = v.reason;
    os << "No: " << v.reason << "\n";
  }
  return emit(c, j, os.str(), v.yes ? 0 : 1);
}

int cmd_cone(const Config& c, const FormClass& tau, const std::optional<HomClass>& inflate, bool accept_bounded) {
  ConeVerdict v = in_cone(tau, std::nullopt, bound_of(c));
  json j = {{"model", model_to_json(tau.model())}, {"form", print_class(tau)}, {"status", to_string(v.status)}};
  std::ostringstream os;
  os << (v.status == ConeStatus::Yes ? "Yes" : v.status == ConeStatus::No ? "No" : "Yes up to degree bound");
  if (!v.reason.empty()) {
    j["reason"] = v.reason;
    os << ": " << v.reason;
  }
  os << "\n";
  if (v.witness) {
    j["witness"] = print_class(*v.witness);
    os << "witness: " << print_class(*v.witness) << "\n";
  }
  if (v.bound) {
    j["degree_bound"] = integer_to_json(*v.bound);
    os << "degree bound: " << *v.bound << "\n";
  }
  if (v.conditions_only) j["conditions_only"] = true;
  int code = v.status == ConeStatus::No ? 1 : 0;
  if (inflate) {
    InflationVerdict iv = inflation_check(*inflate, tau, std::nullopt, accept_bounded, bound_of(c));
    j["inflation"] = {{"class", print_class(*inflate)}, {"admissible", iv.admissible}};
    if (!iv.admissible) j["inflation"]["failed"] = iv.failed;
    os << "inflation along " << print_class(*inflate) << ": " << (iv.admissible ? "admissible" : "not admissible");
    if (!iv.admissible) os << " (" << iv.failed << ")";
    os << "\n";
    if (!iv.admissible) code = 1;
  }
  return emit(c, j, os.str(), code);
}

ReflectionWord random_word(const Model& m, const std::optional<FormClass>& alpha, int length, std::mt19937_64& rng) {
  std::vector<HomClass> gens = twist_generators(m, alpha);
  ReflectionWord w(m);
  if (gens.empty()) return w;
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (int i = 0; i < length; ++i) w.push(gens[pick(rng)]);
  return w;
}

int cmd_decompose(const Config& c, const std::string& matrix_path, int random_length, const std::string& alpha_text,
                  const std::string& alpha_file, bool accept_bounded) {
  std::optional<IntMatrix> mat;
  json j;
  std::ostringstream os;
  std::optional<FormClass> alpha;
  if (!matrix_path.empty()) {
    mat = load_matrix(c, matrix_path);
    if (!alpha_text.empty() || !alpha_file.empty()) alpha = load_form(c, alpha_text, alpha_file, mat->model());
  } else if (random_length >= 0) {
    Model m = require_model(c);
    if (!alpha_text.empty() || !alpha_file.empty()) alpha = load_form(c, alpha_text, alpha_file, m);
    unsigned long long seed = c.seed.value_or(std::random_device{}());
    std::mt19937_64 rng(seed);
    ReflectionWord input = random_word(m, alpha, random_length, rng);
    mat = input.matrix();
    j["seed"] = seed;
    j["input_word"] = word_to_json(input);
    os << "seed: " << seed << "\ninput word: " << word_text(input) << "\n";
  } else {
    throw InputError("decompose needs --matrix or --random-length");
  }
  const Model& m = mat->model();
  j["model"] = model_to_json(m);

  FormClass k0 = as_form(canonical_k0(m));
  std::optional<FormClass> check_alpha = alpha;
  if (m.is_ruled() && !alpha) check_alpha = balanced_ruled_form(m);
  ValidationReport rep = validate(*mat, k0, check_alpha);
  if (!rep.ok()) {
    j["valid"] = false;
    j["violations"] = rep.violations;
    os << "invalid matrix: " << rep.summary() << "\n";
    return emit(c, j, os.str(), 1);
  }
  j["valid"] = true;
  try {
    ReflectionWord w(m);
    if (m.is_ruled())
      w = decompose_ruled(*mat, alpha);
    else if (alpha)
      w = decompose_k_alpha(*mat, *alpha, AlphaOptions{accept_bounded, bound_of(c)});
    else
      w = decompose_k(*mat);
    bool verified = w.matrix() == *mat;
    j["word"] = word_to_json(w);
    j["length"] = w.size();
    j["verified"] = verified;
    os << "word (" << w.size() << "): " << word_text(w) << "\nproduct equals input: " << (verified ? "yes" : "no")
       << "\n";
    return emit(c, j, os.str(), verified ? 0 : 1);
  } catch (const DecompositionError& e) {
    j["error"] = e.what();
    os << "decomposition failed: " << e.what() << "\n";
    return emit(c, j, os.str(), 1);
  }
}

json class_list_json(const std::vector<HomClass>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(print_class(x));
  return out;
}

std::string class_list_text(const std::vector<HomClass>& v) {
  std::string s;
  for (const auto& x : v) s += "  " + print_class(x) + "\n";
  return s;
}

int cmd_enumerate(const Config& c, const std::string& kind, const EnumQuery& q) {
  Model m = require_model(c);
  json j = {{"model", model_to_json(m)}, {"kind", kind}};
  std::vector<HomClass> classes;
  std::ostringstream os;
  if (kind == "exceptional" || kind == "knull") {
    ClassSet s = kind == "exceptional" ? enumerate_exceptional(m, std::nullopt, bound_of(c))
                                       : enumerate_null_spherical(m, bound_of(c));
    classes = s.classes;
    j["complete"] = s.complete;
    if (!s.complete) j["degree_bound"] = integer_to_json(s.degree_bound);
    os << classes.size() << " " << kind << " classes" << (s.complete ? "" : " (up to degree bound)") << "\n";
  } else if (kind == "query") {
    EnumQuery qq = q;
    qq.model = m;
    classes = enumerate(qq);
    os << classes.size() << " classes\n";
  } else {
    throw InputError("--kind must be exceptional, knull or query");
  }
  j["count"] = classes.size();
  j["classes"] = class_list_json(classes);
  return emit(c, j, os.str() + class_list_text(classes), 0);
}

int cmd_crosscheck(const Config& c, EnumQuery q, int depth) {
  q.model = require_model(c);
  OrbitOptions opts;
  opts.max_depth = depth;
  CrosscheckReport r = crosscheck(q, opts);
  std::ostringstream os;
  os << "mode: " << r.mode << "\nchecked: " << r.checked << "\nconfirmed: " << r.confirmed
     << "\ndisagreements: " << r.disagreements.size() << "\n";
  for (const auto& d : r.disagreements)
    os << "  " << print_class(d.cls) << " [" << d.check << "] library=" << d.library << " oracle=" << d.oracle << " ("
       << d.detail << ")\n";
  return emit(c, to_json(r), os.str(), r.ok() ? 0 : 1);
}

int report_error(const Config& c, const std::string& kind, const std::string& msg, int code) {
  if (c.json())
    std::cout << json{{"error", msg}, {"kind", kind}}.dump(2) << "\n";
  else
    std::cerr << "error: " << msg << "\n";
  return code;
}

void add_query_options(CLI::App* sub, EnumQuery& q, std::optional<long long>& square, std::optional<long long>& kp,
                       std::string& predicate) {
  sub->add_option("--square", square, "required square");
  sub->add_option("--k-pairing", kp, "required pairing with K_0");
  sub->add_option("--bound", q.coeff_bound, "coefficient bound")->check(CLI::PositiveNumber);
  sub->add_option("--predicate", predicate, "exceptional | knull | characteristic");
  sub->add_flag("--allow-large", q.allow_large, "lift the safety limits");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in the homology lattices of rational and ruled 4-manifolds"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Config cfg;
  app.add_option("--model", cfg.model_spec, "rational:N or ruled:h=H,n=N");
  app.add_option("--output", cfg.output, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--degree-bound", cfg.degree_bound, "H-degree bound for n >= 9 searches");
  app.add_option("--seed", cfg.seed, "seed for randomized commands");

  std::string cls, cls_file, form, form_file, matrix, alpha, alpha_file, inflate, kind = "exceptional", predicate;
  bool accept_bounded = false;
  int random_length = -1, depth = -1;
  EnumQuery q;
  std::optional<long long> square_opt, kp_opt;

  auto add_class = [&](CLI::App* s) {
    s->add_option("--class", cls, "class expression");
    s->add_option("--class-file", cls_file, "class in JSON");
  };
  auto add_form = [&](CLI::App* s) {
    s->add_option("--form", form, "form expression");
    s->add_option("--form-file", form_file, "form in JSON");
    s->add_flag("--accept-bounded", accept_bounded, "accept cone answers valid only up to the degree bound");
  };

  auto* classify = app.add_subcommand("classify", "square, K_0 pairing and class predicates");
  add_class(classify);
  auto* reduce = app.add_subcommand("reduce", "Cremona reduction with certificate word");
  add_class(reduce);
  auto* lag = app.add_subcommand("lagrangian", "Lagrangian sphere criterion");
  add_class(lag);
  add_form(lag);
  auto* cone = app.add_subcommand("cone", "symplectic cone membership");
  add_form(cone);
  cone->add_option("--inflate", inflate, "class A for an inflation admissibility check");
  auto* dec = app.add_subcommand("decompose", "factor an isometry into twists");
  dec->add_option("--matrix", matrix, "matrix JSON file");
  dec->add_option("--random-length", random_length, "decompose a seeded random word of this length instead");
  dec->add_option("--alpha", alpha, "area class alpha");
  dec->add_option("--alpha-file", alpha_file, "area class alpha in JSON");
  dec->add_flag("--accept-bounded", accept_bounded, "accept an exceptional set complete only up to the degree bound");
  auto* en = app.add_subcommand("enumerate", "enumerate classes");
  en->add_option("--kind", kind, "exceptional | knull | query");
  add_query_options(en, q, square_opt, kp_opt, predicate);
  auto* cc = app.add_subcommand("crosscheck", "compare library decisions with brute-force oracles");
  add_query_options(cc, q, square_opt, kp_opt, predicate);
  cc->add_option("--depth", depth, "orbit search depth (default 2n)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    if (cfg.json()) return report_error(cfg, "usage", e.what(), 2);
    app.exit(e);
    return 2;
  }

  try {
    if (square_opt) q.square = Integer(static_cast<long>(*square_opt));
    if (kp_opt) q.k_pairing = Integer(static_cast<long>(*kp_opt));
    if (!predicate.empty()) q.predicate = predicate_from_string(predicate);

    if (*classify) return cmd_classify(cfg, load_class(cfg, cls, cls_file));
    if (*reduce) return cmd_reduce(cfg, load_class(cfg, cls, cls_file));
    if (*lag) {
      HomClass x = load_class(cfg, cls, cls_file);
      return cmd_lagrangian(cfg, x, load_form(cfg, form, form_file, x.model()), accept_bounded);
    }
    if (*cone) {
      Model m = require_model(cfg);
      FormClass tau = load_form(cfg, form, form_file, m);
      std::optional<HomClass> a;
      if (!inflate.empty()) a = parse_class(inflate, m);
      return cmd_cone(cfg, tau, a, accept_bounded);
    }
    if (*dec) return cmd_decompose(cfg, matrix, random_length, alpha, alpha_file, accept_bounded);
    if (*en) return cmd_enumerate(cfg, kind, q);
    if (*cc) return cmd_crosscheck(cfg, q, depth);
  } catch (const ParseError& e) {
    return report_error(cfg, "parse", e.what(), 2);
  } catch (const InputError& e) {
    return report_error(cfg, "input", e.what(), 2);
  } catch (const DecompositionError& e) {
    return report_error(cfg, "decomposition", e.what(), 1);
  } catch (const LatticeError& e) {
    return report_error(cfg, "input", e.what(), 2);
  } catch (const json::exception& e) {
    return report_error(cfg, "input", e.what(), 2);
  }
  return 2;
}
