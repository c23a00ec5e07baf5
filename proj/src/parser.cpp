#include "h2lat/parser.hpp"

#include <cctype>
#include <limits>
#include <optional>
#include <sstream>

namespace h2lat {

namespace {

enum class Sym { H, T, F, E };

struct Term {
  Rational coef;
  Sym sym;
  int index;  // for E
  std::size_t pos;
};

class ExprParser {
 public:
  ExprParser(std::string_view text, bool allow_fraction) : s_(text), fraction_(allow_fraction) {}

  std::vector<Term> parse() {
    skip_ws();
    if (at_end()) throw ParseError("empty input", pos_);
    if (is_bare_zero()) return {};
    std::vector<Term> terms;
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (!at_end() && (peek() == '+' || peek() == '-')) {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        throw ParseError("expected '+' or '-'", pos_);
      }
      skip_ws();
      terms.push_back(term(sign));
      first = false;
      skip_ws();
      if (at_end()) break;
    }
    return terms;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool is_bare_zero() const {
    std::size_t b = pos_, e = s_.size();
    while (e > b && std::isspace(static_cast<unsigned char>(s_[e - 1]))) --e;
    return e == b + 1 && s_[b] == '0';
  }

  std::optional<Integer> digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) return std::nullopt;
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  Term term(int sign) {
    Rational coef = 1;
    if (auto num = digits()) {
      coef = Rational(*num);
      if (!at_end() && peek() == '.')
        throw ParseError(fraction_ ? "malformed rational" : "non-integer coefficient", pos_);
      if (!at_end() && peek() == '/') {
        if (!fraction_) throw ParseError("non-integer coefficient", pos_);
        ++pos_;
        auto den = digits();
        if (!den || *den == 0) throw ParseError("malformed rational", pos_);
        coef = Rational(*num, *den);
        coef.canonicalize();
      }
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_ws();
      }
    } else if (!at_end() && peek() == '*') {
      throw ParseError("missing coefficient before '*'", pos_);
    }
    if (at_end()) throw ParseError("expected a basis symbol", pos_);
    std::size_t sym_pos = pos_;
    char c = static_cast<char>(std::toupper(static_cast<unsigned char>(peek())));
    ++pos_;
    Term t{sign * coef, Sym::H, 0, sym_pos};
    switch (c) {
      case 'H': t.sym = Sym::H; break;
      case 'T': t.sym = Sym::T; break;
      case 'F': t.sym = Sym::F; break;
      case 'E': {
        t.sym = Sym::E;
        std::size_t idx_pos = pos_;
        auto idx = digits();
        if (!idx) throw ParseError("E requires an index", idx_pos);
        if (s_[idx_pos] == '0' && pos_ - idx_pos > 1) throw ParseError("leading zero in E-index", idx_pos);
        if (*idx > std::numeric_limits<int>::max()) throw ParseError("index out of range", idx_pos);
        t.index = static_cast<int>(idx->get_si());
        break;
      }
      default:
        throw ParseError("unknown symbol '" + std::string(1, s_[sym_pos]) + "'", sym_pos);
    }
    if (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
      throw ParseError("unknown symbol", sym_pos);
    return t;
  }

  std::string_view s_;
  bool fraction_;
  std::size_t pos_ = 0;
};

std::vector<Rational> assemble(std::string_view text, const Model& model, bool allow_fraction) {
  std::vector<Term> terms = ExprParser(text, allow_fraction).parse();
  const Term* h_term = nullptr;
  const Term* tf_term = nullptr;
  for (const auto& t : terms) {
    if (t.sym == Sym::H && !h_term) h_term = &t;
    if ((t.sym == Sym::T || t.sym == Sym::F) && !tf_term) tf_term = &t;
  }
  if (h_term && tf_term)
    throw ParseError("mixed basis symbols (H with T/F)", std::max(h_term->pos, tf_term->pos));
  if (h_term && !model.is_rational())
    throw ParseError("symbol H belongs to the rational model, not " + model.to_string(), h_term->pos);
  if (tf_term && !model.is_ruled())
    throw ParseError("symbols T/F belong to the ruled model, not " + model.to_string(), tf_term->pos);

  std::vector<Rational> coeffs(model.rank());
  for (const auto& t : terms) {
    std::size_t slot = 0;
    switch (t.sym) {
      case Sym::H:
      case Sym::T: slot = 0; break;
      case Sym::F: slot = 1; break;
      case Sym::E:
        if (t.index < 1 || t.index > model.n())
          throw ParseError("index out of range: E" + std::to_string(t.index) + " in " + model.to_string(), t.pos);
        slot = model.e_slot(t.index);
        break;
    }
    coeffs[slot] += t.coef;
  }
  return coeffs;
}

std::string symbol_name(const Model& m, std::size_t slot) {
  if (m.is_rational()) return slot == 0 ? "H" : "E" + std::to_string(slot);
  if (slot == 0) return "T";
  if (slot == 1) return "F";
  return "E" + std::to_string(slot - 1);
}

template <typename Scalar>
std::string print_impl(const Vec<Scalar>& x) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rational c(x[i]);
    if (c == 0) continue;
    bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    if (mag.get_den() != 1)
      os << mag.get_num() << '/' << mag.get_den() << ' ';
    else if (mag != 1)
      os << mag.get_num();
    os << symbol_name(x.model(), i);
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace

HomClass parse_class(std::string_view text, const Model& model) {
  std::vector<Rational> q = assemble(text, model, false);
  std::vector<Integer> c(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) c[i] = q[i].get_num();
  return HomClass(model, std::move(c));
}

FormClass parse_form(std::string_view text, const Model& model) {
  return FormClass(model, assemble(text, model, true));
}

std::string print_class(const HomClass& x) { return print_impl(x); }
std::string print_class(const FormClass& x) { return print_impl(x); }

Model parse_model_spec(std::string_view spec) {
  auto fail = [&]() -> Model {
    throw ParseError("bad model spec '" + std::string(spec) + "' (expected rational:N or ruled:h=H,n=N)", 0);
  };
  auto to_int = [&](std::string_view v) {
    if (v.empty() || v.size() > 9) fail();
    for (char ch : v)
      if (!std::isdigit(static_cast<unsigned char>(ch))) fail();
    return std::stoi(std::string(v));
  };
  if (spec.starts_with("rational:")) return Model::rational(to_int(spec.substr(9)));
  if (spec.starts_with("ruled:")) {
    std::string_view rest = spec.substr(6);
    std::optional<int> h, n;
    while (!rest.empty()) {
      std::size_t comma = rest.find(',');
      std::string_view item = rest.substr(0, comma);
      std::size_t eq = item.find('=');
      if (eq == std::string_view::npos) fail();
      std::string_view key = item.substr(0, eq), val = item.substr(eq + 1);
      if (key == "h" || key == "genus")
        h = to_int(val);
      else if (key == "n")
        n = to_int(val);
      else
        fail();
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    if (!h || !n) fail();
    return Model::ruled(*h, *n);
  }
  return fail();
}

nlohmann::json model_to_json(const Model& m) {
  if (m.is_rational()) return {{"type", "rational"}, {"n", m.n()}};
  return {{"type", "ruled"}, {"genus", m.genus()}, {"n", m.n()}};
}

Model model_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_model_spec(j.get<std::string>());
  if (!j.is_object() || !j.contains("type")) throw LatticeError("model object requires a \"type\" field");
  std::string type = j.at("type").get<std::string>();
  int n = j.at("n").get<int>();
  if (type == "rational") return Model::rational(n);
  if (type == "ruled") return Model::ruled(j.at("genus").get<int>(), n);
  throw LatticeError("unknown model type '" + type + "'");
}

nlohmann::json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return static_cast<long long>(v.get_si());
  return v.get_str();
}

nlohmann::json rational_to_json(const Rational& v) {
  if (v.get_den() == 1) return integer_to_json(v.get_num());
  return v.get_str();
}

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0) throw LatticeError("malformed rational \"" + s + "\"");
    if (r.get_den() == 0) throw LatticeError("malformed rational \"" + s + "\"");
    r.canonicalize();
    return r;
  }
  throw LatticeError("coefficient must be an integer or a \"p/q\" string");
}

Integer integer_from_json(const nlohmann::json& j) {
  Rational r = rational_from_json(j);
  if (r.get_den() != 1) throw LatticeError("non-integer coefficient " + r.get_str());
  return r.get_num();
}

nlohmann::json to_json(const HomClass& x) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(integer_to_json(c));
  return {{"model", model_to_json(x.model())}, {"coeffs", coeffs}};
}

nlohmann::json to_json(const FormClass& x) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(rational_to_json(c));
  return {{"model", model_to_json(x.model())}, {"coeffs", coeffs}};
}

HomClass hom_from_json(const nlohmann::json& j) {
  Model m = model_from_json(j.at("model"));
  std::vector<Integer> c;
  for (const auto& v : j.at("coeffs")) c.push_back(integer_from_json(v));
  return HomClass(m, std::move(c));
}

FormClass form_from_json(const nlohmann::json& j) {
  Model m = model_from_json(j.at("model"));
  std::vector<Rational> c;
  for (const auto& v : j.at("coeffs")) c.push_back(rational_from_json(v));
  return FormClass(m, std::move(c));
}

}  // namespace h2lat
