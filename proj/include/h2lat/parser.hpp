#pragma once

// Class expressions such as "2H - E1 - E2" or "3T + 2F - 1/2 E3".
//
//   expr := ['+'|'-'] term (('+'|'-') term)*
//   term := [integer | integer '/' integer] ['*'] symbol
//   symbol := H | T | F | E<k>        (case-insensitive, k without leading zeros)
//
// The bare expression "0" denotes the zero class.

#include "h2lat/lattice.hpp"

#include <json.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace h2lat {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

HomClass parse_class(std::string_view text, const Model& model);
FormClass parse_form(std::string_view text, const Model& model);

std::string print_class(const HomClass& x);
std::string print_class(const FormClass& x);

/// "rational:6", "ruled:h=2,n=3".
Model parse_model_spec(std::string_view spec);

// JSON wire format:
//   {"model": {"type":"rational","n":N} | {"type":"ruled","genus":H,"n":N},
//    "coeffs": [...]}
// Coefficients are JSON integers, or strings "p" / "p/q" for values that do not
// fit 64 bits or are fractional.
nlohmann::json model_to_json(const Model& m);
Model model_from_json(const nlohmann::json& j);
nlohmann::json integer_to_json(const Integer& v);
nlohmann::json rational_to_json(const Rational& v);
Integer integer_from_json(const nlohmann::json& j);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json to_json(const HomClass& x);
nlohmann::json to_json(const FormClass& x);
HomClass hom_from_json(const nlohmann::json& j);
FormClass form_from_json(const nlohmann::json& j);

}  // namespace h2lat
