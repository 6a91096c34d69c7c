#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bell/functional.hpp"

namespace bell {

class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

private:
  int line_;
};

// Text layout, one functional per file:
//
//   bell <ma> <mb> <bound>        bound is an integer or p/q
//   bob  <M(B_0)> ... <M(B_mb-1)>
//   <M(A_x)> | <C(x,0)> ... <C(x,mb-1)>      one line per Alice setting
//
// '#' starts a comment, blank lines are skipped.
BellFunctional parse_functional(std::string_view text);
std::string serialize_functional(const BellFunctional& f);

Rational parse_rational(std::string_view token);

// JSON mirror: {"scenario":{"ma","mb"}, "alice_marg", "bob_marg",
// "corr" (array of rows), "bound":{"num","den"}, optional "name"}.
nlohmann::json functional_to_json(const BellFunctional& f, const std::string& name = {});
BellFunctional functional_from_json(const nlohmann::json& j);

BellFunctional read_functional_file(const std::string& path);

} // namespace bell
