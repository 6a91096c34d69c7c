#include "bell/text_format.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace bell {

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    std::string tok;
    while (in >> tok) {
      // a '|' glued to numbers ("-1|1") is split off
      std::size_t start = 0;
      for (std::size_t i = 0; i <= tok.size(); ++i) {
        if (i == tok.size() || tok[i] == '|') {
          if (i > start) line.tokens.push_back(tok.substr(start, i - start));
          if (i < tok.size()) line.tokens.emplace_back("|");
          start = i + 1;
        }
      }
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

Coeff parse_int(const std::string& tok, int line) {
  Coeff v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && tok[0] == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ParseError(line, "expected an integer, got '" + tok + "'");
  return v;
}

} // namespace

Rational parse_rational(std::string_view token) {
  const std::string tok(token);
  const auto slash = tok.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(tok));
    const BigInt num(tok.substr(0, slash));
    const BigInt den(tok.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational number: '" + tok + "'");
  }
}

BellFunctional parse_functional(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty input, expected 'bell <ma> <mb> <bound>' header");

  const Line& head = lines[0];
  if (head.tokens.size() != 4 || head.tokens[0] != "bell") {
    throw ParseError(head.number, "malformed header, expected 'bell <ma> <mb> <bound>'");
  }
  const Coeff ma = parse_int(head.tokens[1], head.number);
  const Coeff mb = parse_int(head.tokens[2], head.number);
  if (ma < 1 || mb < 1 || ma > 30 || mb > 30) throw ParseError(head.number, "setting counts must be in 1..30");
  Rational bound;
  try {
    bound = parse_rational(head.tokens[3]);
  } catch (const std::invalid_argument& e) {
    throw ParseError(head.number, e.what());
  }

  BellFunctional f(Scenario(static_cast<int>(ma), static_cast<int>(mb)));
  f.bound = bound;

  if (lines.size() < 2) throw ParseError(head.number, "missing 'bob' marginal line");
  const Line& bob = lines[1];
  if (bob.tokens.empty() || bob.tokens[0] != "bob") throw ParseError(bob.number, "expected 'bob' marginal line");
  if (bob.tokens.size() != static_cast<std::size_t>(mb + 1)) {
    throw ParseError(bob.number, "expected " + std::to_string(mb) + " Bob marginals, got " +
                                     std::to_string(bob.tokens.size() - 1));
  }
  for (int y = 0; y < mb; ++y) f.bob_marg[static_cast<std::size_t>(y)] = parse_int(bob.tokens[static_cast<std::size_t>(y + 1)], bob.number);

  if (lines.size() != static_cast<std::size_t>(ma + 2)) {
    const int where = lines.size() > static_cast<std::size_t>(ma + 2) ? lines[static_cast<std::size_t>(ma + 2)].number
                                                                       : lines.back().number;
    throw ParseError(where, "expected " + std::to_string(ma) + " Alice rows, got " +
                                std::to_string(lines.size() - 2));
  }
  for (int x = 0; x < ma; ++x) {
    const Line& row = lines[static_cast<std::size_t>(x + 2)];
    if (row.tokens.size() != static_cast<std::size_t>(mb + 2) || row.tokens[1] != "|") {
      throw ParseError(row.number, "expected '<M(A)> | " + std::to_string(mb) + " coefficients'");
    }
    f.alice_marg[static_cast<std::size_t>(x)] = parse_int(row.tokens[0], row.number);
    for (int y = 0; y < mb; ++y) f.c(x, y) = parse_int(row.tokens[static_cast<std::size_t>(y + 2)], row.number);
  }
  return f;
}

std::string serialize_functional(const BellFunctional& f) {
  f.validate();
  std::ostringstream out;
  out << "bell " << f.scenario.ma << ' ' << f.scenario.mb << ' ' << rational_to_string(f.bound) << '\n';
  out << "bob";
  for (Coeff v : f.bob_marg) out << ' ' << v;
  out << '\n';
  for (int x = 0; x < f.scenario.ma; ++x) {
    out << f.alice_marg[static_cast<std::size_t>(x)] << " |";
    for (int y = 0; y < f.scenario.mb; ++y) out << ' ' << f.c(x, y);
    out << '\n';
  }
  return out.str();
}

nlohmann::json functional_to_json(const BellFunctional& f, const std::string& name) {
  f.validate();
  nlohmann::json j;
  if (!name.empty()) j["name"] = name;
  j["scenario"] = {{"ma", f.scenario.ma}, {"mb", f.scenario.mb}};
  j["alice_marg"] = f.alice_marg;
  j["bob_marg"] = f.bob_marg;
  nlohmann::json rows = nlohmann::json::array();
  for (int x = 0; x < f.scenario.ma; ++x) {
    std::vector<Coeff> row(f.corr.begin() + x * f.scenario.mb, f.corr.begin() + (x + 1) * f.scenario.mb);
    rows.push_back(row);
  }
  j["corr"] = rows;
  const BigInt num = boost::multiprecision::numerator(f.bound);
  const BigInt den = boost::multiprecision::denominator(f.bound);
  auto big = [](const BigInt& v) -> nlohmann::json {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
      return v.convert_to<std::int64_t>();
    return v.str();
  };
  j["bound"] = {{"num", big(num)}, {"den", big(den)}};
  return j;
}

BellFunctional functional_from_json(const nlohmann::json& j) {
  try {
    const Scenario sc(j.at("scenario").at("ma").get<int>(), j.at("scenario").at("mb").get<int>());
    BellFunctional f(sc);
    f.alice_marg = j.at("alice_marg").get<std::vector<Coeff>>();
    f.bob_marg = j.at("bob_marg").get<std::vector<Coeff>>();
    const auto& corr = j.at("corr");
    f.corr.clear();
    for (const auto& entry : corr) {
      if (entry.is_array()) {
        if (entry.size() != static_cast<std::size_t>(sc.mb)) throw StructuralError("corr row has wrong length");
        for (const auto& v : entry) f.corr.push_back(v.get<Coeff>());
      } else {
        f.corr.push_back(entry.get<Coeff>());
      }
    }
    auto big = [](const nlohmann::json& v) {
      return v.is_string() ? BigInt(v.get<std::string>()) : BigInt(v.get<std::int64_t>());
    };
    const auto& b = j.at("bound");
    const BigInt den = big(b.at("den"));
    if (den == 0) throw StructuralError("bound has zero denominator");
    f.bound = Rational(big(b.at("num")), den);
    f.validate();
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("invalid functional JSON: ") + e.what());
  }
}

BellFunctional read_functional_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return functional_from_json(nlohmann::json::parse(text));
  return parse_functional(text);
}

} // namespace bell
