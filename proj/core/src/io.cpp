#include "lmzv/io.hpp"

#include <fstream>
#include <sstream>

#include "lmzv/error.hpp"

namespace lmzv::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::uint64_t unsigned_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ParseError(std::string("field \"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::int64_t integer_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
  return v;
}

// Domain errors raised while rebuilding objects from a file are input errors.
template <typename F>
auto rethrow_as_parse(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

std::vector<Rational> values_from(const Json& arr, std::size_t expected) {
  if (arr.size() != expected) {
    throw ParseError("expected " + std::to_string(expected) + " values, got " + std::to_string(arr.size()));
  }
  std::vector<Rational> out;
  out.reserve(expected);
  for (const auto& v : arr) out.push_back(rational_from_json(v));
  return out;
}

ResidueGrid grid_from(const Json& j) {
  return rethrow_as_parse(
      [&] { return ResidueGrid(unsigned_field(j, "p"), unsigned_field(j, "n"), unsigned_field(j, "r")); });
}

Json grid_values(const ResidueGrid& g, const std::vector<Rational>& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(to_json(v));
  return Json{{"p", g.prime()}, {"n", g.level()}, {"r", g.depth()}, {"values", std::move(arr)}};
}

}  // namespace

Json to_json(const Rational& q) { return q.to_string(); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw ParseError("rational must be a \"num/den\" string");
}

Json to_json(const Valuation& v) {
  if (v.is_infinite()) return "+inf";
  return v.value();
}

Valuation valuation_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "+inf") return Valuation::infinite();
  if (j.is_number_integer()) return Valuation::finite(j.get<std::int64_t>());
  throw ParseError("valuation must be an integer or \"+inf\"");
}

Json to_json(const NCSeries& s) {
  Json terms = Json::array();
  for (const auto& t : s.terms()) {
    terms.push_back(Json{{"word", t.word.to_string(s.alphabet())}, {"coeff", to_json(t.coeff)}});
  }
  return Json{{"p", s.alphabet().prime()}, {"n", s.alphabet().level()}, {"D", s.degree()}, {"terms", std::move(terms)}};
}

NCSeries series_from_json(const Json& j) {
  return rethrow_as_parse([&] {
    const Alphabet a(unsigned_field(j, "p"), unsigned_field(j, "n"));
    NCSeries s(a, unsigned_field(j, "D"));
    for (const auto& t : array_field(j, "terms")) {
      const Json& word = field(t, "word");
      if (!word.is_string()) throw ParseError("word must be a string");
      const Monomial w = Monomial::parse(word.get<std::string>(), a);
      if (w.degree() > s.degree()) throw ParseError("term degree exceeds D");
      s.add_term(w, rational_from_json(field(t, "coeff")));
    }
    return s;
  });
}

Json to_json(const LevelMeasure& mu) { return grid_values(mu.grid(), mu.values()); }

LevelMeasure measure_from_json(const Json& j) {
  const ResidueGrid g = grid_from(j);
  return LevelMeasure(g, values_from(array_field(j, "values"), g.size()));
}

Json to_json(const LambdaTable& t) { return grid_values(t.grid(), t.values()); }

LambdaTable table_from_json(const Json& j) {
  const ResidueGrid g = grid_from(j);
  return LambdaTable(g, values_from(array_field(j, "values"), g.size()));
}

Json to_json(const PathCocycle& f) {
  Json out = Json::object();
  for (const auto& [name, s] : f.values()) out[name] = to_json(s);
  return out;
}

PathCocycle cocycle_from_json(const Json& j) {
  if (!j.is_object() || j.empty()) throw ParseError("cocycle must be a non-empty object of series");
  return rethrow_as_parse([&] {
    std::map<std::string, NCSeries> values;
    for (const auto& [name, s] : j.items()) values.emplace(name, series_from_json(s));
    const NCSeries& first = values.begin()->second;
    PathCocycle f(first.alphabet(), first.degree());
    for (auto& [name, s] : values) f.set(name, std::move(s));
    return f;
  });
}

Json to_json(const VanishingCertificate& c) {
  Json comb = Json::array();
  for (const auto& t : c.combination) comb.push_back(Json{{"q", t.q}, {"coeff", to_json(t.coeff)}});
  return Json{{"target", c.target}, {"combination", std::move(comb)}, {"p", c.p}, {"slack", c.slack}};
}

VanishingCertificate certificate_from_json(const Json& j) {
  VanishingCertificate c;
  for (const auto& t : array_field(j, "target")) {
    if (!t.is_number_integer() || t.get<std::int64_t>() < 0) throw ParseError("target entries must be non-negative");
    c.target.push_back(t.get<std::uint64_t>());
  }
  if (c.target.empty()) throw ParseError("certificate target is empty");
  for (const auto& t : array_field(j, "combination")) {
    c.combination.push_back({unsigned_field(t, "q"), rational_from_json(field(t, "coeff"))});
  }
  c.p = unsigned_field(j, "p");
  c.slack = integer_field(j, "slack");
  return c;
}

Json to_json(const CheckVerdict& v) {
  return Json{{"value", to_json(v.value)},
              {"valuation", to_json(v.valuation)},
              {"threshold", v.threshold},
              {"pass", v.pass}};
}

CheckVerdict verdict_from_json(const Json& j) {
  CheckVerdict v;
  v.value = rational_from_json(field(j, "value"));
  v.valuation = valuation_from_json(field(j, "valuation"));
  v.threshold = integer_field(j, "threshold");
  const Json& pass = field(j, "pass");
  if (!pass.is_boolean()) throw ParseError("pass must be a boolean");
  v.pass = pass.get<bool>();
  return v;
}

Json to_json(const KernelBasis& k) {
  Json out = Json::array();
  for (const auto& v : k.basis) out.push_back(to_json(v));
  return out;
}

KernelBasis kernel_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("kernel basis must be a non-empty array of measures");
  KernelBasis k{grid_from(j.front()), {}};
  for (const auto& m : j) {
    LevelMeasure mu = measure_from_json(m);
    if (!(mu.grid() == k.grid)) throw ParseError("kernel basis vectors live on different grids");
    k.basis.push_back(std::move(mu));
  }
  return k;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void write_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << dump(j);
}

}  // namespace lmzv::io
