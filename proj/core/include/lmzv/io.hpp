#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "lmzv/arith.hpp"
#include "lmzv/euler.hpp"
#include "lmzv/measures.hpp"
#include "lmzv/ncseries.hpp"
#include "lmzv/paths.hpp"
#include "lmzv/rational.hpp"
#include "lmzv/synth.hpp"

namespace lmzv::io {

using Json = nlohmann::json;

// Every reader throws ParseError on malformed or inconsistent input.

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

/// Integer, or the string "+inf".
Json to_json(const Valuation& v);
Valuation valuation_from_json(const Json& j);

/// {"p", "n", "D", "terms": [{"word", "coeff"}]}, terms in word order.
Json to_json(const NCSeries& s);
NCSeries series_from_json(const Json& j);

/// {"p", "n", "r", "values": [...]} row-major.
Json to_json(const LevelMeasure& mu);
LevelMeasure measure_from_json(const Json& j);
Json to_json(const LambdaTable& t);
LambdaTable table_from_json(const Json& j);

/// {path name -> series}.
Json to_json(const PathCocycle& f);
PathCocycle cocycle_from_json(const Json& j);

/// {"target", "combination": [{"q", "coeff"}], "p", "slack"}.
Json to_json(const VanishingCertificate& c);
VanishingCertificate certificate_from_json(const Json& j);

/// {"value", "valuation", "threshold", "pass"}.
Json to_json(const CheckVerdict& v);
CheckVerdict verdict_from_json(const Json& j);

/// Array of measure objects.
Json to_json(const KernelBasis& k);
KernelBasis kernel_from_json(const Json& j);

/// Two-space indented dump with a trailing newline; keys come out sorted.
std::string dump(const Json& j);
Json parse(const std::string& text);
Json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const Json& j);

}  // namespace lmzv::io
