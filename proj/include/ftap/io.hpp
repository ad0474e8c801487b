#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ftap/cone.hpp"
#include "ftap/market.hpp"

namespace ftap::io {

using json = nlohmann::json;

/// Malformed or invalid input. The message starts with "source:line:col:"
/// whenever a position is known.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Line and column (both 1-based) of every value in a JSON text, keyed by
/// JSON pointer. Built from text that already parsed.
class SourceMap {
public:
  SourceMap() = default;
  explicit SourceMap(std::string_view text);

  /// "line:col" of the value at `pointer`, or of its nearest ancestor.
  std::string locate(const std::string &pointer) const;

private:
  std::map<std::string, std::pair<std::size_t, std::size_t>> positions_;
};

/// A parsed document together with where it came from.
struct Document {
  std::string source;
  json value;
  SourceMap map;

  /// InputError anchored at the value under `pointer`.
  [[noreturn]] void fail(const std::string &pointer, const std::string &what) const;
};

/// Throws InputError with line:col on a syntax error.
Document parse_document(const std::string &text, const std::string &source);
Document read_document(const std::string &path);

std::string pointer_escape(const std::string &token);

/// Exact "p/q" or integer strings only.
Rational parse_rational(const Document &doc, const std::string &pointer);

/// {"outcomes": [{"id", "prob"}], "filtration": [[[ids]] per t],
///  "assets": [{"name", "path": {id: [value per t]}}]}
/// Every model invariant is checked here with a position attached.
MarketModel market_from_json(const Document &doc);
json market_to_json(const MarketModel &model);

/// {"payoff": {id: value}}; every outcome present, every value >= 0.
RandomVariable payoff_from_json(const Document &doc, const SpacePtr &space);

/// {"outcomes": [ids], "generators": [{id: value}], "includes_neg_orthant": bool}.
/// Probabilities are uniform; separation does not use them.
PolyhedralCone cone_from_json(const Document &doc);

/// Comma-separated rationals in outcome order.
RandomVariable vector_from_string(const std::string &text, const SpacePtr &space);

json to_json(const Rational &r);
/// {outcome id: value}.
json to_json(const RandomVariable &x);
json to_json(const SpacePtr &space, const std::vector<Rational> &values);
/// Nonzero holdings as [{"period", "asset", "cell": [ids], "holding"}].
json to_json(const MarketModel &model, const Strategy &strategy);

} // namespace ftap::io
