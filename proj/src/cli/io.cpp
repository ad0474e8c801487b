#include "ftap/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "ftap/errors.hpp"

namespace ftap::io {

namespace {

/// Walks an already valid JSON text and records the offset of every value.
class Scanner {
public:
  Scanner(std::string_view text, std::map<std::string, std::size_t> &out)
      : text_(text), out_(out) {}

  void run() { value(""); }

private:
  void ws() {
    while (i_ < text_.size() && (text_[i_] == ' ' || text_[i_] == '\t' || text_[i_] == '\n' ||
                                 text_[i_] == '\r')) {
      ++i_;
    }
  }

  std::string string_token() {
    const std::size_t start = i_++;
    while (i_ < text_.size() && text_[i_] != '"') i_ += text_[i_] == '\\' ? 2 : 1;
    ++i_;
    return json::parse(text_.substr(start, i_ - start)).get<std::string>();
  }

  void value(const std::string &ptr) {
    ws();
    out_.emplace(ptr, i_);
    if (i_ >= text_.size()) return;
    const char c = text_[i_];
    if (c == '{') {
      ++i_;
      ws();
      if (text_[i_] == '}') {
        ++i_;
        return;
      }
      while (true) {
        ws();
        std::string key = string_token();
        ws();
        ++i_; // ':'
        value(ptr + "/" + pointer_escape(key));
        ws();
        if (text_[i_++] == '}') return;
      }
    }
    if (c == '[') {
      ++i_;
      ws();
      if (text_[i_] == ']') {
        ++i_;
        return;
      }
      for (std::size_t k = 0;; ++k) {
        value(ptr + "/" + std::to_string(k));
        ws();
        if (text_[i_++] == ']') return;
      }
    }
    if (c == '"') {
      string_token();
      return;
    }
    while (i_ < text_.size() && std::string_view(",]} \t\r\n").find(text_[i_]) == std::string_view::npos) {
      ++i_;
    }
  }

  std::string_view text_;
  std::map<std::string, std::size_t> &out_;
  std::size_t i_ = 0;
};

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string parent_of(const std::string &pointer) {
  auto cut = pointer.rfind('/');
  return cut == std::string::npos ? std::string() : pointer.substr(0, cut);
}

const json &at(const Document &doc, const std::string &pointer) {
  return doc.value.at(json::json_pointer(pointer));
}

const json &require_object(const Document &doc, const std::string &pointer) {
  const json &v = at(doc, pointer);
  if (!v.is_object()) doc.fail(pointer, "expected an object");
  return v;
}

const json &require_array(const Document &doc, const std::string &pointer) {
  const json &v = at(doc, pointer);
  if (!v.is_array()) doc.fail(pointer, "expected an array");
  return v;
}

std::string require_string(const Document &doc, const std::string &pointer) {
  const json &v = at(doc, pointer);
  if (!v.is_string()) doc.fail(pointer, "expected a string");
  return v.get<std::string>();
}

void require_member(const Document &doc, const std::string &pointer, const std::string &key) {
  if (!at(doc, pointer).contains(key)) doc.fail(pointer, "missing member \"" + key + "\"");
}

std::string cell_text(const SpacePtr &space, const Cell &cell) {
  std::string s = "{";
  for (std::size_t i = 0; i < cell.size(); ++i) {
    s += (i ? "," : "") + space->outcomes()[cell[i]];
  }
  return s + "}";
}

/// Reads a [[ids]] partition at `pointer`, checking it partitions the space.
Partition read_partition(const Document &doc, const std::string &pointer,
                         const std::map<std::string, std::size_t> &index) {
  const json &cells = require_array(doc, pointer);
  if (cells.empty()) doc.fail(pointer, "a partition needs at least one cell");
  Partition part;
  std::set<std::size_t> seen;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const std::string cp = pointer + "/" + std::to_string(c);
    const json &ids = require_array(doc, cp);
    if (ids.empty()) doc.fail(cp, "empty cell");
    Cell cell;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const std::string ip = cp + "/" + std::to_string(k);
      const std::string id = require_string(doc, ip);
      auto it = index.find(id);
      if (it == index.end()) doc.fail(ip, "unknown outcome \"" + id + "\"");
      if (!seen.insert(it->second).second) doc.fail(ip, "outcome \"" + id + "\" appears twice");
      cell.push_back(it->second);
    }
    std::sort(cell.begin(), cell.end());
    part.push_back(std::move(cell));
  }
  if (seen.size() != index.size()) doc.fail(pointer, "cells do not cover every outcome");
  return part;
}

} // namespace

SourceMap::SourceMap(std::string_view text) {
  std::map<std::string, std::size_t> offsets;
  Scanner(text, offsets).run();
  for (const auto &[ptr, off] : offsets) positions_.emplace(ptr, line_col(text, off));
}

std::string SourceMap::locate(const std::string &pointer) const {
  std::string p = pointer;
  while (true) {
    auto it = positions_.find(p);
    if (it != positions_.end()) {
      return std::to_string(it->second.first) + ":" + std::to_string(it->second.second);
    }
    if (p.empty()) return "1:1";
    p = parent_of(p);
  }
}

void Document::fail(const std::string &pointer, const std::string &what) const {
  throw InputError(source + ":" + map.locate(pointer) + ": " + (pointer.empty() ? "/" : pointer) +
                   ": " + what);
}

std::string pointer_escape(const std::string &token) {
  std::string out;
  for (char c : token) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

Document parse_document(const std::string &text, const std::string &source) {
  Document doc;
  doc.source = source;
  try {
    doc.value = json::parse(text);
  } catch (const json::parse_error &e) {
    auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    auto colon = what.find(": ", what.find("column"));
    if (colon != std::string::npos) what = what.substr(colon + 2);
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
  }
  doc.map = SourceMap(text);
  return doc;
}

Document read_document(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), path);
}

Rational parse_rational(const Document &doc, const std::string &pointer) {
  const json &v = at(doc, pointer);
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Rational::from_string(std::to_string(v.get<std::uint64_t>()));
    return Rational(v.get<std::int64_t>());
  }
  if (v.is_number_float()) doc.fail(pointer, "decimal numbers are not exact; write \"p/q\"");
  if (!v.is_string()) doc.fail(pointer, "expected a rational string \"p/q\"");
  auto r = Rational::parse(v.get<std::string>());
  if (!r) doc.fail(pointer, "\"" + v.get<std::string>() + "\" is not an exact rational \"p/q\"");
  return *r;
}

MarketModel market_from_json(const Document &doc) {
  require_object(doc, "");
  for (const char *key : {"outcomes", "filtration", "assets"}) require_member(doc, "", key);

  const json &outs = require_array(doc, "/outcomes");
  if (outs.empty()) doc.fail("/outcomes", "at least one outcome is required");
  std::vector<std::string> ids;
  std::vector<Rational> probs;
  std::map<std::string, std::size_t> index;
  Rational total;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    const std::string p = "/outcomes/" + std::to_string(i);
    require_object(doc, p);
    require_member(doc, p, "id");
    require_member(doc, p, "prob");
    std::string id = require_string(doc, p + "/id");
    if (!index.emplace(id, i).second) doc.fail(p + "/id", "duplicate outcome \"" + id + "\"");
    Rational prob = parse_rational(doc, p + "/prob");
    if (prob.sign() <= 0) doc.fail(p + "/prob", "probabilities must be positive");
    total += prob;
    ids.push_back(std::move(id));
    probs.push_back(prob);
  }
  if (total != 1) doc.fail("/outcomes", "probabilities sum to " + total.to_string() + ", not 1");
  auto space = SampleSpace::create(ids, probs);

  const json &filt = require_array(doc, "/filtration");
  if (filt.empty()) doc.fail("/filtration", "at least the time-0 partition is required");
  std::vector<Partition> parts;
  for (std::size_t t = 0; t < filt.size(); ++t) {
    const std::string p = "/filtration/" + std::to_string(t);
    parts.push_back(read_partition(doc, p, index));
    if (t == 0 && parts[0].size() != 1) doc.fail(p, "the time-0 partition must be trivial");
    if (t > 0) {
      for (std::size_t c = 0; c < parts[t].size(); ++c) {
        const Cell &cell = parts[t][c];
        bool inside = std::any_of(parts[t - 1].begin(), parts[t - 1].end(), [&](const Cell &parent) {
          return std::includes(parent.begin(), parent.end(), cell.begin(), cell.end());
        });
        if (!inside) {
          doc.fail(p + "/" + std::to_string(c),
                   "cell " + cell_text(space, cell) + " does not refine time " + std::to_string(t - 1));
        }
      }
    }
  }
  const std::size_t horizon = parts.size() - 1;
  if (parts.back().size() != ids.size()) {
    doc.fail("/filtration/" + std::to_string(horizon), "the final partition must separate every outcome");
  }

  const json &assets = require_array(doc, "/assets");
  std::vector<PricePath> paths;
  for (std::size_t a = 0; a < assets.size(); ++a) {
    const std::string p = "/assets/" + std::to_string(a);
    require_object(doc, p);
    require_member(doc, p, "name");
    require_member(doc, p, "path");
    PricePath path{require_string(doc, p + "/name"), {}};
    const json &by_id = require_object(doc, p + "/path");
    for (const auto &[key, _] : by_id.items()) {
      if (!index.count(key)) doc.fail(p + "/path/" + pointer_escape(key), "unknown outcome \"" + key + "\"");
    }
    std::vector<std::vector<Rational>> values(horizon + 1, std::vector<Rational>(ids.size()));
    for (std::size_t w = 0; w < ids.size(); ++w) {
      const std::string wp = p + "/path/" + pointer_escape(ids[w]);
      if (!by_id.contains(ids[w])) doc.fail(p + "/path", "no prices for outcome \"" + ids[w] + "\"");
      const json &seq = require_array(doc, wp);
      if (seq.size() != horizon + 1) {
        doc.fail(wp, "expected " + std::to_string(horizon + 1) + " prices, found " +
                         std::to_string(seq.size()));
      }
      for (std::size_t t = 0; t <= horizon; ++t) {
        Rational v = parse_rational(doc, wp + "/" + std::to_string(t));
        if (v.sign() < 0) doc.fail(wp + "/" + std::to_string(t), "prices must be nonnegative");
        values[t][w] = v;
      }
    }
    for (std::size_t t = 0; t <= horizon; ++t) {
      for (const Cell &cell : parts[t]) {
        for (std::size_t w : cell) {
          if (values[t][w] != values[t][cell.front()]) {
            doc.fail(p + "/path/" + pointer_escape(ids[w]) + "/" + std::to_string(t),
                     "price at time " + std::to_string(t) + " differs within cell " +
                         cell_text(space, cell) + " (not adapted)");
          }
        }
      }
      path.prices.emplace_back(space, values[t]);
    }
    paths.push_back(std::move(path));
  }

  try {
    return MarketModel(Filtration(space, parts), std::move(paths));
  } catch (const ContractViolation &e) {
    doc.fail("", e.what());
  }
}

json market_to_json(const MarketModel &model) {
  const auto &space = model.space();
  json out;
  out["outcomes"] = json::array();
  for (std::size_t w = 0; w < space->size(); ++w) {
    out["outcomes"].push_back({{"id", space->outcomes()[w]}, {"prob", to_json(space->probabilities()[w])}});
  }
  out["filtration"] = json::array();
  for (const auto &part : model.filtration().partitions()) {
    json cells = json::array();
    for (const auto &cell : part) {
      json c = json::array();
      for (std::size_t w : cell) c.push_back(space->outcomes()[w]);
      cells.push_back(c);
    }
    out["filtration"].push_back(cells);
  }
  out["assets"] = json::array();
  for (const auto &asset : model.assets()) {
    json path = json::object();
    for (std::size_t w = 0; w < space->size(); ++w) {
      json seq = json::array();
      for (const auto &x : asset.prices) seq.push_back(to_json(x[w]));
      path[space->outcomes()[w]] = seq;
    }
    out["assets"].push_back({{"name", asset.name}, {"path", path}});
  }
  return out;
}

RandomVariable payoff_from_json(const Document &doc, const SpacePtr &space) {
  require_object(doc, "");
  require_member(doc, "", "payoff");
  const json &obj = require_object(doc, "/payoff");
  for (const auto &[key, _] : obj.items()) {
    if (space->index_of(key) == space->size()) {
      doc.fail("/payoff/" + pointer_escape(key), "unknown outcome \"" + key + "\"");
    }
  }
  std::vector<Rational> v;
  for (const auto &id : space->outcomes()) {
    if (!obj.contains(id)) doc.fail("/payoff", "no value for outcome \"" + id + "\"");
    const std::string p = "/payoff/" + pointer_escape(id);
    v.push_back(parse_rational(doc, p));
    if (v.back().sign() < 0) doc.fail(p, "payoffs must be nonnegative");
  }
  return {space, std::move(v)};
}

PolyhedralCone cone_from_json(const Document &doc) {
  require_object(doc, "");
  for (const char *key : {"outcomes", "generators", "includes_neg_orthant"}) require_member(doc, "", key);
  const json &outs = require_array(doc, "/outcomes");
  if (outs.empty()) doc.fail("/outcomes", "at least one outcome is required");
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    const std::string p = "/outcomes/" + std::to_string(i);
    ids.push_back(require_string(doc, p));
    if (std::count(ids.begin(), ids.end(), ids.back()) > 1) doc.fail(p, "duplicate outcome \"" + ids.back() + "\"");
  }
  const Rational mass = Rational(1) / Rational(static_cast<std::int64_t>(ids.size()));
  auto space = SampleSpace::create(ids, std::vector<Rational>(ids.size(), mass));

  PolyhedralCone cone{space, {}, false};
  const json &flag = at(doc, "/includes_neg_orthant");
  if (!flag.is_boolean()) doc.fail("/includes_neg_orthant", "expected true or false");
  cone.includes_neg_orthant = flag.get<bool>();

  const json &gens = require_array(doc, "/generators");
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::string p = "/generators/" + std::to_string(g);
    const json &obj = require_object(doc, p);
    for (const auto &[key, _] : obj.items()) {
      if (space->index_of(key) == space->size()) {
        doc.fail(p + "/" + pointer_escape(key), "unknown outcome \"" + key + "\"");
      }
    }
    std::vector<Rational> v;
    for (const auto &id : ids) {
      if (!obj.contains(id)) doc.fail(p, "no value for outcome \"" + id + "\"");
      v.push_back(parse_rational(doc, p + "/" + pointer_escape(id)));
    }
    cone.generators.emplace_back(space, std::move(v));
  }
  return cone;
}

RandomVariable vector_from_string(const std::string &text, const SpacePtr &space) {
  std::vector<Rational> v;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto r = Rational::parse(item);
    if (!r) throw InputError("--target: \"" + item + "\" is not an exact rational \"p/q\"");
    v.push_back(*r);
  }
  if (!text.empty() && text.back() == ',') throw InputError("--target: trailing comma");
  if (v.size() != space->size()) {
    throw InputError("--target: expected " + std::to_string(space->size()) + " values, found " +
                     std::to_string(v.size()));
  }
  return {space, std::move(v)};
}

json to_json(const Rational &r) { return r.to_string(); }

json to_json(const SpacePtr &space, const std::vector<Rational> &values) {
  json out = json::object();
  for (std::size_t w = 0; w < values.size(); ++w) out[space->outcomes()[w]] = to_json(values[w]);
  return out;
}

json to_json(const RandomVariable &x) { return to_json(x.space(), x.values()); }

json to_json(const MarketModel &model, const Strategy &strategy) {
  json out = json::array();
  const auto &space = model.space();
  for (const auto &t : elementary_trades(model)) {
    const Rational &h = strategy.holding(t.period, t.asset, t.cell);
    if (h.is_zero()) continue;
    json cell = json::array();
    for (std::size_t w : model.filtration().at(t.period - 1)[t.cell]) cell.push_back(space->outcomes()[w]);
    out.push_back({{"period", t.period},
                   {"asset", model.assets()[t.asset].name},
                   {"cell", cell},
                   {"holding", to_json(h)}});
  }
  return out;
}

} // namespace ftap::io
