#include "ftap/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ftap/concept_lab.hpp"
#include "ftap/errors.hpp"
#include "ftap/io.hpp"
#include "ftap/market.hpp"
#include "ftap/na_concepts.hpp"
#include "ftap/separation.hpp"

namespace ftap::cli {

namespace {

using io::json;

struct Table {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void print(std::ostream &os) const {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto &row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    auto line = [&](const std::vector<std::string> &cells) {
      std::ostringstream row;
      row << " ";
      for (std::size_t c = 0; c < cells.size(); ++c) {
        row << " " << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
      }
      std::string text = row.str();
      text.erase(text.find_last_not_of(' ') + 1);
      os << text << "\n";
    };
    os << title << "\n";
    line(header);
    std::vector<std::string> rule;
    for (auto w : width) rule.emplace_back(w, '-');
    line(rule);
    for (const auto &row : rows) line(row);
  }
};

/// Command result: the JSON report, its human rendering, and the exit code.
struct Result {
  json report;
  std::vector<std::string> lines;
  std::vector<Table> tables;
  int code = kHolds;
};

void require(bool ok, const std::string &what) {
  if (!ok) throw InternalInconsistency("witness failed re-verification: " + what);
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

json base_report(const std::string &command) {
  return {{"command", command}, {"exact", true}, {"verdicts", json::object()},
          {"witnesses", json::object()}};
}

Table verdict_table(const json &verdicts) {
  Table t{"verdicts", {"concept", "holds"}, {}};
  for (const auto &[k, v] : verdicts.items()) t.rows.push_back({k, yes_no(v.get<bool>())});
  return t;
}

Table vector_table(const std::string &title, const SpacePtr &space,
                   const std::vector<std::pair<std::string, std::vector<Rational>>> &columns) {
  Table t{title, {"outcome"}, {}};
  for (const auto &c : columns) t.header.push_back(c.first);
  for (std::size_t w = 0; w < space->size(); ++w) {
    std::vector<std::string> row{space->outcomes()[w]};
    for (const auto &c : columns) row.push_back(c.second[w].to_string());
    t.rows.push_back(row);
  }
  return t;
}

Table strategy_table(const std::string &title, const json &strategy) {
  Table t{title, {"period", "asset", "cell", "holding"}, {}};
  for (const auto &h : strategy) {
    std::string cell;
    for (const auto &id : h["cell"]) cell += (cell.empty() ? "" : ",") + id.get<std::string>();
    t.rows.push_back({std::to_string(h["period"].get<std::size_t>()), h["asset"].get<std::string>(),
                      "{" + cell + "}", h["holding"].get<std::string>()});
  }
  if (t.rows.empty()) t.rows.push_back({"-", "-", "-", "0"});
  return t;
}

/// Arbitrage witness, re-verified: payoff >= 0, nonzero, and equal to the
/// gain of the strategy.
json arbitrage_witness(const MarketModel &model, const Strategy &xi, const RandomVariable &payoff,
                       Result &res) {
  auto gain = terminal_gain(model, xi);
  require(gain == payoff && is_nonneg(gain) && !is_zero(gain), "arbitrage payoff");
  json w{{"strategy", io::to_json(model, xi)}, {"payoff", io::to_json(gain)}};
  res.tables.push_back(strategy_table("arbitrage strategy", w["strategy"]));
  res.tables.push_back(vector_table("arbitrage payoff", model.space(), {{"payoff", gain.values()}}));
  return w;
}

json measure_witness(const MarketModel &model, const Measure &q, Result &res) {
  require(verify_emm(model, q), "martingale measure");
  auto density = q.density();
  res.tables.push_back(vector_table("equivalent martingale measure", model.space(),
                                    {{"q", q.weights}, {"dQ/dP", density}}));
  return {{"measure", io::to_json(model.space(), q.weights)},
          {"density", io::to_json(model.space(), density)}};
}

Result cmd_check(const std::string &query, const MarketModel &model) {
  Result res;
  res.report = base_report("check");
  res.report["concept"] = query;
  json &verdicts = res.report["verdicts"];
  json &witnesses = res.report["witnesses"];
  bool holds = false;

  if (query == "na") {
    auto na = check_na(model);
    holds = na.holds;
    verdicts["na"] = holds;
    if (!holds) witnesses["arbitrage"] = arbitrage_witness(model, *na.arbitrage, *na.payoff, res);
  } else if (query == "na1") {
    holds = check_na1(model);
    verdicts["na1"] = holds;
    if (!holds) {
      // An outcome indicator with superreplication price 0.
      for (std::size_t w = 0; w < model.space()->size(); ++w) {
        auto e = RandomVariable::indicator(model.space(), w);
        auto price = superreplication_price(model, e);
        if (!price.price.is_zero()) continue;
        require(leq(e, terminal_gain(model, price.strategy)), "zero-cost superhedge");
        witnesses["zero_price_outcome"] = model.space()->outcomes()[w];
        witnesses["superhedge"] = io::to_json(model, price.strategy);
        res.lines.push_back("outcome " + model.space()->outcomes()[w] +
                            " is superreplicated at price 0");
        res.tables.push_back(strategy_table("zero-cost superhedge", witnesses["superhedge"]));
        break;
      }
      require(witnesses.contains("zero_price_outcome"), "no zero-price outcome found");
    }
  } else if (query == "nupbr") {
    holds = check_nupbr(model);
    verdicts["nupbr"] = holds;
    if (!holds) {
      // 1 + k * g stays in the unit-wealth payoff set for every k >= 0.
      auto na = check_na(model);
      require(!na.holds, "unbounded payoff set without an arbitrage");
      witnesses["unbounded_direction"] = arbitrage_witness(model, *na.arbitrage, *na.payoff, res);
    }
  } else {
    auto v = full_verdict(model);
    holds = v.na;
    verdicts = {{"na", v.na},       {"na1", v.na1},           {"nupbr", v.nupbr},
                {"nfl_equiv", v.nfl_equiv}, {"emm_exists", v.emm_exists},
                {"separator_exists", v.separator_exists}};
    auto emm = find_emm(model);
    if (emm.measure) {
      witnesses["emm"] = measure_witness(model, *emm.measure, res);
    } else {
      witnesses["arbitrage"] = arbitrage_witness(model, *emm.arbitrage, *emm.payoff, res);
    }
  }
  res.report["holds"] = holds;
  res.code = holds ? kHolds : kFails;
  res.lines.insert(res.lines.begin(), "check " + query + ": " + (holds ? "holds" : "fails"));
  res.tables.insert(res.tables.begin(), verdict_table(verdicts));
  return res;
}

Result cmd_emm(const MarketModel &model) {
  Result res;
  res.report = base_report("emm");
  auto emm = find_emm(model);
  res.report["verdicts"]["emm_exists"] = emm.measure.has_value();
  if (!emm.measure) {
    res.report["measure"] = "none";
    res.report["witnesses"]["arbitrage"] = arbitrage_witness(model, *emm.arbitrage, *emm.payoff, res);
    res.lines.push_back("no equivalent martingale measure; the market admits an arbitrage");
    res.code = kFails;
    return res;
  }
  const Measure &q = *emm.measure;
  auto w = measure_witness(model, q, res);
  res.report["measure"] = w["measure"];
  res.report["density"] = w["density"];
  res.report["witnesses"]["emm"] = w;

  json residuals = json::array();
  Table t{"martingale residuals", {"period", "asset", "cell", "residual"}, {}};
  for (const auto &trade : elementary_trades(model)) {
    Rational r = expectation(elementary_gain(model, trade), q.weights);
    require(r.is_zero(), "martingale residual");
    json cell = json::array();
    std::string cell_text;
    for (std::size_t o : model.filtration().at(trade.period - 1)[trade.cell]) {
      cell.push_back(model.space()->outcomes()[o]);
      cell_text += (cell_text.empty() ? "" : ",") + model.space()->outcomes()[o];
    }
    const auto &name = model.assets()[trade.asset].name;
    residuals.push_back({{"period", trade.period}, {"asset", name}, {"cell", cell}, {"residual", io::to_json(r)}});
    t.rows.push_back({std::to_string(trade.period), name, "{" + cell_text + "}", r.to_string()});
  }
  res.report["residuals"] = residuals;
  res.tables.push_back(t);
  res.lines.push_back("equivalent martingale measure found (max-min weight)");
  return res;
}

Result cmd_price(const MarketModel &model, const RandomVariable &payoff) {
  Result res;
  res.report = base_report("price");
  auto p = superreplication_price(model, payoff);
  auto wealth = RandomVariable::constant(model.space(), p.price) + terminal_gain(model, p.strategy);
  require(leq(payoff, wealth), "superhedge dominates the payoff");
  res.report["price"] = io::to_json(p.price);
  res.report["strategy"] = io::to_json(model, p.strategy);
  res.report["verdicts"]["na"] = p.na_holds;
  res.report["witnesses"]["superhedge"] = {{"initial_capital", io::to_json(p.price)},
                                           {"strategy", res.report["strategy"]},
                                           {"terminal_wealth", io::to_json(wealth)}};
  res.lines.push_back("superreplication price: " + p.price.to_string());
  if (!p.na_holds) res.lines.push_back("warning: the market admits an arbitrage");
  res.tables.push_back(strategy_table("superhedging strategy", res.report["strategy"]));
  res.tables.push_back(vector_table("terminal wealth", model.space(),
                                    {{"payoff", payoff.values()}, {"wealth", wealth.values()}}));
  return res;
}

Result cmd_counterexample(long long n) {
  if (n < 1) throw ContractViolation("counterexample: --n must be at least 1");
  Result res;
  auto rep = counterexample_report({static_cast<std::size_t>(n)});
  res.report = base_report("counterexample");
  res.report["n"] = rep.truncation;
  res.report["sup_l2_squared"] = io::to_json(rep.sup_l2_squared);
  res.report["linf_bound"] = io::to_json(rep.linf_bound);
  res.report["min_indicator_minkowski"] = io::to_json(rep.min_indicator_minkowski);
  res.report["zero_set_trivial"] = rep.zero_set_trivial;
  json gauges = json::array();
  for (const auto &g : rep.indicator_gauges) gauges.push_back(io::to_json(g));
  res.report["indicator_gauges"] = gauges;
  res.report["verdicts"]["zero_set_trivial"] = rep.zero_set_trivial;
  const std::string last = "k" + std::to_string(rep.truncation);
  res.report["witnesses"] = {{"l2_maximizer", last}, {"min_gauge_outcome", last}};
  res.lines.push_back("truncated sequence example, N = " + std::to_string(rep.truncation));
  res.tables.push_back(Table{"summary",
                             {"quantity", "value"},
                             {{"sup ||x||^2 over B", rep.sup_l2_squared.to_string()},
                              {"l-inf bound", rep.linf_bound.to_string()},
                              {"min_k p_B(e_k)", rep.min_indicator_minkowski.to_string()},
                              {"zero set trivial", yes_no(rep.zero_set_trivial)}}});
  return res;
}

Result cmd_verify(std::uint64_t seed, std::size_t instances, bool self_test) {
  Result res;
  LemmaSuiteOptions opts;
  if (self_test) opts.membership = mutated_membership;
  auto rep = verify_lemma_suite(seed, instances, opts);
  res.report = base_report("verify");
  res.report["seed"] = rep.seed;
  res.report["instances"] = rep.instances;
  res.report["self_test"] = self_test;
  res.report["total_checks"] = rep.total_checks();
  res.report["total_violations"] = rep.total_violations();
  json tallies = json::array();
  Table t{"lemma tallies", {"statement", "checks", "violations"}, {}};
  for (const auto &tally : rep.tallies) {
    tallies.push_back({{"lemma", tally.lemma}, {"checks", tally.checks}, {"violations", tally.violations}});
    t.rows.push_back({tally.lemma, std::to_string(tally.checks), std::to_string(tally.violations)});
  }
  res.report["tallies"] = tallies;
  res.report["verdicts"]["all_hold"] = rep.total_violations() == 0;
  if (rep.first_violation) {
    res.report["witnesses"]["first_violation"] = {{"instance", rep.first_violation->instance},
                                                  {"lemma", rep.first_violation->lemma},
                                                  {"detail", rep.first_violation->detail}};
  }
  res.report["first_violation"] = rep.first_violation ? res.report["witnesses"]["first_violation"] : json();
  res.lines.push_back("lemma suite, seed " + std::to_string(seed) + ", " + std::to_string(instances) +
                      " instances" + (self_test ? " (mutated membership)" : "") + ": " +
                      std::to_string(rep.total_violations()) + " violations in " +
                      std::to_string(rep.total_checks()) + " checks");
  res.tables.push_back(t);
  if (rep.first_violation) {
    res.lines.push_back("first violation: instance " + std::to_string(rep.first_violation->instance) +
                        ", " + rep.first_violation->lemma + ": " + rep.first_violation->detail);
  }
  if (self_test && rep.total_violations() == 0) {
    throw InternalInconsistency("self-test: the injected membership fault went undetected");
  }
  res.code = rep.total_violations() == 0 ? kHolds : kFails;
  return res;
}

Result cmd_separate(const PolyhedralCone &cone, const std::optional<std::string> &target_text) {
  Result res;
  res.report = base_report("separate");
  const auto &space = cone.space;
  if (target_text) {
    auto target = io::vector_from_string(*target_text, space);
    res.report["target"] = io::to_json(target);
    auto rep = separate_at(cone, target);
    res.report["verdicts"]["separated"] = rep.has_value();
    if (!rep) {
      auto m = cone_membership(cone, target);
      require(m.member, "target inside the cone");
      json weights = json::array();
      for (const auto &w : m.weights) weights.push_back(io::to_json(w));
      res.report["functional"] = "none";
      res.report["witnesses"]["membership"] = {{"weights", weights},
                                               {"slack", m.slack ? io::to_json(*m.slack) : json()}};
      res.lines.push_back("target lies in the cone; no separating functional");
      res.code = kFails;
      return res;
    }
    require(verify_separator(cone, rep->functional) && rep->functional(target) == 1, "separator");
    res.report["functional"] = io::to_json(space, rep->functional.coefficients);
    res.report["verified_on"] = rep->verified_on;
    res.report["witnesses"]["separator"] = res.report["functional"];
    res.lines.push_back("separating functional with f(target) = 1, nonpositive on " +
                        std::to_string(rep->verified_on) + " generators");
    res.tables.push_back(vector_table("functional", space, {{"coefficient", rep->functional.coefficients}}));
    return res;
  }

  auto strict = strict_separator(cone);
  res.report["verdicts"]["strict_separator_exists"] = strict.report.has_value();
  if (!strict.report) {
    require(strict.violating && cone_member(cone, *strict.violating), "violating direction");
    res.report["functional"] = "none";
    res.report["violating"] = io::to_json(*strict.violating);
    res.report["witnesses"]["violating"] = res.report["violating"];
    res.lines.push_back("no strictly positive separator; an outcome indicator lies in the cone");
    res.tables.push_back(vector_table("violating direction", space, {{"value", strict.violating->values()}}));
    res.code = kFails;
    return res;
  }
  const auto &f = strict.report->functional;
  require(verify_separator(cone, f) && f.is_strictly_positive(), "strict separator");
  auto q = functional_to_measure(f);
  res.report["functional"] = io::to_json(space, f.coefficients);
  res.report["verified_on"] = strict.report->verified_on;
  res.report["measure"] = io::to_json(space, q.measure.weights);
  res.report["scale"] = io::to_json(q.scale);
  res.report["witnesses"]["separator"] = res.report["functional"];
  res.lines.push_back("strictly positive separating functional; f = " + q.scale.to_string() +
                      " * E_Q (uniform reference measure)");
  res.tables.push_back(vector_table("functional", space,
                                    {{"coefficient", f.coefficients}, {"q", q.measure.weights}}));
  return res;
}

void emit(const Result &res, bool as_json, std::ostream &out) {
  if (as_json) {
    out << res.report.dump(2) << "\n";
    return;
  }
  for (const auto &l : res.lines) out << l << "\n";
  for (const auto &t : res.tables) {
    out << "\n";
    t.print(out);
  }
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Exact no-arbitrage analysis of finite markets", "ftap"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable JSON report");

  std::string query, market_path, payoff_path, cone_path;
  auto *check = app.add_subcommand("check", "Decide a no-arbitrage query (exit 0 holds, 1 fails)");
  check->add_option("concept", query, "na | na1 | nupbr | all")
      ->required()
      ->check(CLI::IsMember({"na", "na1", "nupbr", "all"}));
  check->add_option("market", market_path, "Market JSON file")->required();

  auto *emm = app.add_subcommand("emm", "Equivalent martingale measure with density");
  emm->add_option("market", market_path, "Market JSON file")->required();

  auto *price = app.add_subcommand("price", "Superreplication price and strategy");
  price->add_option("market", market_path, "Market JSON file")->required();
  price->add_option("payoff", payoff_path, "Payoff JSON file")->required();

  long long n = 0;
  auto *counter = app.add_subcommand("counterexample", "Truncated sequence-space example");
  counter->add_option("--n", n, "Truncation N >= 1")->required();

  std::uint64_t seed = 0;
  long long instances = 100;
  bool self_test = false;
  auto *verify = app.add_subcommand("verify", "Randomized lemma suite (exit 0 iff no violations)");
  verify->add_option("--seed", seed, "Seed")->capture_default_str();
  verify->add_option("--instances", instances, "Number of instances")->capture_default_str();
  verify->add_flag("--self-test", self_test, "Inject a faulty membership test; must be detected");

  std::optional<std::string> target;
  auto *separate = app.add_subcommand("separate", "Separating functional for a cone file");
  separate->add_option("cone", cone_path, "Cone JSON file")->required();
  separate->add_option("--target", target, "Comma-separated values in outcome order");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kHolds : kInputError;
  }

  try {
    Result res;
    if (check->parsed()) {
      res = cmd_check(query, io::market_from_json(io::read_document(market_path)));
    } else if (emm->parsed()) {
      res = cmd_emm(io::market_from_json(io::read_document(market_path)));
    } else if (price->parsed()) {
      auto model = io::market_from_json(io::read_document(market_path));
      res = cmd_price(model, io::payoff_from_json(io::read_document(payoff_path), model.space()));
    } else if (counter->parsed()) {
      res = cmd_counterexample(n);
    } else if (verify->parsed()) {
      if (instances < 0) throw ContractViolation("verify: --instances must be at least 1");
      res = cmd_verify(seed, static_cast<std::size_t>(instances), self_test);
    } else {
      res = cmd_separate(io::cone_from_json(io::read_document(cone_path)), target);
    }
    emit(res, as_json, out);
    return res.code;
  } catch (const io::InputError &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ContractViolation &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const StructuralError &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const AgreementError &e) {
    err << "internal error: " << e.what() << "\n";
    err << io::market_to_json(e.model()).dump() << "\n";
    return kInternal;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

} // namespace ftap::cli
