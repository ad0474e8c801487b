#pragma once

// CLI invocations with checked-in golden reports, shared by the CLI unit test
// and the acceptance run. Arguments use "@" for the test data directory.

#include <string>
#include <vector>

namespace ftap::golden {

struct Case {
  std::string file;
  std::vector<std::string> args;
  int exit_code;
};

inline std::vector<Case> json_cases() {
  return {
      {"check_all_binomial.json", {"check", "all", "@binomial.json"}, 0},
      {"check_all_trinomial.json", {"check", "all", "@trinomial.json"}, 0},
      {"check_all_dominance.json", {"check", "all", "@dominance.json"}, 1},
      {"check_na_dominance.json", {"check", "na", "@dominance.json"}, 1},
      {"check_na1_dominance.json", {"check", "na1", "@dominance.json"}, 1},
      {"check_nupbr_dominance.json", {"check", "nupbr", "@dominance.json"}, 1},
      {"emm_binomial.json", {"emm", "@binomial.json"}, 0},
      {"emm_trinomial.json", {"emm", "@trinomial.json"}, 0},
      {"emm_dominance.json", {"emm", "@dominance.json"}, 1},
      {"price_binomial_call.json", {"price", "@binomial.json", "@call.json"}, 0},
      {"price_binomial_zero.json", {"price", "@binomial.json", "@zero_payoff.json"}, 0},
      {"price_binomial_stock.json", {"price", "@binomial.json", "@stock_payoff.json"}, 0},
      {"counterexample_1.json", {"counterexample", "--n", "1"}, 0},
      {"counterexample_3.json", {"counterexample", "--n", "3"}, 0},
      {"counterexample_10.json", {"counterexample", "--n", "10"}, 0},
      {"verify_seed0.json", {"verify", "--seed", "0", "--instances", "10"}, 0},
      {"separate_orthant.json", {"separate", "@orthant_cone.json"}, 0},
      {"separate_contains_e1.json", {"separate", "@contains_e1_cone.json"}, 1},
      {"separate_tilted_target.json", {"separate", "@tilted_cone.json", "--target", "1,1"}, 0},
  };
}

inline std::vector<Case> text_cases() {
  return {
      {"check_all_binomial.txt", {"check", "all", "@binomial.json"}, 0},
      {"price_binomial_call.txt", {"price", "@binomial.json", "@call.json"}, 0},
      {"counterexample_3.txt", {"counterexample", "--n", "3"}, 0},
  };
}

/// Invocations that must fail with an input error (exit 2).
inline std::vector<std::vector<std::string>> input_error_cases() {
  return {
      {"check", "na", "@truncated.json"},
      {"check", "all", "@not_adapted.json"},
      {"emm", "@decimal.json"},
      {"price", "@binomial.json", "@negative_payoff.json"},
      {"counterexample", "--n", "0"},
      {"verify", "--instances", "0"},
      {"separate", "@tilted_cone.json", "--target", "1,-1"},
  };
}

inline std::vector<std::string> resolve(std::vector<std::string> args, const std::string &data_dir) {
  for (auto &a : args) {
    if (!a.empty() && a[0] == '@') a = data_dir + a.substr(1);
  }
  return args;
}

} // namespace ftap::golden
