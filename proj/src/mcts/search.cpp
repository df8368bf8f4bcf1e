#include "azsweep/mcts/search.hpp"

#include <numeric>

namespace azsweep::mcts {

int argmax_action(std::span<const double> policy) {
  if (policy.empty()) throw ContractViolation("empty policy");
  std::size_t best = 0;
  for (std::size_t i = 1; i < policy.size(); ++i) {
    if (policy[i] > policy[best]) best = i;
  }
  return static_cast<int>(best);
}

int select_action(std::span<const double> policy, int game_step, int temp_threshold, Rng& rng) {
  const double total = std::accumulate(policy.begin(), policy.end(), 0.0);
  if (!(std::abs(total - 1.0) < 1e-6)) {
    throw ContractViolation(fmt::format("policy sums to {}, expected 1", total));
  }
  if (game_step >= temp_threshold) return argmax_action(policy);

  const double u = uniform01(rng) * total;
  double acc = 0.0;
  int last_positive = -1;
  for (std::size_t i = 0; i < policy.size(); ++i) {
    if (policy[i] <= 0.0) continue;
    last_positive = static_cast<int>(i);
    acc += policy[i];
    if (u < acc) return static_cast<int>(i);
  }
  // Rounding can leave u just above the accumulated mass.
  return last_positive;
}

std::string format_root_table(const SearchResult& result,
                              const std::function<std::string(int)>& action_name) {
  std::string out = fmt::format("{:>6} {:>6} {:>9} {:>8} {:>8}\n", "move", "N", "Q", "P", "pi");
  for (const EdgeStats& e : result.root) {
    out += fmt::format("{:>6} {:>6} {:>9.4f} {:>8.4f} {:>8.4f}\n", action_name(e.action), e.visits,
                       e.q(), e.prior, result.policy[static_cast<std::size_t>(e.action)]);
  }
  out += fmt::format("root value {:.4f}\n", result.root_value);
  return out;
}

}  // namespace azsweep::mcts
