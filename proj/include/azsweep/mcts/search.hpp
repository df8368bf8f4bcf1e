#pragma once

// PUCT Monte-Carlo tree search over any state type that specializes
// GameTraits. Each simulation walks from the (pre-expanded) root, picking the
// edge maximizing
//
//   Q(s,a) + cpuct * P(s,a) * sqrt(sum_b N(s,b) + 1e-8) / (1 + N(s,a))
//
// with Q = 0 for unvisited edges and ties going to the lowest action index.
// The first unexpanded node reached is evaluated once and its value is backed
// up with a sign flip per ply. Terminal nodes back up the exact game result.

#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "azsweep/util/errors.hpp"
#include "azsweep/util/random.hpp"

namespace azsweep::mcts {

// Specialize with static members:
//   int action_count(const State&)
//   std::vector<int> legal_actions(const State&)       (non-terminal states only)
//   State apply(const State&, int action)
//   std::optional<double> terminal_value(const State&) (player-to-move view)
template <class State>
struct GameTraits;

template <class State>
concept Searchable = requires(const State& s, int a) {
  { GameTraits<State>::action_count(s) } -> std::convertible_to<int>;
  { GameTraits<State>::legal_actions(s) } -> std::convertible_to<std::vector<int>>;
  { GameTraits<State>::apply(s, a) } -> std::convertible_to<State>;
  { GameTraits<State>::terminal_value(s) } -> std::convertible_to<std::optional<double>>;
};

// Priors span all actions (illegal entries are ignored); value is in [-1, 1]
// for the player to move.
struct Evaluation {
  std::vector<double> priors;
  double value = 0.0;
};

template <class State>
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual Evaluation evaluate(const State& state) const = 0;
};

template <Searchable State>
class UniformEvaluator final : public Evaluator<State> {
 public:
  Evaluation evaluate(const State& state) const override {
    const int n = GameTraits<State>::action_count(state);
    return {std::vector<double>(static_cast<std::size_t>(n), 1.0), 0.0};
  }
};

struct SearchOptions {
  double cpuct = 1.0;
  int simulations = 100;
};

struct EdgeStats {
  int action = 0;
  double prior = 0.0;
  int visits = 0;
  double total_value = 0.0;

  double q() const { return visits > 0 ? total_value / visits : 0.0; }
};

struct SearchResult {
  std::vector<double> policy;   // visit distribution over all actions
  std::vector<EdgeStats> root;  // legal root edges, ascending action
  double root_value = 0.0;      // evaluator's value for the root
  std::int64_t evaluations = 0;
};

inline constexpr double kSqrtFloor = 1e-8;

template <Searchable State>
class SearchTree {
  using Traits = GameTraits<State>;

 public:
  SearchTree(State root, const Evaluator<State>& evaluator, SearchOptions options)
      : evaluator_(evaluator), options_(options) {
    if (!(options.cpuct > 0.0)) throw ContractViolation("cpuct must be positive");
    if (Traits::terminal_value(root)) throw ContractViolation("search root is terminal");
    nodes_.push_back(Node{std::move(root)});
    root_value_ = expand(0);
  }

  // Runs one descent and returns the value credited to each edge on the path,
  // root edge first, each from the perspective of the player choosing it.
  std::vector<double> simulate() {
    std::vector<std::pair<std::size_t, std::size_t>> path;
    std::size_t node = 0;
    double leaf_value = 0.0;
    while (true) {
      const std::size_t e = select_edge(node);
      path.emplace_back(node, e);
      Edge& edge = nodes_[node].edges[e];
      if (edge.child < 0) {
        State child_state = Traits::apply(nodes_[node].state, edge.action);
        nodes_.push_back(Node{std::move(child_state)});
        // nodes_ may have reallocated; re-index the edge.
        nodes_[node].edges[e].child = static_cast<std::ptrdiff_t>(nodes_.size() - 1);
        leaf_value = expand(nodes_.size() - 1);
        break;
      }
      const auto child = static_cast<std::size_t>(edge.child);
      if (nodes_[child].terminal) {
        leaf_value = *nodes_[child].terminal_value;
        break;
      }
      node = child;
    }

    std::vector<double> credited(path.size());
    double v = leaf_value;
    for (std::size_t i = path.size(); i-- > 0;) {
      v = -v;
      Edge& edge = nodes_[path[i].first].edges[path[i].second];
      edge.visits += 1;
      edge.total_value += v;
      credited[i] = v;
    }
    return credited;
  }

  SearchResult result() const {
    SearchResult out;
    const Node& root = nodes_[0];
    out.policy.assign(static_cast<std::size_t>(Traits::action_count(root.state)), 0.0);
    int total = 0;
    for (const Edge& e : root.edges) total += e.visits;
    for (const Edge& e : root.edges) {
      out.root.push_back({e.action, e.prior, e.visits, e.total_value});
      if (total > 0) {
        out.policy[static_cast<std::size_t>(e.action)] = static_cast<double>(e.visits) / total;
      }
    }
    out.root_value = root_value_;
    out.evaluations = evaluations_;
    return out;
  }

  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Edge {
    int action = 0;
    double prior = 0.0;
    int visits = 0;
    double total_value = 0.0;
    std::ptrdiff_t child = -1;
  };

  struct Node {
    explicit Node(State s) : state(std::move(s)) {}

    State state;
    bool terminal = false;
    std::optional<double> terminal_value;
    std::vector<Edge> edges;
  };

  // Evaluates a fresh node and returns its value for the player to move.
  double expand(std::size_t index) {
    Node& node = nodes_[index];
    if (auto tv = Traits::terminal_value(node.state)) {
      node.terminal = true;
      node.terminal_value = *tv;
      return *tv;
    }
    Evaluation eval = evaluator_.evaluate(node.state);
    ++evaluations_;
    const int n = Traits::action_count(node.state);
    if (!std::isfinite(eval.value) || std::abs(eval.value) > 1.0) {
      throw NumericError(fmt::format("evaluator returned value {} (expected finite, in [-1, 1])",
                                     eval.value));
    }
    if (eval.priors.size() != static_cast<std::size_t>(n)) {
      throw ContractViolation(
          fmt::format("evaluator returned {} priors for {} actions", eval.priors.size(), n));
    }
    const std::vector<int> legal = Traits::legal_actions(node.state);
    double mass = 0.0;
    for (int a : legal) {
      const double p = eval.priors[static_cast<std::size_t>(a)];
      if (!std::isfinite(p) || p < 0.0) {
        throw NumericError(fmt::format("evaluator returned prior {} for action {}", p, a));
      }
      mass += p;
    }
    nodes_[index].edges.reserve(legal.size());
    for (int a : legal) {
      const double p = mass > 0.0 ? eval.priors[static_cast<std::size_t>(a)] / mass
                                  : 1.0 / static_cast<double>(legal.size());
      nodes_[index].edges.push_back(Edge{a, p});
    }
    return eval.value;
  }

  std::size_t select_edge(std::size_t index) const {
    const Node& node = nodes_[index];
    int parent_visits = 0;
    for (const Edge& e : node.edges) parent_visits += e.visits;
    const double sqrt_n = std::sqrt(static_cast<double>(parent_visits) + kSqrtFloor);
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < node.edges.size(); ++i) {
      const Edge& e = node.edges[i];
      const double q = e.visits > 0 ? e.total_value / e.visits : 0.0;
      const double score = q + options_.cpuct * e.prior * sqrt_n / (1.0 + e.visits);
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    return best;
  }

  const Evaluator<State>& evaluator_;
  SearchOptions options_;
  std::vector<Node> nodes_;
  double root_value_ = 0.0;
  std::int64_t evaluations_ = 0;
};

template <Searchable State>
SearchResult search(const State& root, const Evaluator<State>& evaluator, SearchOptions options) {
  if (options.simulations < 1) throw ContractViolation("simulations must be >= 1");
  SearchTree<State> tree(root, evaluator, options);
  for (int i = 0; i < options.simulations; ++i) tree.simulate();
  return tree.result();
}

// Temperature rule: sample proportionally to `policy` while
// game_step < temp_threshold, otherwise argmax with ties to the lowest index.
int select_action(std::span<const double> policy, int game_step, int temp_threshold, Rng& rng);

int argmax_action(std::span<const double> policy);

// Debug dump of the root's (N, Q, P) statistics, one edge per line.
std::string format_root_table(const SearchResult& result,
                              const std::function<std::string(int)>& action_name);

}  // namespace azsweep::mcts
