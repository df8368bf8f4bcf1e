#include "azsweep/pipeline/replay_buffer.hpp"

#include "azsweep/util/errors.hpp"

namespace azsweep::pipeline {

ReplayBuffer::ReplayBuffer(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw ContractViolation("replay buffer capacity must be >= 1");
}

void ReplayBuffer::update(int iteration, std::vector<nn::TrainingExample> examples) {
  entries_.push_back({iteration, std::move(examples)});
  if (entries_.size() > static_cast<std::size_t>(capacity_)) entries_.pop_front();
}

std::size_t ReplayBuffer::example_count() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.examples.size();
  return n;
}

std::vector<int> ReplayBuffer::iterations() const {
  std::vector<int> out;
  for (const auto& e : entries_) out.push_back(e.iteration);
  return out;
}

std::vector<nn::TrainingExample> ReplayBuffer::flatten() const {
  std::vector<nn::TrainingExample> out;
  out.reserve(example_count());
  for (const auto& e : entries_) out.insert(out.end(), e.examples.begin(), e.examples.end());
  return out;
}

}  // namespace azsweep::pipeline
