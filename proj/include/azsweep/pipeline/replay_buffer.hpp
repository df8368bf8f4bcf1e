#pragma once

#include <deque>
#include <span>
#include <vector>

#include "azsweep/nn/network.hpp"

namespace azsweep::pipeline {

// Sliding window over the example lists of the last `capacity` iterations.
class ReplayBuffer {
 public:
  struct Entry {
    int iteration = 0;
    std::vector<nn::TrainingExample> examples;
  };

  explicit ReplayBuffer(int capacity);

  // Appends one iteration's list and evicts the oldest list when the window
  // would exceed capacity.
  void update(int iteration, std::vector<nn::TrainingExample> examples);

  int capacity() const { return capacity_; }
  std::size_t list_count() const { return entries_.size(); }
  std::size_t example_count() const;
  std::vector<int> iterations() const;  // oldest first
  const std::deque<Entry>& entries() const { return entries_; }

  // Every retained example exactly once, oldest list first.
  std::vector<nn::TrainingExample> flatten() const;

 private:
  int capacity_;
  std::deque<Entry> entries_;
};

}  // namespace azsweep::pipeline
