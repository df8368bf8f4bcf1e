#pragma once

// Checkpoint file layout (all integers little-endian):
//
//   bytes 0..3   magic "AZSW"
//   u32          format version (kCheckpointVersion)
//   u32          header length in bytes
//   header       JSON text: config, tensor names/shapes in storage order,
//                training_iteration and an rng_state summary
//   payload      float32 little-endian tensor data, tensors in header order

#include <cstdint>
#include <filesystem>
#include <optional>

#include "azsweep/nn/network.hpp"
#include "azsweep/util/errors.hpp"

namespace azsweep::nn {

inline constexpr std::uint32_t kCheckpointVersion = 1;

class CheckpointError : public FormatError {
 public:
  using FormatError::FormatError;
};

void save_checkpoint(const Network& net, const std::filesystem::path& path);

// Throws CheckpointError on bad magic, version mismatch, truncation, a
// malformed header, or an action_count different from `expected_action_count`.
Network load_checkpoint(const std::filesystem::path& path,
                        std::optional<int> expected_action_count = std::nullopt);

}  // namespace azsweep::nn
