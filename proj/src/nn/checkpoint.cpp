#include "azsweep/nn/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace azsweep::nn {
namespace {

constexpr std::array<char, 4> kMagic{'A', 'Z', 'S', 'W'};

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                              static_cast<char>((v >> 16) & 0xff),
                              static_cast<char>((v >> 24) & 0xff)};
  out.write(b.data(), b.size());
}

std::uint32_t get_u32(std::istream& in, const char* what) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), b.size())) {
    throw CheckpointError(fmt::format("checkpoint truncated while reading {}", what));
  }
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

nlohmann::json config_json(const NetworkConfig& c) {
  return {{"board_size", c.board_size},
          {"input_channels", c.input_channels},
          {"hidden_layers", c.hidden_layers},
          {"activation", std::string(to_string(c.activation))},
          {"dropout_rate", c.dropout_rate},
          {"action_count", c.action_count}};
}

NetworkConfig config_from_json(const nlohmann::json& j) {
  NetworkConfig c;
  c.board_size = j.at("board_size").get<int>();
  c.input_channels = j.at("input_channels").get<int>();
  c.hidden_layers = j.at("hidden_layers").get<std::vector<int>>();
  c.activation = parse_activation(j.at("activation").get<std::string>());
  c.dropout_rate = j.at("dropout_rate").get<double>();
  c.action_count = j.at("action_count").get<int>();
  return c;
}

}  // namespace

void save_checkpoint(const Network& net, const std::filesystem::path& path) {
  nlohmann::json header;
  header["config"] = config_json(net.config());
  header["training_iteration"] = net.training_iteration();
  header["rng_state"] = fmt::format("mt19937_64 init_seed={}", net.init_seed());
  auto& tensors = header["tensors"] = nlohmann::json::array();
  for (const TensorInfo& t : net.tensors()) {
    tensors.push_back({{"name", t.name}, {"shape", t.shape}});
  }
  const std::string text = header.dump();

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CheckpointError(fmt::format("cannot open {} for writing", path.string()));
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, kCheckpointVersion);
  put_u32(out, static_cast<std::uint32_t>(text.size()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (double p : net.parameters()) {
    put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(p)));
  }
  if (!out) throw CheckpointError(fmt::format("write to {} failed", path.string()));
}

Network load_checkpoint(const std::filesystem::path& path, std::optional<int> expected_action_count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError(fmt::format("cannot open checkpoint {}", path.string()));
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw CheckpointError(fmt::format("{}: bad magic (not an AZSW checkpoint)", path.string()));
  }
  const std::uint32_t version = get_u32(in, "version");
  if (version != kCheckpointVersion) {
    throw CheckpointError(fmt::format("{}: format version {} unsupported (expected {})",
                                      path.string(), version, kCheckpointVersion));
  }
  const std::uint32_t header_len = get_u32(in, "header length");
  if (header_len > (1u << 24)) throw CheckpointError("checkpoint header length implausible");
  std::string text(header_len, '\0');
  if (!in.read(text.data(), header_len)) throw CheckpointError("checkpoint truncated in header");

  nlohmann::json header;
  NetworkConfig config;
  try {
    header = nlohmann::json::parse(text);
    config = config_from_json(header.at("config"));
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(fmt::format("{}: malformed header: {}", path.string(), e.what()));
  } catch (const ConfigError& e) {
    throw CheckpointError(fmt::format("{}: bad config: {}", path.string(), e.what()));
  }
  if (expected_action_count && config.action_count != *expected_action_count) {
    throw CheckpointError(fmt::format("{}: action_count {} does not match expected {}",
                                      path.string(), config.action_count, *expected_action_count));
  }

  std::optional<Network> net;
  try {
    net.emplace(config, 0);
  } catch (const ConfigError& e) {
    throw CheckpointError(fmt::format("{}: bad config: {}", path.string(), e.what()));
  }
  const auto& expected = net->tensors();
  const auto& listed = header.at("tensors");
  if (listed.size() != expected.size()) throw CheckpointError("tensor list does not match config");
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (listed[i].at("name").get<std::string>() != expected[i].name ||
        listed[i].at("shape").get<std::vector<int>>() != expected[i].shape) {
      throw CheckpointError(fmt::format("tensor {} does not match config layout", i));
    }
  }

  std::vector<double> params(net->parameter_count());
  for (double& p : params) {
    p = static_cast<double>(std::bit_cast<float>(get_u32(in, "tensor data")));
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw CheckpointError(fmt::format("{}: trailing bytes after tensor data", path.string()));
  }
  net->set_parameters(params);
  net->set_training_iteration(header.value("training_iteration", std::int64_t{0}));
  return std::move(*net);
}

}  // namespace azsweep::nn
