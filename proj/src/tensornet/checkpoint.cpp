#include "eedqn/tensornet/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "eedqn/error.hpp"

namespace eedqn::tensornet {
namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

constexpr std::array<char, 8> kMagic{'E', 'E', 'D', 'Q', 'N', 'C', 'K', 'P'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::size_t value) {
  const auto v = static_cast<std::uint32_t>(value);
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_reals(std::ostream& out, const std::vector<double>& values) {
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
}

std::uint32_t get_u32(std::istream& in) {
  std::uint32_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw ConfigError("checkpoint truncated");
  return v;
}

void get_reals(std::istream& in, std::vector<double>& values) {
  if (!in.read(reinterpret_cast<char*>(values.data()),
               static_cast<std::streamsize>(values.size() * sizeof(double)))) {
    throw ConfigError("checkpoint truncated");
  }
}

}  // namespace

void write_checkpoint(std::ostream& out, const std::vector<NetParams>& networks) {
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, kVersion);
  put_u32(out, networks.size());
  for (const NetParams& net : networks) {
    const Topology& t = net.topology();
    put_u32(out, t.input);
    put_u32(out, t.hidden.size());
    for (std::size_t h : t.hidden) put_u32(out, h);
    put_u32(out, t.output);
    for (const DenseLayer& layer : net.layers()) {
      put_reals(out, layer.weights);
      put_reals(out, layer.bias);
    }
  }
  if (!out) throw std::runtime_error("checkpoint write failed");
}

std::vector<NetParams> read_checkpoint(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw ConfigError("not a checkpoint file (bad magic)");
  }
  if (const auto version = get_u32(in); version != kVersion) {
    throw ConfigError("unsupported checkpoint version " + std::to_string(version));
  }
  const std::uint32_t count = get_u32(in);
  std::vector<NetParams> networks;
  networks.reserve(count);
  for (std::uint32_t n = 0; n < count; ++n) {
    Topology t;
    t.input = get_u32(in);
    t.hidden.resize(get_u32(in));
    for (std::size_t& h : t.hidden) h = get_u32(in);
    t.output = get_u32(in);
    NetParams net = NetParams::zeros(t);
    for (DenseLayer& layer : net.layers()) {
      get_reals(in, layer.weights);
      get_reals(in, layer.bias);
    }
    networks.push_back(std::move(net));
  }
  return networks;
}

void save_checkpoint(const std::filesystem::path& path, const std::vector<NetParams>& networks) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_checkpoint(out, networks);
}

std::vector<NetParams> load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_checkpoint(in);
}

}  // namespace eedqn::tensornet
