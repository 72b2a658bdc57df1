#pragma once

// Binary checkpoint of one or more networks (e.g. every online member of an
// ensemble). Layout, all integers u32 and all reals IEEE-754 f64, both
// little-endian:
//
//   "EEDQNCKP"                      8-byte magic
//   version                         currently 1
//   network_count
//   per network:
//     input, hidden_count, hidden[hidden_count], output
//     per layer l: weights (in_l * out_l, row-major in x out), bias (out_l)

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "eedqn/tensornet/mlp.hpp"

namespace eedqn::tensornet {

void write_checkpoint(std::ostream& out, const std::vector<NetParams>& networks);
std::vector<NetParams> read_checkpoint(std::istream& in);

void save_checkpoint(const std::filesystem::path& path, const std::vector<NetParams>& networks);
std::vector<NetParams> load_checkpoint(const std::filesystem::path& path);

}  // namespace eedqn::tensornet
