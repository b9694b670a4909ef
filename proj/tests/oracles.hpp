#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "motifsig/digraph.hpp"
#include "motifsig/motif.hpp"

namespace oracle {

/// Triad census by a route unrelated to the library: every triple is reduced
/// to its edge count plus the sorted (out, in) degree pairs of its nodes, and
/// that key is looked up among hand-drawn representatives of each class.
std::array<std::uint64_t, motifsig::kMotifCount> census(const motifsig::Digraph& g);

/// Class index of the triad on nodes 0, 1, 2 of `g`.
std::size_t classify_triad(const motifsig::Digraph& g, motifsig::NodeIndex a, motifsig::NodeIndex b,
                           motifsig::NodeIndex c);

/// 1 - angle / pi in long double, zero vectors per the library convention.
double similarity(const std::array<double, motifsig::kMotifCount>& a,
                  const std::array<double, motifsig::kMotifCount>& b);

/// Erdos-Renyi style digraph: each ordered pair present with probability p.
motifsig::Digraph random_graph(std::uint32_t n, double p, std::uint64_t seed);

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::string& path);

}  // namespace oracle
