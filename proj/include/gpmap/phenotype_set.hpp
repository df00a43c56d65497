#pragma once

#include "gpmap/phenotype.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_set>
#include <vector>

namespace gpmap {

/// Set of phenotypes with a dense bitmap for n <= 4 and a hash set above.
class PhenotypeSet {
public:
  explicit PhenotypeSet(int n_inputs) : n_inputs_(n_inputs) {
    if (n_inputs_ <= 4) dense_.assign(std::max<std::size_t>(1, (std::size_t{1} << (std::size_t{1} << n_inputs_)) / 64), 0);
  }

  /// Returns true when `p` was not yet present.
  bool insert(const Phenotype& p) {
    if (n_inputs_ > 4) {
      const bool added = sparse_.insert(p).second;
      size_ += added;
      return added;
    }
    const std::uint64_t v = p.value();
    auto& word = dense_[static_cast<std::size_t>(v >> 6)];
    const std::uint64_t bit = std::uint64_t{1} << (v & 63);
    if (word & bit) return false;
    word |= bit;
    ++size_;
    return true;
  }

  bool contains(const Phenotype& p) const {
    if (n_inputs_ > 4) return sparse_.contains(p);
    const std::uint64_t v = p.value();
    return (dense_[static_cast<std::size_t>(v >> 6)] >> (v & 63)) & 1u;
  }

  void merge(const PhenotypeSet& other) {
    if (n_inputs_ > 4) {
      for (const auto& p : other.sparse_) insert(p);
      return;
    }
    size_ = 0;
    for (std::size_t i = 0; i < dense_.size(); ++i) {
      dense_[i] |= other.dense_[i];
      size_ += static_cast<std::size_t>(std::popcount(dense_[i]));
    }
  }

  std::size_t size() const noexcept { return size_; }

private:
  int n_inputs_;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> dense_;
  std::unordered_set<Phenotype> sparse_;
};

}  // namespace gpmap
