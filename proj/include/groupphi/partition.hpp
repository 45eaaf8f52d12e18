// Node partitions: bipartitions for the MIB search, atomic for large systems.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "groupphi/errors.hpp"

namespace groupphi {

class Partition {
public:
    // Blocks must be pairwise disjoint, non-empty, and cover 0..n_nodes-1.
    static Partition make(std::vector<std::vector<std::size_t>> blocks,
                          std::size_t n_nodes);

    // Two blocks from a bitmask over n_nodes (bit set -> block 1).
    static Partition bipartition_from_mask(std::uint64_t mask, std::size_t n_nodes);

    // N singleton blocks.
    static Partition atomic(std::size_t n_nodes);

    const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
    std::size_t n_nodes() const { return n_nodes_; }
    bool is_bipartition() const { return blocks_.size() == 2; }

    std::string to_string() const;

    bool operator==(const Partition&) const = default;

private:
    Partition() = default;

    std::vector<std::vector<std::size_t>> blocks_;
    std::size_t n_nodes_ = 0;
};

} // namespace groupphi
