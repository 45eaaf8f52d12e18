#include "groupphi/partition.hpp"

#include <algorithm>
#include <sstream>

namespace groupphi {

Partition Partition::make(std::vector<std::vector<std::size_t>> blocks,
                          std::size_t n_nodes) {
    std::vector<char> seen(n_nodes, 0);
    std::size_t covered = 0;
    for (const auto& block : blocks) {
        if (block.empty())
            fail(Errc::InvalidPartition, "empty partition block");
        for (std::size_t idx : block) {
            if (idx >= n_nodes)
                fail(Errc::InvalidPartition,
                     "node index " + std::to_string(idx) + " out of range");
            if (seen[idx])
                fail(Errc::InvalidPartition,
                     "node " + std::to_string(idx) + " appears in two blocks");
            seen[idx] = 1;
            ++covered;
        }
    }
    if (covered != n_nodes)
        fail(Errc::InvalidPartition, "blocks cover " + std::to_string(covered) +
                                         " of " + std::to_string(n_nodes) +
                                         " nodes");
    Partition p;
    p.blocks_ = std::move(blocks);
    p.n_nodes_ = n_nodes;
    return p;
}

Partition Partition::bipartition_from_mask(std::uint64_t mask, std::size_t n_nodes) {
    std::vector<std::size_t> a, b;
    for (std::size_t i = 0; i < n_nodes; ++i)
        ((mask >> i) & 1u ? a : b).push_back(i);
    return make({std::move(a), std::move(b)}, n_nodes);
}

Partition Partition::atomic(std::size_t n_nodes) {
    std::vector<std::vector<std::size_t>> blocks;
    blocks.reserve(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) blocks.push_back({i});
    return make(std::move(blocks), n_nodes);
}

std::string Partition::to_string() const {
    std::ostringstream os;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        if (b) os << '|';
        os << '{';
        for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
            if (i) os << ',';
            os << blocks_[b][i];
        }
        os << '}';
    }
    return os.str();
}

} // namespace groupphi
