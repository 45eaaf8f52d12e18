// Directed packet graph and the four node-subsampling methods.
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "groupphi/errors.hpp"

namespace groupphi {

struct PacketRecord {
    std::int64_t timestamp_us = 0;
    std::string src;
    std::string dst;
};

// Nodes are interned to dense indices; destination lists are deduplicated
// and kept sorted for deterministic traversal.
class PacketGraph {
public:
    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::size_t>& destinations(std::size_t node) const {
        return dest_[node];
    }
    std::size_t index_of(const std::string& label) const;
    bool contains(const std::string& label) const {
        return index_.count(label) != 0;
    }

    friend PacketGraph build_packet_graph(std::span<const PacketRecord> packets);

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::vector<std::size_t>> dest_;
};

PacketGraph build_packet_graph(std::span<const PacketRecord> packets);

enum class SampleMethod { random_walk, forest_fire, breadth_first, random_nodes };

const char* sample_method_name(SampleMethod m);
SampleMethod parse_sample_method(const std::string& name);

struct SampleConfig {
    SampleMethod method = SampleMethod::random_walk;
    std::size_t goal = 100;
    double walk_continue_probability = 0.85;
    double fire_mean = 2.3;
    std::uint64_t seed = 0;
};

// Draws exactly config.goal distinct nodes. Deterministic for a fixed
// (graph, config) pair.
std::vector<std::size_t> sample_nodes(const PacketGraph& graph,
                                      const SampleConfig& config);

// count independent samples with per-replicate seeds config.seed + i.
std::vector<std::vector<std::size_t>> replicate_samples(const PacketGraph& graph,
                                                        const SampleConfig& config,
                                                        std::size_t count);

// Packet CSV format: "timestamp_us,src,dst" with a header line.
std::vector<PacketRecord> read_packet_csv_file(const std::string& path);
void write_packet_csv_file(std::span<const PacketRecord> packets,
                           const std::string& path);

} // namespace groupphi
