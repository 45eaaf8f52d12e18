#include "groupphi/graph_sampling.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

namespace groupphi {

std::size_t PacketGraph::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) fail(Errc::ParseError, "unknown node: " + label);
    return it->second;
}

PacketGraph build_packet_graph(std::span<const PacketRecord> packets) {
    PacketGraph g;
    auto intern = [&](const std::string& label) {
        auto [it, inserted] = g.index_.try_emplace(label, g.labels_.size());
        if (inserted) {
            g.labels_.push_back(label);
            g.dest_.emplace_back();
        }
        return it->second;
    };
    for (const auto& p : packets) {
        const std::size_t s = intern(p.src);
        const std::size_t d = intern(p.dst);
        g.dest_[s].push_back(d);
    }
    for (auto& d : g.dest_) {
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
    }
    return g;
}

const char* sample_method_name(SampleMethod m) {
    switch (m) {
    case SampleMethod::random_walk: return "random_walk";
    case SampleMethod::forest_fire: return "forest_fire";
    case SampleMethod::breadth_first: return "breadth_first";
    case SampleMethod::random_nodes: return "random_nodes";
    }
    return "unknown";
}

SampleMethod parse_sample_method(const std::string& name) {
    if (name == "random_walk") return SampleMethod::random_walk;
    if (name == "forest_fire") return SampleMethod::forest_fire;
    if (name == "breadth_first") return SampleMethod::breadth_first;
    if (name == "random_nodes") return SampleMethod::random_nodes;
    fail(Errc::ParseError, "unknown sampling method: " + name);
}

namespace {

class Sampler {
public:
    Sampler(const PacketGraph& graph, const SampleConfig& config)
        : graph_(graph), config_(config), rng_(config.seed),
          in_sample_(graph.size(), 0) {
        if (graph.size() < config.goal)
            fail(Errc::InsufficientNodes,
                 "graph has " + std::to_string(graph.size()) +
                     " nodes, goal is " + std::to_string(config.goal));
    }

    std::vector<std::size_t> run() {
        switch (config_.method) {
        case SampleMethod::random_walk: random_walk(); break;
        case SampleMethod::forest_fire: forest_fire(); break;
        case SampleMethod::breadth_first: breadth_first(); break;
        case SampleMethod::random_nodes: random_nodes(); break;
        }
        return sample_;
    }

private:
    std::size_t pick(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
    }

    bool add(std::size_t node) {
        if (in_sample_[node]) return false;
        in_sample_[node] = 1;
        sample_.push_back(node);
        return true;
    }

    bool done() const { return sample_.size() >= config_.goal; }

    // Uniform draw from S \ A.
    std::size_t fresh_start() {
        for (int attempt = 0; attempt < 64; ++attempt) {
            const std::size_t n = pick(graph_.size());
            if (!in_sample_[n]) return n;
        }
        std::vector<std::size_t> remaining;
        for (std::size_t i = 0; i < graph_.size(); ++i)
            if (!in_sample_[i]) remaining.push_back(i);
        return remaining[pick(remaining.size())];
    }

    void random_walk() {
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const std::size_t stall_limit = 10 * config_.goal;
        while (!done()) {
            const std::size_t start = fresh_start();
            add(start);
            std::size_t cur = start;
            std::size_t stall = 0;
            while (!done() && stall < stall_limit) {
                if (unif(rng_) < config_.walk_continue_probability) {
                    const auto& dest = graph_.destinations(cur);
                    if (dest.empty()) {
                        cur = start; // dead end, return to the walk origin
                        ++stall;
                        continue;
                    }
                    cur = dest[pick(dest.size())];
                    if (add(cur))
                        stall = 0;
                    else
                        ++stall;
                } else {
                    cur = start;
                    ++stall;
                }
            }
        }
    }

    void forest_fire() {
        std::geometric_distribution<int> burn_count(1.0 / (1.0 + config_.fire_mean));
        std::deque<std::size_t> burn;
        while (!done()) {
            if (burn.empty()) {
                // Re-ignite from sampled nodes that still have unburned
                // destinations; fresh random start if none remain.
                bool reignited = false;
                for (std::size_t node : sample_) {
                    for (std::size_t d : graph_.destinations(node))
                        if (!in_sample_[d]) {
                            burn.push_back(node);
                            reignited = true;
                            break;
                        }
                }
                if (!reignited) {
                    const std::size_t x = fresh_start();
                    add(x);
                    burn.push_back(x);
                    continue;
                }
            }
            const std::size_t cur = burn.front();
            burn.pop_front();
            const int n = burn_count(rng_);
            if (n == 0) continue;
            std::vector<std::size_t> unburned;
            for (std::size_t d : graph_.destinations(cur))
                if (!in_sample_[d]) unburned.push_back(d);
            std::shuffle(unburned.begin(), unburned.end(), rng_);
            const std::size_t take = std::min<std::size_t>(
                {static_cast<std::size_t>(n), unburned.size(),
                 config_.goal - sample_.size()});
            for (std::size_t i = 0; i < take; ++i) {
                add(unburned[i]);
                burn.push_back(unburned[i]);
            }
        }
    }

    void breadth_first() {
        while (!done()) {
            const std::size_t start = fresh_start();
            add(start);
            std::vector<std::size_t> frontier{start};
            while (!done()) {
                std::vector<std::size_t> next;
                std::vector<char> queued(graph_.size(), 0);
                for (std::size_t node : frontier)
                    for (std::size_t d : graph_.destinations(node))
                        if (!in_sample_[d] && !queued[d]) {
                            queued[d] = 1;
                            next.push_back(d);
                        }
                if (next.empty()) break;
                std::shuffle(next.begin(), next.end(), rng_);
                std::vector<std::size_t> added;
                for (std::size_t d : next) {
                    if (done()) break; // truncate the final frontier
                    add(d);
                    added.push_back(d);
                }
                frontier = std::move(added);
            }
        }
    }

    void random_nodes() {
        std::vector<std::size_t> pool(graph_.size());
        for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
        for (std::size_t i = 0; i < config_.goal; ++i) {
            const std::size_t j =
                i + std::uniform_int_distribution<std::size_t>(
                        0, pool.size() - 1 - i)(rng_);
            std::swap(pool[i], pool[j]);
            add(pool[i]);
        }
    }

    const PacketGraph& graph_;
    const SampleConfig& config_;
    std::mt19937_64 rng_;
    std::vector<char> in_sample_;
    std::vector<std::size_t> sample_;
};

} // namespace

std::vector<std::size_t> sample_nodes(const PacketGraph& graph,
                                      const SampleConfig& config) {
    if (config.goal < 1) fail(Errc::InsufficientNodes, "goal must be >= 1");
    return Sampler(graph, config).run();
}

std::vector<std::vector<std::size_t>> replicate_samples(const PacketGraph& graph,
                                                        const SampleConfig& config,
                                                        std::size_t count) {
    std::vector<std::vector<std::size_t>> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        SampleConfig derived = config;
        derived.seed = config.seed + i;
        out.push_back(sample_nodes(graph, derived));
    }
    return out;
}

std::vector<PacketRecord> read_packet_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::IoError, "cannot open for reading: " + path);
    std::vector<PacketRecord> out;
    std::string line;
    do {
        if (!std::getline(in, line))
            fail(Errc::ParseError, "packet CSV is empty: " + path);
    } while (!line.empty() && line[0] == '#');
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            fail(Errc::ParseError, "bad packet CSV line: " + line);
        PacketRecord p;
        try {
            p.timestamp_us = std::stoll(line.substr(0, c1));
        } catch (const std::exception&) {
            fail(Errc::ParseError, "bad packet timestamp in line: " + line);
        }
        p.src = line.substr(c1 + 1, c2 - c1 - 1);
        p.dst = line.substr(c2 + 1);
        out.push_back(std::move(p));
    }
    return out;
}

void write_packet_csv_file(std::span<const PacketRecord> packets,
                           const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::IoError, "cannot open for writing: " + path);
    out << "timestamp_us,src,dst\n";
    for (const auto& p : packets)
        out << p.timestamp_us << ',' << p.src << ',' << p.dst << '\n';
}

} // namespace groupphi
