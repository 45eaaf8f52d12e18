// Binary T x N activity matrix, the substrate for every phi computation.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "groupphi/errors.hpp"

namespace groupphi {

class StateMatrix {
public:
    // rows: T rows of N binary entries; labels: N unique node identifiers.
    // Validates rectangularity, binarity, T >= 2 and label uniqueness.
    static StateMatrix make(const std::vector<std::vector<int>>& rows,
                            std::vector<std::string> labels);

    // Unchecked fast path for internal construction; values must be 0/1.
    static StateMatrix from_raw(std::vector<std::uint8_t> values, std::size_t steps,
                                std::vector<std::string> labels);

    std::size_t steps() const { return steps_; }   // T
    std::size_t nodes() const { return nodes_; }   // N

    std::uint8_t at(std::size_t t, std::size_t n) const {
        return values_[t * nodes_ + n];
    }

    const std::vector<std::string>& node_labels() const { return labels_; }
    const std::vector<std::uint8_t>& values() const { return values_; }

    std::optional<double> step_duration_ms;   // absent for event-indexed steps
    std::optional<std::int64_t> origin_time_ms;

    // Per-node sample variance of the 0/1 column.
    std::vector<double> column_variances() const;

    // Matrix restricted to the given node indices (order preserved).
    StateMatrix select_nodes(std::span<const std::size_t> keep) const;

    bool operator==(const StateMatrix& other) const {
        return steps_ == other.steps_ && labels_ == other.labels_ &&
               values_ == other.values_;
    }

private:
    StateMatrix() = default;

    std::vector<std::uint8_t> values_; // row-major T x N
    std::size_t steps_ = 0;
    std::size_t nodes_ = 0;
    std::vector<std::string> labels_;
};

// CSV format: header "t,<label1>,...,<labelN>", one data row per step,
// entries 0/1, LF line endings.
void write_state_csv(const StateMatrix& m, std::ostream& out);
StateMatrix read_state_csv(std::istream& in);
void write_state_csv_file(const StateMatrix& m, const std::string& path);
StateMatrix read_state_csv_file(const std::string& path);

} // namespace groupphi
