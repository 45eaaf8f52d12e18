#include "groupphi/state_matrix.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

namespace groupphi {

StateMatrix StateMatrix::make(const std::vector<std::vector<int>>& rows,
                              std::vector<std::string> labels) {
    if (rows.size() < 2)
        fail(Errc::TooFewSteps, "need at least 2 time steps, got " +
                                    std::to_string(rows.size()));
    const std::size_t n = labels.size();
    std::unordered_set<std::string> seen;
    for (const auto& l : labels)
        if (!seen.insert(l).second)
            fail(Errc::DuplicateLabel, "duplicate node label: " + l);

    std::vector<std::uint8_t> values;
    values.reserve(rows.size() * n);
    for (std::size_t t = 0; t < rows.size(); ++t) {
        if (rows[t].size() != n)
            fail(Errc::RaggedRows, "row " + std::to_string(t) + " has " +
                                       std::to_string(rows[t].size()) +
                                       " entries, expected " + std::to_string(n));
        for (int v : rows[t]) {
            if (v != 0 && v != 1)
                fail(Errc::NonBinaryValue,
                     "non-binary entry " + std::to_string(v) + " in row " +
                         std::to_string(t));
            values.push_back(static_cast<std::uint8_t>(v));
        }
    }
    return from_raw(std::move(values), rows.size(), std::move(labels));
}

StateMatrix StateMatrix::from_raw(std::vector<std::uint8_t> values,
                                  std::size_t steps,
                                  std::vector<std::string> labels) {
    StateMatrix m;
    m.values_ = std::move(values);
    m.steps_ = steps;
    m.nodes_ = labels.size();
    m.labels_ = std::move(labels);
    return m;
}

std::vector<double> StateMatrix::column_variances() const {
    std::vector<double> out(nodes_, 0.0);
    for (std::size_t n = 0; n < nodes_; ++n) {
        double sum = 0.0;
        for (std::size_t t = 0; t < steps_; ++t) sum += at(t, n);
        const double mean = sum / static_cast<double>(steps_);
        // 0/1 column: E[x^2] = E[x]
        out[n] = mean - mean * mean;
    }
    return out;
}

StateMatrix StateMatrix::select_nodes(std::span<const std::size_t> keep) const {
    std::vector<std::uint8_t> values;
    values.reserve(steps_ * keep.size());
    std::vector<std::string> labels;
    labels.reserve(keep.size());
    for (std::size_t n : keep) labels.push_back(labels_[n]);
    for (std::size_t t = 0; t < steps_; ++t)
        for (std::size_t n : keep) values.push_back(at(t, n));
    StateMatrix m = from_raw(std::move(values), steps_, std::move(labels));
    m.step_duration_ms = step_duration_ms;
    m.origin_time_ms = origin_time_ms;
    return m;
}

void write_state_csv(const StateMatrix& m, std::ostream& out) {
    out << "t";
    for (const auto& l : m.node_labels()) out << ',' << l;
    out << '\n';
    for (std::size_t t = 0; t < m.steps(); ++t) {
        out << t;
        for (std::size_t n = 0; n < m.nodes(); ++n)
            out << ',' << static_cast<int>(m.at(t, n));
        out << '\n';
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

StateMatrix read_state_csv(std::istream& in) {
    std::string line;
    do {
        if (!std::getline(in, line))
            fail(Errc::ParseError, "state CSV is empty");
    } while (!line.empty() && line[0] == '#');
    auto header = split_csv_line(line);
    if (header.empty() || header[0] != "t")
        fail(Errc::ParseError, "state CSV header must start with 't'");
    std::vector<std::string> labels(header.begin() + 1, header.end());

    std::vector<std::vector<int>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_csv_line(line);
        if (fields.size() != labels.size() + 1)
            fail(Errc::ParseError, "state CSV row has " +
                                       std::to_string(fields.size()) +
                                       " fields, expected " +
                                       std::to_string(labels.size() + 1));
        std::vector<int> row;
        row.reserve(labels.size());
        for (std::size_t i = 1; i < fields.size(); ++i) {
            if (fields[i] == "0")
                row.push_back(0);
            else if (fields[i] == "1")
                row.push_back(1);
            else
                fail(Errc::ParseError, "non-binary CSV entry '" + fields[i] + "'");
        }
        rows.push_back(std::move(row));
    }
    return StateMatrix::make(rows, std::move(labels));
}

void write_state_csv_file(const StateMatrix& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::IoError, "cannot open for writing: " + path);
    write_state_csv(m, out);
}

StateMatrix read_state_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::IoError, "cannot open for reading: " + path);
    return read_state_csv(in);
}

} // namespace groupphi
