#include "groupphi/ingestion.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace groupphi {

const char* quality_name(Quality q) {
    switch (q) {
    case Quality::C: return "C";
    case Quality::B: return "B";
    case Quality::GA: return "GA";
    case Quality::A: return "A";
    case Quality::FA: return "FA";
    }
    return "?";
}

Quality parse_quality(const std::string& name) {
    if (name == "C") return Quality::C;
    if (name == "B") return Quality::B;
    if (name == "GA") return Quality::GA;
    if (name == "A") return Quality::A;
    if (name == "FA") return Quality::FA;
    fail(Errc::ParseError, "unknown quality label: " + name);
}

StateMatrix encode_turns(std::span<const VolumeTrack> tracks,
                         const TurnEncodingConfig& config) {
    if (config.threshold <= 0.0)
        fail(Errc::NonPositiveThreshold, "threshold must be positive");
    if (tracks.empty())
        fail(Errc::MisalignedTracks, "no volume tracks");
    const std::size_t t_steps = tracks[0].samples.size();
    for (const auto& tr : tracks)
        if (tr.samples.size() != t_steps)
            fail(Errc::MisalignedTracks,
                 "track '" + tr.speaker + "' has " +
                     std::to_string(tr.samples.size()) + " steps, expected " +
                     std::to_string(t_steps));

    const std::size_t n = tracks.size();
    std::vector<std::vector<int>> rows(t_steps, std::vector<int>(n, 0));

    for (std::size_t t = 0; t < t_steps; ++t) {
        double step_max = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double v = tracks[k].samples[t];
            if (v >= config.threshold) {
                rows[t][k] = 1;
                step_max = std::max(step_max, v);
            }
        }
        // Crosstalk suppression: quiet copies of the loudest speaker are
        // treated as microphone bleed, not speech.
        int active = 0;
        for (std::size_t k = 0; k < n; ++k) active += rows[t][k];
        if (active > 1) {
            for (std::size_t k = 0; k < n; ++k)
                if (rows[t][k] &&
                    tracks[k].samples[t] < config.crosstalk_margin * step_max)
                    rows[t][k] = 0;
        }
    }

    // Merge speaking turns: fill per-speaker silent gaps of at most
    // merge_gap_ms between two active runs.
    const auto max_gap =
        static_cast<std::size_t>(std::floor(config.merge_gap_ms / config.step_ms));
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t last_active = t_steps; // sentinel: none yet
        for (std::size_t t = 0; t < t_steps; ++t) {
            if (!rows[t][k]) continue;
            if (last_active != t_steps && t - last_active - 1 <= max_gap)
                for (std::size_t g = last_active + 1; g < t; ++g) rows[g][k] = 1;
            last_active = t;
        }
    }

    std::vector<std::string> labels;
    labels.reserve(n);
    for (const auto& tr : tracks) labels.push_back(tr.speaker);
    StateMatrix m = StateMatrix::make(rows, std::move(labels));
    m.step_duration_ms = config.step_ms;
    return m;
}

StateMatrix encode_chat(std::span<const ChatLine> lines,
                        std::span<const std::string> roster) {
    if (lines.size() < 2)
        fail(Errc::TooFewLines, "need at least 2 chat lines, got " +
                                    std::to_string(lines.size()));
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < roster.size(); ++i) index[roster[i]] = i;

    std::vector<std::vector<int>> rows;
    rows.reserve(lines.size());
    for (const auto& line : lines) {
        auto it = index.find(line.speaker);
        if (it == index.end())
            fail(Errc::UnknownSpeaker, "speaker '" + line.speaker +
                                           "' is not in the roster");
        std::vector<int> row(roster.size(), 0);
        row[it->second] = 1;
        rows.push_back(std::move(row));
    }
    return StateMatrix::make(rows, {roster.begin(), roster.end()});
}

std::vector<QualityWindow> extract_quality_windows(
    std::span<const EditRecord> edits, int window_days) {
    for (std::size_t i = 1; i < edits.size(); ++i)
        if (edits[i].timestamp_s < edits[i - 1].timestamp_s)
            fail(Errc::UnsortedInput, "edit records are not sorted by timestamp");

    const std::int64_t window_s = static_cast<std::int64_t>(window_days) * 86400;
    std::vector<QualityWindow> out;
    for (const auto& change : edits) {
        if (!change.quality_after) continue;
        QualityWindow w;
        w.article = change.article;
        w.new_quality = *change.quality_after;
        w.window_days = window_days;
        std::unordered_set<std::string> seen;
        for (const auto& e : edits) {
            // Half-open window: the promoting edit itself is excluded.
            if (e.timestamp_s >= change.timestamp_s - window_s &&
                e.timestamp_s < change.timestamp_s) {
                w.edits.push_back(e);
                if (seen.insert(e.editor).second) w.editors.push_back(e.editor);
            }
        }
        if (w.editors.size() >= 3) out.push_back(std::move(w));
    }
    return out;
}

StateMatrix encode_edits(const QualityWindow& window) {
    if (window.edits.size() < 2)
        fail(Errc::TooFewEdits, "need at least 2 edits, got " +
                                    std::to_string(window.edits.size()));
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < window.editors.size(); ++i)
        index[window.editors[i]] = i;

    std::vector<std::vector<int>> rows;
    rows.reserve(window.edits.size());
    for (const auto& e : window.edits) {
        std::vector<int> row(window.editors.size(), 0);
        row[index.at(e.editor)] = 1;
        rows.push_back(std::move(row));
    }
    return StateMatrix::make(rows, window.editors);
}

StateMatrix encode_packets(std::span<const PacketRecord> packets,
                           std::span<const std::string> node_set,
                           double delta_ms, double span_ms) {
    if (node_set.empty()) fail(Errc::EmptyNodeSet, "node set is empty");
    if (delta_ms <= 0.0) fail(Errc::NonPositiveDelta, "delta must be positive");

    const auto t_steps =
        static_cast<std::size_t>(std::ceil(span_ms / delta_ms));
    if (t_steps < 2)
        fail(Errc::TooFewSteps, "span yields fewer than 2 time bins");

    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < node_set.size(); ++i) index[node_set[i]] = i;

    std::vector<std::uint8_t> values(t_steps * node_set.size(), 0);
    const double delta_us = delta_ms * 1000.0;
    for (const auto& p : packets) {
        auto it = index.find(p.src); // only the sender counts as active
        if (it == index.end()) continue;
        if (p.timestamp_us < 0) continue;
        const auto bin = static_cast<std::size_t>(
            static_cast<double>(p.timestamp_us) / delta_us);
        if (bin >= t_steps) continue;
        values[bin * node_set.size() + it->second] = 1;
    }
    StateMatrix m = StateMatrix::from_raw(std::move(values), t_steps,
                                          {node_set.begin(), node_set.end()});
    m.step_duration_ms = delta_ms;
    return m;
}

namespace {

std::vector<std::string> split_fields(const std::string& line, char sep,
                                      std::size_t max_fields = 0) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == sep && (max_fields == 0 || fields.size() + 1 < max_fields)) {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

std::int64_t parse_iso8601(const std::string& s) {
    std::tm tm{};
    std::istringstream is(s);
    is >> std::get_time(&tm, "%Y-%m-%dT%H:%M:%S");
    if (is.fail()) fail(Errc::ParseError, "bad ISO-8601 timestamp: " + s);
    return static_cast<std::int64_t>(timegm(&tm));
}

} // namespace

std::vector<VolumeTrack> read_volume_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::IoError, "cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line))
        fail(Errc::ParseError, "volume CSV is empty: " + path);
    auto header = split_fields(line, ',');
    if (header.size() < 2 || header[0] != "step")
        fail(Errc::ParseError, "volume CSV header must start with 'step'");

    std::vector<VolumeTrack> tracks(header.size() - 1);
    for (std::size_t i = 1; i < header.size(); ++i)
        tracks[i - 1].speaker = header[i];

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_fields(line, ',');
        if (fields.size() != header.size())
            fail(Errc::ParseError, "ragged volume CSV row: " + line);
        for (std::size_t i = 1; i < fields.size(); ++i) {
            double v = 0.0;
            try {
                v = std::stod(fields[i]);
            } catch (const std::exception&) {
                fail(Errc::ParseError, "bad volume value: " + fields[i]);
            }
            if (v < 0.0)
                fail(Errc::ParseError, "negative volume value: " + fields[i]);
            tracks[i - 1].samples.push_back(v);
        }
    }
    return tracks;
}

std::vector<ChatLine> read_chat_csv_file(const std::string& path,
                                         std::vector<std::string>* roster_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::IoError, "cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line))
        fail(Errc::ParseError, "chat CSV is empty: " + path);

    std::vector<ChatLine> lines;
    std::vector<std::string> roster;
    std::unordered_set<std::string> seen;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_fields(line, ',', 3); // text may contain commas
        if (fields.size() != 3)
            fail(Errc::ParseError, "bad chat CSV line: " + line);
        ChatLine cl{fields[1], fields[2]};
        if (seen.insert(cl.speaker).second) roster.push_back(cl.speaker);
        lines.push_back(std::move(cl));
    }
    if (roster_out) *roster_out = std::move(roster);
    return lines;
}

std::vector<EditRecord> read_edit_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::IoError, "cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line))
        fail(Errc::ParseError, "edit CSV is empty: " + path);

    std::vector<EditRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_fields(line, ',');
        if (fields.size() != 4)
            fail(Errc::ParseError, "bad edit CSV line: " + line);
        EditRecord e;
        e.timestamp_s = parse_iso8601(fields[0]);
        e.article = fields[1];
        e.editor = fields[2];
        if (!fields[3].empty()) e.quality_after = parse_quality(fields[3]);
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace groupphi
