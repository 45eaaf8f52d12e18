// Encoders turning raw event logs into binary state matrices: speaking
// turns, chat lines, Wikipedia edit windows, packet activity bins.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "groupphi/graph_sampling.hpp"
#include "groupphi/state_matrix.hpp"

namespace groupphi {

struct VolumeTrack {
    std::string speaker;
    std::vector<double> samples; // non-negative volume per step
};

enum class Quality { C, B, GA, A, FA };

const char* quality_name(Quality q);
Quality parse_quality(const std::string& name);

struct EditRecord {
    std::int64_t timestamp_s = 0; // epoch seconds
    std::string article;
    std::string editor;
    std::optional<Quality> quality_after; // set when this edit changed quality
};

struct QualityWindow {
    std::string article;
    Quality new_quality = Quality::C;
    int window_days = 30;
    std::vector<EditRecord> edits;     // ordered, inside the window
    std::vector<std::string> editors;  // distinct, first-seen order
};

struct TurnEncodingConfig {
    double threshold = 1.0;         // volume level for "speaking"
    double step_ms = 200.0;
    double merge_gap_ms = 400.0;    // fill speaker gaps of at most this length
    double crosstalk_margin = 0.5;  // relative to the loudest speaker per step
};

StateMatrix encode_turns(std::span<const VolumeTrack> tracks,
                         const TurnEncodingConfig& config);

struct ChatLine {
    std::string speaker;
    std::string text;
};

// One time step per chat line; exactly one active member per row.
StateMatrix encode_chat(std::span<const ChatLine> lines,
                        std::span<const std::string> roster);

// One window per quality-change edit, spanning [change - window_days, change);
// windows with fewer than 3 distinct editors are discarded.
std::vector<QualityWindow> extract_quality_windows(
    std::span<const EditRecord> edits_for_article, int window_days);

StateMatrix encode_edits(const QualityWindow& window);

// Row k covers [k*delta, (k+1)*delta) from time origin 0; a node is active
// when it sent at least one packet in the bin. Receiving does not count.
StateMatrix encode_packets(std::span<const PacketRecord> packets,
                           std::span<const std::string> node_set,
                           double delta_ms, double span_ms);

// CSV readers for the ingestion formats.
std::vector<VolumeTrack> read_volume_csv_file(const std::string& path);
std::vector<ChatLine> read_chat_csv_file(const std::string& path,
                                         std::vector<std::string>* roster_out);
std::vector<EditRecord> read_edit_csv_file(const std::string& path);

} // namespace groupphi
