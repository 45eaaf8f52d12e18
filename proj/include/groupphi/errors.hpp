// Error taxonomy shared by all groupphi modules.
#pragma once

#include <stdexcept>
#include <string>

namespace groupphi {

enum class Errc {
    // state-model
    RaggedRows,
    NonBinaryValue,
    DuplicateLabel,
    TooFewSteps,
    InvalidPartition,
    // info-measures
    TauOutOfRange,
    EmptySubset,
    UnnormalizedDistribution,
    // phi-engine
    NodeCapExceeded,
    AllBipartitionsDegenerate,
    SingularCovariance,
    ExhaustedNodes,
    NoValidResults,
    // graph-sampling
    InsufficientNodes,
    // ingestion
    MisalignedTracks,
    NonPositiveThreshold,
    UnknownSpeaker,
    TooFewLines,
    UnsortedInput,
    TooFewEdits,
    EmptyNodeSet,
    NonPositiveDelta,
    // sweeps-stats
    LengthMismatch,
    ZeroVariance,
    EmptySample,
    RankDeficientDesign,
    BreakOutOfRange,
    // I/O
    IoError,
    ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
    throw Error(code, what);
}

} // namespace groupphi
