#include "groupphi/errors.hpp"

namespace groupphi {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::RaggedRows: return "RaggedRows";
    case Errc::NonBinaryValue: return "NonBinaryValue";
    case Errc::DuplicateLabel: return "DuplicateLabel";
    case Errc::TooFewSteps: return "TooFewSteps";
    case Errc::InvalidPartition: return "InvalidPartition";
    case Errc::TauOutOfRange: return "TauOutOfRange";
    case Errc::EmptySubset: return "EmptySubset";
    case Errc::UnnormalizedDistribution: return "UnnormalizedDistribution";
    case Errc::NodeCapExceeded: return "NodeCapExceeded";
    case Errc::AllBipartitionsDegenerate: return "AllBipartitionsDegenerate";
    case Errc::SingularCovariance: return "SingularCovariance";
    case Errc::ExhaustedNodes: return "ExhaustedNodes";
    case Errc::NoValidResults: return "NoValidResults";
    case Errc::InsufficientNodes: return "InsufficientNodes";
    case Errc::MisalignedTracks: return "MisalignedTracks";
    case Errc::NonPositiveThreshold: return "NonPositiveThreshold";
    case Errc::UnknownSpeaker: return "UnknownSpeaker";
    case Errc::TooFewLines: return "TooFewLines";
    case Errc::UnsortedInput: return "UnsortedInput";
    case Errc::TooFewEdits: return "TooFewEdits";
    case Errc::EmptyNodeSet: return "EmptyNodeSet";
    case Errc::NonPositiveDelta: return "NonPositiveDelta";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::ZeroVariance: return "ZeroVariance";
    case Errc::EmptySample: return "EmptySample";
    case Errc::RankDeficientDesign: return "RankDeficientDesign";
    case Errc::BreakOutOfRange: return "BreakOutOfRange";
    case Errc::IoError: return "IoError";
    case Errc::ParseError: return "ParseError";
    }
    return "UnknownError";
}

} // namespace groupphi
