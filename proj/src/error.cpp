#include "papertrail/error.hpp"

namespace papertrail {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MissingRequiredColumn: return "MissingRequiredColumn";
        case ErrorCode::CorpusRejected: return "CorpusRejected";
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::NotAnEmail: return "NotAnEmail";
        case ErrorCode::ConflictingMerge: return "ConflictingMerge";
        case ErrorCode::AllZero: return "AllZero";
        case ErrorCode::NonPositiveComponent: return "NonPositiveComponent";
        case ErrorCode::FewerThanTwoPoints: return "FewerThanTwoPoints";
        case ErrorCode::KOutOfRange: return "KOutOfRange";
        case ErrorCode::SingleCluster: return "SingleCluster";
        case ErrorCode::DegenerateData: return "DegenerateData";
        case ErrorCode::EmptyCurves: return "EmptyCurves";
        case ErrorCode::EmptyCluster: return "EmptyCluster";
        case ErrorCode::EmptyCorpus: return "EmptyCorpus";
        case ErrorCode::NodeNotFound: return "NodeNotFound";
        case ErrorCode::MissingRate: return "MissingRate";
        case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::Io: return "Io";
    }
    return "Error";
}

}  // namespace papertrail
