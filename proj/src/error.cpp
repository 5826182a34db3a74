#include "labelgeom/error.hpp"

namespace labelgeom {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedLine: return "MalformedLine";
        case ErrorCode::EdgeIndexNotTwice: return "EdgeIndexNotTwice";
        case ErrorCode::InconsistentOrientation: return "InconsistentOrientation";
        case ErrorCode::NonPlanarRotationSystem: return "NonPlanarRotationSystem";
        case ErrorCode::DisconnectedDiagram: return "DisconnectedDiagram";
        case ErrorCode::ColoringInconsistent: return "ColoringInconsistent";
        case ErrorCode::DegeneratePoints: return "DegeneratePoints";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DegenerateShape: return "DegenerateShape";
        case ErrorCode::ZeroEdgeLabel: return "ZeroEdgeLabel";
        case ErrorCode::UnvalidatedDiagram: return "UnvalidatedDiagram";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::NoCandidate: return "NoCandidate";
        case ErrorCode::Unreachable: return "Unreachable";
        case ErrorCode::WrongEndCount: return "WrongEndCount";
        case ErrorCode::PatternNotFound: return "PatternNotFound";
        case ErrorCode::IllegalFlype: return "IllegalFlype";
        case ErrorCode::ZeroScale: return "ZeroScale";
        case ErrorCode::UnknownCensusName: return "UnknownCensusName";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::ToleranceExceeded: return "ToleranceExceeded";
        case ErrorCode::FileError: return "FileError";
    }
    return "Unknown";
}

}  // namespace labelgeom
