#pragma once

#include <stdexcept>
#include <string>

namespace labelgeom {

enum class ErrorCode {
    MalformedLine,
    EdgeIndexNotTwice,
    InconsistentOrientation,
    NonPlanarRotationSystem,
    DisconnectedDiagram,
    ColoringInconsistent,
    DegeneratePoints,
    InvalidArgument,
    DegenerateShape,
    ZeroEdgeLabel,
    UnvalidatedDiagram,
    NoConvergence,
    NoCandidate,
    Unreachable,
    WrongEndCount,
    PatternNotFound,
    IllegalFlype,
    ZeroScale,
    UnknownCensusName,
    SchemaError,
    ToleranceExceeded,
    FileError,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace labelgeom
