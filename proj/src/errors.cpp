#include "regmodels/errors.hpp"

namespace regmodels {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ReducibleInput: return "ReducibleInput";
        case ErrorKind::RequiresResidueExtension: return "RequiresResidueExtension";
        case ErrorKind::NotKeyPolynomial: return "NotKeyPolynomial";
        case ErrorKind::InvalidAugmentation: return "InvalidAugmentation";
        case ErrorKind::DegenerateLattice: return "DegenerateLattice";
        case ErrorKind::BranchMeetsCrossing: return "BranchMeetsCrossing";
        case ErrorKind::NonTermination: return "NonTermination";
        case ErrorKind::NotPartitioned: return "NotPartitioned";
        case ErrorKind::StructureViolation: return "StructureViolation";
    }
    return "Unknown";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput:
        case ErrorKind::ParseError:
        case ErrorKind::ReducibleInput:
        case ErrorKind::NotKeyPolynomial:
        case ErrorKind::InvalidAugmentation:
            return 2;
        case ErrorKind::RequiresResidueExtension:
            return 3;
        default:
            return 4;
    }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace regmodels
