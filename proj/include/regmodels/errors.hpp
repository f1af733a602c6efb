#pragma once

#include <stdexcept>
#include <string>

namespace regmodels {

enum class ErrorKind {
    InvalidInput,
    ParseError,
    ReducibleInput,
    RequiresResidueExtension,
    NotKeyPolynomial,
    InvalidAugmentation,
    DegenerateLattice,
    BranchMeetsCrossing,
    NonTermination,
    NotPartitioned,
    StructureViolation,
};

const char* error_kind_name(ErrorKind kind);

// 2 for rejected input, 3 for residue extensions, 4 for broken invariants.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace regmodels
