#pragma once

#include <stdexcept>
#include <string>

namespace dhms {

// Error taxonomy shared by all modules. The C API maps these to status
// codes; the CLI maps them to exit codes (structural -> 2, others -> 1).

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed inputs: bad node ids, dimension mismatches, unparseable files.
struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

// Illegal state-machine moves (complaint lifecycle, review cases, passes).
struct TransitionError : std::runtime_error {
    explicit TransitionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Model fitting rejected the data (too short, too small, degenerate).
struct FitError : std::runtime_error {
    explicit FitError(const std::string& msg) : std::runtime_error(msg) {}
};

// Workload spec rejected before generation.
struct SpecError : ValidationError {
    explicit SpecError(const std::string& msg) : ValidationError(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dhms
