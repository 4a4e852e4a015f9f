#pragma once

#include <stdexcept>
#include <string>

namespace morsecert {

enum class ErrorKind {
    NotPositiveDefinite,
    DegenerateVector,
    DegenerateSegment,
    NearSingularMargin,
    NotIotaInvariant,
    FaceMismatch,
    NotASubface,
    NotOpposite,
    NoConvergence,
    NotThetaRegular,
    PathTooShort,
    InputError,
    PowerStabilizationFailed,
    NumericalBlowup,
    SchemaError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace morsecert
