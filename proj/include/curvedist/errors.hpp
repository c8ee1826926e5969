#pragma once

#include <stdexcept>
#include <string>

namespace curvedist {

/// Base of every error raised by the library.
class CurveDistError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define CURVEDIST_ERROR(Name)                                                                                          \
    class Name : public CurveDistError {                                                                               \
    public:                                                                                                            \
        using CurveDistError::CurveDistError;                                                                          \
    }

CURVEDIST_ERROR(ValidationError);
CURVEDIST_ERROR(DomainError);
CURVEDIST_ERROR(PoleError);
CURVEDIST_ERROR(JetOrderError);
CURVEDIST_ERROR(SingularParametrization);
CURVEDIST_ERROR(DimensionMismatch);
CURVEDIST_ERROR(SchemeMismatch);
CURVEDIST_ERROR(ExactnessUnavailable);
CURVEDIST_ERROR(InsufficientSamples);
CURVEDIST_ERROR(DegenerateParametrization);
CURVEDIST_ERROR(SingularH);
CURVEDIST_ERROR(DisconnectedFramework);
CURVEDIST_ERROR(StepTooSmall);

#undef CURVEDIST_ERROR

} // namespace curvedist
