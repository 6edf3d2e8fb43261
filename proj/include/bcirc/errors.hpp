#pragma once

#include <stdexcept>
#include <string>

namespace bcirc {

/// Base class for all domain errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// series
struct DivisionByNonUnit : Error { using Error::Error; };
struct LogOfZeroConstantTerm : Error { using Error::Error; };
struct NonVanishingConstantTerm : Error { using Error::Error; };

// measure
struct RadiusOutOfRange : Error { using Error::Error; };

// transform
struct EvaluationOutsideDomain : Error { using Error::Error; };
struct NotAHerglotzLogarithm : Error { using Error::Error; };
struct ConditioningWarning : Error { using Error::Error; };

// convolution
struct WordNotAlternating : Error { using Error::Error; };
struct OrderTooLargeForOracle : Error { using Error::Error; };
struct DimensionTooLarge : Error { using Error::Error; };

// levy
struct ZeroFunction : Error { using Error::Error; };
struct ZeroAtOrigin : Error { using Error::Error; };
struct ZeroOnContour : Error { using Error::Error; };
struct NotDivisibleError : Error { using Error::Error; };

// gallery
struct ParameterOutOfRange : Error { using Error::Error; };
struct RootBracketingFailure : Error { using Error::Error; };

// io / verification
struct InvalidInput : Error { using Error::Error; };
struct VerificationFailure : Error { using Error::Error; };

}  // namespace bcirc
