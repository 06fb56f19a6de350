// Exception types shared by all fncforge modules.
#pragma once

#include <stdexcept>
#include <string>

namespace fncforge {

// Base class for every failure the library reports on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Field construction and element arithmetic.
struct NotPrime : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct LevelMismatch : Error { using Error::Error; };

// Univariate polynomials.
struct CapExceeded : Error { using Error::Error; };
struct BothZero : Error { using Error::Error; };
struct ConstantInput : Error { using Error::Error; };

// Minimal value set machinery.
struct NotMVSP : Error { using Error::Error; };
struct TooFewValues : Error { using Error::Error; };
struct NoDecomposition : Error { using Error::Error; };
struct BadSubset : Error { using Error::Error; };
struct BadValueSet : Error { using Error::Error; };

// Separated-variable curves.
struct NonUnitLeader : Error { using Error::Error; };
struct MethodDisagreement : Error { using Error::Error; };
struct InvalidCurve : Error { using Error::Error; };

// Superelliptic curves.
struct NotARootProfile : Error { using Error::Error; };
struct DegreeTooHigh : Error { using Error::Error; };
struct PreconditionFailed : Error { using Error::Error; };
struct CharDividesN : Error { using Error::Error; };

// Census and bounds.
struct BadNu : Error { using Error::Error; };

// Input handling.
struct ParseFailure : Error { using Error::Error; };

}  // namespace fncforge
