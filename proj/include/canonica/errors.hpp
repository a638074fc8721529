#pragma once

#include <stdexcept>
#include <string>

namespace canonica {

// Base of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct ImagingSingular : Error { using Error::Error; };
struct LaplaceSingular : Error { using Error::Error; };
struct NotLForm : Error { using Error::Error; };
struct GeometryMismatch : Error { using Error::Error; };
struct IntegrabilityViolation : Error { using Error::Error; };
struct DivergenceRisk : Error { using Error::Error; };
struct SingularEvol : Error { using Error::Error; };
struct EquationMismatch : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace canonica
