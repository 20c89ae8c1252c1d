#pragma once

#include <stdexcept>
#include <string>

namespace argvar {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// holo
struct DomainError : Error { using Error::Error; };
struct ZeroValueError : Error { using Error::Error; };

// geom
struct CuspError : Error { using Error::Error; };
struct DisconnectedError : Error { using Error::Error; };
struct ContainmentError : Error { using Error::Error; };
struct UnsupportedShapeError : Error { using Error::Error; };

// cover
struct BranchPointError : Error { using Error::Error; };
struct TangencyError : Error { using Error::Error; };

// bounds
struct NonconvergenceError : Error { using Error::Error; };
struct ZeroFunctionError : Error { using Error::Error; };
struct BoundaryZeroError : Error { using Error::Error; };
struct NonIntegerWindingError : Error { using Error::Error; };
struct ZeroOnCurveError : Error { using Error::Error; };
struct HypothesisError : Error { using Error::Error; };

// cli
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace argvar
