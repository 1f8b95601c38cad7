#include "minksurf/error.hpp"

namespace minksurf {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DegeneratePlane: return "DegeneratePlane";
        case ErrorKind::NullPivot: return "NullPivot";
        case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
        case ErrorKind::DivisionByZeroValue: return "DivisionByZeroValue";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::OrderExceeded: return "OrderExceeded";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
        case ErrorKind::ArityError: return "ArityError";
        case ErrorKind::UnknownSurface: return "UnknownSurface";
        case ErrorKind::MissingParameter: return "MissingParameter";
        case ErrorKind::NotSpacelike: return "NotSpacelike";
        case ErrorKind::NotApplicable: return "NotApplicable";
        case ErrorKind::UnknownTheorem: return "UnknownTheorem";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

}  // namespace minksurf
