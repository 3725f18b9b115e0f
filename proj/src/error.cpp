#include "semunit/error.hpp"

namespace semunit {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::not_found: return "not_found";
        case ErrorCode::validation: return "validation";
        case ErrorCode::conflict: return "conflict";
        case ErrorCode::format: return "format";
        case ErrorCode::type_error: return "type_error";
        case ErrorCode::integrity: return "integrity";
    }
    return "unknown";
}

}  // namespace semunit
