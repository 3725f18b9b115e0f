#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace semunit {

// Error categories shared by every module. The service layer maps them 1:1
// onto API error codes.
enum class ErrorCode { not_found, validation, conflict, format, type_error, integrity };

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::vector<std::string> details = {})
        : std::runtime_error(message), code_(code), details_(std::move(details)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::vector<std::string>& details() const noexcept { return details_; }

private:
    ErrorCode code_;
    std::vector<std::string> details_;
};

}  // namespace semunit
