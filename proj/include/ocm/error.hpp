#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ocm {

// All rejected operations throw Error. `code` is a stable machine-readable
// identifier (e.g. "InsufficientDeposit"); `what()` carries a human message.
// Operations validate fully before mutating, so a thrown Error implies no
// state change.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace ocm
