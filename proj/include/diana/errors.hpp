#pragma once

#include <stdexcept>
#include <string>

namespace diana {

enum class ErrorKind {
    invalid_link,
    invalid_site,
    unknown_route,
    duplicate_enqueue,
    undefined_estimate,
    unrunnable,
    validation,
    simulation_corrupt,
    log_integrity,
    io,
    usage,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace diana
