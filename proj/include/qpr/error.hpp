#pragma once

#include <stdexcept>
#include <string>

namespace qpr {

enum class ErrorKind {
    parameter,
    parse,
    dimension,
    commutation,
    capacity,
    routing,
    config,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::parameter: return "parameter";
        case ErrorKind::parse: return "parse";
        case ErrorKind::dimension: return "dimension";
        case ErrorKind::commutation: return "commutation";
        case ErrorKind::capacity: return "capacity";
        case ErrorKind::routing: return "routing";
        case ErrorKind::config: return "config";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace qpr
