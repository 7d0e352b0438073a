#pragma once

#include <stdexcept>
#include <string>

namespace chi {

/// Error taxonomy shared by every engine. The CLI maps kinds to exit codes:
/// usage -> 1, resource -> 3, everything else -> 2.
enum class ErrorKind {
    domain,       // precondition violated by the inputs
    structural,   // malformed mesh/graph/complex
    numeric,      // iterative numerics failed
    resource,     // guard against runaway enumeration
    parse,        // malformed text input
    consistency,  // internal cross-check failed
    io,           // file access
    usage,        // bad command line
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    const char* kind_name() const {
        switch (kind_) {
            case ErrorKind::domain: return "domain";
            case ErrorKind::structural: return "structural";
            case ErrorKind::numeric: return "numeric";
            case ErrorKind::resource: return "resource";
            case ErrorKind::parse: return "parse";
            case ErrorKind::consistency: return "consistency";
            case ErrorKind::io: return "io";
            case ErrorKind::usage: return "usage";
        }
        return "unknown";
    }

  private:
    ErrorKind kind_;
};

inline Error domain_error(const std::string& msg) { return Error(ErrorKind::domain, msg); }
inline Error structural_error(const std::string& msg) { return Error(ErrorKind::structural, msg); }
inline Error numeric_error(const std::string& msg) { return Error(ErrorKind::numeric, msg); }
inline Error resource_error(const std::string& msg) { return Error(ErrorKind::resource, msg); }
inline Error parse_error(const std::string& msg) { return Error(ErrorKind::parse, msg); }
inline Error consistency_error(const std::string& msg) { return Error(ErrorKind::consistency, msg); }
inline Error io_error(const std::string& msg) { return Error(ErrorKind::io, msg); }
inline Error usage_error(const std::string& msg) { return Error(ErrorKind::usage, msg); }

}  // namespace chi
