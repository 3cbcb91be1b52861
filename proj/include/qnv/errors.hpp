#pragma once

#include <stdexcept>
#include <string>

namespace qnv {

enum class ErrorKind {
    InvalidSpec,
    DomainError,
    RangeError,
    CaseError,
    ResourceError,
    NonFinitePayoff,
    NonIntegrable,
    SpecShapeError,
    LegInconsistency,
    ParseError,
};

const char* to_string(ErrorKind kind) noexcept;

//! Single exception type for the library; the kind drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

#define QNV_REQUIRE(cond, kind, msg)                                                    \
    do {                                                                                \
        if (!(cond))                                                                    \
            throw ::qnv::Error(::qnv::ErrorKind::kind, msg);                            \
    } while (false)

inline const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::CaseError: return "CaseError";
    case ErrorKind::ResourceError: return "ResourceError";
    case ErrorKind::NonFinitePayoff: return "NonFinitePayoff";
    case ErrorKind::NonIntegrable: return "NonIntegrable";
    case ErrorKind::SpecShapeError: return "SpecShapeError";
    case ErrorKind::LegInconsistency: return "LegInconsistency";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Error";
}

} // namespace qnv
