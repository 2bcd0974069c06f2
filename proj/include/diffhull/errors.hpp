#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace diffhull {

// Base error. `code()` is a stable machine-readable tag, `witness()` an
// optional human-readable payload (offending element, index tuple, ...).
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string &msg, std::string witness = {})
        : std::runtime_error(msg), code_(std::move(code)),
          witness_(std::move(witness))
    {}
    const std::string &code() const { return code_; }
    const std::string &witness() const { return witness_; }

  private:
    std::string code_;
    std::string witness_;
};

struct OverflowError : Error {
    explicit OverflowError(const std::string &msg, std::string witness = {})
        : Error("Overflow", msg, std::move(witness))
    {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string &msg)
        : Error("DimensionMismatch", msg)
    {}
};

struct NotASubspace : Error {
    explicit NotASubspace(const std::string &msg, std::string witness = {})
        : Error("NotASubspace", msg, std::move(witness))
    {}
};

struct CutoffExceeded : Error {
    explicit CutoffExceeded(const std::string &msg, std::string witness = {})
        : Error("CutoffExceeded", msg, std::move(witness))
    {}
};

struct AxiomViolation : Error {
    explicit AxiomViolation(const std::string &msg, std::string witness = {})
        : Error("AxiomViolation", msg, std::move(witness))
    {}
};

struct ParseError : Error {
    explicit ParseError(const std::string &msg, std::string witness = {})
        : Error("ParseError", msg, std::move(witness))
    {}
};

struct NotStabilized : Error {
    explicit NotStabilized(const std::string &msg)
        : Error("NotStabilized", msg)
    {}
};

struct FiltrationNotPreserved : Error {
    explicit FiltrationNotPreserved(const std::string &msg,
                                    std::string witness = {})
        : Error("FiltrationNotPreserved", msg, std::move(witness))
    {}
};

struct InclusionViolation : Error {
    explicit InclusionViolation(const std::string &msg,
                                std::string witness = {})
        : Error("InclusionViolation", msg, std::move(witness))
    {}
};

struct NotInvolutive : Error {
    explicit NotInvolutive(const std::string &msg, std::string witness = {})
        : Error("NotInvolutive", msg, std::move(witness))
    {}
};

struct NotFlat : Error {
    explicit NotFlat(const std::string &msg, std::string witness = {})
        : Error("NotFlat", msg, std::move(witness))
    {}
};

struct NotSmoothBase : Error {
    explicit NotSmoothBase(const std::string &msg)
        : Error("NotSmoothBase", msg)
    {}
};

struct UnboundedFiltration : Error {
    explicit UnboundedFiltration(const std::string &msg)
        : Error("UnboundedFiltration", msg)
    {}
};

} // namespace diffhull
