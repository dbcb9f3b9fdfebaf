#pragma once

#include <stdexcept>
#include <string>

namespace qtop {

enum class ErrKind {
    Dimension,
    Rank,
    Range,
    Schema,
    Validation,
    Numeric,
    Gap,
    Overlap,
    Degeneracy,
    StratumResolution,
    ConstantIndex,
    UnsupportedDimension,
    VertexOrder,
    Internal,
};

/* Single exception type; `payload` carries a residual norm or similar
   diagnostic where the failure mode has one (numeric non-convergence,
   gap/overlap floors). */
class Error : public std::runtime_error {
public:
    Error(ErrKind kind, const std::string& msg, double payload = 0.0)
        : std::runtime_error(msg), kind_(kind), payload_(payload) {}
    ErrKind kind() const { return kind_; }
    double payload() const { return payload_; }

private:
    ErrKind kind_;
    double payload_;
};

[[noreturn]] inline void fail(ErrKind k, const std::string& msg, double payload = 0.0) {
    throw Error(k, msg, payload);
}

inline void require(bool cond, ErrKind k, const std::string& msg) {
    if (!cond) fail(k, msg);
}

const char* err_kind_name(ErrKind k);

}  // namespace qtop
