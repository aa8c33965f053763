#pragma once

#include <stdexcept>
#include <string>

namespace qvm {

enum class ErrorKind {
    ShapeMismatch,
    NonInvertibleConstantTerm,
    NotSemisimpleLeading,
    TopCoefficientZero,
    DimensionTooLarge,
    NegativeTargetDimension,
    OrbitAssertionFailed,
    NotIrregularPole,
    EmptySpace,
    TraceConditionViolated,
    NonGeneric,
    GraphMismatch,
    Parse,
};

const char* error_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind k, const std::string& what)
        : std::runtime_error(std::string(error_name(k)) + ": " + what), kind_(k) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& what) { throw Error(k, what); }

inline void require_shape(bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::ShapeMismatch, what);
}

} // namespace qvm
