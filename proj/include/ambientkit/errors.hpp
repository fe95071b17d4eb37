#ifndef AMBIENTKIT_ERRORS_HPP
#define AMBIENTKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ambientkit {

/// Base class for every error raised by the library. `kind()` is the stable
/// name used in CLI diagnostics and JSON reports.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define AMBIENTKIT_DEFINE_ERROR(Name)                                      \
    class Name : public Error {                                            \
    public:                                                                \
        explicit Name(const std::string& what) : Error(#Name, what) {}     \
    }

// core-index
AMBIENTKIT_DEFINE_ERROR(NotInIndexSet);
AMBIENTKIT_DEFINE_ERROR(DegreeMismatch);
AMBIENTKIT_DEFINE_ERROR(SlotOutOfRange);

// exact-linalg
AMBIENTKIT_DEFINE_ERROR(ShapeMismatch);
AMBIENTKIT_DEFINE_ERROR(ParseError);

// shift-ops
AMBIENTKIT_DEFINE_ERROR(InvalidSpec);
AMBIENTKIT_DEFINE_ERROR(VariantUnavailable);
AMBIENTKIT_DEFINE_ERROR(LevelUnavailable);
AMBIENTKIT_DEFINE_ERROR(DegenerateWeight);

// family-solver
AMBIENTKIT_DEFINE_ERROR(IndexMismatch);
AMBIENTKIT_DEFINE_ERROR(PreconditionViolated);
AMBIENTKIT_DEFINE_ERROR(ZeroDenominator);

// flat-ambient
AMBIENTKIT_DEFINE_ERROR(NonHomogeneousInput);
AMBIENTKIT_DEFINE_ERROR(InvariantModeUnsupported);

#undef AMBIENTKIT_DEFINE_ERROR

} // namespace ambientkit

#endif
