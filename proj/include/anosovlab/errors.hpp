#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace anosov {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

#define ANOSOV_ERROR(Name, tag)                                              \
    class Name : public Error {                                              \
    public:                                                                  \
        using Error::Error;                                                  \
        const char* kind() const noexcept override { return tag; }           \
    };

ANOSOV_ERROR(DimensionError, "dimension")
ANOSOV_ERROR(PreconditionError, "precondition")
ANOSOV_ERROR(DomainError, "domain")
ANOSOV_ERROR(NumericError, "numeric")
ANOSOV_ERROR(UnderflowError, "underflow")
ANOSOV_ERROR(BudgetError, "budget")
ANOSOV_ERROR(InputError, "input")
ANOSOV_ERROR(ConstructionError, "construction")

#undef ANOSOV_ERROR

// Intersection whose principal-angle spectrum straddles the cutoff.
class AmbiguityError : public Error {
public:
    AmbiguityError(const std::string& what, std::vector<double> angles)
        : Error(what), angles_(std::move(angles)) {}
    const char* kind() const noexcept override { return "ambiguity"; }
    const std::vector<double>& angles() const { return angles_; }

private:
    std::vector<double> angles_;
};

// Missing eigenvalue or singular value gap at a requested index.
class GapError : public Error {
public:
    GapError(const std::string& what, int index, double ratio)
        : Error(what), index_(index), ratio_(ratio) {}
    const char* kind() const noexcept override { return "gap"; }
    int index() const { return index_; }
    double ratio() const { return ratio_; }

private:
    int index_;
    double ratio_;
};

}  // namespace anosov
