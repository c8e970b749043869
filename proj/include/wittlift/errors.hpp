// Copyright (c) 2026 the wittlift authors.
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#ifndef WITTLIFT_ERRORS_HPP
#define WITTLIFT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wittlift {

// Every failure mode of the library maps to one of these types, so callers
// (and tests) can catch the precise condition instead of parsing messages.

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NonPrimeError : Error {
    explicit NonPrimeError(const std::string& w) : Error(w) {}
};
struct SizeOverflowError : Error {
    explicit SizeOverflowError(const std::string& w) : Error(w) {}
};
struct DescriptorMismatchError : Error {
    explicit DescriptorMismatchError(const std::string& w) : Error(w) {}
};
struct NotAUnitError : Error {
    explicit NotAUnitError(const std::string& w) : Error(w) {}
};
struct BadLevelError : Error {
    explicit BadLevelError(const std::string& w) : Error(w) {}
};
struct ShapeMismatchError : Error {
    explicit ShapeMismatchError(const std::string& w) : Error(w) {}
};
struct NotInstantiableError : Error {
    explicit NotInstantiableError(const std::string& w) : Error(w) {}
};
struct UnsupportedFamilyError : Error {
    explicit UnsupportedFamilyError(const std::string& w) : Error(w) {}
};
struct NotInvertibleError : Error {
    explicit NotInvertibleError(const std::string& w) : Error(w) {}
};
struct TooLargeError : Error {
    explicit TooLargeError(const std::string& w) : Error(w) {}
};
struct BoundExceededError : Error {
    explicit BoundExceededError(const std::string& w) : Error(w) {}
};
struct NotInKernelError : Error {
    explicit NotInKernelError(const std::string& w) : Error(w) {}
};
struct NotInLieAlgebraError : Error {
    explicit NotInLieAlgebraError(const std::string& w) : Error(w) {}
};
struct WrongParityError : Error {
    explicit WrongParityError(const std::string& w) : Error(w) {}
};
struct HypothesisMissingError : Error {
    explicit HypothesisMissingError(const std::string& w) : Error(w) {}
};
struct ExceptionListHitError : Error {
    explicit ExceptionListHitError(const std::string& w) : Error(w) {}
};
struct IncompleteDatumError : Error {
    explicit IncompleteDatumError(const std::string& w) : Error(w) {}
};
struct UnknownFamilyError : Error {
    explicit UnknownFamilyError(const std::string& w) : Error(w) {}
};
struct NotExactFiltrationError : Error {
    explicit NotExactFiltrationError(const std::string& w) : Error(w) {}
};
struct ZeroDiscriminantError : Error {
    explicit ZeroDiscriminantError(const std::string& w) : Error(w) {}
};
struct FactorizationTimeoutError : Error {
    explicit FactorizationTimeoutError(const std::string& w) : Error(w) {}
};
struct BadPrimeError : Error {
    explicit BadPrimeError(const std::string& w) : Error(w) {}
};
struct BadDegreeError : Error {
    explicit BadDegreeError(const std::string& w) : Error(w) {}
};
struct BadReductionError : Error {
    explicit BadReductionError(const std::string& w) : Error(w) {}
};
struct BudgetExhaustedError : Error {
    explicit BudgetExhaustedError(const std::string& w) : Error(w) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(w) {}
};

}  // namespace wittlift

#endif  // WITTLIFT_ERRORS_HPP
