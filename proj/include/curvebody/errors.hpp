#pragma once

#include <stdexcept>
#include <string>

namespace curvebody {

// Base for all recoverable domain failures raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- algebra ---
struct SignMismatch : Error {
    explicit SignMismatch(const std::string& d) : Error("SignMismatch: " + d) {}
};
struct ZeroDivisor : Error {
    explicit ZeroDivisor(const std::string& d) : Error("ZeroDivisor: " + d) {}
};
struct NonInvertible : Error {
    explicit NonInvertible(const std::string& d) : Error("NonInvertible: " + d) {}
};
struct SqrtDomain : Error {
    explicit SqrtDomain(const std::string& d) : Error("SqrtDomain: " + d) {}
};
struct NullNorm : Error {
    explicit NullNorm(const std::string& d) : Error("NullNorm: " + d) {}
};
struct WrongSheet : Error {
    explicit WrongSheet(const std::string& d) : Error("WrongSheet: " + d) {}
};
struct NotUnit : Error {
    explicit NotUnit(const std::string& d) : Error("NotUnit: " + d) {}
};

// --- chart geometry ---
struct ChartDomain : Error {
    explicit ChartDomain(const std::string& d) : Error("ChartDomain: " + d) {}
};
struct EquatorSingularity : Error {
    explicit EquatorSingularity(const std::string& d) : Error("EquatorSingularity: " + d) {}
};
struct NonInvertibleDenominator : Error {
    explicit NonInvertibleDenominator(const std::string& d)
        : Error("NonInvertibleDenominator: " + d) {}
};
struct NumericalDomain : Error {
    explicit NumericalDomain(const std::string& d) : Error("NumericalDomain: " + d) {}
};

// --- two-body kinematics ---
struct DegenerateCM : Error {
    explicit DegenerateCM(const std::string& d) : Error("DegenerateCM: " + d) {}
};
struct ChartInfinity : Error {
    explicit ChartInfinity(const std::string& d) : Error("ChartInfinity: " + d) {}
};

// --- dynamics ---
struct CoincidentPoints : Error {
    explicit CoincidentPoints(const std::string& d) : Error("CoincidentPoints: " + d) {}
};
struct PotentialSingularity : Error {
    explicit PotentialSingularity(const std::string& d) : Error("PotentialSingularity: " + d) {}
};

// --- configuration ---
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& d)
        : Error("ParseError: line " + std::to_string(line_) + ": " + d), line(line_) {}
};
struct ValidationError : Error {
    std::string key;
    ValidationError(std::string key_, const std::string& d)
        : Error("ValidationError: " + key_ + ": " + d), key(std::move(key_)) {}
};
struct UnknownKey : Error {
    std::string key;
    explicit UnknownKey(std::string key_)
        : Error("UnknownKey: " + key_), key(std::move(key_)) {}
};

}  // namespace curvebody
