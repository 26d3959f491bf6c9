#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace algeval {

// Base class for all data-level failures. Each subclass carries a stable
// kind tag so callers (notably the CLI) can emit structured error messages
// without string-matching what().
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class EmptySketch : public Error {
public:
    explicit EmptySketch(const std::string& what = "sketch has no items")
        : Error("EmptySketch", what) {}
};

class MissingLabel : public Error {
public:
    explicit MissingLabel(const std::string& what) : Error("MissingLabel", what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error("ParseError", what) {}
};

class InconsistentTruthColumn : public Error {
public:
    explicit InconsistentTruthColumn(const std::string& what)
        : Error("InconsistentTruthColumn", what) {}
};

class InfeasibleMoments : public Error {
public:
    explicit InfeasibleMoments(const std::string& what)
        : Error("InfeasibleMoments", what) {}
};

class IndivisibleTestSize : public Error {
public:
    explicit IndivisibleTestSize(const std::string& what)
        : Error("IndivisibleTestSize", what) {}
};

class NotRational : public Error {
public:
    explicit NotRational(const std::string& what) : Error("NotRational", what) {}
};

class UndefinedAccuracy : public Error {
public:
    explicit UndefinedAccuracy(const std::string& what)
        : Error("UndefinedAccuracy", what) {}
};

class DegenerateAgreement : public Error {
public:
    explicit DegenerateAgreement(const std::string& what)
        : Error("DegenerateAgreement", what) {}
};

class NegativeRadicand : public Error {
public:
    explicit NegativeRadicand(const std::string& what)
        : Error("NegativeRadicand", what) {}
};

class InvalidBracket : public Error {
public:
    explicit InvalidBracket(const std::string& what) : Error("InvalidBracket", what) {}
};

class CounterOverflow : public Error {
public:
    explicit CounterOverflow(const std::string& what)
        : Error("CounterOverflow", what) {}
};

}  // namespace algeval
