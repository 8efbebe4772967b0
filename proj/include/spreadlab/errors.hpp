#pragma once

#include <stdexcept>
#include <string>

namespace spreadlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegreeMismatch : public Error {
public:
    DegreeMismatch(std::size_t a, std::size_t b)
        : Error("degree mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class OrderExceedsCap : public Error {
public:
    OrderExceedsCap(const std::string& order, std::size_t cap)
        : Error("group order " + order + " exceeds element cap " + std::to_string(cap)) {}
};

// Malformed document: bad syntax, missing field, wrong type.
class ParseError : public Error {
public:
    ParseError(std::string path, const std::string& msg)
        : Error(path.empty() ? msg : path + ": " + msg), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// Well-formed document whose content fails a named consistency check.
class ValidationError : public Error {
public:
    ValidationError(std::string check, std::string path, const std::string& msg)
        : Error("[" + check + "] " + (path.empty() ? msg : path + ": " + msg)),
          check_(std::move(check)),
          path_(std::move(path)) {}
    const std::string& check() const { return check_; }
    const std::string& path() const { return path_; }

private:
    std::string check_;
    std::string path_;
};

class CountMismatch : public ValidationError {
public:
    CountMismatch(const std::string& path, const std::string& msg)
        : ValidationError("conjugate-count", path, msg) {}
};

class IdentityArgument : public Error {
public:
    IdentityArgument() : Error("support of the identity is undefined") {}
};

class MissingPrimeMap : public Error {
public:
    MissingPrimeMap(const std::string& cls, unsigned long long i)
        : Error("no stored prime maps reach exponent " + std::to_string(i) + " on class " + cls) {}
};

class UnknownClass : public Error {
public:
    explicit UnknownClass(const std::string& name) : Error("unknown class " + name) {}
};

class TargetNotInvolution : public Error {
public:
    explicit TargetNotInvolution(const std::string& name)
        : Error("target class " + name + " is not an involution class") {}
};

class ResidualMismatch : public Error {
public:
    ResidualMismatch(std::string computed, std::string declared)
        : Error("residual mismatch: computed {" + computed + "}, certificate {" + declared + "}"),
          computed_(std::move(computed)),
          declared_(std::move(declared)) {}
    const std::string& computed() const { return computed_; }
    const std::string& declared() const { return declared_; }

private:
    std::string computed_;
    std::string declared_;
};

}  // namespace spreadlab
