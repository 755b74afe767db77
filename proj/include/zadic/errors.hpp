#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace zadic {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input outside the documented domain of an operation.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class NoBezout : public Error {
public:
    using Error::Error;
};

class NotOpen : public Error {
public:
    using Error::Error;
};

class NotACover : public Error {
public:
    using Error::Error;
};

class NotACocycle : public Error {
public:
    using Error::Error;
};

// A self-check on a computed certificate failed. Always a bug.
class CertificateFailure : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& what);
    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& detail() const { return detail_; }

private:
    int line_;
    int column_;
    std::string detail_;
};

struct Undecidable {
    std::string reason;
};

// Result of an operation that may honestly give up on inputs outside the
// catalogued families.
template <class T>
class Decidable {
public:
    Decidable(T value) : v_(std::move(value)) {}
    Decidable(Undecidable u) : v_(std::move(u)) {}

    bool decided() const { return std::holds_alternative<T>(v_); }
    explicit operator bool() const { return decided(); }

    const T& value() const
    {
        if (!decided())
            throw Error("undecidable: " + std::get<Undecidable>(v_).reason);
        return std::get<T>(v_);
    }
    T& value()
    {
        if (!decided())
            throw Error("undecidable: " + std::get<Undecidable>(v_).reason);
        return std::get<T>(v_);
    }
    const T& operator*() const { return value(); }
    const T* operator->() const { return &value(); }

    const std::string& reason() const
    {
        static const std::string empty;
        return decided() ? empty : std::get<Undecidable>(v_).reason;
    }

private:
    std::variant<T, Undecidable> v_;
};

// Throws CertificateFailure with the message when the condition fails.
void require_certificate(bool ok, const std::string& what);

} // namespace zadic
