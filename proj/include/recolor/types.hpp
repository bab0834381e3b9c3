#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace recolor {

using Vertex = std::int32_t;
using Color = std::int32_t;
using Weight = std::int64_t;

struct Request {
    Vertex u = 0;
    Vertex v = 0;
    friend bool operator==(const Request&, const Request&) = default;
};

// Input errors map to exit code 1, invariant errors to exit code 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputError : Error {
    using Error::Error;
};
struct InvariantError : Error {
    using Error::Error;
};

struct InvalidInstance : InputError {
    using InputError::InputError;
};
struct InfeasibleInstance : InputError {
    using InputError::InputError;
};
struct DegreeViolation : InputError {
    using InputError::InputError;
};
struct ScaleExceeded : InputError {
    using InputError::InputError;
};
struct ParseError : InputError {
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

struct CapacityViolation : InvariantError {
    using InvariantError::InvariantError;
};
struct OddComponent : InvariantError {
    using InvariantError::InvariantError;
};
struct Exhausted : Error {
    using Error::Error;
};

// Exact positive rational, kept reduced. Used for epsilon.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t num, std::int64_t den);
    // Accepts "p/q", "0.25" or an integer.
    static Rational parse(std::string_view text);

    Rational halved() const { return make(num, den * 2); }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;

    friend bool operator==(const Rational&, const Rational&) = default;
};

// floor(x * a / b) without overflow for the magnitudes used here.
Weight floor_mul_div(Weight x, std::int64_t a, std::int64_t b);

// floor((1 + eps) * base)
inline Weight augmented(Weight base, Rational eps) {
    return floor_mul_div(base, eps.den + eps.num, eps.den);
}

}  // namespace recolor
