#pragma once

#include <stdexcept>
#include <string>

namespace affine4 {

/// Base class for every error the library throws.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation fault: division by a zero-value jet, sqrt/log of a non-positive value, ...
struct DomainError : Error {
    using Error::Error;
};

/// Linear system whose matrix is singular at the working tolerance.
struct SingularSystem : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::size_t offset;
    std::string expected;
    ParseError(std::size_t offset, std::string expected_tokens)
        : Error("parse error at byte " + std::to_string(offset) + ": expected " + expected_tokens),
          offset(offset),
          expected(std::move(expected_tokens)) {}
};

struct UnknownIdentifier : Error {
    std::string name;
    explicit UnknownIdentifier(std::string ident, std::size_t offset)
        : Error("unknown identifier '" + ident + "' at byte " + std::to_string(offset)), name(std::move(ident)) {}
};

/// rank(X_u, X_v) < 2 at an evaluated point.
struct NotImmersed : Error {
    using Error::Error;
};

struct UnknownSurface : Error {
    explicit UnknownSurface(const std::string& name) : Error("unknown catalog surface '" + name + "'") {}
};

/// The bilinear form G is not positive definite for the chosen metric field.
struct NotPositiveDefinite : Error {
    using Error::Error;
};

/// No transversal direction makes the second-fundamental pencil definite.
struct NotLocallyConvex : Error {
    using Error::Error;
};

/// Inconsistent frame inputs (a*lambda4 - e*lambda3 vanished in the frame construction).
struct DegenerateData : Error {
    using Error::Error;
};

/// The equiaffine-plane construction is undefined: 4 b^2 + c^2 = 0.
struct InflectionPoint : Error {
    using Error::Error;
};

struct ZeroVector : Error {
    using Error::Error;
};

struct ZeroCovector : Error {
    using Error::Error;
};

struct SeedAtInflection : Error {
    using Error::Error;
};

struct NotConvexHypersurface : Error {
    using Error::Error;
};

struct NotOnHypersurface : Error {
    using Error::Error;
};

struct UnknownQuadric : Error {
    explicit UnknownQuadric(const std::string& name) : Error("unknown quadric kind '" + name + "'") {}
};

}  // namespace affine4
