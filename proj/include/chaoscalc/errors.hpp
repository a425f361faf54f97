#pragma once

#include <stdexcept>
#include <string>

namespace chaoscalc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mismatched dimensions between operands (vector length, model size, copy rows).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Operation requires the Hilbert (l2) norm tag.
class UnsupportedNormError : public Error {
public:
    using Error::Error;
};

/// Operator was required to be symmetric but is not.
class SymmetryError : public Error {
public:
    using Error::Error;
};

/// Function/operator was required to be tetrahedral (all index entries distinct).
class TetrahedralityError : public Error {
public:
    using Error::Error;
};

/// Operand must have zero mean (no constant term).
class MeanZeroError : public Error {
public:
    using Error::Error;
};

/// A numerical accuracy contract cannot be met (e.g. quadrature bounds too tight).
class AccuracyError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration value or malformed config file.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace chaoscalc
