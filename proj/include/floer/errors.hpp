#pragma once

#include <stdexcept>
#include <string>

namespace floer {

struct FloerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedRing : FloerError {
    explicit UnsupportedRing(const std::string& what)
        : FloerError("unsupported ring: " + what) {}
};

struct RingMismatch : FloerError {
    RingMismatch() : FloerError("operands live over different rings") {}
};

struct DimensionMismatch : FloerError {
    explicit DimensionMismatch(const std::string& what)
        : FloerError("dimension mismatch: " + what) {}
};

struct DegreeViolation : FloerError {
    explicit DegreeViolation(const std::string& entry)
        : FloerError("differential entry violates grading: " + entry) {}
};

struct NotADifferential : FloerError {
    std::string witness;
    explicit NotADifferential(const std::string& gen)
        : FloerError("d.d != 0 on generator " + gen), witness(gen) {}
};

struct NotChainMap : FloerError {
    std::string witness;
    explicit NotChainMap(const std::string& gen)
        : FloerError("map fails to commute with the differential at " + gen), witness(gen) {}
};

struct NotIntertwining : FloerError {
    explicit NotIntertwining(const std::string& what)
        : FloerError("map does not intertwine the U-maps: " + what) {}
};

struct NotExact : FloerError {
    int degree;
    std::string position;
    NotExact(int deg, const std::string& pos)
        : FloerError("sequence not exact in degree " + std::to_string(deg) + " at " + pos),
          degree(deg), position(pos) {}
};

struct SemiPositivityRequired : FloerError {
    explicit SemiPositivityRequired(const std::string& what)
        : FloerError("differential has negative t-powers: " + what) {}
};

struct WindowTooSmall : FloerError {
    explicit WindowTooSmall(const std::string& what)
        : FloerError("degree window too small: " + what) {}
};

struct ParseError : FloerError {
    int line;
    ParseError(int line_no, const std::string& what)
        : FloerError("parse error at line " + std::to_string(line_no) + ": " + what),
          line(line_no) {}
};

struct ValidationError : FloerError {
    using FloerError::FloerError;
};

struct InternalMismatch : FloerError {
    explicit InternalMismatch(const std::string& what)
        : FloerError("internal cross-check failed: " + what) {}
};

} // namespace floer
