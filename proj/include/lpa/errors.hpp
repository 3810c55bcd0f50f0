#pragma once

#include <stdexcept>
#include <string>

namespace lpa {

struct FieldMismatch : std::runtime_error {
    explicit FieldMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : std::runtime_error {
    DivisionByZero() : std::runtime_error("division by zero") {}
};

struct NotComposable : std::runtime_error {
    explicit NotComposable(const std::string& what) : std::runtime_error(what) {}
};

struct NotASink : std::runtime_error {
    explicit NotASink(const std::string& what) : std::runtime_error(what) {}
};

struct NotALinePoint : std::runtime_error {
    explicit NotALinePoint(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroElement : std::runtime_error {
    ZeroElement() : std::runtime_error("operation undefined on the zero element") {}
};

struct EmptySupport : std::runtime_error {
    EmptySupport() : std::runtime_error("vector has empty support") {}
};

struct ClassMismatch : std::runtime_error {
    explicit ClassMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct SinkMismatch : std::runtime_error {
    explicit SinkMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct WindowNotClosed : std::runtime_error {
    explicit WindowNotClosed(const std::string& what) : std::runtime_error(what) {}
};

struct PointOutOfSystem : std::runtime_error {
    explicit PointOutOfSystem(const std::string& what) : std::runtime_error(what) {}
};

struct NotPerfect : std::runtime_error {
    explicit NotPerfect(const std::string& what) : std::runtime_error(what) {}
};

struct UntracedPoint : std::runtime_error {
    explicit UntracedPoint(const std::string& what) : std::runtime_error(what) {}
};

struct EmptySystem : std::runtime_error {
    EmptySystem() : std::runtime_error("branching system has no points") {}
};

struct NotAcyclic : std::runtime_error {
    explicit NotAcyclic(const std::string& what) : std::runtime_error(what) {}
};

struct HypothesisFailed : std::runtime_error {
    std::string vertex;
    explicit HypothesisFailed(std::string v)
        : std::runtime_error("faithfulness hypothesis fails at vertex " + v),
          vertex(std::move(v)) {}
};

struct NoWitnessInFiniteField : std::runtime_error {
    NoWitnessInFiniteField()
        : std::runtime_error("every unit of the finite field kills the probe coefficient") {}
};

struct NoProbeAvailable : std::runtime_error {
    explicit NoProbeAvailable(const std::string& what) : std::runtime_error(what) {}
};

struct ModeViolation : std::runtime_error {
    explicit ModeViolation(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& what, int l, int c)
        : std::runtime_error("parse error at " + std::to_string(l) + ":" +
                             std::to_string(c) + ": " + what),
          line(l), column(c) {}
};

}  // namespace lpa
