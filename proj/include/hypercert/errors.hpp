#pragma once

#include <stdexcept>
#include <string>

namespace hypercert {

enum class Err {
    OutOfRange,
    SelfLoop,
    NotSubset,
    EmptySubset,
    NoEdges,
    ExplosionCap,
    Budget,
    BadParams,
    NotProbability,
    SupportViolation,
    ComponentTooLarge,
    OracleViolation,
    ZeroWeight,
    NoValidThreshold,
    StageMismatch,
    ParseError,
    InvariantViolation,
    NotHybrid,
};

inline const char* err_name(Err e) {
    switch (e) {
        case Err::OutOfRange: return "OutOfRange";
        case Err::SelfLoop: return "SelfLoop";
        case Err::NotSubset: return "NotSubset";
        case Err::EmptySubset: return "EmptySubset";
        case Err::NoEdges: return "NoEdges";
        case Err::ExplosionCap: return "ExplosionCap";
        case Err::Budget: return "Budget";
        case Err::BadParams: return "BadParams";
        case Err::NotProbability: return "NotProbability";
        case Err::SupportViolation: return "SupportViolation";
        case Err::ComponentTooLarge: return "ComponentTooLarge";
        case Err::OracleViolation: return "OracleViolation";
        case Err::ZeroWeight: return "ZeroWeight";
        case Err::NoValidThreshold: return "NoValidThreshold";
        case Err::StageMismatch: return "StageMismatch";
        case Err::ParseError: return "ParseError";
        case Err::InvariantViolation: return "InvariantViolation";
        case Err::NotHybrid: return "NotHybrid";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& msg)
        : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}

    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Err code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

}  // namespace hypercert
