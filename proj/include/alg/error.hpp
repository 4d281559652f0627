#pragma once

#include <stdexcept>
#include <string>

namespace alg {

enum class Errc {
    UnknownOp,
    ArityMismatch,
    SortMismatch,
    UnknownVar,
    MissingAssignment,
    SignatureMismatch,
    UnknownTheory,
    UnsupportedTheory,
    NotACongruence,
    NotClosed,
    NotProper,
    NotAHomomorphism,
    UnknownImplementation,
    NoSolution,
    LimitExceeded,
    IllScopedRule,
    NotFound,
    InvalidKey,
    SyntaxError,
    SourceTargetMismatch,
    BadFile,
    Unsupported,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::UnknownOp: return "UnknownOp";
        case Errc::ArityMismatch: return "ArityMismatch";
        case Errc::SortMismatch: return "SortMismatch";
        case Errc::UnknownVar: return "UnknownVar";
        case Errc::MissingAssignment: return "MissingAssignment";
        case Errc::SignatureMismatch: return "SignatureMismatch";
        case Errc::UnknownTheory: return "UnknownTheory";
        case Errc::UnsupportedTheory: return "UnsupportedTheory";
        case Errc::NotACongruence: return "NotACongruence";
        case Errc::NotClosed: return "NotClosed";
        case Errc::NotProper: return "NotProper";
        case Errc::NotAHomomorphism: return "NotAHomomorphism";
        case Errc::UnknownImplementation: return "UnknownImplementation";
        case Errc::NoSolution: return "NoSolution";
        case Errc::LimitExceeded: return "LimitExceeded";
        case Errc::IllScopedRule: return "IllScopedRule";
        case Errc::NotFound: return "NotFound";
        case Errc::InvalidKey: return "InvalidKey";
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::SourceTargetMismatch: return "SourceTargetMismatch";
        case Errc::BadFile: return "BadFile";
        case Errc::Unsupported: return "Unsupported";
    }
    return "?";
}

class Error : public std::runtime_error {
  public:
    Error(Errc code, std::string detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

}  // namespace alg
