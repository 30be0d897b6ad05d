#pragma once

#include <stdexcept>
#include <string>

namespace setlab {

// Domain error categories surfaced by the engine.  The CLI maps any Error to
// exit code 1; malformed command lines exit with 2.
enum class Errc {
    syntax,
    unbound_variable,
    capture,
    classification,
    precondition,
    slot_arity,
    not_in_level,
    non_transitive_domain,
    resource_limit,
    value_escapes_level,
    bad_jump_target,
    normalization_refused,
    no_evaluator,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(Errc c) {
    switch (c) {
    case Errc::syntax: return "syntax";
    case Errc::unbound_variable: return "unbound-variable";
    case Errc::capture: return "capture";
    case Errc::classification: return "classification";
    case Errc::precondition: return "precondition";
    case Errc::slot_arity: return "slot-arity";
    case Errc::not_in_level: return "not-in-level";
    case Errc::non_transitive_domain: return "non-transitive-domain";
    case Errc::resource_limit: return "resource-limit";
    case Errc::value_escapes_level: return "value-escapes-level";
    case Errc::bad_jump_target: return "bad-jump-target";
    case Errc::normalization_refused: return "normalization-refused";
    case Errc::no_evaluator: return "no-evaluator";
    }
    return "unknown";
}

} // namespace setlab
