#ifndef MUTAGEN_INTERP_HPP
#define MUTAGEN_INTERP_HPP

#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>

#include "ast.hpp"

namespace mutagen {

enum class RuntimeErrorKind { UndefinedVariable, DivisionByZero, Overflow, NoReturn };

inline const char* runtime_error_name(RuntimeErrorKind k) {
    switch (k) {
    case RuntimeErrorKind::UndefinedVariable: return "undefined-variable";
    case RuntimeErrorKind::DivisionByZero: return "division-by-zero";
    case RuntimeErrorKind::Overflow: return "overflow";
    case RuntimeErrorKind::NoReturn: return "no-return";
    }
    return "?";
}

struct Outcome {
    enum class Kind { Value, Error, FuelExhausted };
    Kind kind = Kind::Value;
    long long value = 0;                 // valid when kind == Value
    RuntimeErrorKind error = RuntimeErrorKind::NoReturn;  // valid when kind == Error

    static Outcome of_value(long long v) { return {Kind::Value, v, {}}; }
    static Outcome of_error(RuntimeErrorKind e) { return {Kind::Error, 0, e}; }
    static Outcome fuel_exhausted() { return {Kind::FuelExhausted, 0, {}}; }

    friend bool operator==(const Outcome& a, const Outcome& b) {
        if (a.kind != b.kind) return false;
        switch (a.kind) {
        case Kind::Value: return a.value == b.value;
        case Kind::Error: return a.error == b.error;
        case Kind::FuelExhausted: return true;
        }
        return false;
    }
};

struct ExecBudget {
    long long fuel = 100000;  // maximum statement-evaluation steps
};

struct ArityMismatch : std::logic_error {
    ArityMismatch(size_t expected, size_t got)
        : std::logic_error("arity mismatch: program takes " + std::to_string(expected) +
                           " inputs, got " + std::to_string(got)) {}
};

namespace detail {

struct Interp {
    std::map<std::string, long long> env;
    long long fuel;

    // Exec flow: a non-Value outcome aborts the walk immediately.
    struct Signal {
        enum class Kind { None, Returned, Aborted } kind = Kind::None;
        Outcome outcome;
    };

    bool eval(const Expr& e, long long& out, Signal& sig) {
        if (const auto* lit = std::get_if<IntLit>(&e.node)) {
            out = lit->value;
            return true;
        }
        if (const auto* var = std::get_if<VarRef>(&e.node)) {
            auto it = env.find(var->name);
            if (it == env.end()) {
                sig = {Signal::Kind::Aborted,
                       Outcome::of_error(RuntimeErrorKind::UndefinedVariable)};
                return false;
            }
            out = it->second;
            return true;
        }
        const auto& bin = std::get<BinaryExpr>(e.node);
        long long l, r;
        if (!eval(*bin.lhs, l, sig) || !eval(*bin.rhs, r, sig)) return false;
        switch (bin.op) {
        case BinOp::Add:
            if (__builtin_add_overflow(l, r, &out)) return overflow(sig);
            return true;
        case BinOp::Sub:
            if (__builtin_sub_overflow(l, r, &out)) return overflow(sig);
            return true;
        case BinOp::Mul:
            if (__builtin_mul_overflow(l, r, &out)) return overflow(sig);
            return true;
        case BinOp::Div:
            if (r == 0) return div_zero(sig);
            if (l == std::numeric_limits<long long>::min() && r == -1) return overflow(sig);
            out = l / r;
            return true;
        case BinOp::Mod:
            if (r == 0) return div_zero(sig);
            if (l == std::numeric_limits<long long>::min() && r == -1) return overflow(sig);
            out = l % r;
            return true;
        case BinOp::Lt: out = l < r; return true;
        case BinOp::Le: out = l <= r; return true;
        case BinOp::Gt: out = l > r; return true;
        case BinOp::Ge: out = l >= r; return true;
        case BinOp::Eq: out = l == r; return true;
        case BinOp::Ne: out = l != r; return true;
        }
        return false;
    }

    static bool overflow(Signal& sig) {
        sig = {Signal::Kind::Aborted, Outcome::of_error(RuntimeErrorKind::Overflow)};
        return false;
    }

    static bool div_zero(Signal& sig) {
        sig = {Signal::Kind::Aborted, Outcome::of_error(RuntimeErrorKind::DivisionByZero)};
        return false;
    }

    // one step per statement execution, plus one per while-condition check
    bool spend(Signal& sig) {
        if (fuel <= 0) {
            sig = {Signal::Kind::Aborted, Outcome::fuel_exhausted()};
            return false;
        }
        --fuel;
        return true;
    }

    void run_block(const std::vector<Stmt>& body, Signal& sig) {
        for (const auto& s : body) {
            run_stmt(s, sig);
            if (sig.kind != Signal::Kind::None) return;
        }
    }

    void run_stmt(const Stmt& s, Signal& sig) {
        if (!spend(sig)) return;
        if (const auto* a = std::get_if<AssignStmt>(&s.node)) {
            long long v;
            if (!eval(*a->value, v, sig)) return;
            env[a->target] = v;
        } else if (const auto* w = std::get_if<WhileStmt>(&s.node)) {
            for (;;) {
                if (!spend(sig)) return;
                long long c;
                if (!eval(*w->cond, c, sig)) return;
                if (c == 0) break;
                run_block(w->body, sig);
                if (sig.kind != Signal::Kind::None) return;
            }
        } else if (const auto* i = std::get_if<IfStmt>(&s.node)) {
            long long c;
            if (!eval(*i->cond, c, sig)) return;
            run_block(c != 0 ? i->then_body : i->else_body, sig);
        } else {
            const auto& r = std::get<ReturnStmt>(s.node);
            long long v;
            if (!eval(*r.value, v, sig)) return;
            sig = {Signal::Kind::Returned, Outcome::of_value(v)};
        }
    }
};

}  // namespace detail

inline Outcome execute(const Program& program, std::span<const long long> inputs,
                       ExecBudget budget = {}) {
    if (inputs.size() != program.params.size())
        throw ArityMismatch(program.params.size(), inputs.size());
    detail::Interp interp;
    interp.fuel = budget.fuel;
    for (size_t i = 0; i < inputs.size(); ++i)
        interp.env[program.params[i]] = inputs[i];
    detail::Interp::Signal sig;
    interp.run_block(program.body, sig);
    switch (sig.kind) {
    case detail::Interp::Signal::Kind::Returned:
    case detail::Interp::Signal::Kind::Aborted:
        return sig.outcome;
    default:
        return Outcome::of_error(RuntimeErrorKind::NoReturn);
    }
}

}  // namespace mutagen

#endif
