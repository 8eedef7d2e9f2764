#ifndef MUTAGEN_MUTATE_HPP
#define MUTAGEN_MUTATE_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ast.hpp"
#include "domain.hpp"
#include "interp.hpp"
#include "parallel.hpp"
#include "printer.hpp"

namespace mutagen {

enum class MutationOperatorKind { AOR, ROR, CRP };

inline const char* operator_name(MutationOperatorKind k) {
    switch (k) {
    case MutationOperatorKind::AOR: return "AOR";
    case MutationOperatorKind::ROR: return "ROR";
    case MutationOperatorKind::CRP: return "CRP";
    }
    return "?";
}

struct OperatorSet {
    bool aor = true;
    bool ror = true;
    bool crp = true;

    static OperatorSet all() { return {}; }
    static OperatorSet none() { return {false, false, false}; }
};

/// A single-site syntactic variant of a program.
struct Mutant {
    int id = 0;
    MutationOperatorKind op = MutationOperatorKind::AOR;
    SourceSpan site;
    std::string original_fragment;
    std::string mutated_fragment;
    Program program;
};

inline Mutant clone(const Mutant& m) {
    return Mutant{m.id, m.op, m.site, m.original_fragment, m.mutated_fragment,
                  clone(m.program)};
}

struct NoMutants : std::runtime_error {
    NoMutants() : std::runtime_error("program has no applicable mutation sites") {}
};

struct DomainTooLarge : std::runtime_error {
    explicit DomainTooLarge(uint64_t needed, uint64_t cap)
        : std::runtime_error("equivalence scan needs " + std::to_string(needed) +
                             " executions, cap is " + std::to_string(cap)) {}
};

namespace detail {

// Statements top-down, expressions in-order: matches source order of operators.
template <typename Fn>
struct ExprWalker {
    Fn& fn;
    size_t index = 0;

    template <typename ExprT>
    void expr(ExprT& e) {
        if (auto* bin = std::get_if<BinaryExpr>(&e.node)) {
            expr(*bin->lhs);
            fn(e, index++);
            expr(*bin->rhs);
        } else {
            fn(e, index++);
        }
    }

    template <typename StmtT>
    void stmt(StmtT& s) {
        if (auto* a = std::get_if<AssignStmt>(&s.node)) {
            expr(*a->value);
        } else if (auto* w = std::get_if<WhileStmt>(&s.node)) {
            expr(*w->cond);
            for (auto& inner : w->body) stmt(inner);
        } else if (auto* i = std::get_if<IfStmt>(&s.node)) {
            expr(*i->cond);
            for (auto& inner : i->then_body) stmt(inner);
            for (auto& inner : i->else_body) stmt(inner);
        } else {
            expr(*std::get<ReturnStmt>(s.node).value);
        }
    }
};

template <typename ProgramT, typename Fn>
void visit_exprs(ProgramT& prog, Fn&& fn) {
    ExprWalker<std::remove_reference_t<Fn>> walk{fn};
    for (auto& s : prog.body) walk.stmt(s);
}

inline constexpr std::array<BinOp, 5> kArithOps = {
    BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Mod};
inline constexpr std::array<BinOp, 6> kRelOps = {
    BinOp::Lt, BinOp::Le, BinOp::Gt, BinOp::Ge, BinOp::Eq, BinOp::Ne};

inline Program with_op_replaced(const Program& original, size_t target_index, BinOp op) {
    Program mutated = clone(original);
    visit_exprs(mutated, [&](Expr& e, size_t idx) {
        if (idx == target_index) std::get<BinaryExpr>(e.node).op = op;
    });
    return mutated;
}

inline Program with_const_replaced(const Program& original, size_t target_index,
                                   long long value) {
    Program mutated = clone(original);
    visit_exprs(mutated, [&](Expr& e, size_t idx) {
        if (idx == target_index) std::get<IntLit>(e.node).value = value;
    });
    return mutated;
}

}  // namespace detail

/// Every first-order mutant reachable by the enabled operators, in a
/// deterministic source-order traversal. Ids are dense 0..N-1.
inline std::vector<Mutant> generate_mutants(const Program& program,
                                            OperatorSet ops = OperatorSet::all()) {
    std::vector<Mutant> out;
    detail::visit_exprs(program, [&](const Expr& e, size_t idx) {
        if (const auto* bin = std::get_if<BinaryExpr>(&e.node)) {
            const bool arith = is_arithmetic(bin->op);
            if (arith && !ops.aor) return;
            if (!arith && !ops.ror) return;
            const auto emit = [&](BinOp replacement) {
                if (replacement == bin->op) return;
                Mutant m;
                m.op = arith ? MutationOperatorKind::AOR : MutationOperatorKind::ROR;
                m.site = e.span;
                m.original_fragment = expr_text(e);
                m.program = detail::with_op_replaced(program, idx, replacement);
                Expr changed;
                changed.node = BinaryExpr{replacement, clone(*bin->lhs), clone(*bin->rhs)};
                m.mutated_fragment = expr_text(changed);
                out.push_back(std::move(m));
            };
            if (arith)
                for (BinOp r : detail::kArithOps) emit(r);
            else
                for (BinOp r : detail::kRelOps) emit(r);
        } else if (const auto* lit = std::get_if<IntLit>(&e.node)) {
            if (!ops.crp) return;
            long long c = lit->value;
            std::vector<long long> replacements;
            const auto add = [&](long long v) {
                if (v == c) return;
                for (long long seen : replacements)
                    if (seen == v) return;
                replacements.push_back(v);
            };
            if (c != std::numeric_limits<long long>::max()) add(c + 1);
            if (c != std::numeric_limits<long long>::min()) add(c - 1);
            add(0);
            add(1);
            for (long long v : replacements) {
                Mutant m;
                m.op = MutationOperatorKind::CRP;
                m.site = e.span;
                m.original_fragment = std::to_string(c);
                m.mutated_fragment = std::to_string(v);
                m.program = detail::with_const_replaced(program, idx, v);
                out.push_back(std::move(m));
            }
        }
    });
    for (size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
    return out;
}

/// True iff the test distinguishes the mutant from the original. Outcomes are
/// compared by class: value, error kind, or timeout.
inline bool kills(const Program& original, const Mutant& mutant, const TestCase& test,
                  ExecBudget budget = {}) {
    return !(execute(original, test.genes, budget) ==
             execute(mutant.program, test.genes, budget));
}

struct KillMatrix {
    size_t num_tests = 0;
    size_t num_mutants = 0;
    std::vector<uint8_t> cells;  // row-major, tests x mutants

    bool killed(size_t test, size_t mutant) const {
        return cells[test * num_mutants + mutant] != 0;
    }

    /// Column-wise union over all tests.
    std::set<int> killed_mutants() const {
        std::set<int> out;
        for (size_t m = 0; m < num_mutants; ++m)
            for (size_t t = 0; t < num_tests; ++t)
                if (killed(t, m)) {
                    out.insert(static_cast<int>(m));
                    break;
                }
        return out;
    }
};

inline KillMatrix build_kill_matrix(const Program& original,
                                    const std::vector<Mutant>& mutants,
                                    const std::vector<TestCase>& suite,
                                    ExecBudget budget = {}, bool parallel = true) {
    KillMatrix matrix;
    matrix.num_tests = suite.size();
    matrix.num_mutants = mutants.size();
    matrix.cells.assign(suite.size() * mutants.size(), 0);

    std::vector<Outcome> original_outcomes(suite.size());
    for (size_t t = 0; t < suite.size(); ++t)
        original_outcomes[t] = execute(original, suite[t].genes, budget);

    parallel_for(matrix.cells.size(), parallel, [&](size_t cell) {
        size_t t = cell / mutants.size();
        size_t m = cell % mutants.size();
        Outcome mutated = execute(mutants[m].program, suite[t].genes, budget);
        matrix.cells[cell] = mutated == original_outcomes[t] ? 0 : 1;
    });
    return matrix;
}

/// Ids of mutants no input in the exhaustive domain can kill. Exact relative
/// to the bounded domain.
inline std::set<int> equivalent_mutant_scan(const Program& original,
                                            const std::vector<Mutant>& mutants,
                                            const InputDomain& domain,
                                            ExecBudget budget = {},
                                            uint64_t execution_cap = 1000000) {
    domain.validate();
    uint64_t points = domain.point_count();
    uint64_t per_point = static_cast<uint64_t>(mutants.size()) + 1;
    if (points > execution_cap / per_point)
        throw DomainTooLarge(points * per_point, execution_cap);

    std::vector<uint8_t> alive(mutants.size(), 1);
    size_t alive_count = mutants.size();
    domain.for_each_point([&](const TestCase& t) {
        if (alive_count == 0) return;
        Outcome base = execute(original, t.genes, budget);
        for (size_t m = 0; m < mutants.size(); ++m) {
            if (!alive[m]) continue;
            if (!(execute(mutants[m].program, t.genes, budget) == base)) {
                alive[m] = 0;
                --alive_count;
            }
        }
    });
    std::set<int> out;
    for (size_t m = 0; m < mutants.size(); ++m)
        if (alive[m]) out.insert(static_cast<int>(m));
    return out;
}

}  // namespace mutagen

#endif
