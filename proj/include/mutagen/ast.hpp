#ifndef MUTAGEN_AST_HPP
#define MUTAGEN_AST_HPP

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace mutagen {

// Location of a node in the original source text, 1-based.
struct SourceSpan {
    int line = 1;
    int column = 1;
    int length = 0;
};

enum class BinOp {
    Add, Sub, Mul, Div, Mod,   // arithmetic
    Lt, Le, Gt, Ge, Eq, Ne     // relational
};

inline bool is_arithmetic(BinOp op) {
    switch (op) {
    case BinOp::Add: case BinOp::Sub: case BinOp::Mul:
    case BinOp::Div: case BinOp::Mod:
        return true;
    default:
        return false;
    }
}

inline bool is_relational(BinOp op) { return !is_arithmetic(op); }

inline const char* op_text(BinOp op) {
    switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "%";
    case BinOp::Lt:  return "<";
    case BinOp::Le:  return "<=";
    case BinOp::Gt:  return ">";
    case BinOp::Ge:  return ">=";
    case BinOp::Eq:  return "==";
    case BinOp::Ne:  return "!=";
    }
    return "?";
}

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct IntLit {
    long long value = 0;
};

struct VarRef {
    std::string name;
};

struct BinaryExpr {
    BinOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct Expr {
    std::variant<IntLit, VarRef, BinaryExpr> node;
    SourceSpan span;
};

struct Stmt;

// `let x = e` declares, `x = e` reassigns; both share one node kind.
struct AssignStmt {
    std::string target;
    ExprPtr value;
    bool declares = false;
};

struct WhileStmt {
    ExprPtr cond;
    std::vector<Stmt> body;
};

struct IfStmt {
    ExprPtr cond;
    std::vector<Stmt> then_body;
    std::vector<Stmt> else_body;  // empty when no else clause
};

struct ReturnStmt {
    ExprPtr value;
};

struct Stmt {
    std::variant<AssignStmt, WhileStmt, IfStmt, ReturnStmt> node;
    SourceSpan span;
};

struct Program {
    std::string name;
    std::vector<std::string> params;
    std::vector<Stmt> body;
};

inline ExprPtr clone(const Expr& e);
inline Stmt clone(const Stmt& s);

inline ExprPtr clone(const Expr& e) {
    auto out = std::make_unique<Expr>();
    out->span = e.span;
    if (const auto* lit = std::get_if<IntLit>(&e.node)) {
        out->node = *lit;
    } else if (const auto* var = std::get_if<VarRef>(&e.node)) {
        out->node = *var;
    } else {
        const auto& bin = std::get<BinaryExpr>(e.node);
        out->node = BinaryExpr{bin.op, clone(*bin.lhs), clone(*bin.rhs)};
    }
    return out;
}

inline std::vector<Stmt> clone(const std::vector<Stmt>& body) {
    std::vector<Stmt> out;
    out.reserve(body.size());
    for (const auto& s : body) out.push_back(clone(s));
    return out;
}

inline Stmt clone(const Stmt& s) {
    Stmt out;
    out.span = s.span;
    if (const auto* a = std::get_if<AssignStmt>(&s.node)) {
        out.node = AssignStmt{a->target, clone(*a->value), a->declares};
    } else if (const auto* w = std::get_if<WhileStmt>(&s.node)) {
        out.node = WhileStmt{clone(*w->cond), clone(w->body)};
    } else if (const auto* i = std::get_if<IfStmt>(&s.node)) {
        out.node = IfStmt{clone(*i->cond), clone(i->then_body), clone(i->else_body)};
    } else {
        const auto& r = std::get<ReturnStmt>(s.node);
        out.node = ReturnStmt{clone(*r.value)};
    }
    return out;
}

inline Program clone(const Program& p) {
    return Program{p.name, p.params, clone(p.body)};
}

// Structural equality; spans are ignored.
inline bool equal(const Expr& a, const Expr& b);
inline bool equal(const Stmt& a, const Stmt& b);

inline bool equal(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* la = std::get_if<IntLit>(&a.node)) {
        return la->value == std::get<IntLit>(b.node).value;
    }
    if (const auto* va = std::get_if<VarRef>(&a.node)) {
        return va->name == std::get<VarRef>(b.node).name;
    }
    const auto& ba = std::get<BinaryExpr>(a.node);
    const auto& bb = std::get<BinaryExpr>(b.node);
    return ba.op == bb.op && equal(*ba.lhs, *bb.lhs) && equal(*ba.rhs, *bb.rhs);
}

inline bool equal(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!equal(a[i], b[i])) return false;
    return true;
}

inline bool equal(const Stmt& a, const Stmt& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* aa = std::get_if<AssignStmt>(&a.node)) {
        const auto& ab = std::get<AssignStmt>(b.node);
        return aa->target == ab.target && aa->declares == ab.declares &&
               equal(*aa->value, *ab.value);
    }
    if (const auto* wa = std::get_if<WhileStmt>(&a.node)) {
        const auto& wb = std::get<WhileStmt>(b.node);
        return equal(*wa->cond, *wb.cond) && equal(wa->body, wb.body);
    }
    if (const auto* ia = std::get_if<IfStmt>(&a.node)) {
        const auto& ib = std::get<IfStmt>(b.node);
        return equal(*ia->cond, *ib.cond) && equal(ia->then_body, ib.then_body) &&
               equal(ia->else_body, ib.else_body);
    }
    return equal(*std::get<ReturnStmt>(a.node).value,
                 *std::get<ReturnStmt>(b.node).value);
}

inline bool equal(const Program& a, const Program& b) {
    return a.name == b.name && a.params == b.params && equal(a.body, b.body);
}

}  // namespace mutagen

#endif
