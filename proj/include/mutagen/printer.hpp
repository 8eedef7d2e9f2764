#ifndef MUTAGEN_PRINTER_HPP
#define MUTAGEN_PRINTER_HPP

#include <string>

#include "ast.hpp"

namespace mutagen {

namespace detail {

inline int precedence(BinOp op) {
    if (is_relational(op)) return 1;
    if (op == BinOp::Add || op == BinOp::Sub) return 2;
    return 3;
}

inline void print_expr(const Expr& e, std::string& out, int parent_prec, bool rhs_side) {
    if (const auto* lit = std::get_if<IntLit>(&e.node)) {
        out += std::to_string(lit->value);
        return;
    }
    if (const auto* var = std::get_if<VarRef>(&e.node)) {
        out += var->name;
        return;
    }
    const auto& bin = std::get<BinaryExpr>(e.node);
    int prec = precedence(bin.op);
    // arithmetic is left-associative; comparison is non-associative, so a
    // relational child of a relational parent always needs parentheses
    bool parens = prec < parent_prec ||
                  (prec == parent_prec && (rhs_side || is_relational(bin.op)));
    if (parens) out += '(';
    print_expr(*bin.lhs, out, prec, false);
    out += ' ';
    out += op_text(bin.op);
    out += ' ';
    print_expr(*bin.rhs, out, prec, true);
    if (parens) out += ')';
}

inline void print_block(const std::vector<Stmt>& body, std::string& out, int indent);

inline void print_stmt(const Stmt& s, std::string& out, int indent) {
    out.append(static_cast<size_t>(indent) * 2, ' ');
    if (const auto* a = std::get_if<AssignStmt>(&s.node)) {
        if (a->declares) out += "let ";
        out += a->target;
        out += " = ";
        print_expr(*a->value, out, 0, false);
        out += '\n';
    } else if (const auto* w = std::get_if<WhileStmt>(&s.node)) {
        out += "while (";
        print_expr(*w->cond, out, 0, false);
        out += ") {\n";
        print_block(w->body, out, indent + 1);
        out.append(static_cast<size_t>(indent) * 2, ' ');
        out += "}\n";
    } else if (const auto* i = std::get_if<IfStmt>(&s.node)) {
        out += "if (";
        print_expr(*i->cond, out, 0, false);
        out += ") {\n";
        print_block(i->then_body, out, indent + 1);
        out.append(static_cast<size_t>(indent) * 2, ' ');
        if (i->else_body.empty()) {
            out += "}\n";
        } else {
            out += "} else {\n";
            print_block(i->else_body, out, indent + 1);
            out.append(static_cast<size_t>(indent) * 2, ' ');
            out += "}\n";
        }
    } else {
        const auto& r = std::get<ReturnStmt>(s.node);
        out += "return ";
        print_expr(*r.value, out, 0, false);
        out += '\n';
    }
}

inline void print_block(const std::vector<Stmt>& body, std::string& out, int indent) {
    for (const auto& s : body) print_stmt(s, out, indent);
}

}  // namespace detail

/// Canonical rendering of a single expression, no outer parentheses.
inline std::string expr_text(const Expr& e) {
    std::string out;
    detail::print_expr(e, out, 0, false);
    return out;
}

inline std::string pretty_print(const Program& p) {
    std::string out = "fn " + p.name + "(";
    for (size_t i = 0; i < p.params.size(); ++i) {
        if (i) out += ", ";
        out += p.params[i];
    }
    out += ") {\n";
    detail::print_block(p.body, out, 1);
    out += "}\n";
    return out;
}

}  // namespace mutagen

#endif
