#ifndef MUTAGEN_PARSER_HPP
#define MUTAGEN_PARSER_HPP

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>

#include "ast.hpp"

namespace mutagen {

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& msg)
        : std::runtime_error(std::to_string(line_) + ":" + std::to_string(column_) +
                             ": " + msg),
          line(line_), column(column_) {}
};

namespace detail {

enum class TokKind {
    Fn, Let, While, If, Else, Return,
    Ident, Int,
    LParen, RParen, LBrace, RBrace, Comma,
    Assign, PlusPlus,
    Plus, Minus, Star, Slash, Percent,
    Lt, Le, Gt, Ge, EqEq, Ne,
    End
};

struct Token {
    TokKind kind;
    std::string text;
    int line;
    int column;
    long long int_value = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_trivia();
        tok_.line = line_;
        tok_.column = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = TokKind::End;
            tok_.text = "end of input";
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                bump();
            tok_.text = std::string(src_.substr(start, pos_ - start));
            tok_.kind = keyword(tok_.text);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                bump();
            tok_.text = std::string(src_.substr(start, pos_ - start));
            tok_.kind = TokKind::Int;
            try {
                tok_.int_value = std::stoll(tok_.text);
            } catch (const std::out_of_range&) {
                throw ParseError(tok_.line, tok_.column,
                                 "integer literal out of 64-bit range");
            }
            return;
        }
        auto two = src_.substr(pos_, 2);
        if (two == "==") { punct(TokKind::EqEq, 2); return; }
        if (two == "!=") { punct(TokKind::Ne, 2); return; }
        if (two == "<=") { punct(TokKind::Le, 2); return; }
        if (two == ">=") { punct(TokKind::Ge, 2); return; }
        if (two == "++") { punct(TokKind::PlusPlus, 2); return; }
        switch (c) {
        case '(': punct(TokKind::LParen, 1); return;
        case ')': punct(TokKind::RParen, 1); return;
        case '{': punct(TokKind::LBrace, 1); return;
        case '}': punct(TokKind::RBrace, 1); return;
        case ',': punct(TokKind::Comma, 1); return;
        case '=': punct(TokKind::Assign, 1); return;
        case '+': punct(TokKind::Plus, 1); return;
        case '-': punct(TokKind::Minus, 1); return;
        case '*': punct(TokKind::Star, 1); return;
        case '/': punct(TokKind::Slash, 1); return;
        case '%': punct(TokKind::Percent, 1); return;
        case '<': punct(TokKind::Lt, 1); return;
        case '>': punct(TokKind::Gt, 1); return;
        default:
            throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
        }
    }

    static TokKind keyword(const std::string& s) {
        if (s == "fn") return TokKind::Fn;
        if (s == "let") return TokKind::Let;
        if (s == "while") return TokKind::While;
        if (s == "if") return TokKind::If;
        if (s == "else") return TokKind::Else;
        if (s == "return") return TokKind::Return;
        return TokKind::Ident;
    }

    void punct(TokKind k, int len) {
        tok_.kind = k;
        tok_.text = std::string(src_.substr(pos_, len));
        for (int i = 0; i < len; ++i) bump();
    }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    Program parse_program() {
        expect(TokKind::Fn, "'fn'");
        Token name = expect(TokKind::Ident, "function name");
        Program prog;
        prog.name = name.text;
        expect(TokKind::LParen, "'('");
        if (lex_.peek().kind != TokKind::RParen) {
            for (;;) {
                Token p = expect(TokKind::Ident, "parameter name");
                for (const auto& existing : prog.params)
                    if (existing == p.text)
                        throw ParseError(p.line, p.column,
                                         "duplicate parameter '" + p.text + "'");
                prog.params.push_back(p.text);
                if (lex_.peek().kind != TokKind::Comma) break;
                lex_.take();
            }
        }
        expect(TokKind::RParen, "')'");
        prog.body = parse_block();
        if (lex_.peek().kind != TokKind::End)
            fail("end of input after function body");
        return prog;
    }

private:
    std::vector<Stmt> parse_block() {
        expect(TokKind::LBrace, "'{'");
        std::vector<Stmt> body;
        while (lex_.peek().kind != TokKind::RBrace) {
            if (lex_.peek().kind == TokKind::End) fail("'}'");
            body.push_back(parse_stmt());
        }
        lex_.take();
        return body;
    }

    Stmt parse_stmt() {
        const Token& t = lex_.peek();
        Stmt s;
        s.span = {t.line, t.column, static_cast<int>(t.text.size())};
        switch (t.kind) {
        case TokKind::Let: {
            lex_.take();
            Token name = expect(TokKind::Ident, "variable name");
            expect(TokKind::Assign, "'='");
            s.node = AssignStmt{name.text, parse_expr(), true};
            return s;
        }
        case TokKind::While: {
            lex_.take();
            expect(TokKind::LParen, "'('");
            auto cond = parse_expr();
            expect(TokKind::RParen, "')'");
            s.node = WhileStmt{std::move(cond), parse_block()};
            return s;
        }
        case TokKind::If: {
            lex_.take();
            expect(TokKind::LParen, "'('");
            auto cond = parse_expr();
            expect(TokKind::RParen, "')'");
            auto then_body = parse_block();
            std::vector<Stmt> else_body;
            if (lex_.peek().kind == TokKind::Else) {
                lex_.take();
                else_body = parse_block();
            }
            s.node = IfStmt{std::move(cond), std::move(then_body), std::move(else_body)};
            return s;
        }
        case TokKind::Return: {
            lex_.take();
            s.node = ReturnStmt{parse_expr()};
            return s;
        }
        case TokKind::Ident: {
            Token name = lex_.take();
            if (lex_.peek().kind == TokKind::PlusPlus) {
                // i++ desugars to i = i + 1 so operator mutation can reach it
                Token pp = lex_.take();
                SourceSpan sp{name.line, name.column,
                              pp.column + 2 - name.column};
                auto var = std::make_unique<Expr>();
                var->node = VarRef{name.text};
                var->span = sp;
                auto one = std::make_unique<Expr>();
                one->node = IntLit{1};
                one->span = sp;
                auto sum = std::make_unique<Expr>();
                sum->node = BinaryExpr{BinOp::Add, std::move(var), std::move(one)};
                sum->span = sp;
                s.node = AssignStmt{name.text, std::move(sum), false};
                return s;
            }
            expect(TokKind::Assign, "'='");
            s.node = AssignStmt{name.text, parse_expr(), false};
            return s;
        }
        default:
            fail("a statement");
        }
    }

    // comparison over additive over multiplicative over primary
    ExprPtr parse_expr() {
        auto lhs = parse_additive();
        auto rel = rel_op(lex_.peek().kind);
        if (!rel) return lhs;
        Token op = lex_.take();
        auto rhs = parse_additive();
        return make_binary(*rel, std::move(lhs), std::move(rhs), op);
    }

    ExprPtr parse_additive() {
        auto lhs = parse_multiplicative();
        for (;;) {
            BinOp op;
            if (lex_.peek().kind == TokKind::Plus) op = BinOp::Add;
            else if (lex_.peek().kind == TokKind::Minus) op = BinOp::Sub;
            else return lhs;
            Token t = lex_.take();
            lhs = make_binary(op, std::move(lhs), parse_multiplicative(), t);
        }
    }

    ExprPtr parse_multiplicative() {
        auto lhs = parse_primary();
        for (;;) {
            BinOp op;
            switch (lex_.peek().kind) {
            case TokKind::Star: op = BinOp::Mul; break;
            case TokKind::Slash: op = BinOp::Div; break;
            case TokKind::Percent: op = BinOp::Mod; break;
            default: return lhs;
            }
            Token t = lex_.take();
            lhs = make_binary(op, std::move(lhs), parse_primary(), t);
        }
    }

    ExprPtr parse_primary() {
        const Token& t = lex_.peek();
        auto e = std::make_unique<Expr>();
        switch (t.kind) {
        case TokKind::Int: {
            Token tok = lex_.take();
            e->node = IntLit{tok.int_value};
            e->span = {tok.line, tok.column, static_cast<int>(tok.text.size())};
            return e;
        }
        case TokKind::Ident: {
            Token tok = lex_.take();
            e->node = VarRef{tok.text};
            e->span = {tok.line, tok.column, static_cast<int>(tok.text.size())};
            return e;
        }
        case TokKind::LParen: {
            lex_.take();
            auto inner = parse_expr();
            expect(TokKind::RParen, "')'");
            return inner;
        }
        default:
            fail("an expression");
        }
    }

    ExprPtr make_binary(BinOp op, ExprPtr lhs, ExprPtr rhs, const Token& op_tok) {
        int end = rhs->span.column + rhs->span.length;
        auto e = std::make_unique<Expr>();
        SourceSpan sp = lhs->span;
        // span covers lhs..rhs when on one line, else just the operator
        if (lhs->span.line == rhs->span.line)
            sp.length = end - lhs->span.column;
        else
            sp = {op_tok.line, op_tok.column, static_cast<int>(op_tok.text.size())};
        e->node = BinaryExpr{op, std::move(lhs), std::move(rhs)};
        e->span = sp;
        return e;
    }

    static std::optional<BinOp> rel_op(TokKind k) {
        switch (k) {
        case TokKind::Lt: return BinOp::Lt;
        case TokKind::Le: return BinOp::Le;
        case TokKind::Gt: return BinOp::Gt;
        case TokKind::Ge: return BinOp::Ge;
        case TokKind::EqEq: return BinOp::Eq;
        case TokKind::Ne: return BinOp::Ne;
        default: return std::nullopt;
        }
    }

    Token expect(TokKind k, const char* what) {
        if (lex_.peek().kind != k) fail(what);
        return lex_.take();
    }

    [[noreturn]] void fail(const char* expected) {
        const Token& t = lex_.peek();
        throw ParseError(t.line, t.column,
                         "expected " + std::string(expected) + ", found '" + t.text + "'");
    }

    Lexer lex_;
};

}  // namespace detail

inline Program parse(std::string_view source) {
    detail::Parser p(source);
    return p.parse_program();
}

}  // namespace mutagen

#endif
