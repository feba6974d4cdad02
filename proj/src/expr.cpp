#include "formflow/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace formflow {

namespace {
enum class Kind { Constant, Variable, Unary, Binary, Power };
enum class Fn { Sin, Cos, Exp, Log, Sqrt, Neg };
enum class Op { Add, Sub, Mul, Div };
}  // namespace

struct Expr::Node {
    Kind kind;
    double value = 0.0;       // Constant
    std::string name;         // Variable
    Fn fn = Fn::Neg;          // Unary
    Op op = Op::Add;          // Binary
    int exponent = 0;         // Power
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr makeConst(double v) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Kind::Constant;
    n->value = v;
    return n;
}

NodePtr makeVar(const std::string& name) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Kind::Variable;
    n->name = name;
    return n;
}

bool isConstNode(const NodePtr& n, double v) {
    return n->kind == Kind::Constant && n->value == v;
}

NodePtr makeUnary(Fn fn, NodePtr a);
NodePtr makeBinary(Op op, NodePtr a, NodePtr b);
NodePtr makePower(NodePtr base, int exponent);

// Smart constructors fold constants and the 0/1 identities. Folding is
// skipped whenever it would hide a domain error of the folded subtree.
NodePtr makeBinary(Op op, NodePtr a, NodePtr b) {
    if (a->kind == Kind::Constant && b->kind == Kind::Constant) {
        const double x = a->value, y = b->value;
        switch (op) {
            case Op::Add: return makeConst(x + y);
            case Op::Sub: return makeConst(x - y);
            case Op::Mul: return makeConst(x * y);
            case Op::Div:
                if (y != 0.0) return makeConst(x / y);
                break;
        }
    }
    switch (op) {
        case Op::Add:
            if (isConstNode(a, 0.0)) return b;
            if (isConstNode(b, 0.0)) return a;
            break;
        case Op::Sub:
            if (isConstNode(b, 0.0)) return a;
            if (isConstNode(a, 0.0)) return makeUnary(Fn::Neg, b);
            break;
        case Op::Mul:
            if (isConstNode(a, 0.0) || isConstNode(b, 0.0)) return makeConst(0.0);
            if (isConstNode(a, 1.0)) return b;
            if (isConstNode(b, 1.0)) return a;
            if (isConstNode(a, -1.0)) return makeUnary(Fn::Neg, b);
            if (isConstNode(b, -1.0)) return makeUnary(Fn::Neg, a);
            break;
        case Op::Div:
            if (isConstNode(b, 1.0)) return a;
            break;
    }
    auto n = std::make_shared<Expr::Node>();
    n->kind = Kind::Binary;
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodePtr makeUnary(Fn fn, NodePtr a) {
    if (a->kind == Kind::Constant) {
        const double x = a->value;
        switch (fn) {
            case Fn::Neg: return makeConst(-x);
            case Fn::Sin: return makeConst(std::sin(x));
            case Fn::Cos: return makeConst(std::cos(x));
            case Fn::Exp: return makeConst(std::exp(x));
            case Fn::Log:
                if (x > 0.0) return makeConst(std::log(x));
                break;
            case Fn::Sqrt:
                if (x >= 0.0) return makeConst(std::sqrt(x));
                break;
        }
    }
    if (fn == Fn::Neg && a->kind == Kind::Unary && a->fn == Fn::Neg) return a->a;
    auto n = std::make_shared<Expr::Node>();
    n->kind = Kind::Unary;
    n->fn = fn;
    n->a = std::move(a);
    return n;
}

NodePtr makePower(NodePtr base, int exponent) {
    if (exponent == 1) return base;
    if (exponent == 0 && !isConstNode(base, 0.0)) return makeConst(1.0);
    if (base->kind == Kind::Constant && exponent > 0)
        return makeConst(std::pow(base->value, exponent));
    auto n = std::make_shared<Expr::Node>();
    n->kind = Kind::Power;
    n->exponent = exponent;
    n->a = std::move(base);
    return n;
}

double evalNode(const Expr::Node& n, const Binding& env) {
    switch (n.kind) {
        case Kind::Constant: return n.value;
        case Kind::Variable: {
            const double* v = env.find(n.name);
            if (!v) throw EvalError("unbound variable '" + n.name + "'");
            return *v;
        }
        case Kind::Unary: {
            const double x = evalNode(*n.a, env);
            switch (n.fn) {
                case Fn::Neg: return -x;
                case Fn::Sin: return std::sin(x);
                case Fn::Cos: return std::cos(x);
                case Fn::Exp: return std::exp(x);
                case Fn::Log:
                    if (x <= 0.0) throw EvalError("log of non-positive value");
                    return std::log(x);
                case Fn::Sqrt:
                    if (x < 0.0) throw EvalError("sqrt of negative value");
                    return std::sqrt(x);
            }
            break;
        }
        case Kind::Binary: {
            const double x = evalNode(*n.a, env);
            const double y = evalNode(*n.b, env);
            switch (n.op) {
                case Op::Add: return x + y;
                case Op::Sub: return x - y;
                case Op::Mul: return x * y;
                case Op::Div:
                    if (y == 0.0) throw EvalError("division by zero");
                    return x / y;
            }
            break;
        }
        case Kind::Power: {
            const double x = evalNode(*n.a, env);
            if (x == 0.0) {
                if (n.exponent == 0) throw EvalError("0^0 is undefined");
                if (n.exponent < 0) throw EvalError("division by zero (0 to a negative power)");
                return 0.0;
            }
            return std::pow(x, n.exponent);
        }
    }
    throw EvalError("corrupt expression node");
}

NodePtr diffNode(const NodePtr& n, const std::string& var) {
    switch (n->kind) {
        case Kind::Constant: return makeConst(0.0);
        case Kind::Variable: return makeConst(n->name == var ? 1.0 : 0.0);
        case Kind::Unary: {
            NodePtr da = diffNode(n->a, var);
            switch (n->fn) {
                case Fn::Neg: return makeUnary(Fn::Neg, da);
                case Fn::Sin: return makeBinary(Op::Mul, makeUnary(Fn::Cos, n->a), da);
                case Fn::Cos:
                    return makeUnary(Fn::Neg, makeBinary(Op::Mul, makeUnary(Fn::Sin, n->a), da));
                case Fn::Exp: return makeBinary(Op::Mul, n, da);
                case Fn::Log: return makeBinary(Op::Div, da, n->a);
                case Fn::Sqrt:
                    return makeBinary(Op::Div, da, makeBinary(Op::Mul, makeConst(2.0), n));
            }
            break;
        }
        case Kind::Binary: {
            NodePtr da = diffNode(n->a, var);
            NodePtr db = diffNode(n->b, var);
            switch (n->op) {
                case Op::Add: return makeBinary(Op::Add, da, db);
                case Op::Sub: return makeBinary(Op::Sub, da, db);
                case Op::Mul:
                    return makeBinary(Op::Add, makeBinary(Op::Mul, da, n->b),
                                      makeBinary(Op::Mul, n->a, db));
                case Op::Div:
                    // (a/b)' = a'/b - a b'/b^2
                    return makeBinary(
                        Op::Sub, makeBinary(Op::Div, da, n->b),
                        makeBinary(Op::Div, makeBinary(Op::Mul, n->a, db), makePower(n->b, 2)));
            }
            break;
        }
        case Kind::Power: {
            NodePtr da = diffNode(n->a, var);
            return makeBinary(Op::Mul,
                              makeBinary(Op::Mul, makeConst(n->exponent),
                                         makePower(n->a, n->exponent - 1)),
                              da);
        }
    }
    throw Error("corrupt expression node in differentiation");
}

NodePtr substNode(const NodePtr& n, const std::map<std::string, Expr>& repl) {
    switch (n->kind) {
        case Kind::Constant: return n;
        case Kind::Variable: {
            auto it = repl.find(n->name);
            if (it == repl.end()) return n;
            return std::shared_ptr<const Expr::Node>(it->second.node().a ? nullptr : nullptr),
                   // copy of the replacement's node pointer
                   std::shared_ptr<const Expr::Node>();
        }
        default: break;
    }
    return nullptr;
}

const char* fnName(Fn f) {
    switch (f) {
        case Fn::Sin: return "sin";
        case Fn::Cos: return "cos";
        case Fn::Exp: return "exp";
        case Fn::Log: return "log";
        case Fn::Sqrt: return "sqrt";
        case Fn::Neg: return "-";
    }
    return "?";
}

// Precedence levels for the printer: addition 1, multiplication 2,
// unary minus 3, power 4, atoms 5.
int precOf(const Expr::Node& n) {
    switch (n.kind) {
        case Kind::Constant: return n.value < 0 ? 3 : 5;
        case Kind::Variable: return 5;
        case Kind::Unary: return n.fn == Fn::Neg ? 3 : 5;
        case Kind::Binary: return (n.op == Op::Add || n.op == Op::Sub) ? 1 : 2;
        case Kind::Power: return 4;
    }
    return 5;
}

void printNode(const Expr::Node& n, std::string& out, int parentPrec, bool rightOperand) {
    const int prec = precOf(n);
    const bool parens = prec < parentPrec || (prec == parentPrec && rightOperand && prec <= 2);
    if (parens) out += "(";
    switch (n.kind) {
        case Kind::Constant: {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", n.value);
            out += buf;
            break;
        }
        case Kind::Variable: out += n.name; break;
        case Kind::Unary:
            if (n.fn == Fn::Neg) {
                out += "-";
                printNode(*n.a, out, 3, true);
            } else {
                out += fnName(n.fn);
                out += "(";
                printNode(*n.a, out, 0, false);
                out += ")";
            }
            break;
        case Kind::Binary: {
            const char* ops[] = {"+", "-", "*", "/"};
            printNode(*n.a, out, prec, false);
            out += ops[static_cast<int>(n.op)];
            printNode(*n.b, out, prec, true);
            break;
        }
        case Kind::Power:
            printNode(*n.a, out, 5, false);
            out += "^";
            if (n.exponent < 0) {
                out += "(" + std::to_string(n.exponent) + ")";
            } else {
                out += std::to_string(n.exponent);
            }
            break;
    }
    if (parens) out += ")";
}

void collectNode(const Expr::Node& n, std::set<std::string>& out) {
    switch (n.kind) {
        case Kind::Variable: out.insert(n.name); break;
        case Kind::Unary:
        case Kind::Power: collectNode(*n.a, out); break;
        case Kind::Binary:
            collectNode(*n.a, out);
            collectNode(*n.b, out);
            break;
        default: break;
    }
}

}  // namespace

Binding::Binding(std::initializer_list<std::pair<std::string, double>> init) {
    for (const auto& kv : init) slots_.push_back(kv);
}

int Binding::define(const std::string& name, double value) {
    for (std::size_t i = 0; i < slots_.size(); ++i)
        if (slots_[i].first == name) {
            slots_[i].second = value;
            return static_cast<int>(i);
        }
    slots_.emplace_back(name, value);
    return static_cast<int>(slots_.size() - 1);
}

void Binding::set(const std::string& name, double value) { define(name, value); }

const double* Binding::find(const std::string& name) const {
    for (const auto& kv : slots_)
        if (kv.first == name) return &kv.second;
    return nullptr;
}

double Binding::get(const std::string& name) const {
    const double* v = find(name);
    if (!v) throw EvalError("unbound variable '" + name + "'");
    return *v;
}

Expr::Expr() : node_(makeConst(0.0)) {}

Expr Expr::constant(double v) { return Expr(makeConst(v)); }
Expr Expr::variable(const std::string& name) { return Expr(makeVar(name)); }

Expr Expr::operator+(const Expr& rhs) const { return Expr(makeBinary(Op::Add, node_, rhs.node_)); }
Expr Expr::operator-(const Expr& rhs) const { return Expr(makeBinary(Op::Sub, node_, rhs.node_)); }
Expr Expr::operator*(const Expr& rhs) const { return Expr(makeBinary(Op::Mul, node_, rhs.node_)); }
Expr Expr::operator/(const Expr& rhs) const { return Expr(makeBinary(Op::Div, node_, rhs.node_)); }
Expr Expr::operator-() const { return Expr(makeUnary(Fn::Neg, node_)); }
Expr Expr::pow(int exponent) const { return Expr(makePower(node_, exponent)); }

Expr Expr::diff(const std::string& var) const { return Expr(diffNode(node_, var)); }

double Expr::eval(const Binding& env) const { return evalNode(*node_, env); }

Expr Expr::substitute(const std::map<std::string, Expr>& repl) const {
    // Local recursion (substNode above was a dead end; kept simple here).
    struct Walker {
        const std::map<std::string, Expr>& repl;
        NodePtr walk(const NodePtr& n) {
            switch (n->kind) {
                case Kind::Constant: return n;
                case Kind::Variable: {
                    auto it = repl.find(n->name);
                    if (it == repl.end()) return n;
                    return NodePtr(&it->second.node(), [keep = it->second](const Expr::Node*) {});
                }
                case Kind::Unary: {
                    NodePtr a = walk(n->a);
                    if (a == n->a) return n;
                    return makeUnary(n->fn, a);
                }
                case Kind::Binary: {
                    NodePtr a = walk(n->a), b = walk(n->b);
                    if (a == n->a && b == n->b) return n;
                    return makeBinary(n->op, a, b);
                }
                case Kind::Power: {
                    NodePtr a = walk(n->a);
                    if (a == n->a) return n;
                    return makePower(a, n->exponent);
                }
            }
            return n;
        }
    } w{repl};
    return Expr(w.walk(node_));
}

Expr Expr::substitute(const std::string& var, const Expr& replacement) const {
    std::map<std::string, Expr> m;
    m.emplace(var, replacement);
    return substitute(m);
}

std::string Expr::str() const {
    std::string out;
    printNode(*node_, out, 0, false);
    return out;
}

void Expr::collectVars(std::set<std::string>& out) const { collectNode(*node_, out); }

std::set<std::string> Expr::freeVars() const {
    std::set<std::string> out;
    collectVars(out);
    return out;
}

bool Expr::isConstant() const { return node_->kind == Kind::Constant; }
bool Expr::isZero() const { return isConstNode(node_, 0.0); }
double Expr::constantValue() const { return node_->value; }

Expr sin(const Expr& e) { return Expr(makeUnary(Fn::Sin, std::make_shared<Expr::Node>(e.node()))); }

namespace {
NodePtr share(const Expr& e) {
    // Expr holds a shared_ptr internally; clone the handle via substitute-free path.
    return NodePtr(&e.node(), [keep = e](const Expr::Node*) {});
}
}  // namespace

Expr cos(const Expr& e) { return Expr(makeUnary(Fn::Cos, share(e))); }
Expr exp(const Expr& e) { return Expr(makeUnary(Fn::Exp, share(e))); }
Expr log(const Expr& e) { return Expr(makeUnary(Fn::Log, share(e))); }
Expr sqrt(const Expr& e) { return Expr(makeUnary(Fn::Sqrt, share(e))); }

// ---------------------------------------------------------------------------
// Parser. Grammar (loosest binding first):
//   sum     := product (('+'|'-') product)*
//   product := unary (('*'|'/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' int-literal)?
//   atom    := number | ident | ident '(' sum ')' | '(' sum ')'
// The exponent must be an integer literal, optionally parenthesized and
// signed; chained '^' requires explicit parentheses.
// ---------------------------------------------------------------------------
namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    const std::vector<std::string>& vars;

    void skipSpace() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool peek(char c) {
        skipSpace();
        return pos < text.size() && text[pos] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) throw ParseError(std::string("expected ") + what, pos);
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

    Expr parseSum() {
        Expr e = parseProduct();
        while (true) {
            if (accept('+')) e = e + parseProduct();
            else if (accept('-')) e = e - parseProduct();
            else return e;
        }
    }

    Expr parseProduct() {
        Expr e = parseUnary();
        while (true) {
            if (accept('*')) e = e * parseUnary();
            else if (accept('/')) e = e / parseUnary();
            else return e;
        }
    }

    Expr parseUnary() {
        if (accept('-')) return -parseUnary();
        return parsePower();
    }

    Expr parsePower() {
        Expr base = parseAtom();
        if (accept('^')) {
            const int exponent = parseIntLiteral();
            if (peek('^')) fail("chained '^' requires parentheses");
            return base.pow(exponent);
        }
        return base;
    }

    int parseIntLiteral() {
        skipSpace();
        bool parens = accept('(');
        skipSpace();
        bool neg = accept('-');
        skipSpace();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected integer exponent");
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            if (v > 1000000) fail("exponent too large");
            ++pos;
        }
        if (parens) expect(')', "')' after exponent");
        return static_cast<int>(neg ? -v : v);
    }

    Expr parseAtom() {
        skipSpace();
        if (pos >= text.size()) fail("unexpected end of input");
        const char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parseNumber();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parseIdent();
        if (accept('(')) {
            Expr e = parseSum();
            expect(')', "')'");
            return e;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    Expr parseNumber() {
        const char* start = text.c_str() + pos;
        char* end = nullptr;
        const double v = std::strtod(start, &end);
        if (end == start) fail("malformed number");
        pos += static_cast<std::size_t>(end - start);
        return Expr::constant(v);
    }

    Expr parseIdent() {
        const std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        const std::string name = text.substr(start, pos - start);
        static const char* functions[] = {"sin", "cos", "exp", "log", "sqrt"};
        for (const char* fn : functions) {
            if (name == fn) {
                expect('(', "'(' after function name");
                Expr arg = parseSum();
                expect(')', "')'");
                if (name == "sin") return sin(arg);
                if (name == "cos") return cos(arg);
                if (name == "exp") return exp(arg);
                if (name == "log") return log(arg);
                return sqrt(arg);
            }
        }
        for (const auto& v : vars)
            if (v == name) return Expr::variable(name);
        throw ParseError("unknown identifier '" + name + "'", start);
    }
};

}  // namespace

Expr parseExpr(const std::string& text, const std::vector<std::string>& allowedVars) {
    Parser p{text, 0, allowedVars};
    Expr e = p.parseSum();
    p.skipSpace();
    if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
    return e;
}

}  // namespace formflow
