#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "formflow/error.hpp"

namespace formflow {

// Variable environment for evaluation. Lookup is a linear scan; charts here
// never exceed a handful of variables, and the flat layout lets flow loops
// reuse one binding by slot index without rehashing.
class Binding {
public:
    Binding() = default;
    Binding(std::initializer_list<std::pair<std::string, double>> init);

    int define(const std::string& name, double value);  // returns slot index
    void setSlot(int slot, double value) { slots_[static_cast<std::size_t>(slot)].second = value; }
    void set(const std::string& name, double value);
    const double* find(const std::string& name) const;
    double get(const std::string& name) const;
    std::size_t size() const { return slots_.size(); }

private:
    std::vector<std::pair<std::string, double>> slots_;
};

// Immutable symbolic scalar expression over named variables. Supports the
// fixed function set {sin, cos, exp, log, sqrt}, the four arithmetic
// operations, negation, and powers with integer-literal exponents.
class Expr {
public:
    Expr();  // the constant 0

    static Expr constant(double v);
    static Expr variable(const std::string& name);

    Expr operator+(const Expr& rhs) const;
    Expr operator-(const Expr& rhs) const;
    Expr operator*(const Expr& rhs) const;
    Expr operator/(const Expr& rhs) const;
    Expr operator-() const;
    Expr pow(int exponent) const;

    // Symbolic partial derivative with respect to `var`.
    Expr diff(const std::string& var) const;

    double eval(const Binding& env) const;

    // Replace variables by expressions (simultaneous substitution).
    Expr substitute(const std::map<std::string, Expr>& repl) const;
    Expr substitute(const std::string& var, const Expr& replacement) const;

    std::string str() const;
    void collectVars(std::set<std::string>& out) const;
    std::set<std::string> freeVars() const;

    bool isConstant() const;
    bool isZero() const;           // structurally the constant 0
    double constantValue() const;  // only valid when isConstant()

    struct Node;
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    const Node& node() const { return *node_; }

private:
    std::shared_ptr<const Node> node_;
};

Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr exp(const Expr& e);
Expr log(const Expr& e);
Expr sqrt(const Expr& e);

// Parse `text` against the fixed grammar. Every identifier must be one of
// `allowedVars` or a function name. Throws ParseError with a byte offset.
Expr parseExpr(const std::string& text, const std::vector<std::string>& allowedVars);

}  // namespace formflow
