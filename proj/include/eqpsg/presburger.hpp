#ifndef EQPSG_PRESBURGER_HPP
#define EQPSG_PRESBURGER_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "betti.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "numeric.hpp"
#include "polynomial.hpp"

namespace eqpsg {

/// sum_i a_i(n) x_i + c(n), with the parameter n living in the coefficients.
struct LinearExpr {
    std::map<std::string, PolynomialZ> coeffs;
    PolynomialZ constant;

    static LinearExpr variable(const std::string& name, const PolynomialZ& coeff = PolynomialZ::constant(1))
    {
        LinearExpr e;
        e.coeffs[name] = coeff;
        e.trim();
        return e;
    }
    static LinearExpr poly(const PolynomialZ& p)
    {
        LinearExpr e;
        e.constant = p;
        return e;
    }
    static LinearExpr integer(std::int64_t c) { return poly(PolynomialZ::constant(c)); }

    bool is_constant() const noexcept { return coeffs.empty(); }

    void trim()
    {
        for (auto it = coeffs.begin(); it != coeffs.end();)
            it = it->second.degree() < 0 ? coeffs.erase(it) : std::next(it);
    }

    friend LinearExpr operator+(LinearExpr a, const LinearExpr& b)
    {
        for (const auto& [name, c] : b.coeffs) a.coeffs[name] = a.coeffs[name] + c;
        a.constant = a.constant + b.constant;
        a.trim();
        return a;
    }
    friend LinearExpr operator*(const PolynomialZ& s, LinearExpr a)
    {
        for (auto& [name, c] : a.coeffs) c = s * c;
        a.constant = s * a.constant;
        a.trim();
        return a;
    }
    friend LinearExpr operator-(const LinearExpr& a) { return PolynomialZ::constant(-1) * a; }
    friend LinearExpr operator-(const LinearExpr& a, const LinearExpr& b) { return a + (-b); }
    friend bool operator==(const LinearExpr&, const LinearExpr&) = default;
};

/// sum_i a_i(n) x_i <= b(n).
struct Atom {
    std::map<std::string, PolynomialZ> coeffs;
    PolynomialZ bound;

    friend bool operator==(const Atom&, const Atom&) = default;
};

enum class FormulaKind { atom, negation, conjunction, disjunction, implication, exists, forall };

class Formula;

struct FormulaNode {
    FormulaKind kind = FormulaKind::atom;
    Atom atom;
    std::vector<std::string> vars;
    std::vector<Formula> children;
};

/// Immutable parametric Presburger formula.
class Formula {
public:
    Formula() : Formula(make_atom({{}, PolynomialZ()})) {}

    static Formula make_atom(Atom a)
    {
        for (auto it = a.coeffs.begin(); it != a.coeffs.end();)
            it = it->second.degree() < 0 ? a.coeffs.erase(it) : std::next(it);
        return Formula(FormulaNode{FormulaKind::atom, std::move(a), {}, {}});
    }
    static Formula truth(bool value) { return make_atom({{}, PolynomialZ::constant(value ? 0 : -1)}); }
    static Formula negation(Formula f) { return Formula(FormulaNode{FormulaKind::negation, {}, {}, {std::move(f)}}); }
    static Formula conjunction(std::vector<Formula> parts)
    {
        if (parts.size() == 1) return parts.front();
        return Formula(FormulaNode{FormulaKind::conjunction, {}, {}, std::move(parts)});
    }
    static Formula disjunction(std::vector<Formula> parts)
    {
        if (parts.size() == 1) return parts.front();
        return Formula(FormulaNode{FormulaKind::disjunction, {}, {}, std::move(parts)});
    }
    static Formula implication(Formula a, Formula b)
    {
        return Formula(FormulaNode{FormulaKind::implication, {}, {}, {std::move(a), std::move(b)}});
    }
    static Formula exists(std::vector<std::string> vars, Formula body)
    {
        check_quantified(vars);
        return Formula(FormulaNode{FormulaKind::exists, {}, std::move(vars), {std::move(body)}});
    }
    static Formula forall(std::vector<std::string> vars, Formula body)
    {
        check_quantified(vars);
        return Formula(FormulaNode{FormulaKind::forall, {}, std::move(vars), {std::move(body)}});
    }

    FormulaKind kind() const noexcept { return node_->kind; }
    const Atom& atom() const noexcept { return node_->atom; }
    const std::vector<std::string>& vars() const noexcept { return node_->vars; }
    const std::vector<Formula>& children() const noexcept { return node_->children; }
    const FormulaNode* node() const noexcept { return node_.get(); }

    std::set<std::string> free_variables() const
    {
        std::set<std::string> out;
        switch (kind()) {
        case FormulaKind::atom:
            for (const auto& [name, c] : atom().coeffs) out.insert(name);
            break;
        case FormulaKind::exists:
        case FormulaKind::forall:
            out = children().front().free_variables();
            for (const auto& v : vars()) out.erase(v);
            break;
        default:
            for (const auto& c : children()) {
                auto sub = c.free_variables();
                out.insert(sub.begin(), sub.end());
            }
        }
        return out;
    }

    friend bool operator==(const Formula& a, const Formula& b)
    {
        if (a.node_ == b.node_) return true;
        return a.kind() == b.kind() && a.atom() == b.atom() && a.vars() == b.vars() && a.children() == b.children();
    }

private:
    explicit Formula(FormulaNode node) : node_(std::make_shared<const FormulaNode>(std::move(node))) {}

    static void check_quantified(const std::vector<std::string>& vars)
    {
        if (vars.empty()) throw error("a quantifier needs at least one variable");
        for (const auto& v : vars)
            if (v == "n") throw quantified_parameter(0);
    }

    std::shared_ptr<const FormulaNode> node_;
};

/// t <= u.
inline Formula le(const LinearExpr& t, const LinearExpr& u)
{
    auto d = t - u;
    return Formula::make_atom({d.coeffs, -d.constant});
}
inline Formula lt(const LinearExpr& t, const LinearExpr& u) { return le(t + LinearExpr::integer(1), u); }
inline Formula ge(const LinearExpr& t, const LinearExpr& u) { return le(u, t); }
inline Formula gt(const LinearExpr& t, const LinearExpr& u) { return lt(u, t); }
/// (t - u <= 0) and not (t - u <= -1).
inline Formula eq(const LinearExpr& t, const LinearExpr& u)
{
    return Formula::conjunction({le(t, u), Formula::negation(le(t, u - LinearExpr::integer(1)))});
}
inline Formula ne(const LinearExpr& t, const LinearExpr& u) { return Formula::negation(eq(t, u)); }

namespace detail {

inline std::string render_coefficient(const PolynomialZ& c)
{
    if (c.degree() <= 0) return c.str();
    return "(" + c.str() + ")";
}

inline void render_to(const Formula& f, std::string& out)
{
    switch (f.kind()) {
    case FormulaKind::atom: {
        const auto& a = f.atom();
        if (a.coeffs.empty()) out += "0";
        bool first = true;
        for (const auto& [name, c] : a.coeffs) {
            if (!first) out += " + ";
            first = false;
            if (c == PolynomialZ::constant(1)) out += name;
            else if (c == PolynomialZ::constant(-1)) out += "-" + name;
            else out += render_coefficient(c) + "*" + name;
        }
        out += " <= " + render_coefficient(a.bound);
        break;
    }
    case FormulaKind::negation:
        out += "!";
        out += "(";
        render_to(f.children().front(), out);
        out += ")";
        break;
    case FormulaKind::conjunction:
    case FormulaKind::disjunction:
    case FormulaKind::implication: {
        const char* op = f.kind() == FormulaKind::conjunction ? " & " : f.kind() == FormulaKind::disjunction ? " | " : " -> ";
        out += "(";
        for (std::size_t i = 0; i < f.children().size(); ++i) {
            if (i) out += op;
            render_to(f.children()[i], out);
        }
        out += ")";
        break;
    }
    case FormulaKind::exists:
    case FormulaKind::forall:
        out += f.kind() == FormulaKind::exists ? "E " : "A ";
        for (std::size_t i = 0; i < f.vars().size(); ++i) out += (i ? ", " : "") + f.vars()[i];
        out += " (";
        render_to(f.children().front(), out);
        out += ")";
        break;
    }
}

} // namespace detail

/// Surface syntax that parse_formula reads back to an equal formula.
inline std::string render(const Formula& f)
{
    std::string out;
    detail::render_to(f, out);
    return out;
}

namespace detail {

enum class TokenKind { end, number, ident, op };

struct Token {
    TokenKind kind = TokenKind::end;
    std::string text;
    std::size_t pos = 0;
};

inline std::vector<Token> tokenize(std::string_view s)
{
    static const char* const two_char[] = {"<=", ">=", "!=", "->"};
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({TokenKind::number, std::string(s.substr(i, j - i)), i});
            i = j;
            continue;
        }
        if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({TokenKind::ident, std::string(s.substr(i, j - i)), i});
            i = j;
            continue;
        }
        bool matched = false;
        for (const char* op : two_char)
            if (s.substr(i, 2) == op) {
                out.push_back({TokenKind::op, op, i});
                i += 2;
                matched = true;
                break;
            }
        if (matched) continue;
        if (std::string_view("<>=&|!+-*^(),").find(static_cast<char>(c)) == std::string_view::npos)
            throw parse_error(std::string("unexpected character '") + static_cast<char>(c) + "'", i);
        out.push_back({TokenKind::op, std::string(1, static_cast<char>(c)), i});
        ++i;
    }
    out.push_back({TokenKind::end, "", s.size()});
    return out;
}

inline bool is_keyword(const std::string& s)
{
    return s == "E" || s == "A" || s == "AND" || s == "OR" || s == "NOT" || s == "true" || s == "false";
}

class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : tokens_(tokenize(text)) {}

    Formula parse()
    {
        auto f = implication();
        if (peek().kind != TokenKind::end) fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    bool at_op(const char* op) const { return peek().kind == TokenKind::op && peek().text == op; }
    bool at_word(const char* w) const { return peek().kind == TokenKind::ident && peek().text == w; }
    [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, peek().pos); }

    void expect(const char* op)
    {
        if (!at_op(op)) fail(std::string("expected '") + op + "'");
        ++pos_;
    }

    Formula implication()
    {
        auto lhs = disjunction();
        if (at_op("->")) {
            ++pos_;
            return Formula::implication(std::move(lhs), implication());
        }
        return lhs;
    }

    Formula disjunction()
    {
        std::vector<Formula> parts{conjunction()};
        while (at_op("|") || at_word("OR")) {
            ++pos_;
            parts.push_back(conjunction());
        }
        return Formula::disjunction(std::move(parts));
    }

    Formula conjunction()
    {
        std::vector<Formula> parts{unary()};
        while (at_op("&") || at_word("AND")) {
            ++pos_;
            parts.push_back(unary());
        }
        return Formula::conjunction(std::move(parts));
    }

    Formula unary()
    {
        if (at_op("!") || at_word("NOT")) {
            ++pos_;
            return Formula::negation(unary());
        }
        if (at_word("E") || at_word("A")) {
            const bool is_exists = peek().text == "E";
            ++pos_;
            std::vector<std::string> vars;
            while (true) {
                if (peek().kind != TokenKind::ident || is_keyword(peek().text)) fail("expected a variable name");
                if (peek().text == "n") throw quantified_parameter(peek().pos);
                vars.push_back(peek().text);
                ++pos_;
                if (!at_op(",")) break;
                ++pos_;
            }
            auto body = unary();
            return is_exists ? Formula::exists(std::move(vars), std::move(body))
                             : Formula::forall(std::move(vars), std::move(body));
        }
        return primary();
    }

    Formula primary()
    {
        if (at_word("true") || at_word("false")) {
            bool value = peek().text == "true";
            ++pos_;
            return Formula::truth(value);
        }
        if (at_op("(")) {
            const std::size_t start = pos_;
            try {
                return relation();
            } catch (const quantified_parameter&) {
                throw;
            } catch (const parse_error& relation_error) {
                const std::size_t relation_pos = relation_error.position();
                pos_ = start + 1;
                try {
                    auto inner = implication();
                    expect(")");
                    return inner;
                } catch (const quantified_parameter&) {
                    throw;
                } catch (const parse_error& group_error) {
                    if (group_error.position() >= relation_pos) throw;
                    throw relation_error;
                }
            }
        }
        return relation();
    }

    Formula relation()
    {
        auto lhs = expr();
        if (peek().kind != TokenKind::op) fail("expected a comparison");
        const std::string op = peek().text;
        ++pos_;
        if (op == "<=") return le(lhs, expr());
        if (op == "<") return lt(lhs, expr());
        if (op == ">=") return ge(lhs, expr());
        if (op == ">") return gt(lhs, expr());
        if (op == "=") return eq(lhs, expr());
        if (op == "!=") return ne(lhs, expr());
        --pos_;
        fail("expected a comparison");
    }

    LinearExpr expr()
    {
        LinearExpr total = product();
        while (at_op("+") || at_op("-")) {
            const bool minus = peek().text == "-";
            ++pos_;
            auto next = product();
            total = minus ? total - next : total + next;
        }
        return total;
    }

    bool starts_factor() const
    {
        if (peek().kind == TokenKind::number || at_op("(")) return true;
        return peek().kind == TokenKind::ident && !is_keyword(peek().text);
    }

    LinearExpr product()
    {
        LinearExpr value = factor();
        while (at_op("*") || starts_factor()) {
            if (at_op("*")) ++pos_;
            const std::size_t where = peek().pos;
            auto rhs = factor();
            if (value.is_constant()) value = value.constant * rhs;
            else if (rhs.is_constant()) value = rhs.constant * value;
            else throw parse_error("product of two variables is not linear", where);
        }
        return value;
    }

    LinearExpr factor()
    {
        if (at_op("-")) {
            ++pos_;
            return -factor();
        }
        if (at_op("(")) {
            ++pos_;
            auto inner = expr();
            expect(")");
            return inner;
        }
        if (peek().kind == TokenKind::number) {
            auto value = LinearExpr::poly(PolynomialZ::constant(BigInt(peek().text)));
            ++pos_;
            return value;
        }
        if (peek().kind == TokenKind::ident && !is_keyword(peek().text)) {
            std::string name = peek().text;
            ++pos_;
            if (name != "n") return LinearExpr::variable(name);
            std::size_t power = 1;
            if (at_op("^")) {
                ++pos_;
                if (peek().kind != TokenKind::number) fail("expected an exponent");
                power = static_cast<std::size_t>(std::stoul(peek().text));
                if (power < 1 || power > 64) fail("exponent must be in [1, 64]");
                ++pos_;
            }
            return LinearExpr::poly(PolynomialZ::monomial(1, power));
        }
        fail("expected a term");
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Grammar:
///   formula := disj ['->' formula]
///   disj    := conj (('|' | OR) conj)*
///   conj    := unary (('&' | AND) unary)*
///   unary   := ('!' | NOT) unary | ('E' | 'A') var (',' var)* unary | primary
///   primary := '(' formula ')' | true | false | expr relop expr
///   relop   := <= < >= > = !=
///   expr    := linear terms in the variables with coefficients polynomial in n
/// A quantifier's scope is the following unary formula, so write E z (...).
inline Formula parse_formula(std::string_view text)
{
    return detail::FormulaParser(text).parse();
}

struct PresburgerResult {
    bool value = false;
    /// True when every quantifier consulted was certified bounded inside
    /// the window, so the answer holds for quantifiers over all of Z.
    bool exact = true;
};

/// Evaluates one formula at one parameter value with quantifiers over
/// [-W, W]. The formula is compiled to negation normal form over integer
/// atoms, consecutive existential blocks are merged, and each block is
/// searched depth first with interval propagation from its atoms.
/// Quantifier results are memoized on the values of their free variables.
class PresburgerEvaluator {
public:
    PresburgerEvaluator(const Formula& f, std::int64_t n, std::optional<std::int64_t> window = std::nullopt)
        : n_(n)
    {
        for (const auto& name : f.free_variables()) slot_of_free_[name] = new_slot();
        std::map<std::string, int> scope = slot_of_free_;
        root_ = compile(f, false, scope);
        window_ = window ? *window : std::max<std::int64_t>(1, 4 * largest_constant_);
        if (window_ < 0) throw usage_error("window must be positive");
        finish();
    }

    std::int64_t window() const noexcept { return window_; }
    std::int64_t largest_constant() const noexcept { return largest_constant_; }
    std::vector<std::string> free_variables() const
    {
        std::vector<std::string> out;
        for (const auto& [name, slot] : slot_of_free_) out.push_back(name);
        return out;
    }

    PresburgerResult eval(const std::map<std::string, std::int64_t>& assignment)
    {
        for (const auto& [name, slot] : slot_of_free_) {
            auto it = assignment.find(name);
            if (it == assignment.end()) throw unbound_variable(name);
            env_[static_cast<std::size_t>(slot)] = it->second;
        }
        exact_ = true;
        bool v = eval_node(root_);
        return {v, exact_};
    }

private:
    using Wide = __int128;

    enum class Kind { atom, conjunction, disjunction, exists, not_exists };

    struct CompiledAtom {
        std::vector<std::pair<int, std::int64_t>> terms;
        std::int64_t bound = 0;
    };

    struct Node {
        Kind kind = Kind::atom;
        CompiledAtom atom;
        std::vector<int> children;
        std::vector<int> block;
        std::vector<int> constraints;
        std::vector<int> free_slots;
        /// Slot -> index in `block`, or -1.
        std::vector<int> local;
        std::unordered_map<std::vector<std::int64_t>, bool, detail::VectorHash> memo;
    };

    struct Range {
        Wide lo, hi;
        bool lo_inf, hi_inf;
    };

    int new_slot()
    {
        env_.push_back(0);
        return static_cast<int>(env_.size()) - 1;
    }

    int add(Node node)
    {
        nodes_.push_back(std::move(node));
        return static_cast<int>(nodes_.size()) - 1;
    }

    std::int64_t instantiate_coeff(const PolynomialZ& p)
    {
        BigInt v = eval_poly(p, n_);
        if (!fits_int64(v) || boost::multiprecision::abs(v) > (BigInt(1) << 40))
            throw resource_limit("formula constant " + v.str() + " is too large to evaluate");
        auto c = static_cast<std::int64_t>(v);
        largest_constant_ = std::max(largest_constant_, c < 0 ? -c : c);
        return c;
    }

    int compile(const Formula& f, bool negated, std::map<std::string, int>& scope)
    {
        switch (f.kind()) {
        case FormulaKind::atom: {
            Node node;
            node.kind = Kind::atom;
            for (const auto& [name, c] : f.atom().coeffs) {
                std::int64_t v = instantiate_coeff(c);
                if (v != 0) node.atom.terms.emplace_back(scope.at(name), negated ? -v : v);
            }
            std::int64_t b = instantiate_coeff(f.atom().bound);
            node.atom.bound = negated ? -b - 1 : b;
            return add(std::move(node));
        }
        case FormulaKind::negation:
            return compile(f.children().front(), !negated, scope);
        case FormulaKind::conjunction:
        case FormulaKind::disjunction: {
            Node node;
            const bool is_and = (f.kind() == FormulaKind::conjunction) != negated;
            node.kind = is_and ? Kind::conjunction : Kind::disjunction;
            for (const auto& c : f.children()) node.children.push_back(compile(c, negated, scope));
            return add(std::move(node));
        }
        case FormulaKind::implication: {
            Node node;
            node.kind = negated ? Kind::conjunction : Kind::disjunction;
            node.children.push_back(compile(f.children()[0], !negated, scope));
            node.children.push_back(compile(f.children()[1], negated, scope));
            return add(std::move(node));
        }
        case FormulaKind::exists:
        case FormulaKind::forall: {
            const bool existential = (f.kind() == FormulaKind::exists) != negated;
            std::map<std::string, int> inner = scope;
            std::vector<int> block;
            for (const auto& v : f.vars()) {
                int slot = new_slot();
                inner[v] = slot;
                block.push_back(slot);
            }
            const bool body_negated = f.kind() == FormulaKind::forall;
            Node node;
            node.kind = Kind::exists;
            node.block = std::move(block);
            node.children.push_back(compile(f.children().front(), body_negated, inner));
            int ex = add(std::move(node));
            if (existential) return ex;
            Node outer;
            outer.kind = Kind::not_exists;
            outer.children.push_back(ex);
            return add(std::move(outer));
        }
        }
        throw error("unknown formula node");
    }

    /// Flattens nested conjunctions and existential blocks under every
    /// existential node, then records atoms and free slots.
    void finish()
    {
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (nodes_[i].kind != Kind::exists) continue;
            std::vector<int> pending = nodes_[i].children, parts;
            std::vector<int> block = nodes_[i].block;
            while (!pending.empty()) {
                int c = pending.back();
                pending.pop_back();
                const Node& child = nodes_[static_cast<std::size_t>(c)];
                if (child.kind == Kind::conjunction) pending.insert(pending.end(), child.children.begin(), child.children.end());
                else if (child.kind == Kind::exists) {
                    block.insert(block.end(), child.block.begin(), child.block.end());
                    pending.insert(pending.end(), child.children.begin(), child.children.end());
                } else parts.push_back(c);
            }
            std::reverse(parts.begin(), parts.end());
            std::stable_partition(parts.begin(), parts.end(), [&](int c) { return nodes_[static_cast<std::size_t>(c)].kind == Kind::atom; });
            nodes_[i].block = std::move(block);
            nodes_[i].children = parts;
            for (int c : parts)
                if (nodes_[static_cast<std::size_t>(c)].kind == Kind::atom) nodes_[i].constraints.push_back(c);
        }
        std::vector<bool> done(nodes_.size(), false);
        compute_free(root_, done);
        for (auto& node : nodes_) {
            if (node.kind != Kind::exists) continue;
            node.local.assign(env_.size(), -1);
            for (std::size_t i = 0; i < node.block.size(); ++i) node.local[static_cast<std::size_t>(node.block[i])] = static_cast<int>(i);
        }
    }

    const std::vector<int>& compute_free(int id, std::vector<bool>& done)
    {
        auto idx = static_cast<std::size_t>(id);
        if (done[idx]) return nodes_[idx].free_slots;
        std::set<int> slots;
        if (nodes_[idx].kind == Kind::atom)
            for (const auto& [slot, c] : nodes_[idx].atom.terms) slots.insert(slot);
        for (int c : std::vector<int>(nodes_[idx].children)) {
            const auto& sub = compute_free(c, done);
            slots.insert(sub.begin(), sub.end());
        }
        for (int b : nodes_[idx].block) slots.erase(b);
        nodes_[idx].free_slots.assign(slots.begin(), slots.end());
        done[idx] = true;
        return nodes_[idx].free_slots;
    }

    bool eval_node(int id)
    {
        Node& node = nodes_[static_cast<std::size_t>(id)];
        switch (node.kind) {
        case Kind::atom: {
            Wide sum = 0;
            for (const auto& [slot, c] : node.atom.terms) sum += Wide(c) * env_[static_cast<std::size_t>(slot)];
            return sum <= node.atom.bound;
        }
        case Kind::conjunction:
            for (int c : node.children)
                if (!eval_node(c)) return false;
            return true;
        case Kind::disjunction:
            for (int c : node.children)
                if (eval_node(c)) return true;
            return false;
        case Kind::not_exists:
            return !eval_node(node.children.front());
        case Kind::exists: {
            std::vector<std::int64_t> key;
            key.reserve(node.free_slots.size());
            for (int s : node.free_slots) key.push_back(env_[static_cast<std::size_t>(s)]);
            if (auto it = node.memo.find(key); it != node.memo.end()) return it->second;
            bool value = search_block(id);
            nodes_[static_cast<std::size_t>(id)].memo.emplace(std::move(key), value);
            return value;
        }
        }
        return false;
    }

    static Wide floor_wide(Wide a, Wide b)
    {
        Wide q = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
        return q;
    }

    /// Tightens block ranges against every atom; false when some range
    /// becomes empty.
    bool propagate(const Node& node, std::vector<Range>& ranges) const
    {
        for (int round = 0; round < 64; ++round) {
            bool changed = false;
            for (int c : node.constraints) {
                const auto& atom = nodes_[static_cast<std::size_t>(c)].atom;
                Wide finite = 0;
                int infinite = 0;
                for (const auto& [slot, a] : atom.terms) {
                    int p = node.local[static_cast<std::size_t>(slot)];
                    if (p < 0) {
                        finite += Wide(a) * env_[static_cast<std::size_t>(slot)];
                        continue;
                    }
                    const Range& r = ranges[static_cast<std::size_t>(p)];
                    if (a > 0 ? r.lo_inf : r.hi_inf) ++infinite;
                    else finite += Wide(a) * (a > 0 ? r.lo : r.hi);
                }
                if (infinite == 0 && finite > atom.bound) return false;
                if (infinite > 1) continue;
                for (const auto& [slot, a] : atom.terms) {
                    int p = node.local[static_cast<std::size_t>(slot)];
                    if (p < 0) continue;
                    Range& r = ranges[static_cast<std::size_t>(p)];
                    const bool own_inf = a > 0 ? r.lo_inf : r.hi_inf;
                    if (infinite - (own_inf ? 1 : 0) > 0) continue;
                    Wide rest = finite - (own_inf ? 0 : Wide(a) * (a > 0 ? r.lo : r.hi));
                    Wide room = Wide(atom.bound) - rest;
                    if (a > 0) {
                        Wide hi = floor_wide(room, a);
                        if (r.hi_inf || hi < r.hi) {
                            r.hi = hi;
                            r.hi_inf = false;
                            changed = true;
                        }
                    } else {
                        Wide lo = -floor_wide(room, -a);
                        if (r.lo_inf || lo > r.lo) {
                            r.lo = lo;
                            r.lo_inf = false;
                            changed = true;
                        }
                    }
                    if (!r.lo_inf && !r.hi_inf && r.lo > r.hi) return false;
                }
            }
            if (!changed) return true;
        }
        return true;
    }

    bool search_block(int id)
    {
        const Node& node = nodes_[static_cast<std::size_t>(id)];
        std::vector<Range> ranges(node.block.size(), Range{0, 0, true, true});
        if (!propagate(node, ranges)) return false;
        {
            for (const auto& r : ranges)
                if (r.lo_inf || r.hi_inf || r.lo < -window_ || r.hi > window_) exact_ = false;
            for (auto& r : ranges) {
                r.lo = r.lo_inf ? -window_ : std::max<Wide>(r.lo, -window_);
                r.hi = r.hi_inf ? window_ : std::min<Wide>(r.hi, window_);
                r.lo_inf = r.hi_inf = false;
            }
            std::vector<bool> assigned(node.block.size(), false);
            return !r_empty(ranges) && propagate(node, ranges) && dfs(id, ranges, assigned);
        }
    }

    static bool r_empty(const std::vector<Range>& ranges)
    {
        return std::any_of(ranges.begin(), ranges.end(), [](const Range& r) { return r.lo > r.hi; });
    }

    bool dfs(int id, std::vector<Range>& ranges, std::vector<bool>& assigned)
    {
        const Node& node = nodes_[static_cast<std::size_t>(id)];
        std::size_t pick = ranges.size();
        Wide best = 0;
        for (std::size_t i = 0; i < ranges.size(); ++i) {
            if (assigned[i]) continue;
            Wide width = ranges[i].hi - ranges[i].lo;
            if (pick == ranges.size() || width < best) {
                pick = i;
                best = width;
            }
        }
        if (pick == ranges.size()) {
            for (std::size_t i = 0; i < ranges.size(); ++i)
                env_[static_cast<std::size_t>(node.block[i])] = static_cast<std::int64_t>(ranges[i].lo);
            for (int c : node.children)
                if (!eval_node(c)) return false;
            return true;
        }
        assigned[pick] = true;
        const Wide lo = ranges[pick].lo, hi = ranges[pick].hi;
        for (Wide v = lo; v <= hi; ++v) {
            std::vector<Range> next = ranges;
            next[pick].lo = next[pick].hi = v;
            env_[static_cast<std::size_t>(node.block[pick])] = static_cast<std::int64_t>(v);
            if (propagate(node, next) && dfs(id, next, assigned)) {
                assigned[pick] = false;
                return true;
            }
        }
        assigned[pick] = false;
        return false;
    }

    std::int64_t n_;
    std::int64_t window_ = 1;
    std::int64_t largest_constant_ = 0;
    std::vector<Node> nodes_;
    std::vector<std::int64_t> env_;
    std::map<std::string, int> slot_of_free_;
    int root_ = 0;
    bool exact_ = true;
};

/// Evaluates with the default window 4 * (largest constant), where the
/// assigned values count as constants.
inline PresburgerResult eval_formula(const Formula& f, std::int64_t n, const std::map<std::string, std::int64_t>& assignment,
                                     std::optional<std::int64_t> window = std::nullopt)
{
    if (!window) {
        PresburgerEvaluator probe(f, n, 1);
        std::int64_t largest = probe.largest_constant();
        for (const auto& [name, v] : assignment) largest = std::max(largest, v < 0 ? -v : v);
        window = std::max<std::int64_t>(1, 4 * largest);
    }
    PresburgerEvaluator ev(f, n, window);
    return ev.eval(assignment);
}

struct DefinedSet {
    std::vector<std::string> vars;
    std::set<std::vector<std::int64_t>> tuples;
    bool exact = true;
    std::int64_t window = 0;
};

/// All tuples in [-W, W]^m (m = free_vars.size()) satisfying the formula.
inline DefinedSet define_set(const Formula& f, std::int64_t n, const std::vector<std::string>& free_vars,
                             std::optional<std::int64_t> window = std::nullopt)
{
    PresburgerEvaluator ev(f, n, window);
    for (const auto& name : ev.free_variables())
        if (std::find(free_vars.begin(), free_vars.end(), name) == free_vars.end()) throw unbound_variable(name);
    DefinedSet out{free_vars, {}, true, ev.window()};
    const std::int64_t w = ev.window();
    std::vector<std::int64_t> tuple(free_vars.size(), -w);
    std::map<std::string, std::int64_t> assignment;
    while (true) {
        for (std::size_t i = 0; i < tuple.size(); ++i) assignment[free_vars[i]] = tuple[i];
        auto r = ev.eval(assignment);
        out.exact = out.exact && r.exact;
        if (r.value) out.tuples.insert(tuple);
        std::size_t i = 0;
        while (i < tuple.size() && tuple[i] == w) tuple[i++] = -w;
        if (i == tuple.size()) break;
        ++tuple[i];
    }
    return out;
}

/// Builders for the formulas of a fixed numerical family. Every call uses
/// fresh bound-variable names.
class FormulaBuilder {
public:
    explicit FormulaBuilder(const ParametricFamily& fam) : gens_(fam.scalar_generators()) {}

    std::string fresh(const std::string& stem) { return stem + std::to_string(++counter_); }

    /// t >= 0 and E z_1..z_k (z_i >= 0 and sum g_i z_i = t).
    Formula member(const LinearExpr& t)
    {
        auto [vars, nonneg, sum] = combination("z");
        nonneg.push_back(eq(sum, t));
        return Formula::conjunction({ge(t, LinearExpr::integer(0)), Formula::exists(vars, Formula::conjunction(nonneg))});
    }

    Formula not_member(const LinearExpr& t) { return Formula::negation(member(t)); }

    /// Z-combinations: E z_1..z_k (sum g_i z_i = t).
    Formula integer_combination(const LinearExpr& t)
    {
        std::vector<std::string> vars;
        LinearExpr sum;
        for (const auto& g : gens_) {
            vars.push_back(fresh("z"));
            sum = sum + LinearExpr::variable(vars.back(), g);
        }
        return Formula::exists(vars, eq(sum, t));
    }

    /// t in L(m): E z (z_i >= 0, sum g_i z_i = m, sum z_i = t).
    Formula in_length_set(const LinearExpr& t, std::int64_t m)
    {
        auto [vars, parts, sum] = combination("z");
        LinearExpr count;
        for (const auto& v : vars) count = count + LinearExpr::variable(v);
        parts.push_back(eq(sum, LinearExpr::integer(m)));
        parts.push_back(eq(t, count));
        return Formula::exists(vars, Formula::conjunction(parts));
    }

    Formula frobenius(const LinearExpr& x)
    {
        auto y = fresh("y");
        auto ly = LinearExpr::variable(y);
        return Formula::conjunction({not_member(x), Formula::forall({y}, Formula::implication(lt(x, ly), member(ly)))});
    }

    Formula gcd(const LinearExpr& x)
    {
        auto y = fresh("y");
        auto ly = LinearExpr::variable(y);
        auto least = Formula::forall(
            {y}, Formula::implication(Formula::conjunction({integer_combination(ly), gt(ly, LinearExpr::integer(0))}), le(x, ly)));
        return Formula::conjunction({gt(x, LinearExpr::integer(0)), Formula::conjunction({integer_combination(x), least})});
    }

    Formula pseudo_frobenius(const LinearExpr& x)
    {
        auto y = fresh("y");
        auto ly = LinearExpr::variable(y);
        auto cond = Formula::implication(Formula::conjunction({member(ly), ne(ly, LinearExpr::integer(0))}), member(x + ly));
        return Formula::conjunction({not_member(x), Formula::forall({y}, cond)});
    }

    /// Sentence: E f (f is the Frobenius number and A z (z not in S -> f - z in S)).
    Formula symmetric()
    {
        auto f = fresh("f");
        auto z = fresh("w");
        auto lf = LinearExpr::variable(f), lz = LinearExpr::variable(z);
        return Formula::exists(
            {f}, Formula::conjunction({frobenius(lf), Formula::forall({z}, Formula::implication(not_member(lz), member(lf - lz)))}));
    }

    Formula fundamental_gap(const LinearExpr& x)
    {
        return Formula::conjunction({not_member(x), member(PolynomialZ::constant(2) * x), member(PolynomialZ::constant(3) * x)});
    }

    Formula delta_element(const LinearExpr& x, std::int64_t m)
    {
        auto y1 = fresh("y"), y2 = fresh("y"), z = fresh("v");
        auto l1 = LinearExpr::variable(y1), l2 = LinearExpr::variable(y2), lz = LinearExpr::variable(z);
        auto next = Formula::forall(
            {z}, Formula::implication(Formula::conjunction({in_length_set(lz, m), gt(lz, l1)}), le(l2, lz)));
        return Formula::exists({y1, y2}, Formula::conjunction({in_length_set(l1, m), in_length_set(l2, m), lt(l1, l2),
                                                                 eq(x, l2 - l1), next}));
    }

    /// x in S and x - m not in S, m the least positive element of S.
    Formula apery(const LinearExpr& x)
    {
        auto m = fresh("m"), y = fresh("y");
        auto lm = LinearExpr::variable(m), ly = LinearExpr::variable(y);
        auto least = Formula::forall(
            {y}, Formula::implication(Formula::conjunction({member(ly), gt(ly, LinearExpr::integer(0))}), le(lm, ly)));
        auto multiplicity = Formula::conjunction({member(lm), gt(lm, LinearExpr::integer(0)), least});
        return Formula::conjunction({member(x), Formula::exists({m}, Formula::conjunction({multiplicity, not_member(x - lm)}))});
    }

private:
    struct Combination {
        std::vector<std::string> vars;
        std::vector<Formula> nonneg;
        LinearExpr sum;
    };

    Combination combination(const std::string& stem)
    {
        Combination c;
        for (const auto& g : gens_) {
            c.vars.push_back(fresh(stem));
            c.nonneg.push_back(ge(LinearExpr::variable(c.vars.back()), LinearExpr::integer(0)));
            c.sum = c.sum + LinearExpr::variable(c.vars.back(), g);
        }
        return c;
    }

    std::vector<PolynomialZ> gens_;
    int counter_ = 0;
};

/// A named formula with an optional integer argument, e.g. "length_set(60)".
struct BuiltinSpec {
    std::string name;
    std::optional<std::int64_t> argument;

    static BuiltinSpec parse(const std::string& text)
    {
        auto open = text.find('(');
        if (open == std::string::npos) return {text, std::nullopt};
        if (text.back() != ')') throw usage_error("bad builtin '" + text + "'");
        try {
            return {text.substr(0, open), std::stoll(text.substr(open + 1, text.size() - open - 2))};
        } catch (const std::logic_error&) {
            throw usage_error("bad builtin argument in '" + text + "'");
        }
    }
};

inline const std::vector<std::string>& builtin_names()
{
    static const std::vector<std::string> names{"member", "gcd", "frobenius", "pf", "symmetric", "fundamental_gap",
                                                "length_set", "delta_elem", "apery"};
    return names;
}

/// The named formula for a numerical family. Every builtin has the free
/// variable x except `symmetric`, which is a sentence. length_set and
/// delta_elem take the element m as argument.
inline Formula builtin_formula(const BuiltinSpec& spec, const ParametricFamily& fam)
{
    FormulaBuilder b(fam);
    const auto x = LinearExpr::variable("x");
    auto need_arg = [&]() {
        if (!spec.argument) throw usage_error("builtin '" + spec.name + "' needs an element argument, e.g. " + spec.name + "(60)");
        return *spec.argument;
    };
    if (spec.name == "member") return b.member(x);
    if (spec.name == "gcd") return b.gcd(x);
    if (spec.name == "frobenius") return b.frobenius(x);
    if (spec.name == "pf") return b.pseudo_frobenius(x);
    if (spec.name == "symmetric") return b.symmetric();
    if (spec.name == "fundamental_gap") return b.fundamental_gap(x);
    if (spec.name == "length_set") return b.in_length_set(x, need_arg());
    if (spec.name == "delta_elem") return b.delta_element(x, need_arg());
    if (spec.name == "apery") return b.apery(x);
    throw unknown_builtin(spec.name);
}

inline Formula builtin_formula(const std::string& name, const ParametricFamily& fam)
{
    return builtin_formula(BuiltinSpec::parse(name), fam);
}

} // namespace eqpsg

#endif // EQPSG_PRESBURGER_HPP
