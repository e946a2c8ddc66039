#ifndef EQPSG_POLYNOMIAL_HPP
#define EQPSG_POLYNOMIAL_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"

namespace eqpsg {

/// Dense polynomial in the single parameter n with arbitrary-precision
/// integer coefficients. coeffs()[j] is the coefficient of n^j; trailing
/// zeros are always trimmed, so the zero polynomial has no coefficients.
class PolynomialZ {
public:
    PolynomialZ() = default;
    explicit PolynomialZ(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    PolynomialZ(std::initializer_list<std::int64_t> coeffs)
    {
        for (auto c : coeffs) coeffs_.emplace_back(c);
        trim();
    }

    static PolynomialZ constant(const BigInt& c) { return PolynomialZ(std::vector<BigInt>{c}); }
    static PolynomialZ monomial(const BigInt& c, std::size_t power)
    {
        std::vector<BigInt> v(power + 1);
        v[power] = c;
        return PolynomialZ(std::move(v));
    }

    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_constant() const noexcept { return coeffs_.size() <= 1; }

    BigInt coeff(std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : BigInt(0); }

    /// Exact value at n (Horner).
    BigInt operator()(const BigInt& n) const
    {
        BigInt acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * n + *it;
        return acc;
    }

    friend PolynomialZ operator+(const PolynomialZ& a, const PolynomialZ& b)
    {
        std::vector<BigInt> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = a.coeff(j) + b.coeff(j);
        return PolynomialZ(std::move(v));
    }

    friend PolynomialZ operator-(const PolynomialZ& a) { return PolynomialZ::constant(-1) * a; }
    friend PolynomialZ operator-(const PolynomialZ& a, const PolynomialZ& b) { return a + (-b); }

    friend PolynomialZ operator*(const PolynomialZ& a, const PolynomialZ& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return PolynomialZ(std::move(v));
    }

    friend bool operator==(const PolynomialZ& a, const PolynomialZ& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const PolynomialZ& a, const PolynomialZ& b) { return !(a == b); }
    friend bool operator<(const PolynomialZ& a, const PolynomialZ& b)
    {
        if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
        return a.coeffs_ < b.coeffs_;
    }

    /// Canonical rendering, highest degree first: "4n^2-2n", "-1", "0".
    std::string str() const
    {
        if (is_zero()) return "0";
        std::string out;
        for (int j = degree(); j >= 0; --j) {
            const BigInt& c = coeffs_[static_cast<std::size_t>(j)];
            if (c == 0) continue;
            BigInt mag = c < 0 ? BigInt(-c) : c;
            if (c < 0) out += '-';
            else if (!out.empty()) out += '+';
            if (j == 0 || mag != 1) out += mag.str();
            if (j >= 1) out += 'n';
            if (j >= 2) out += '^' + std::to_string(j);
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const PolynomialZ& p) { return os << p.str(); }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<BigInt> coeffs_;
};

inline BigInt eval_poly(const PolynomialZ& p, std::int64_t n) { return p(BigInt(n)); }

namespace detail {

class PolyLexer {
public:
    PolyLexer(std::string_view text, std::size_t base) : text_(text), base_(base) {}

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool done()
    {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek()
    {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool accept(char c)
    {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool digit_next() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
    BigInt integer()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return BigInt(std::string(text_.substr(start, pos_ - start)));
    }
    [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, base_ + pos_); }
    std::size_t pos() const noexcept { return pos_; }

private:
    std::string_view text_;
    std::size_t base_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses `poly := term (('+'|'-') term)*`, `term := [integer]['n'['^' posint]]`.
/// Whitespace is ignored; a leading sign is allowed.
inline PolynomialZ parse_poly(std::string_view text)
{
    detail::PolyLexer lex(text, 0);
    if (lex.done()) lex.fail("empty polynomial");
    PolynomialZ acc;
    bool first = true;
    while (!lex.done()) {
        int sign = 1;
        if (lex.accept('+')) {
        } else if (lex.accept('-')) {
            sign = -1;
        } else if (!first) {
            lex.fail("expected '+' or '-'");
        }
        first = false;
        BigInt c = 1;
        bool have_coeff = false;
        if (lex.digit_next()) {
            c = lex.integer();
            have_coeff = true;
            lex.accept('*');
        }
        std::size_t power = 0;
        if (lex.accept('n')) {
            power = 1;
            if (lex.accept('^')) {
                BigInt e = lex.integer();
                if (e < 1 || e > 64) lex.fail("exponent must be in [1, 64]");
                power = static_cast<std::size_t>(e);
            }
        } else if (!have_coeff) {
            lex.fail("expected integer or 'n'");
        }
        acc = acc + PolynomialZ::monomial(sign * c, power);
    }
    return acc;
}

} // namespace eqpsg

#endif // EQPSG_POLYNOMIAL_HPP
