#ifndef EQPSG_FAMILY_HPP
#define EQPSG_FAMILY_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"

namespace eqpsg {

using GeneratorVector = std::vector<std::int64_t>;

/// k generator vectors in N^m whose coordinates are polynomials in n.
class ParametricFamily {
public:
    ParametricFamily(std::size_t dim, std::vector<std::vector<PolynomialZ>> generators, std::string label = {})
        : dim_(dim), generators_(std::move(generators)), label_(std::move(label))
    {
        if (dim_ == 0) throw error("family dimension must be positive");
        if (generators_.empty()) throw error("family needs at least one generator");
        for (const auto& g : generators_)
            if (g.size() != dim_) throw error("every generator needs exactly " + std::to_string(dim_) + " coordinates");
    }

    /// Convenience constructor for numerical families (m = 1).
    static ParametricFamily numerical(const std::vector<PolynomialZ>& gens, std::string label = {})
    {
        std::vector<std::vector<PolynomialZ>> v;
        for (const auto& g : gens) v.push_back({g});
        return ParametricFamily(1, std::move(v), std::move(label));
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return generators_.size(); }
    const std::vector<std::vector<PolynomialZ>>& generators() const noexcept { return generators_; }
    const std::string& label() const noexcept { return label_; }

    /// For m = 1 families: the single coordinate of every generator.
    std::vector<PolynomialZ> scalar_generators() const
    {
        if (dim_ != 1) throw error("family is not numerical (dim = " + std::to_string(dim_) + ")");
        std::vector<PolynomialZ> out;
        for (const auto& g : generators_) out.push_back(g[0]);
        return out;
    }

    /// Sum over generators of the largest coordinate degree.
    int degree_sum() const
    {
        int s = 0;
        for (const auto& g : generators_) s += max_degree(g);
        return s;
    }

    int min_generator_degree() const
    {
        int best = max_degree(generators_.front());
        for (const auto& g : generators_) best = std::min(best, max_degree(g));
        return best;
    }

    /// "n+3, n+5, n+7" style rendering; coordinates joined with ';'.
    std::string str() const
    {
        std::string out;
        for (std::size_t i = 0; i < generators_.size(); ++i) {
            if (i) out += ", ";
            for (std::size_t j = 0; j < dim_; ++j) {
                if (j) out += ';';
                out += generators_[i][j].str();
            }
        }
        return out;
    }

private:
    static int max_degree(const std::vector<PolynomialZ>& g)
    {
        int d = 0;
        for (const auto& c : g) d = std::max(d, c.degree());
        return d;
    }

    std::size_t dim_;
    std::vector<std::vector<PolynomialZ>> generators_;
    std::string label_;
};

/// Coordinate-wise evaluation of every generator at n. Throws
/// non_positive_generator when a generator leaves N^m \ {0}.
inline std::vector<GeneratorVector> instantiate(const ParametricFamily& fam, std::int64_t n)
{
    std::vector<GeneratorVector> out;
    out.reserve(fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i) {
        GeneratorVector v;
        bool nonzero = false;
        for (const auto& coord : fam.generators()[i]) {
            BigInt value = eval_poly(coord, n);
            if (value < 0) throw non_positive_generator(n, i);
            if (!fits_int64(value))
                throw generator_overflow("generator " + std::to_string(i + 1) + " exceeds 64 bits at n = "
                                         + std::to_string(n));
            nonzero = nonzero || value != 0;
            v.push_back(static_cast<std::int64_t>(value));
        }
        if (!nonzero) throw non_positive_generator(n, i);
        out.push_back(std::move(v));
    }
    return out;
}

/// m = 1 shortcut for instantiate.
inline std::vector<std::int64_t> instantiate_scalar(const ParametricFamily& fam, std::int64_t n)
{
    if (fam.dim() != 1) throw error("family is not numerical (dim = " + std::to_string(fam.dim()) + ")");
    std::vector<std::int64_t> out;
    for (auto& v : instantiate(fam, n)) out.push_back(v[0]);
    return out;
}

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

inline std::vector<PolynomialZ> parse_coordinates(std::string_view line, std::size_t offset)
{
    std::vector<PolynomialZ> coords;
    std::size_t pos = 0;
    for (auto part : split(line, ';')) {
        try {
            coords.push_back(parse_poly(part));
        } catch (const parse_error& e) {
            throw parse_error(std::string("bad polynomial '") + std::string(trim(part)) + "'",
                              offset + pos + e.position());
        }
        pos += part.size() + 1;
    }
    return coords;
}

} // namespace detail

/// Family file: a `dim m` line, then one generator per line with m
/// semicolon-separated polynomials. `#` starts a comment.
inline ParametricFamily parse_family(std::string_view text, std::string label = {})
{
    std::size_t dim = 0;
    std::vector<std::vector<PolynomialZ>> gens;
    std::size_t offset = 0;
    for (auto raw : detail::split(text, '\n')) {
        std::size_t line_offset = offset;
        offset += raw.size() + 1;
        auto line = raw.substr(0, raw.find('#'));
        line = detail::trim(line);
        if (line.empty()) continue;
        if (dim == 0) {
            if (line.substr(0, 3) != "dim") throw parse_error("family file must start with 'dim m'", line_offset);
            auto rest = detail::trim(line.substr(3));
            try {
                int m = std::stoi(std::string(rest));
                if (m < 1) throw parse_error("dimension must be positive", line_offset);
                dim = static_cast<std::size_t>(m);
            } catch (const std::logic_error&) {
                throw parse_error("bad dimension", line_offset);
            }
            continue;
        }
        auto coords = detail::parse_coordinates(line, line_offset);
        if (coords.size() != dim)
            throw parse_error("expected " + std::to_string(dim) + " coordinates", line_offset);
        gens.push_back(std::move(coords));
    }
    if (dim == 0) throw parse_error("missing 'dim' line", 0);
    if (gens.empty()) throw parse_error("family has no generators", text.size());
    return ParametricFamily(dim, std::move(gens), std::move(label));
}

/// Inline form: generators separated by ',', coordinates by ';'.
/// "n+3, n+5, n+7" or "n;1, 1;n".
inline ParametricFamily parse_inline_family(std::string_view text, std::string label = {})
{
    std::vector<std::vector<PolynomialZ>> gens;
    std::size_t offset = 0;
    for (auto part : detail::split(text, ',')) {
        gens.push_back(detail::parse_coordinates(part, offset));
        offset += part.size() + 1;
    }
    std::size_t dim = gens.front().size();
    for (const auto& g : gens)
        if (g.size() != dim) throw parse_error("generators have differing coordinate counts", 0);
    return ParametricFamily(dim, std::move(gens), label.empty() ? std::string(text) : std::move(label));
}

inline ParametricFamily load_family_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw error("cannot open family file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_family(ss.str(), path);
}

/// Bresinsky-type family of degree d (even): 4n^d -/+ multiples of n^{d/2}.
inline ParametricFamily bresinsky_family(int d)
{
    if (d < 2 || d % 2 != 0) throw odd_degree(d);
    auto top = PolynomialZ::monomial(4, static_cast<std::size_t>(d));
    auto half = PolynomialZ::monomial(1, static_cast<std::size_t>(d / 2));
    return ParametricFamily::numerical(
        {top - PolynomialZ::constant(2) * half, top - PolynomialZ::constant(1), top + PolynomialZ::constant(2) * half,
         top + PolynomialZ::constant(4) * half - PolynomialZ::constant(1)},
        "bresinsky d=" + std::to_string(d));
}

} // namespace eqpsg

#endif // EQPSG_FAMILY_HPP
