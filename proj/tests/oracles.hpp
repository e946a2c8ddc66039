// Brute-force reference implementations. Deliberately naive: each one works
// from the definition with no shared code from the library.
#ifndef EQPSG_TESTS_ORACLES_HPP
#define EQPSG_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Gens = std::vector<std::int64_t>;

/// member[t] for t in [0, upto] by the coin-change recurrence.
inline std::vector<bool> members(const Gens& gens, std::int64_t upto)
{
    std::vector<bool> ok(static_cast<std::size_t>(upto + 1), false);
    ok[0] = true;
    for (std::int64_t t = 1; t <= upto; ++t)
        for (auto g : gens)
            if (g <= t && ok[static_cast<std::size_t>(t - g)]) {
                ok[static_cast<std::size_t>(t)] = true;
                break;
            }
    return ok;
}

inline std::int64_t gcd_of(const Gens& gens)
{
    std::int64_t d = 0;
    for (auto g : gens) d = std::gcd(d, g);
    return d;
}

/// Every gap of a numerical semigroup lies below a1 * a2 (or is absent when
/// a generator is 1).
inline std::int64_t search_bound(const Gens& gens)
{
    Gens s = gens;
    std::sort(s.begin(), s.end());
    return s.size() == 1 ? 4 : s[0] * s[1] + s.back() + 4;
}

inline bool is_member(const Gens& gens, std::int64_t t)
{
    if (t < 0) return false;
    return members(gens, t)[static_cast<std::size_t>(t)];
}

inline std::vector<std::int64_t> gaps(const Gens& gens)
{
    auto b = search_bound(gens);
    auto ok = members(gens, b);
    std::vector<std::int64_t> out;
    for (std::int64_t t = 0; t <= b; ++t)
        if (!ok[static_cast<std::size_t>(t)]) out.push_back(t);
    return out;
}

inline std::int64_t frobenius(const Gens& gens)
{
    auto g = gaps(gens);
    return g.empty() ? -1 : g.back();
}

inline std::int64_t genus(const Gens& gens) { return static_cast<std::int64_t>(gaps(gens).size()); }

inline std::vector<std::int64_t> pseudo_frobenius(const Gens& gens)
{
    auto b = search_bound(gens);
    auto ok = members(gens, 3 * b);
    auto in = [&](std::int64_t t) { return t >= 0 && ok[static_cast<std::size_t>(t)]; };
    std::vector<std::int64_t> out;
    for (auto x : gaps(gens)) {
        bool all = true;
        for (std::int64_t s = 1; s <= 2 * b && all; ++s)
            if (in(s) && !in(x + s)) all = false;
        if (all) out.push_back(x);
    }
    if (out.empty()) out.push_back(-1);
    return out;
}

inline bool symmetric(const Gens& gens)
{
    auto f = frobenius(gens);
    for (std::int64_t z = 0; z <= f; ++z)
        if (is_member(gens, z) == is_member(gens, f - z)) return false;
    return true;
}

inline std::vector<std::int64_t> fundamental_gaps(const Gens& gens)
{
    std::vector<std::int64_t> out;
    for (auto x : gaps(gens))
        if (is_member(gens, 2 * x) && is_member(gens, 3 * x)) out.push_back(x);
    return out;
}

/// Least member in each residue class mod x, sorted.
inline std::vector<std::int64_t> apery(const Gens& gens, std::int64_t x)
{
    auto b = search_bound(gens) + x;
    auto ok = members(gens, b);
    std::vector<std::int64_t> out;
    for (std::int64_t r = 0; r < x; ++r)
        for (std::int64_t t = r; t <= b; t += x)
            if (ok[static_cast<std::size_t>(t)]) {
                out.push_back(t);
                break;
            }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Gens> factorizations(const Gens& gens, std::int64_t m)
{
    std::vector<Gens> out;
    Gens z(gens.size(), 0);
    std::function<void(std::size_t, std::int64_t)> go = [&](std::size_t i, std::int64_t rest) {
        if (i == gens.size()) {
            if (rest == 0) out.push_back(z);
            return;
        }
        for (z[i] = 0; z[i] * gens[i] <= rest; ++z[i]) go(i + 1, rest - z[i] * gens[i]);
        z[i] = 0;
    };
    go(0, m);
    return out;
}

inline std::vector<std::int64_t> lengths(const Gens& gens, std::int64_t m)
{
    std::set<std::int64_t> ls;
    for (const auto& z : factorizations(gens, m)) ls.insert(std::accumulate(z.begin(), z.end(), std::int64_t{0}));
    return {ls.begin(), ls.end()};
}

inline std::set<std::int64_t> delta(const Gens& gens, std::int64_t m)
{
    auto l = lengths(gens, m);
    std::set<std::int64_t> out;
    for (std::size_t i = 1; i < l.size(); ++i) out.insert(l[i] - l[i - 1]);
    return out;
}

/// Betti number beta_{1, lambda}: components of the graph whose vertices are
/// the generators dividing lambda, joined when their sum divides lambda,
/// minus one.
inline std::int64_t graded_beta1(const Gens& gens, std::int64_t lambda)
{
    const std::size_t k = gens.size();
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::vector<bool> vertex(k);
    for (std::size_t i = 0; i < k; ++i) vertex[i] = is_member(gens, lambda - gens[i]);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (vertex[i] && vertex[j] && is_member(gens, lambda - gens[i] - gens[j])) parent[find(i)] = find(j);
    std::int64_t comps = 0;
    for (std::size_t i = 0; i < k; ++i)
        if (vertex[i] && find(i) == i) ++comps;
    return comps == 0 ? 0 : comps - 1;
}

/// Sum of graded_beta1 over [0, upto].
inline std::int64_t beta1(const Gens& gens, std::int64_t upto)
{
    std::int64_t total = 0;
    for (std::int64_t l = 0; l <= upto; ++l)
        if (is_member(gens, l)) total += graded_beta1(gens, l);
    return total;
}

/// Reduced homology over GF(2) of the complex given as bitmask faces, by
/// Gaussian elimination on bitset rows. dims[j] = dim H~_{j-1}.
inline std::vector<std::int64_t> reduced_homology_gf2(const std::vector<std::uint32_t>& faces)
{
    int top = -1;
    for (auto f : faces) top = std::max(top, std::popcount(f) - 1);
    auto of_dim = [&](int d) {
        std::vector<std::uint32_t> out;
        for (auto f : faces)
            if (std::popcount(f) - 1 == d) out.push_back(f);
        return out;
    };
    auto rank = [&](int d) -> std::int64_t {
        // boundary from d-faces to (d-1)-faces
        auto rows = of_dim(d), cols = of_dim(d - 1);
        std::vector<std::vector<bool>> m;
        for (auto r : rows) {
            std::vector<bool> v(cols.size());
            for (std::size_t c = 0; c < cols.size(); ++c) v[c] = (cols[c] & r) == cols[c];
            m.push_back(v);
        }
        std::int64_t rk = 0;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            std::size_t piv = static_cast<std::size_t>(rk);
            while (piv < m.size() && !m[piv][c]) ++piv;
            if (piv == m.size()) continue;
            std::swap(m[piv], m[static_cast<std::size_t>(rk)]);
            for (std::size_t r = 0; r < m.size(); ++r)
                if (r != static_cast<std::size_t>(rk) && m[r][c])
                    for (std::size_t j = 0; j < cols.size(); ++j) m[r][j] = m[r][j] != m[static_cast<std::size_t>(rk)][j];
            ++rk;
        }
        return rk;
    };
    std::vector<std::int64_t> dims;
    for (int d = -1; d <= top; ++d) {
        auto count = static_cast<std::int64_t>(of_dim(d).size());
        dims.push_back(count - (d >= 0 ? rank(d) : 0) - rank(d + 1));
    }
    return dims;
}

} // namespace oracle

#endif
