#ifndef EQPSG_FACTORIZATION_HPP
#define EQPSG_FACTORIZATION_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"
#include "numerical_semigroup.hpp"

namespace eqpsg {

/// Coefficients z_i with sum z_i * gens[i] equal to the factored element.
using Factorization = std::vector<std::int64_t>;

inline constexpr std::size_t default_factorization_cap = 10'000'000;

namespace detail {

inline void enumerate_factorizations(const std::vector<std::int64_t>& gens, std::size_t i, std::int64_t rest,
                                     Factorization& current, std::vector<Factorization>& out, std::size_t cap)
{
    if (i == 0) {
        if (rest % gens[0] != 0) return;
        current[0] = rest / gens[0];
        if (out.size() >= cap)
            throw resource_limit("more than " + std::to_string(cap) + " factorizations");
        out.push_back(current);
        return;
    }
    for (std::int64_t z = 0; z * gens[i] <= rest; ++z) {
        current[i] = z;
        enumerate_factorizations(gens, i - 1, rest - z * gens[i], current, out, cap);
    }
    current[i] = 0;
}

} // namespace detail

/// Every factorization of m over the view's (sorted) generators, ordered
/// colexicographically: last coordinate ascending, ties broken by the
/// preceding coordinates. Empty when m is not in S.
inline std::vector<Factorization> factorizations(const SemigroupView& view, std::int64_t m,
                                                 std::size_t cap = default_factorization_cap)
{
    std::vector<Factorization> out;
    if (m < 0 || !view.contains(m)) return out;
    const auto& gens = view.generators();
    Factorization current(gens.size(), 0);
    detail::enumerate_factorizations(gens, gens.size() - 1, m, current, out, cap);
    std::sort(out.begin(), out.end(), [](const Factorization& a, const Factorization& b) {
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return out;
}

namespace detail {

inline constexpr std::uint32_t unreachable = std::numeric_limits<std::uint32_t>::max();

/// Distinct positive differences g_i - g_1 of the sorted generators.
inline std::vector<std::int64_t> shifted_differences(const std::vector<std::int64_t>& gens)
{
    std::vector<std::int64_t> ds;
    for (auto g : gens)
        if (g > gens.front()) ds.push_back(g - gens.front());
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    return ds;
}

/// Minimal factorization length in the semigroup generated by `ds`,
/// extended on demand.
class MinLengthTable {
public:
    explicit MinLengthTable(std::vector<std::int64_t> ds) : ds_(std::move(ds)) { table_.push_back(0); }

    void ensure(std::int64_t upto)
    {
        if (upto < static_cast<std::int64_t>(table_.size())) return;
        std::size_t old = table_.size();
        table_.resize(static_cast<std::size_t>(upto) + 1, unreachable);
        for (std::size_t c = old; c < table_.size(); ++c) {
            std::uint32_t best = unreachable;
            for (auto d : ds_) {
                if (static_cast<std::int64_t>(c) < d) break;
                std::uint32_t prev = table_[c - static_cast<std::size_t>(d)];
                if (prev != unreachable && prev + 1 < best) best = prev + 1;
            }
            table_[c] = best;
        }
    }

    std::uint32_t operator[](std::int64_t c) const { return table_[static_cast<std::size_t>(c)]; }
    std::int64_t size() const { return static_cast<std::int64_t>(table_.size()); }

private:
    std::vector<std::int64_t> ds_;
    std::vector<std::uint32_t> table_;
};

} // namespace detail

/// Sorted distinct factorization lengths of m; empty when m is not in S.
///
/// Writing a factorization as z_1 copies of g_1 plus a part of weight w and
/// size s over the larger generators, its length is (m - c) / g_1 with
/// c = w - g_1 s a member of D = <g_i - g_1>. The length (m - c) / g_1 occurs
/// iff c is congruent to m mod g_1 and c + g_1 * minlen_D(c) <= m, so the whole
/// length set comes from one table of minimal lengths in D.
inline std::vector<std::int64_t> length_set(const SemigroupView& view, std::int64_t m)
{
    if (m < 0 || !view.contains(m)) return {};
    const auto& gens = view.generators();
    const std::int64_t g1 = gens.front();
    detail::MinLengthTable minlen(detail::shifted_differences(gens));
    minlen.ensure(m);
    std::vector<std::int64_t> lengths;
    for (std::int64_t c = mod_floor(m, g1); c <= m; c += g1) {
        std::uint32_t s = minlen[c];
        if (s == detail::unreachable) continue;
        if (c + g1 * static_cast<std::int64_t>(s) <= m) lengths.push_back((m - c) / g1);
    }
    std::sort(lengths.begin(), lengths.end());
    return lengths;
}

inline std::vector<std::int64_t> successive_differences(const std::vector<std::int64_t>& sorted)
{
    std::set<std::int64_t> diffs;
    for (std::size_t i = 1; i < sorted.size(); ++i) diffs.insert(sorted[i] - sorted[i - 1]);
    return {diffs.begin(), diffs.end()};
}

/// Delta(m): the distinct gaps between consecutive lengths of m.
inline std::vector<std::int64_t> delta_of_element(const SemigroupView& view, std::int64_t m)
{
    return successive_differences(length_set(view, m));
}

struct DeltaSetResult {
    std::vector<std::int64_t> values;
    /// For scans: whether the bound reached the default heuristic bound.
    /// For the certified computation: always true.
    bool complete = false;
    /// Largest element examined.
    std::int64_t bound = 0;
};

/// Default scan bound 2 k a_k^2.
inline std::int64_t default_delta_scan_bound(const SemigroupView& view)
{
    auto k = static_cast<std::int64_t>(view.embedding_size());
    return 2 * k * view.max_generator() * view.max_generator();
}

/// Union of Delta(m) over m in S with m <= scan_bound. Length sets are built
/// incrementally, L(m) = union over i of (L(m - g_i) + 1), in a ring buffer
/// of the last max(gens) + 1 elements.
inline DeltaSetResult delta_of_semigroup(const SemigroupView& view, std::int64_t scan_bound)
{
    if (!view.is_numerical()) throw not_numerical(view.gcd());
    const auto& gens = view.generators();
    const std::int64_t ring = view.max_generator() + 1;
    std::vector<std::vector<std::int64_t>> lengths(static_cast<std::size_t>(ring));
    std::set<std::int64_t> deltas;
    std::vector<std::int64_t> merged;
    for (std::int64_t m = 0; m <= scan_bound; ++m) {
        auto& slot = lengths[static_cast<std::size_t>(m % ring)];
        slot.clear();
        if (m == 0) {
            slot.push_back(0);
            continue;
        }
        for (auto g : gens) {
            if (g > m) break;
            const auto& prev = lengths[static_cast<std::size_t>((m - g) % ring)];
            if (prev.empty()) continue;
            merged.clear();
            std::size_t a = 0, b = 0;
            while (a < slot.size() || b < prev.size()) {
                std::int64_t next;
                if (b == prev.size() || (a < slot.size() && slot[a] < prev[b] + 1)) next = slot[a++];
                else if (a == slot.size() || prev[b] + 1 < slot[a]) next = prev[b++] + 1;
                else {
                    next = slot[a++];
                    ++b;
                }
                merged.push_back(next);
            }
            slot.swap(merged);
        }
        for (std::size_t i = 1; i < slot.size(); ++i) deltas.insert(slot[i] - slot[i - 1]);
    }
    return {{deltas.begin(), deltas.end()}, scan_bound >= default_delta_scan_bound(view), scan_bound};
}

/// Delta(S) computed exactly, with a proof of completeness built in.
///
/// With g_1 the multiplicity and D = <g_i - g_1>, the lengths of m are
/// {(m - c) / g_1 : c in E(m)} where E(m) = {c in D : c = m mod g_1,
/// h(c) <= m} and h(c) = c + g_1 * minlen_D(c). Within a residue class r the
/// sets E(m) grow as m passes the thresholds h(c), so Delta(S) is the set of
/// gaps that appear next to some c at the moment it enters E, divided by
/// g_1. Past the point c0 where minlen_D(c + d_k) = minlen_D(c) + 1 holds for
/// good, the whole picture is invariant under c -> c + T, h -> h + T g_k / d_k
/// with T = lcm(g_1, d_k); entries beyond c0 + T + G (G bounds how far a
/// threshold can lag behind the linear trend, plus one spacing of D_r) only
/// reproduce earlier gaps. The thresholds are replayed backwards as deletions
/// from a linked list, which makes each insertion O(1).
inline DeltaSetResult delta_set(const SemigroupView& view)
{
    if (!view.is_numerical()) throw not_numerical(view.gcd());
    const auto& gens = view.generators();
    const std::int64_t g1 = gens.front();
    const std::int64_t gk = gens.back();
    auto ds = detail::shifted_differences(gens);
    if (ds.empty()) return {{}, true, 0};

    const std::int64_t dk = ds.back();
    std::int64_t delta_gcd = 0;
    for (auto d : ds) delta_gcd = std::gcd(delta_gcd, d);
    std::vector<std::int64_t> reduced;
    for (auto d : ds) reduced.push_back(d / delta_gcd);
    auto minima = residue_minima(reduced, reduced.front());
    const std::int64_t conductor =
        delta_gcd * (*std::max_element(minima.begin(), minima.end()) - reduced.front() + 1);

    detail::MinLengthTable minlen(ds);
    auto shifted_ok = [&](std::int64_t c) {
        std::uint32_t a = minlen[c], b = minlen[c + dk];
        return a == detail::unreachable ? b == detail::unreachable : b == a + 1;
    };

    // smallest c0 >= conductor with a full window [c0, c0 + dk) of shift identities
    std::int64_t c0 = std::max<std::int64_t>(conductor, 0);
    std::int64_t run = 0;
    std::int64_t limit = c0 + 4 * dk + 64;
    minlen.ensure(limit + dk);
    for (std::int64_t c = c0;; ++c) {
        if (c + dk >= minlen.size()) {
            limit = 2 * limit;
            minlen.ensure(limit + dk);
        }
        if (shifted_ok(c)) {
            if (++run == dk) {
                c0 = c - dk + 1;
                break;
            }
        } else {
            run = 0;
        }
    }

    std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
    for (std::int64_t c = c0; c < c0 + dk; ++c) {
        if (minlen[c] == detail::unreachable) continue;
        std::int64_t v = dk * static_cast<std::int64_t>(minlen[c]) - c;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const std::int64_t lag = ceil_div(g1 * (hi - lo), gk);
    const std::int64_t period = std::lcm(g1, dk);
    const std::int64_t spacing = std::lcm(g1, delta_gcd);
    const std::int64_t c1 = c0 + period + lag + spacing;

    minlen.ensure(c1);
    std::int64_t h_max = 0;
    for (std::int64_t c = 0; c < c1; ++c)
        if (minlen[c] != detail::unreachable) h_max = std::max(h_max, c + g1 * static_cast<std::int64_t>(minlen[c]));
    const std::int64_t c2 = h_max * dk / gk;
    minlen.ensure(c2);

    std::set<std::int64_t> deltas;
    std::vector<std::int64_t> cs, hs;
    std::vector<std::int32_t> prev, next, order;
    for (std::int64_t r = 0; r < g1; ++r) {
        cs.clear();
        hs.clear();
        for (std::int64_t c = r; c <= c2; c += g1) {
            std::uint32_t s = minlen[c];
            if (s == detail::unreachable) continue;
            std::int64_t h = c + g1 * static_cast<std::int64_t>(s);
            if (h > h_max) continue;
            cs.push_back(c);
            hs.push_back(h);
        }
        const auto count = static_cast<std::int32_t>(cs.size());
        if (count < 2) continue;
        prev.resize(cs.size());
        next.resize(cs.size());
        order.resize(cs.size());
        for (std::int32_t i = 0; i < count; ++i) {
            prev[static_cast<std::size_t>(i)] = i - 1;
            next[static_cast<std::size_t>(i)] = i + 1 < count ? i + 1 : -1;
            order[static_cast<std::size_t>(i)] = i;
        }
        std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
            return hs[static_cast<std::size_t>(a)] > hs[static_cast<std::size_t>(b)];
        });
        std::size_t g = 0;
        while (g < order.size()) {
            std::size_t end = g;
            const std::int64_t h = hs[static_cast<std::size_t>(order[g])];
            while (end < order.size() && hs[static_cast<std::size_t>(order[end])] == h) ++end;
            for (std::size_t j = g; j < end; ++j) {
                auto i = static_cast<std::size_t>(order[j]);
                if (prev[i] >= 0) deltas.insert((cs[i] - cs[static_cast<std::size_t>(prev[i])]) / g1);
                if (next[i] >= 0) deltas.insert((cs[static_cast<std::size_t>(next[i])] - cs[i]) / g1);
            }
            for (std::size_t j = g; j < end; ++j) {
                auto i = static_cast<std::size_t>(order[j]);
                if (prev[i] >= 0) next[static_cast<std::size_t>(prev[i])] = next[i];
                if (next[i] >= 0) prev[static_cast<std::size_t>(next[i])] = prev[i];
            }
            g = end;
        }
    }
    return {{deltas.begin(), deltas.end()}, true, h_max};
}

} // namespace eqpsg

#endif // EQPSG_FACTORIZATION_HPP
