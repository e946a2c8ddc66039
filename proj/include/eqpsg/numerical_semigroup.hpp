#ifndef EQPSG_NUMERICAL_SEMIGROUP_HPP
#define EQPSG_NUMERICAL_SEMIGROUP_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"

namespace eqpsg {

/// Least element of <gens> in every residue class mod x (shortest paths on
/// the residue graph). Unreachable classes hold -1.
inline std::vector<std::int64_t> residue_minima(std::span<const std::int64_t> gens, std::int64_t x)
{
    std::vector<std::int64_t> dist(static_cast<std::size_t>(x), -1);
    using Item = std::pair<std::int64_t, std::int64_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[0] = 0;
    queue.emplace(0, 0);
    while (!queue.empty()) {
        auto [w, r] = queue.top();
        queue.pop();
        if (w != dist[static_cast<std::size_t>(r)]) continue;
        for (auto g : gens) {
            std::int64_t next = (r + g) % x;
            std::int64_t nw = w + g;
            auto& slot = dist[static_cast<std::size_t>(next)];
            if (slot < 0 || nw < slot) {
                slot = nw;
                queue.emplace(nw, next);
            }
        }
    }
    return dist;
}

/// A semigroup <a_1, ..., a_k> of N at a fixed parameter value.
///
/// Membership is answered from the Apery set of the reduced semigroup
/// S/d (d = gcd) with respect to its multiplicity; a dense table over
/// [0, F + 1] backs the gap scans. Invariants that only make sense for
/// numerical semigroups throw not_numerical when d > 1.
class SemigroupView {
public:
    SemigroupView() = default;

    static SemigroupView build(std::vector<std::int64_t> gens)
    {
        if (gens.empty()) throw error("a semigroup needs at least one generator");
        for (auto g : gens)
            if (g < 1) throw error("generators must be positive");
        std::sort(gens.begin(), gens.end());

        SemigroupView v;
        v.gens_ = std::move(gens);
        v.gcd_ = 0;
        for (auto g : v.gens_) v.gcd_ = std::gcd(v.gcd_, g);
        for (auto g : v.gens_) v.reduced_.push_back(g / v.gcd_);
        v.reduced_mult_ = v.reduced_.front();
        v.reduced_apery_ = residue_minima(v.reduced_, v.reduced_mult_);
        v.reduced_frobenius_ = *std::max_element(v.reduced_apery_.begin(), v.reduced_apery_.end()) - v.reduced_mult_;
        v.sorted_apery_ = v.reduced_apery_;
        std::sort(v.sorted_apery_.begin(), v.sorted_apery_.end());
        v.table_.assign(static_cast<std::size_t>(v.reduced_frobenius_ + 2), false);
        for (std::int64_t t = 0; t <= v.reduced_frobenius_ + 1; ++t)
            v.table_[static_cast<std::size_t>(t)] = t >= v.reduced_apery_[static_cast<std::size_t>(t % v.reduced_mult_)];
        return v;
    }

    const std::vector<std::int64_t>& generators() const noexcept { return gens_; }
    std::size_t embedding_size() const noexcept { return gens_.size(); }
    std::int64_t gcd() const noexcept { return gcd_; }
    std::int64_t multiplicity() const noexcept { return gens_.front(); }
    std::int64_t max_generator() const noexcept { return gens_.back(); }
    bool is_numerical() const noexcept { return gcd_ == 1; }

    /// Generators of S/d.
    const std::vector<std::int64_t>& reduced_generators() const noexcept { return reduced_; }
    /// Frobenius number of S/d (-1 when S/d = N).
    std::int64_t reduced_frobenius() const noexcept { return reduced_frobenius_; }

    /// Upper end of the membership table: every t > B that is divisible by
    /// the gcd lies in S.
    std::int64_t membership_bound() const noexcept { return gcd_ * (reduced_frobenius_ + 1); }

    bool contains(std::int64_t t) const noexcept
    {
        if (t < 0 || t % gcd_ != 0) return false;
        std::int64_t u = t / gcd_;
        if (u > reduced_frobenius_) return true;
        return table_[static_cast<std::size_t>(u)];
    }

    std::int64_t frobenius() const
    {
        require_numerical();
        return reduced_frobenius_;
    }

    std::vector<std::int64_t> gaps() const
    {
        require_numerical();
        std::vector<std::int64_t> out;
        for (std::int64_t t = 1; t <= reduced_frobenius_; ++t)
            if (!table_[static_cast<std::size_t>(t)]) out.push_back(t);
        return out;
    }

    std::int64_t genus() const
    {
        require_numerical();
        std::int64_t count = 0;
        for (std::int64_t t = 1; t <= reduced_frobenius_; ++t)
            if (!table_[static_cast<std::size_t>(t)]) ++count;
        return count;
    }

    /// Ap(S, x) sorted; x must be a positive element of S.
    std::vector<std::int64_t> apery_set(std::int64_t x) const
    {
        require_numerical();
        if (x <= 0 || !contains(x)) throw not_member(std::to_string(x) + " is not a positive element of S");
        std::vector<std::int64_t> out;
        if (x == gens_.front()) out = reduced_apery_;
        else out = residue_minima(gens_, x);
        std::sort(out.begin(), out.end());
        return out;
    }

    /// i-th smallest element (1-based) of the Apery set with respect to the
    /// multiplicity.
    std::int64_t ith_apery_element(std::int64_t i) const
    {
        require_numerical();
        if (i < 1 || i > multiplicity())
            throw index_out_of_range("Apery index " + std::to_string(i) + " outside [1, "
                                     + std::to_string(multiplicity()) + "]");
        return sorted_apery_[static_cast<std::size_t>(i - 1)];
    }

    /// Gaps x with x + s in S for every nonzero s in S. It suffices to test
    /// s among the generators, since every nonzero element is some generator
    /// plus an element of S. PF(N) = {-1}.
    std::vector<std::int64_t> pseudo_frobenius() const
    {
        require_numerical();
        if (reduced_frobenius_ < 0) return {-1};
        std::vector<std::int64_t> out;
        for (std::int64_t x = 1; x <= reduced_frobenius_; ++x) {
            if (table_[static_cast<std::size_t>(x)]) continue;
            bool all = std::all_of(gens_.begin(), gens_.end(), [&](std::int64_t g) { return contains(x + g); });
            if (all) out.push_back(x);
        }
        return out;
    }

    std::int64_t type() const { return static_cast<std::int64_t>(pseudo_frobenius().size()); }

    bool is_symmetric() const
    {
        require_numerical();
        for (std::int64_t z = 0; z <= reduced_frobenius_; ++z)
            if (!table_[static_cast<std::size_t>(z)] && !contains(reduced_frobenius_ - z)) return false;
        return true;
    }

    bool is_pseudo_symmetric() const
    {
        require_numerical();
        std::int64_t f = reduced_frobenius_;
        if (f < 0 || f % 2 != 0) return false;
        for (std::int64_t x = 0; x <= f; ++x) {
            if (table_[static_cast<std::size_t>(x)]) continue;
            if (!contains(f - x) && 2 * x != f) return false;
        }
        return true;
    }

    /// N itself is not irreducible (it is not a proper numerical semigroup).
    bool is_irreducible() const
    {
        require_numerical();
        std::int64_t f = reduced_frobenius_;
        if (f < 0) return false;
        return f % 2 != 0 ? is_symmetric() : is_pseudo_symmetric();
    }

    /// Gaps x with 2x and 3x in S.
    std::vector<std::int64_t> fundamental_gaps() const
    {
        require_numerical();
        std::vector<std::int64_t> out;
        for (std::int64_t x = 1; x <= reduced_frobenius_; ++x)
            if (!table_[static_cast<std::size_t>(x)] && contains(2 * x) && contains(3 * x)) out.push_back(x);
        return out;
    }

private:
    void require_numerical() const
    {
        if (gcd_ != 1) throw not_numerical(gcd_);
    }

    std::vector<std::int64_t> gens_;
    std::int64_t gcd_ = 1;
    std::vector<std::int64_t> reduced_;
    std::int64_t reduced_mult_ = 1;
    std::vector<std::int64_t> reduced_apery_;
    std::int64_t reduced_frobenius_ = -1;
    std::vector<bool> table_;
    std::vector<std::int64_t> sorted_apery_;
};

} // namespace eqpsg

#endif // EQPSG_NUMERICAL_SEMIGROUP_HPP
