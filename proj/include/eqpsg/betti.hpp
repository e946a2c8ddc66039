#ifndef EQPSG_BETTI_HPP
#define EQPSG_BETTI_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "factorization.hpp"
#include "family.hpp"
#include "numerical_semigroup.hpp"
#include "simplicial.hpp"

namespace eqpsg {

namespace detail {

struct VectorHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept
    {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (auto x : v) h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

inline void check_affine_generators(const std::vector<GeneratorVector>& gens)
{
    if (gens.empty()) throw error("a semigroup needs at least one generator");
    const std::size_t m = gens.front().size();
    for (const auto& g : gens) {
        if (g.size() != m) throw error("generators have differing dimensions");
        bool nonzero = false;
        for (auto x : g) {
            if (x < 0) throw error("generator coordinates must be nonnegative");
            nonzero = nonzero || x > 0;
        }
        if (!nonzero) throw error("generators must be nonzero");
    }
}

inline std::int64_t l1(const GeneratorVector& v) { return std::accumulate(v.begin(), v.end(), std::int64_t{0}); }

} // namespace detail

/// Membership in an affine semigroup of N^m by depth-first search over
/// lambda - g_i, memoized on the remainder. Each step lowers |lambda|_1 by at
/// least one, so the search is bounded by the box below lambda.
class AffineMembership {
public:
    explicit AffineMembership(std::vector<GeneratorVector> gens) : gens_(std::move(gens))
    {
        detail::check_affine_generators(gens_);
    }

    const std::vector<GeneratorVector>& generators() const noexcept { return gens_; }

    bool contains(const GeneratorVector& lambda)
    {
        for (auto x : lambda)
            if (x < 0) return false;
        if (auto it = memo_.find(lambda); it != memo_.end()) return it->second;

        std::vector<std::pair<GeneratorVector, std::size_t>> stack;
        stack.emplace_back(lambda, 0);
        bool found = false;
        while (!stack.empty()) {
            auto& [cur, next_gen] = stack.back();
            if (detail::l1(cur) == 0) {
                memo_[cur] = true;
                stack.pop_back();
                found = true;
                continue;
            }
            if (found) {
                memo_[cur] = true;
                stack.pop_back();
                continue;
            }
            if (next_gen == gens_.size()) {
                memo_[cur] = false;
                stack.pop_back();
                continue;
            }
            GeneratorVector child = cur;
            bool ok = true;
            for (std::size_t j = 0; j < child.size(); ++j) {
                child[j] -= gens_[next_gen][j];
                ok = ok && child[j] >= 0;
            }
            ++next_gen;
            if (!ok) continue;
            if (auto it = memo_.find(child); it != memo_.end()) {
                if (it->second) found = true;
                continue;
            }
            stack.emplace_back(std::move(child), 0);
        }
        return memo_.at(lambda);
    }

private:
    std::vector<GeneratorVector> gens_;
    std::unordered_map<GeneratorVector, bool, detail::VectorHash> memo_;
};

/// One-shot affine membership query.
inline bool affine_member(const std::vector<GeneratorVector>& gens, const GeneratorVector& lambda)
{
    AffineMembership oracle(gens);
    return oracle.contains(lambda);
}

/// Dense membership table over the box [0, cap]^m, filled in increasing
/// order so it can be shared read-only afterwards.
class BoxMembership {
public:
    BoxMembership(std::vector<GeneratorVector> gens, std::int64_t cap) : gens_(std::move(gens)), cap_(cap)
    {
        detail::check_affine_generators(gens_);
        m_ = gens_.front().size();
        std::size_t total = 1;
        for (std::size_t j = 0; j < m_; ++j) {
            total *= static_cast<std::size_t>(cap_ + 1);
            if (total > (std::size_t{1} << 32)) throw resource_limit("degree box is too large");
        }
        table_.assign(total, false);
        GeneratorVector lambda(m_, 0);
        for (std::size_t idx = 0; idx < total; ++idx) {
            decode(idx, lambda);
            bool in = detail::l1(lambda) == 0;
            for (std::size_t i = 0; i < gens_.size() && !in; ++i) {
                GeneratorVector prev = lambda;
                bool ok = true;
                for (std::size_t j = 0; j < m_; ++j) {
                    prev[j] -= gens_[i][j];
                    ok = ok && prev[j] >= 0;
                }
                if (ok) in = table_[encode(prev)];
            }
            table_[idx] = in;
        }
    }

    std::int64_t cap() const noexcept { return cap_; }
    std::size_t size() const noexcept { return table_.size(); }
    std::size_t dim() const noexcept { return m_; }

    bool contains(const GeneratorVector& lambda) const
    {
        for (auto x : lambda)
            if (x < 0 || x > cap_) return false;
        return table_[encode(lambda)];
    }

    void decode(std::size_t idx, GeneratorVector& out) const
    {
        for (std::size_t j = 0; j < m_; ++j) {
            out[j] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(cap_ + 1));
            idx /= static_cast<std::size_t>(cap_ + 1);
        }
    }

    std::size_t encode(const GeneratorVector& v) const
    {
        std::size_t idx = 0;
        for (std::size_t j = m_; j-- > 0;) idx = idx * static_cast<std::size_t>(cap_ + 1) + static_cast<std::size_t>(v[j]);
        return idx;
    }

private:
    std::vector<GeneratorVector> gens_;
    std::int64_t cap_;
    std::size_t m_ = 0;
    std::vector<bool> table_;
};

namespace detail {

/// Faces T (of size <= max_size) with member(lambda - sum_{i in T} g_i).
template <class Member>
std::vector<Face> divisor_faces(std::size_t k, std::size_t max_size, Member&& member_after)
{
    std::vector<Face> faces;
    for (Face t = 0; t < (Face{1} << k); ++t) {
        if (static_cast<std::size_t>(std::popcount(t)) > max_size) continue;
        if (member_after(t)) faces.push_back(t);
    }
    return faces;
}

inline std::vector<std::int64_t> subset_sums(const std::vector<std::int64_t>& gens)
{
    std::vector<std::int64_t> sums(std::size_t{1} << gens.size(), 0);
    for (Face t = 1; t < sums.size(); ++t) {
        int low = std::countr_zero(t);
        sums[t] = sums[t & (t - 1)] + gens[static_cast<std::size_t>(low)];
    }
    return sums;
}

inline void check_vertex_count(std::size_t k)
{
    if (k > 20) throw resource_limit("squarefree divisor complexes are limited to 20 generators");
}

} // namespace detail

/// Squarefree divisor complex of lambda in S = <view's generators>: faces are
/// the T with lambda - sum_{i in T} g_i in S. Vertex i is the i-th smallest
/// generator.
inline SimplicialComplex sq_divisor_complex(const SemigroupView& view, std::int64_t lambda)
{
    if (!view.contains(lambda)) throw not_member(std::to_string(lambda) + " is not in S");
    const auto& gens = view.generators();
    detail::check_vertex_count(gens.size());
    auto sums = detail::subset_sums(gens);
    auto faces = detail::divisor_faces(gens.size(), gens.size(), [&](Face t) { return view.contains(lambda - sums[t]); });
    return SimplicialComplex(static_cast<int>(gens.size()), std::move(faces));
}

/// Affine version; vertex i is gens[i].
inline SimplicialComplex sq_divisor_complex(const std::vector<GeneratorVector>& gens, const GeneratorVector& lambda)
{
    detail::check_vertex_count(gens.size());
    AffineMembership oracle(gens);
    if (!oracle.contains(lambda)) throw not_member("lambda is not in S");
    auto faces = detail::divisor_faces(gens.size(), gens.size(), [&](Face t) {
        GeneratorVector rest = lambda;
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (t >> i & 1u)
                for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= gens[i][j];
        return oracle.contains(rest);
    });
    return SimplicialComplex(static_cast<int>(gens.size()), std::move(faces));
}

/// beta_{i, lambda} = dim H~_{i-1}(Delta(lambda)).
inline std::int64_t graded_betti(const SemigroupView& view, std::int64_t lambda, int i, const FieldSpec& field)
{
    if (i < 0) throw index_out_of_range("homological index must be >= 0");
    return reduced_homology(sq_divisor_complex(view, lambda), field)[i - 1];
}

inline std::int64_t graded_betti(const std::vector<GeneratorVector>& gens, const GeneratorVector& lambda, int i,
                                 const FieldSpec& field)
{
    if (i < 0) throw index_out_of_range("homological index must be >= 0");
    return reduced_homology(sq_divisor_complex(gens, lambda), field)[i - 1];
}

/// Graded Betti numbers (i, lambda) -> beta, nonzero entries only.
/// Nonzero graded Betti numbers; beta_{0,0} = 1 is always present.
class GradedBettiTable {
public:
    explicit GradedBettiTable(std::size_t dim = 1) { entries_[{0, GeneratorVector(dim, 0)}] = 1; }

    void add(int i, GeneratorVector lambda, std::int64_t beta)
    {
        if (beta == 0) return;
        entries_[{i, std::move(lambda)}] += beta;
    }

    const std::map<std::pair<int, GeneratorVector>, std::int64_t>& entries() const noexcept { return entries_; }

    std::int64_t coarse(int i) const
    {
        std::int64_t total = 0;
        for (const auto& [key, beta] : entries_)
            if (key.first == i) total += beta;
        return total;
    }

    /// One "lambda;i;beta" line per nonzero entry; vector degrees join
    /// coordinates with ','.
    std::string serialize() const
    {
        std::ostringstream os;
        for (const auto& [key, beta] : entries_) {
            for (std::size_t j = 0; j < key.second.size(); ++j) os << (j ? "," : "") << key.second[j];
            os << ';' << key.first << ';' << beta << '\n';
        }
        return os.str();
    }

private:
    std::map<std::pair<int, GeneratorVector>, std::int64_t> entries_;
};

struct CoarseBettiResult {
    std::int64_t value = 0;
    /// True when every degree that can contribute was enumerated.
    bool complete = false;
    /// Largest degree (m = 1) or box cap (m > 1) enumerated.
    std::int64_t degree_bound = 0;
};

namespace detail {

/// Homology of each distinct face set is computed once per run.
class HomologyMemo {
public:
    HomologyMemo(std::size_t k, FieldSpec field) : k_(k), field_(field) {}

    std::int64_t reduced(const std::vector<Face>& faces, int d)
    {
        if (k_ <= 6) {
            std::uint64_t key = 0;
            for (Face f : faces) key |= std::uint64_t{1} << f;
            auto it = small_.find(key);
            if (it == small_.end()) it = small_.emplace(key, compute(faces)).first;
            return it->second[d];
        }
        std::vector<std::uint64_t> key(((std::size_t{1} << k_) + 63) / 64, 0);
        for (Face f : faces) key[f / 64] |= std::uint64_t{1} << (f % 64);
        auto it = large_.find(key);
        if (it == large_.end()) it = large_.emplace(std::move(key), compute(faces)).first;
        return it->second[d];
    }

private:
    HomologyDims compute(const std::vector<Face>& faces) const
    {
        return reduced_homology(SimplicialComplex(static_cast<int>(k_), faces), field_);
    }

    std::size_t k_;
    FieldSpec field_;
    std::unordered_map<std::uint64_t, HomologyDims> small_;
    std::map<std::vector<std::uint64_t>, HomologyDims> large_;
};

} // namespace detail

/// Largest degree at which beta_{i, lambda} can be nonzero for m = 1: beyond
/// F + (i + 1) max(gens) every face of size <= i + 1 is present, so the
/// i-skeleton of Delta(lambda) is that of the full simplex and H~_{i-1}
/// vanishes. Computed on S/d when the gcd d exceeds 1.
inline std::int64_t betti_degree_cutoff(const SemigroupView& view, int i)
{
    return view.gcd() * (view.reduced_frobenius() + static_cast<std::int64_t>(i + 1) * view.reduced_generators().back());
}

/// Graded Betti numbers of K[S] in homological degree i over all lambda up to
/// the cutoff (m = 1, complete).
inline GradedBettiTable graded_betti_table(const SemigroupView& view, int i, const FieldSpec& field)
{
    if (i < 1) throw index_out_of_range("homological index must be >= 1");
    const auto& gens = view.generators();
    detail::check_vertex_count(gens.size());
    const std::size_t k = gens.size();
    const auto max_size = static_cast<std::size_t>(i + 1);
    auto sums = detail::subset_sums(gens);
    detail::HomologyMemo memo(k, field);
    GradedBettiTable table(1);
    std::vector<Face> faces;
    const std::int64_t cutoff = betti_degree_cutoff(view, i);
    for (std::int64_t lambda = 0; lambda <= cutoff; lambda += view.gcd()) {
        if (!view.contains(lambda)) continue;
        faces.clear();
        for (Face t = 0; t < sums.size(); ++t)
            if (static_cast<std::size_t>(std::popcount(t)) <= max_size && view.contains(lambda - sums[t]))
                faces.push_back(t);
        table.add(i, {lambda}, memo.reduced(faces, i - 1));
    }
    return table;
}

/// beta_i(K[S]) for m = 1 by complete enumeration of degrees.
inline CoarseBettiResult coarse_betti(const SemigroupView& view, int i, const FieldSpec& field)
{
    auto table = graded_betti_table(view, i, field);
    return {table.coarse(i), true, betti_degree_cutoff(view, i)};
}

/// Graded Betti numbers of an affine semigroup over the box [0, cap]^m.
inline GradedBettiTable graded_betti_table(const std::vector<GeneratorVector>& gens, int i, const FieldSpec& field,
                                           std::int64_t cap)
{
    if (i < 1) throw index_out_of_range("homological index must be >= 1");
    detail::check_vertex_count(gens.size());
    BoxMembership box(gens, cap);
    const std::size_t k = gens.size();
    const auto max_size = static_cast<std::size_t>(i + 1);
    detail::HomologyMemo memo(k, field);
    GradedBettiTable table(box.dim());
    GeneratorVector lambda(box.dim()), rest(box.dim());
    std::vector<Face> faces;
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        box.decode(idx, lambda);
        if (!box.contains(lambda)) continue;
        faces.clear();
        for (Face t = 0; t < (Face{1} << k); ++t) {
            if (static_cast<std::size_t>(std::popcount(t)) > max_size) continue;
            rest = lambda;
            for (std::size_t g = 0; g < k; ++g)
                if (t >> g & 1u)
                    for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= gens[g][j];
            if (box.contains(rest)) faces.push_back(t);
        }
        table.add(i, lambda, memo.reduced(faces, i - 1));
    }
    return table;
}

/// beta_i(K[S]) for generators in N^m. For m = 1 the enumeration is complete;
/// for m > 1 it is a lower bound over the box [0, cap]^m and `complete` is
/// false.
inline CoarseBettiResult coarse_betti(const std::vector<GeneratorVector>& gens, int i, const FieldSpec& field,
                                      std::optional<std::int64_t> degree_cap = std::nullopt)
{
    detail::check_affine_generators(gens);
    if (gens.front().size() == 1) {
        std::vector<std::int64_t> scalar;
        for (const auto& g : gens) scalar.push_back(g[0]);
        return coarse_betti(SemigroupView::build(scalar), i, field);
    }
    if (!degree_cap) throw missing_cap();
    auto table = graded_betti_table(gens, i, field, *degree_cap);
    return {table.coarse(i), false, *degree_cap};
}

/// Size of a minimal presentation, as beta_1 over Q.
inline std::int64_t minimal_presentation_size(const SemigroupView& view)
{
    return coarse_betti(view, 1, FieldSpec::rationals()).value;
}

/// Independent route to the minimal presentation size: for each degree, the
/// number of connected components of its factorization graph (factorizations
/// joined when they share a nonzero coordinate) minus one, summed.
inline std::int64_t presentation_size_by_factorizations(const SemigroupView& view,
                                                        std::size_t cap = default_factorization_cap)
{
    std::int64_t total = 0;
    const std::int64_t cutoff = betti_degree_cutoff(view, 1);
    for (std::int64_t lambda = 0; lambda <= cutoff; lambda += view.gcd()) {
        auto facts = factorizations(view, lambda, cap);
        if (facts.size() < 2) continue;
        std::vector<std::size_t> parent(facts.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        const std::size_t k = view.embedding_size();
        std::vector<std::optional<std::size_t>> owner(k);
        for (std::size_t f = 0; f < facts.size(); ++f)
            for (std::size_t j = 0; j < k; ++j) {
                if (facts[f][j] == 0) continue;
                if (owner[j]) parent[find(f)] = find(*owner[j]);
                else owner[j] = f;
            }
        std::int64_t components = 0;
        for (std::size_t f = 0; f < facts.size(); ++f)
            if (find(f) == f) ++components;
        total += components - 1;
    }
    return total;
}

} // namespace eqpsg

#endif // EQPSG_BETTI_HPP
