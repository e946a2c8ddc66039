#ifndef EQPSG_SIMPLICIAL_HPP
#define EQPSG_SIMPLICIAL_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"

namespace eqpsg {

/// Coefficient field for homology: the rationals, or GF(p).
class FieldSpec {
public:
    static FieldSpec rationals() { return FieldSpec(0); }
    static FieldSpec prime(std::int64_t p)
    {
        if (!is_prime(p)) throw error(std::to_string(p) + " is not prime");
        if (p > (std::int64_t{1} << 31)) throw error("prime fields are limited to p < 2^31");
        return FieldSpec(p);
    }

    /// "q", "f2", "f101".
    static FieldSpec parse(const std::string& s)
    {
        if (s == "q" || s == "Q") return rationals();
        if (s.size() > 1 && (s[0] == 'f' || s[0] == 'F')) {
            try {
                return prime(std::stoll(s.substr(1)));
            } catch (const std::logic_error&) {
            }
        }
        throw usage_error("bad field '" + s + "' (expected q, f2, f<p>)");
    }

    bool is_rationals() const noexcept { return p_ == 0; }
    std::int64_t characteristic() const noexcept { return p_; }
    std::string str() const { return p_ == 0 ? "q" : "f" + std::to_string(p_); }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    explicit FieldSpec(std::int64_t p) : p_(p) {}

    static bool is_prime(std::int64_t p)
    {
        if (p < 2) return false;
        for (std::int64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

    std::int64_t p_;
};

/// Dense integer matrix, row-major.
struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::int64_t> data;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
    std::int64_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    std::int64_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

namespace detail {

/// Fraction-free (Bareiss) elimination; exact rank over Q.
inline std::size_t rank_rationals(const IntMatrix& m)
{
    std::vector<BigInt> a(m.data.begin(), m.data.end());
    const std::size_t rows = m.rows, cols = m.cols;
    auto at = [&](std::size_t r, std::size_t c) -> BigInt& { return a[r * cols + c]; };
    BigInt prev_pivot = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && at(pivot, c) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(at(pivot, j), at(rank, j));
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t j = c + 1; j < cols; ++j)
                at(r, j) = (at(rank, c) * at(r, j) - at(r, c) * at(rank, j)) / prev_pivot;
            at(r, c) = 0;
        }
        prev_pivot = at(rank, c);
        ++rank;
    }
    return rank;
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t p)
{
    std::int64_t result = 1, base = a % p, e = p - 2;
    while (e > 0) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result;
}

inline std::size_t rank_mod_p(const IntMatrix& m, std::int64_t p)
{
    std::vector<std::int64_t> a(m.data.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = mod_floor(m.data[i], p);
    const std::size_t rows = m.rows, cols = m.cols;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[pivot * cols + j], a[rank * cols + j]);
        std::int64_t inv = mod_inverse(a[rank * cols + c], p);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            std::int64_t f = a[r * cols + c] * inv % p;
            if (f == 0) continue;
            for (std::size_t j = c; j < cols; ++j)
                a[r * cols + j] = mod_floor(a[r * cols + j] - f * a[rank * cols + j], p);
        }
        ++rank;
    }
    return rank;
}

} // namespace detail

inline std::size_t rank(const IntMatrix& m, const FieldSpec& field)
{
    if (m.rows == 0 || m.cols == 0) return 0;
    return field.is_rationals() ? detail::rank_rationals(m) : detail::rank_mod_p(m, field.characteristic());
}

/// Face bitmask: bit v set iff vertex v (0-based) belongs to the face.
using Face = std::uint32_t;

inline int face_dim(Face f) { return std::popcount(f) - 1; }

/// Lexicographic order on the sorted vertex lists of two faces of equal size.
inline bool face_lex_less(Face a, Face b)
{
    while (a && b) {
        int va = std::countr_zero(a), vb = std::countr_zero(b);
        if (va != vb) return va < vb;
        a &= a - 1;
        b &= b - 1;
    }
    return false;
}

/// Downward-closed family of subsets of {0, ..., k-1}.
class SimplicialComplex {
public:
    /// Throws unless `faces` is closed under taking subsets.
    SimplicialComplex(int vertex_count, std::vector<Face> faces) : k_(vertex_count)
    {
        if (k_ < 0 || k_ > 30) throw error("vertex count must be in [0, 30]");
        std::sort(faces.begin(), faces.end());
        faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
        for (Face f : faces)
            if (k_ < 32 && (f >> k_) != 0) throw error("face uses a vertex outside the vertex set");
        sorted_ = faces;
        faces_ = std::move(faces);
        for (Face f : faces_) {
            for (Face rest = f; rest; rest &= rest - 1) {
                Face sub = f & ~(rest & -rest);
                if (!contains(sub)) throw error("face set is not downward closed");
            }
        }
        if (!faces_.empty() && !contains(0)) throw error("face set is not downward closed");
        std::sort(faces_.begin(), faces_.end(), [](Face a, Face b) {
            int da = face_dim(a), db = face_dim(b);
            return da != db ? da < db : face_lex_less(a, b);
        });
    }

    /// Closure of the given faces under subsets.
    static SimplicialComplex generated_by(int vertex_count, const std::vector<Face>& maximal)
    {
        std::vector<Face> all;
        for (Face f : maximal)
            for (Face sub = f;; sub = (sub - 1) & f) {
                all.push_back(sub);
                if (sub == 0) break;
            }
        return SimplicialComplex(vertex_count, std::move(all));
    }

    static SimplicialComplex full_simplex(int vertex_count)
    {
        std::vector<Face> all;
        for (Face f = 0; f < (Face{1} << vertex_count); ++f) all.push_back(f);
        return SimplicialComplex(vertex_count, std::move(all));
    }

    int vertex_count() const noexcept { return k_; }
    /// Faces ordered by dimension, then lexicographically.
    const std::vector<Face>& faces() const noexcept { return faces_; }
    bool is_void() const noexcept { return faces_.empty(); }

    bool contains(Face f) const { return std::binary_search(sorted_.begin(), sorted_.end(), f); }

    int dimension() const { return faces_.empty() ? -2 : face_dim(faces_.back()); }

    /// Faces of dimension d (d = -1 is the empty face).
    std::vector<Face> faces_of_dim(int d) const
    {
        std::vector<Face> out;
        for (Face f : faces_)
            if (face_dim(f) == d) out.push_back(f);
        return out;
    }

    /// Boundary map from d-faces to (d-1)-faces; the coefficient for removing
    /// the vertex at position j of the sorted vertex list is (-1)^j. For
    /// d = 0 this is the augmentation onto the empty face.
    IntMatrix boundary(int d) const
    {
        auto cols = faces_of_dim(d);
        auto rows = faces_of_dim(d - 1);
        IntMatrix m(rows.size(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            int position = 0;
            for (Face rest = cols[c]; rest; rest &= rest - 1, ++position) {
                Face sub = cols[c] & ~(rest & -rest);
                auto it = std::lower_bound(rows.begin(), rows.end(), sub, face_lex_less);
                m.at(static_cast<std::size_t>(it - rows.begin()), c) = position % 2 == 0 ? 1 : -1;
            }
        }
        return m;
    }

    /// Reduced Euler characteristic, sum over d >= -1 of (-1)^d f_d.
    std::int64_t reduced_euler_characteristic() const
    {
        std::int64_t chi = 0;
        for (Face f : faces_) chi += (face_dim(f) % 2 == 0) ? 1 : -1;
        return chi;
    }

private:
    int k_;
    std::vector<Face> faces_;
    std::vector<Face> sorted_;
};

/// Dimensions of reduced homology groups, H~_d for d >= -1.
class HomologyDims {
public:
    HomologyDims() = default;
    explicit HomologyDims(std::vector<std::int64_t> from_minus_one) : dims_(std::move(from_minus_one)) {}

    std::int64_t operator[](int d) const
    {
        auto idx = static_cast<std::size_t>(d + 1);
        return d >= -1 && idx < dims_.size() ? dims_[idx] : 0;
    }
    /// dims()[j] = dim H~_{j-1}.
    const std::vector<std::int64_t>& dims() const noexcept { return dims_; }

    friend bool operator==(const HomologyDims&, const HomologyDims&) = default;

private:
    std::vector<std::int64_t> dims_;
};

/// dim H~_d = nullity(boundary_d) - rank(boundary_{d+1}), with the
/// augmentation included so that H~_0 counts components minus one.
inline HomologyDims reduced_homology(const SimplicialComplex& c, const FieldSpec& field)
{
    if (c.is_void()) throw empty_complex();
    const int top = c.dimension();
    std::vector<std::int64_t> ranks(static_cast<std::size_t>(top + 3), 0);
    for (int d = 0; d <= top; ++d) ranks[static_cast<std::size_t>(d + 1)] = static_cast<std::int64_t>(rank(c.boundary(d), field));
    std::vector<std::int64_t> dims;
    for (int d = -1; d <= top; ++d) {
        auto count = static_cast<std::int64_t>(c.faces_of_dim(d).size());
        std::int64_t rank_out = d >= 0 ? ranks[static_cast<std::size_t>(d + 1)] : 0;
        std::int64_t rank_in = ranks[static_cast<std::size_t>(d + 2)];
        dims.push_back(count - rank_out - rank_in);
    }
    return HomologyDims(std::move(dims));
}

} // namespace eqpsg

#endif // EQPSG_SIMPLICIAL_HPP
