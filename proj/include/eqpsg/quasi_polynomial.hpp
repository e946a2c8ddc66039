#ifndef EQPSG_QUASI_POLYNOMIAL_HPP
#define EQPSG_QUASI_POLYNOMIAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"

namespace eqpsg {

/// f(n) = sum_j c_{n mod p, j} n^j for n >= onset.
class QuasiPolynomial {
public:
    QuasiPolynomial() = default;
    QuasiPolynomial(std::int64_t period, std::int64_t onset, std::vector<std::vector<Rational>> classes)
        : period_(period), onset_(onset), classes_(std::move(classes))
    {
        if (period_ < 1) throw error("period must be positive");
        if (onset_ < 0) throw error("onset must be nonnegative");
        if (classes_.size() != static_cast<std::size_t>(period_)) throw error("need one coefficient row per residue class");
        if (classes_.front().empty()) throw error("coefficient rows cannot be empty");
        for (const auto& row : classes_)
            if (row.size() != classes_.front().size()) throw error("coefficient rows differ in length");
    }

    std::int64_t period() const noexcept { return period_; }
    std::int64_t onset() const noexcept { return onset_; }
    /// Declared degree: coefficient rows have declared_degree() + 1 entries.
    int declared_degree() const noexcept { return static_cast<int>(classes_.front().size()) - 1; }
    const std::vector<std::vector<Rational>>& classes() const noexcept { return classes_; }

    Rational eval(std::int64_t n) const
    {
        if (n < onset_)
            throw below_onset("n = " + std::to_string(n) + " is below the onset " + std::to_string(onset_));
        const auto& row = classes_[static_cast<std::size_t>(mod_floor(n, period_))];
        Rational value = 0;
        const Rational x(n);
        for (auto it = row.rbegin(); it != row.rend(); ++it) value = value * x + *it;
        return value;
    }

    friend bool operator==(const QuasiPolynomial&, const QuasiPolynomial&) = default;

private:
    std::int64_t period_ = 1;
    std::int64_t onset_ = 0;
    std::vector<std::vector<Rational>> classes_{{Rational(0)}};
};

/// Highest j with some c_{r, j} != 0; -1 for the zero function.
inline int degree_of(const QuasiPolynomial& qp)
{
    for (int j = qp.declared_degree(); j >= 0; --j)
        for (const auto& row : qp.classes())
            if (row[static_cast<std::size_t>(j)] != 0) return j;
    return -1;
}

/// Integer samples over a contiguous window [lo, hi]; undefined points are
/// kept as nullopt.
class SampleSeries {
public:
    SampleSeries() = default;
    SampleSeries(std::int64_t lo, std::vector<std::optional<BigInt>> values) : lo_(lo), values_(std::move(values))
    {
        if (values_.empty()) throw error("a sample series needs at least one point");
    }

    template <class F>
    static SampleSeries generate(std::int64_t lo, std::int64_t hi, F&& f)
    {
        if (lo > hi) throw error("empty sample window");
        std::vector<std::optional<BigInt>> values;
        for (std::int64_t n = lo; n <= hi; ++n) values.push_back(f(n));
        return SampleSeries(lo, std::move(values));
    }

    std::int64_t lo() const noexcept { return lo_; }
    std::int64_t hi() const noexcept { return lo_ + static_cast<std::int64_t>(values_.size()) - 1; }
    const std::optional<BigInt>& at(std::int64_t n) const { return values_.at(static_cast<std::size_t>(n - lo_)); }

    std::vector<std::pair<std::int64_t, BigInt>> defined() const
    {
        std::vector<std::pair<std::int64_t, BigInt>> out;
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (values_[i]) out.emplace_back(lo_ + static_cast<std::int64_t>(i), *values_[i]);
        return out;
    }

    std::vector<std::int64_t> undefined() const
    {
        std::vector<std::int64_t> out;
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (!values_[i]) out.push_back(lo_ + static_cast<std::int64_t>(i));
        return out;
    }

private:
    std::int64_t lo_ = 0;
    std::vector<std::optional<BigInt>> values_;
};

struct FitOptions {
    std::int64_t p_max = 12;
    int d_max = 2;
    double holdout = 0.2;
};

namespace detail {

/// Coefficients (ascending) of the interpolating polynomial through the points.
inline std::vector<Rational> interpolate(const std::vector<std::pair<std::int64_t, BigInt>>& pts)
{
    const std::size_t m = pts.size();
    std::vector<Rational> result(m, Rational(0));
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<Rational> basis{Rational(1)};
        Rational denom = 1;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == j) continue;
            std::vector<Rational> next(basis.size() + 1, Rational(0));
            for (std::size_t t = 0; t < basis.size(); ++t) {
                next[t + 1] += basis[t];
                next[t] -= basis[t] * pts[i].first;
            }
            basis = std::move(next);
            denom *= Rational(pts[j].first - pts[i].first);
        }
        Rational scale = Rational(pts[j].second) / denom;
        for (std::size_t t = 0; t < m; ++t) result[t] += basis[t] * scale;
    }
    return result;
}

inline Rational horner(const std::vector<Rational>& c, std::int64_t n)
{
    Rational v = 0;
    const Rational x(n);
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

inline std::size_t holdout_count(std::size_t total, double fraction)
{
    if (fraction < 0 || fraction >= 1) throw usage_error("holdout fraction must lie in [0, 1)");
    return static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(total)));
}

} // namespace detail

/// Searches (p, d) in lexicographic order for the first quasi-polynomial that
/// reproduces the data exactly from some onset on. Each residue class is
/// interpolated through its last d + 1 training points; the fit must agree
/// with every holdout point and with at least one further training point in
/// every class. The onset is the smallest n after which all classes agree.
/// A class with no defined point in the window is unconstrained and gets the
/// zero row; the defined-set fit describes where values exist.
inline std::optional<QuasiPolynomial> fit(const SampleSeries& series, const FitOptions& options = {})
{
    if (options.p_max < 1 || options.d_max < 0) throw usage_error("p_max must be >= 1 and d_max >= 0");
    const auto points = series.defined();
    const std::size_t held = detail::holdout_count(points.size(), options.holdout);
    if (points.size() < held + 2) throw insufficient_data("too few defined points to fit anything");
    const std::size_t training = points.size() - held;

    for (std::int64_t p = 1; p <= options.p_max; ++p) {
        std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(p));
        for (std::size_t i = 0; i < points.size(); ++i)
            by_class[static_cast<std::size_t>(mod_floor(points[i].first, p))].push_back(i);

        for (int d = 0; d <= options.d_max; ++d) {
            const auto need = static_cast<std::size_t>(d + 2);
            std::vector<std::vector<Rational>> rows;
            std::int64_t onset = 0;
            bool ok = true;
            for (const auto& idx : by_class) {
                if (idx.empty()) {
                    rows.emplace_back(static_cast<std::size_t>(d + 1), Rational(0));
                    continue;
                }
                auto train_end = std::partition_point(idx.begin(), idx.end(), [&](std::size_t i) { return i < training; });
                auto train_count = static_cast<std::size_t>(train_end - idx.begin());
                if (train_count < need) {
                    ok = false;
                    break;
                }
                std::vector<std::pair<std::int64_t, BigInt>> nodes;
                for (auto it = train_end - (d + 1); it != train_end; ++it) nodes.push_back(points[*it]);
                auto coeffs = detail::interpolate(nodes);
                for (auto it = train_end; it != idx.end() && ok; ++it)
                    ok = detail::horner(coeffs, points[*it].first) == Rational(points[*it].second);
                if (!ok) break;
                std::size_t agree = static_cast<std::size_t>(d + 1);
                std::int64_t class_onset = series.lo();
                for (auto it = train_end - (d + 1); it != idx.begin();) {
                    --it;
                    if (detail::horner(coeffs, points[*it].first) != Rational(points[*it].second)) {
                        class_onset = points[*it].first + 1;
                        break;
                    }
                    ++agree;
                }
                if (agree < need) {
                    ok = false;
                    break;
                }
                onset = std::max(onset, class_onset);
                rows.push_back(std::move(coeffs));
            }
            if (ok) return QuasiPolynomial(p, std::max<std::int64_t>(onset, 0), std::move(rows));
        }
    }
    return std::nullopt;
}

/// Eventually periodic description of a boolean sequence; pattern[r] is the
/// value at every n >= onset with n = r (mod period).
struct PeriodicSet {
    std::int64_t period = 1;
    std::int64_t onset = 0;
    std::vector<bool> pattern;

    bool contains(std::int64_t n) const
    {
        if (n < onset) throw below_onset("n = " + std::to_string(n) + " is below the onset " + std::to_string(onset));
        return pattern[static_cast<std::size_t>(mod_floor(n, period))];
    }
};

/// Degree-0 fit of 0/1 data over the contiguous window of the map.
inline std::optional<PeriodicSet> eventually_periodic_set(const std::map<std::int64_t, bool>& flags,
                                                          std::int64_t p_max = 12, double holdout = 0.2)
{
    if (flags.empty()) throw insufficient_data("no flags to fit");
    const std::int64_t lo = flags.begin()->first;
    const std::int64_t hi = flags.rbegin()->first;
    std::vector<std::optional<BigInt>> values(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [n, flag] : flags) values[static_cast<std::size_t>(n - lo)] = BigInt(flag ? 1 : 0);
    auto qp = fit(SampleSeries(lo, std::move(values)), {p_max, 0, holdout});
    if (!qp) return std::nullopt;
    PeriodicSet out{qp->period(), qp->onset(), {}};
    for (const auto& row : qp->classes()) out.pattern.push_back(row[0] != 0);
    return out;
}

} // namespace eqpsg

#endif // EQPSG_QUASI_POLYNOMIAL_HPP
