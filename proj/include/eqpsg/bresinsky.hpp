#ifndef EQPSG_BRESINSKY_HPP
#define EQPSG_BRESINSKY_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "betti.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "numerical_semigroup.hpp"
#include "quasi_polynomial.hpp"

namespace eqpsg {

struct BresinskyGenerators {
    std::array<std::int64_t, 4> a{};
    /// 2 n^{d/2} - 1; a_1 and a_2 are multiples of it, a_3 and a_4 are 2 mod it.
    std::int64_t modulus = 0;
    /// 2 n^{d/2}, the number of disconnected degrees.
    std::int64_t count = 0;
};

inline BresinskyGenerators bresinsky_generators(int d, std::int64_t n)
{
    if (d < 2 || d % 2 != 0) throw odd_degree(d);
    if (n < 1) throw error("n must be >= 1");
    auto gens = instantiate_scalar(bresinsky_family(d), n);
    auto half = static_cast<std::int64_t>(eval_poly(PolynomialZ::monomial(1, static_cast<std::size_t>(d / 2)), n));
    return {{gens[0], gens[1], gens[2], gens[3]}, 2 * half - 1, 2 * half};
}

struct BresinskyDegree {
    std::int64_t mu = 0;
    std::int64_t degree = 0;
    std::size_t components = 0;
};

struct BresinskyReport {
    int d = 0;
    std::int64_t n = 0;
    BresinskyGenerators gens;
    std::vector<BresinskyDegree> degrees;
    /// 2 n^{d/2}.
    std::int64_t lower_bound = 0;
    /// Complete beta_1, when requested.
    std::optional<std::int64_t> beta1;
};

/// Checks every step of the disconnected-degree construction for one n and
/// throws verification_failure naming the first failing mu (and r, s).
inline BresinskyReport verify_bresinsky(int d, std::int64_t n, bool compute_beta1 = false)
{
    if (n < 2) throw error("verification needs n >= 2 (the modulus degenerates at n = 1)");
    const auto g = bresinsky_generators(d, n);
    const auto& a = g.a;
    const auto view = SemigroupView::build({a[0], a[1], a[2], a[3]});
    BresinskyReport report{d, n, g, {}, g.count, std::nullopt};
    auto fail = [&](std::int64_t mu, const std::string& what) {
        throw verification_failure("d = " + std::to_string(d) + ", n = " + std::to_string(n) + ", mu = "
                                   + std::to_string(mu) + ": " + what);
    };

    for (std::int64_t mu = 1; mu <= g.count; ++mu) {
        const std::int64_t low = (mu + 1) * a[0] + (g.count - mu) * a[1];
        const std::int64_t high = (mu - 1) * a[2] + (g.count - mu) * a[3];
        if (low != high) fail(mu, "the two factorizations differ (" + std::to_string(low) + " vs " + std::to_string(high) + ")");
        if (mu < g.count) {
            const std::int64_t next = (mu + 2) * a[0] + (g.count - mu - 1) * a[1];
            if (next != low - g.modulus) fail(mu, "consecutive degrees do not differ by the modulus");
        }
        for (int r = 0; r < 2; ++r)
            for (int s = 2; s < 4; ++s) {
                const std::int64_t rest = low - a[static_cast<std::size_t>(r)] - a[static_cast<std::size_t>(s)];
                if (mod_floor(rest + 2, g.modulus) != 0)
                    fail(mu, "f - a_" + std::to_string(r + 1) + " - a_" + std::to_string(s + 1) + " is not -2 mod M");
                if (view.contains(rest))
                    fail(mu, "f - a_" + std::to_string(r + 1) + " - a_" + std::to_string(s + 1) + " lies in S");
            }
        // The edge {1,2} needs both coefficients of the first factorization
        // to be positive, and likewise {3,4}; at mu = 1 and mu = 2 n^{d/2}
        // only a vertex of the pair survives and other isolated vertices may
        // appear.
        auto complex = sq_divisor_complex(view, low);
        const Face low_support = (mu < g.count) ? 0b0011u : 0b0001u;
        const Face high_support = (mu > 1 ? 0b0100u : 0u) | (mu < g.count ? 0b1000u : 0u);
        if (!complex.contains(low_support)) fail(mu, "missing the face spanned by the a_1, a_2 factorization");
        if (!complex.contains(high_support)) fail(mu, "missing the face spanned by the a_3, a_4 factorization");
        auto h = reduced_homology(complex, FieldSpec::rationals());
        if (h[0] < 1) fail(mu, "divisor complex is connected");
        report.degrees.push_back({mu, low, static_cast<std::size_t>(h[0] + 1)});
    }

    if (compute_beta1) {
        report.beta1 = coarse_betti(view, 1, FieldSpec::rationals()).value;
        if (*report.beta1 < report.lower_bound)
            throw verification_failure("beta_1 = " + std::to_string(*report.beta1) + " is below 2 n^{d/2} = "
                                       + std::to_string(report.lower_bound));
    }
    return report;
}

/// (2 a_1 - k + 1)(k - 2)/2 + 1, an upper bound on the minimal presentation
/// size of <a_1 < ... < a_k>.
inline BigInt presentation_size_bound(std::int64_t smallest_generator, std::int64_t k)
{
    return BigInt(2 * smallest_generator - k + 1) * BigInt(k - 2) / 2 + 1;
}

struct DegreeBoundReport {
    int fitted_degree = 0;
    int degree_sum = 0;
    /// Smallest generator degree; only checked for i = 1.
    int min_degree = 0;
    std::size_t points_checked = 0;
};

/// Checks a fitted Betti quasi-polynomial against the degree ceilings and,
/// for i = 1, every sampled value against the presentation-size bound.
/// Throws bound_violation on the first failure.
inline DegreeBoundReport check_degree_bounds(const ParametricFamily& fam, int i, const QuasiPolynomial& fitted,
                                             const std::map<std::int64_t, std::int64_t>& samples = {})
{
    DegreeBoundReport report{degree_of(fitted), fam.degree_sum(), fam.min_generator_degree(), 0};
    if (report.fitted_degree > report.degree_sum)
        throw bound_violation("fitted degree " + std::to_string(report.fitted_degree) + " exceeds the degree sum "
                              + std::to_string(report.degree_sum));
    if (i != 1) return report;
    if (report.fitted_degree > report.min_degree)
        throw bound_violation("fitted degree " + std::to_string(report.fitted_degree)
                              + " exceeds the smallest generator degree " + std::to_string(report.min_degree));
    const auto k = static_cast<std::int64_t>(fam.size());
    for (const auto& [n, beta] : samples) {
        auto gens = instantiate_scalar(fam, n);
        const auto smallest = *std::min_element(gens.begin(), gens.end());
        if (k >= 2 && BigInt(beta) > presentation_size_bound(smallest, k))
            throw bound_violation("beta_1 = " + std::to_string(beta) + " at n = " + std::to_string(n)
                                  + " exceeds the presentation-size bound");
        ++report.points_checked;
    }
    return report;
}

} // namespace eqpsg

#endif // EQPSG_BRESINSKY_HPP
