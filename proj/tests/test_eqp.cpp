#include <random>

#include <gtest/gtest.h>

#include "eqpsg/quasi_polynomial.hpp"

using namespace eqpsg;

namespace {

SampleSeries series_of(std::int64_t lo, std::int64_t hi, const std::function<BigInt(std::int64_t)>& f)
{
    return SampleSeries::generate(lo, hi, [&](std::int64_t n) { return std::optional<BigInt>(f(n)); });
}

BigInt binomial(std::int64_t n, int j)
{
    BigInt num = 1, den = 1;
    for (int i = 0; i < j; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return num / den;
}

} // namespace

TEST(Fit, PurePolynomial)
{
    auto qp = fit(series_of(0, 50, [](std::int64_t n) { return BigInt(n) * n; }));
    ASSERT_TRUE(qp);
    EXPECT_EQ(qp->period(), 1);
    EXPECT_EQ(qp->onset(), 0);
    EXPECT_EQ(degree_of(*qp), 2);
    EXPECT_EQ(qp->classes()[0], (std::vector<Rational>{0, 0, 1}));
}

TEST(Fit, QuasiLinear)
{
    auto qp = fit(series_of(0, 60, [](std::int64_t n) { return n % 2 == 0 ? BigInt(n) : BigInt(2 * n + 1); }));
    ASSERT_TRUE(qp);
    EXPECT_EQ(qp->period(), 2);
    EXPECT_EQ(qp->onset(), 0);
    EXPECT_EQ(degree_of(*qp), 1);
    EXPECT_EQ(qp->classes()[0], (std::vector<Rational>{0, 1}));
    EXPECT_EQ(qp->classes()[1], (std::vector<Rational>{1, 2}));
    EXPECT_EQ(qp->eval(101), Rational(203));
}

TEST(Fit, EventualOnset)
{
    auto qp = fit(series_of(0, 40, [](std::int64_t n) {
        static const std::int64_t head[] = {7, 3, 9};
        return n < 3 ? BigInt(head[n]) : BigInt(n) * n;
    }));
    ASSERT_TRUE(qp);
    EXPECT_EQ(qp->period(), 1);
    EXPECT_EQ(degree_of(*qp), 2);
    EXPECT_EQ(qp->onset(), 3);
    EXPECT_THROW(qp->eval(2), below_onset);
}

TEST(Fit, ConstantHasDegreeZero)
{
    auto qp = fit(series_of(1, 30, [](std::int64_t) { return BigInt(43); }));
    ASSERT_TRUE(qp);
    EXPECT_EQ(degree_of(*qp), 0);
    auto zero = fit(series_of(1, 30, [](std::int64_t) { return BigInt(0); }));
    ASSERT_TRUE(zero);
    EXPECT_EQ(degree_of(*zero), -1);
}

TEST(Fit, NoFitBeyondCaps)
{
    auto cubic = series_of(0, 60, [](std::int64_t n) { return BigInt(n) * n * n; });
    EXPECT_FALSE(fit(cubic, {12, 2, 0.2}));
    EXPECT_TRUE(fit(cubic, {12, 3, 0.2}));
    auto period13 = series_of(0, 300, [](std::int64_t n) { return BigInt(n % 13); });
    EXPECT_FALSE(fit(period13, {12, 1, 0.2}));
}

TEST(Fit, SkipsUndefinedPoints)
{
    auto s = SampleSeries::generate(1, 80, [](std::int64_t n) {
        return n % 2 == 0 ? std::optional<BigInt>() : std::optional<BigInt>(BigInt(3 * n + 1));
    });
    auto qp = fit(s);
    ASSERT_TRUE(qp);
    EXPECT_EQ(qp->eval(101), Rational(304));
}

TEST(Fit, InsufficientData)
{
    EXPECT_THROW(fit(series_of(0, 1, [](std::int64_t n) { return BigInt(n); })), insufficient_data);
    EXPECT_THROW(fit(series_of(0, 10, [](std::int64_t n) { return BigInt(n); }), {12, 2, 1.5}), usage_error);
}

TEST(Fit, RandomRoundTripWithMinimalPeriod)
{
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> per(1, 6), deg(0, 4), coef(-6, 6);
    for (int trial = 0; trial < 100; ++trial) {
        const int p = per(rng), d = deg(rng);
        std::vector<std::vector<BigInt>> basis(static_cast<std::size_t>(p), std::vector<BigInt>(static_cast<std::size_t>(d + 1)));
        for (auto& row : basis)
            for (auto& c : row) c = coef(rng);
        auto value = [&](std::int64_t n) {
            BigInt v = 0;
            const auto& row = basis[static_cast<std::size_t>(n % p)];
            for (int j = 0; j <= d; ++j) v += row[static_cast<std::size_t>(j)] * binomial(n, j);
            return v;
        };
        int minimal = p;
        for (int q = 1; q < p; ++q) {
            if (p % q) continue;
            bool same = true;
            for (int r = 0; r < p && same; ++r) same = basis[static_cast<std::size_t>(r)] == basis[static_cast<std::size_t>((r + q) % p)];
            if (same) {
                minimal = q;
                break;
            }
        }
        auto qp = fit(series_of(0, 120, value), {12, 4, 0.2});
        ASSERT_TRUE(qp) << "trial " << trial;
        EXPECT_EQ(qp->period(), minimal) << "trial " << trial;
        for (std::int64_t n = qp->onset(); n <= 300; ++n) {
            auto v = qp->eval(n);
            ASSERT_TRUE(is_integer(v));
            ASSERT_EQ(v, Rational(value(n))) << "trial " << trial << " n " << n;
        }
    }
}

TEST(QuasiPolynomial, Validation)
{
    EXPECT_THROW(QuasiPolynomial(0, 0, {}), error);
    EXPECT_THROW(QuasiPolynomial(2, 0, {{Rational(1)}}), error);
    EXPECT_THROW(QuasiPolynomial(2, 0, {{Rational(1)}, {Rational(1), Rational(2)}}), error);
    QuasiPolynomial q(2, 5, {{Rational(1)}, {Rational(2)}});
    EXPECT_EQ(q.eval(101), Rational(2));
    EXPECT_EQ(q.eval(100), Rational(1));
}

TEST(PeriodicSet, Examples)
{
    auto flags_of = [](auto pred) {
        std::map<std::int64_t, bool> m;
        for (std::int64_t n = 1; n <= 60; ++n) m[n] = pred(n);
        return m;
    };
    auto all = eventually_periodic_set(flags_of([](std::int64_t) { return true; }));
    ASSERT_TRUE(all);
    EXPECT_EQ(all->period, 1);
    EXPECT_TRUE(all->contains(1000));
    auto none = eventually_periodic_set(flags_of([](std::int64_t) { return false; }));
    ASSERT_TRUE(none);
    EXPECT_EQ(none->period, 1);
    EXPECT_FALSE(none->contains(1000));
    auto odd = eventually_periodic_set(flags_of([](std::int64_t n) { return n % 2 == 1; }));
    ASSERT_TRUE(odd);
    EXPECT_EQ(odd->period, 2);
    EXPECT_FALSE(odd->contains(100));
    EXPECT_TRUE(odd->contains(101));
    auto late = eventually_periodic_set(flags_of([](std::int64_t n) { return n > 7; }));
    ASSERT_TRUE(late);
    EXPECT_EQ(late->period, 1);
    EXPECT_EQ(late->onset, 8);
}

TEST(Fit, ClassesWithoutDataAreUnconstrained)
{
    // Defined only at even n, quasi-linear with period 4 there.
    auto s = SampleSeries::generate(1, 120, [](std::int64_t n) {
        if (n % 2) return std::optional<BigInt>();
        return std::optional<BigInt>(BigInt(n % 4 == 0 ? 3 * n : n + 7));
    });
    auto qp = fit(s);
    ASSERT_TRUE(qp);
    EXPECT_EQ(qp->period(), 4);
    EXPECT_EQ(qp->eval(200), Rational(600));
    EXPECT_EQ(qp->eval(202), Rational(209));
    EXPECT_EQ(qp->classes()[1], (std::vector<Rational>{0, 0}));
}
