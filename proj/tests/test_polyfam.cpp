#include <random>

#include <gtest/gtest.h>

#include "eqpsg/family.hpp"
#include "eqpsg/polynomial.hpp"

using namespace eqpsg;

namespace {

std::vector<BigInt> coeffs(const PolynomialZ& p)
{
    std::vector<BigInt> out;
    for (int j = 0; j <= p.degree(); ++j) out.push_back(p.coeff(static_cast<std::size_t>(j)));
    return out;
}

PolynomialZ random_poly(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> deg(0, 4), val(-20, 20);
    std::vector<BigInt> c(static_cast<std::size_t>(deg(rng) + 1));
    for (auto& x : c) x = val(rng);
    return PolynomialZ(c);
}

} // namespace

TEST(ParsePoly, ReadsCoefficientsLowToHigh)
{
    EXPECT_EQ(coeffs(parse_poly("4n^2-2n")), (std::vector<BigInt>{0, -2, 4}));
    EXPECT_TRUE(parse_poly("0").is_zero());
    EXPECT_EQ(coeffs(parse_poly("n+3")), (std::vector<BigInt>{3, 1}));
    EXPECT_EQ(parse_poly("-1+4n^2"), parse_poly("4n^2 - 1"));
    EXPECT_EQ(coeffs(parse_poly("7")), (std::vector<BigInt>{7}));
}

TEST(ParsePoly, RejectsMalformedInput)
{
    EXPECT_THROW(parse_poly(""), parse_error);
    EXPECT_THROW(parse_poly("n^"), parse_error);
    EXPECT_THROW(parse_poly("x+1"), parse_error);
    EXPECT_THROW(parse_poly("3 4"), parse_error);
}

TEST(EvalPoly, SmallValues)
{
    EXPECT_EQ(eval_poly(PolynomialZ(std::vector<BigInt>{0, -2, 4}), 2), 12);
    EXPECT_EQ(eval_poly(PolynomialZ(), 17), 0);
    EXPECT_EQ(eval_poly(PolynomialZ(std::vector<BigInt>{-1, 0, 4}), 2), 15);
}

TEST(EvalPoly, RingHomomorphismOnRandomPolynomials)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        auto p = random_poly(rng), q = random_poly(rng);
        for (std::int64_t n : {0, 1, 2, 5, 13, 40}) {
            EXPECT_EQ(eval_poly(p + q, n), eval_poly(p, n) + eval_poly(q, n));
            EXPECT_EQ(eval_poly(p * q, n), eval_poly(p, n) * eval_poly(q, n));
        }
    }
}

TEST(RenderPoly, RoundTrips)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        auto p = random_poly(rng);
        EXPECT_EQ(parse_poly(p.str()), p) << p.str();
    }
}

TEST(Instantiate, BresinskyAtTwo)
{
    EXPECT_EQ(instantiate_scalar(bresinsky_family(2), 2), (std::vector<std::int64_t>{12, 15, 20, 23}));
    EXPECT_EQ(instantiate_scalar(bresinsky_family(4), 2), (std::vector<std::int64_t>{56, 63, 72, 79}));
    EXPECT_THROW(bresinsky_family(3), odd_degree);
}

TEST(Instantiate, ShiftedFamilyAtZero)
{
    auto fam = parse_inline_family("n+3, n+5, n+7");
    EXPECT_EQ(instantiate_scalar(fam, 0), (std::vector<std::int64_t>{3, 5, 7}));
}

TEST(Instantiate, NegativeGeneratorRejected)
{
    auto fam = parse_inline_family("n-5, n+1");
    EXPECT_THROW(instantiate(fam, 3), non_positive_generator);
    EXPECT_THROW(instantiate(fam, 5), non_positive_generator);
    EXPECT_NO_THROW(instantiate(fam, 6));
}

TEST(Instantiate, OverflowDetected)
{
    auto fam = parse_inline_family("n^5, n+1");
    EXPECT_THROW(instantiate(fam, 100000), generator_overflow);
}

TEST(FamilyFile, ParsesDimensionCommentsAndCoordinates)
{
    auto fam = parse_family("# affine example\ndim 2\nn; 1   # first\n1; n\nn+1; n+1\n");
    EXPECT_EQ(fam.dim(), 2u);
    EXPECT_EQ(fam.size(), 3u);
    auto g = instantiate(fam, 4);
    EXPECT_EQ(g[0], (GeneratorVector{4, 1}));
    EXPECT_EQ(g[2], (GeneratorVector{5, 5}));
}

TEST(FamilyFile, ReportsErrors)
{
    EXPECT_THROW(parse_family("n+1\n"), parse_error);
    EXPECT_THROW(parse_family("dim 2\nn\n"), parse_error);
    EXPECT_THROW(parse_family("dim 1\n"), parse_error);
    EXPECT_THROW(parse_inline_family("n;1, n"), parse_error);
}

TEST(FamilyDegrees, SumAndMinimum)
{
    auto fam = parse_inline_family("n^2+1, n^2+n+1, n^2+2n+3");
    EXPECT_EQ(fam.degree_sum(), 6);
    EXPECT_EQ(fam.min_generator_degree(), 2);
    EXPECT_EQ(parse_inline_family("6, 9, 20").degree_sum(), 0);
}
