#include <random>

#include <gtest/gtest.h>

#include "eqpsg/betti.hpp"
#include "eqpsg/bresinsky.hpp"
#include "oracles.hpp"

using namespace eqpsg;

namespace {

SimplicialComplex random_complex(std::mt19937_64& rng, int k)
{
    std::uniform_int_distribution<Face> pick(1, (Face{1} << k) - 1);
    std::uniform_int_distribution<int> count(1, 6);
    std::vector<Face> maximal;
    for (int i = count(rng); i > 0; --i) maximal.push_back(pick(rng));
    return SimplicialComplex::generated_by(k, maximal);
}

SimplicialComplex cone(const SimplicialComplex& c)
{
    const int k = c.vertex_count();
    std::vector<Face> faces;
    for (int d = -1; d <= c.dimension(); ++d)
        for (Face f : c.faces_of_dim(d)) {
            faces.push_back(f);
            faces.push_back(f | (Face{1} << k));
        }
    return SimplicialComplex(k + 1, faces);
}

std::vector<Face> all_faces(const SimplicialComplex& c)
{
    std::vector<Face> out;
    for (int d = -1; d <= c.dimension(); ++d)
        for (Face f : c.faces_of_dim(d)) out.push_back(f);
    return out;
}

const std::vector<std::vector<std::int64_t>>& presentation_corpus()
{
    static const std::vector<std::vector<std::int64_t>> c{
        {2, 3}, {3, 5, 7}, {6, 9, 20}, {12, 15, 20, 23}, {4, 6, 9}, {5, 7, 11}, {5, 7, 11, 13}, {3, 4}, {7, 8, 9, 10}, {4, 5, 6, 7}};
    return c;
}

} // namespace

TEST(ReducedHomology, TwoDisjointEdges)
{
    auto c = SimplicialComplex::generated_by(4, {0b0011, 0b1100});
    auto h = reduced_homology(c, FieldSpec::rationals());
    EXPECT_EQ(h[-1], 0);
    EXPECT_EQ(h[0], 1);
    EXPECT_EQ(h[1], 0);
    EXPECT_EQ(h[2], 0);
}

TEST(ReducedHomology, HollowTriangle)
{
    auto c = SimplicialComplex::generated_by(3, {0b011, 0b101, 0b110});
    for (auto field : {FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(101)}) {
        auto h = reduced_homology(c, field);
        EXPECT_EQ(h[0], 0);
        EXPECT_EQ(h[1], 1);
    }
}

TEST(ReducedHomology, FullSimplexAcyclic)
{
    for (int k = 1; k <= 7; ++k) {
        auto h = reduced_homology(SimplicialComplex::full_simplex(k), FieldSpec::rationals());
        for (auto d : h.dims()) EXPECT_EQ(d, 0) << k;
    }
}

TEST(ReducedHomology, EmptyFaceOnly)
{
    auto c = SimplicialComplex(3, {0});
    auto h = reduced_homology(c, FieldSpec::rationals());
    EXPECT_EQ(h[-1], 1);
    EXPECT_THROW(reduced_homology(SimplicialComplex(3, {}), FieldSpec::rationals()), empty_complex);
}

TEST(ReducedHomology, RealProjectivePlaneDependsOnCharacteristic)
{
    // Six-vertex triangulation of RP^2.
    std::vector<Face> tri;
    for (auto [a, b, c] : std::vector<std::array<int, 3>>{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                                                           {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}})
        tri.push_back((Face{1} << a) | (Face{1} << b) | (Face{1} << c));
    auto c = SimplicialComplex::generated_by(6, tri);
    auto q = reduced_homology(c, FieldSpec::rationals());
    auto f2 = reduced_homology(c, FieldSpec::prime(2));
    EXPECT_EQ(q[1], 0);
    EXPECT_EQ(q[2], 0);
    EXPECT_EQ(f2[1], 1);
    EXPECT_EQ(f2[2], 1);
}

TEST(SimplicialComplex, RejectsNonClosedFaceSets)
{
    EXPECT_THROW(SimplicialComplex(3, {0, 0b011}), error);
    EXPECT_THROW(SimplicialComplex(2, {0, 0b100}), error);
}

TEST(ReducedHomology, RandomComplexProperties)
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 1 + trial % 7;
        auto c = random_complex(rng, k);
        std::int64_t euler = 0;
        for (int d = -1; d <= c.dimension(); ++d)
            euler += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(c.faces_of_dim(d).size());
        for (auto field : {FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(3)}) {
            auto h = reduced_homology(c, field);
            std::int64_t alt = 0;
            for (int d = -1; d <= c.dimension(); ++d) alt += (d % 2 == 0 ? 1 : -1) * h[d];
            EXPECT_EQ(alt, euler);
            for (auto x : h.dims()) EXPECT_GE(x, 0);
        }
        for (int d = 0; d <= c.dimension(); ++d) {
            auto m = c.boundary(d);
            auto r = static_cast<std::int64_t>(rank(m, FieldSpec::rationals()));
            EXPECT_LE(r, static_cast<std::int64_t>(c.faces_of_dim(d).size()));
        }
        EXPECT_EQ(reduced_homology(c, FieldSpec::prime(2)).dims(), oracle::reduced_homology_gf2(all_faces(c)));
        auto coned = reduced_homology(cone(c), FieldSpec::rationals());
        for (auto x : coned.dims()) EXPECT_EQ(x, 0);
    }
}

TEST(AffineMember, Examples)
{
    EXPECT_TRUE(affine_member({{1, 0}, {0, 1}}, {5, 7}));
    EXPECT_FALSE(affine_member({{2, 1}, {1, 2}}, {1, 1}));
    EXPECT_TRUE(affine_member({{2, 1}, {1, 2}}, {3, 3}));
    auto v = SemigroupView::build({3, 5, 7});
    for (std::int64_t l = 0; l <= 100; ++l) EXPECT_EQ(affine_member({{3}, {5}, {7}}, {l}), v.contains(l)) << l;
}

TEST(SqDivisorComplex, BresinskyDegreeSixtyNine)
{
    auto v = SemigroupView::build({12, 15, 20, 23});
    auto c = sq_divisor_complex(v, 69);
    EXPECT_TRUE(c.contains(0b0011));
    EXPECT_EQ(reduced_homology(c, FieldSpec::rationals())[0], 1);
    EXPECT_EQ(graded_betti(v, 69, 1, FieldSpec::rationals()), 1);
    EXPECT_EQ(oracle::graded_beta1({12, 15, 20, 23}, 69), 1);
}

TEST(SqDivisorComplex, TrivialDegrees)
{
    auto v = SemigroupView::build({3, 5, 7});
    auto zero = sq_divisor_complex(v, 0);
    EXPECT_EQ(all_faces(zero), (std::vector<Face>{0}));
    EXPECT_EQ(graded_betti(v, 0, 1, FieldSpec::rationals()), 0);
    EXPECT_TRUE(sq_divisor_complex(v, 3).contains(0b001));
    EXPECT_THROW(sq_divisor_complex(v, 4), not_member);
    EXPECT_THROW(graded_betti(v, 4, 1, FieldSpec::rationals()), not_member);
}

TEST(SqDivisorComplex, AffineMatchesNumerical)
{
    auto v = SemigroupView::build({5, 7, 11, 13});
    for (std::int64_t l = 0; l <= 80; ++l) {
        if (!v.contains(l)) continue;
        EXPECT_EQ(all_faces(sq_divisor_complex({{5}, {7}, {11}, {13}}, {l})), all_faces(sq_divisor_complex(v, l)));
    }
}

TEST(CoarseBetti, Examples)
{
    auto q = FieldSpec::rationals();
    EXPECT_EQ(coarse_betti(SemigroupView::build({2, 3}), 1, q).value, 1);
    EXPECT_EQ(coarse_betti(SemigroupView::build({1}), 1, q).value, 0);
    auto b = coarse_betti(SemigroupView::build({12, 15, 20, 23}), 1, q);
    EXPECT_TRUE(b.complete);
    EXPECT_EQ(b.value, 8);
    EXPECT_GE(b.value, 4);
    EXPECT_EQ(coarse_betti(SemigroupView::build({3, 5, 7}), 1, q).value, 3);
    EXPECT_EQ(coarse_betti(SemigroupView::build({3, 5, 7}), 2, q).value, 2);
    EXPECT_EQ(coarse_betti(SemigroupView::build({3, 5, 7}), 3, q).value, 0);
    EXPECT_THROW(coarse_betti(SemigroupView::build({2, 3}), 0, q), index_out_of_range);
}

TEST(CoarseBetti, AlternatingSumVanishes)
{
    // For k >= 2 the Betti numbers of K[S] over K[x_1..x_k] satisfy
    // sum (-1)^i beta_i = 0, with beta_0 = 1.
    for (const auto& g : presentation_corpus()) {
        auto v = SemigroupView::build(g);
        std::int64_t alt = 1;
        for (int i = 1; i < static_cast<int>(g.size()); ++i)
            alt += (i % 2 ? -1 : 1) * coarse_betti(v, i, FieldSpec::rationals()).value;
        EXPECT_EQ(alt, 0);
    }
}

TEST(CoarseBetti, GradedValuesVanishPastCutoff)
{
    std::mt19937_64 rng(9);
    for (const auto& g : presentation_corpus()) {
        auto v = SemigroupView::build(g);
        for (int i = 1; i <= 2; ++i) {
            const auto cutoff = betti_degree_cutoff(v, i);
            EXPECT_EQ(cutoff, v.frobenius() + (i + 1) * v.max_generator());
            std::uniform_int_distribution<std::int64_t> pick(cutoff + 1, cutoff + 200);
            for (int trial = 0; trial < 10; ++trial)
                EXPECT_EQ(graded_betti(v, pick(rng), i, FieldSpec::rationals()), 0);
        }
    }
}

TEST(CoarseBetti, NonzeroDegreesCanExceedFrobeniusPlusIMax)
{
    // The single relation of <2, 3> sits in degree 6 > F + max = 4.
    auto v = SemigroupView::build({2, 3});
    EXPECT_EQ(graded_betti(v, 6, 1, FieldSpec::rationals()), 1);
    EXPECT_GT(6, v.frobenius() + v.max_generator());
}

TEST(CoarseBetti, MatchesOracleAndFieldIndependentInDegreeOne)
{
    for (const auto& g : presentation_corpus()) {
        auto v = SemigroupView::build(g);
        const auto expected = oracle::beta1(g, betti_degree_cutoff(v, 1));
        EXPECT_EQ(coarse_betti(v, 1, FieldSpec::rationals()).value, expected);
        EXPECT_EQ(coarse_betti(v, 1, FieldSpec::prime(2)).value, expected);
        EXPECT_EQ(coarse_betti(v, 1, FieldSpec::prime(101)).value, expected);
        EXPECT_EQ(minimal_presentation_size(v), presentation_size_by_factorizations(v));
    }
}

TEST(CoarseBetti, GcdDividedOut)
{
    auto q = FieldSpec::rationals();
    EXPECT_EQ(coarse_betti(SemigroupView::build({4, 6}), 1, q).value, 1);
    EXPECT_EQ(coarse_betti(SemigroupView::build({6, 10, 14}), 1, q).value,
              coarse_betti(SemigroupView::build({3, 5, 7}), 1, q).value);
}

TEST(CoarseBetti, AffineBoxIsLowerBound)
{
    auto q = FieldSpec::rationals();
    std::vector<GeneratorVector> gens{{1, 0}, {0, 1}, {1, 1}};
    auto r = coarse_betti(gens, 1, q, 6);
    EXPECT_FALSE(r.complete);
    EXPECT_EQ(r.value, 1);
    EXPECT_THROW(coarse_betti(gens, 1, q), missing_cap);
    auto scalar = coarse_betti(std::vector<GeneratorVector>{{2}, {3}}, 1, q);
    EXPECT_TRUE(scalar.complete);
    EXPECT_EQ(scalar.value, 1);
    EXPECT_LE(coarse_betti(gens, 1, q, 2).value, coarse_betti(gens, 1, q, 6).value);
}

TEST(GradedBettiTable, ContainsUnitEntryAndSerializes)
{
    auto t = graded_betti_table(SemigroupView::build({2, 3}), 1, FieldSpec::rationals());
    EXPECT_EQ(t.coarse(0), 1);
    EXPECT_EQ(t.coarse(1), 1);
    EXPECT_EQ(t.serialize(), "0;0;1\n6;1;1\n");
    auto affine = graded_betti_table({{1, 0}, {0, 1}, {1, 1}}, 1, FieldSpec::rationals(), 4);
    EXPECT_EQ(affine.serialize(), "0,0;0;1\n1,1;1;1\n");
}

TEST(Bresinsky, Generators)
{
    auto g = bresinsky_generators(2, 2);
    EXPECT_EQ(g.a, (std::array<std::int64_t, 4>{12, 15, 20, 23}));
    EXPECT_EQ(g.modulus, 3);
    auto one = bresinsky_generators(2, 1);
    EXPECT_EQ(one.a, (std::array<std::int64_t, 4>{2, 3, 6, 7}));
    EXPECT_EQ(one.modulus, 1);
    auto four = bresinsky_generators(4, 2);
    EXPECT_EQ(four.a, (std::array<std::int64_t, 4>{56, 63, 72, 79}));
    EXPECT_EQ(four.modulus, 7);
    EXPECT_THROW(bresinsky_generators(3, 2), odd_degree);
}

TEST(Bresinsky, VerifiesDegreeTwoAtTwo)
{
    auto r = verify_bresinsky(2, 2, true);
    ASSERT_EQ(r.degrees.size(), 4u);
    std::vector<std::int64_t> degrees;
    for (const auto& d : r.degrees) degrees.push_back(d.degree);
    EXPECT_EQ(degrees, (std::vector<std::int64_t>{69, 66, 63, 60}));
    EXPECT_EQ(3 * 12 + 2 * 15, 66);
    EXPECT_EQ(1 * 20 + 2 * 23, 66);
    EXPECT_EQ(degrees[0] - degrees[1], r.gens.modulus);
    EXPECT_EQ(r.lower_bound, 4);
    ASSERT_TRUE(r.beta1);
    EXPECT_GE(*r.beta1, 4);
    for (const auto& d : r.degrees) EXPECT_GE(d.components, 2u);
}

TEST(Bresinsky, RequiresNAtLeastTwo) { EXPECT_THROW(verify_bresinsky(2, 1), error); }

TEST(DegreeBounds, PresentationBoundFormula)
{
    EXPECT_EQ(presentation_size_bound(3, 3), BigInt(3));
    EXPECT_EQ(presentation_size_bound(12, 4), BigInt(22));
}

TEST(DegreeBounds, RejectsDegreeAboveSmallestGenerator)
{
    auto fam = parse_inline_family("n+3, n+5, n+7");
    QuasiPolynomial quadratic(1, 0, {{Rational(0), Rational(0), Rational(1)}});
    EXPECT_THROW(check_degree_bounds(fam, 1, quadratic), bound_violation);
    QuasiPolynomial constant(1, 0, {{Rational(3)}});
    EXPECT_NO_THROW(check_degree_bounds(fam, 1, constant, {{1, 3}, {2, 3}}));
    EXPECT_THROW(check_degree_bounds(fam, 1, constant, {{1, 1000}}), bound_violation);
    auto fixed = parse_inline_family("6, 9, 20");
    EXPECT_EQ(check_degree_bounds(fixed, 1, constant).fitted_degree, 0);
}
