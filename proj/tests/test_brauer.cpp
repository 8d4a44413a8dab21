#include <gtest/gtest.h>

#include <set>

#include <weingarten/brauer.hpp>

using namespace weingarten;

namespace {

// sum over index tuples i in [1..d]^{2n} of delta^{p1}_i delta^{p2}_i: the
// Gram entry computed from its definition rather than from l(p1, p2).
long gram_by_index_sum(const Pairing& p1, const Pairing& p2, int d) {
    const int m = p1.points();
    std::vector<int> idx(m, 0);
    long total = 0;
    while (true) {
        bool ok = true;
        for (int a = 0; a < m && ok; ++a) ok = idx[a] == idx[p1(a)] && idx[a] == idx[p2(a)];
        total += ok;
        int k = 0;
        while (k < m && ++idx[k] == d) idx[k++] = 0;
        if (k == m) break;
    }
    return total;
}

Matrix<BigRat> projector_matrix(const Partition& lambda, const std::vector<Pairing>& order) {
    const auto byType = isotypic_projector_by_type(lambda);
    Matrix<BigRat> p(order.size(), order.size());
    for (std::size_t r = 0; r < order.size(); ++r)
        for (std::size_t c = 0; c < order.size(); ++c) p(r, c) = byType.at(coset_type(order[r], order[c]));
    return p;
}

} // namespace

TEST(Pairings, CountIsDoubleFactorial) {
    EXPECT_EQ(enumerate_pairings(1).size(), 1u);
    EXPECT_EQ(enumerate_pairings(2).size(), 3u);
    EXPECT_EQ(enumerate_pairings(5).size(), 945u);
    for (int n = 1; n <= 6; ++n) {
        const auto all = enumerate_pairings(n);
        EXPECT_EQ(static_cast<long>(all.size()), double_factorial_odd(n));
        std::set<Pairing> unique(all.begin(), all.end());
        EXPECT_EQ(unique.size(), all.size());
    }
    EXPECT_EQ(enumerate_pairings(2).front(), Pairing::identity(2));
}

TEST(Pairings, ParseAndPrint) {
    const auto p = Pairing::parse("(1,3)(2,4)", 2);
    EXPECT_EQ(p.str(), "(1,3)(2,4)");
    EXPECT_EQ(Pairing::parse("(2,1) (4,3)", 2), Pairing::identity(2));
    for (const auto& q : enumerate_pairings(3)) EXPECT_EQ(Pairing::parse(q.str(), 3), q);
    EXPECT_THROW(Pairing::parse("(1,2)", 2), parse_error);
    EXPECT_THROW(Pairing::parse("(1,2)(2,3)", 2), parse_error);
    EXPECT_THROW(Pairing::parse("(1,5)(2,3)", 2), parse_error);
    EXPECT_THROW(Pairing(std::vector<int>{1, 0, 2}), error);
}

TEST(Pairings, DistanceExamples) {
    const auto id = Pairing::identity(2);
    EXPECT_EQ(pairing_distance(id, Pairing::parse("(1,3)(2,4)", 2)), 1);
    EXPECT_EQ(pairing_distance(id, id), 0);
    EXPECT_EQ(coset_type(id, Pairing::parse("(1,3)(2,4)", 2)), (Partition{2}));
    EXPECT_EQ(coset_type(Pairing::identity(3), Pairing::parse("(1,2)(3,5)(4,6)", 3)), (Partition{2, 1}));
    EXPECT_EQ(coset_type(Pairing::identity(3), Pairing::identity(3)), (Partition{1, 1, 1}));
}

TEST(Pairings, MetricAxiomsOnSixPoints) {
    const auto all = enumerate_pairings(3);
    for (const auto& a : all)
        for (const auto& b : all) {
            const int ab = pairing_distance(a, b);
            EXPECT_EQ(ab == 0, a == b);
            EXPECT_EQ(ab, pairing_distance(b, a));
            for (const auto& c : all) EXPECT_LE(pairing_distance(a, c), ab + pairing_distance(b, c));
        }
}

TEST(Pairings, DistanceFromCosetType) {
    for (int n = 1; n <= 4; ++n) {
        const auto all = enumerate_pairings(n);
        for (const auto& a : all)
            for (const auto& b : all) EXPECT_EQ(pairing_distance(a, b), n - coset_type(a, b).length());
    }
}

TEST(Pairings, ConjugationPreservesCosetType) {
    const auto all = enumerate_pairings(3);
    const std::vector<int> sigma{3, 0, 5, 1, 4, 2};
    for (const auto& a : all)
        for (const auto& b : all) EXPECT_EQ(coset_type(a.conjugated_by(sigma), b.conjugated_by(sigma)), coset_type(a, b));
}

TEST(Pairings, Moebius) {
    const auto id = Pairing::identity(3);
    EXPECT_EQ(moebius_pairing(id, id), 1);
    EXPECT_EQ(moebius_pairing(id, Pairing::parse("(1,2)(3,5)(4,6)", 3)), -1);
    EXPECT_EQ(moebius_pairing(id, Pairing::parse("(1,6)(2,3)(4,5)", 3)), 2);
}

TEST(Gram, SmallCases) {
    const auto g1 = gram_matrix(1).symbolic();
    ASSERT_EQ(g1.rows(), 1u);
    EXPECT_EQ(g1(0, 0), Poly::d());
    const auto g2 = gram_matrix(2).symbolic();
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(g2(r, c), r == c ? Poly::d() * Poly::d() : Poly::d());
    EXPECT_THROW(gram_matrix(6), cap_exceeded);
}

TEST(Gram, MatchesIndexSum) {
    for (int n = 1; n <= 3; ++n) {
        const auto g = gram_matrix(n);
        for (int d = 1; d <= 3; ++d) {
            const auto m = g.at(d);
            for (std::size_t r = 0; r < g.size(); ++r)
                for (std::size_t c = 0; c < g.size(); ++c) EXPECT_EQ(m(r, c), BigRat(gram_by_index_sum(g.order[r], g.order[c], d)));
        }
    }
}

TEST(Gram, FullRankExactlyWhenDAtLeastN) {
    for (int n = 1; n <= 4; ++n) {
        const auto g = gram_matrix(n);
        for (int d = 1; d <= n + 1; ++d) {
            const std::size_t r = rank(g.at(d));
            if (d >= n) EXPECT_EQ(r, g.size()) << "n=" << n << " d=" << d;
            else EXPECT_LT(r, g.size()) << "n=" << n << " d=" << d;
        }
    }
}

TEST(Eigenvalues, SmallCases) {
    EXPECT_EQ(z_eigenvalue({1}), parse_rational_function("d"));
    EXPECT_EQ(z_eigenvalue({2}), parse_rational_function("d(d+2)"));
    EXPECT_EQ(z_eigenvalue({1, 1}), parse_rational_function("d(d-1)"));
    // product over boxes of (d + 2 col - row), 0-based
    EXPECT_EQ(z_eigenvalue({2, 1}), parse_rational_function("d(d+2)(d-1)"));
    EXPECT_EQ(z_eigenvalue({2, 2}), parse_rational_function("d(d+2)(d-1)(d+1)"));
}

TEST(Eigenvalues, DimensionIdentity) {
    for (int n = 1; n <= 5; ++n) EXPECT_TRUE(dimension_identity_check(n)) << n;
}

TEST(Eigenvalues, ProjectorsDiagonalizeGram) {
    for (int n = 1; n <= 3; ++n) {
        const auto g = gram_matrix(n);
        const std::size_t size = g.size();
        Matrix<BigRat> sum(size, size);
        for (const auto& lambda : partitions_of(n)) {
            const auto p = projector_matrix(lambda, g.order);
            EXPECT_EQ(p * p, p);
            // trace = dim(2 lambda)
            BigRat tr = 0;
            for (std::size_t k = 0; k < size; ++k) tr += p(k, k);
            EXPECT_EQ(tr, BigRat(hook_length_dimension(lambda.doubled())));
            for (int d : {2, 5}) {
                const BigRat z = z_eigenvalue(lambda)(d);
                Matrix<BigRat> zp = p;
                for (std::size_t r = 0; r < size; ++r)
                    for (std::size_t c = 0; c < size; ++c) zp(r, c) *= z;
                EXPECT_EQ(g.at(d) * p, zp);
            }
            for (std::size_t r = 0; r < size; ++r)
                for (std::size_t c = 0; c < size; ++c) sum(r, c) += p(r, c);
        }
        Matrix<BigRat> id(size, size);
        for (std::size_t k = 0; k < size; ++k) id(k, k) = 1;
        EXPECT_EQ(sum, id);
    }
}

TEST(Eigenvalues, MultiplicitiesFromRank) {
    // At a generic d the eigenspace of z_lambda(d) has dimension dim(2 lambda).
    const int n = 3, d = 11;
    const auto g = gram_matrix(n);
    for (const auto& lambda : partitions_of(n)) {
        auto m = g.at(d);
        const BigRat z = z_eigenvalue(lambda)(d);
        for (std::size_t k = 0; k < g.size(); ++k) m(k, k) -= z;
        EXPECT_EQ(g.size() - rank(m), static_cast<std::size_t>(hook_length_dimension(lambda.doubled()))) << lambda.str();
    }
}

TEST(Eigenvalues, PositiveDefiniteForLargeD) {
    for (int n = 1; n <= 4; ++n)
        for (const auto& lambda : partitions_of(n)) {
            const auto z = z_eigenvalue(lambda);
            for (int d = n; d <= n + 4; ++d) EXPECT_GT(z(d), 0) << lambda.str() << " d=" << d;
        }
}
