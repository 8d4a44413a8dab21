#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include <weingarten/montecarlo.hpp>

using namespace weingarten;

namespace {

SamplingPlan plan(std::uint64_t samples, std::uint64_t seed) {
    SamplingPlan p;
    p.samples = samples;
    p.seed = seed;
    return p;
}

Matrix<BigRat> rational_matrix(std::vector<std::vector<int>> rows, int den = 1) {
    Matrix<BigRat> m(rows.size(), rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows.size(); ++c) m(r, c) = BigRat(rows[r][c], den);
    return m;
}

BigRat normalized_trace(const Matrix<BigRat>& m) {
    BigRat t = 0;
    for (std::size_t k = 0; k < m.rows(); ++k) t += m(k, k);
    return t / static_cast<int>(m.rows());
}

void expect_concordant(const SampleEstimate& e, const BigRat& exact, const std::string& what) {
    EXPECT_LE(e.z_score(static_cast<double>(exact)), 5.0) << what << ": estimate " << e.mean << " +- " << e.std_error << " exact " << exact;
}

} // namespace

TEST(Philox, KnownAnswers) {
    using C = Philox4x32::counter_type;
    EXPECT_EQ(Philox4x32::encrypt({0, 0, 0, 0}, {0, 0}), (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(Philox4x32::encrypt({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(Philox4x32::encrypt({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, StreamsAndSeedsDiffer) {
    Philox4x32 a(7, 0), b(7, 1), c(8, 0), a2(7, 0);
    std::vector<std::uint32_t> va, vb, vc, va2;
    for (int k = 0; k < 16; ++k) {
        va.push_back(a());
        vb.push_back(b());
        vc.push_back(c());
        va2.push_back(a2());
    }
    EXPECT_EQ(va, va2);
    EXPECT_NE(va, vb);
    EXPECT_NE(va, vc);
}

TEST(Normals, FirstTwoMoments) {
    Philox4x32 g(1);
    NormalSource n(g);
    const int count = 200000;
    double s = 0, s2 = 0;
    for (int k = 0; k < count; ++k) {
        const double x = n();
        s += x;
        s2 += x * x;
    }
    EXPECT_LT(std::abs(s / count), 5.0 / std::sqrt(count));
    EXPECT_LT(std::abs(s2 / count - 1.0), 5.0 * std::sqrt(2.0 / count));
}

TEST(Sampler, GroupResiduals) {
    Philox4x32 rng(3);
    for (int d = 1; d <= 6; ++d)
        for (Group g : {Group::unitary, Group::orthogonal, Group::symplectic})
            for (int s = 0; s < 1000; ++s) {
                const CMatrix m = sample_haar(g, d, rng);
                ASSERT_EQ(m.rows(), matrix_size(g, d));
                const Residuals r = group_residuals(g, m);
                EXPECT_LT(r.unitarity, 1e-12) << group_name(g) << " d=" << d;
                EXPECT_LT(r.form, g == Group::symplectic ? 1e-10 : 1e-12) << group_name(g) << " d=" << d;
                if (g == Group::orthogonal) {
                    EXPECT_NEAR(std::abs(m.real().determinant()), 1.0, 1e-10);
                }
            }
}

TEST(Sampler, UncorrectedQrIsBiased) {
    // E[U11] = 0 under Haar; Householder QR without the phase fix makes Re U11 < 0 always.
    const std::size_t count = 20000;
    Philox4x32 rng(11);
    MomentAccumulator raw, fixed;
    for (std::size_t s = 0; s < count; ++s) {
        NormalSource n(rng);
        raw.add(detail::ginibre_q(2, false, false, n)(0, 0).real());
        fixed.add(sample_haar(Group::unitary, 2, rng)(0, 0).real());
    }
    EXPECT_GT(raw.estimate().z_score(0), 5.0);
    EXPECT_LE(fixed.estimate().z_score(0), 5.0);
}

TEST(Estimates, SpecExamples) {
    expect_concordant(estimate_moment(Group::unitary, 2, parse_entry_product("1,1;1,1;1,1*;1,1*"), plan(200000, 1)), BigRat(1, 3), "|U11|^4");
    expect_concordant(estimate_moment(Group::orthogonal, 3, parse_entry_product("1,1;1,1"), plan(200000, 2)), BigRat(1, 3), "O11^2");
    expect_concordant(estimate_moment(Group::orthogonal, 3, parse_entry_product("1,1;1,1;2,2;2,2"), plan(200000, 3)), BigRat(4, 30), "O11^2 O22^2");
    // Sp(1) = SU(2): M11 M22 = |x|^2
    expect_concordant(estimate_moment(Group::symplectic, 1, parse_entry_product("1,1;2,2"), plan(200000, 4)), BigRat(1, 2), "Sp(1) M11 M22");
    expect_concordant(estimate_moment(Group::symplectic, 1, parse_entry_product("1,1;1,1"), plan(200000, 5)), BigRat(0), "Sp(1) M11^2");
    EXPECT_EQ(exact_moment(Group::symplectic, 1, parse_entry_product("1,1;2,2")), BigRat(1, 2));
    EXPECT_EQ(exact_moment(Group::symplectic, 1, parse_entry_product("1,1;1,1")), BigRat(0));
}

TEST(Estimates, SymplecticSignsAgainstSampling) {
    const std::vector<std::string> queries{"1,1;1,1*", "1,3;1,3*", "1,1;3,3", "1,2;3,4", "1,2;4,3", "1,1;2,2;3,3;4,4",
                                           "1,3;3,1*", "2,4;2,4;1,1*;1,1*", "1,1;2,4;3,3;4,2", "1,2;2,1;3,4;4,3"};
    std::vector<EntryProduct> parsed;
    for (const auto& q : queries) parsed.push_back(parse_entry_product(q));
    const auto est = estimate_moments(Group::symplectic, 2, parsed, plan(300000, 6));
    for (std::size_t k = 0; k < parsed.size(); ++k) expect_concordant(est[k], exact_moment(Group::symplectic, 2, parsed[k]), queries[k]);
}

TEST(Estimates, RegularizedTableOnO2) {
    const auto reg = wg_orthogonal_regularized(3, 2);
    const std::vector<std::string> queries{"1,1;1,1;1,1;1,1;1,1;1,1", "1,1;1,1;2,2;2,2;1,2;1,2", "1,1;2,2;1,1;2,2;2,1;2,1",
                                           "1,2;1,2;1,2;1,2;2,1;2,1"};
    std::vector<EntryProduct> parsed;
    for (const auto& q : queries) parsed.push_back(parse_entry_product(q));
    const auto est = estimate_moments(Group::orthogonal, 2, parsed, plan(300000, 7));
    for (std::size_t k = 0; k < parsed.size(); ++k) {
        OrthoMomentQuery q;
        for (const auto& f : parsed[k]) {
            q.i.push_back(f.row);
            q.j.push_back(f.col);
        }
        const BigRat exact = moment_orthogonal_regularized(q, reg);
        EXPECT_EQ(exact, exact_moment(Group::orthogonal, 2, parsed[k]));
        expect_concordant(est[k], exact, queries[k]);
    }
}

TEST(Estimates, DispatchRules) {
    EXPECT_EQ(exact_moment(Group::unitary, 3, parse_entry_product("1,1;2,2")), 0);
    EXPECT_EQ(exact_moment(Group::unitary, 3, parse_entry_product("1,2;1,2*")), BigRat(1, 3));
    EXPECT_EQ(exact_moment(Group::orthogonal, 3, parse_entry_product("1,2;1,2*")), BigRat(1, 3));
    EXPECT_THROW(exact_moment(Group::orthogonal, 2, parse_entry_product("3,1;1,1")), error);
    EXPECT_THROW(parse_entry_product("1,;2,2"), parse_error);
    EXPECT_EQ(to_string(parse_entry_product(" 1,2 ; 3,4* ")), "1,2;3,4*");
}

TEST(TraceWords, ExactFreenessIdentityOrthogonal) {
    ConstantMap c;
    c["A"] = rational_matrix({{1, -2, 3}, {4, 5, -6}, {7, 0, 9}}, 7);
    c["B"] = rational_matrix({{2, 1, 0}, {-1, 3, 5}, {1, 1, -4}}, 3);
    const BigRat expected = normalized_trace(c["A"]) * normalized_trace(c["B"]);
    EXPECT_EQ(exact_trace_moment(Group::orthogonal, 3, "A O B Ot", c), expected);
    expect_concordant(estimate_trace_moment(Group::orthogonal, 3, "A O B Ot", c, plan(100000, 8)), expected, "tr(A O B Ot)");
}

TEST(TraceWords, OrthogonalityEverySample) {
    const auto e = estimate_trace_moment(Group::orthogonal, 4, "O Ot", {}, plan(2000, 9));
    EXPECT_NEAR(e.mean.real(), 1.0, 1e-12);
    EXPECT_LT(e.std_error, 1e-12);
    EXPECT_EQ(exact_trace_moment(Group::orthogonal, 4, "O Ot", {}), 1);
}

TEST(TraceWords, UnitaryConjugation) {
    ConstantMap c;
    c["A"] = rational_matrix({{1, 2, 0, 0}, {0, 1, 0, 3}, {1, 0, 2, 0}, {0, 0, 1, 1}});
    c["B"] = rational_matrix({{0, 1, 0, 0}, {0, 0, 1, 0}, {5, 0, 0, 1}, {1, 0, 0, 2}});
    const BigRat exact = exact_trace_moment(Group::unitary, 4, "A U B U*", c);
    EXPECT_EQ(exact, normalized_trace(c["A"]) * normalized_trace(c["B"]));
    expect_concordant(estimate_trace_moment(Group::unitary, 4, "A U B U*", c, plan(100000, 10)), exact, "tr(A U B U*)");
    // second order: tr(A U B U* A U B U*) through degree-4 moments
    const BigRat exact2 = exact_trace_moment(Group::unitary, 4, "A U B U* A U B U*", c);
    expect_concordant(estimate_trace_moment(Group::unitary, 4, "A U B U* A U B U*", c, plan(100000, 11)), exact2, "second order");
    EXPECT_THROW(exact_trace_moment(Group::unitary, 3, "A U", c), error);
    EXPECT_THROW(exact_trace_moment(Group::unitary, 4, "C U", c), error);
}

TEST(Estimates, ReproducibleAcrossThreadCounts) {
    const std::vector<EntryProduct> q{parse_entry_product("1,1;2,2*"), parse_entry_product("1,2;1,2*;3,3;3,3*")};
    auto p = plan(50000, 12);
    p.chunk = 4096;
    p.threads = 1;
    const auto a = estimate_moments(Group::unitary, 3, q, p);
    p.threads = 3;
    const auto b = estimate_moments(Group::unitary, 3, q, p);
    const auto c = estimate_moments(Group::unitary, 3, q, p);
    for (std::size_t k = 0; k < q.size(); ++k) {
        EXPECT_EQ(a[k].mean, b[k].mean);
        EXPECT_EQ(a[k].std_error, b[k].std_error);
        EXPECT_EQ(b[k].mean, c[k].mean);
        EXPECT_EQ(a[k].samples, 50000u);
    }
}

TEST(Estimates, MergeOrderOnlyAffectsRounding) {
    SamplingPlan p = plan(40000, 13);
    p.chunk = 1000;
    const auto chunks = sample_chunks(Group::orthogonal, 3, 1, p, [](const CMatrix& m, std::complex<double>* out) {
        out[0] = m(0, 0) * m(0, 0) * m(1, 1);
    });
    const auto forward = merge_chunks(chunks, 1).front();
    auto shuffled = chunks;
    std::mt19937 g(1);
    std::shuffle(shuffled.begin(), shuffled.end(), g);
    const auto other = merge_chunks(shuffled, 1).front();
    EXPECT_LT(std::abs(forward.mean - other.mean), 1e-12);
    EXPECT_LT(std::abs(forward.std_error - other.std_error), 1e-12);
    // the pooled result equals a single pass over the same samples
    MomentAccumulator single;
    for (const auto& c : chunks) single.merge(c[0]);
    EXPECT_EQ(single.count, 40000u);
}

TEST(Estimates, LeftInvariance) {
    Philox4x32 fixedRng(99);
    for (Group g : {Group::unitary, Group::orthogonal, Group::symplectic}) {
        const int d = 2;
        const CMatrix h = sample_haar(g, d, fixedRng);
        const EntryProduct q = parse_entry_product("1,1;1,1*;2,1;2,1*");
        auto statistic = [&](bool shift) {
            return [&, shift](const CMatrix& m, std::complex<double>* out) { out[0] = evaluate_product(shift ? CMatrix(h * m) : m, q); };
        };
        const auto base = merge_chunks(sample_chunks(g, d, 1, plan(100000, 20), statistic(false)), 1).front();
        const auto moved = merge_chunks(sample_chunks(g, d, 1, plan(100000, 21), statistic(true)), 1).front();
        const double combined = std::hypot(base.std_error, moved.std_error);
        EXPECT_LE(std::abs(base.mean - moved.mean), 5 * combined) << group_name(g);
    }
}

TEST(Estimates, RandomQueriesAreInRangeAndOftenNonzero) {
    for (Group g : {Group::unitary, Group::orthogonal, Group::symplectic}) {
        const int d = 2;
        const auto a = random_queries(g, d, 6, 200, 5);
        EXPECT_EQ(a, random_queries(g, d, 6, 200, 5));
        int nonzero = 0, even = 0;
        for (const auto& q : a) {
            EXPECT_GE(q.size(), 1u);
            EXPECT_LE(q.size(), 6u);
            EXPECT_NO_THROW(check_indices(g, d, q));
            even += q.size() % 2 == 0;
            nonzero += exact_moment(g, d, q) != 0;
        }
        EXPECT_GT(nonzero, even / 2) << group_name(g);
    }
}
