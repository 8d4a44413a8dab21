#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <thread>
#include <vector>

#include "moments.hpp"

namespace weingarten {

/// Mean of a complex-valued statistic with its standard error
/// sqrt(sum |x - mean|^2 / (N - 1)) / sqrt(N).
struct SampleEstimate {
    std::complex<double> mean;
    double std_error = 0;
    std::uint64_t samples = 0;

    double z_score(std::complex<double> exact) const {
        const double diff = std::abs(mean - exact);
        if (std_error == 0) return diff == 0 ? 0 : std::numeric_limits<double>::infinity();
        return diff / std_error;
    }
};

/// |exact - mean| <= sigmas * stderr, with an absolute floor of 1e-12 for
/// statistics that are constant up to roundoff.
inline bool concordant(const SampleEstimate& e, std::complex<double> exact, double sigmas = 5.0) {
    return std::abs(e.mean - exact) <= sigmas * e.std_error + 1e-12;
}

/// Running mean and sum of squared deviations (Welford), mergeable (Chan et al.).
struct MomentAccumulator {
    std::uint64_t count = 0;
    std::complex<double> mean;
    double m2 = 0;

    void add(std::complex<double> x) {
        ++count;
        const std::complex<double> before = x - mean;
        mean += before / static_cast<double>(count);
        m2 += std::real(before * std::conj(x - mean));
    }

    void merge(const MomentAccumulator& o) {
        if (o.count == 0) return;
        if (count == 0) {
            *this = o;
            return;
        }
        const double na = static_cast<double>(count), nb = static_cast<double>(o.count), n = na + nb;
        const std::complex<double> delta = o.mean - mean;
        mean += delta * (nb / n);
        m2 += o.m2 + std::norm(delta) * na * nb / n;
        count += o.count;
    }

    SampleEstimate estimate() const {
        SampleEstimate e;
        e.mean = mean;
        e.samples = count;
        e.std_error = count > 1 ? std::sqrt(m2 / static_cast<double>(count - 1)) / std::sqrt(static_cast<double>(count)) : 0;
        return e;
    }
};

struct SamplingPlan {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0: hardware concurrency
    std::uint64_t chunk = 8192;
};

/// Per-chunk accumulators for k statistics f(M) -> out[0..k). Chunk c draws
/// from Philox stream c, so the result does not depend on the thread count.
inline std::vector<std::vector<MomentAccumulator>> sample_chunks(
    Group g, int d, std::size_t k, const SamplingPlan& plan,
    const std::function<void(const CMatrix&, std::complex<double>*)>& statistic) {
    if (plan.samples < 2) throw error("need at least 2 samples");
    if (plan.chunk == 0) throw error("chunk size must be positive");
    const std::uint64_t chunks = (plan.samples + plan.chunk - 1) / plan.chunk;
    std::vector<std::vector<MomentAccumulator>> acc(chunks, std::vector<MomentAccumulator>(k));
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        std::vector<std::complex<double>> out(k);
        for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) {
            Philox4x32 rng(plan.seed, c);
            const std::uint64_t n = std::min(plan.chunk, plan.samples - c * plan.chunk);
            for (std::uint64_t s = 0; s < n; ++s) {
                const CMatrix m = sample_haar(g, d, rng);
                statistic(m, out.data());
                for (std::size_t q = 0; q < k; ++q) acc[c][q].add(out[q]);
            }
        }
    };
    unsigned threads = plan.threads ? plan.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return acc;
}

inline std::vector<SampleEstimate> merge_chunks(const std::vector<std::vector<MomentAccumulator>>& chunks, std::size_t k) {
    std::vector<MomentAccumulator> total(k);
    for (const auto& c : chunks)
        for (std::size_t q = 0; q < k; ++q) total[q].merge(c[q]);
    std::vector<SampleEstimate> out;
    for (const auto& t : total) out.push_back(t.estimate());
    return out;
}

/// Estimates several entry-product moments from one set of samples.
inline std::vector<SampleEstimate> estimate_moments(Group g, int d, const std::vector<EntryProduct>& queries, const SamplingPlan& plan) {
    for (const auto& q : queries) check_indices(g, d, q);
    const auto chunks = sample_chunks(g, d, queries.size(), plan, [&](const CMatrix& m, std::complex<double>* out) {
        for (std::size_t q = 0; q < queries.size(); ++q) out[q] = evaluate_product(m, queries[q]);
    });
    return merge_chunks(chunks, queries.size());
}

inline SampleEstimate estimate_moment(Group g, int d, const EntryProduct& query, const SamplingPlan& plan) {
    return estimate_moments(g, d, {query}, plan).front();
}

/// Estimates E[tr(word)] with tr = Tr / matrix size.
inline SampleEstimate estimate_trace_moment(Group g, int d, std::string_view word, const ConstantMap& constants, const SamplingPlan& plan) {
    const auto letters = parse_word(word);
    const int size = matrix_size(g, d);
    std::vector<CMatrix> mats(letters.size());
    for (std::size_t k = 0; k < letters.size(); ++k) {
        if (letters[k].kind != WordLetter::constant) continue;
        const auto& c = lookup_constant(constants, letters[k], size);
        mats[k].resize(size, size);
        for (int r = 0; r < size; ++r)
            for (int col = 0; col < size; ++col) mats[k](r, col) = static_cast<double>(c(r, col));
    }
    const auto chunks = sample_chunks(g, d, 1, plan, [&](const CMatrix& m, std::complex<double>* out) {
        CMatrix prod = CMatrix::Identity(size, size);
        for (std::size_t k = 0; k < letters.size(); ++k) {
            switch (letters[k].kind) {
            case WordLetter::constant: prod = prod * mats[k]; break;
            case WordLetter::haar: prod = prod * m; break;
            case WordLetter::haar_transpose: prod = prod * m.transpose(); break;
            case WordLetter::haar_adjoint: prod = prod * m.adjoint(); break;
            }
        }
        out[0] = prod.trace() / static_cast<double>(size);
    });
    return merge_chunks(chunks, 1).front();
}

} // namespace weingarten
