#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_set>
#include <vector>

#include "characters.hpp"

namespace weingarten {

inline constexpr int default_unitary_cap = 8;

/// Unitary Weingarten function for one n, keyed by cycle type.
struct UnitaryWgTable {
    int n = 0;
    std::map<Partition, RationalFunction> entries;

    const RationalFunction& at(const Partition& mu) const {
        auto it = entries.find(mu);
        if (it == entries.end()) throw error("cycle type " + mu.str() + " is not a partition of " + std::to_string(n));
        return it->second;
    }
};

/// Index tuples for  int U_{i1 j1}..U_{in jn} conj(U_{i'1 j'1})..conj(U_{i'n' j'n'}) dU.
/// Indices are 1-based.
struct UnitaryMomentQuery {
    std::vector<int> i, j, iPrime, jPrime;

    bool balanced() const { return i.size() == iPrime.size(); }
};

namespace detail {

inline UnitaryWgTable build_unitary_table(int n) {
    UnitaryWgTable t;
    t.n = n;
    const auto lambdas = partitions_of(n);
    const BigInt nfact = factorial(static_cast<unsigned>(n));
    const BigRat norm(BigInt(1), nfact * nfact);
    // chi(e)^2 / s_lambda(1), shared by every class.
    std::vector<RationalFunction> weights;
    weights.reserve(lambdas.size());
    for (const auto& lambda : lambdas) {
        const BigInt dim = hook_length_dimension(lambda);
        weights.push_back(RationalFunction(BigRat(dim * dim) * norm) / schur_dim(lambda));
    }
    for (const auto& mu : lambdas) {
        RationalFunction acc;
        for (std::size_t k = 0; k < lambdas.size(); ++k) {
            const BigInt chi = character(lambdas[k], mu);
            if (chi != 0) acc += weights[k] * RationalFunction(BigRat(chi));
        }
        t.entries.emplace(mu, std::move(acc));
    }
    return t;
}

} // namespace detail

/// The whole class-function table for n, built once per process and cached.
inline const UnitaryWgTable& unitary_wg_table(int n, int cap = default_unitary_cap) {
    if (n < 1) throw error("unitary Weingarten needs n >= 1");
    if (n > cap) throw cap_exceeded("unitary n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const UnitaryWgTable>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<const UnitaryWgTable>(detail::build_unitary_table(n));
    return *slot;
}

/// Wg(sigma) for sigma of cycle type mu, as an exact rational function of d.
inline RationalFunction wg_unitary(int n, const Partition& mu, int cap = default_unitary_cap) {
    if (mu.size() != n) throw error("cycle type " + mu.str() + " is not a partition of " + std::to_string(n));
    return unitary_wg_table(n, cap).at(mu);
}

namespace detail {

using PackedPerm = std::uint32_t;  // 4 bits per image, n <= 8

inline PackedPerm pack(const std::vector<int>& p) {
    PackedPerm v = 0;
    for (std::size_t k = 0; k < p.size(); ++k) v |= static_cast<PackedPerm>(p[k]) << (4 * k);
    return v;
}
inline std::vector<int> unpack(PackedPerm v, int n) {
    std::vector<int> p(n);
    for (int k = 0; k < n; ++k) p[k] = static_cast<int>((v >> (4 * k)) & 0xFu);
    return p;
}

/// Some sigma with target[sigma(k)] == source[k] for all k, if any.
inline std::optional<std::vector<int>> matching_permutation(const std::vector<int>& source, const std::vector<int>& target) {
    const std::size_t n = source.size();
    std::vector<int> sigma(n);
    std::vector<char> used(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        bool found = false;
        for (std::size_t m = 0; m < n; ++m)
            if (!used[m] && target[m] == source[k]) {
                used[m] = 1;
                sigma[k] = static_cast<int>(m);
                found = true;
                break;
            }
        if (!found) return std::nullopt;
    }
    return sigma;
}

/// Transpositions generating the stabilizer of a label vector (a Young subgroup).
inline std::vector<std::pair<int, int>> stabilizer_generators(const std::vector<int>& labels) {
    std::vector<std::pair<int, int>> gens;
    for (std::size_t a = 0; a < labels.size(); ++a)
        for (std::size_t b = a + 1; b < labels.size(); ++b)
            if (labels[a] == labels[b]) {
                gens.emplace_back(static_cast<int>(a), static_cast<int>(b));
                break;
            }
    return gens;
}

inline BigInt stabilizer_order(const std::vector<int>& labels) {
    std::map<int, unsigned> counts;
    for (int x : labels) ++counts[x];
    BigInt r = 1;
    for (const auto& [label, m] : counts) r *= factorial(m);
    return r;
}

} // namespace detail

/// Exact Haar moment over U(d) as a rational function of d. Unbalanced
/// queries (n != n') vanish. The sum over (sigma, tau) pairs is reduced to
/// one double coset Stab(j') c Stab(i') of S_n, each element weighted by
/// |Stab(i')||Stab(j')| / |double coset|.
inline RationalFunction moment_unitary(const UnitaryMomentQuery& q, int cap = default_unitary_cap) {
    if (q.i.size() != q.j.size() || q.iPrime.size() != q.jPrime.size())
        throw error("moment_unitary: i/j (and i'/j') tuples must have equal lengths");
    for (const auto* v : {&q.i, &q.j, &q.iPrime, &q.jPrime})
        for (int x : *v)
            if (x < 1) throw error("moment_unitary: indices are 1-based positive integers");
    if (!q.balanced()) return {};
    const int n = static_cast<int>(q.i.size());
    if (n == 0) return 1;
    if (n > cap) throw cap_exceeded("unitary moment of n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));

    const auto sigma0 = detail::matching_permutation(q.i, q.iPrime);
    const auto tau0 = detail::matching_permutation(q.j, q.jPrime);
    if (!sigma0 || !tau0) return {};

    const Permutation c = Permutation(*tau0) * Permutation(*sigma0).inverse();
    const auto leftGens = detail::stabilizer_generators(q.jPrime);
    const auto rightGens = detail::stabilizer_generators(q.iPrime);

    std::unordered_set<detail::PackedPerm> seen;
    std::vector<detail::PackedPerm> frontier{detail::pack(c.images())};
    seen.insert(frontier.front());
    std::map<Partition, BigInt> typeCounts;
    while (!frontier.empty()) {
        const auto cur = frontier.back();
        frontier.pop_back();
        const std::vector<int> p = detail::unpack(cur, n);
        ++typeCounts[cycle_type(Permutation(p))];
        auto visit = [&](std::vector<int> next) {
            const auto packed = detail::pack(next);
            if (seen.insert(packed).second) frontier.push_back(packed);
        };
        for (auto [a, b] : leftGens) {  // (a b) * p
            std::vector<int> next = p;
            for (int& x : next)
                if (x == a) x = b;
                else if (x == b) x = a;
            visit(std::move(next));
        }
        for (auto [a, b] : rightGens) {  // p * (a b)
            std::vector<int> next = p;
            std::swap(next[a], next[b]);
            visit(std::move(next));
        }
    }

    const BigInt weight = detail::stabilizer_order(q.iPrime) * detail::stabilizer_order(q.jPrime) / BigInt(seen.size());
    const UnitaryWgTable& table = unitary_wg_table(n, cap);
    RationalFunction total;
    for (const auto& [mu, count] : typeCounts) total += table.at(mu) * RationalFunction(BigRat(count * weight));
    return total;
}

/// Leading behaviour Wg(sigma) ~ coefficient * d^{-exponent} as d -> infinity.
struct LeadingTerm {
    int exponent = 0;
    BigInt coefficient;
};

/// (n + |sigma|, Moeb(sigma)); throws if the exact table disagrees.
inline LeadingTerm wg_unitary_leading(int n, const Partition& mu) {
    const RationalFunction wg = wg_unitary(n, mu);
    const LeadingTerm expected{n + (n - mu.length()), moebius_of_type(mu)};
    if (wg.order_at_infinity() != -expected.exponent || wg.leading_at_infinity() != BigRat(expected.coefficient))
        throw error("unitary Wg(" + mu.str() + ") does not have leading term Moeb * d^-(n+|sigma|)");
    return expected;
}

/// Order at infinity of d^{exponent} f - coefficient, i.e. where the
/// correction to the leading term starts. Returns a very negative number
/// when the correction vanishes identically.
inline int correction_order(const RationalFunction& f, const LeadingTerm& lead) {
    const RationalFunction scaled = f * RationalFunction(Poly::monomial(1, static_cast<std::size_t>(lead.exponent)));
    return (scaled - RationalFunction(BigRat(lead.coefficient))).order_at_infinity();
}

} // namespace weingarten
