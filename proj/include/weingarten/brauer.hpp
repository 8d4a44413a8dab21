#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "characters.hpp"
#include "linalg.hpp"

namespace weingarten {

inline constexpr int default_gram_cap = 5;
inline constexpr int default_eigenvalue_cap = 4;

/// Fixed-point-free involution on {0..2n-1}: a perfect matching of 2n points.
class Pairing {
public:
    Pairing() = default;
    explicit Pairing(std::vector<int> partner) : partner_(std::move(partner)) {
        const int m = static_cast<int>(partner_.size());
        if (m % 2) throw error("pairing needs an even number of points");
        for (int k = 0; k < m; ++k) {
            const int p = partner_[k];
            if (p < 0 || p >= m || p == k || partner_[p] != k) throw error("not a fixed-point-free involution");
        }
    }
    /// {(0,1),(2,3),...}: the identity of the Brauer algebra.
    static Pairing identity(int n) {
        std::vector<int> v(2 * n);
        for (int k = 0; k < n; ++k) {
            v[2 * k] = 2 * k + 1;
            v[2 * k + 1] = 2 * k;
        }
        return Pairing(std::move(v));
    }
    /// Parses "(1,2)(3,4)" (1-based) on 2n points.
    static Pairing parse(std::string_view s, int n);

    int n() const { return static_cast<int>(partner_.size()) / 2; }
    int points() const { return static_cast<int>(partner_.size()); }
    int operator()(int k) const { return partner_[k]; }
    const std::vector<int>& partner() const { return partner_; }

    /// Pairs (a, b) with a < b, ordered by a.
    std::vector<std::pair<int, int>> pairs() const {
        std::vector<std::pair<int, int>> out;
        for (int k = 0; k < points(); ++k)
            if (k < partner_[k]) out.emplace_back(k, partner_[k]);
        return out;
    }

    Permutation as_permutation() const { return Permutation(partner_); }

    /// sigma p sigma^{-1}: the pairing {sigma(a), sigma(b)} for each pair {a, b}.
    Pairing conjugated_by(const std::vector<int>& sigma) const {
        std::vector<int> out(partner_.size());
        for (std::size_t a = 0; a < partner_.size(); ++a) out[sigma[a]] = sigma[partner_[a]];
        Pairing p;
        p.partner_ = std::move(out);
        return p;
    }

    /// Sign of the permutation sending (1,2,3,4,...) to (a1,b1,a2,b2,...)
    /// where the pairs (a_k < b_k) are listed by increasing a_k.
    int sign() const {
        std::vector<int> seq;
        for (auto [a, b] : pairs()) {
            seq.push_back(a);
            seq.push_back(b);
        }
        int inversions = 0;
        for (std::size_t x = 0; x < seq.size(); ++x)
            for (std::size_t y = x + 1; y < seq.size(); ++y) inversions += seq[x] > seq[y];
        return inversions % 2 ? -1 : 1;
    }

    /// 64-bit key (4 bits per point); valid for up to 16 points.
    std::uint64_t key() const {
        std::uint64_t k = 0;
        for (std::size_t a = 0; a < partner_.size(); ++a) k |= static_cast<std::uint64_t>(partner_[a]) << (4 * a);
        return k;
    }

    /// "(1,2)(3,4)", 1-based, pairs ordered by their smaller point.
    std::string str() const {
        std::string s;
        for (auto [a, b] : pairs()) s += "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
        return s;
    }

    friend bool operator==(const Pairing&, const Pairing&) = default;
    friend auto operator<=>(const Pairing&, const Pairing&) = default;

private:
    std::vector<int> partner_;
};

inline Pairing Pairing::parse(std::string_view s, int n) {
    std::vector<int> partner(2 * n, -1);
    std::size_t pos = 0;
    auto bad = [&](const std::string& why) { return parse_error("bad pairing '" + std::string(s) + "': " + why); };
    auto number = [&]() {
        while (pos < s.size() && s[pos] == ' ') ++pos;
        int v = 0;
        const std::size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') v = v * 10 + (s[pos++] - '0');
        if (start == pos) throw bad("expected a point");
        while (pos < s.size() && s[pos] == ' ') ++pos;
        if (v < 1 || v > 2 * n) throw bad("point out of range");
        return v - 1;
    };
    while (pos < s.size()) {
        if (s[pos] == ' ') {
            ++pos;
            continue;
        }
        if (s[pos] != '(') throw bad("expected '('");
        ++pos;
        const int a = number();
        if (pos >= s.size() || s[pos] != ',') throw bad("expected ','");
        ++pos;
        const int b = number();
        if (pos >= s.size() || s[pos] != ')') throw bad("expected ')'");
        ++pos;
        if (a == b || partner[a] != -1 || partner[b] != -1) throw bad("point used twice");
        partner[a] = b;
        partner[b] = a;
    }
    for (int p : partner)
        if (p < 0) throw bad("not every point is paired");
    return Pairing(std::move(partner));
}

inline long double_factorial_odd(int n) {  // (2n-1)!!
    long r = 1;
    for (int k = 1; k <= 2 * n - 1; k += 2) r *= k;
    return r;
}

/// All (2n-1)!! pairings of 2n points. Order: the smallest unpaired point
/// is matched with each larger free point in increasing order, recursively.
inline std::vector<Pairing> enumerate_pairings(int n) {
    if (n < 1) throw error("enumerate_pairings needs n >= 1");
    if (n > 8) throw cap_exceeded("enumerate_pairings supports at most 16 points");
    std::vector<Pairing> out;
    out.reserve(static_cast<std::size_t>(double_factorial_odd(n)));
    std::vector<int> partner(2 * n, -1);
    auto rec = [&](auto&& self) -> void {
        int a = 0;
        while (a < 2 * n && partner[a] != -1) ++a;
        if (a == 2 * n) {
            out.emplace_back(partner);
            return;
        }
        for (int b = a + 1; b < 2 * n; ++b) {
            if (partner[b] != -1) continue;
            partner[a] = b;
            partner[b] = a;
            self(self);
            partner[a] = partner[b] = -1;
        }
    };
    rec(rec);
    return out;
}

namespace detail {

inline void require_same_size(const Pairing& a, const Pairing& b) {
    if (a.points() != b.points()) throw error("pairings on different numbers of points");
}

/// Half-sizes of the orbits of the group generated by two pairings.
inline std::vector<int> orbit_half_sizes(const Pairing& p1, const Pairing& p2) {
    const int m = p1.points();
    std::vector<char> seen(m, 0);
    std::vector<int> halves;
    for (int s = 0; s < m; ++s) {
        if (seen[s]) continue;
        // Walk the alternating cycle s -p1-> . -p2-> . ...
        int len = 0, cur = s;
        bool useFirst = true;
        do {
            seen[cur] = 1;
            cur = useFirst ? p1(cur) : p2(cur);
            useFirst = !useFirst;
            ++len;
        } while (!(cur == s && useFirst));
        halves.push_back(len / 2);
    }
    return halves;
}

} // namespace detail

/// l(p1, p2) = |p1 p2| / 2.
inline int pairing_distance(const Pairing& p1, const Pairing& p2) {
    detail::require_same_size(p1, p2);
    const Permutation prod = p1.as_permutation() * p2.as_permutation();
    const int len = transposition_length(prod);
    return len / 2;
}

/// Partition (n_1 >= n_2 >= ...) of n where 2n_i are the orbit sizes of <p1, p2>.
inline Partition coset_type(const Pairing& p1, const Pairing& p2) {
    detail::require_same_size(p1, p2);
    return Partition::from_unsorted(detail::orbit_half_sizes(p1, p2));
}

inline BigInt moebius_pairing(const Pairing& p1, const Pairing& p2) { return moebius_of_type(coset_type(p1, p2)); }

/// Lookup from pairing to its position in enumerate_pairings(n).
class PairingIndex {
public:
    explicit PairingIndex(const std::vector<Pairing>& order) {
        map_.reserve(order.size() * 2);
        for (std::size_t k = 0; k < order.size(); ++k) map_.emplace(order[k].key(), k);
    }
    std::size_t operator()(const Pairing& p) const { return map_.at(p.key()); }

private:
    std::unordered_map<std::uint64_t, std::size_t> map_;
};

/// Gram matrix of the Brauer representation: entry (p1, p2) = d^{n - l(p1, p2)}.
/// Rows/columns follow enumerate_pairings(n).
struct GramMatrix {
    int n = 0;
    std::vector<Pairing> order;
    std::vector<int> distance;  // row-major l(p1, p2)

    std::size_t size() const { return order.size(); }
    int exponent(std::size_t r, std::size_t c) const { return n - distance[r * order.size() + c]; }
    Poly entry(std::size_t r, std::size_t c) const { return Poly::monomial(1, static_cast<std::size_t>(exponent(r, c))); }

    Matrix<Poly> symbolic() const {
        Matrix<Poly> m(size(), size());
        for (std::size_t r = 0; r < size(); ++r)
            for (std::size_t c = 0; c < size(); ++c) m(r, c) = entry(r, c);
        return m;
    }
    Matrix<BigRat> at(const BigRat& d) const {
        std::vector<BigRat> powers(n + 1, BigRat(1));
        for (int k = 1; k <= n; ++k) powers[k] = powers[k - 1] * d;
        Matrix<BigRat> m(size(), size());
        for (std::size_t r = 0; r < size(); ++r)
            for (std::size_t c = 0; c < size(); ++c) m(r, c) = powers[exponent(r, c)];
        return m;
    }
};

inline GramMatrix gram_matrix(int n, int cap = default_gram_cap) {
    if (n < 1) throw error("gram_matrix needs n >= 1");
    if (n > cap) throw cap_exceeded("gram matrix for n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    GramMatrix g;
    g.n = n;
    g.order = enumerate_pairings(n);
    const std::size_t size = g.order.size();
    g.distance.assign(size * size, 0);
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = r + 1; c < size; ++c) {
            const int l = pairing_distance(g.order[r], g.order[c]);
            g.distance[r * size + c] = g.distance[c * size + r] = l;
        }
    return g;
}

/// Census of S_{2n} acting on the identity pairing: for every cycle type
/// of sigma and every pairing p, how many sigma of that type send Id to p.
/// Basis for the eigenvalue formula and the isotypic projectors.
struct SymmetricGroupCensus {
    int n = 0;
    std::vector<Pairing> order;
    std::vector<Partition> classes;       // partitions of 2n
    std::vector<std::vector<long>> hits;  // hits[class][pairing]
};

namespace detail {

inline SymmetricGroupCensus build_census(int n) {
    SymmetricGroupCensus c;
    c.n = n;
    c.order = enumerate_pairings(n);
    c.classes = partitions_of(2 * n);
    std::map<Partition, std::size_t> classIndex;
    for (std::size_t k = 0; k < c.classes.size(); ++k) classIndex[c.classes[k]] = k;
    c.hits.assign(c.classes.size(), std::vector<long>(c.order.size(), 0));
    const PairingIndex index(c.order);
    const Pairing id = Pairing::identity(n);
    for_each_permutation(2 * n, [&](const std::vector<int>& sigma) {
        const std::size_t cls = classIndex.at(cycle_type(Permutation(sigma)));
        ++c.hits[cls][index(id.conjugated_by(sigma))];
    });
    return c;
}

} // namespace detail

inline const SymmetricGroupCensus& symmetric_group_census(int n, int cap = default_eigenvalue_cap) {
    if (n < 1) throw error("census needs n >= 1");
    if (n > cap) throw cap_exceeded("summation over S_" + std::to_string(2 * n) + " exceeds cap n=" + std::to_string(cap));
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const SymmetricGroupCensus>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<const SymmetricGroupCensus>(detail::build_census(n));
    return *slot;
}

/// Eigenvalue z_lambda of the Gram operator on the 2*lambda isotypic block:
///   z = sum_{sigma in S_2n} chi^{2 lambda}(sigma) d^{n - l(sigma(Id), Id)}
///       / sum_{sigma in O_n} chi^{2 lambda}(sigma),
/// with O_n the stabilizer of the identity pairing.
inline RationalFunction z_eigenvalue(const Partition& lambda, int cap = default_eigenvalue_cap) {
    const int n = lambda.size();
    const SymmetricGroupCensus& census = symmetric_group_census(n, cap);
    const Partition shape = lambda.doubled();
    const Pairing id = Pairing::identity(n);
    std::vector<int> dist(census.order.size());
    for (std::size_t p = 0; p < census.order.size(); ++p) dist[p] = pairing_distance(census.order[p], id);

    Poly numerator;
    BigInt stabilizerSum = 0;
    for (std::size_t cls = 0; cls < census.classes.size(); ++cls) {
        const BigInt chi = character(shape, census.classes[cls]);
        if (chi == 0) continue;
        for (std::size_t p = 0; p < census.order.size(); ++p) {
            const long h = census.hits[cls][p];
            if (h == 0) continue;
            numerator += Poly::monomial(BigRat(chi * h), static_cast<std::size_t>(n - dist[p]));
            if (dist[p] == 0) stabilizerSum += chi * h;
        }
    }
    if (stabilizerSum == 0) throw error("z_eigenvalue: vanishing stabilizer character sum for " + lambda.str());
    return RationalFunction(numerator) / RationalFunction(BigRat(stabilizerSum));
}

/// Checks that the dimensions of the S_2n irreducibles of shape 2*lambda,
/// lambda |- n, add up to |P_2n| = (2n-1)!!.
inline bool dimension_identity_check(int n) {
    BigInt total = 0;
    for (const auto& lambda : partitions_of(n)) total += hook_length_dimension(lambda.doubled());
    return total == BigInt(double_factorial_odd(n));
}

/// Value of the isotypic projector P^{2 lambda} on C(P_2n) at (p, Id),
/// keyed by coset_type(p, Id); P is S_2n-equivariant, so this determines
/// the whole matrix: P(p1, p2) depends on coset_type(p1, p2) only.
///   P(p1, p2) = dim(2 lambda)/(2n)! * sum_{sigma : sigma p2 sigma^-1 = p1} chi^{2 lambda}(sigma)
inline std::map<Partition, BigRat> isotypic_projector_by_type(const Partition& lambda, int cap = default_eigenvalue_cap) {
    const int n = lambda.size();
    const SymmetricGroupCensus& census = symmetric_group_census(n, cap);
    const Partition shape = lambda.doubled();
    const BigRat scale(hook_length_dimension(shape), factorial(static_cast<unsigned>(2 * n)));
    const Pairing id = Pairing::identity(n);
    std::map<Partition, BigRat> out;
    std::vector<BigInt> sums(census.order.size(), BigInt(0));
    for (std::size_t cls = 0; cls < census.classes.size(); ++cls) {
        const BigInt chi = character(shape, census.classes[cls]);
        if (chi == 0) continue;
        for (std::size_t p = 0; p < census.order.size(); ++p) sums[p] += chi * census.hits[cls][p];
    }
    for (std::size_t p = 0; p < census.order.size(); ++p) {
        const Partition t = coset_type(census.order[p], id);
        const BigRat v = scale * BigRat(sums[p]);
        auto [it, inserted] = out.emplace(t, v);
        if (!inserted && it->second != v) throw error("isotypic projector is not a coset-type function");
    }
    return out;
}

} // namespace weingarten
