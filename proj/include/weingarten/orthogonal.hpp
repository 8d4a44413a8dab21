#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "brauer.hpp"
#include "unitary.hpp"

namespace weingarten {

inline constexpr int default_orthogonal_cap = 5;
inline constexpr int default_character_form_cap = 3;

/// Orthogonal (or, after d -> -d, symplectic) Weingarten function for one
/// n. The entry for (p1, p2) depends only on coset_type(p1, p2).
struct OrthoWgTable {
    int n = 0;
    std::map<Partition, RationalFunction> byCosetType;

    const RationalFunction& at(const Partition& type) const {
        auto it = byCosetType.find(type);
        if (it == byCosetType.end()) throw error("coset type " + type.str() + " is not a partition of " + std::to_string(n));
        return it->second;
    }
    const RationalFunction& operator()(const Pairing& p1, const Pairing& p2) const { return at(coset_type(p1, p2)); }

    /// Full matrix over enumerate_pairings(n).
    Matrix<RationalFunction> matrix() const {
        const auto order = enumerate_pairings(n);
        Matrix<RationalFunction> m(order.size(), order.size());
        for (std::size_t r = 0; r < order.size(); ++r)
            for (std::size_t c = 0; c < order.size(); ++c) m(r, c) = (*this)(order[r], order[c]);
        return m;
    }
};

namespace detail {

/// Wg commutes with the S_2n action, so Wg(., Id) is a function f of the
/// coset type and Gram * Wg = I collapses to one equation per coset type:
///   sum_nu [ sum_{q : type(q, Id) = nu} d^{n - l(r_mu, q)} ] f(nu) = [mu = 1^n]
/// with r_mu any pairing of coset type mu relative to Id.
inline OrthoWgTable build_orthogonal_table(int n) {
    const auto types = partitions_of(n);
    std::map<Partition, std::size_t> typeIndex;
    for (std::size_t k = 0; k < types.size(); ++k) typeIndex[types[k]] = k;

    const auto pairings = enumerate_pairings(n);
    const Pairing id = Pairing::identity(n);
    std::vector<std::size_t> typeOf(pairings.size());
    std::vector<int> representative(types.size(), -1);
    for (std::size_t q = 0; q < pairings.size(); ++q) {
        typeOf[q] = typeIndex.at(coset_type(pairings[q], id));
        if (representative[typeOf[q]] < 0) representative[typeOf[q]] = static_cast<int>(q);
    }

    const std::size_t k = types.size();
    Matrix<Poly> system(k, k);
    for (std::size_t mu = 0; mu < k; ++mu) {
        const Pairing& r = pairings[representative[mu]];
        std::vector<std::vector<long>> counts(k, std::vector<long>(n + 1, 0));
        for (std::size_t q = 0; q < pairings.size(); ++q) ++counts[typeOf[q]][n - pairing_distance(r, pairings[q])];
        for (std::size_t nu = 0; nu < k; ++nu) {
            Poly entry;
            for (int e = 0; e <= n; ++e)
                if (counts[nu][e]) entry += Poly::monomial(BigRat(counts[nu][e]), static_cast<std::size_t>(e));
            system(mu, nu) = std::move(entry);
        }
    }
    Matrix<Poly> rhs(k, 1);
    rhs(typeIndex.at(Partition(std::vector<int>(n, 1))), 0) = 1;
    const Matrix<RationalFunction> f = bareiss_solve(system, rhs);

    OrthoWgTable t;
    t.n = n;
    for (std::size_t nu = 0; nu < k; ++nu) t.byCosetType.emplace(types[nu], f(nu, 0));
    return t;
}

} // namespace detail

/// Orthogonal Weingarten table: the inverse of the Gram matrix over Q(d),
/// collapsed to coset types. Cached per n.
inline const OrthoWgTable& wg_orthogonal(int n, int cap = default_orthogonal_cap) {
    if (n < 1) throw error("orthogonal Weingarten needs n >= 1");
    if (n > cap) throw cap_exceeded("orthogonal n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const OrthoWgTable>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<const OrthoWgTable>(detail::build_orthogonal_table(n));
    return *slot;
}

/// Direct inverse of the full Gram matrix by fraction-free elimination.
/// Independent of the coset-type reduction; intended for small n.
inline Matrix<RationalFunction> gram_inverse(int n, int cap = 3) {
    if (n > cap) throw cap_exceeded("full Gram inversion for n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    return bareiss_inverse(gram_matrix(n).symbolic());
}

/// Gram * Wg == I over Q(d), checked on the full (2n-1)!! square matrix.
/// Wg is brought to a common denominator q so the check reduces to the
/// polynomial identity Gram * (q Wg) == q I.
inline bool gram_times_wg_is_identity(int n, int cap = 4) {
    if (n > cap) throw cap_exceeded("Gram * Wg check for n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    const OrthoWgTable& table = wg_orthogonal(n);
    Poly common = 1;
    for (const auto& [type, f] : table.byCosetType) common = exact_div(common * f.den(), gcd(common, f.den()));
    std::map<Partition, Poly> scaled;
    for (const auto& [type, f] : table.byCosetType) scaled.emplace(type, f.num() * exact_div(common, f.den()));

    const GramMatrix g = gram_matrix(n);
    const std::size_t size = g.size();
    std::vector<const Poly*> w(size * size);
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < size; ++c) w[r * size + c] = &scaled.at(coset_type(g.order[r], g.order[c]));
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < size; ++c) {
            std::vector<BigRat> acc(static_cast<std::size_t>(common.degree() + n + 1), BigRat(0));
            for (std::size_t k = 0; k < size; ++k) {
                const std::size_t shift = static_cast<std::size_t>(g.exponent(r, k));
                const auto& coeffs = w[k * size + c]->coefficients();
                for (std::size_t e = 0; e < coeffs.size(); ++e) acc[e + shift] += coeffs[e];
            }
            if (Poly(std::move(acc)) != (r == c ? common : Poly{})) return false;
        }
    return true;
}

/// <p1, Wg p2> from the spectral decomposition of the Gram operator:
///   sum_lambda  <P^lambda p1, P^lambda p2> / z_lambda,
/// where P^lambda = dim(2 lambda)/(2n)! sum_sigma chi^{2 lambda}(sigma) sigma
/// projects C(P_2n) onto the 2 lambda isotypic block. Sums over all of S_2n.
inline RationalFunction wg_orthogonal_character_form(int n, const Pairing& p1, const Pairing& p2,
                                                     int cap = default_character_form_cap) {
    if (n > cap) throw cap_exceeded("character form for n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    if (p1.n() != n || p2.n() != n) throw error("pairings do not live on 2n points");
    const auto order = enumerate_pairings(n);
    const PairingIndex index(order);
    const auto shapes = partitions_of(n);
    const auto classes = partitions_of(2 * n);
    std::map<Partition, std::size_t> classIndex;
    for (std::size_t k = 0; k < classes.size(); ++k) classIndex[classes[k]] = k;

    // orbitCounts[class][q] = #{sigma of that class : sigma p = q}, for p = p1 and p = p2
    std::vector<std::vector<long>> from1(classes.size(), std::vector<long>(order.size(), 0));
    std::vector<std::vector<long>> from2 = from1;
    for_each_permutation(2 * n, [&](const std::vector<int>& sigma) {
        const std::size_t cls = classIndex.at(cycle_type(Permutation(sigma)));
        ++from1[cls][index(p1.conjugated_by(sigma))];
        ++from2[cls][index(p2.conjugated_by(sigma))];
    });

    const BigInt groupOrder = factorial(static_cast<unsigned>(2 * n));
    RationalFunction total;
    for (const auto& lambda : shapes) {
        const Partition shape = lambda.doubled();
        const BigRat scale(hook_length_dimension(shape), groupOrder);
        std::vector<BigRat> v1(order.size()), v2(order.size());
        for (std::size_t cls = 0; cls < classes.size(); ++cls) {
            const BigInt chi = character(shape, classes[cls]);
            if (chi == 0) continue;
            for (std::size_t q = 0; q < order.size(); ++q) {
                v1[q] += BigRat(chi * from1[cls][q]);
                v2[q] += BigRat(chi * from2[cls][q]);
            }
        }
        BigRat inner = 0;
        for (std::size_t q = 0; q < order.size(); ++q) inner += v1[q] * v2[q];
        inner *= scale * scale;
        if (inner != 0) total += RationalFunction(inner) / z_eigenvalue(lambda);
    }
    return total;
}

/// Index tuples for  int O_{i1 j1} ... O_{im jm} dO  (1-based).
struct OrthoMomentQuery {
    std::vector<int> i, j;
};

namespace detail {

/// Pairings p of the positions with labels[a] == labels[b] for every pair.
inline std::vector<Pairing> compatible_pairings(const std::vector<int>& labels) {
    const int m = static_cast<int>(labels.size());
    std::vector<Pairing> out;
    std::vector<int> partner(m, -1);
    auto rec = [&](auto&& self) -> void {
        int a = 0;
        while (a < m && partner[a] != -1) ++a;
        if (a == m) {
            out.emplace_back(partner);
            return;
        }
        for (int b = a + 1; b < m; ++b) {
            if (partner[b] != -1 || labels[b] != labels[a]) continue;
            partner[a] = b;
            partner[b] = a;
            self(self);
            partner[a] = partner[b] = -1;
        }
    };
    rec(rec);
    return out;
}

} // namespace detail

/// Exact Haar moment over O(d) as a rational function of d:
///   sum_{p1, p2} delta^{p1}_i delta^{p2}_j Wg(p1, p2).
/// Odd numbers of factors vanish without enumerating anything.
inline RationalFunction moment_orthogonal(const OrthoMomentQuery& q, int cap = default_orthogonal_cap) {
    if (q.i.size() != q.j.size()) throw error("moment_orthogonal: i and j must have equal lengths");
    for (const auto* v : {&q.i, &q.j})
        for (int x : *v)
            if (x < 1) throw error("moment_orthogonal: indices are 1-based positive integers");
    if (q.i.size() % 2) return {};
    const int n = static_cast<int>(q.i.size()) / 2;
    if (n == 0) return 1;
    if (n > cap) throw cap_exceeded("orthogonal moment of degree " + std::to_string(2 * n) + " exceeds cap");
    const auto left = detail::compatible_pairings(q.i);
    const auto right = detail::compatible_pairings(q.j);
    if (left.empty() || right.empty()) return {};
    std::map<Partition, long> counts;
    for (const auto& a : left)
        for (const auto& b : right) ++counts[coset_type(a, b)];
    const OrthoWgTable& table = wg_orthogonal(n, cap);
    RationalFunction total;
    for (const auto& [type, c] : counts) total += table.at(type) * RationalFunction(BigRat(c));
    return total;
}

/// Weingarten matrix at a fixed integer dimension d0, valid also when the
/// Gram matrix is singular (d0 < n): sum of P^lambda / z_lambda(d0) over
/// the lambda with z_lambda(d0) != 0. Exact; entries depend on coset type only.
struct OrthoRegularizedTable {
    int n = 0;
    int d0 = 0;
    std::map<Partition, BigRat> byCosetType;

    const BigRat& operator()(const Pairing& p1, const Pairing& p2) const { return byCosetType.at(coset_type(p1, p2)); }

    Matrix<BigRat> matrix() const {
        const auto order = enumerate_pairings(n);
        Matrix<BigRat> m(order.size(), order.size());
        for (std::size_t r = 0; r < order.size(); ++r)
            for (std::size_t c = 0; c < order.size(); ++c) m(r, c) = (*this)(order[r], order[c]);
        return m;
    }
};

inline OrthoRegularizedTable wg_orthogonal_regularized(int n, int d0, int cap = default_eigenvalue_cap) {
    if (d0 < 1) throw error("regularized Weingarten needs d0 >= 1");
    OrthoRegularizedTable t;
    t.n = n;
    t.d0 = d0;
    for (const auto& type : partitions_of(n)) t.byCosetType[type] = 0;
    for (const auto& lambda : partitions_of(n)) {
        const BigRat z = z_eigenvalue(lambda, cap)(d0);
        if (z == 0) continue;
        for (const auto& [type, value] : isotypic_projector_by_type(lambda, cap)) t.byCosetType[type] += value / z;
    }
    return t;
}

/// Moment at a fixed dimension from a regularized table.
inline BigRat moment_orthogonal_regularized(const OrthoMomentQuery& q, const OrthoRegularizedTable& table) {
    if (q.i.size() != q.j.size()) throw error("moment_orthogonal: i and j must have equal lengths");
    if (q.i.size() % 2) return 0;
    if (static_cast<int>(q.i.size()) != 2 * table.n) throw error("query degree does not match the table");
    for (const auto* v : {&q.i, &q.j})
        for (int x : *v)
            if (x < 1 || x > table.d0) throw error("index out of range for O(" + std::to_string(table.d0) + ")");
    BigRat total = 0;
    const auto left = detail::compatible_pairings(q.i);
    const auto right = detail::compatible_pairings(q.j);
    for (const auto& a : left)
        for (const auto& b : right) total += table(a, b);
    return total;
}

/// (n + l, Moeb) for a coset type with l = sum(n_i - 1); throws if the exact
/// table does not have that leading term.
inline LeadingTerm wg_orthogonal_leading(int n, const Partition& type, int cap = 4) {
    if (type.size() != n) throw error("coset type " + type.str() + " is not a partition of " + std::to_string(n));
    if (n > cap) throw cap_exceeded("orthogonal asymptotics checked up to n=" + std::to_string(cap));
    const RationalFunction& wg = wg_orthogonal(n).at(type);
    const LeadingTerm expected{n + (n - type.length()), moebius_of_type(type)};
    if (wg.order_at_infinity() != -expected.exponent || wg.leading_at_infinity() != BigRat(expected.coefficient))
        throw error("orthogonal Wg(" + type.str() + ") does not have leading term Moeb * d^-(n+l)");
    return expected;
}

// ---------------------------------------------------------------------------
// Symplectic group Sp(d) of 2d x 2d unitary matrices preserving the form
// <e_i, f_j> = delta_ij. Basis order: e_1..e_d, f_1..f_d (1-based indices
// 1..d and d+1..2d).

/// Orthogonal table with d replaced by -d in every entry.
inline OrthoWgTable wg_symplectic(int n, int cap = default_orthogonal_cap) {
    const OrthoWgTable& o = wg_orthogonal(n, cap);
    OrthoWgTable t;
    t.n = n;
    for (const auto& [type, f] : o.byCosetType) t.byCosetType.emplace(type, f.reflected());
    return t;
}

/// Entry (a, b) of the form matrix J, 1-based indices in 1..2d.
inline int symplectic_form(int d, int a, int b) {
    if (a <= d && b == a + d) return 1;
    if (a > d && b == a - d) return -1;
    return 0;
}

/// Signed contraction of a pairing against an index tuple:
///   sign(p) * prod_{pairs a < b} J(i_a, i_b).
inline int symplectic_contraction(int d, const Pairing& p, const std::vector<int>& idx) {
    int v = p.sign();
    for (auto [a, b] : p.pairs()) {
        v *= symplectic_form(d, idx[a], idx[b]);
        if (v == 0) return 0;
    }
    return v;
}

/// int_{Sp(d)} M_{i1 j1} ... M_{im jm} dM, exact. With the signed
/// contractions above, the symplectic Gram matrix is (-1)^n S G_O(-2d) S
/// (S = diag of pairing signs), so
///   E = (-1)^n sum_{p1,p2} c(p1,i) c(p2,j) WgSp(p1,p2)|_{D = 2d},
/// where WgSp is the d -> -d table. The sum is formed as a rational function
/// of D and reduced before evaluation, which cancels removable poles.
inline BigRat moment_symplectic(const OrthoMomentQuery& q, int d, int cap = default_orthogonal_cap) {
    if (d < 1) throw error("Sp(d) needs d >= 1");
    if (q.i.size() != q.j.size()) throw error("moment_symplectic: i and j must have equal lengths");
    for (const auto* v : {&q.i, &q.j})
        for (int x : *v)
            if (x < 1 || x > 2 * d) throw error("index out of range for Sp(" + std::to_string(d) + ")");
    if (q.i.size() % 2) return 0;
    const int n = static_cast<int>(q.i.size()) / 2;
    if (n == 0) return 1;
    if (n > cap) throw cap_exceeded("symplectic moment of degree " + std::to_string(2 * n) + " exceeds cap");

    const auto all = enumerate_pairings(n);
    std::vector<std::pair<const Pairing*, int>> left, right;
    for (const auto& p : all) {
        if (int c = symplectic_contraction(d, p, q.i)) left.emplace_back(&p, c);
        if (int c = symplectic_contraction(d, p, q.j)) right.emplace_back(&p, c);
    }
    std::map<Partition, long> weights;
    for (const auto& [a, ca] : left)
        for (const auto& [b, cb] : right) weights[coset_type(*a, *b)] += ca * cb;

    const OrthoWgTable table = wg_symplectic(n, cap);
    RationalFunction total;
    for (const auto& [type, w] : weights)
        if (w) total += table.at(type) * RationalFunction(BigRat(w));
    if (n % 2) total = -total;
    return total(2 * d);
}

} // namespace weingarten
