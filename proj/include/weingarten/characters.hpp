#pragma once

#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "permutation.hpp"
#include "rational_function.hpp"

namespace weingarten {

namespace detail {

inline Partition from_beta(std::vector<int> beta) {
    std::sort(beta.begin(), beta.end(), std::greater<>());
    const int len = static_cast<int>(beta.size());
    std::vector<int> parts;
    for (int i = 0; i < len; ++i) {
        const int p = beta[i] - (len - 1 - i);
        if (p > 0) parts.push_back(p);
    }
    return Partition(std::move(parts));
}

inline BigInt murnaghan_nakayama(const Partition& lambda, const std::vector<int>& mu, std::size_t from);

class CharacterCache {
public:
    using Key = std::pair<std::vector<int>, std::vector<int>>;

    static CharacterCache& instance() {
        static CharacterCache cache;
        return cache;
    }
    bool find(const Key& k, BigInt& out) const {
        std::shared_lock lock(mutex_);
        auto it = table_.find(k);
        if (it == table_.end()) return false;
        out = it->second;
        return true;
    }
    void insert(Key k, const BigInt& v) {
        std::unique_lock lock(mutex_);
        table_.emplace(std::move(k), v);
    }

private:
    mutable std::shared_mutex mutex_;
    std::map<Key, BigInt> table_;
};

/// chi^lambda on the cycle type mu[from..], removing rim hooks of length
/// mu[from] first.
inline BigInt murnaghan_nakayama(const Partition& lambda, const std::vector<int>& mu, std::size_t from) {
    if (from == mu.size()) return lambda.empty() ? 1 : 0;
    CharacterCache::Key key{lambda.parts(), std::vector<int>(mu.begin() + static_cast<long>(from), mu.end())};
    BigInt cached;
    if (CharacterCache::instance().find(key, cached)) return cached;

    const int k = mu[from];
    const int len = lambda.length();
    std::vector<int> beta(len);
    for (int i = 0; i < len; ++i) beta[i] = lambda[i] + (len - 1 - i);

    BigInt total = 0;
    for (int i = 0; i < len; ++i) {
        const int target = beta[i] - k;
        if (target < 0) continue;
        if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
        int between = 0;
        for (int b : beta) between += b > target && b < beta[i];
        std::vector<int> next = beta;
        next[i] = target;
        const BigInt sub = murnaghan_nakayama(from_beta(std::move(next)), mu, from + 1);
        if (between % 2) total -= sub;
        else total += sub;
    }
    CharacterCache::instance().insert(std::move(key), total);
    return total;
}

} // namespace detail

/// Irreducible character chi^lambda of S_n on the class of cycle type mu,
/// by the Murnaghan-Nakayama rule. Memoized process-wide.
inline BigInt character(const Partition& lambda, const Partition& mu) {
    if (lambda.size() != mu.size()) throw error("character: partitions of different sizes");
    return detail::murnaghan_nakayama(lambda, mu.parts(), 0);
}

/// chi^lambda(e) = number of standard Young tableaux, by the hook length formula.
inline BigInt hook_length_dimension(const Partition& lambda) {
    const Partition conj = lambda.conjugate();
    BigInt prod = 1;
    for (int i = 0; i < lambda.length(); ++i)
        for (int j = 0; j < lambda[i]; ++j) prod *= (lambda[i] - j - 1) + (conj[j] - i - 1) + 1;
    return factorial(static_cast<unsigned>(lambda.size())) / prod;
}

/// s_{lambda,d}(1) = prod over cells (d + j - i) / hook(i,j): the dimension
/// of the U(d) irreducible labelled by lambda, as a polynomial in d.
inline RationalFunction schur_dim(const Partition& lambda) {
    const Partition conj = lambda.conjugate();
    Poly num = 1;
    BigInt hooks = 1;
    for (int i = 0; i < lambda.length(); ++i)
        for (int j = 0; j < lambda[i]; ++j) {
            num *= Poly{BigRat(j - i), BigRat(1)};
            hooks *= (lambda[i] - j - 1) + (conj[j] - i - 1) + 1;
        }
    num /= BigRat(hooks);
    return num;
}

inline BigInt catalan(unsigned n) { return factorial(2 * n) / (factorial(n) * factorial(n + 1)); }

/// Moebius function of the non-crossing-partition lattice, as a function
/// of cycle type: prod_i (-1)^{mu_i - 1} c_{mu_i - 1}.
inline BigInt moebius_of_type(const Partition& mu) {
    BigInt r = 1;
    for (int p : mu.parts()) {
        r *= catalan(static_cast<unsigned>(p - 1));
        if ((p - 1) % 2) r = -r;
    }
    return r;
}

inline BigInt moebius_perm(const Permutation& sigma) { return moebius_of_type(cycle_type(sigma)); }

} // namespace weingarten
