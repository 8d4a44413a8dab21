#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "bigrat.hpp"

namespace weingarten {

/// Integer partition: non-increasing positive parts. Labels irreducible
/// characters, cycle types and coset types.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t k = 0; k < parts_.size(); ++k) {
            if (parts_[k] <= 0) throw error("partition parts must be positive");
            if (k > 0 && parts_[k] > parts_[k - 1]) throw error("partition parts must be non-increasing");
        }
    }
    /// Sorts arbitrary positive parts into a partition.
    static Partition from_unsorted(std::vector<int> parts) {
        std::sort(parts.begin(), parts.end(), std::greater<>());
        return Partition(std::move(parts));
    }

    const std::vector<int>& parts() const { return parts_; }
    int size() const {
        int s = 0;
        for (int p : parts_) s += p;
        return s;
    }
    int length() const { return static_cast<int>(parts_.size()); }
    int operator[](std::size_t k) const { return k < parts_.size() ? parts_[k] : 0; }
    bool empty() const { return parts_.empty(); }

    /// Multiplicity of part value k.
    int multiplicity(int k) const { return static_cast<int>(std::count(parts_.begin(), parts_.end(), k)); }

    /// Conjugate (transposed) diagram.
    Partition conjugate() const {
        std::vector<int> c;
        for (int col = 1; !parts_.empty() && col <= parts_.front(); ++col) {
            int h = 0;
            for (int p : parts_) h += p >= col;
            c.push_back(h);
        }
        return Partition(std::move(c));
    }

    /// Every part doubled: lambda -> 2*lambda.
    Partition doubled() const {
        std::vector<int> c = parts_;
        for (int& p : c) p *= 2;
        return Partition(std::move(c));
    }

    /// "k1,k2,..." (empty string for the empty partition).
    std::string str() const {
        std::string s;
        for (std::size_t k = 0; k < parts_.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(parts_[k]);
        }
        return s;
    }

    friend auto operator<=>(const Partition&, const Partition&) = default;
    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
};

/// Parses "k1,k2,..."; parts must already be non-increasing.
inline Partition parse_partition(std::string_view s) {
    std::vector<int> parts;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw parse_error("empty part in partition '" + std::string(s) + "'");
        for (char c : cur)
            if (c < '0' || c > '9') throw parse_error("bad partition '" + std::string(s) + "'");
        if (cur.size() > 6) throw parse_error("part too large in '" + std::string(s) + "'");
        parts.push_back(std::stoi(cur));
        cur.clear();
    };
    for (char c : s) {
        if (c == ' ' || c == '\t') continue;
        if (c == ',') flush();
        else cur += c;
    }
    if (!cur.empty() || !parts.empty()) flush();
    try {
        return Partition(std::move(parts));
    } catch (const error& e) {
        throw parse_error("bad partition '" + std::string(s) + "': " + e.what());
    }
}

/// All partitions of n in reverse-lexicographic order: [n], [n-1,1], ..., [1^n].
inline std::vector<Partition> partitions_of(int n) {
    if (n < 0) throw error("partitions_of: negative n");
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int maxPart) -> void {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(remaining, maxPart); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

/// Size of the centralizer of a permutation with cycle type mu:
/// prod_i i^{m_i} m_i!.
inline BigInt centralizer_size(const Partition& mu) {
    BigInt z = 1;
    const int n = mu.size();
    for (int i = 1; i <= n; ++i) {
        const int m = mu.multiplicity(i);
        for (int k = 0; k < m; ++k) z *= i;
        z *= factorial(static_cast<unsigned>(m));
    }
    return z;
}

/// Number of permutations of cycle type mu: n! / z_mu.
inline BigInt class_size(const Partition& mu) {
    return factorial(static_cast<unsigned>(mu.size())) / centralizer_size(mu);
}

inline std::ostream& operator<<(std::ostream& os, const Partition& x) { return os << x.str(); }

} // namespace weingarten
