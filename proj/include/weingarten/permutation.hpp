#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "partition.hpp"

namespace weingarten {

/// Element of S_n stored as a 0-based image array: sigma(i) = images()[i].
/// Products compose right to left: (a * b)(i) = a(b(i)).
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<char> seen(images_.size(), 0);
        for (int v : images_) {
            if (v < 0 || v >= static_cast<int>(images_.size()) || seen[v]) throw error("not a permutation");
            seen[v] = 1;
        }
    }
    static Permutation identity(int n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 0);
        return Permutation(std::move(v), unchecked{});
    }
    /// From 1-based images [sigma(1), ..., sigma(n)].
    static Permutation from_one_based(const std::vector<int>& images) {
        std::vector<int> v(images);
        for (int& x : v) --x;
        return Permutation(std::move(v));
    }
    /// From cycle notation like "(1 2)(3 4 5)" or "(1,2)(3,4,5)" on n points.
    static Permutation from_cycles(std::string_view s, int n);

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[i]; }
    const std::vector<int>& images() const { return images_; }

    Permutation inverse() const {
        std::vector<int> inv(images_.size());
        for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<int>(i);
        return Permutation(std::move(inv), unchecked{});
    }

    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        if (a.size() != b.size()) throw error("permutation size mismatch");
        std::vector<int> r(b.images_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.images_[b.images_[i]];
        return Permutation(std::move(r), unchecked{});
    }

    /// Cycles as lists of 0-based points, each starting at its smallest point.
    std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<char> seen(images_.size(), 0);
        for (std::size_t s = 0; s < images_.size(); ++s) {
            if (seen[s]) continue;
            std::vector<int> c;
            for (int i = static_cast<int>(s); !seen[i]; i = images_[i]) {
                seen[i] = 1;
                c.push_back(i);
            }
            out.push_back(std::move(c));
        }
        return out;
    }

    int cycle_count() const {
        int count = 0;
        std::vector<char> seen(images_.size(), 0);
        for (std::size_t s = 0; s < images_.size(); ++s) {
            if (seen[s]) continue;
            ++count;
            for (int i = static_cast<int>(s); !seen[i]; i = images_[i]) seen[i] = 1;
        }
        return count;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

    /// Cycle notation with 1-based points, fixed points omitted; "()" for e.
    std::string str() const {
        std::string s;
        for (const auto& c : cycles()) {
            if (c.size() < 2) continue;
            s += "(";
            for (std::size_t k = 0; k < c.size(); ++k) {
                if (k) s += " ";
                s += std::to_string(c[k] + 1);
            }
            s += ")";
        }
        return s.empty() ? "()" : s;
    }

private:
    struct unchecked {};
    Permutation(std::vector<int> images, unchecked) : images_(std::move(images)) {}

    std::vector<int> images_;
};

/// Sorted cycle lengths, fixed points included.
inline Partition cycle_type(const Permutation& sigma) {
    std::vector<int> lens;
    for (const auto& c : sigma.cycles()) lens.push_back(static_cast<int>(c.size()));
    return Partition::from_unsorted(std::move(lens));
}

/// |sigma|: the minimal number of transpositions whose product is sigma,
/// i.e. n minus the number of cycles.
inline int transposition_length(const Permutation& sigma) { return sigma.size() - sigma.cycle_count(); }

inline int sign(const Permutation& sigma) { return transposition_length(sigma) % 2 ? -1 : 1; }

/// Some permutation of the given cycle type (cycles on consecutive points).
inline Permutation permutation_of_type(const Partition& mu) {
    std::vector<int> img(mu.size());
    int start = 0;
    for (int len : mu.parts()) {
        for (int k = 0; k < len; ++k) img[start + k] = start + (k + 1) % len;
        start += len;
    }
    return Permutation(std::move(img));
}

/// Calls f(perm) for every permutation of {0..n-1}, lexicographic order.
template <class F>
void for_each_permutation(int n, F&& f) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    do {
        f(static_cast<const std::vector<int>&>(v));
    } while (std::next_permutation(v.begin(), v.end()));
}

inline Permutation Permutation::from_cycles(std::string_view s, int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::vector<char> used(n, 0);
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == ',')) ++pos;
    };
    skip();
    while (pos < s.size()) {
        if (s[pos] != '(') throw parse_error("expected '(' in cycle notation '" + std::string(s) + "'");
        ++pos;
        std::vector<int> cyc;
        for (;;) {
            skip();
            if (pos >= s.size()) throw parse_error("unterminated cycle in '" + std::string(s) + "'");
            if (s[pos] == ')') {
                ++pos;
                break;
            }
            int v = 0;
            const std::size_t start = pos;
            while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') v = v * 10 + (s[pos++] - '0');
            if (start == pos || v < 1 || v > n) throw parse_error("bad point in cycle notation '" + std::string(s) + "'");
            if (used[v - 1]) throw parse_error("repeated point in '" + std::string(s) + "'");
            used[v - 1] = 1;
            cyc.push_back(v - 1);
        }
        for (std::size_t k = 0; k < cyc.size(); ++k) img[cyc[k]] = cyc[(k + 1) % cyc.size()];
        skip();
    }
    return Permutation(std::move(img));
}

} // namespace weingarten
