#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "haar.hpp"
#include "orthogonal.hpp"
#include "unitary.hpp"

namespace weingarten {

/// One factor M_{row,col} (1-based) of a moment, or its complex conjugate.
struct EntryFactor {
    int row = 1;
    int col = 1;
    bool conj = false;

    friend auto operator<=>(const EntryFactor&, const EntryFactor&) = default;
};

using EntryProduct = std::vector<EntryFactor>;

/// "1,1;2,2*;1,2": factors separated by ';', a trailing '*' conjugates.
inline EntryProduct parse_entry_product(std::string_view s) {
    EntryProduct out;
    auto bad = [&](const std::string& why) { return parse_error("bad query '" + std::string(s) + "': " + why); };
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    };
    auto number = [&] {
        skip();
        int v = 0;
        const std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) v = v * 10 + (s[pos++] - '0');
        if (pos == start || v < 1) throw bad("expected a positive index");
        skip();
        return v;
    };
    skip();
    if (pos == s.size()) return out;
    while (true) {
        EntryFactor f;
        f.row = number();
        if (pos >= s.size() || s[pos] != ',') throw bad("expected ','");
        ++pos;
        f.col = number();
        if (pos < s.size() && s[pos] == '*') {
            f.conj = true;
            ++pos;
            skip();
        }
        out.push_back(f);
        if (pos == s.size()) break;
        if (s[pos] != ';') throw bad("expected ';'");
        ++pos;
    }
    return out;
}

inline std::string to_string(const EntryProduct& p) {
    std::string s;
    for (const auto& f : p) {
        if (!s.empty()) s += ';';
        s += std::to_string(f.row) + "," + std::to_string(f.col) + (f.conj ? "*" : "");
    }
    return s;
}

inline void check_indices(Group g, int d, const EntryProduct& p) {
    const int size = matrix_size(g, d);
    for (const auto& f : p)
        if (f.row < 1 || f.col < 1 || f.row > size || f.col > size)
            throw error("index out of range for " + std::string(group_name(g)) + " d=" + std::to_string(d));
}

/// Exact Haar average of the product at dimension d.
inline BigRat exact_moment(Group g, int d, const EntryProduct& p) {
    if (d < 1) throw error("dimension must be >= 1");
    check_indices(g, d, p);
    switch (g) {
    case Group::unitary: {
        UnitaryMomentQuery q;
        for (const auto& f : p) {
            (f.conj ? q.iPrime : q.i).push_back(f.row);
            (f.conj ? q.jPrime : q.j).push_back(f.col);
        }
        if (!q.balanced()) return 0;
        return moment_unitary(q)(d);
    }
    case Group::orthogonal: {
        OrthoMomentQuery q;
        for (const auto& f : p) {
            q.i.push_back(f.row);
            q.j.push_back(f.col);
        }
        return moment_orthogonal(q)(d);
    }
    case Group::symplectic: {
        // conj(M) = J M J^{-1}, so conj(M_ab) = J(a, a') J(b, b') M_{a'b'}
        OrthoMomentQuery q;
        int sign = 1;
        for (const auto& f : p) {
            int a = f.row, b = f.col;
            if (f.conj) {
                const int ap = a <= d ? a + d : a - d, bp = b <= d ? b + d : b - d;
                sign *= symplectic_form(d, a, ap) * symplectic_form(d, b, bp);
                a = ap;
                b = bp;
            }
            q.i.push_back(a);
            q.j.push_back(b);
        }
        return sign * moment_symplectic(q, d);
    }
    }
    throw error("unknown group");
}

/// Random entry products with in-range indices and total degree in
/// [1, maxDegree]. Uniform indices almost always give a vanishing moment, so
/// three queries in four of even degree copy indices along a random pairing
/// of the factors (a random matching of plain and conjugated factors for U):
/// for O the paired factors share the index; for Sp they carry partner
/// indices e_i/f_i, or the same index when exactly one factor is conjugated.
/// Rows and columns use independent pairings.
inline std::vector<EntryProduct> random_queries(Group g, int d, int maxDegree, int count, std::uint64_t seed) {
    Philox4x32 rng(seed, 0xC0FFEE);
    auto below = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint32_t>(n)); };
    const int size = matrix_size(g, d);
    auto partner = [&](int a) { return a <= d ? a + d : a - d; };
    std::vector<EntryProduct> out;
    for (int k = 0; k < count; ++k) {
        const int degree = 1 + below(maxDegree);
        EntryProduct p(degree);
        for (auto& f : p) {
            f.row = 1 + below(size);
            f.col = 1 + below(size);
            f.conj = g == Group::symplectic && below(2);
        }
        if (g == Group::unitary)
            for (int a = 0; a < degree; ++a) p[a].conj = degree % 2 ? below(2) : a >= degree / 2;
        if (degree % 2 == 0 && below(4) != 0) {
            for (int side = 0; side < 2; ++side) {
                std::vector<int> free(degree);
                for (int a = 0; a < degree; ++a) free[a] = a;
                // Fisher-Yates; for U the first half is plain, the second conjugated
                for (int a = degree - 1; a > 0; --a) std::swap(free[a], free[below(a + 1)]);
                std::vector<std::pair<int, int>> pairs;
                if (g == Group::unitary) {
                    std::vector<int> plain, conj;
                    for (int a : free) (p[a].conj ? conj : plain).push_back(a);
                    for (std::size_t x = 0; x < plain.size(); ++x) pairs.emplace_back(plain[x], conj[x]);
                } else {
                    for (int a = 0; a < degree; a += 2) pairs.emplace_back(free[a], free[a + 1]);
                }
                for (auto [a, b] : pairs) {
                    int& ia = side ? p[a].col : p[a].row;
                    int& ib = side ? p[b].col : p[b].row;
                    ib = g == Group::symplectic && p[a].conj == p[b].conj ? partner(ia) : ia;
                }
            }
        }
        out.push_back(std::move(p));
    }
    return out;
}

inline std::complex<double> evaluate_product(const CMatrix& m, const EntryProduct& p) {
    std::complex<double> v = 1;
    for (const auto& f : p) {
        const std::complex<double> x = m(f.row - 1, f.col - 1);
        v *= f.conj ? std::conj(x) : x;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Trace words: "A U B Ut" means tr(A U B U^T), tr = Tr / size. The Haar
// element is written U, O, S or G; suffix t transposes, * takes the adjoint.
// Any other token names a constant matrix.

struct WordLetter {
    enum Kind { constant, haar, haar_transpose, haar_adjoint } kind = constant;
    std::string name;
};

inline std::vector<WordLetter> parse_word(std::string_view word) {
    std::vector<WordLetter> out;
    std::size_t pos = 0;
    while (pos < word.size()) {
        if (std::isspace(static_cast<unsigned char>(word[pos]))) {
            ++pos;
            continue;
        }
        const std::size_t start = pos;
        while (pos < word.size() && !std::isspace(static_cast<unsigned char>(word[pos]))) ++pos;
        std::string tok(word.substr(start, pos - start));
        WordLetter l;
        l.name = tok;
        const std::string base = tok.substr(0, 1);
        const std::string suffix = tok.substr(1);
        if (base == "U" || base == "O" || base == "S" || base == "G") {
            if (suffix.empty()) l.kind = WordLetter::haar;
            else if (suffix == "t" || suffix == "T") l.kind = WordLetter::haar_transpose;
            else if (suffix == "*") l.kind = WordLetter::haar_adjoint;
        }
        out.push_back(std::move(l));
    }
    if (out.empty()) throw parse_error("empty trace word");
    return out;
}

using ConstantMap = std::map<std::string, Matrix<BigRat>>;

inline const Matrix<BigRat>& lookup_constant(const ConstantMap& constants, const WordLetter& l, int size) {
    auto it = constants.find(l.name);
    if (it == constants.end()) throw error("trace word uses undefined constant '" + l.name + "'");
    if (static_cast<int>(it->second.rows()) != size || static_cast<int>(it->second.cols()) != size)
        throw error("constant '" + l.name + "' has the wrong dimension");
    return it->second;
}

/// Exact E[tr(word)] by expanding the trace into entry products.
inline BigRat exact_trace_moment(Group g, int d, std::string_view word, const ConstantMap& constants) {
    const auto letters = parse_word(word);
    const int size = matrix_size(g, d);
    const int m = static_cast<int>(letters.size());
    std::vector<const Matrix<BigRat>*> mats(m, nullptr);
    for (int k = 0; k < m; ++k)
        if (letters[k].kind == WordLetter::constant) mats[k] = &lookup_constant(constants, letters[k], size);

    std::map<EntryProduct, BigRat> memo;
    BigRat total = 0;
    std::vector<int> idx(m, 0);
    // idx[k] is the row index of letter k; its column index is idx[k + 1 mod m].
    std::function<void(int)> rec = [&](int k) {
        if (k < m) {
            for (int a = 0; a < size; ++a) {
                idx[k] = a;
                rec(k + 1);
            }
            return;
        }
        BigRat coeff = 1;
        EntryProduct factors;
        for (int l = 0; l < m && coeff != 0; ++l) {
            const int r = idx[l], c = idx[(l + 1) % m];
            switch (letters[l].kind) {
            case WordLetter::constant: coeff *= (*mats[l])(r, c); break;
            case WordLetter::haar: factors.push_back({r + 1, c + 1, false}); break;
            case WordLetter::haar_transpose: factors.push_back({c + 1, r + 1, false}); break;
            case WordLetter::haar_adjoint: factors.push_back({c + 1, r + 1, true}); break;
            }
        }
        if (coeff == 0) return;
        std::sort(factors.begin(), factors.end());
        auto it = memo.find(factors);
        if (it == memo.end()) it = memo.emplace(factors, exact_moment(g, d, factors)).first;
        total += coeff * it->second;
    };
    rec(0);
    return total / size;
}

} // namespace weingarten
