#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "bigrat.hpp"

namespace weingarten {

/// Univariate polynomial in the indeterminate d with exact rational
/// coefficients, stored in ascending degree. The highest stored coefficient
/// is nonzero; the zero polynomial has no coefficients.
class Poly {
public:
    Poly() = default;
    Poly(int c) : Poly(BigRat(c)) {}
    Poly(const BigRat& c) {
        if (c != 0) coeffs_.push_back(c);
    }
    Poly(std::initializer_list<BigRat> ascending) : coeffs_(ascending) { trim(); }
    explicit Poly(std::vector<BigRat> ascending) : coeffs_(std::move(ascending)) { trim(); }

    /// The monomial c * d^k.
    static Poly monomial(const BigRat& c, std::size_t k) {
        std::vector<BigRat> v(k + 1);
        v[k] = c;
        return Poly(std::move(v));
    }
    static Poly d() { return monomial(1, 1); }

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<BigRat>& coefficients() const { return coeffs_; }
    BigRat coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : BigRat(0); }
    BigRat leading() const { return is_zero() ? BigRat(0) : coeffs_.back(); }
    /// Lowest k with a nonzero coefficient; -1 for zero.
    int valuation() const {
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            if (coeffs_[k] != 0) return static_cast<int>(k);
        return -1;
    }

    BigRat operator()(const BigRat& x) const {
        BigRat acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly& operator+=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        trim();
        return *this;
    }
    Poly& operator*=(const BigRat& c) {
        if (c == 0) {
            coeffs_.clear();
            return *this;
        }
        for (auto& x : coeffs_) x *= c;
        return *this;
    }
    Poly& operator/=(const BigRat& c) {
        if (c == 0) throw error("division of polynomial by zero scalar");
        for (auto& x : coeffs_) x /= c;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& x : a.coeffs_) x = -x;
        return a;
    }
    friend Poly operator*(Poly a, const BigRat& c) { return a *= c; }
    friend Poly operator*(const BigRat& c, Poly a) { return a *= c; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigRat> r(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Poly(std::move(r));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    /// Euclidean division: returns (quotient, remainder).
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw error("division by zero polynomial");
        if (a.degree() < b.degree()) return {Poly{}, a};
        std::vector<BigRat> rem = a.coeffs_;
        std::vector<BigRat> quo(a.coeffs_.size() - b.coeffs_.size() + 1);
        const BigRat& lead = b.coeffs_.back();
        const std::size_t db = b.coeffs_.size() - 1;
        for (std::size_t k = quo.size(); k-- > 0;) {
            const BigRat q = rem[k + db] / lead;
            quo[k] = q;
            if (q == 0) continue;
            for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs_[j];
        }
        rem.resize(db);
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    /// Same polynomial scaled to leading coefficient 1 (zero stays zero).
    Poly monic() const {
        if (is_zero()) return *this;
        Poly r = *this;
        r /= leading();
        return r;
    }

    /// Positive rational c such that this / c has coprime integer coefficients.
    BigRat content() const {
        if (is_zero()) return 1;
        BigInt g = 0, l = 1;
        for (const auto& c : coeffs_) {
            if (c == 0) continue;
            g = gcd(g, abs(numerator_of(c)));
            l = lcm(l, denominator_of(c));
        }
        return BigRat(g, l);
    }

    /// p(-d).
    Poly reflected() const {
        Poly r = *this;
        for (std::size_t k = 1; k < r.coeffs_.size(); k += 2) r.coeffs_[k] = -r.coeffs_[k];
        return r;
    }

    /// p(c*d).
    Poly scaled_argument(const BigRat& c) const {
        Poly r = *this;
        BigRat pw = 1;
        for (auto& x : r.coeffs_) {
            x *= pw;
            pw *= c;
        }
        r.trim();
        return r;
    }

    Poly pow(unsigned e) const {
        Poly r = 1, b = *this;
        while (e) {
            if (e & 1u) r *= b;
            e >>= 1u;
            if (e) b *= b;
        }
        return r;
    }

    /// Expanded form in descending powers, e.g. "d^2+3d-2".
    std::string str(char var = 'd') const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            const BigRat& c = coeffs_[k];
            if (c == 0) continue;
            const bool neg = c < 0;
            const BigRat mag = neg ? BigRat(-c) : c;
            if (!out.empty()) out += neg ? "-" : "+";
            else if (neg) out += "-";
            const bool unit = mag == 1;
            if (k == 0 || !unit) {
                std::string m = to_short_string(mag);
                if (k > 0 && !is_integer(mag)) m = "(" + m + ")";
                out += m;
            }
            if (k >= 1) out += var;
            if (k >= 2) out += "^" + std::to_string(k);
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<BigRat> coeffs_;
};

/// Monic greatest common divisor (zero iff both inputs are zero). Euclid
/// with every remainder made monic, which keeps coefficient growth in check.
inline Poly gcd(Poly a, Poly b) {
    a = a.monic();
    b = b.monic();
    while (!b.is_zero()) {
        Poly r = (a % b).monic();
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Exact quotient a / b; throws if b does not divide a.
inline Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw error("inexact polynomial division");
    return q;
}

inline std::ostream& operator<<(std::ostream& os, const Poly& x) { return os << x.str(); }

} // namespace weingarten
