#pragma once

#include <cctype>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "poly.hpp"

namespace weingarten {

/// Evaluation hit a genuine (non-removable) pole.
class pole_error : public error {
public:
    explicit pole_error(BigRat x) : error("pole at " + to_short_string(x)), at_(std::move(x)) {}
    const BigRat& at() const { return at_; }

private:
    BigRat at_;
};

/// Reduced quotient num/den of polynomials in d. Canonical form: gcd(num,
/// den) = 1, den monic, zero is 0/1. Two equal functions have identical
/// fields.
class RationalFunction {
public:
    RationalFunction() : den_(1) {}
    RationalFunction(int c) : num_(c), den_(1) {}
    RationalFunction(const BigRat& c) : num_(c), den_(1) {}
    RationalFunction(Poly p) : num_(std::move(p)), den_(1) {}
    RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    /// Exact value at x. Removable singularities of unreduced inputs are
    /// already cancelled, so only genuine poles throw.
    BigRat operator()(const BigRat& x) const {
        const BigRat dv = den_(x);
        if (dv == 0) throw pole_error(x);
        return num_(x) / dv;
    }

    /// deg(num) - deg(den): the exponent of the leading term as d -> infinity.
    /// Undefined (returns a very negative number) for zero.
    int order_at_infinity() const {
        if (is_zero()) return -(1 << 20);
        return num_.degree() - den_.degree();
    }
    /// Coefficient of d^order_at_infinity() in the expansion at infinity.
    BigRat leading_at_infinity() const { return num_.leading() / den_.leading(); }

    /// f(-d).
    RationalFunction reflected() const { return {num_.reflected(), den_.reflected()}; }
    /// f(c*d).
    RationalFunction scaled_argument(const BigRat& c) const {
        return {num_.scaled_argument(c), den_.scaled_argument(c)};
    }

    RationalFunction inverse() const {
        if (is_zero()) throw error("inversion of zero rational function");
        return {den_, num_};
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
        const Poly g = gcd(a.den_, b.den_);
        const Poly ad = exact_div(a.den_, g);
        const Poly bd = exact_div(b.den_, g);
        return {a.num_ * bd + b.num_ * ad, ad * b.den_};
    }
    friend RationalFunction operator-(const RationalFunction& a) {
        RationalFunction r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero() || b.is_zero()) return {};
        // Cross-cancel first so the final gcd works on smaller inputs.
        const Poly g1 = gcd(a.num_, b.den_);
        const Poly g2 = gcd(b.num_, a.den_);
        return {exact_div(a.num_, g1) * exact_div(b.num_, g2), exact_div(a.den_, g2) * exact_div(b.den_, g1)};
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    /// Expanded canonical form "num/den", e.g. "-1/(d^3+d^2-2d)".
    std::string expanded_str() const {
        if (is_polynomial()) return num_.str();
        auto terms = [](const Poly& p) {
            std::size_t t = 0;
            for (const auto& c : p.coefficients()) t += c != 0;
            return t;
        };
        std::string n = num_.str(), d = den_.str();
        if (terms(num_) > 1) n = "(" + n + ")";
        if (terms(den_) > 1) d = "(" + d + ")";
        return n + "/" + d;
    }

    std::string str() const;

    /// Numerator and denominator of the factored form, without the outer
    /// parentheses; the denominator is "1" for polynomials.
    std::pair<std::string, std::string> factored() const;

private:
    void normalize() {
        if (den_.is_zero()) throw error("division by zero polynomial");
        if (num_.is_zero()) {
            den_ = Poly(1);
            return;
        }
        const Poly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = exact_div(num_, g);
            den_ = exact_div(den_, g);
        }
        const BigRat lead = den_.leading();
        if (lead != 1) {
            num_ /= lead;
            den_ /= lead;
        }
    }

    Poly num_;
    Poly den_;
};

namespace detail {

/// Splits a monic polynomial into integer-root linear factors (root,
/// multiplicity) and a monic remainder without integer roots in the
/// searched window.
inline std::pair<std::vector<std::pair<long, int>>, Poly> integer_linear_factors(Poly p) {
    std::vector<std::pair<long, int>> roots;
    constexpr long window = 128;
    auto try_root = [&](long r) {
        int mult = 0;
        const Poly lin{BigRat(-r), BigRat(1)};
        while (p.degree() >= 1) {
            auto [q, rem] = divmod(p, lin);
            if (!rem.is_zero()) break;
            p = std::move(q);
            ++mult;
        }
        if (mult > 0) roots.emplace_back(r, mult);
    };
    try_root(0);
    for (long r = 1; r <= window && p.degree() >= 1; ++r) try_root(r);
    for (long r = 1; r <= window && p.degree() >= 1; ++r) try_root(-r);
    return {std::move(roots), std::move(p)};
}

} // namespace detail

namespace detail {

struct FactoredForm {
    Poly numerator;                        // integer coefficients
    std::vector<std::string> denominator;  // factors, constant first
};

inline FactoredForm factor_for_display(const Poly& num, const Poly& den) {
    auto [roots, rest] = integer_linear_factors(den);

    // num/den = (scale * numInt) / (denScale * prod(linear) * restInt)
    BigRat scale = 1;
    const BigRat restContent = rest.content();
    Poly restInt = rest;
    restInt /= restContent;
    scale /= restContent;
    const BigRat numContent = num.content();
    Poly numInt = num;
    numInt /= numContent;
    scale *= numContent;
    numInt *= BigRat(numerator_of(scale));
    const BigInt denScale = denominator_of(scale);

    FactoredForm f{std::move(numInt), {}};
    if (denScale != 1) f.denominator.push_back(denScale.str());
    auto power = [](int m) { return m > 1 ? "^" + std::to_string(m) : std::string(); };
    for (const auto& [r, m] : roots)
        if (r == 0) f.denominator.push_back("d" + power(m));
    for (const auto& [r, m] : roots)
        if (r > 0) f.denominator.push_back("(d-" + std::to_string(r) + ")" + power(m));
    for (const auto& [r, m] : roots)
        if (r < 0) f.denominator.push_back("(d+" + std::to_string(-r) + ")" + power(m));
    if (restInt.degree() >= 1) f.denominator.push_back("(" + restInt.str() + ")");
    return f;
}

} // namespace detail

inline std::pair<std::string, std::string> RationalFunction::factored() const {
    if (is_zero()) return {"0", "1"};
    const auto f = detail::factor_for_display(num_, den_);
    std::string d;
    for (const auto& p : f.denominator) d += p;
    return {f.numerator.str(), d.empty() ? "1" : d};
}

/// Human-readable form with the denominator factored over the integers
/// where it splits into linear factors, e.g. "(d+1)/(d(d-1)(d+2))".
inline std::string RationalFunction::str() const {
    if (is_zero()) return "0";
    const auto f = detail::factor_for_display(num_, den_);
    std::string n = f.numerator.str();
    if (f.denominator.empty()) return n;
    std::size_t terms = 0;
    for (const auto& c : f.numerator.coefficients()) terms += c != 0;
    if (terms > 1) n = "(" + n + ")";
    std::string d;
    for (const auto& p : f.denominator) d += p;
    if (f.denominator.size() > 1) d = "(" + d + ")";
    return n + "/" + d;
}

inline RationalFunction reflected(const RationalFunction& f) { return f.reflected(); }

// ---------------------------------------------------------------------------
// JSON: {"num": ["p/q", ...], "den": ["p/q", ...]}, ascending degree.

inline nlohmann::json to_json_value(const Poly& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : p.coefficients()) arr.push_back(to_fraction_string(c));
    return arr;
}

inline nlohmann::json to_json_value(const RationalFunction& f) {
    nlohmann::json j = nlohmann::json::object();
    j["num"] = to_json_value(f.num());
    j["den"] = to_json_value(f.den());
    return j;
}

inline Poly poly_from_json(const nlohmann::json& arr) {
    if (!arr.is_array()) throw parse_error("polynomial must be a JSON array");
    std::vector<BigRat> c;
    for (const auto& x : arr) {
        if (!x.is_string()) throw parse_error("coefficients must be strings");
        c.push_back(parse_bigrat(x.get<std::string>()));
    }
    return Poly(std::move(c));
}

inline RationalFunction rational_function_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw parse_error("rational function JSON needs 'num' and 'den'");
    return {poly_from_json(j.at("num")), poly_from_json(j.at("den"))};
}

// ---------------------------------------------------------------------------
// Parser for expressions in d: + - * / ^, parentheses, integers and
// implicit multiplication ("2d(d-1)").

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view s) : s_(s) {}

    RationalFunction parse() {
        RationalFunction r = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw parse_error("cannot parse '" + std::string(s_) + "': " + why + " at offset " + std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    RationalFunction expr() {
        RationalFunction acc = term();
        for (;;) {
            const char c = peek();
            if (c == '+') {
                ++pos_;
                acc += term();
            } else if (c == '-') {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }
    RationalFunction term() {
        RationalFunction acc = factor();
        for (;;) {
            const char c = peek();
            if (c == '*') {
                ++pos_;
                acc *= factor();
            } else if (c == '/') {
                ++pos_;
                acc /= factor();
            } else if (c == '(' || c == 'd' || std::isdigit(static_cast<unsigned char>(c))) {
                acc *= factor();
            } else {
                return acc;
            }
        }
    }
    RationalFunction factor() {
        const char c = peek();
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (c == '+') {
            ++pos_;
            return factor();
        }
        RationalFunction base = atom();
        if (peek() == '^') {
            ++pos_;
            skip();
            const bool negative = pos_ < s_.size() && s_[pos_] == '-';
            if (negative) ++pos_;
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            const unsigned e = static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
            RationalFunction p{base.num().pow(e), base.den().pow(e)};
            return negative ? p.inverse() : p;
        }
        return base;
    }
    RationalFunction atom() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            RationalFunction r = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return r;
        }
        if (c == 'd') {
            ++pos_;
            return Poly::d();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return BigRat(parse_bigint(s_.substr(start, pos_ - start)));
        }
        fail("unexpected character");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses e.g. "(d^2+3d-2)/(d(d-1)(d-2)(d+2)(d+4))" into canonical form.
inline RationalFunction parse_rational_function(std::string_view s) { return detail::ExprParser(s).parse(); }

inline std::ostream& operator<<(std::ostream& os, const RationalFunction& x) { return os << x.str(); }

} // namespace weingarten
