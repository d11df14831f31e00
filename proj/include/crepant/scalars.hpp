#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crepant/errors.hpp"

namespace crepant {

using Int = boost::multiprecision::cpp_int;

/// Exact rational scalar. cpp_rational stores numerator/denominator
/// normalized (gcd 1, denominator > 0), which is exactly the invariant
/// the rest of the library relies on.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0)
        throw DivisionByZero("rational with zero denominator");
    return Rational(num, den);
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

/// Cohomological degrees are "even" when they are even integers.
inline bool is_even_integer(const Rational& r) {
    return is_integer(r) && numerator(r) % 2 == 0;
}

/// Element of Q(i): re + im*i with exact rational parts.
struct GaussRational {
    Rational re;
    Rational im;

    GaussRational() = default;
    GaussRational(int v) : re(v), im(0) {}                    // NOLINT(google-explicit-constructor)
    GaussRational(const Rational& r) : re(r), im(0) {}        // NOLINT(google-explicit-constructor)
    GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRational unit_i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

    friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }

    friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRational operator/(const GaussRational& a, const GaussRational& b) {
        if (b.is_zero())
            throw DivisionByZero("Gaussian rational division by zero");
        Rational n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }

    GaussRational& operator+=(const GaussRational& b) { return *this = *this + b; }
    GaussRational& operator-=(const GaussRational& b) { return *this = *this - b; }
    GaussRational& operator*=(const GaussRational& b) { return *this = *this * b; }
    GaussRational& operator/=(const GaussRational& b) { return *this = *this / b; }
};

inline GaussRational conjugate(const GaussRational& z) { return {z.re, -z.im}; }

/// |z|^2 = z * conj(z), a nonnegative rational.
inline Rational norm_sq(const GaussRational& z) { return z.re * z.re + z.im * z.im; }

/// i^n for arbitrary (possibly negative) integer n.
inline GaussRational i_pow(const Int& n) {
    Int m = n % 4;
    if (m < 0) m += 4;
    switch (static_cast<int>(m)) {
        case 0: return GaussRational(1);
        case 1: return GaussRational::unit_i();
        case 2: return GaussRational(-1);
        default: return -GaussRational::unit_i();
    }
}

inline GaussRational i_pow(long long n) { return i_pow(Int(n)); }

/// z^e by repeated squaring; negative exponents invert first.
inline GaussRational pow(const GaussRational& z, Int e) {
    GaussRational base = z;
    if (e < 0) {
        base = GaussRational(1) / z;
        e = -e;
    }
    GaussRational acc(1);
    while (e > 0) {
        if ((e & 1) != 0) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

inline GaussRational pow(const GaussRational& z, long long e) { return pow(z, Int(e)); }

// ---------------------------------------------------------------------------
// Canonical text syntax.
//
// Rationals render as "n" or "n/d"; Gaussian rationals as "a/b+c/d i" with
// zero parts omitted and a unit imaginary coefficient rendered as bare "i".
// parse(format(z)) == z for all z, and format is canonical, so
// format(parse(s)) is a normal form of s.
// ---------------------------------------------------------------------------

inline std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline std::string to_string(const GaussRational& z) {
    if (z.im == 0) return to_string(z.re);
    Rational mag = z.im < 0 ? Rational(-z.im) : z.im;
    std::string imag = (mag == 1) ? "i" : to_string(mag) + " i";
    if (z.re == 0) return (z.im < 0 ? "-" : "") + imag;
    return to_string(z.re) + (z.im < 0 ? "-" : "+") + imag;
}

namespace detail {

enum class TokKind { number, ident, param, op, end };

struct Token {
    TokKind kind;
    std::string text;
    char op = 0;
};

inline std::vector<Token> lex_scalar(const std::string& src) {
    std::vector<Token> out;
    size_t pos = 0;
    while (pos < src.size()) {
        char c = src[pos];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++pos;
            continue;
        }
        if (c >= '0' && c <= '9') {
            size_t start = pos;
            while (pos < src.size() && src[pos] >= '0' && src[pos] <= '9') ++pos;
            out.push_back({TokKind::number, src.substr(start, pos - start)});
            continue;
        }
        if (c == '<') {
            size_t close = src.find('>', pos);
            if (close == std::string::npos)
                throw ParseError("unterminated '<' in scalar '" + src + "'");
            out.push_back({TokKind::param, src.substr(pos, close - pos + 1)});
            pos = close + 1;
            continue;
        }
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
            size_t start = pos;
            while (pos < src.size() &&
                   ((src[pos] >= 'a' && src[pos] <= 'z') || (src[pos] >= 'A' && src[pos] <= 'Z') ||
                    (src[pos] >= '0' && src[pos] <= '9') || src[pos] == '_'))
                ++pos;
            out.push_back({TokKind::ident, src.substr(start, pos - start)});
            continue;
        }
        if (c == '+' || c == '-' || c == '*' || c == '/' || c == '(' || c == ')') {
            out.push_back({TokKind::op, std::string(1, c), c});
            ++pos;
            continue;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "' in scalar '" + src + "'");
    }
    out.push_back({TokKind::end, ""});
    return out;
}

/// Recursive-descent parser over the token stream. `params` may be null
/// (plain scalar, symbolic names rejected by ParseError) or a table used
/// to resolve identifiers and <...> names.
class ScalarParser {
public:
    ScalarParser(std::vector<Token> toks, const std::map<std::string, GaussRational>* params,
                 std::string src)
        : toks_(std::move(toks)), params_(params), src_(std::move(src)) {}

    GaussRational run() {
        GaussRational v = expr();
        if (peek().kind != TokKind::end)
            throw ParseError("trailing input after scalar in '" + src_ + "'");
        return v;
    }

private:
    const Token& peek() const { return toks_[idx_]; }
    Token take() { return toks_[idx_++]; }

    bool peek_op(char c) const { return peek().kind == TokKind::op && peek().op == c; }

    GaussRational expr() {
        int sign = 1;
        if (peek_op('+')) {
            take();
        } else if (peek_op('-')) {
            take();
            sign = -1;
        }
        GaussRational v = term();
        if (sign < 0) v = -v;
        while (peek_op('+') || peek_op('-')) {
            char op = take().op;
            GaussRational rhs = term();
            v = (op == '+') ? v + rhs : v - rhs;
        }
        return v;
    }

    // term := factor (('*'|'/') factor)* ['i']
    // The trailing bare 'i' binds to the whole term so "3/4 i" means (3/4)*i.
    GaussRational term() {
        GaussRational v = factor();
        while (peek_op('*') || peek_op('/')) {
            char op = take().op;
            GaussRational rhs = factor();
            v = (op == '*') ? v * rhs : v / rhs;
        }
        if (peek().kind == TokKind::ident && peek().text == "i") {
            take();
            v *= GaussRational::unit_i();
        }
        return v;
    }

    GaussRational factor() {
        int sign = 1;
        if (peek_op('-')) {
            take();
            sign = -1;
        } else if (peek_op('+')) {
            take();
        }
        GaussRational v = atom();
        return sign < 0 ? -v : v;
    }

    GaussRational atom() {
        const Token& t = peek();
        switch (t.kind) {
            case TokKind::number: {
                Token tok = take();
                // strip leading zeros: cpp_int's string constructor would
                // read them as an octal prefix
                size_t first = tok.text.find_first_not_of('0');
                std::string digits =
                    first == std::string::npos ? "0" : tok.text.substr(first);
                return GaussRational(Rational(Int(digits)));
            }
            case TokKind::ident: {
                Token tok = take();
                if (tok.text == "i") return GaussRational::unit_i();
                return lookup(tok.text);
            }
            case TokKind::param: {
                Token tok = take();
                return lookup(tok.text);
            }
            case TokKind::op:
                if (t.op == '(') {
                    take();
                    GaussRational v = expr();
                    if (!peek_op(')'))
                        throw ParseError("expected ')' in scalar '" + src_ + "'");
                    take();
                    return v;
                }
                break;
            default:
                break;
        }
        throw ParseError("expected a value in scalar '" + src_ + "'");
    }

    GaussRational lookup(const std::string& name) {
        if (params_ == nullptr)
            throw ParseError("symbolic name '" + name + "' not allowed in plain scalar '" + src_ + "'");
        auto it = params_->find(name);
        if (it == params_->end())
            throw UnresolvedSymbol("'" + name + "' in '" + src_ + "'");
        return it->second;
    }

    std::vector<Token> toks_;
    const std::map<std::string, GaussRational>* params_;
    std::string src_;
    size_t idx_ = 0;
};

inline GaussRational parse_impl(const std::string& src,
                                const std::map<std::string, GaussRational>* params) {
    try {
        return ScalarParser(lex_scalar(src), params, src).run();
    } catch (const DivisionByZero&) {
        throw ParseError("division by zero in scalar '" + src + "'");
    }
}

} // namespace detail

/// Parse the plain scalar syntax ("a/b", "a/b+c/d i", ...). No symbolic names.
inline GaussRational parse_scalar(const std::string& src) {
    return detail::parse_impl(src, nullptr);
}

/// Parse an exact scalar expression, resolving identifiers and <...> names
/// from the given parameter table.
inline GaussRational resolve_scalar(const std::string& src,
                                    const std::map<std::string, GaussRational>& params) {
    return detail::parse_impl(src, &params);
}

/// Parse a real scalar; rejects anything with an imaginary part.
inline Rational parse_rational(const std::string& src) {
    GaussRational z = parse_scalar(src);
    if (z.im != 0)
        throw ParseError("expected a real scalar, got '" + src + "'");
    return z.re;
}

// ---------------------------------------------------------------------------
// Exact roots inside Q(i).
// ---------------------------------------------------------------------------

/// Floor of the k-th root of a nonnegative integer, by bit-length bisection.
inline Int integer_kth_root_floor(const Int& x, unsigned k) {
    if (x <= 1 || k == 1) return x;
    Int lo = 1;
    Int hi = Int(1) << (static_cast<unsigned>(boost::multiprecision::msb(x)) / k + 1);
    while (lo < hi) {
        Int mid = (lo + hi + 1) / 2;
        if (boost::multiprecision::pow(mid, k) <= x)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

/// Exact k-th root of a rational, if one exists in Q. Handles negative
/// inputs for odd k.
inline std::optional<Rational> rational_kth_root(const Rational& r, unsigned k) {
    if (k == 1) return r;
    if (r == 0) return Rational(0);
    bool neg = r < 0;
    if (neg && k % 2 == 0) return std::nullopt;
    Int num = neg ? Int(-numerator(r)) : numerator(r);
    Int den = denominator(r);
    Int rn = integer_kth_root_floor(num, k);
    Int rd = integer_kth_root_floor(den, k);
    if (boost::multiprecision::pow(rn, k) != num || boost::multiprecision::pow(rd, k) != den)
        return std::nullopt;
    Rational root(rn, rd);
    return neg ? Rational(-root) : root;
}

/// Exact square root in Q(i), when one exists. For z = x+yi a root exists
/// iff |z|^2 is a rational square n^2 and (x+n)/2 is a rational square;
/// both conditions are decidable exactly.
inline std::optional<GaussRational> sqrt_gauss(const GaussRational& z) {
    if (z.is_zero()) return GaussRational(0);
    auto n = rational_kth_root(norm_sq(z), 2);
    if (!n) return std::nullopt;
    auto a = rational_kth_root((z.re + *n) / 2, 2);
    if (!a) return std::nullopt;
    if (*a == 0) {
        auto b = rational_kth_root(*n, 2);
        if (!b) return std::nullopt;
        return GaussRational(Rational(0), *b);
    }
    return GaussRational(*a, z.im / (2 * *a));
}

/// Exact k-th root in Q(i) where we can find one: complete for k a power of
/// two; for odd factors, complete on values of the form r*i^m with r
/// rational. Anything else reports "no root found here" (the caller falls
/// back to a non-certifying numeric witness).
inline std::optional<GaussRational> kth_root_gauss(const GaussRational& z, unsigned k) {
    if (k == 0) throw DivisionByZero("0th root");
    if (k == 1) return z;
    if (z.is_zero()) return GaussRational(0);
    if (k % 2 == 0) {
        auto s = sqrt_gauss(z);
        if (!s) return std::nullopt;
        if (auto r = kth_root_gauss(*s, k / 2)) return r;
        return kth_root_gauss(-*s, k / 2);
    }
    // odd k
    if (z.im == 0) {
        if (auto r = rational_kth_root(z.re, k)) return GaussRational(*r);
        return std::nullopt;
    }
    if (z.re == 0) {
        // z = r * i^m with m in {1,3}; odd k is invertible mod 4.
        Rational mag = z.im < 0 ? Rational(-z.im) : z.im;
        auto root_mag = rational_kth_root(mag, k);
        if (!root_mag) return std::nullopt;
        long long m = z.im < 0 ? 3 : 1;
        long long kinv = (k % 4 == 1) ? 1 : 3;
        GaussRational cand = GaussRational(*root_mag) * i_pow(m * kinv);
        if (pow(cand, static_cast<long long>(k)) == z) return cand;
        return std::nullopt;
    }
    return std::nullopt;
}

} // namespace crepant
