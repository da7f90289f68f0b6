#pragma once

// Dense univariate polynomials in q with arbitrary-precision integer
// coefficients, plus the q-analogues and cyclotomic machinery built on them.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bruhat/errors.hpp"

namespace bruhat {

using BigInt = boost::multiprecision::cpp_int;

class IntPoly {
public:
    IntPoly() = default;
    IntPoly(std::initializer_list<long long> coeffs) : coeffs_(coeffs.begin(), coeffs.end()) { normalize(); }
    explicit IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

    static IntPoly constant(BigInt c) { return IntPoly(std::vector<BigInt>{std::move(c)}); }

    static IntPoly monomial(std::size_t exponent, BigInt c = 1) {
        std::vector<BigInt> v(exponent + 1);
        v[exponent] = std::move(c);
        return IntPoly(std::move(v));
    }

    template <typename Int>
    static IntPoly from_counts(const std::vector<Int>& counts) {
        std::vector<BigInt> v;
        v.reserve(counts.size());
        for (const auto& c : counts) v.emplace_back(c);
        return IntPoly(std::move(v));
    }

    bool is_zero() const noexcept { return coeffs_.empty(); }

    // -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    const BigInt& operator[](std::size_t k) const {
        static const BigInt zero = 0;
        return k < coeffs_.size() ? coeffs_[k] : zero;
    }

    const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }

    BigInt at_one() const {
        BigInt s = 0;
        for (const auto& c : coeffs_) s += c;
        return s;
    }

    bool has_nonnegative_coefficients() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c >= 0; });
    }

    IntPoly& operator+=(const IntPoly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        normalize();
        return *this;
    }

    IntPoly& operator-=(const IntPoly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        normalize();
        return *this;
    }

    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return IntPoly(std::move(out));
    }

    IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }

    friend bool operator==(const IntPoly&, const IntPoly&) = default;

    // "1 + 2*q + 2*q^2 + q^4"; the zero polynomial prints as "0".
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            const BigInt& c = coeffs_[k];
            if (c == 0) continue;
            const bool negative = c < 0;
            const BigInt mag = negative ? BigInt(-c) : c;
            if (out.empty()) {
                if (negative) out += "-";
            } else {
                out += negative ? " - " : " + ";
            }
            if (k == 0) {
                out += mag.str();
                continue;
            }
            if (mag != 1) out += mag.str() + "*";
            out += "q";
            if (k > 1) out += "^" + std::to_string(k);
        }
        return out;
    }

private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<BigInt> coeffs_;
};

// Quotient and remainder of a by b, assuming b's leading coefficient divides
// every intermediate leading term; returns nullopt when it does not (in which
// case b cannot divide a over the integers) or when the remainder is nonzero.
inline std::optional<IntPoly> try_exact_div(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw Error("division by the zero polynomial");
    if (a.is_zero()) return IntPoly{};
    const int db = b.degree();
    if (a.degree() < db) return std::nullopt;
    std::vector<BigInt> rem = a.coefficients();
    std::vector<BigInt> quot(static_cast<std::size_t>(a.degree() - db + 1));
    const BigInt& lead = b[static_cast<std::size_t>(db)];
    const auto& bc = b.coefficients();
    for (int k = a.degree() - db; k >= 0; --k) {
        BigInt& top = rem[static_cast<std::size_t>(k + db)];
        if (top == 0) continue;
        BigInt q;
        if (lead == 1) {
            q = top;
        } else if (lead == -1) {
            q = -top;
        } else {
            BigInt r;
            boost::multiprecision::divide_qr(top, lead, q, r);
            if (r != 0) return std::nullopt;
        }
        for (int j = 0; j <= db; ++j) {
            if (bc[static_cast<std::size_t>(j)] != 0) rem[static_cast<std::size_t>(k + j)] -= q * bc[static_cast<std::size_t>(j)];
        }
        quot[static_cast<std::size_t>(k)] = std::move(q);
    }
    for (const auto& r : rem)
        if (r != 0) return std::nullopt;
    return IntPoly(std::move(quot));
}

// a / b; throws NonzeroRemainder if b does not divide a.
inline IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
    if (auto q = try_exact_div(a, b)) return *std::move(q);
    throw NonzeroRemainder();
}

inline bool divides(const IntPoly& b, const IntPoly& a) { return try_exact_div(a, b).has_value(); }

// ---------------------------------------------------------------------------
// q-analogues

// [i] = 1 + q + ... + q^{i-1}; [0] = 0.
inline IntPoly q_int(std::size_t i) { return IntPoly(std::vector<BigInt>(i, BigInt(1))); }

// [n]! = [1][2]...[n]; [0]! = 1.
inline IntPoly q_factorial(std::size_t n) {
    IntPoly out{1};
    for (std::size_t i = 2; i <= n; ++i) out *= q_int(i);
    return out;
}

inline IntPoly q_binomial(std::size_t n, std::size_t m) {
    if (m > n) throw Error("q_binomial requires m <= n (got n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")");
    return exact_div(q_factorial(n), q_factorial(m) * q_factorial(n - m));
}

// ---------------------------------------------------------------------------
// Shape predicates

inline bool is_symmetric(const IntPoly& p) {
    const auto& c = p.coefficients();
    return std::equal(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(c.size() / 2), c.rbegin());
}

// Weakly rising then weakly falling. Zero coefficients inside the support
// count as a dip (1 + q^3 is not unimodal).
inline bool is_unimodal(const IntPoly& p) {
    if (!p.has_nonnegative_coefficients()) throw Error("is_unimodal requires nonnegative coefficients");
    const auto& c = p.coefficients();
    std::size_t i = 0;
    while (i + 1 < c.size() && c[i] <= c[i + 1]) ++i;
    while (i + 1 < c.size() && c[i] >= c[i + 1]) ++i;
    return i + 1 >= c.size();
}

// q^{deg p} p(1/q).
inline IntPoly reverse(const IntPoly& p) {
    if (p.is_zero()) throw Error("reverse of the zero polynomial is undefined");
    std::vector<BigInt> c = p.coefficients();
    std::reverse(c.begin(), c.end());
    return IntPoly(std::move(c));
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials

inline std::size_t euler_phi(std::size_t d) {
    std::size_t result = d;
    for (std::size_t p = 2; p * p <= d; ++p) {
        if (d % p) continue;
        while (d % p == 0) d /= p;
        result -= result / p;
    }
    if (d > 1) result -= result / d;
    return result;
}

namespace detail {

class CyclotomicTable {
public:
    const IntPoly& get(std::size_t d) {
        {
            std::shared_lock lock(mutex_);
            if (auto it = table_.find(d); it != table_.end()) return it->second;
        }
        // Divisors first, outside the lock; recursion re-enters get().
        IntPoly divisor_product{1};
        for (std::size_t e = 1; e < d; ++e)
            if (d % e == 0) divisor_product *= get(e);
        IntPoly value = exact_div(IntPoly::monomial(d) - IntPoly{1}, divisor_product);
        std::unique_lock lock(mutex_);
        return table_.try_emplace(d, std::move(value)).first->second;
    }

private:
    std::shared_mutex mutex_;
    std::map<std::size_t, IntPoly> table_;  // node-based: references stay valid
};

inline CyclotomicTable& cyclotomic_table() {
    static CyclotomicTable table;
    return table;
}

}  // namespace detail

// Phi_d, memoized; safe to call concurrently.
inline const IntPoly& cyclotomic(std::size_t d) {
    if (d == 0) throw Error("cyclotomic index must be positive");
    return detail::cyclotomic_table().get(d);
}

// Every d >= 1 with phi(d) <= max_degree, ascending. phi(d) >= sqrt(d/2), so
// the search stops at 2*max_degree^2.
inline std::vector<std::size_t> cyclotomic_indices_up_to_degree(std::size_t max_degree) {
    std::vector<std::size_t> out;
    const std::size_t bound = std::max<std::size_t>(6, 2 * max_degree * max_degree);
    for (std::size_t d = 1; d <= bound; ++d)
        if (euler_phi(d) <= max_degree) out.push_back(d);
    return out;
}

// True iff p is a product of cyclotomic polynomials: divide out every Phi_d
// of degree at most deg(p) as often as possible and see whether 1 remains.
inline bool is_cyclotomic_product(const IntPoly& p) {
    if (p.is_zero()) throw Error("is_cyclotomic_product of the zero polynomial");
    // Phi_d is palindromic for d >= 2, and Phi_1 = q - 1 divides p iff p(1) = 0.
    if (p.at_one() != 0 && !is_symmetric(p)) return false;
    IntPoly rest = p;
    for (std::size_t d : cyclotomic_indices_up_to_degree(static_cast<std::size_t>(p.degree()))) {
        const IntPoly& phi = cyclotomic(d);
        if (phi.degree() > rest.degree()) continue;
        while (rest.degree() >= phi.degree()) {
            auto q = try_exact_div(rest, phi);
            if (!q) break;
            rest = *std::move(q);
        }
        if (rest.degree() == 0) break;
    }
    return rest == IntPoly{1};
}

}  // namespace bruhat
