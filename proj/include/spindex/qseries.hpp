/**
 * @file qseries.hpp
 * @brief Exact truncated Laurent series in q^(1/2) over arbitrary-precision integers.
 *
 * All exponents are stored doubled ("exp2" units), so q^(k/2) has exp2 = k and
 * every exponent is an integer.  A series is either an exact Laurent polynomial
 * (prec2 == kExactPrec) or truncated: coefficients at half-exponents >= prec2
 * are unknown.  Truncation is tracked pessimistically through arithmetic so a
 * reported coefficient is always exact:
 *
 *   prec2(f+g) = min(prec2(f), prec2(g))
 *   prec2(f*g) = min(prec2(f) + val(g), prec2(g) + val(f))
 *
 * where val() is the valuation lower bound (min_exp2, or prec2 for a series
 * with no known terms).
 */

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <climits>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spindex {

using Int = boost::multiprecision::cpp_int;

/// Half-exponent precision marking an exact Laurent polynomial.
inline constexpr long long kExactPrec = LLONG_MAX / 4;

inline long long sat_add(long long a, long long b) {
    if (a >= kExactPrec || b >= kExactPrec) return kExactPrec;
    return std::min(a + b, kExactPrec);
}

/// A single nonzero term c * q^(exp2/2).
struct Monomial {
    Int coeff;
    long long exp2 = 0;

    bool operator==(const Monomial& o) const { return coeff == o.coeff && exp2 == o.exp2; }
};

class QSeries {
public:
    QSeries() = default;

    /// Zero series truncated at prec2 (exact zero by default).
    static QSeries zero(long long prec2 = kExactPrec) {
        QSeries f;
        f.prec2_ = prec2;
        return f;
    }

    static QSeries monomial(Int c, long long exp2, long long prec2 = kExactPrec) {
        QSeries f;
        f.prec2_ = prec2;
        if (c != 0 && exp2 < prec2) {
            f.min_exp2_ = exp2;
            f.coeffs_.push_back(std::move(c));
        }
        return f;
    }

    static QSeries one() { return monomial(1, 0); }

    /// Build from a dense coefficient list starting at min_exp2.
    static QSeries from_coeffs(long long min_exp2, std::vector<Int> coeffs, long long prec2 = kExactPrec) {
        QSeries f;
        f.min_exp2_ = min_exp2;
        f.coeffs_ = std::move(coeffs);
        f.prec2_ = prec2;
        f.normalize();
        return f;
    }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_exact() const { return prec2_ >= kExactPrec; }
    long long min_exp2() const { return min_exp2_; }
    long long prec2() const { return prec2_; }
    const std::vector<Int>& coeffs() const { return coeffs_; }

    /// Lower bound for the valuation; equals prec2 when no term is known.
    long long valuation_bound() const { return coeffs_.empty() ? prec2_ : min_exp2_; }

    /// Largest known half-exponent (exact polynomials only have a top term).
    long long max_exp2() const {
        if (coeffs_.empty()) throw std::domain_error("max_exp2: zero series");
        return min_exp2_ + static_cast<long long>(coeffs_.size()) - 1;
    }

    /// Coefficient of q^(exp2/2).  Throws if the exponent is beyond the precision.
    Int coeff_at(long long exp2) const {
        if (exp2 >= prec2_) throw std::domain_error("coeff_at: exponent beyond precision");
        if (coeffs_.empty()) return 0;
        long long i = exp2 - min_exp2_;
        if (i < 0 || i >= static_cast<long long>(coeffs_.size())) return 0;
        return coeffs_[static_cast<size_t>(i)];
    }

    QSeries operator-() const {
        QSeries f = *this;
        for (auto& c : f.coeffs_) c = -c;
        return f;
    }

    friend QSeries operator+(const QSeries& f, const QSeries& g) {
        long long prec = std::min(f.prec2_, g.prec2_);
        if (f.coeffs_.empty() && g.coeffs_.empty()) return zero(prec);
        long long lo = std::min(f.valuation_bound(), g.valuation_bound());
        long long hi = std::min(prec, std::max(f.coeffs_.empty() ? lo : f.max_exp2() + 1,
                                               g.coeffs_.empty() ? lo : g.max_exp2() + 1));
        if (hi <= lo) return zero(prec);
        std::vector<Int> out(static_cast<size_t>(hi - lo));
        auto fold = [&](const QSeries& h) {
            for (size_t i = 0; i < h.coeffs_.size(); ++i) {
                long long e = h.min_exp2_ + static_cast<long long>(i);
                if (e >= hi) break;
                out[static_cast<size_t>(e - lo)] += h.coeffs_[i];
            }
        };
        fold(f);
        fold(g);
        return from_coeffs(lo, std::move(out), prec);
    }

    friend QSeries operator-(const QSeries& f, const QSeries& g) { return f + (-g); }

    friend QSeries operator*(const QSeries& f, const QSeries& g) {
        long long prec = std::min(sat_add(f.prec2_, g.valuation_bound()),
                                  sat_add(g.prec2_, f.valuation_bound()));
        if (f.coeffs_.empty() || g.coeffs_.empty()) return zero(prec);
        long long lo = f.min_exp2_ + g.min_exp2_;
        long long hi = std::min(prec, f.max_exp2() + g.max_exp2() + 1);
        if (hi <= lo) return zero(prec);
        std::vector<Int> out(static_cast<size_t>(hi - lo));
        for (size_t i = 0; i < f.coeffs_.size(); ++i) {
            if (f.coeffs_[i] == 0) continue;
            long long base = f.min_exp2_ + static_cast<long long>(i) + g.min_exp2_ - lo;
            if (base >= hi - lo) break;
            size_t jmax = std::min(g.coeffs_.size(), static_cast<size_t>(hi - lo - base));
            for (size_t j = 0; j < jmax; ++j) {
                if (g.coeffs_[j] != 0) out[static_cast<size_t>(base) + j] += f.coeffs_[i] * g.coeffs_[j];
            }
        }
        return from_coeffs(lo, std::move(out), prec);
    }

    QSeries& operator+=(const QSeries& g) { return *this = *this + g; }
    QSeries& operator-=(const QSeries& g) { return *this = *this - g; }
    QSeries& operator*=(const QSeries& g) { return *this = *this * g; }

    /// Representation equality (same terms and same declared precision).
    bool operator==(const QSeries& o) const {
        return prec2_ == o.prec2_ && coeffs_ == o.coeffs_ &&
               (coeffs_.empty() || min_exp2_ == o.min_exp2_);
    }

private:
    void normalize() {
        size_t i = 0;
        while (i < coeffs_.size() && coeffs_[i] == 0) ++i;
        if (i > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(i));
            min_exp2_ += static_cast<long long>(i);
        }
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
        if (!coeffs_.empty() && min_exp2_ + static_cast<long long>(coeffs_.size()) > prec2_) {
            long long keep = prec2_ - min_exp2_;
            if (keep <= 0) coeffs_.clear();
            else coeffs_.resize(static_cast<size_t>(keep));
            while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
        }
        if (coeffs_.empty()) min_exp2_ = 0;
    }

    long long min_exp2_ = 0;
    std::vector<Int> coeffs_;
    long long prec2_ = kExactPrec;
};

/// Forget everything at half-exponents >= prec2.
inline QSeries truncate(const QSeries& f, long long prec2) {
    if (prec2 >= f.prec2()) return f;
    std::vector<Int> cs;
    if (!f.is_zero() && f.min_exp2() < prec2) {
        long long n = std::min<long long>(prec2 - f.min_exp2(), static_cast<long long>(f.coeffs().size()));
        cs.assign(f.coeffs().begin(), f.coeffs().begin() + n);
    }
    return QSeries::from_coeffs(f.is_zero() ? 0 : f.min_exp2(), std::move(cs), prec2);
}

/// True if f and g have the same coefficients at every half-exponent < prec2.
/// Both inputs must be known at least that far.
inline bool agree_to(const QSeries& f, const QSeries& g, long long prec2) {
    if (f.prec2() < prec2 || g.prec2() < prec2)
        throw std::invalid_argument("agree_to: inputs not known to the requested precision");
    return truncate(f, prec2) == truncate(g, prec2);
}

/// Lowest known monomial.  Requires a nonzero series with tight valuation.
inline Monomial lowest(const QSeries& f) {
    if (f.is_zero()) throw std::domain_error("lowest: zero series");
    return Monomial{f.coeffs().front(), f.min_exp2()};
}

/// Highest monomial; only meaningful for exact Laurent polynomials.
inline Monomial highest(const QSeries& f) {
    if (f.is_zero()) throw std::domain_error("highest: zero series");
    if (!f.is_exact()) throw std::domain_error("highest: series is not an exact Laurent polynomial");
    return Monomial{f.coeffs().back(), f.max_exp2()};
}

inline std::pair<Monomial, Monomial> extremal(const QSeries& f) { return {lowest(f), highest(f)}; }

/**
 * Inverse of a unit series (lowest coefficient +-1), to target half-exponent
 * precision target_prec2.  With no explicit target the input's own precision
 * is used; an exact non-monomial input then has no finite representation and
 * is rejected.
 */
inline QSeries invert_unit(const QSeries& f, long long target_prec2 = kExactPrec) {
    if (f.is_zero()) throw std::domain_error("invert_unit: zero series");
    const Int& lt = f.coeffs().front();
    if (lt != 1 && lt != -1) throw std::domain_error("invert_unit: not invertible over the integers");
    long long m = f.min_exp2();
    if (target_prec2 >= kExactPrec) {
        if (f.is_exact()) {
            if (f.coeffs().size() == 1) return QSeries::monomial(lt, -m);
            throw std::invalid_argument("invert_unit: exact non-monomial needs an explicit precision");
        }
        target_prec2 = f.prec2() - 2 * m;
    } else if (!f.is_exact() && f.prec2() - 2 * m < target_prec2) {
        throw std::invalid_argument("invert_unit: input precision too low for requested output precision");
    }
    // g = lt^-1 q^(-m/2) / (1+u) with u = the normalized tail of f.
    long long rel = target_prec2 + m;  // number of half-exponent terms of 1/(1+u)
    if (rel <= 0) return QSeries::zero(target_prec2);
    std::vector<Int> inv(static_cast<size_t>(rel));
    inv[0] = 1;
    const auto& fc = f.coeffs();
    for (long long k = 1; k < rel; ++k) {
        Int acc = 0;
        long long jmax = std::min<long long>(k, static_cast<long long>(fc.size()) - 1);
        for (long long j = 1; j <= jmax; ++j) {
            if (fc[static_cast<size_t>(j)] != 0) acc += fc[static_cast<size_t>(j)] * inv[static_cast<size_t>(k - j)];
        }
        // divide by lt (= +-1)
        inv[static_cast<size_t>(k)] = (lt == 1) ? -acc : acc;
    }
    if (lt == -1)
        for (auto& c : inv) c = -c;
    return QSeries::from_coeffs(-m, std::move(inv), target_prec2);
}

/// Exact division of Laurent polynomials; throws if den does not divide num.
inline QSeries divide_exact(const QSeries& num, const QSeries& den) {
    if (!num.is_exact() || !den.is_exact())
        throw std::invalid_argument("divide_exact: both operands must be exact");
    if (den.is_zero()) throw std::domain_error("divide_exact: division by zero");
    if (num.is_zero()) return QSeries::zero();
    long long qlen = static_cast<long long>(num.coeffs().size()) - static_cast<long long>(den.coeffs().size()) + 1;
    if (qlen <= 0) throw std::domain_error("divide_exact: not divisible");
    const Int& lt = den.coeffs().front();
    std::vector<Int> rem(num.coeffs());
    std::vector<Int> quot(static_cast<size_t>(qlen));
    for (long long k = 0; k < qlen; ++k) {
        Int c = rem[static_cast<size_t>(k)];
        if (c != 0) {
            if (c % lt != 0) throw std::domain_error("divide_exact: not divisible");
            c /= lt;
            quot[static_cast<size_t>(k)] = c;
            const auto& dc = den.coeffs();
            for (size_t j = 0; j < dc.size(); ++j)
                if (dc[j] != 0) rem[static_cast<size_t>(k) + j] -= c * dc[j];
        }
    }
    for (const auto& r : rem)
        if (r != 0) throw std::domain_error("divide_exact: not divisible");
    return QSeries::from_coeffs(num.min_exp2() - den.min_exp2(), std::move(quot));
}

/// (q;q)_n as an exact polynomial.
inline QSeries pochhammer(long long n) {
    if (n < 0) throw std::invalid_argument("pochhammer: negative subscript");
    QSeries p = QSeries::one();
    for (long long j = 1; j <= n; ++j)
        p *= QSeries::one() - QSeries::monomial(1, 2 * j);
    return p;
}

/// (q;q)_n truncated at prec2; factors beyond the precision are 1.
inline QSeries pochhammer(long long n, long long prec2) {
    if (n < 0) throw std::invalid_argument("pochhammer: negative subscript");
    QSeries p = truncate(QSeries::one(), prec2);
    for (long long j = 1; j <= n && 2 * j < prec2; ++j)
        p *= QSeries::one() - QSeries::monomial(1, 2 * j);
    return truncate(p, prec2);
}

/// (q;q)_infinity truncated at prec2.
inline QSeries pochhammer_inf(long long prec2) {
    if (prec2 < 0) throw std::invalid_argument("pochhammer_inf: negative precision");
    // (q;q)_n is stable below q^(n+1), so the finite product suffices.
    return pochhammer(prec2 / 2 + 1, prec2);
}

/// 1/(q;q)_n truncated at prec2.
inline QSeries inv_pochhammer(long long n, long long prec2) {
    if (prec2 <= 0) return QSeries::zero(prec2);
    return invert_unit(pochhammer(n, prec2), prec2);
}

inline QSeries inv_pochhammer_inf(long long prec2) {
    if (prec2 <= 0) return QSeries::zero(prec2);
    return invert_unit(pochhammer_inf(prec2), prec2);
}

/// 1 + q + ... + q^n (the balanced quantum integer [n+1] times q^(n/2)).
inline QSeries geometric_sum(long long n, long long prec2 = kExactPrec) {
    if (n < 0) return QSeries::zero(prec2);
    std::vector<Int> cs(static_cast<size_t>(2 * n + 1));
    for (long long i = 0; i <= n; ++i) cs[static_cast<size_t>(2 * i)] = 1;
    return QSeries::from_coeffs(0, std::move(cs), prec2);
}

/// Quantum integer [n] = (q^(n/2) - q^(-n/2)) / (q^(1/2) - q^(-1/2)).
inline QSeries quantum_integer(long long n) {
    if (n < 0) throw std::invalid_argument("quantum_integer: negative argument");
    if (n == 0) return QSeries::zero();
    std::vector<Int> cs(static_cast<size_t>(2 * n - 1));
    for (long long i = 0; i < n; ++i) cs[static_cast<size_t>(2 * i)] = 1;
    return QSeries::from_coeffs(-(n - 1), std::move(cs));
}

/// [n]! with [0]! = 1.
inline QSeries quantum_factorial(long long n) {
    QSeries p = QSeries::one();
    for (long long k = 2; k <= n; ++k) p *= quantum_integer(k);
    return p;
}

/**
 * Balanced quantum multinomial of a over parts, computed as
 * q^(-(a^2 - sum parts^2)/4) (q;q)_a / prod (q;q)_part.  The quarter-exponent
 * prefactor always lands on an integral half-exponent; this is asserted.
 */
inline QSeries quantum_multinomial(long long a, const std::vector<long long>& parts) {
    long long sum = 0, sq = a * a;
    for (long long p : parts) {
        if (p < 0) throw std::invalid_argument("quantum_multinomial: negative part");
        sum += p;
        sq -= p * p;
    }
    if (sum != a) throw std::invalid_argument("quantum_multinomial: parts do not sum to the top argument");
    long long exp4 = -sq;  // quarter-exponent units
    if (exp4 % 2 != 0) throw std::logic_error("quantum_multinomial: non-integral half-exponent");
    QSeries den = QSeries::one();
    for (long long p : parts) den *= pochhammer(p);
    return QSeries::monomial(1, exp4 / 2) * divide_exact(pochhammer(a), den);
}

/// f divided by its lowest monomial, so the constant term becomes 1.
inline QSeries hat(const QSeries& f) {
    Monomial lt = lowest(f);
    if (lt.coeff != 1 && lt.coeff != -1) throw std::domain_error("hat: lowest coefficient is not a unit");
    return QSeries::monomial(lt.coeff, -lt.exp2) * f;
}

/// Human-readable rendering, e.g. "1 - 2*q - 3*q^2 + q^(5/2)".
inline std::string to_string(const QSeries& f) {
    std::string s;
    for (size_t i = 0; i < f.coeffs().size(); ++i) {
        const Int& c = f.coeffs()[i];
        if (c == 0) continue;
        long long e2 = f.min_exp2() + static_cast<long long>(i);
        Int a = c < 0 ? Int(-c) : c;
        s += s.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        bool unit_coeff = (a == 1) && e2 != 0;
        if (!unit_coeff) s += a.str();
        if (e2 != 0) {
            if (!unit_coeff) s += "*";
            s += "q";
            if (e2 != 2) {
                if (e2 % 2 == 0) s += "^" + std::to_string(e2 / 2);
                else s += "^(" + std::to_string(e2) + "/2)";
            }
        }
    }
    if (s.empty()) s = "0";
    if (!f.is_exact()) {
        long long p = f.prec2();
        s += " + O(q";
        if (p % 2 == 0) s += "^" + std::to_string(p / 2);
        else s += "^(" + std::to_string(p) + "/2)";
        s += ")";
    }
    return s;
}

}  // namespace spindex
