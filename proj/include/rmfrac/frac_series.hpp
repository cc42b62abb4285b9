#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdio>
#include <initializer_list>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "rmfrac/errors.hpp"
#include "rmfrac/special_functions.hpp"

namespace rmfrac {

inline constexpr std::size_t default_term_cap = 10000;

/// Fractional orders (m, n) shared by every series in one computation.
/// The term cap is a guard, not part of the context identity.
struct SeriesContext {
    double m = 1.0;
    double n = 1.0;
    std::size_t term_cap = default_term_cap;

    SeriesContext() = default;

    SeriesContext(double m_order, double n_order, std::size_t cap = default_term_cap)
        : m(m_order), n(n_order), term_cap(cap) {
        if (!(m > 0.0 && m <= 1.0) || !(n > 0.0 && n <= 1.0)) {
            throw DomainError("SeriesContext: orders must satisfy 0 < m, n <= 1 (m = " +
                              std::to_string(m) + ", n = " + std::to_string(n) + ")");
        }
        if (term_cap == 0) {
            throw DomainError("SeriesContext: term cap must be positive");
        }
    }

    bool compatible(const SeriesContext& other) const { return m == other.m && n == other.n; }
};

/// Exponent i*m + j*n, kept as the integer pair so that lattice points
/// which happen to coincide numerically (m == n) are never merged.
struct MultiIndex {
    int i = 0;
    int j = 0;

    auto operator<=>(const MultiIndex&) const = default;
};

enum class Axis { m, n };

inline double axis_order(const SeriesContext& ctx, Axis axis) {
    return axis == Axis::m ? ctx.m : ctx.n;
}

inline double exponent(const SeriesContext& ctx, MultiIndex idx) {
    return idx.i * ctx.m + idx.j * ctx.n;
}

/// Finite sum of c * t^(i m + j n). Canonical: no stored zero coefficients,
/// terms ordered lexicographically by (i, j).
class FracSeries {
public:
    using Terms = std::map<MultiIndex, double>;

    explicit FracSeries(SeriesContext ctx) : ctx_(ctx) {}

    FracSeries(SeriesContext ctx, std::initializer_list<std::pair<const MultiIndex, double>> terms)
        : ctx_(ctx) {
        for (const auto& [idx, c] : terms) {
            accumulate(idx, c);
        }
        canonicalize();
    }

    static FracSeries constant(SeriesContext ctx, double c) {
        FracSeries s(ctx);
        if (c != 0.0) {
            s.terms_.emplace(MultiIndex{0, 0}, c);
        }
        return s;
    }

    const SeriesContext& context() const { return ctx_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    double coefficient(MultiIndex idx) const {
        auto it = terms_.find(idx);
        return it == terms_.end() ? 0.0 : it->second;
    }

    // Adds c to the coefficient at idx without restoring canonical form;
    // callers finish with canonicalize().
    void accumulate(MultiIndex idx, double c) {
        if (idx.i < 0 || idx.j < 0) {
            throw IllFormedExponent("FracSeries: negative multi-index (" + std::to_string(idx.i) +
                                    ", " + std::to_string(idx.j) + ")");
        }
        terms_[idx] += c;
    }

    void canonicalize() {
        std::erase_if(terms_, [](const auto& kv) { return kv.second == 0.0; });
        check_cap(terms_.size());
    }

    void check_cap(std::size_t count) const {
        if (count > ctx_.term_cap) {
            throw TermCapExceeded("FracSeries: " + std::to_string(count) +
                                  " terms exceed the cap of " + std::to_string(ctx_.term_cap));
        }
    }

    FracSeries& operator+=(const FracSeries& other);
    FracSeries& operator*=(double c);

private:
    SeriesContext ctx_;
    Terms terms_;
};

namespace detail {

inline void require_compatible(const FracSeries& a, const FracSeries& b, const char* op) {
    if (!a.context().compatible(b.context())) {
        throw ContextMismatch(std::string(op) + ": series built under different orders (m, n)");
    }
}

} // namespace detail

inline FracSeries& FracSeries::operator+=(const FracSeries& other) {
    detail::require_compatible(*this, other, "add");
    for (const auto& [idx, c] : other.terms_) {
        terms_[idx] += c;
    }
    canonicalize();
    return *this;
}

inline FracSeries& FracSeries::operator*=(double c) {
    for (auto& [idx, coeff] : terms_) {
        coeff *= c;
    }
    canonicalize();
    return *this;
}

inline FracSeries constant(const SeriesContext& ctx, double c) { return FracSeries::constant(ctx, c); }

inline FracSeries add(FracSeries lhs, const FracSeries& rhs) {
    lhs += rhs;
    return lhs;
}

inline FracSeries scale(FracSeries s, double c) {
    s *= c;
    return s;
}

inline FracSeries mul(const FracSeries& lhs, const FracSeries& rhs) {
    detail::require_compatible(lhs, rhs, "mul");
    FracSeries out(lhs.context());
    for (const auto& [ia, ca] : lhs.terms()) {
        for (const auto& [ib, cb] : rhs.terms()) {
            out.accumulate({ia.i + ib.i, ia.j + ib.j}, ca * cb);
        }
        out.check_cap(out.size());
    }
    out.canonicalize();
    return out;
}

inline FracSeries operator+(FracSeries lhs, const FracSeries& rhs) { return add(std::move(lhs), rhs); }
inline FracSeries operator-(FracSeries lhs, const FracSeries& rhs) { return add(std::move(lhs), scale(rhs, -1.0)); }
inline FracSeries operator*(const FracSeries& lhs, const FracSeries& rhs) { return mul(lhs, rhs); }
inline FracSeries operator*(FracSeries s, double c) { return scale(std::move(s), c); }
inline FracSeries operator*(double c, FracSeries s) { return scale(std::move(s), c); }

/// Riemann-Liouville integral J^nu, nu = m or n by axis:
/// c t^lam -> c Gamma(lam+1)/Gamma(lam+nu+1) t^(lam+nu).
inline FracSeries j_integral(const FracSeries& s, Axis axis) {
    const auto& ctx = s.context();
    const double nu = axis_order(ctx, axis);
    FracSeries out(ctx);
    for (const auto& [idx, c] : s.terms()) {
        const double lam = exponent(ctx, idx);
        const MultiIndex up = axis == Axis::m ? MultiIndex{idx.i + 1, idx.j} : MultiIndex{idx.i, idx.j + 1};
        out.accumulate(up, c * gamma_ratio(lam + 1.0, lam + nu + 1.0));
    }
    out.canonicalize();
    return out;
}

/// Caputo derivative D^nu on the fractional-polynomial class. Constants
/// vanish; every other term must carry at least one step on the chosen
/// axis, except a term whose exponent equals nu exactly, which maps to a
/// constant.
inline FracSeries caputo_derivative(const FracSeries& s, Axis axis) {
    const auto& ctx = s.context();
    const double nu = axis_order(ctx, axis);
    FracSeries out(ctx);
    for (const auto& [idx, c] : s.terms()) {
        if (idx.i == 0 && idx.j == 0) {
            continue;
        }
        const double lam = exponent(ctx, idx);
        MultiIndex down = axis == Axis::m ? MultiIndex{idx.i - 1, idx.j} : MultiIndex{idx.i, idx.j - 1};
        if (down.i < 0 || down.j < 0) {
            if (lam != nu) {
                throw IllFormedExponent("caputo_derivative: term (" + std::to_string(idx.i) + ", " +
                                        std::to_string(idx.j) + ") has no step on the chosen axis");
            }
            down = MultiIndex{0, 0};
        }
        out.accumulate(down, c * gamma_ratio(lam + 1.0, lam - nu + 1.0));
    }
    out.canonicalize();
    return out;
}

/// Pointwise value at t >= 0; at t = 0 only the constant term survives.
inline double evaluate(const FracSeries& s, double t) {
    if (!(t >= 0.0)) {
        throw DomainError("evaluate: t must be >= 0, got " + std::to_string(t));
    }
    const auto& ctx = s.context();
    double sum = 0.0;
    for (const auto& [idx, c] : s.terms()) {
        if (idx.i == 0 && idx.j == 0) {
            sum += c;
        } else if (t > 0.0) {
            sum += c * std::pow(t, exponent(ctx, idx));
        }
    }
    return sum;
}

/// Writes one "i j coefficient" line per term in (i, j) order, coefficient
/// with 17 significant digits.
inline void serialize(std::ostream& os, const FracSeries& s) {
    char buf[64];
    for (const auto& [idx, c] : s.terms()) {
        std::snprintf(buf, sizeof buf, "%.16e", c);
        os << idx.i << ' ' << idx.j << ' ' << buf << '\n';
    }
}

inline std::string to_string(const FracSeries& s) {
    std::ostringstream os;
    serialize(os, s);
    return os.str();
}

} // namespace rmfrac
