#pragma once

// R(T) as sparse exact Laurent polynomials over the weight lattice.
// Monomial order: graded (by coordinate sum), then lexicographic.

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <sstream>

#include "loopk/weyl.hpp"

namespace loopk {

using Int = boost::multiprecision::cpp_int;

struct MonoLess {
    bool operator()(const Weight& a, const Weight& b) const {
        std::int64_t da = 0, db = 0;
        for (auto v : a.coords) da += v;
        for (auto v : b.coords) db += v;
        if (da != db) return da < db;
        return a.coords < b.coords;
    }
};

class LaurentPoly {
public:
    using TermMap = std::map<Weight, Int, MonoLess>;

    LaurentPoly() = default;

    static LaurentPoly zero() { return LaurentPoly(); }
    static LaurentPoly constant(int rank, Int c) {
        LaurentPoly p;
        if (c != 0) p.terms_[Weight::zero(rank)] = std::move(c);
        return p;
    }
    static LaurentPoly one(int rank) { return constant(rank, 1); }
    static LaurentPoly monomial(const Weight& lambda, Int c = 1) {
        LaurentPoly p;
        if (c != 0) p.terms_[lambda] = std::move(c);
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    Int coeff(const Weight& lambda) const {
        auto it = terms_.find(lambda);
        return it == terms_.end() ? Int(0) : it->second;
    }

    void add_term(const Weight& lambda, const Int& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(lambda, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly r;
        for (const auto& [m, c] : a.terms_) r.terms_[m] = -c;
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    friend LaurentPoly operator*(const Int& c, const LaurentPoly& a) {
        LaurentPoly r;
        if (c == 0) return r;
        for (const auto& [m, k] : a.terms_) r.terms_[m] = c * k;
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }
    friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
        return std::lexicographical_compare(
            a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
            [](const auto& x, const auto& y) {
                MonoLess less;
                if (less(x.first, y.first)) return true;
                if (less(y.first, x.first)) return false;
                return x.second < y.second;
            });
    }

    // Signed sum of e^{lambda} monomials, lambda in omega-coordinates.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const Int& c = it->second;
            if (!first) os << (c > 0 ? " + " : " - ");
            else if (c < 0) os << "-";
            Int ac = abs(c);
            bool is_const = it->first.is_zero();
            if (ac != 1 || is_const) os << ac.str();
            if (!is_const) {
                if (ac != 1) os << "*";
                os << "e^[";
                for (size_t j = 0; j < it->first.coords.size(); ++j) {
                    if (j) os << ",";
                    os << it->first.coords[j];
                }
                os << "]";
            }
            first = false;
        }
        return os.str();
    }

private:
    TermMap terms_;
};

// Ring automorphism e^lambda -> e^{w lambda}.
inline LaurentPoly weyl_act(const WeylGroup& w, WeylIndex z, const LaurentPoly& f) {
    LaurentPoly r;
    for (const auto& [m, c] : f.terms()) r.add_term(w.act(z, m), c);
    return r;
}

// Action of the affine simple index i on R(T): i = 0 acts via s_theta.
inline LaurentPoly weyl_act_simple(const WeylGroup& w, int i, const LaurentPoly& f) {
    return weyl_act(w, i == 0 ? w.s_theta() : w.simple(i), f);
}

struct DivisionResult {
    std::optional<LaurentPoly> quotient;
    LaurentPoly remainder; // nonzero witness iff quotient is empty
};

// Exact division in R(T). Both operands are shifted so the per-variable
// minimum exponent is 0; then the quotient, when it exists, is an honest
// polynomial and greedy leading-term reduction decides divisibility.
inline DivisionResult exact_div(const LaurentPoly& f, const LaurentPoly& g) {
    if (g.is_zero()) throw ArgError("exact_div: division by zero");
    if (f.is_zero()) return {LaurentPoly::zero(), LaurentPoly::zero()};

    const int l = f.terms().begin()->first.rank();
    auto min_exp = [l](const LaurentPoly& p) {
        std::vector<std::int64_t> m(l, INT64_MAX);
        for (const auto& [mono, c] : p.terms())
            for (int j = 0; j < l; ++j) m[j] = std::min(m[j], mono.coords[j]);
        return Weight(std::move(m));
    };
    Weight uf = min_exp(f), ug = min_exp(g);
    auto shift = [](const LaurentPoly& p, const Weight& by) {
        LaurentPoly r;
        for (const auto& [mono, c] : p.terms()) r.add_term(mono + by, c);
        return r;
    };
    LaurentPoly F = shift(f, -uf), G = shift(g, -ug);

    auto lead = [](const LaurentPoly& p) { return std::prev(p.terms().end()); };
    const auto glt = lead(G);
    LaurentPoly q, r = F;
    while (!r.is_zero()) {
        auto rlt = lead(r);
        Weight d = rlt->first - glt->first;
        bool exp_ok = std::all_of(d.coords.begin(), d.coords.end(),
                                  [](std::int64_t v) { return v >= 0; });
        if (!exp_ok || rlt->second % glt->second != 0)
            return {std::nullopt, shift(r, uf)};
        Int qc = rlt->second / glt->second;
        q.add_term(d, qc);
        r -= LaurentPoly::monomial(d, qc) * G;
    }
    return {shift(q, uf - ug), LaurentPoly::zero()};
}

// Exact division that must succeed; non-exactness is an arithmetic bug.
inline LaurentPoly exact_div_checked(const LaurentPoly& f, const LaurentPoly& g,
                                     const char* what) {
    auto res = exact_div(f, g);
    if (!res.quotient)
        throw IntegrityError(std::string("non-exact division in ") + what);
    return std::move(*res.quotient);
}

// D_i(f) = (f - s_i f) / (1 - e^{alpha_i}), with alpha_0 = -theta and s_0 = s_theta.
inline LaurentPoly demazure_D(const WeylGroup& w, int i, const LaurentPoly& f) {
    const auto& rs = w.root_system();
    if (i < 0 || i > rs.rank) throw ArgError("demazure_D: index out of range");
    Weight alpha = (i == 0) ? -rs.theta : rs.simple_root(i - 1);
    LaurentPoly denom = LaurentPoly::one(rs.rank) - LaurentPoly::monomial(alpha);
    LaurentPoly num = f - weyl_act_simple(w, i, f);
    return exact_div_checked(num, denom, "demazure_D");
}

// Solves r * E = rhs exactly over R(T) (row-vector convention). Fraction-free
// Bareiss forward elimination on E^T, then back-substitution by exact division.
inline std::vector<LaurentPoly> solve_row_system(std::vector<std::vector<LaurentPoly>> E,
                                                 std::vector<LaurentPoly> rhs) {
    const int n = static_cast<int>(E.size());
    if (n == 0) return {};
    // Work with M = E^T so we solve M y = rhs with y = r^T.
    std::vector<std::vector<LaurentPoly>> M(n, std::vector<LaurentPoly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[i][j] = E[j][static_cast<size_t>(i)];

    const int rank = [&] {
        for (const auto& row : M)
            for (const auto& p : row)
                if (!p.is_zero()) return p.terms().begin()->first.rank();
        throw IntegrityError("solve_row_system: zero matrix");
    }();
    LaurentPoly prev_pivot = LaurentPoly::one(rank);

    for (int k = 0; k < n - 1; ++k) {
        // Pivot: first row with nonzero entry in column k.
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (!M[i][static_cast<size_t>(k)].is_zero()) { piv = i; break; }
        if (piv < 0) throw IntegrityError("solve_row_system: singular matrix");
        if (piv != k) {
            std::swap(M[piv], M[k]);
            std::swap(rhs[piv], rhs[k]);
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                LaurentPoly num = M[k][static_cast<size_t>(k)] * M[i][static_cast<size_t>(j)] -
                                  M[i][static_cast<size_t>(k)] * M[k][static_cast<size_t>(j)];
                M[i][static_cast<size_t>(j)] =
                    exact_div_checked(num, prev_pivot, "Bareiss step");
            }
            LaurentPoly num = M[k][static_cast<size_t>(k)] * rhs[static_cast<size_t>(i)] -
                              M[i][static_cast<size_t>(k)] * rhs[static_cast<size_t>(k)];
            rhs[static_cast<size_t>(i)] = exact_div_checked(num, prev_pivot, "Bareiss step");
            M[i][static_cast<size_t>(k)] = LaurentPoly::zero();
        }
        prev_pivot = M[k][static_cast<size_t>(k)];
    }
    if (M[n - 1][static_cast<size_t>(n - 1)].is_zero())
        throw IntegrityError("solve_row_system: singular matrix");

    // Back substitution; each division must land in R(T).
    std::vector<LaurentPoly> y(n);
    for (int i = n - 1; i >= 0; --i) {
        LaurentPoly acc = rhs[static_cast<size_t>(i)];
        for (int j = i + 1; j < n; ++j)
            acc -= M[i][static_cast<size_t>(j)] * y[static_cast<size_t>(j)];
        auto res = exact_div(acc, M[i][static_cast<size_t>(i)]);
        if (!res.quotient)
            throw IntegrityError("solve_row_system: solution is not polynomial");
        y[static_cast<size_t>(i)] = std::move(*res.quotient);
    }
    return y;
}

} // namespace loopk
