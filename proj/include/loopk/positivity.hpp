#pragma once

// Positivity predicate: after the sign twist (-1)^{l(u)+l(v)+l(w)}, every
// structure constant should lie in Z_{>=0}[e^{alpha_1}-1, ..., e^{alpha_r}-1].

#include "loopk/qk.hpp"

namespace loopk {

enum class Verdict { PASS, FAIL_NOT_IN_RING, FAIL_NEGATIVE_COEFF };

inline const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::PASS: return "PASS";
        case Verdict::FAIL_NOT_IN_RING: return "FAIL_NOT_IN_RING";
        default: return "FAIL_NEGATIVE_COEFF";
    }
}

struct PositivityResult {
    Verdict verdict = Verdict::PASS;
    // Coefficients of the polynomial in x_i = e^{alpha_i} - 1, keyed by
    // exponent vector, when verdict == PASS.
    std::map<std::vector<std::int64_t>, Int> x_polynomial;
    std::string witness;
};

class PositivityChecker {
public:
    explicit PositivityChecker(const RootSystem& rs) : rs_(rs) {
        // Integer-preserving inverse of the Cartan matrix: adj and det.
        det_ = det(rs.cartan, rs.rank);
        if (det_ == 0) throw IntegrityError("singular Cartan matrix");
        adj_.assign(rs.rank, std::vector<std::int64_t>(rs.rank, 0));
        for (int i = 0; i < rs_.rank; ++i)
            for (int j = 0; j < rs_.rank; ++j) {
                auto m = minor_of(rs.cartan, rs_.rank, j, i);
                std::int64_t c = det(m, rs_.rank - 1);
                adj_[i][j] = ((i + j) % 2 == 0) ? c : -c;
            }
    }

    // checked_sign: parity of l(u)+l(v)+l(w); the candidate positive element
    // is (-1)^checked_sign * c.
    PositivityResult check(const LaurentPoly& c, int checked_sign) const {
        PositivityResult res;
        // Substitute e^{omega-coords lambda} -> prod (1+x_i)^{n_i} where
        // lambda = Cartan * n, i.e. n = adj * lambda / det. Non-integral or
        // negative n means the monomial is not in the subring.
        std::map<std::vector<std::int64_t>, Int> acc;
        const Int sign = (checked_sign % 2 == 0) ? 1 : -1;
        for (const auto& [mono, coeff] : c.terms()) {
            std::vector<std::int64_t> n(rs_.rank, 0);
            for (int i = 0; i < rs_.rank; ++i) {
                std::int64_t s = 0;
                for (int j = 0; j < rs_.rank; ++j) s += adj_[i][j] * mono.coords[j];
                if (s % det_ != 0) {
                    res.verdict = Verdict::FAIL_NOT_IN_RING;
                    res.witness = "monomial " + mono_str(mono) + " is not in the root lattice";
                    return res;
                }
                n[i] = s / det_;
                if (n[i] < 0) {
                    res.verdict = Verdict::FAIL_NOT_IN_RING;
                    res.witness = "monomial " + mono_str(mono) + " has a negative root coordinate";
                    return res;
                }
            }
            add_expanded(acc, n, sign * coeff);
        }
        for (auto it = acc.begin(); it != acc.end();) {
            if (it->second == 0) it = acc.erase(it);
            else ++it;
        }
        for (const auto& [e, v] : acc) {
            if (v < 0) {
                res.verdict = Verdict::FAIL_NEGATIVE_COEFF;
                std::ostringstream os;
                os << "coefficient " << v << " at x-exponent (";
                for (size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
                os << ")";
                res.witness = os.str();
                return res;
            }
        }
        res.x_polynomial = std::move(acc);
        // Round trip: re-expand in e^{alpha} and compare.
        LaurentPoly back = LaurentPoly::zero();
        for (const auto& [e, v] : res.x_polynomial) {
            LaurentPoly term = LaurentPoly::constant(rs_.rank, sign * v);
            for (int i = 0; i < rs_.rank; ++i) {
                LaurentPoly xi = LaurentPoly::monomial(rs_.simple_root(i), 1)
                               - LaurentPoly::one(rs_.rank);
                for (std::int64_t k = 0; k < e[i]; ++k) term = term * xi;
            }
            back += term;
        }
        if (!(back == c)) throw IntegrityError("positivity round trip failed");
        return res;
    }

private:
    const RootSystem& rs_;
    std::vector<std::vector<std::int64_t>> adj_;
    std::int64_t det_ = 0;
    // Memoized expansions of prod (1+x_i)^{n_i}.
    mutable std::map<std::vector<std::int64_t>, std::map<std::vector<std::int64_t>, Int>> memo_;

    static std::vector<std::vector<std::int64_t>> minor_of(
        const std::vector<std::vector<std::int64_t>>& m, int n, int row, int col) {
        std::vector<std::vector<std::int64_t>> out;
        for (int i = 0; i < n; ++i) {
            if (i == row) continue;
            std::vector<std::int64_t> r;
            for (int j = 0; j < n; ++j)
                if (j != col) r.push_back(m[i][j]);
            out.push_back(std::move(r));
        }
        return out;
    }

    static std::int64_t det(const std::vector<std::vector<std::int64_t>>& m, int n) {
        if (n == 0) return 1;
        if (n == 1) return m[0][0];
        std::int64_t acc = 0;
        for (int j = 0; j < n; ++j) {
            std::int64_t c = m[0][j] * det(minor_of(m, n, 0, j), n - 1);
            acc += (j % 2 == 0) ? c : -c;
        }
        return acc;
    }

    static std::string mono_str(const Weight& w) {
        std::ostringstream os;
        os << "(";
        for (int i = 0; i < w.rank(); ++i) os << (i ? "," : "") << w.coords[i];
        os << ")";
        return os.str();
    }

    const std::map<std::vector<std::int64_t>, Int>& expand(
        const std::vector<std::int64_t>& n) const {
        auto it = memo_.find(n);
        if (it != memo_.end()) return it->second;
        std::map<std::vector<std::int64_t>, Int> cur;
        cur[std::vector<std::int64_t>(n.size(), 0)] = 1;
        for (size_t i = 0; i < n.size(); ++i) {
            for (std::int64_t k = 0; k < n[i]; ++k) {
                std::map<std::vector<std::int64_t>, Int> nxt;
                for (const auto& [e, v] : cur) {
                    nxt[e] += v;
                    auto e2 = e;
                    ++e2[i];
                    nxt[e2] += v;
                }
                cur = std::move(nxt);
            }
        }
        return memo_.emplace(n, std::move(cur)).first->second;
    }

    void add_expanded(std::map<std::vector<std::int64_t>, Int>& acc,
                      const std::vector<std::int64_t>& n, const Int& coeff) const {
        for (const auto& [e, v] : expand(n)) acc[e] += coeff * v;
    }
};

struct ScanFailure {
    std::string u, v, w;
    std::string coeff;
    Verdict verdict = Verdict::PASS;
    std::string witness;
};

struct ScanReport {
    std::string type;
    std::string kind; // "conv" or "qk"
    int max_len = 0;
    std::size_t pairs_checked = 0;
    std::size_t constants_checked = 0;
    bool complete = false;
    std::vector<ScanFailure> failures;

    bool passed() const { return complete && failures.empty(); }
};

inline std::string aff_str(const AffineWeyl& aff, const AffElem& e) {
    std::ostringstream os;
    auto w = aff.reduced_word(e);
    os << "[";
    for (size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
    os << "]";
    return os.str();
}

inline ScanReport scan_convolution(const KContext& ctx, int max_len,
                                   int length_cap = kDefaultLengthCap) {
    const auto& aff = ctx.affine;
    PositivityChecker checker(ctx.rs);
    ScanReport rep;
    rep.type = ctx.rs.label;
    rep.kind = "conv";
    rep.max_len = max_len;
    auto elems = aff.minimal_upto(max_len);
    for (const auto& u : elems) {
        for (const auto& v : elems) {
            ++rep.pairs_checked;
            StructConstTable t = convolve(ctx, u, v, length_cap);
            for (const auto& [w, c] : t.entries) {
                ++rep.constants_checked;
                int sign = static_cast<int>((aff.length(u) + aff.length(v) + aff.length(w)) % 2);
                PositivityResult r = checker.check(c, sign);
                if (r.verdict != Verdict::PASS)
                    rep.failures.push_back({aff_str(aff, u), aff_str(aff, v), aff_str(aff, w),
                                            c.str(), r.verdict, r.witness});
            }
        }
    }
    rep.complete = true;
    return rep;
}

inline ScanReport scan_qk(const KContext& ctx, const CorootVector& depth,
                          int length_cap = kDefaultLengthCap) {
    const auto& grp = ctx.group;
    const auto& aff = ctx.affine;
    PositivityChecker checker(ctx.rs);
    ScanReport rep;
    rep.type = ctx.rs.label;
    rep.kind = "qk";
    rep.max_len = grp.length(grp.longest());
    for (WeylIndex x = 0; x < grp.size(); ++x) {
        for (WeylIndex y = 0; y < grp.size(); ++y) {
            ++rep.pairs_checked;
            AffElem u{x, depth}, v{y, depth};
            StructConstTable t = convolve(ctx, u, v, length_cap);
            for (const auto& [w, c] : t.entries) {
                ++rep.constants_checked;
                int sign = static_cast<int>((aff.length(u) + aff.length(v) + aff.length(w)) % 2);
                PositivityResult r = checker.check(c, sign);
                if (r.verdict != Verdict::PASS)
                    rep.failures.push_back({aff_str(aff, u), aff_str(aff, v), aff_str(aff, w),
                                            c.str(), r.verdict, r.witness});
            }
        }
    }
    rep.complete = true;
    return rep;
}

} // namespace loopk
