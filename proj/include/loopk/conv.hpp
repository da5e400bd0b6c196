#pragma once

// The convolution engine: structure constants of the modified convolution
// product on the affine Grassmannian K-homology in the Schubert basis.
//
// For a reduced word u = s_{i_1}...s_{i_n} the product against [O_{X_v}] is a
// subset sum over {1..n}: unselected positions apply D_i' and selected ones
// the first-factor Weyl action, with the selected reflections entering a
// Demazure product that lands on the output key. States that share the same
// Demazure tail are merged by summing their classes (everything downstream
// is linear in the class), which collapses the 2^n chains.

#include "loopk/kclass.hpp"

namespace loopk {

struct StructConstTable {
    std::map<AffElem, LaurentPoly> entries;

    void add(const AffElem& w, const LaurentPoly& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = entries.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) entries.erase(it);
        }
    }
    LaurentPoly get(const AffElem& w) const {
        auto it = entries.find(w);
        return it == entries.end() ? LaurentPoly::zero() : it->second;
    }
    friend bool operator==(const StructConstTable& a, const StructConstTable& b) {
        return a.entries == b.entries;
    }
};

struct ConvDiagnostics {
    std::uint64_t raw_leaves = 0;   // 2^n * |W| leaf count of the plain subset sum
    std::uint64_t merged_states = 0; // states actually processed
};

inline constexpr int kDefaultLengthCap = 18;

// [O_{X^B_u}] (.) [O_{X_v}] for u given by a word over {0..l}, v in W'.
inline StructConstTable convolve_borel(const KContext& ctx, const std::vector<int>& u_word,
                                       const AffElem& v, int length_cap = kDefaultLengthCap,
                                       ConvDiagnostics* diag = nullptr) {
    const auto& aff = ctx.affine;
    const auto& w = ctx.group;
    const int n = static_cast<int>(u_word.size());
    if (n > length_cap)
        throw ArgError("convolve_borel: word length " + std::to_string(n) +
                       " exceeds the cap " + std::to_string(length_cap));

    // Initial states: for each x in W the class zeta^x with tail x * v
    // (Demazure product); coinciding tails merge immediately.
    std::map<AffElem, TensorClass> states;
    for (int x = 0; x < w.size(); ++x) {
        AffElem tail = aff.demazure(aff.from_finite(x), v);
        states[tail] += ctx.zeta_class(x);
    }

    std::uint64_t processed = 0;
    for (int k = n - 1; k >= 0; --k) {
        const int i = u_word[static_cast<size_t>(k)];
        std::map<AffElem, TensorClass> next;
        for (const auto& [tail, c] : states) {
            ++processed;
            TensorClass dc = dprime(w, i, c);
            if (!dc.pairs.empty()) next[tail] += dc;
            AffElem stail = aff.demazure_left(i, tail);
            next[stail] += sprime(w, i, c);
        }
        for (auto& [tail, c] : next) c = c.combined();
        states = std::move(next);
    }

    StructConstTable out;
    for (const auto& [tail, c] : states) out.add(aff.min_coset_rep(tail), abs_map(c));
    if (diag) {
        diag->raw_leaves = static_cast<std::uint64_t>(w.size()) << n;
        diag->merged_states = processed;
    }
    return out;
}

// [O_{X_u}] (.) [O_{X_v}] for u, v in W': replace u by the Borel word of u.w_o.
inline StructConstTable convolve(const KContext& ctx, const AffElem& u, const AffElem& v,
                                 int length_cap = kDefaultLengthCap,
                                 ConvDiagnostics* diag = nullptr) {
    const auto& aff = ctx.affine;
    if (!aff.is_minimal(u)) throw ArgError("convolve: u is not a minimal coset representative");
    if (!aff.is_minimal(v)) throw ArgError("convolve: v is not a minimal coset representative");
    // Lengths add for u in W', so the concatenated word is reduced.
    std::vector<int> word = aff.reduced_word(u);
    for (int i : aff.finite().word(aff.finite().longest())) word.push_back(i);
    return convolve_borel(ctx, word, v, length_cap, diag);
}

inline LaurentPoly structure_constant(const KContext& ctx, const AffElem& u, const AffElem& v,
                                      const AffElem& target, int length_cap = kDefaultLengthCap) {
    if (!ctx.affine.is_minimal(target))
        throw ArgError("structure_constant: w is not a minimal coset representative");
    return convolve(ctx, u, v, length_cap).get(target);
}

// Coefficients of (z_{i_1}...z_{i_n}).(e^lambda delta_e) in the z-basis,
// keyed by the Demazure product of the selected reflections. Houses the
// line-bundle expansion coefficients f(v, w; lambda).
inline std::map<AffElem, LaurentPoly> line_bundle_expansion(const KContext& ctx,
                                                            const std::vector<int>& word,
                                                            const Weight& lambda) {
    const auto& aff = ctx.affine;
    const auto& w = ctx.group;
    std::map<AffElem, LaurentPoly> states;
    states[aff.identity()] = LaurentPoly::monomial(lambda);
    for (int k = static_cast<int>(word.size()) - 1; k >= 0; --k) {
        const int i = word[static_cast<size_t>(k)];
        std::map<AffElem, LaurentPoly> next;
        auto add = [&next](const AffElem& key, const LaurentPoly& val) {
            if (val.is_zero()) return;
            auto [it, inserted] = next.try_emplace(key, val);
            if (!inserted) {
                it->second += val;
                if (it->second.is_zero()) next.erase(it);
            }
        };
        for (const auto& [tail, f] : states) {
            add(tail, demazure_D(w, i, f));
            add(aff.demazure_left(i, tail), weyl_act_simple(w, i, f));
        }
        states = std::move(next);
    }
    return states;
}

} // namespace loopk
