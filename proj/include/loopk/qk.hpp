#pragma once

// Quantum K-theory structure constants of G/B, extracted from affine
// convolution constants: [O^x] * [O^y] = sum p^{z tau_beta}_{x tau_d, y tau_d}
// q^{beta - 2d} [O^z] for a strictly antidominant depth d.

#include "loopk/conv.hpp"

namespace loopk {

struct QKKey {
    WeylIndex z = 0;
    CorootVector eta;

    friend bool operator==(const QKKey& a, const QKKey& b) { return a.z == b.z && a.eta == b.eta; }
    friend bool operator<(const QKKey& a, const QKKey& b) {
        if (a.z != b.z) return a.z < b.z;
        return a.eta < b.eta;
    }
};

struct QKTable {
    std::map<QKKey, LaurentPoly> entries;

    void add(const QKKey& k, const LaurentPoly& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = entries.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) entries.erase(it);
        }
    }
    friend bool operator==(const QKTable& a, const QKTable& b) { return a.entries == b.entries; }
};

inline bool in_positive_coroot_cone(const CorootVector& eta) {
    return std::all_of(eta.coords.begin(), eta.coords.end(),
                       [](std::int64_t v) { return v >= 0; });
}

// Smallest strictly antidominant depth for the type: -sum alpha_i^vee when
// that is strictly antidominant, otherwise scale up until it is.
inline CorootVector default_depth(const RootSystem& rs) {
    CorootVector d = CorootVector::zero(rs.rank);
    for (int i = 0; i < rs.rank; ++i) d.coords[i] = -1;
    while (!rs.is_strictly_antidominant(d)) {
        for (auto& v : d.coords) --v;
        if (d.coords[0] < -16) throw IntegrityError("no strictly antidominant depth found");
    }
    return d;
}

inline QKTable qk_product(const KContext& ctx, WeylIndex x, WeylIndex y,
                          const CorootVector& depth, int length_cap = kDefaultLengthCap) {
    const auto& rs = ctx.rs;
    const auto& aff = ctx.affine;
    if (!rs.is_strictly_antidominant(depth))
        throw ArgError("qk_product: depth must be strictly antidominant");

    AffElem u{x, depth};
    AffElem v{y, depth};
    // Strict antidominance makes the stabilizer trivial, so x tau_depth is minimal.
    if (!aff.is_minimal(u) || !aff.is_minimal(v))
        throw IntegrityError("qk_product: x tau_depth is not minimal");

    StructConstTable p = convolve(ctx, u, v, length_cap);
    QKTable out;
    for (const auto& [key, coeff] : p.entries) {
        // key = z tau_beta through the intrinsic normal form.
        const CorootVector& beta = key.q;
        if (!rs.is_antidominant(beta))
            throw IntegrityError("qk_product: output translation part is not antidominant");
        if (!aff.in_min_reps(key.x, beta))
            throw IntegrityError("qk_product: output finite part is not a minimal stabilizer rep");
        CorootVector eta = beta - 2 * depth;
        if (!in_positive_coroot_cone(eta))
            throw IntegrityError("qk_product: eta outside the positive coroot cone");
        out.add(QKKey{key.x, eta}, coeff);
    }
    return out;
}

struct StabilityReport {
    bool stable = true;
    std::vector<std::string> discrepancies;
};

// The constants must not depend on the chosen depth.
inline StabilityReport depth_stability_check(const KContext& ctx, WeylIndex x, WeylIndex y,
                                             const std::vector<CorootVector>& depths,
                                             int length_cap = kDefaultLengthCap) {
    StabilityReport rep;
    if (depths.empty()) return rep;
    QKTable base = qk_product(ctx, x, y, depths.front(), length_cap);
    for (size_t k = 1; k < depths.size(); ++k) {
        QKTable other = qk_product(ctx, x, y, depths[k], length_cap);
        if (!(other == base)) {
            rep.stable = false;
            std::ostringstream os;
            os << "depth #" << k << " disagrees with depth #0 for (x,y)=(" << x << "," << y << ")";
            rep.discrepancies.push_back(os.str());
        }
    }
    return rep;
}

} // namespace loopk
