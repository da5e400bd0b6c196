#pragma once

// Classes in R(T) (x)_{R(G)} R(T) ~ K_T^0(G/B): tensor representatives,
// localization (the canonical equality test), the Steinberg basis, the
// zeta-class table, first- and second-factor Demazure operators, transpose,
// and the Euler pairing against Schubert structure sheaves.

#include "loopk/laurent.hpp"

namespace loopk {

// Formal sum of a (x) b pairs. The list is NOT canonical; semantic equality
// goes through the localization vector.
struct TensorClass {
    std::vector<std::pair<LaurentPoly, LaurentPoly>> pairs;

    static TensorClass zero() { return {}; }
    static TensorClass of(LaurentPoly a, LaurentPoly b) {
        TensorClass c;
        c.pairs.emplace_back(std::move(a), std::move(b));
        return c;
    }
    static TensorClass one(int rank) {
        return of(LaurentPoly::one(rank), LaurentPoly::one(rank));
    }

    TensorClass& operator+=(const TensorClass& o) {
        for (const auto& p : o.pairs) pairs.push_back(p);
        return *this;
    }
    friend TensorClass operator+(TensorClass a, const TensorClass& b) { return a += b; }
    friend TensorClass operator-(const TensorClass& a) {
        TensorClass r = a;
        for (auto& [x, y] : r.pairs) x = -x;
        return r;
    }
    friend TensorClass operator-(TensorClass a, const TensorClass& b) { return a += -b; }

    // Multiply by f (x) g termwise.
    TensorClass scaled(const LaurentPoly& f, const LaurentPoly& g) const {
        TensorClass r;
        for (const auto& [a, b] : pairs) r.pairs.emplace_back(f * a, g * b);
        return r;
    }

    // Merge pairs sharing the same right factor; drops zero pairs.
    TensorClass combined() const {
        std::map<LaurentPoly, LaurentPoly> by_right;
        for (const auto& [a, b] : pairs) {
            if (a.is_zero() || b.is_zero()) continue;
            by_right[b] += a;
        }
        TensorClass r;
        for (auto& [b, a] : by_right)
            if (!a.is_zero()) r.pairs.emplace_back(std::move(a), b);
        return r;
    }
};

// loc_z(a (x) b) = a * (z . b); evaluation at the fixed point z.
inline LaurentPoly localize(const WeylGroup& w, const TensorClass& c, WeylIndex z) {
    LaurentPoly r;
    for (const auto& [a, b] : c.pairs) r += a * weyl_act(w, z, b);
    return r;
}

// |c| = loc_e(c).
inline LaurentPoly abs_map(const TensorClass& c) {
    LaurentPoly r;
    for (const auto& [a, b] : c.pairs) r += a * b;
    return r;
}

inline std::vector<LaurentPoly> localization_vector(const WeylGroup& w, const TensorClass& c) {
    std::vector<LaurentPoly> v(w.size());
    for (int z = 0; z < w.size(); ++z) v[static_cast<size_t>(z)] = localize(w, c, z);
    return v;
}

inline bool tensor_equal(const WeylGroup& w, const TensorClass& a, const TensorClass& b) {
    return localization_vector(w, a) == localization_vector(w, b);
}

// First-factor Weyl action; index 0 acts through s_theta.
inline TensorClass sprime(const WeylGroup& w, int i, const TensorClass& c) {
    if (i < 0 || i > w.rank()) throw ArgError("sprime: index out of range");
    TensorClass r;
    for (const auto& [a, b] : c.pairs) r.pairs.emplace_back(weyl_act_simple(w, i, a), b);
    return r;
}

// D_i'(a (x) b) = (D_i a) (x) b, defined for all affine indices 0..l.
inline TensorClass dprime(const WeylGroup& w, int i, const TensorClass& c) {
    if (i < 0 || i > w.rank()) throw ArgError("dprime: index out of range");
    TensorClass r;
    for (const auto& [a, b] : c.pairs) {
        LaurentPoly da = demazure_D(w, i, a);
        if (!da.is_zero()) r.pairs.emplace_back(std::move(da), b);
    }
    return r;
}

// D_i''(a (x) b) = a (x) (D_i b); finite indices only.
inline TensorClass dsecond(const WeylGroup& w, int i, const TensorClass& c) {
    if (i < 1 || i > w.rank()) throw ArgError("dsecond: index out of range");
    TensorClass r;
    for (const auto& [a, b] : c.pairs) {
        LaurentPoly db = demazure_D(w, i, b);
        if (!db.is_zero()) r.pairs.emplace_back(a, std::move(db));
    }
    return r;
}

// The pushforward-pullback Demazure operator on the second factor:
// frak_d_i(f) = (f - e^{alpha_i} s_i f) / (1 - e^{alpha_i}).
inline LaurentPoly frak_demazure(const WeylGroup& w, int i, const LaurentPoly& f) {
    if (i < 1 || i > w.rank()) throw ArgError("frak_demazure: index out of range");
    const auto& rs = w.root_system();
    LaurentPoly ea = LaurentPoly::monomial(rs.simple_root(i - 1));
    LaurentPoly num = f - ea * weyl_act(w, w.simple(i), f);
    return exact_div_checked(num, LaurentPoly::one(rs.rank) - ea, "frak_demazure");
}

// frak_D_i(a (x) b) = a (x) frak_d_i(b); finite indices only.
inline TensorClass frakD(const WeylGroup& w, int i, const TensorClass& c) {
    TensorClass r;
    for (const auto& [a, b] : c.pairs) {
        LaurentPoly db = frak_demazure(w, i, b);
        if (!db.is_zero()) r.pairs.emplace_back(a, std::move(db));
    }
    return r;
}

// t(a (x) b) = b (x) a.
inline TensorClass transpose(const TensorClass& c) {
    TensorClass r;
    for (const auto& [a, b] : c.pairs) r.pairs.emplace_back(b, a);
    return r;
}

struct SteinbergBasis {
    std::vector<Weight> delta;                         // delta_x, indexed by W order
    std::vector<std::vector<LaurentPoly>> e_matrix;    // E_{x,y} = y . e^{delta_x}
};

// delta_x = x^{-1} sum_{i : x^{-1} alpha_i < 0} omega_i.
inline SteinbergBasis build_steinberg(const WeylGroup& w) {
    const auto& rs = w.root_system();
    SteinbergBasis sb;
    const int n = w.size();
    sb.delta.resize(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) {
        WeylIndex xi = w.inverse(x);
        Weight sum = Weight::zero(rs.rank);
        for (int i = 0; i < rs.rank; ++i)
            if (!rs.is_positive_root(w.act(xi, rs.simple_root(i))))
                sum = sum + rs.fundamental_weight(i);
        sb.delta[static_cast<size_t>(x)] = w.act(xi, sum);
    }
    sb.e_matrix.assign(static_cast<size_t>(n), std::vector<LaurentPoly>(static_cast<size_t>(n)));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            sb.e_matrix[static_cast<size_t>(x)][static_cast<size_t>(y)] =
                LaurentPoly::monomial(w.act(y, sb.delta[static_cast<size_t>(x)]));
    if (sb.delta[0] != Weight::zero(rs.rank))
        throw IntegrityError("Steinberg basis: delta_e != 0");
    return sb;
}

// Zeta classes, indexed by W order. Built once: the w_o class from the
// Steinberg linear system, then descent through D_i' with a sign.
struct ZetaTable {
    std::vector<TensorClass> zeta;
};

inline ZetaTable build_zeta_table(const WeylGroup& w, const SteinbergBasis& sb) {
    const auto& rs = w.root_system();
    const int n = w.size();

    // Localization row of zeta^{w_o}: zero except prod_{alpha>0}(1 - e^{-alpha}) at w_o.
    std::vector<LaurentPoly> rhs(static_cast<size_t>(n));
    LaurentPoly top = LaurentPoly::one(rs.rank);
    for (const auto& alpha : rs.positive_roots)
        top *= LaurentPoly::one(rs.rank) - LaurentPoly::monomial(-alpha);
    rhs[static_cast<size_t>(w.longest())] = top;

    std::vector<LaurentPoly> r = solve_row_system(sb.e_matrix, rhs);

    ZetaTable zt;
    zt.zeta.resize(static_cast<size_t>(n));
    TensorClass top_class;
    for (int x = 0; x < n; ++x)
        if (!r[static_cast<size_t>(x)].is_zero())
            top_class.pairs.emplace_back(r[static_cast<size_t>(x)],
                                         LaurentPoly::monomial(sb.delta[static_cast<size_t>(x)]));
    zt.zeta[static_cast<size_t>(w.longest())] = top_class;

    // zeta^{s_i x} = -D_i'(zeta^x) whenever s_i x < x; walk down from w_o.
    std::vector<bool> have(static_cast<size_t>(n), false);
    have[static_cast<size_t>(w.longest())] = true;
    std::vector<WeylIndex> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](WeylIndex a, WeylIndex b) { return w.length(a) > w.length(b); });
    for (WeylIndex x : order) {
        if (!have[static_cast<size_t>(x)])
            throw IntegrityError("zeta descent missed an element");
        for (int i = 1; i <= w.rank(); ++i) {
            WeylIndex sx = w.mult(w.simple(i), x);
            if (w.length(sx) < w.length(x) && !have[static_cast<size_t>(sx)]) {
                zt.zeta[static_cast<size_t>(sx)] =
                    (-dprime(w, i, zt.zeta[static_cast<size_t>(x)])).combined();
                have[static_cast<size_t>(sx)] = true;
            }
        }
    }

    // Table invariants: sum zeta^x = 1 (x) 1 and |zeta^x| = delta_{x,e}.
    TensorClass total;
    for (const auto& z : zt.zeta) total += z;
    if (!tensor_equal(w, total, TensorClass::one(rs.rank)))
        throw IntegrityError("zeta table: sum != 1 (x) 1");
    for (int x = 0; x < n; ++x) {
        LaurentPoly expect = (x == 0) ? LaurentPoly::one(rs.rank) : LaurentPoly::zero();
        if (abs_map(zt.zeta[static_cast<size_t>(x)]) != expect)
            throw IntegrityError("zeta table: |zeta^x| != delta_{x,e}");
    }
    return zt;
}

// <a (x) b, y> = a . (frak_d word of y applied to b), summed over terms.
inline LaurentPoly pairing(const WeylGroup& w, const TensorClass& c, WeylIndex y) {
    std::vector<int> word = w.word(y);
    LaurentPoly out;
    for (const auto& [a, b] : c.pairs) {
        LaurentPoly f = b;
        for (auto it = word.rbegin(); it != word.rend(); ++it) f = frak_demazure(w, *it, f);
        out += a * f;
    }
    return out;
}

// Everything the higher layers need for one root system, built once.
struct KContext {
    RootSystem rs;
    WeylGroup group;
    AffineWeyl affine;
    SteinbergBasis steinberg;
    ZetaTable zeta;

    KContext(const KContext&) = delete;
    KContext& operator=(const KContext&) = delete;

    explicit KContext(const std::string& type)
        : rs(build_root_system(type)),
          group(rs),
          affine(group),
          steinberg(build_steinberg(group)),
          zeta(build_zeta_table(group, steinberg)) {}

    const TensorClass& zeta_class(WeylIndex x) const {
        return zeta.zeta[static_cast<size_t>(x)];
    }

    // O_{X^x} as the Bruhat ideal-sheaf sum  sum_{z >= x} zeta^z.
    TensorClass opposite_structure_sheaf(WeylIndex x) const {
        TensorClass r;
        for (int z = 0; z < group.size(); ++z)
            if (group.bruhat_leq(x, z)) r += zeta.zeta[static_cast<size_t>(z)];
        return r;
    }
};

} // namespace loopk
