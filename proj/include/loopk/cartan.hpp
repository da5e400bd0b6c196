#pragma once

// Root-system data for the simple types used by the rest of the library.
// Weights live in fundamental-weight coordinates, coroot vectors in
// simple-coroot coordinates, so every pairing is an integer dot product.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace loopk {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ArgError : std::runtime_error {
    explicit ArgError(const std::string& msg) : std::runtime_error(msg) {}
};

// Signals an arithmetic invariant violation (non-exact division, singular
// Steinberg matrix, ...). Always a bug or corrupted input, never user error.
struct IntegrityError : std::runtime_error {
    explicit IntegrityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Weight lattice element in fundamental-weight coordinates:
// coords[j] = <lambda, alpha_j^vee>.
struct Weight {
    std::vector<std::int64_t> coords;

    Weight() = default;
    explicit Weight(std::vector<std::int64_t> c) : coords(std::move(c)) {}
    static Weight zero(int rank) { return Weight(std::vector<std::int64_t>(rank, 0)); }

    int rank() const { return static_cast<int>(coords.size()); }
    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(), [](std::int64_t v) { return v == 0; });
    }

    friend Weight operator+(const Weight& a, const Weight& b) {
        Weight r = a;
        for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
        return r;
    }
    friend Weight operator-(const Weight& a, const Weight& b) {
        Weight r = a;
        for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
        return r;
    }
    friend Weight operator-(const Weight& a) {
        Weight r = a;
        for (auto& v : r.coords) v = -v;
        return r;
    }
    friend Weight operator*(std::int64_t n, const Weight& a) {
        Weight r = a;
        for (auto& v : r.coords) v *= n;
        return r;
    }
    friend bool operator==(const Weight& a, const Weight& b) { return a.coords == b.coords; }
    friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
    // Lexicographic; the monomial order used by LaurentPoly is defined separately.
    friend bool operator<(const Weight& a, const Weight& b) { return a.coords < b.coords; }
};

// Coroot lattice element in simple-coroot coordinates: q = sum coords[j] * alpha_j^vee.
struct CorootVector {
    std::vector<std::int64_t> coords;

    CorootVector() = default;
    explicit CorootVector(std::vector<std::int64_t> c) : coords(std::move(c)) {}
    static CorootVector zero(int rank) { return CorootVector(std::vector<std::int64_t>(rank, 0)); }

    int rank() const { return static_cast<int>(coords.size()); }
    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(), [](std::int64_t v) { return v == 0; });
    }

    friend CorootVector operator+(const CorootVector& a, const CorootVector& b) {
        CorootVector r = a;
        for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
        return r;
    }
    friend CorootVector operator-(const CorootVector& a, const CorootVector& b) {
        CorootVector r = a;
        for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
        return r;
    }
    friend CorootVector operator-(const CorootVector& a) {
        CorootVector r = a;
        for (auto& v : r.coords) v = -v;
        return r;
    }
    friend CorootVector operator*(std::int64_t n, const CorootVector& a) {
        CorootVector r = a;
        for (auto& v : r.coords) v *= n;
        return r;
    }
    friend bool operator==(const CorootVector& a, const CorootVector& b) { return a.coords == b.coords; }
    friend bool operator!=(const CorootVector& a, const CorootVector& b) { return !(a == b); }
    friend bool operator<(const CorootVector& a, const CorootVector& b) { return a.coords < b.coords; }
};

// <lambda, q> for q = sum n_j alpha_j^vee; evaluation of a weight on a coroot vector.
inline std::int64_t pairing(const Weight& lambda, const CorootVector& q) {
    std::int64_t s = 0;
    for (size_t j = 0; j < lambda.coords.size(); ++j) s += lambda.coords[j] * q.coords[j];
    return s;
}

struct RootSystem {
    std::string label;
    int rank = 0;
    // cartan[i][j] = <alpha_j, alpha_i^vee>; column j is alpha_j in omega-coordinates.
    std::vector<std::vector<std::int64_t>> cartan;
    std::vector<Weight> positive_roots;           // omega-coordinates
    std::vector<CorootVector> positive_coroots;   // aligned with positive_roots
    Weight theta;                                 // highest root
    CorootVector theta_coroot;
    Weight rho;                                   // all omega-coordinates 1
    int dual_coxeter = 0;                         // h^vee = 1 + <rho, theta^vee>

    // alpha_i in omega-coordinates = column i of the Cartan matrix.
    Weight simple_root(int i) const {
        check_simple_index(i);
        std::vector<std::int64_t> c(rank);
        for (int k = 0; k < rank; ++k) c[k] = cartan[k][i];
        return Weight(std::move(c));
    }
    CorootVector simple_coroot(int i) const {
        check_simple_index(i);
        std::vector<std::int64_t> c(rank, 0);
        c[i] = 1;
        return CorootVector(std::move(c));
    }
    Weight fundamental_weight(int i) const {
        check_simple_index(i);
        std::vector<std::int64_t> c(rank, 0);
        c[i] = 1;
        return Weight(std::move(c));
    }

    // s_i(lambda) = lambda - <lambda, alpha_i^vee> alpha_i.
    Weight reflect(const Weight& lambda, int i) const {
        check_simple_index(i);
        return lambda - lambda.coords[i] * simple_root(i);
    }
    // s_i(q) = q - alpha_i(q) alpha_i^vee.
    CorootVector reflect(const CorootVector& q, int i) const {
        check_simple_index(i);
        Weight ai = simple_root(i);
        CorootVector r = q;
        r.coords[i] -= pairing(ai, q);
        return r;
    }

    bool is_positive_root(const Weight& w) const {
        return std::find(positive_roots.begin(), positive_roots.end(), w) != positive_roots.end();
    }

    bool is_antidominant(const CorootVector& q) const {
        for (int i = 0; i < rank; ++i)
            if (pairing(simple_root(i), q) > 0) return false;
        return true;
    }
    bool is_strictly_antidominant(const CorootVector& q) const {
        for (int i = 0; i < rank; ++i)
            if (pairing(simple_root(i), q) >= 0) return false;
        return true;
    }

private:
    void check_simple_index(int i) const {
        if (i < 0 || i >= rank) throw ArgError("simple index out of range: " + std::to_string(i));
    }
};

namespace detail {

inline std::vector<std::vector<std::int64_t>> cartan_table(const std::string& label, int& rank) {
    if (label == "A1") { rank = 1; return {{2}}; }
    if (label == "A2") { rank = 2; return {{2, -1}, {-1, 2}}; }
    if (label == "A3") { rank = 3; return {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}; }
    // C2: alpha_1 short, alpha_2 long; theta = 2 alpha_1 + alpha_2.
    if (label == "C2") { rank = 2; return {{2, -2}, {-1, 2}}; }
    throw ConfigError("unsupported root system type: " + label);
}

} // namespace detail

// Builds the full table for a supported simple type. Positive roots are
// enumerated by closure under simple reflections, ordered graded-then-lex
// in simple-root coordinates so serialized output is stable.
inline RootSystem build_root_system(const std::string& label) {
    RootSystem rs;
    rs.label = label;
    rs.cartan = detail::cartan_table(label, rs.rank);
    const int l = rs.rank;

    // Track each root in both alpha-coordinates (for positivity & ordering)
    // and its coroot in simple-coroot coordinates.
    struct RootRec {
        std::vector<std::int64_t> alpha_coords;
        CorootVector coroot;
    };
    auto pair_alpha = [&](const std::vector<std::int64_t>& ac, int i) {
        // <alpha, alpha_i^vee> = sum_j a_{ij} c_j
        std::int64_t s = 0;
        for (int j = 0; j < l; ++j) s += rs.cartan[i][j] * ac[j];
        return s;
    };

    std::vector<RootRec> roots;
    auto seen = [&](const std::vector<std::int64_t>& ac) {
        for (const auto& r : roots)
            if (r.alpha_coords == ac) return true;
        return false;
    };
    for (int i = 0; i < l; ++i) {
        RootRec r;
        r.alpha_coords.assign(l, 0);
        r.alpha_coords[i] = 1;
        r.coroot = CorootVector(std::vector<std::int64_t>(l, 0));
        r.coroot.coords[i] = 1;
        roots.push_back(std::move(r));
    }
    // BFS closure under simple reflections, keeping positive roots only.
    for (size_t head = 0; head < roots.size(); ++head) {
        for (int i = 0; i < l; ++i) {
            RootRec cur = roots[head];
            std::int64_t n = pair_alpha(cur.alpha_coords, i);
            RootRec nxt = cur;
            nxt.alpha_coords[i] -= n;
            // s_i on the coroot: beta^vee - <alpha_i, beta^vee> alpha_i^vee,
            // computed as reflection in simple-coroot coordinates.
            Weight ai_w;
            {
                std::vector<std::int64_t> c(l);
                for (int k = 0; k < l; ++k) c[k] = rs.cartan[k][i];
                ai_w = Weight(std::move(c));
            }
            nxt.coroot.coords[i] -= pairing(ai_w, cur.coroot);
            bool positive = std::all_of(nxt.alpha_coords.begin(), nxt.alpha_coords.end(),
                                        [](std::int64_t v) { return v >= 0; });
            if (positive && !seen(nxt.alpha_coords)) roots.push_back(std::move(nxt));
        }
    }
    std::sort(roots.begin(), roots.end(), [](const RootRec& a, const RootRec& b) {
        std::int64_t ha = std::accumulate(a.alpha_coords.begin(), a.alpha_coords.end(), std::int64_t(0));
        std::int64_t hb = std::accumulate(b.alpha_coords.begin(), b.alpha_coords.end(), std::int64_t(0));
        if (ha != hb) return ha < hb;
        return a.alpha_coords < b.alpha_coords;
    });

    auto alpha_to_omega = [&](const std::vector<std::int64_t>& ac) {
        std::vector<std::int64_t> wc(l, 0);
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) wc[i] += rs.cartan[i][j] * ac[j];
        return Weight(std::move(wc));
    };

    for (const auto& r : roots) {
        rs.positive_roots.push_back(alpha_to_omega(r.alpha_coords));
        rs.positive_coroots.push_back(r.coroot);
    }

    // Highest root: the unique root dominating all others in alpha-coordinates.
    const auto& top = roots.back().alpha_coords;
    for (const auto& r : roots) {
        for (int j = 0; j < l; ++j) {
            if (top[j] < r.alpha_coords[j])
                throw IntegrityError("highest root is not dominating; bad Cartan table for " + label);
        }
    }
    rs.theta = alpha_to_omega(top);
    rs.theta_coroot = roots.back().coroot;
    rs.rho = Weight(std::vector<std::int64_t>(l, 1));
    rs.dual_coxeter = 1 + static_cast<int>(pairing(rs.rho, rs.theta_coroot));
    return rs;
}

} // namespace loopk
