#pragma once

// Finite Weyl group W (fully enumerated, canonical matrix form) and the
// affine Weyl group W x Q^vee with elements in the x*tau_q normal form.

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "loopk/cartan.hpp"

namespace loopk {

// Element of the finite Weyl group, identified by its index in the
// WeylGroup enumeration. The enumeration is graded by length, then
// lexicographic by reduced word, so index 0 is the identity.
using WeylIndex = int;

class WeylGroup {
public:
    explicit WeylGroup(const RootSystem& rs) : rs_(rs) { enumerate(); }

    const RootSystem& root_system() const { return rs_; }
    int size() const { return static_cast<int>(elems_.size()); }
    int rank() const { return rs_.rank; }

    WeylIndex identity() const { return 0; }
    WeylIndex simple(int i) const { return simple_[check_i(i)]; }
    WeylIndex longest() const { return longest_; }
    WeylIndex s_theta() const { return s_theta_; }

    int length(WeylIndex w) const { return elems_[w].length; }
    const std::vector<int>& word(WeylIndex w) const { return elems_[w].word; }
    WeylIndex inverse(WeylIndex w) const { return elems_[w].inverse; }
    WeylIndex mult(WeylIndex a, WeylIndex b) const { return mult_[a][static_cast<size_t>(b)]; }

    Weight act(WeylIndex w, const Weight& lambda) const {
        const auto& m = elems_[w].wmat;
        const int l = rs_.rank;
        std::vector<std::int64_t> c(l, 0);
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) c[i] += m[i][j] * lambda.coords[j];
        return Weight(std::move(c));
    }
    CorootVector act(WeylIndex w, const CorootVector& q) const {
        const auto& m = elems_[w].cmat;
        const int l = rs_.rank;
        std::vector<std::int64_t> c(l, 0);
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) c[i] += m[i][j] * q.coords[j];
        return CorootVector(std::move(c));
    }

    // Subword criterion, cached over all pairs.
    bool bruhat_leq(WeylIndex x, WeylIndex y) const { return bruhat_[x][static_cast<size_t>(y)]; }

    // Left/right descent in the finite group.
    bool right_descent(WeylIndex w, int i) const {
        return length(mult(w, simple(i))) < length(w);
    }
    bool left_descent(WeylIndex w, int i) const {
        return length(mult(simple(i), w)) < length(w);
    }

private:
    struct Elem {
        std::vector<std::vector<std::int64_t>> wmat; // action on weight coords
        std::vector<std::vector<std::int64_t>> cmat; // action on coroot coords
        std::vector<int> word;                       // reduced, 1-based simple indices
        int length = 0;
        WeylIndex inverse = 0;
    };

    int check_i(int i) const {
        if (i < 1 || i > rs_.rank) throw ArgError("finite simple index out of range");
        return i - 1;
    }

    static std::vector<std::vector<std::int64_t>> identity_mat(int l) {
        std::vector<std::vector<std::int64_t>> m(l, std::vector<std::int64_t>(l, 0));
        for (int i = 0; i < l; ++i) m[i][i] = 1;
        return m;
    }

    void enumerate() {
        const int l = rs_.rank;
        std::map<std::vector<std::vector<std::int64_t>>, WeylIndex> index_of;

        Elem e;
        e.wmat = identity_mat(l);
        e.cmat = identity_mat(l);
        elems_.push_back(e);
        index_of[e.wmat] = 0;

        simple_.assign(l, -1);
        // BFS by length; within a level children are visited in word-lex order.
        for (size_t head = 0; head < elems_.size(); ++head) {
            Elem cur = elems_[head]; // copy: elems_ may reallocate
            for (int i = 1; i <= l; ++i) {
                Elem nxt;
                nxt.wmat = right_mult_simple_w(cur.wmat, i);
                if (index_of.count(nxt.wmat)) continue;
                nxt.cmat = right_mult_simple_c(cur.cmat, i);
                nxt.word = cur.word;
                nxt.word.push_back(i);
                nxt.length = cur.length + 1;
                index_of[nxt.wmat] = static_cast<WeylIndex>(elems_.size());
                elems_.push_back(std::move(nxt));
                if (cur.length == 0) simple_[i - 1] = static_cast<WeylIndex>(elems_.size() - 1);
            }
        }

        longest_ = static_cast<WeylIndex>(elems_.size() - 1);
        if (elems_[longest_].length != static_cast<int>(rs_.positive_roots.size()))
            throw IntegrityError("longest element length != |R+|");

        // Multiplication table via matrix composition.
        const int n = size();
        mult_.assign(n, std::vector<WeylIndex>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                mult_[a][static_cast<size_t>(b)] = index_of.at(compose(elems_[a].wmat, elems_[b].wmat));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (mult_[a][static_cast<size_t>(b)] == 0) elems_[a].inverse = b;

        // Recompute lengths from the inversion-set definition as a cross-check.
        for (int a = 0; a < n; ++a) {
            int inv = 0;
            for (const auto& alpha : rs_.positive_roots)
                if (!rs_.is_positive_root(act(a, alpha))) ++inv;
            if (inv != elems_[a].length)
                throw IntegrityError("reduced-word length disagrees with inversion count");
        }

        // s_theta: the reflection sending theta -> -theta and fixing its wall.
        s_theta_ = find_reflection(rs_.theta, rs_.theta_coroot);

        build_bruhat();
    }

    std::vector<std::vector<std::int64_t>> right_mult_simple_w(
        const std::vector<std::vector<std::int64_t>>& m, int i) const {
        // (w s_i) lambda = w (s_i lambda); columns transform.
        const int l = rs_.rank;
        std::vector<std::vector<std::int64_t>> si(l, std::vector<std::int64_t>(l, 0));
        Weight ai = rs_.simple_root(i - 1);
        for (int c = 0; c < l; ++c) {
            Weight basis = rs_.fundamental_weight(c);
            Weight img = basis - basis.coords[i - 1] * ai;
            for (int r = 0; r < l; ++r) si[r][c] = img.coords[r];
        }
        return compose(m, si);
    }
    std::vector<std::vector<std::int64_t>> right_mult_simple_c(
        const std::vector<std::vector<std::int64_t>>& m, int i) const {
        const int l = rs_.rank;
        std::vector<std::vector<std::int64_t>> si(l, std::vector<std::int64_t>(l, 0));
        for (int c = 0; c < l; ++c) {
            CorootVector basis = rs_.simple_coroot(c);
            CorootVector img = rs_.reflect(basis, i - 1);
            for (int r = 0; r < l; ++r) si[r][c] = img.coords[r];
        }
        return compose(m, si);
    }

    static std::vector<std::vector<std::int64_t>> compose(
        const std::vector<std::vector<std::int64_t>>& a,
        const std::vector<std::vector<std::int64_t>>& b) {
        const int l = static_cast<int>(a.size());
        std::vector<std::vector<std::int64_t>> r(l, std::vector<std::int64_t>(l, 0));
        for (int i = 0; i < l; ++i)
            for (int k = 0; k < l; ++k)
                for (int j = 0; j < l; ++j) r[i][j] += a[i][k] * b[k][j];
        return r;
    }

    WeylIndex find_reflection(const Weight& alpha, const CorootVector& alpha_vee) const {
        for (int w = 0; w < size(); ++w) {
            bool ok = true;
            for (int i = 0; i < rs_.rank && ok; ++i) {
                Weight basis = rs_.fundamental_weight(i);
                Weight expect = basis - pairing(basis, alpha_vee) * alpha;
                if (act(w, basis) != expect) ok = false;
            }
            if (ok) return w;
        }
        throw IntegrityError("reflection not found in W");
    }

    void build_bruhat() {
        const int n = size();
        bruhat_.assign(n, std::vector<bool>(n, false));
        // x <= y iff for a left descent s_i of y: (s_i x <= s_i y) when s_i x < x,
        // else x <= s_i y. Process y by increasing length.
        std::vector<WeylIndex> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](WeylIndex a, WeylIndex b) { return length(a) < length(b); });
        for (WeylIndex y : order) {
            if (length(y) == 0) {
                bruhat_[0][static_cast<size_t>(y)] = true;
                continue;
            }
            int di = elems_[y].word.front();
            WeylIndex sy = mult(simple(di), y);
            for (int x = 0; x < n; ++x) {
                WeylIndex sx = mult(simple(di), x);
                bool le;
                if (length(sx) < length(x))
                    le = bruhat_[sx][static_cast<size_t>(sy)];
                else
                    le = bruhat_[x][static_cast<size_t>(sy)];
                bruhat_[x][static_cast<size_t>(y)] = le;
            }
        }
    }

    RootSystem rs_;
    std::vector<Elem> elems_;
    std::vector<std::vector<WeylIndex>> mult_;
    std::vector<std::vector<bool>> bruhat_;
    std::vector<WeylIndex> simple_;
    WeylIndex longest_ = 0;
    WeylIndex s_theta_ = 0;
};

// Affine element x * tau_q.
struct AffElem {
    WeylIndex x = 0;
    CorootVector q;

    friend bool operator==(const AffElem& a, const AffElem& b) { return a.x == b.x && a.q == b.q; }
    friend bool operator!=(const AffElem& a, const AffElem& b) { return !(a == b); }
    friend bool operator<(const AffElem& a, const AffElem& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.q < b.q;
    }
};

class AffineWeyl {
public:
    explicit AffineWeyl(const WeylGroup& w) : w_(w) {
        // Pin the group element behind s_0 = s_theta * tau_{-theta^vee} by its length.
        if (length(simple(0)) != 1)
            throw IntegrityError("affine simple reflection s_0 does not have length 1");
    }

    const WeylGroup& finite() const { return w_; }
    const RootSystem& root_system() const { return w_.root_system(); }

    AffElem identity() const { return AffElem{0, CorootVector::zero(w_.rank())}; }
    AffElem from_finite(WeylIndex x) const { return AffElem{x, CorootVector::zero(w_.rank())}; }
    AffElem translation(const CorootVector& q) const { return AffElem{0, q}; }

    // s_0 = s_theta * tau_{-theta^vee}; s_i = (s_i, 0) for finite i.
    AffElem simple(int i) const {
        if (i == 0) return AffElem{w_.s_theta(), -root_system().theta_coroot};
        return from_finite(w_.simple(i));
    }

    // (x, p) (y, q) = (x y, y^{-1} p + q).
    AffElem mult(const AffElem& a, const AffElem& b) const {
        return AffElem{w_.mult(a.x, b.x), w_.act(w_.inverse(b.x), a.q) + b.q};
    }
    AffElem inverse(const AffElem& a) const {
        WeylIndex xi = w_.inverse(a.x);
        return AffElem{xi, -w_.act(a.x, a.q)};
    }

    // Iwahori-Matsumoto: l(x tau_q) = sum_{a in R+ cap x^{-1}R-} |a(q)+1|
    //                              + sum_{a in R+ cap x^{-1}R+} |a(q)|.
    int length(const AffElem& w) const {
        const auto& rs = root_system();
        std::int64_t total = 0;
        for (const auto& alpha : rs.positive_roots) {
            std::int64_t av = pairing(alpha, w.q);
            if (rs.is_positive_root(w_.act(w.x, alpha)))
                total += std::abs(av);
            else
                total += std::abs(av + 1);
        }
        return static_cast<int>(total);
    }

    // Greedy left-descent reduced word over {0..l}, smallest index first.
    std::vector<int> reduced_word(AffElem w) const {
        std::vector<int> out;
        int len = length(w);
        while (len > 0) {
            bool found = false;
            for (int i = 0; i <= w_.rank(); ++i) {
                AffElem sw = mult(simple(i), w);
                int slen = length(sw);
                if (slen < len) {
                    out.push_back(i);
                    w = sw;
                    len = slen;
                    found = true;
                    break;
                }
            }
            if (!found) throw IntegrityError("no descent found for a positive-length element");
        }
        return out;
    }

    AffElem from_word(const std::vector<int>& word) const {
        AffElem w = identity();
        for (int i : word) w = mult(w, simple(i));
        return w;
    }

    // Demazure product against a single simple reflection, both sides.
    AffElem demazure_right(const AffElem& u, int i) const {
        AffElem us = mult(u, simple(i));
        return length(us) > length(u) ? us : u;
    }
    AffElem demazure_left(int i, const AffElem& u) const {
        AffElem su = mult(simple(i), u);
        return length(su) > length(u) ? su : u;
    }
    AffElem demazure(const AffElem& u, const AffElem& v) const {
        AffElem r = u;
        for (int i : reduced_word(v)) r = demazure_right(r, i);
        return r;
    }

    // Minimal representative of w W in W' (strip finite right descents).
    AffElem min_coset_rep(AffElem w) const {
        bool changed = true;
        while (changed) {
            changed = false;
            int len = length(w);
            for (int i = 1; i <= w_.rank(); ++i) {
                AffElem ws = mult(w, simple(i));
                if (length(ws) < len) {
                    w = ws;
                    changed = true;
                    break;
                }
            }
        }
        return w;
    }

    bool is_minimal(const AffElem& w) const {
        int len = length(w);
        for (int i = 1; i <= w_.rank(); ++i)
            if (length(mult(w, simple(i))) < len) return false;
        return true;
    }

    // Stabilizer W_q of q in W, and the minimal coset representatives W'_q of W/W_q.
    struct StabilizerData {
        std::vector<WeylIndex> stabilizer;
        std::vector<WeylIndex> min_reps;
    };
    StabilizerData stabilizer_data(const CorootVector& q) const {
        StabilizerData out;
        for (int x = 0; x < w_.size(); ++x)
            if (w_.act(x, q) == q) out.stabilizer.push_back(x);
        // x in W'_q iff x alpha > 0 for every positive root alpha with alpha(q) = 0.
        const auto& rs = root_system();
        for (int x = 0; x < w_.size(); ++x) {
            bool ok = true;
            for (const auto& alpha : rs.positive_roots) {
                if (pairing(alpha, q) == 0 && !rs.is_positive_root(w_.act(x, alpha))) {
                    ok = false;
                    break;
                }
            }
            if (ok) out.min_reps.push_back(x);
        }
        return out;
    }

    bool in_min_reps(WeylIndex x, const CorootVector& q) const {
        const auto& rs = root_system();
        for (size_t k = 0; k < rs.positive_roots.size(); ++k) {
            const auto& alpha = rs.positive_roots[k];
            if (pairing(alpha, q) == 0 && !rs.is_positive_root(w_.act(x, alpha))) return false;
        }
        return true;
    }

    // All elements of W' with length <= cap, ordered by (length, key).
    std::vector<AffElem> minimal_upto(int cap) const {
        std::set<AffElem> seen;
        std::vector<AffElem> frontier{identity()};
        seen.insert(identity());
        for (int len = 0; len < cap; ++len) {
            std::vector<AffElem> next;
            for (const auto& w : frontier) {
                for (int i = 0; i <= w_.rank(); ++i) {
                    AffElem sw = mult(w, simple(i));
                    if (length(sw) == len + 1 && !seen.count(sw)) {
                        seen.insert(sw);
                        next.push_back(sw);
                    }
                }
            }
            frontier = std::move(next);
        }
        std::vector<AffElem> out;
        for (const auto& w : seen)
            if (is_minimal(w)) out.push_back(w);
        std::sort(out.begin(), out.end(), [&](const AffElem& a, const AffElem& b) {
            int la = length(a), lb = length(b);
            if (la != lb) return la < lb;
            return a < b;
        });
        return out;
    }

private:
    const WeylGroup& w_;
};

} // namespace loopk
