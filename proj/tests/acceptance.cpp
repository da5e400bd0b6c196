// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "loopk/positivity.hpp"

using namespace loopk;

namespace {

int g_failures = 0;
bool g_current_ok = true;
std::string g_current_detail;

void expect(bool cond, const std::string& what) {
    if (!cond) {
        g_current_ok = false;
        if (g_current_detail.empty()) g_current_detail = what;
    }
}

void criterion(int number, const std::string& title, const std::function<void()>& body) {
    g_current_ok = true;
    g_current_detail.clear();
    try {
        body();
    } catch (const std::exception& e) {
        g_current_ok = false;
        g_current_detail = std::string("exception: ") + e.what();
    }
    if (g_current_ok) {
        std::cout << "PASS criterion " << number << ": " << title << "\n";
    } else {
        std::cout << "FAIL criterion " << number << ": " << title << " [" << g_current_detail
                  << "]\n";
        ++g_failures;
    }
}

AffElem tau(const AffineWeyl& aff, int n) {
    std::vector<int> word;
    for (int k = n - 1; k >= 0; --k) word.push_back(k % 2 == 0 ? 0 : 1);
    return aff.from_word(word);
}

LaurentPoly random_poly(std::mt19937& rng, int rank) {
    std::uniform_int_distribution<int> nterms(1, 4);
    std::uniform_int_distribution<std::int64_t> expo(-3, 3);
    std::uniform_int_distribution<int> coef(-5, 5);
    LaurentPoly p;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        std::vector<std::int64_t> e(rank);
        for (auto& v : e) v = expo(rng);
        p.add_term(Weight(std::move(e)), coef(rng));
    }
    return p;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

int main() {
    KContext a1("A1");
    KContext a2("A2");
    KContext c2("C2");
    auto ctx_of = [&](const std::string& lab) -> KContext& {
        if (lab == "A1") return a1;
        if (lab == "A2") return a2;
        return c2;
    };

    criterion(1, "SL2 convolution closed forms", [&] {
        const auto& aff = a1.affine;
        LaurentPoly ea = LaurentPoly::monomial(Weight({2}));
        LaurentPoly one = LaurentPoly::one(1);
        for (int n = 0; n <= 5; ++n)
            for (int m = 0; m <= 2; ++m) {
                StructConstTable want;
                want.add(tau(aff, n + 2 * m), one);
                expect(convolve(a1, tau(aff, n), tau(aff, 2 * m)) == want,
                       "even product at n=" + std::to_string(n) + " m=" + std::to_string(m));
            }
        for (int n = 0; n <= 2; ++n)
            for (int m = 0; m <= 2; ++m) {
                StructConstTable want;
                want.add(tau(aff, 2 * n + 2 * m + 2), ea);
                want.add(tau(aff, 2 * n + 2 * m + 3), one - ea);
                expect(convolve(a1, tau(aff, 2 * n + 1), tau(aff, 2 * m + 1)) == want,
                       "odd product at n=" + std::to_string(n) + " m=" + std::to_string(m));
            }
        for (int m = 0; m <= 3; ++m) {
            StructConstTable want_even;
            want_even.add(tau(aff, 2 * m + 1), one);
            expect(convolve_borel(a1, {0, 1}, tau(aff, 2 * m)) == want_even,
                   "Borel-side even at m=" + std::to_string(m));
            StructConstTable want_odd;
            want_odd.add(tau(aff, 2 * m + 2), ea);
            want_odd.add(tau(aff, 2 * m + 3), one - ea);
            expect(convolve_borel(a1, {0, 1}, tau(aff, 2 * m + 1)) == want_odd,
                   "Borel-side odd at m=" + std::to_string(m));
        }
    });

    criterion(2, "QK(P1) golden with depth stability", [&] {
        const auto& w = a1.group;
        LaurentPoly ea = LaurentPoly::monomial(Weight({2}));
        QKTable want;
        want.add(QKKey{0, CorootVector({1})}, ea);
        want.add(QKKey{w.simple(1), CorootVector({0})}, LaurentPoly::one(1) - ea);
        for (std::int64_t d : {-1, -2})
            expect(qk_product(a1, w.simple(1), w.simple(1), CorootVector({d})) == want,
                   "depth " + std::to_string(d));
    });

    criterion(3, "zeta machinery closed forms", [&] {
        // A1 closed forms for the operators on the two classes.
        {
            const auto& w = a1.group;
            LaurentPoly one = LaurentPoly::one(1);
            LaurentPoly e2rho = LaurentPoly::monomial(Weight({2}));
            TensorClass ze = TensorClass::of(LaurentPoly::monomial(Weight({-1})),
                                             LaurentPoly::monomial(Weight({1})));
            TensorClass zs = TensorClass::one(1) - ze;
            expect(tensor_equal(w, a1.zeta_class(0), ze), "A1 zeta^e");
            expect(tensor_equal(w, a1.zeta_class(w.simple(1)), zs), "A1 zeta^{s1}");
            expect(tensor_equal(w, sprime(w, 0, ze),
                                TensorClass::of(LaurentPoly::monomial(Weight({1})),
                                                LaurentPoly::monomial(Weight({1})))),
                   "A1 s0' zeta^e");
            expect(tensor_equal(w, sprime(w, 0, zs), zs + ze.scaled(one - e2rho, one)),
                   "A1 s0' zeta^{s1}");
            expect(tensor_equal(w, dprime(w, 0, ze), ze.scaled(-e2rho, one)), "A1 D0' zeta^e");
            expect(tensor_equal(w, dprime(w, 0, zs), ze.scaled(e2rho, one)), "A1 D0' zeta^{s1}");
            expect(tensor_equal(w, dprime(w, 1, ze), ze), "A1 D1' zeta^e");
            expect(tensor_equal(w, dprime(w, 1, zs), -ze), "A1 D1' zeta^{s1}");
        }
        // A2: zeta^e = e^{-rho} (x) e^{rho}, D0' zeta^e = -(e^theta + e^{2theta}) zeta^e.
        for (const std::string lab : {"A1", "A2", "C2"}) {
            KContext& ctx = ctx_of(lab);
            const auto& rs = ctx.rs;
            const auto& w = ctx.group;
            expect(tensor_equal(w, ctx.zeta_class(0),
                                TensorClass::of(LaurentPoly::monomial(-rs.rho),
                                                LaurentPoly::monomial(rs.rho))),
                   lab + " zeta^e");
            LaurentPoly factor;
            for (int k = 1; k < rs.dual_coxeter; ++k)
                factor += LaurentPoly::monomial(std::int64_t(k) * rs.theta);
            expect(tensor_equal(w, dprime(w, 0, ctx.zeta_class(0)),
                                ctx.zeta_class(0).scaled(-factor, LaurentPoly::one(rs.rank))),
                   lab + " affine Demazure eigenvalue");
            // Partition of unity and vanishing of |zeta^x| off the identity.
            TensorClass total;
            for (int x = 0; x < w.size(); ++x) total += ctx.zeta_class(x);
            expect(tensor_equal(w, total, TensorClass::one(rs.rank)), lab + " sum to 1 (x) 1");
            for (int x = 0; x < w.size(); ++x) {
                LaurentPoly want =
                    (x == 0) ? LaurentPoly::one(rs.rank) : LaurentPoly::zero();
                expect(abs_map(ctx.zeta_class(x)) == want, lab + " |zeta^x|");
            }
        }
        // Localization row and transpose identities for the top class, A1 and A2.
        for (const std::string lab : {"A1", "A2"}) {
            KContext& ctx = ctx_of(lab);
            const auto& rs = ctx.rs;
            const auto& w = ctx.group;
            auto locs = localization_vector(w, ctx.zeta_class(w.longest()));
            LaurentPoly top = LaurentPoly::one(rs.rank);
            for (const auto& alpha : rs.positive_roots)
                top *= LaurentPoly::one(rs.rank) - LaurentPoly::monomial(-alpha);
            for (int x = 0; x < w.size(); ++x) {
                LaurentPoly want = (x == w.longest()) ? top : LaurentPoly::zero();
                expect(locs[static_cast<size_t>(x)] == want, lab + " top localization row");
            }
            Int sign = (w.length(w.longest()) % 2 == 0) ? 1 : -1;
            const TensorClass& zt = ctx.zeta_class(w.longest());
            LaurentPoly one = LaurentPoly::one(rs.rank);
            expect(tensor_equal(
                       w, transpose(zt),
                       zt.scaled(sign * one,
                                 LaurentPoly::monomial(std::int64_t(-2) * rs.rho))),
                   lab + " transpose, 1 (x) e^{-2rho}");
            expect(tensor_equal(w, transpose(zt),
                                zt.scaled(sign * LaurentPoly::monomial(rs.rho),
                                          LaurentPoly::monomial(-rs.rho))),
                   lab + " transpose, e^{rho} (x) e^{-rho}");
            expect(tensor_equal(
                       w, transpose(zt),
                       zt.scaled(sign * LaurentPoly::monomial(std::int64_t(2) * rs.rho), one)),
                   lab + " transpose, e^{2rho} (x) 1");
        }
    });

    criterion(4, "pairing duality over W x W for A1, A2, C2", [&] {
        for (const std::string lab : {"A1", "A2", "C2"}) {
            KContext& ctx = ctx_of(lab);
            const auto& w = ctx.group;
            for (int x = 0; x < w.size(); ++x)
                for (int y = 0; y < w.size(); ++y) {
                    LaurentPoly want =
                        (x == y) ? LaurentPoly::one(ctx.rs.rank) : LaurentPoly::zero();
                    expect(pairing(w, ctx.zeta_class(x), y) == want,
                           lab + " pairing at (" + std::to_string(x) + "," +
                               std::to_string(y) + ")");
                }
        }
    });

    criterion(5, "operator property suite, 100+ seeded random inputs", [&] {
        std::mt19937 rng(987654321);
        for (const std::string lab : {"A1", "A2"}) {
            KContext& ctx = ctx_of(lab);
            const auto& w = ctx.group;
            const int rank = ctx.rs.rank;
            for (int iter = 0; iter < 60; ++iter) {
                LaurentPoly f = random_poly(rng, rank);
                LaurentPoly g = random_poly(rng, rank);
                for (int i = 0; i <= rank; ++i) {
                    LaurentPoly df = demazure_D(w, i, f);
                    expect(demazure_D(w, i, df) == df, lab + " idempotence");
                    expect(demazure_D(w, i, f * g) ==
                               df * g + weyl_act_simple(w, i, f) * demazure_D(w, i, g),
                           lab + " twisted Leibniz");
                    expect(demazure_D(w, i, f + weyl_act_simple(w, i, f)).is_zero(),
                           lab + " annihilates invariants");
                }
                if (!g.is_zero()) {
                    auto res = exact_div(f * g, g);
                    expect(res.quotient.has_value() && *res.quotient == f,
                           lab + " exact division round trip");
                }
            }
        }
        const auto& w2 = a2.group;
        for (int iter = 0; iter < 100; ++iter) {
            LaurentPoly f = random_poly(rng, 2);
            expect(demazure_D(w2, 1, demazure_D(w2, 2, demazure_D(w2, 1, f))) ==
                       demazure_D(w2, 2, demazure_D(w2, 1, demazure_D(w2, 2, f))),
                   "A2 braid relation");
        }
    });

    criterion(6, "zeta-basis operator actions and transpose descent", [&] {
        for (const std::string lab : {"A1", "A2", "C2"}) {
            KContext& ctx = ctx_of(lab);
            const auto& rs = ctx.rs;
            const auto& w = ctx.group;
            LaurentPoly one = LaurentPoly::one(rs.rank);
            for (int x = 0; x < w.size(); ++x)
                for (int i = 1; i <= rs.rank; ++i) {
                    WeylIndex sx = w.mult(w.simple(i), x);
                    LaurentPoly ea = LaurentPoly::monomial(rs.simple_root(i - 1));
                    TensorClass sp = sprime(w, i, ctx.zeta_class(x));
                    TensorClass dp = dprime(w, i, ctx.zeta_class(x));
                    if (w.length(sx) > w.length(x)) {
                        expect(tensor_equal(w, sp, ctx.zeta_class(x).scaled(ea, one)),
                               lab + " s' ascent");
                        expect(tensor_equal(w, dp, ctx.zeta_class(x)), lab + " D' ascent");
                    } else {
                        expect(tensor_equal(w, sp,
                                            ctx.zeta_class(x) +
                                                ctx.zeta_class(sx).scaled(one - ea, one)),
                               lab + " s' descent");
                        expect(tensor_equal(w, dp, -ctx.zeta_class(sx)), lab + " D' descent");
                    }
                }
        }
        // Transpose via second-factor Demazure descent and via opposite sheaves (A2).
        const auto& rs = a2.rs;
        const auto& w = a2.group;
        LaurentPoly one = LaurentPoly::one(rs.rank);
        for (int x = 0; x < w.size(); ++x) {
            WeylIndex y = w.mult(w.longest(), w.inverse(x));
            Int sign = (w.length(x) % 2 == 0) ? 1 : -1;
            TensorClass acc = a2.zeta_class(w.longest());
            for (int i : w.word(y)) acc = dsecond(w, i, acc).combined();
            expect(tensor_equal(
                       w, transpose(a2.zeta_class(x)),
                       acc.scaled(sign * LaurentPoly::monomial(std::int64_t(2) * rs.rho), one)),
                   "A2 transpose descent at x=" + std::to_string(x));
            TensorClass opp = a2.opposite_structure_sheaf(w.inverse(x));
            expect(tensor_equal(w, transpose(a2.zeta_class(x)),
                                opp.scaled(sign * LaurentPoly::monomial(rs.rho),
                                           LaurentPoly::monomial(-rs.rho))),
                   "A2 transpose vs opposite sheaf at x=" + std::to_string(x));
        }
    });

    criterion(7, "algebra structure of the convolution product", [&] {
        // Commutativity: A1 up to length 4, A2 up to length 3.
        for (const auto& [lab, cap] : {std::pair{std::string("A1"), 4},
                                       std::pair{std::string("A2"), 3}}) {
            KContext& ctx = ctx_of(lab);
            const auto& aff = ctx.affine;
            auto elems = aff.minimal_upto(cap);
            for (size_t i = 0; i < elems.size(); ++i)
                for (size_t j = i; j < elems.size(); ++j) {
                    StructConstTable t = convolve(ctx, elems[i], elems[j]);
                    expect(t == convolve(ctx, elems[j], elems[i]), lab + " commutativity");
                    int wo_len = aff.finite().length(aff.finite().longest());
                    for (const auto& [key, c] : t.entries)
                        expect(aff.length(key) <= aff.length(elems[i]) + wo_len +
                                                      aff.length(elems[j]),
                               lab + " degree bound");
                }
        }
        // Associativity on sampled triples.
        {
            const auto& aff = a1.affine;
            auto elems = aff.minimal_upto(3);
            std::mt19937 rng(31415);
            std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
            int checked = 0;
            while (checked < 20) {
                AffElem u = elems[pick(rng)], v = elems[pick(rng)], z = elems[pick(rng)];
                StructConstTable lhs, rhs;
                for (const auto& [w, c] : convolve(a1, u, v).entries)
                    for (const auto& [t, d] : convolve(a1, w, z).entries) lhs.add(t, c * d);
                for (const auto& [w, c] : convolve(a1, v, z).entries)
                    for (const auto& [t, d] : convolve(a1, u, w).entries) rhs.add(t, c * d);
                expect(lhs == rhs, "A1 associativity");
                ++checked;
            }
        }
        // Translations: conv(u, tau_q) = {u tau_q -> 1}; shifts of constants.
        for (const std::string lab : {"A1", "A2", "C2"}) {
            KContext& ctx = ctx_of(lab);
            const auto& rs = ctx.rs;
            const auto& aff = ctx.affine;
            std::vector<CorootVector> qs;
            if (rs.rank == 1)
                qs = {CorootVector({-1}), CorootVector({-2}), CorootVector({-3}),
                      CorootVector({-4})};
            else qs = {CorootVector({-1, 0}), CorootVector({0, -1}), CorootVector({-1, -1}),
                       CorootVector({-2, -1}), CorootVector({-1, -2}), CorootVector({-2, -2}),
                       CorootVector({-2, -3}), CorootVector({-3, -3})};
            int instances = 0;
            for (const auto& q : qs) {
                if (!rs.is_antidominant(q)) continue;
                for (const auto& u : aff.minimal_upto(2)) {
                    StructConstTable want;
                    want.add(aff.mult(u, aff.translation(q)), LaurentPoly::one(rs.rank));
                    expect(convolve(ctx, u, aff.translation(q)) == want,
                           lab + " translation action");
                    ++instances;
                }
            }
            expect(instances >= 10, lab + " enough translation instances");
            // Shift identity on a pair of short elements.
            auto elems = aff.minimal_upto(1);
            int shifts = 0;
            for (const auto& u : elems)
                for (const auto& v : elems)
                    for (const auto& q1 : qs)
                        for (const auto& q2 : qs) {
                            if (!rs.is_antidominant(q1) || !rs.is_antidominant(q2)) continue;
                            if (shifts >= 10) break;
                            StructConstTable base = convolve(ctx, u, v);
                            StructConstTable shifted =
                                convolve(ctx, aff.mult(u, aff.translation(q1)),
                                         aff.mult(v, aff.translation(q2)));
                            StructConstTable want;
                            for (const auto& [w, c] : base.entries)
                                want.add(aff.mult(w, aff.translation(q1 + q2)), c);
                            expect(shifted == want, lab + " translation shift");
                            ++shifts;
                        }
            expect(shifts >= 10, lab + " enough shift instances");
        }
    });

    criterion(8, "positivity scans (A1 len 8, A2 len 6, qk A1/A2)", [&] {
        ScanReport r1 = scan_convolution(a1, 8);
        expect(r1.passed(), "A1 conv scan");
        ScanReport r2 = scan_convolution(a2, 6);
        expect(r2.passed(), "A2 conv scan");
        ScanReport q1 = scan_qk(a1, default_depth(a1.rs));
        expect(q1.passed(), "A1 qk scan");
        ScanReport q2 = scan_qk(a2, default_depth(a2.rs));
        expect(q2.passed(), "A2 qk scan");
        // The harness must surface counterexamples: a doctored constant fails
        // loudly with a witness rather than being suppressed.
        PositivityChecker chk(a1.rs);
        auto bad = chk.check(LaurentPoly::one(1), 1);
        expect(bad.verdict == Verdict::FAIL_NEGATIVE_COEFF && !bad.witness.empty(),
               "negative-coefficient witness");
        auto off = chk.check(LaurentPoly::monomial(Weight({-2})), 0);
        expect(off.verdict == Verdict::FAIL_NOT_IN_RING && !off.witness.empty(),
               "outside-ring witness");
    });

    criterion(9, "quantum constants equal sourcing constants with matching parity", [&] {
        for (const std::string lab : {"A1", "A2"}) {
            KContext& ctx = ctx_of(lab);
            const auto& w = ctx.group;
            const auto& aff = ctx.affine;
            CorootVector d = default_depth(ctx.rs);
            for (int x = 0; x < w.size(); ++x)
                for (int y = 0; y < w.size(); ++y) {
                    AffElem u{x, d}, v{y, d};
                    StructConstTable p = convolve(ctx, u, v);
                    QKTable q = qk_product(ctx, x, y, d);
                    expect(p.entries.size() == q.entries.size(), lab + " table sizes");
                    for (const auto& [key, c] : p.entries) {
                        auto it = q.entries.find(QKKey{key.x, key.q - 2 * d});
                        if (it == q.entries.end()) {
                            expect(false, lab + " missing qk entry");
                            continue;
                        }
                        expect(it->second == c, lab + " constant equality");
                        expect(aff.length(aff.translation(key.q)) % 2 == 0,
                               lab + " even translation length");
                        int qk_sign = (w.length(x) + w.length(y) + w.length(key.x)) % 2;
                        int conv_sign = static_cast<int>(
                            (aff.length(u) + aff.length(v) + aff.length(key)) % 2);
                        expect(qk_sign == conv_sign, lab + " parity");
                    }
                }
        }
    });

    criterion(10, "selftest determinism (byte-identical artifacts)", [&] {
#ifdef LOOPK_CLI_PATH
        const std::string cli = LOOPK_CLI_PATH;
        const std::string out1 = "acceptance_selftest_1.json";
        const std::string out2 = "acceptance_selftest_2.json";
        std::string cmd1 = cli + " selftest --type A1,A2 > " + out1 + " 2>/dev/null";
        std::string cmd2 = cli + " selftest --type A1,A2 > " + out2 + " 2>/dev/null";
        expect(std::system(cmd1.c_str()) == 0, "first selftest run");
        expect(std::system(cmd2.c_str()) == 0, "second selftest run");
        std::string b1 = slurp(out1), b2 = slurp(out2);
        expect(!b1.empty(), "artifact not empty");
        expect(b1 == b2, "artifacts differ");
        std::remove(out1.c_str());
        std::remove(out2.c_str());
#else
        expect(false, "CLI path not configured");
#endif
    });

    if (g_failures == 0) {
        std::cout << "ACCEPTANCE: all 10 criteria PASS\n";
        return 0;
    }
    std::cout << "ACCEPTANCE: " << g_failures << " criteria FAIL\n";
    return 1;
}
