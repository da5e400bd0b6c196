// Command line front end: root system data, Weyl group queries, convolution
// and quantum K-theory structure constants, positivity scans, self tests.

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "loopk/json_io.hpp"

namespace fs = std::filesystem;
using namespace loopk;

namespace {

constexpr int kSchemaVersion = 1;

int g_jobs = 1;

std::vector<int> parse_word(const std::string& s) {
    std::vector<int> out;
    std::string tok;
    auto flush = [&] {
        if (tok.empty()) return;
        out.push_back(std::stoi(tok));
        tok.clear();
    };
    for (char c : s) {
        if (c == ',' || c == ' ' || c == '\t') flush();
        else if (std::isdigit(static_cast<unsigned char>(c))) tok.push_back(c);
        else throw ArgError("bad character in word: " + s);
    }
    flush();
    return out;
}

std::string word_str(const std::vector<int>& w) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
    os << "]";
    return os.str();
}

// Reduce an input word, warning if it was not already reduced.
AffElem parse_affine(const KContext& ctx, const std::string& s, const char* flag) {
    auto letters = parse_word(s);
    AffElem e = ctx.affine.identity();
    for (int i : letters) {
        if (i < 0 || i > ctx.rs.rank) throw ArgError(std::string(flag) + ": index out of range");
        e = ctx.affine.mult(e, ctx.affine.simple(i));
    }
    if (ctx.affine.length(e) != static_cast<std::int64_t>(letters.size()))
        std::cerr << "warning: " << flag << " word is not reduced; using "
                  << word_str(ctx.affine.reduced_word(e)) << "\n";
    return e;
}

WeylIndex parse_finite(const KContext& ctx, const std::string& s, const char* flag) {
    auto letters = parse_word(s);
    WeylIndex x = 0;
    for (int i : letters) {
        if (i < 1 || i > ctx.rs.rank) throw ArgError(std::string(flag) + ": index out of range");
        x = ctx.group.mult(x, ctx.group.simple(i));
    }
    if (ctx.group.length(x) != static_cast<std::int64_t>(letters.size()))
        std::cerr << "warning: " << flag << " word is not reduced; using "
                  << word_str(ctx.group.word(x)) << "\n";
    return x;
}

CorootVector parse_depth(const KContext& ctx, const std::string& s) {
    if (s.empty()) return default_depth(ctx.rs);
    std::vector<std::int64_t> c;
    std::string tok;
    auto flush = [&] {
        if (tok.empty()) return;
        c.push_back(std::stoll(tok));
        tok.clear();
    };
    for (char ch : s) {
        if (ch == ',' || ch == ' ') flush();
        else tok.push_back(ch);
    }
    flush();
    if (static_cast<int>(c.size()) != ctx.rs.rank) throw ArgError("--depth: wrong rank");
    return CorootVector{c};
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void atomic_write(const fs::path& path, const std::string& body) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << body;
    }
    fs::rename(tmp, path);
}

std::string poly_str(const LaurentPoly& f) { return f.str(); }

void render_conv(const KContext& ctx, const StructConstTable& t, const std::string& fmt,
                 const json& meta) {
    if (fmt == "json") {
        json j = to_json(ctx, t);
        for (auto& [k, v] : meta.items()) j[k] = v;
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& [w, c] : t.entries) {
        std::string ws = word_str(ctx.affine.reduced_word(w));
        if (fmt == "csv") std::cout << ws << "," << poly_str(c) << "\n";
        else std::cout << ws << "  ->  " << poly_str(c) << "\n";
    }
}

// Disk cache for conv results, one JSON file per (type, u, v).
struct Cache {
    fs::path dir;
    bool enabled = false;

    fs::path key_path(const std::string& type, const std::vector<int>& u,
                      const std::vector<int>& v) const {
        std::string key = type + "_u";
        for (int i : u) key += std::to_string(i);
        key += "_v";
        for (int i : v) key += std::to_string(i);
        return dir / ("conv_" + key + ".json");
    }

    std::optional<StructConstTable> load(const KContext& ctx, const std::vector<int>& u,
                                         const std::vector<int>& v) const {
        if (!enabled) return std::nullopt;
        fs::path p = key_path(ctx.rs.label, u, v);
        std::ifstream in(p, std::ios::binary);
        if (!in) return std::nullopt;
        try {
            json j = json::parse(in);
            if (j.at("schema").get<int>() != kSchemaVersion) return std::nullopt;
            std::string payload = j.at("table").dump();
            if (fnv1a(payload) != j.at("digest").get<std::uint64_t>())
                throw ConfigError("digest mismatch");
            StructConstTable t;
            for (const auto& row : j.at("table")) {
                AffElem w = ctx.affine.identity();
                for (int i : row.at("w").at("x").get<std::vector<int>>())
                    w = ctx.affine.mult(w, ctx.affine.from_finite(ctx.group.simple(i)));
                w.q = CorootVector{row.at("w").at("q").get<std::vector<std::int64_t>>()};
                t.add(w, laurent_from_json(row.at("coeff"), ctx.rs.rank));
            }
            return t;
        } catch (const std::exception& e) {
            std::cerr << "warning: ignoring corrupt cache file " << p << " (" << e.what()
                      << ")\n";
            return std::nullopt;
        }
    }

    void store(const KContext& ctx, const std::vector<int>& u, const std::vector<int>& v,
               const StructConstTable& t) const {
        if (!enabled) return;
        json j = to_json(ctx, t);
        j["schema"] = kSchemaVersion;
        j["u"] = u;
        j["v"] = v;
        j["digest"] = fnv1a(j["table"].dump());
        std::error_code ec;
        fs::create_directories(dir, ec);
        atomic_write(key_path(ctx.rs.label, u, v), j.dump(2));
    }
};

int cmd_roots(const std::string& type, const std::string& fmt) {
    RootSystem rs = build_root_system(type);
    if (fmt == "json") {
        json j;
        j["type"] = rs.label;
        j["rank"] = rs.rank;
        j["cartan"] = rs.cartan;
        json pr = json::array();
        for (const auto& a : rs.positive_roots) pr.push_back(a.coords);
        j["positive_roots"] = pr;
        j["theta"] = rs.theta.coords;
        j["theta_coroot"] = rs.theta_coroot.coords;
        j["rho"] = rs.rho.coords;
        j["dual_coxeter"] = rs.dual_coxeter;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "type " << rs.label << " rank " << rs.rank << "\n";
        std::cout << "positive roots (weight coords):\n";
        for (const auto& a : rs.positive_roots) {
            std::cout << "  (";
            for (int i = 0; i < rs.rank; ++i) std::cout << (i ? "," : "") << a.coords[i];
            std::cout << ")\n";
        }
        std::cout << "highest root (";
        for (int i = 0; i < rs.rank; ++i) std::cout << (i ? "," : "") << rs.theta.coords[i];
        std::cout << "), dual Coxeter number " << rs.dual_coxeter << "\n";
    }
    return 0;
}

int cmd_weyl(const std::string& type, const std::string& uword, const std::string& fmt) {
    KContext ctx(type);
    json j;
    j["type"] = type;
    j["finite_order"] = ctx.group.size();
    j["longest_word"] = ctx.group.word(ctx.group.longest());
    if (!uword.empty() || uword == "") {
        AffElem e = parse_affine(ctx, uword, "--u");
        j["u"] = json{{"word", ctx.affine.reduced_word(e)},
                      {"x", ctx.group.word(e.x)},
                      {"q", e.q.coords},
                      {"length", ctx.affine.length(e)},
                      {"minimal", ctx.affine.is_minimal(e)}};
    }
    if (fmt == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "type " << type << ": |W| = " << ctx.group.size() << ", longest word "
                  << word_str(ctx.group.word(ctx.group.longest())) << "\n";
        const auto& u = j["u"];
        std::cout << "u: word " << word_str(u["word"].get<std::vector<int>>()) << " length "
                  << u["length"].get<std::int64_t>() << " minimal "
                  << (u["minimal"].get<bool>() ? "yes" : "no") << "\n";
    }
    return 0;
}

int cmd_conv(const std::string& type, const std::string& us, const std::string& vs,
             int cap, const std::string& fmt, const Cache& cache) {
    KContext ctx(type);
    AffElem u = parse_affine(ctx, us, "--u");
    AffElem v = parse_affine(ctx, vs, "--v");
    if (!ctx.affine.is_minimal(u) || !ctx.affine.is_minimal(v))
        throw ArgError("conv: u and v must be minimal coset representatives");
    auto uw = parse_word(us);
    auto vw = parse_word(vs);
    std::optional<StructConstTable> t = cache.load(ctx, uw, vw);
    if (!t) {
        t = convolve(ctx, u, v, cap);
        cache.store(ctx, uw, vw, *t);
    }
    render_conv(ctx, *t, fmt,
                json{{"u", ctx.affine.reduced_word(u)}, {"v", ctx.affine.reduced_word(v)}});
    return 0;
}

int cmd_qk(const std::string& type, const std::string& xs, const std::string& ys,
           const std::string& ds, int cap, const std::string& fmt) {
    KContext ctx(type);
    WeylIndex x = parse_finite(ctx, xs, "--x");
    WeylIndex y = parse_finite(ctx, ys, "--y");
    CorootVector depth = parse_depth(ctx, ds);
    QKTable t = qk_product(ctx, x, y, depth, cap);
    if (fmt == "json") {
        json j = to_json(ctx, t);
        j["x"] = ctx.group.word(x);
        j["y"] = ctx.group.word(y);
        j["depth"] = depth.coords;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& [k, c] : t.entries) {
            std::string row = q_monomial_str(k.eta) + " * O^" + word_str(ctx.group.word(k.z));
            if (fmt == "csv") std::cout << row << "," << poly_str(c) << "\n";
            else std::cout << row << "  ->  " << poly_str(c) << "\n";
        }
    }
    return 0;
}

void print_scan_summary(const ScanReport& rep) {
    std::cerr << "scan " << rep.kind << " type " << rep.type << ": " << rep.pairs_checked
              << " pairs, " << rep.constants_checked << " constants, " << rep.failures.size()
              << " FAIL\n";
    for (const auto& f : rep.failures)
        std::cerr << "FAIL " << verdict_str(f.verdict) << " u=" << f.u << " v=" << f.v
                  << " w=" << f.w << " coeff=" << f.coeff << " witness: " << f.witness << "\n";
}

// Positivity scan over pairs of minimal representatives, parallel over the
// outer index when --jobs > 1.
ScanReport parallel_scan_conv(const KContext& ctx, int max_len, int cap) {
    const auto& aff = ctx.affine;
    auto elems = aff.minimal_upto(max_len);
    int jobs = std::max(1, g_jobs);
    std::vector<ScanReport> parts(elems.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        PositivityChecker checker(ctx.rs);
        for (;;) {
            size_t k = next.fetch_add(1);
            if (k >= elems.size()) return;
            ScanReport& rep = parts[k];
            const AffElem& u = elems[k];
            for (const auto& v : elems) {
                ++rep.pairs_checked;
                StructConstTable t = convolve(ctx, u, v, cap);
                for (const auto& [w, c] : t.entries) {
                    ++rep.constants_checked;
                    int sign =
                        static_cast<int>((aff.length(u) + aff.length(v) + aff.length(w)) % 2);
                    PositivityResult r = checker.check(c, sign);
                    if (r.verdict != Verdict::PASS)
                        rep.failures.push_back({aff_str(aff, u), aff_str(aff, v),
                                                aff_str(aff, w), c.str(), r.verdict, r.witness});
                }
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    ScanReport rep;
    rep.type = ctx.rs.label;
    rep.kind = "conv";
    rep.max_len = max_len;
    for (const auto& p : parts) {
        rep.pairs_checked += p.pairs_checked;
        rep.constants_checked += p.constants_checked;
        rep.failures.insert(rep.failures.end(), p.failures.begin(), p.failures.end());
    }
    rep.complete = true;
    return rep;
}

int cmd_scan(const std::string& type, const std::string& kind, int max_len,
             const std::string& ds, int cap, const std::string& fmt) {
    KContext ctx(type);
    ScanReport rep;
    if (kind == "qk") rep = scan_qk(ctx, parse_depth(ctx, ds), cap);
    else rep = parallel_scan_conv(ctx, max_len, cap);
    if (fmt == "json") std::cout << to_json(rep).dump(2) << "\n";
    print_scan_summary(rep);
    return rep.passed() ? 0 : 1;
}

// Golden computations re-run on demand; produces a deterministic JSON artifact.
int cmd_selftest(const std::string& types, const std::string& fmt) {
    json artifact;
    artifact["schema"] = kSchemaVersion;
    bool all_ok = true;
    json checks = json::array();
    auto record = [&](const std::string& name, bool ok, const json& detail = json()) {
        checks.push_back(json{{"name", name}, {"status", ok ? "PASS" : "FAIL"},
                              {"detail", detail}});
        all_ok = all_ok && ok;
    };

    std::vector<std::string> labels;
    {
        std::string tok;
        for (char c : types + ",") {
            if (c == ',') {
                if (!tok.empty()) labels.push_back(tok);
                tok.clear();
            } else tok.push_back(c);
        }
    }

    for (const std::string& lab : labels) {
        KContext ctx(lab);
        const auto& grp = ctx.group;
        const auto& aff = ctx.affine;

        // zeta table invariants: sum is 1 (x) 1, |zeta^x| = delta_{x,e}.
        {
            TensorClass sum = TensorClass::zero();
            for (WeylIndex x = 0; x < grp.size(); ++x) sum = sum + ctx.zeta_class(x);
            bool ok = tensor_equal(grp, sum, TensorClass::one(ctx.rs.rank));
            for (WeylIndex x = 0; x < grp.size(); ++x) {
                LaurentPoly a = abs_map(ctx.zeta_class(x));
                LaurentPoly want = (x == 0) ? LaurentPoly::one(ctx.rs.rank)
                                            : LaurentPoly::zero();
                ok = ok && (a == want);
            }
            record(lab + "/zeta_invariants", ok);
        }
        // Pairing duality over all of W x W.
        {
            bool ok = true;
            for (WeylIndex x = 0; x < grp.size() && ok; ++x)
                for (WeylIndex y = 0; y < grp.size() && ok; ++y) {
                    LaurentPoly p = pairing(grp, ctx.zeta_class(x), y);
                    LaurentPoly want = (x == y) ? LaurentPoly::one(ctx.rs.rank)
                                                : LaurentPoly::zero();
                    ok = (p == want);
                }
            record(lab + "/pairing_duality", ok);
        }
        // Convolution unit: conv(u, e) = {u -> 1} for short minimal u.
        {
            bool ok = true;
            json sample = json::array();
            for (const auto& u : aff.minimal_upto(2)) {
                StructConstTable t = convolve(ctx, u, aff.identity());
                StructConstTable want;
                want.add(u, LaurentPoly::one(ctx.rs.rank));
                ok = ok && (t == want);
                sample.push_back(to_json(ctx, t)["table"]);
            }
            record(lab + "/conv_unit", ok, sample);
        }
        // Small positivity scan, recorded in the artifact.
        {
            int cap_len = (grp.size() > 2) ? 3 : 6;
            ScanReport rep = scan_convolution(ctx, cap_len);
            record(lab + "/positivity_scan_len" + std::to_string(cap_len), rep.passed(),
                   to_json(rep));
        }
    }
    artifact["checks"] = std::move(checks);
    artifact["outcome"] = all_ok ? "PASS" : "FAIL";
    if (fmt == "json") std::cout << artifact.dump(2) << "\n";
    else {
        for (const auto& c : artifact["checks"])
            std::cout << c["status"].get<std::string>() << " "
                      << c["name"].get<std::string>() << "\n";
        std::cout << (all_ok ? "selftest PASS" : "selftest FAIL") << "\n";
    }
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structure constants in equivariant K-homology of affine Grassmannians"};
    app.require_subcommand(1);

    std::string type = "A1", u, v, x, y, depth, format = "table", cache_dir, kind = "conv";
    std::string selftest_types = "A1,A2";
    int max_len = 4;
    int cap = kDefaultLengthCap;
    int jobs = 1;

    app.add_option("--cache-dir", cache_dir, "result cache directory")
        ->envname("LOOPK_CACHE_DIR");
    app.add_option("--jobs", jobs, "worker count")->check(CLI::PositiveNumber);

    auto add_common = [&](CLI::App* c) {
        c->add_option("--type", type, "root system type (A1,A2,A3,C2)");
        c->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"table", "json", "csv"}));
    };

    CLI::App* roots = app.add_subcommand("roots", "print root system data");
    add_common(roots);

    CLI::App* weyl = app.add_subcommand("weyl", "affine Weyl group queries");
    add_common(weyl);
    weyl->add_option("--u", u, "affine word, indices 0..rank");

    CLI::App* conv = app.add_subcommand("conv", "convolution structure constants");
    add_common(conv);
    conv->add_option("--u", u, "left factor, affine word");
    conv->add_option("--v", v, "right factor, affine word");
    conv->add_option("--max-len", cap, "refuse words longer than this");

    CLI::App* qk = app.add_subcommand("qk", "quantum K-theory structure constants");
    add_common(qk);
    qk->add_option("--x", x, "finite word, indices 1..rank");
    qk->add_option("--y", y, "finite word, indices 1..rank");
    qk->add_option("--depth", depth, "strictly antidominant coroot vector");
    qk->add_option("--max-len", cap, "word length cap");

    CLI::App* scan = app.add_subcommand("scan", "positivity scan");
    add_common(scan);
    scan->add_option("--kind", kind, "conv or qk")->check(CLI::IsMember({"conv", "qk"}));
    scan->add_option("--max-len", max_len, "length bound on scanned elements");
    scan->add_option("--depth", depth, "depth for qk scans");

    CLI::App* selftest = app.add_subcommand("selftest", "run golden self tests");
    selftest->add_option("--type", selftest_types, "comma separated type labels");
    selftest->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"table", "json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    g_jobs = jobs;
    Cache cache;
    if (!cache_dir.empty()) {
        cache.dir = cache_dir;
        cache.enabled = true;
    }

    try {
        if (roots->parsed()) return cmd_roots(type, format);
        if (weyl->parsed()) return cmd_weyl(type, u, format);
        if (conv->parsed()) return cmd_conv(type, u, v, cap, format, cache);
        if (qk->parsed()) return cmd_qk(type, x, y, depth, cap, format);
        if (scan->parsed()) return cmd_scan(type, kind, max_len, depth, cap, format);
        if (selftest->parsed()) return cmd_selftest(selftest_types, "json");
        return 2;
    } catch (const ArgError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const IntegrityError& e) {
        std::cerr << "integrity failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
