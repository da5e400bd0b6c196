#pragma once

// JSON (de)serialization for tables, scan reports, and cache files.

#include <json.hpp>

#include "loopk/positivity.hpp"

namespace loopk {

using json = nlohmann::json;

inline json to_json(const LaurentPoly& f) {
    json arr = json::array();
    for (const auto& [mono, coeff] : f.terms()) {
        json term = json::array();
        term.push_back(mono.coords);
        term.push_back(coeff.str());
        arr.push_back(std::move(term));
    }
    return arr;
}

inline LaurentPoly laurent_from_json(const json& j, int rank) {
    LaurentPoly f = LaurentPoly::zero();
    for (const auto& term : j) {
        std::vector<std::int64_t> exps = term.at(0).get<std::vector<std::int64_t>>();
        if (static_cast<int>(exps.size()) != rank)
            throw ConfigError("laurent term has wrong rank");
        Weight m{exps};
        f.add_term(m, Int(term.at(1).get<std::string>()));
    }
    return f;
}

inline json to_json(const AffineWeyl& aff, const AffElem& e) {
    return json{{"x", aff.finite().word(e.x)}, {"q", e.q.coords}};
}

inline json to_json(const KContext& ctx, const StructConstTable& t) {
    json out;
    out["type"] = ctx.rs.label;
    json arr = json::array();
    for (const auto& [w, c] : t.entries)
        arr.push_back(json{{"w", to_json(ctx.affine, w)}, {"coeff", to_json(c)}});
    out["table"] = std::move(arr);
    return out;
}

inline std::string q_monomial_str(const CorootVector& eta) {
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i < eta.rank(); ++i) {
        if (eta.coords[i] == 0) continue;
        if (any) os << "*";
        os << "q" << (i + 1);
        if (eta.coords[i] != 1) os << "^" << eta.coords[i];
        any = true;
    }
    if (!any) os << "1";
    return os.str();
}

inline json to_json(const KContext& ctx, const QKTable& t) {
    json out;
    out["type"] = ctx.rs.label;
    json arr = json::array();
    for (const auto& [key, c] : t.entries)
        arr.push_back(json{{"z", ctx.group.word(key.z)},
                           {"eta", key.eta.coords},
                           {"q_monomial", q_monomial_str(key.eta)},
                           {"coeff", to_json(c)}});
    out["table"] = std::move(arr);
    return out;
}

inline json to_json(const ScanReport& rep) {
    json out;
    out["type"] = rep.type;
    out["kind"] = rep.kind;
    out["max_len"] = rep.max_len;
    out["pairs_checked"] = rep.pairs_checked;
    out["constants_checked"] = rep.constants_checked;
    out["complete"] = rep.complete;
    json fails = json::array();
    for (const auto& f : rep.failures)
        fails.push_back(json{{"u", f.u}, {"v", f.v}, {"w", f.w}, {"coeff", f.coeff},
                             {"verdict", verdict_str(f.verdict)}, {"witness", f.witness}});
    out["failures"] = std::move(fails);
    out["outcome"] = rep.passed() ? "PASS" : "FAIL";
    return out;
}

} // namespace loopk
