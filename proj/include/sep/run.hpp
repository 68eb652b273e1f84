#pragma once

// Manifest execution: builds the declared objects in order, runs the queries,
// and renders deterministic text and JSON reports (JSON is schema-stable and
// key-sorted). Optional finite-field cross-checks attach per query; a
// disagreement is an error, never auto-resolved.

#include "sep/expr.hpp"
#include "sep/manifest.hpp"
#include "sep/scheme.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace sep {

using Json = nlohmann::json;

struct RunOptions {
    std::string format = "text"; // "text" | "json"
    std::vector<std::uint32_t> oracle_primes;
    std::optional<std::uint64_t> budget_steps;
    std::optional<std::string> strict_expect; // JSON text: {"verdicts": [...]}
    std::uint64_t seed = 0;
};

struct RunOutcome {
    int exit_code = 0;
    std::string text;
    std::string json;
};

namespace run_detail {

struct Env {
    std::map<std::string, FpAlgebra> rings;
    std::map<std::string, RingMap> maps;
    std::map<std::string, TwoOpenScheme> schemes;
    std::map<std::string, PointDecl> points;

    const FpAlgebra& ring(const std::string& n) const
    {
        auto it = rings.find(n);
        if (it == rings.end()) throw Error("undeclared ring '" + n + "'");
        return it->second;
    }
    const RingMap& map(const std::string& n) const
    {
        auto it = maps.find(n);
        if (it == maps.end()) throw Error("undeclared map '" + n + "'");
        return it->second;
    }
    const TwoOpenScheme& scheme(const std::string& n) const
    {
        auto it = schemes.find(n);
        if (it == schemes.end()) throw Error("undeclared scheme '" + n + "'");
        return it->second;
    }
    const PointDecl& point(const std::string& n) const
    {
        auto it = points.find(n);
        if (it == points.end()) throw Error("undeclared point '" + n + "'");
        return it->second;
    }
    void fresh(const std::string& n) const
    {
        if (rings.count(n) || maps.count(n) || schemes.count(n) || points.count(n))
            throw Error("name '" + n + "' is already declared");
    }
};

inline InvResolver inv_resolver(const FpAlgebra& ring, const Budget& budget)
{
    return [&ring, &budget](const Poly& arg) { return ring.resolve_inverse(arg, budget); };
}

inline std::string ideal_str(const std::vector<Poly>& gens,
                             const std::vector<std::string>& names, std::size_t limit = 6)
{
    if (gens.empty()) return "(0)";
    std::string s = "(";
    for (std::size_t i = 0; i < gens.size() && i < limit; ++i)
        s += (i ? ", " : "") + gens[i].str(names);
    if (gens.size() > limit)
        s += ", ... +" + std::to_string(gens.size() - limit) + " more";
    return s + ")";
}

inline Json ideal_json(const std::vector<Poly>& gens, const std::vector<std::string>& names)
{
    Json a = Json::array();
    for (const auto& g : gens) a.push_back(g.str(names));
    return a;
}

inline Json ring_json(const FpAlgebra& R, const Budget& budget)
{
    Json j;
    j["generators"] = R.names();
    j["relations"] = ideal_json(R.relations().groebner(MonomialOrder::grevlex(), budget),
                                R.names());
    return j;
}

inline std::string flat_str(const FlatVerdict& v)
{
    switch (v.status) {
    case FlatStatus::Flat: return "Flat";
    case FlatStatus::NotFlat: return "NotFlat";
    case FlatStatus::Undecided: return "Undecided";
    }
    return "?";
}

inline std::string method_str(const FlatVerdict& v)
{
    switch (v.method) {
    case FlatMethod::Hypersurface: return "hypersurface criterion";
    case FlatMethod::Fitting: return "Fitting-ideal criterion";
    case FlatMethod::Trivial: return "structural";
    }
    return "?";
}

inline Json flat_json(const FlatVerdict& v)
{
    Json j;
    j["status"] = flat_str(v);
    j["method"] = method_str(v);
    j["detail"] = v.detail;
    if (v.rank) j["rank"] = *v.rank;
    if (v.witness) j["witness"] = ideal_json(v.witness->gens(), v.witness_names);
    return j;
}

struct QueryOutput {
    std::string verdict;
    std::vector<std::string> lines; // text body (indented under the header)
    Json payload = Json::object();
    std::optional<Json> oracle;
    bool oracle_disagreement = false;
};

// --- oracle attachments -------------------------------------------------------

inline void oracle_flat(QueryOutput& out, const RingMap& phi, const FlatVerdict& verdict,
                        const std::vector<std::uint32_t>& primes, const Budget& budget)
{
    if (primes.empty() || verdict.status == FlatStatus::Undecided) return;
    Json res = Json::array();
    auto w = module_finite_witness(phi, budget);
    if (!w) {
        Json j;
        j["note"] = "not module-finite; fiber oracle not applicable";
        out.oracle = j;
        return;
    }
    auto M = module_presentation(phi, choose_module_generators(phi, *w, 5, budget), 5, budget);
    for (std::uint32_t p : primes) {
        Json j;
        j["prime"] = p;
        try {
            auto sample = enumerate_points(phi.source(), p);
            auto prof = fiber_profile(M, sample);
            j["points"] = prof.points;
            j["min_length"] = prof.min_length;
            j["max_length"] = prof.max_length;
            bool ok = true;
            if (verdict.status == FlatStatus::Flat && !prof.constant()) ok = false;
            if (verdict.status == FlatStatus::NotFlat && prof.points >= 2 && prof.constant())
                ok = false;
            j["agrees"] = ok;
            if (!ok) out.oracle_disagreement = true;
        } catch (const BudgetError& e) {
            j["skipped"] = e.what();
        } catch (const OracleSkip& e) {
            j["skipped"] = e.what();
        }
        res.push_back(j);
    }
    Json o;
    o["fiber_lengths"] = res;
    out.oracle = o;
}

inline void oracle_membership(QueryOutput& out, const RingMap& phi,
                              const std::vector<bool>& exact_membership,
                              const std::vector<std::uint32_t>& primes, const Budget& budget)
{
    if (primes.empty()) return;
    Json res = Json::array();
    const auto& T = phi.target();
    for (std::uint32_t p : primes) {
        Json j;
        j["prime"] = p;
        try {
            Json per = Json::array();
            for (std::size_t i = 0; i < T.ngens(); ++i) {
                auto m = truncated_membership(T, T.gen(i), phi.images(), 4, p, budget);
                Json g;
                g["generator"] = T.names()[i];
                g["exact"] = static_cast<bool>(exact_membership[i]);
                g["mod_p"] = m == Membership::Yes ? "yes" : "no-within-bound";
                bool ok = !(m == Membership::Yes && !exact_membership[i]);
                g["agrees"] = ok;
                if (!ok) out.oracle_disagreement = true;
                per.push_back(g);
            }
            j["generators"] = per;
        } catch (const OracleSkip& e) {
            j["skipped"] = e.what();
        } catch (const BudgetError& e) {
            j["skipped"] = e.what();
        }
        res.push_back(j);
    }
    Json o;
    o["membership"] = res;
    out.oracle = o;
}

// --- query execution ------------------------------------------------------------

inline void render_separator_report(QueryOutput& out, const SeparatorReport& rep,
                                    const Budget& budget)
{
    out.lines.push_back("criterion: the closure-of-the-diagonal ring Im(phi_UV) must be "
                        "flat and of finite type over both chart rings");
    switch (rep.verdict) {
    case SeparatorReport::Verdict::AlreadySeparated:
        out.verdict = "AlreadySeparated";
        out.lines.push_back("phi_UV is surjective: the scheme is separated; no gluing needed");
        break;
    case SeparatorReport::Verdict::SeparatorExists: out.verdict = "SeparatorExists"; break;
    case SeparatorReport::Verdict::NoSeparator: out.verdict = "NoSeparator"; break;
    case SeparatorReport::Verdict::Undecided:
        out.verdict = "Undecided";
        out.lines.push_back("reason: " + rep.reason);
        break;
    }
    out.payload["dominance"] = rep.dominance == TriState::Yes
                                   ? "Yes"
                                   : rep.dominance == TriState::No ? "No" : "Undecided";
    if (rep.closure) {
        out.payload["closure_ring"] = ring_json(rep.closure->C, budget);
        out.lines.push_back("Im(phi_UV) presented on (" + [&] {
            std::string s;
            for (std::size_t i = 0; i < rep.closure->C.names().size(); ++i)
                s += (i ? ", " : "") + rep.closure->C.names()[i];
            return s;
        }() + ") by " +
                            ideal_str(rep.closure->C.relations().groebner(
                                          MonomialOrder::grevlex(), budget),
                                      rep.closure->C.names()));
    }
    if (rep.flatU) {
        out.payload["flat_over_U"] = flat_json(*rep.flatU);
        std::string line = "flat over Gamma(U)? " +
                           std::string(rep.flatU->status == FlatStatus::Flat
                                           ? "FLAT"
                                           : rep.flatU->status == FlatStatus::NotFlat
                                                 ? "NOT FLAT"
                                                 : "UNDECIDED") +
                           " (" + method_str(*rep.flatU) + ")";
        out.lines.push_back(line);
    }
    if (rep.flatV) {
        out.payload["flat_over_V"] = flat_json(*rep.flatV);
        out.lines.push_back("flat over Gamma(V)? " +
                            (rep.flatV->status == FlatStatus::Flat
                                 ? std::string("FLAT")
                                 : rep.flatV->status == FlatStatus::NotFlat
                                       ? std::string("NOT FLAT")
                                       : std::string("UNDECIDED")) +
                            " (" + method_str(*rep.flatV) + ")");
    }
    Json fails = Json::array();
    for (const auto& f : rep.failures) {
        Json j;
        j["side"] = std::string(1, f.side);
        j["flat"] = flat_json(f.verdict);
        if (f.witness_in_C)
            j["witness_in_closure"] =
                ideal_json(f.witness_in_C->gens(), rep.closure->C.names());
        fails.push_back(j);
        if (f.witness_in_C)
            out.lines.push_back(std::string("witness on the ") + f.side + " side: ideal " +
                                ideal_str(f.witness_in_C->gens(), rep.closure->C.names()) +
                                " is not the unit ideal in Im(phi_UV)");
        else if (f.verdict.witness)
            out.lines.push_back(std::string("witness on the ") + f.side +
                                " side: Fitting ideal " +
                                ideal_str(f.verdict.witness->gens(), f.verdict.witness_names) +
                                " over the chart ring");
    }
    if (!rep.failures.empty()) out.payload["failures"] = fails;
    if (!rep.finite_type_note.empty()) {
        out.payload["finite_type"] = rep.finite_type_note;
        out.lines.push_back(rep.finite_type_note);
    }
}

inline void render_separator_scheme(QueryOutput& out, const TwoOpenScheme& E,
                                    const Budget& budget)
{
    out.payload["separator"] = Json::object();
    out.payload["separator"]["gluing_ring"] = ring_json(E.overlap(), budget);
    out.lines.push_back(
        "separator built: charts glued along Spec of " +
        ideal_str(E.overlap().relations().groebner(MonomialOrder::grevlex(), budget),
                  E.overlap().names()) +
        " on (" + [&] {
            std::string s;
            for (std::size_t i = 0; i < E.overlap().names().size(); ++i)
                s += (i ? ", " : "") + E.overlap().names()[i];
            return s;
        }() + ")");
    Json charts = Json::array();
    for (auto [name, m] : {std::pair<const char*, const RingMap*>{"U", &E.rhoU()},
                           std::pair<const char*, const RingMap*>{"V", &E.rhoV()}}) {
        bool inj = is_injective(*m, budget);
        bool surj = is_surjective(*m, budget);
        std::string kind = inj && surj ? "isomorphism" : "open immersion (flat epimorphism "
                                                         "of finite type, certified)";
        Json j;
        j["chart"] = name;
        j["map"] = kind;
        charts.push_back(j);
        out.lines.push_back(std::string("chart ") + name + " -> separator: " + kind);
    }
    out.payload["separator"]["charts"] = charts;
    out.lines.push_back("h is the pair of identity chart maps");
}

inline PointRef make_point(const PointDecl& pd, const TwoOpenScheme& S, const Budget& budget)
{
    const FpAlgebra& chart = pd.side == 'U' ? S.chartU() : S.chartV();
    PointRef p{pd.side, {}};
    for (const auto& txt : pd.ideal)
        p.ideal_gens.push_back(parse_poly(txt, chart.names(), inv_resolver(chart, budget)));
    return p;
}


// Applies one declaration statement to the environment (queries are handled
// by the caller). Returns false when the statement was a query.
inline bool declare(Env& env, const Statement& st, const Budget& budget)
{
    if (const auto* r = std::get_if<RingDecl>(&st)) {
        env.fresh(r->name);
        std::vector<Poly> rels;
        for (const auto& t : r->relations) rels.push_back(parse_poly(t, r->gens));
        env.rings.emplace(r->name, FpAlgebra(r->gens, Ideal(r->gens, rels)));
    } else if (const auto* f = std::get_if<MapDecl>(&st)) {
        env.fresh(f->name);
        const FpAlgebra& S = env.ring(f->source);
        const FpAlgebra& T = env.ring(f->target);
        std::vector<Poly> images(S.ngens(), Poly(T.ngens()));
        std::vector<bool> seen(S.ngens(), false);
        for (const auto& [g, expr] : f->images) {
            auto idx = S.gen_index(g);
            if (!idx)
                throw Error("map " + f->name + ": unknown source generator '" + g + "'");
            if (seen[*idx])
                throw Error("map " + f->name + ": duplicate image for '" + g + "'");
            seen[*idx] = true;
            images[*idx] = parse_poly(expr, T.names(), inv_resolver(T, budget));
        }
        for (std::size_t i = 0; i < S.ngens(); ++i)
            if (!seen[i])
                throw Error("map " + f->name + ": missing image for generator '" +
                            S.names()[i] + "'");
        env.maps.emplace(f->name, RingMap(S, T, std::move(images), budget));
    } else if (const auto* t = std::get_if<TwistDecl>(&st)) {
        env.fresh(t->name);
        const FpAlgebra& U = env.ring(t->uring);
        TwistSpec spec;
        spec.U = U;
        for (const auto& e : t->invert)
            spec.invert.push_back(parse_poly(e, U.names()));
        auto chain = localize_chain(U, spec.invert, budget);
        for (const auto& [g, expr] : t->tau) {
            auto idx = U.gen_index(g);
            if (!idx)
                throw Error("twist " + t->name + ": unknown generator '" + g + "'");
            spec.tau.emplace_back(*idx, parse_poly(expr, chain.ring.names(),
                                                   inv_resolver(chain.ring, budget)));
        }
        env.schemes.emplace(t->name, build_twisted(spec, budget));
    } else if (const auto* s = std::get_if<SchemeDecl>(&st)) {
        env.fresh(s->name);
        const FpAlgebra& A = env.ring(s->u);
        const FpAlgebra& B = env.ring(s->v);
        const FpAlgebra& C0 = env.ring(s->along);
        const RingMap& rU = env.map(s->rhoU);
        const RingMap& rV = env.map(s->rhoV);
        if (!(rU.source() == A) || !(rU.target() == C0))
            throw Error("scheme " + s->name + ": rhoU must map U to the overlap");
        if (!(rV.source() == B) || !(rV.target() == C0))
            throw Error("scheme " + s->name + ": rhoV must map V to the overlap");
        env.schemes.emplace(s->name,
                            glue_scheme(A, B, C0, rU.images(), rV.images(), budget));
    } else if (const auto* p = std::get_if<PointDecl>(&st)) {
        env.fresh(p->name);
        env.points.emplace(p->name, *p);
    } else if (const auto* a = std::get_if<AssertDecl>(&st)) {
        if (a->kind == AssertDecl::Kind::Integral) {
            if (auto it = env.schemes.find(a->target); it != env.schemes.end())
                it->second.assert_integral();
            else if (auto rt = env.rings.find(a->target); rt != env.rings.end())
                rt->second.assert_integral();
            else
                throw Error("assert integral: unknown name '" + a->target + "'");
        } else {
            auto rt = env.rings.find(a->target);
            if (rt == env.rings.end())
                throw Error("assert connected: unknown ring '" + a->target + "'");
            rt->second.assert_connected();
        }
    } else if (std::get_if<QueryDecl>(&st)) {
        return false;
    }
    return true;
}

inline QueryOutput exec_query(const QueryDecl& q, Env& env, const RunOptions& opt,
                              const Budget& budget)
{
    QueryOutput out;
    if (q.kind == "check-separated") {
        const auto& T = env.scheme(q.args[0]);
        try {
            bool sep = is_separated(T, budget);
            out.verdict = sep ? "Separated" : "NotSeparated";
            out.lines.push_back("criterion: surjectivity of phi_UV : Gamma(U) (x) Gamma(V) "
                                "-> Gamma(U cap V)");
            if (!opt.oracle_primes.empty()) {
                auto phi = detail::phi_uv(T, budget);
                std::vector<bool> exact;
                for (std::size_t i = 0; i < T.overlap().ngens(); ++i)
                    exact.push_back(in_image(phi.phi, T.overlap().gen(i), budget));
                oracle_membership(out, phi.phi, exact, opt.oracle_primes, budget);
            }
        } catch (const BudgetError& e) {
            out.verdict = "Undecided";
            out.lines.push_back(std::string("reason: ") + e.what());
        }
    } else if (q.kind == "check-separator" || q.kind == "build-separator") {
        const auto& T = env.scheme(q.args[0]);
        auto rep = separator_check(T, budget);
        render_separator_report(out, rep, budget);
        if (q.kind == "build-separator") {
            if (rep.separator) render_separator_scheme(out, *rep.separator, budget);
            else if (rep.verdict == SeparatorReport::Verdict::AlreadySeparated)
                out.lines.push_back("already separated: the separator is the scheme itself");
        }
        if (!opt.oracle_primes.empty() && rep.closure) {
            if (rep.flatU) oracle_flat(out, rep.closure->fromU, *rep.flatU,
                                       opt.oracle_primes, budget);
        }
    } else if (q.kind == "flat") {
        const auto& phi = env.map(q.args[0]);
        auto v = flat_of_map(phi, budget);
        out.verdict = flat_str(v);
        out.lines.push_back("method: " + method_str(v) + (v.detail.empty() ? "" : "; " +
                            v.detail));
        if (v.witness)
            out.lines.push_back("witness ideal " +
                                ideal_str(v.witness->gens(), v.witness_names));
        out.payload["flat"] = flat_json(v);
        oracle_flat(out, phi, v, opt.oracle_primes, budget);
    } else if (q.kind == "etale") {
        const auto& phi = env.map(q.args[0]);
        auto v = is_etale(phi, budget);
        out.verdict = v.status == EtaleStatus::Etale
                          ? "Etale"
                          : v.status == EtaleStatus::NotEtale ? "NotEtale" : "Undecided";
        out.lines.push_back("flatness plus vanishing relative differentials; " + v.detail);
        out.payload["flat"] = flat_json(v.flat);
        oracle_flat(out, phi, v.flat, opt.oracle_primes, budget);
    } else if (q.kind == "kernel") {
        const auto& phi = env.map(q.args[0]);
        Ideal ker = ringmap_kernel(phi, budget);
        const auto& basis = ker.groebner(MonomialOrder::grevlex(), budget);
        out.verdict = "Computed";
        out.lines.push_back("kernel ideal " + ideal_str(basis, phi.source().names()));
        out.payload["kernel"] = ideal_json(basis, phi.source().names());
    } else if (q.kind == "image") {
        const auto& phi = env.map(q.args[0]);
        auto im = ringmap_image(phi, budget);
        bool full = is_surjective(phi, budget);
        out.verdict = full ? "Surjective" : "NotSurjective";
        out.payload["image_ring"] = ring_json(im.image, budget);
        out.payload["surjective"] = full;
        out.lines.push_back(
            "image presented on (" + [&] {
                std::string s;
                for (std::size_t i = 0; i < im.image.names().size(); ++i)
                    s += (i ? ", " : "") + im.image.names()[i];
                return s;
            }() + ") by " +
            ideal_str(im.image.relations().groebner(MonomialOrder::grevlex(), budget),
                      im.image.names()));
        out.lines.push_back(std::string("image equals the full target: ") +
                            (full ? "yes" : "no"));
        if (!opt.oracle_primes.empty()) {
            std::vector<bool> exact;
            for (std::size_t i = 0; i < phi.target().ngens(); ++i)
                exact.push_back(in_image(phi, phi.target().gen(i), budget));
            oracle_membership(out, phi, exact, opt.oracle_primes, budget);
        }
    } else if (q.kind == "apparented") {
        const auto& T = env.scheme(q.args[0]);
        PointRef x = make_point(env.point(q.args[1]), T, budget);
        PointRef y = make_point(env.point(q.args[2]), T, budget);
        bool app = apparented(T, x, y, budget);
        out.verdict = app ? "Apparented" : "NotApparented";
        out.lines.push_back("criterion: the pair ideal in Im(phi_UV) is " +
                            std::string(app ? "proper" : "the unit ideal"));
    } else if (q.kind == "identified") {
        const auto& T = env.scheme(q.args[0]);
        PointRef x = make_point(env.point(q.args[1]), T, budget);
        PointRef y = make_point(env.point(q.args[2]), T, budget);
        auto r = identified_in_separator(T, x, y, budget);
        switch (r) {
        case IdentifyResult::Identified: out.verdict = "Identified"; break;
        case IdentifyResult::Distinct: out.verdict = "Distinct"; break;
        case IdentifyResult::NoSeparator: out.verdict = "NoSeparator"; break;
        case IdentifyResult::Undecided: out.verdict = "Undecided"; break;
        }
        out.lines.push_back("points are identified in the separator exactly when their "
                            "local rings are apparented");
    } else {
        throw Error("unknown query kind '" + q.kind + "'");
    }
    return out;
}

} // namespace run_detail

inline RunOutcome run_manifest(const Manifest& m, const RunOptions& opt)
{
    using namespace run_detail;
    Budget budget = global_budget();
    if (opt.budget_steps) budget.max_steps = *opt.budget_steps;

    Json report;
    report["options"] = Json::object();
    report["options"]["budget"] = opt.budget_steps ? Json(*opt.budget_steps) : Json(nullptr);
    report["options"]["format"] = opt.format;
    report["options"]["oracle"] = opt.oracle_primes;
    report["options"]["seed"] = opt.seed;
    report["options"]["strict_expect"] = opt.strict_expect.has_value();
    report["queries"] = Json::array();

    RunOutcome outcome;
    Env env;
    std::ostringstream text;
    std::vector<std::string> verdicts;
    bool disagreement = false;

    try {
        std::size_t qindex = 0;
        for (const auto& st : m.statements) {
            if (declare(env, st, budget)) continue;
            const auto& q = std::get<QueryDecl>(st);
            QueryOutput out;
            try {
                out = exec_query(q, env, opt, budget);
            } catch (const BudgetError& e) {
                out = QueryOutput{};
                out.verdict = "Undecided";
                out.lines.push_back(std::string("reason: ") + e.what());
            }
            std::string header = "[" + std::to_string(qindex) + "] " + q.kind;
            for (const auto& a : q.args) header += " " + a;
            text << header << " -> " << out.verdict << "\n";
            for (const auto& l : out.lines) text << "    " << l << "\n";
            Json jq;
            jq["index"] = qindex;
            jq["kind"] = q.kind;
            jq["args"] = q.args;
            jq["verdict"] = out.verdict;
            jq["payload"] = out.payload;
            if (out.oracle) jq["oracle"] = *out.oracle;
            report["queries"].push_back(jq);
            verdicts.push_back(out.verdict);
            disagreement = disagreement || out.oracle_disagreement;
            if (out.oracle_disagreement)
                text << "    ORACLE DISAGREEMENT: finite-field cross-check contradicts "
                        "the verdict\n";
            ++qindex;
        }
        report["status"] = "ok";
    } catch (const Error& e) {
        report["status"] = "error";
        report["error"] = e.what();
        text << "error: " << e.what() << "\n";
        outcome.exit_code = 2;
    }

    if (outcome.exit_code == 0 && disagreement) {
        report["status"] = "error";
        report["error"] = "oracle disagreement";
        outcome.exit_code = 2;
    }

    if (outcome.exit_code == 0 && opt.strict_expect) {
        Json exp = Json::parse(*opt.strict_expect);
        std::vector<std::string> want = exp.at("verdicts").get<std::vector<std::string>>();
        Json cmp = Json::array();
        bool mismatch = want.size() != verdicts.size();
        for (std::size_t i = 0; i < verdicts.size() && i < want.size(); ++i) {
            bool ok = verdicts[i] == want[i];
            mismatch = mismatch || !ok;
            Json j;
            j["index"] = i;
            j["expected"] = want[i];
            j["actual"] = verdicts[i];
            j["match"] = ok;
            cmp.push_back(j);
        }
        report["expect"] = cmp;
        if (mismatch) {
            outcome.exit_code = 1;
            text << "strict-expect: verdict mismatch\n";
        }
    }

    outcome.text = text.str();
    outcome.json = report.dump(2) + "\n";
    return outcome;
}

} // namespace sep
