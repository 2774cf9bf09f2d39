#include "loopcoh/cli/commands.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "loopcoh/cli/cache.hpp"
#include "loopcoh/cli/suites.hpp"
#include "loopcoh/homology.hpp"
#include "loopcoh/koszul.hpp"
#include "loopcoh/version.hpp"

namespace loopcoh::cli {

using nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
public:
    void lap(const std::string& what)
    {
        const auto now = Clock::now();
        const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
        std::ostringstream s;
        s.setf(std::ios::fixed);
        s.precision(1);
        s << "  " << what << ": " << ms << " ms\n";
        text_ += s.str();
    }
    const std::string& text() const { return text_; }

private:
    Clock::time_point last_ = Clock::now();
    std::string text_;
};

struct Context {
    JobConfig cfg;
    poly::PolynomialAlgebra algebra;
    homology::Truncation box;
    std::optional<std::string> cache_dir;
    Stopwatch clock;
    std::ostringstream text;
    std::string cache_text;
};

std::vector<int> degrees_of(const poly::PolynomialAlgebra& A)
{
    std::vector<int> d;
    for (std::size_t i = 0; i < A.n_generators(); ++i) d.push_back(A.generators()[i].degree);
    return d;
}

ordered_json box_json(const Context& ctx)
{
    return {{"max_degree", ctx.box.n_max},
            {"weight_cap", ctx.box.w_max},
            {"max_resolution_degree", ctx.cfg.bounds.max_resolution_degree},
            {"iteration_cap", ctx.cfg.bounds.iteration_cap}};
}

ordered_json base_report(const std::string& command)
{
    ordered_json r;
    r["convention_version"] = kConventionVersion;
    r["tool_version"] = kLibraryVersion;
    r["command"] = command;
    r["status"] = "ok";
    return r;
}

// Builds the complex, importing and refreshing cached matrices when a cache directory is set.
template <class F>
auto with_complex(Context& ctx, const bar::BarAlgebra& B, F&& body)
{
    homology::BarComplex C(B, ctx.box);
    std::optional<MatrixCache> cache;
    if (ctx.cache_dir) {
        ordered_json keydoc{{"convention_version", kConventionVersion},
                            {"ring", ctx.cfg.ring.name()},
                            {"generators", ctx.cfg.canonical()["generators"]},
                            {"max_degree", ctx.box.n_max},
                            {"weight_cap", ctx.box.w_max}};
        cache.emplace(*ctx.cache_dir, content_hash(keydoc.dump()));
        const auto loaded = cache->load(C);
        ctx.cache_text += "cache " + cache->file().string() + ": " + std::to_string(loaded) + " matrices loaded";
    }
    auto out = body(C);
    if (cache) {
        ctx.cache_text += ", " + std::to_string(C.matrices_built()) + " built\n";
        if (C.matrices_built() > 0) cache->store(C);
    }
    return out;
}

ordered_json ranks_json(const homology::RanksReport& r)
{
    ordered_json rows = ordered_json::array();
    for (std::size_t n = 0; n < r.ranks.size(); ++n) {
        ordered_json row{{"degree", n}, {"rank", r.ranks[n]}};
        auto t = r.torsion.find(static_cast<int>(n));
        row["torsion"] = t == r.torsion.end() ? ordered_json::array() : ordered_json(t->second);
        ordered_json blocks = ordered_json::array();
        if (auto b = r.block_ranks.find(static_cast<int>(n)); b != r.block_ranks.end())
            for (const auto& [m, k] : b->second)
                if (k != 0) blocks.push_back({{"internal", m}, {"rank", k}});
        row["by_internal_degree"] = blocks;
        rows.push_back(row);
    }
    return {{"ranks", rows}, {"conclusive", r.conclusive}, {"reason", r.reason}};
}

int cmd_ranks(Context& ctx, ordered_json& report)
{
    bar::PolynomialBarAlgebra B(ctx.algebra);
    auto r = with_complex(ctx, B, [](homology::BarComplex& C) { return homology::homology_ranks(C); });
    ctx.clock.lap("homology ranks");
    report["result"] = ranks_json(r);
    report["flagged"] = ordered_json::array();
    ctx.text << "H^n(BA) ranks over " << ctx.cfg.ring.name() << ":";
    for (auto k : r.ranks) ctx.text << ' ' << k;
    ctx.text << '\n';
    for (const auto& [n, t] : r.torsion) {
        ctx.text << "torsion in degree " << n << ":";
        for (auto x : t) ctx.text << " Z/" << x;
        ctx.text << '\n';
    }
    if (!r.conclusive) {
        ctx.text << "not conclusive: " << r.reason << '\n';
        report["status"] = "not_computable";
        return kNotComputable;
    }
    return kSuccess;
}

struct RingRun {
    homology::HomologyReport report;
    std::optional<homology::Verdict> verdict;
};

RingRun compute_ring(Context& ctx, bool with_verdict)
{
    bar::PolynomialBarAlgebra B(ctx.algebra);
    const auto table = ctx.cfg.op_table();
    const auto kind = table ? homology::ProductKind::muE : homology::ProductKind::shuffle;
    return with_complex(ctx, B, [&](homology::BarComplex& C) {
        RingRun run{homology::homology_ring(C, B, kind, table ? &*table : nullptr), std::nullopt};
        if (with_verdict)
            run.verdict = homology::exterior_verdict(run.report, B, koszul::oracle_dimensions(degrees_of(ctx.algebra), ctx.box.n_max));
        return run;
    });
}

ordered_json ring_json(const Context& ctx, const homology::HomologyReport& h, ordered_json& flagged)
{
    const auto& R = ctx.cfg.ring;
    ordered_json classes = ordered_json::array();
    for (std::size_t i = 0; i < h.classes.size(); ++i) {
        const auto& c = h.classes[i];
        classes.push_back({{"index", i}, {"label", c.label}, {"degree", c.degree}, {"internal", c.internal}, {"canonical", c.canonical}});
    }
    ordered_json table = ordered_json::array();
    for (const auto& e : h.table) {
        ordered_json value = ordered_json::array();
        for (const auto& [k, c] : e.value) value.push_back({{"class", k}, {"coefficient", R.to_string(c)}});
        ordered_json row{{"left", e.left}, {"right", e.right}, {"degree", e.degree}, {"value", value}, {"valid", e.valid}};
        if (!e.witness.empty()) row["witness"] = e.witness;
        table.push_back(row);
        if (!e.valid)
            flagged.push_back({{"left", h.classes[e.left].label}, {"right", h.classes[e.right].label}, {"degree", e.degree},
                               {"reason", e.witness}});
    }
    return {{"product", h.product},   {"ranks", ranks_json(h.ranks)}, {"classes", classes},
            {"table", table},         {"classes_complete", h.classes_complete},
            {"notes", h.notes}};
}

void print_table(Context& ctx, const homology::HomologyReport& h)
{
    const auto& R = ctx.cfg.ring;
    ctx.text << "product: " << h.product << ", " << h.classes.size() << " classes, " << h.table.size() << " entries, "
             << h.flagged() << " flagged\n";
    for (const auto& e : h.table) {
        if (e.valid && e.value.empty()) continue;
        ctx.text << "  " << h.classes[e.left].label << " * " << h.classes[e.right].label << " = ";
        if (!e.valid) {
            ctx.text << "FLAGGED (" << e.witness << ")\n";
            continue;
        }
        bool first = true;
        for (const auto& [k, c] : e.value) {
            ctx.text << (first ? "" : " + ");
            if (!R.is_one(c)) ctx.text << R.to_string(c) << ' ';
            ctx.text << h.classes[k].label;
            first = false;
        }
        ctx.text << '\n';
    }
}

int cmd_ring(Context& ctx, ordered_json& report)
{
    auto run = compute_ring(ctx, false);
    ctx.clock.lap("homology ring");
    ordered_json flagged = ordered_json::array();
    report["result"] = ring_json(ctx, run.report, flagged);
    report["flagged"] = flagged;
    print_table(ctx, run.report);
    if (!run.report.ranks.conclusive || run.report.flagged() > 0 || !run.report.classes_complete) {
        report["status"] = "not_computable";
        return kNotComputable;
    }
    return kSuccess;
}

int cmd_check_exterior(Context& ctx, ordered_json& report)
{
    auto run = compute_ring(ctx, true);
    ctx.clock.lap("homology ring and verdict");
    ordered_json flagged = ordered_json::array();
    auto ring = ring_json(ctx, run.report, flagged);
    const auto& v = *run.verdict;
    report["result"] = {{"verdict", homology::to_string(v.kind)}, {"witness", v.witness}, {"reason", v.reason},
                        {"product", run.report.product}, {"ring", ring}};
    report["flagged"] = flagged;
    ctx.text << "verdict: " << homology::to_string(v.kind) << " (product " << run.report.product << ")\n";
    if (!v.witness.empty()) ctx.text << "witness: " << v.witness << '\n';
    if (!v.reason.empty()) ctx.text << "reason: " << v.reason << '\n';
    if (v.kind == homology::Verdict::Kind::inconclusive) {
        report["status"] = "not_computable";
        return kNotComputable;
    }
    return kSuccess;
}

int cmd_oracle_compare(Context& ctx, ordered_json& report)
{
    bar::PolynomialBarAlgebra B(ctx.algebra);
    auto r = with_complex(ctx, B, [](homology::BarComplex& C) { return homology::homology_ranks(C); });
    ctx.clock.lap("homology ranks");
    const auto degrees = degrees_of(ctx.algebra);
    const auto oracle = koszul::oracle_dimensions(degrees, ctx.box.n_max);
    ctx.clock.lap("oracle dimensions");
    ordered_json koszul_json;
    bool koszul_ok = true;
    try {
        const auto k = koszul::oracle_small_resolution_check(degrees, ctx.cfg.ring, ctx.box.n_max);
        koszul_json = {{"computed", true}, {"ranks", k.ranks}, {"exact", k.exact}, {"defects", k.defects}};
        koszul_ok = k.exact && k.ranks == oracle;
    } catch (const koszul::ResourceGuard& e) {
        koszul_json = {{"computed", false}, {"reason", e.what()}};
    }
    ctx.clock.lap("Koszul complex check");

    bool all_equal = r.ranks.size() == oracle.size();
    ordered_json rows = ordered_json::array();
    ctx.text << "degree  computed  oracle\n";
    for (std::size_t n = 0; n < oracle.size(); ++n) {
        const long got = n < r.ranks.size() ? r.ranks[n] : -1;
        const bool eq = got == oracle[n] && !r.torsion.count(static_cast<int>(n));
        all_equal = all_equal && eq;
        rows.push_back({{"degree", n}, {"computed", got}, {"oracle", oracle[n]}, {"equal", eq}});
        ctx.text << "  " << n << "  " << got << "  " << oracle[n] << (eq ? "" : "  MISMATCH") << '\n';
    }
    report["result"] = {{"rows", rows}, {"all_equal", all_equal}, {"conclusive", r.conclusive}, {"koszul_check", koszul_json}};
    report["flagged"] = ordered_json::array();
    ctx.text << "all_equal: " << (all_equal ? "true" : "false") << '\n';
    if (!r.conclusive) {
        report["status"] = "not_computable";
        return kNotComputable;
    }
    if (!all_equal || !koszul_ok) {
        report["status"] = "check_failed";
        return kCheckFailed;
    }
    return kSuccess;
}

ordered_json suite_json(const SuiteResult& s)
{
    ordered_json counts = ordered_json::object();
    for (const auto& [k, v] : s.counts) counts[k] = v;
    return {{"name", s.name},         {"passed", s.passed()}, {"skipped", s.skipped}, {"checked", s.checked},
            {"failed", s.failed},     {"failures", s.failures}, {"counts", counts},  {"note", s.note}};
}

int cmd_verify(Context& ctx, ordered_json& report)
{
    const int n = ctx.box.n_max;
    std::vector<SuiteResult> suites;
    auto run = [&](std::function<SuiteResult()> f) {
        suites.push_back(f());
        ctx.clock.lap(suites.back().name);
    };
    auto skip = [&](std::string name, std::string why) {
        SuiteResult s;
        s.name = std::move(name);
        s.skipped = true;
        s.note = std::move(why);
        suites.push_back(std::move(s));
    };

    bar::PolynomialBarAlgebra B(ctx.algebra);
    run([&] { return bar_differential_suite(B, n); });
    run([&] { return shuffle_suite(B, n); });
    run([&] { return shuffle_associativity_suite(B, std::min(n, 8)); });

    const auto table = ctx.cfg.op_table();
    if (table) {
        run([&] { return mue_chain_map_suite(B, *table, n); });
        run([&] { return hirsch_relation_suite(*table, n); });
        resolution::HirschResolution R(ctx.algebra);
        const int depth = ctx.cfg.bounds.max_resolution_degree;
        run([&] { return rh_differential_suite(R, depth, n); });
        run([&] { return hexagon_suite(R, n); });
        resolution::NuQuotient Q(R, ctx.cfg.steenrod());
        run([&] { return fnu_chain_map_suite(R, Q, *table, n); });
        run([&] { return siteration_suite(R, n, ctx.cfg.bounds.iteration_cap); });
    } else {
        const std::string why = "the Hirsch resolution and Sq operations are built over F2 only";
        for (const char* s : {"muE_chain_map", "hirsch_relations", "rh_d_squared", "hexagon", "f_nu_chain_map", "s_iteration"})
            skip(s, why);
    }

    ordered_json js = ordered_json::array();
    bool all = true;
    for (const auto& s : suites) {
        js.push_back(suite_json(s));
        all = all && s.passed();
        ctx.text << (s.skipped ? "SKIP " : s.passed() ? "PASS " : "FAIL ") << s.name;
        if (!s.skipped) ctx.text << "  " << (s.checked - std::min(s.checked, s.failed)) << "/" << s.checked;
        if (!s.note.empty()) ctx.text << "  (" << s.note << ")";
        ctx.text << '\n';
        for (const auto& [k, v] : s.counts) ctx.text << "       " << k << ": " << v << '\n';
        for (const auto& f : s.failures) ctx.text << "       failure: " << f << '\n';
    }
    report["result"] = {{"suites", js}, {"all_passed", all}};
    report["flagged"] = ordered_json::array();
    if (!all) {
        report["status"] = "check_failed";
        return kCheckFailed;
    }
    return kSuccess;
}

using Handler = int (*)(Context&, ordered_json&);

const std::vector<std::pair<std::string, Handler>>& handlers()
{
    static const std::vector<std::pair<std::string, Handler>> h{{"ranks", cmd_ranks},
                                                                {"ring", cmd_ring},
                                                                {"check-exterior", cmd_check_exterior},
                                                                {"verify", cmd_verify},
                                                                {"oracle-compare", cmd_oracle_compare}};
    return h;
}

}  // namespace

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [n, _] : handlers()) v.push_back(n);
        return v;
    }();
    return names;
}

CommandResult run_command(const std::string& command, const JobConfig& config, const RunOptions& options)
{
    CommandResult out;
    out.report = base_report(command);
    Handler handler = nullptr;
    for (const auto& [n, h] : handlers())
        if (n == command) handler = h;
    if (!handler) {
        out.report["status"] = "error";
        out.report["errors"] = {{{"path", ""}, {"message", "unknown command '" + command + "'"}}};
        out.text = "error: unknown command '" + command + "'\n";
        out.exit_code = kNotComputable;
        return out;
    }

    JobConfig cfg = config;
    if (options.max_degree) cfg.bounds.max_degree = *options.max_degree;
    Context ctx{cfg, cfg.algebra(), {cfg.bounds.max_degree, cfg.bounds.effective_weight_cap()},
                options.cache_dir ? options.cache_dir : cfg.cache_dir, {}, {}, {}};
    out.report["config"] = cfg.canonical();
    out.report["truncation"] = box_json(ctx);
    out.report["errors"] = ordered_json::array();
    try {
        out.exit_code = handler(ctx, out.report);
    } catch (const linalg::ResourceLimitExceeded& e) {
        out.report["status"] = "not_computable";
        out.report["errors"].push_back({{"path", ""}, {"message", e.what()}});
        ctx.text << "not computable: " << e.what() << '\n';
        out.exit_code = kNotComputable;
    } catch (const resolution::RewriteLimitExceeded& e) {
        out.report["status"] = "not_computable";
        out.report["errors"].push_back({{"path", ""}, {"message", e.what()}});
        ctx.text << "not computable: " << e.what() << '\n';
        out.exit_code = kNotComputable;
    } catch (const std::exception& e) {
        out.report["status"] = "error";
        out.report["errors"].push_back({{"path", ""}, {"message", e.what()}});
        ctx.text << "internal error: " << e.what() << '\n';
        out.exit_code = kCheckFailed;
    }
    if (!out.report.contains("flagged")) out.report["flagged"] = ordered_json::array();
    out.text = "loopcoh " + command + " on " + cfg.ring.name() + "[";
    for (std::size_t i = 0; i < cfg.generators.size(); ++i)
        out.text += (i ? "," : "") + cfg.generators[i].name;
    out.text += "], degree <= " + std::to_string(ctx.box.n_max) + "\n" + ctx.text.str() + ctx.cache_text + "timings:\n" +
                ctx.clock.text() + "status: " + out.report["status"].get<std::string>() + "\n";
    return out;
}

CommandResult run_command_text(const std::string& command, const std::string& config_text, const RunOptions& options)
{
    try {
        return run_command(command, parse_config(config_text), options);
    } catch (const ConfigError& e) {
        CommandResult out;
        out.report = base_report(command);
        out.report["status"] = "invalid_config";
        ordered_json errs = ordered_json::array();
        for (const auto& i : e.issues()) errs.push_back({{"path", i.path}, {"message", i.message}});
        out.report["errors"] = errs;
        out.report["flagged"] = ordered_json::array();
        out.text = std::string(e.what()) + "\n";
        out.exit_code = kNotComputable;
        return out;
    }
}

}  // namespace loopcoh::cli
