#include "loopcoh/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

namespace loopcoh::cli {

using nlohmann::ordered_json;

namespace {

std::string join_issues(const std::vector<ConfigIssue>& issues)
{
    std::string out = "invalid configuration:";
    for (const auto& i : issues) out += "\n  " + (i.path.empty() ? std::string("/") : i.path) + ": " + i.message;
    return out;
}

std::optional<std::int64_t> parse_int(std::string_view s)
{
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

class Validator {
public:
    std::vector<ConfigIssue> issues;
    void fail(std::string path, std::string message) { issues.push_back({std::move(path), std::move(message)}); }

    std::optional<int> positive_int(const ordered_json& v, const std::string& path)
    {
        if (!v.is_number_integer()) {
            fail(path, "expected an integer");
            return std::nullopt;
        }
        const auto x = v.get<std::int64_t>();
        if (x <= 0 || x > 1000) {
            fail(path, "expected a positive integer (at most 1000)");
            return std::nullopt;
        }
        return static_cast<int>(x);
    }

    void only_keys(const ordered_json& obj, const std::string& path, const std::set<std::string>& allowed)
    {
        for (const auto& [k, _] : obj.items())
            if (!allowed.count(k)) fail(path + "/" + k, "unknown field");
    }
};

std::optional<linalg::Ring> ring_from_json(const ordered_json& v, Validator& val)
{
    if (v.is_string()) {
        auto r = parse_ring(v.get<std::string>());
        if (!r) val.fail("/ring", "unknown ring '" + v.get<std::string>() + "' (expected Z, Q or F<p> with p prime)");
        return r;
    }
    if (v.is_object() && v.size() == 1 && v.contains("prime_field") && v["prime_field"].is_number_integer()) {
        auto r = parse_ring("F" + std::to_string(v["prime_field"].get<std::int64_t>()));
        if (!r) val.fail("/ring/prime_field", "not a prime");
        return r;
    }
    val.fail("/ring", "expected a ring name or {\"prime_field\": p}");
    return std::nullopt;
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues) : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

std::optional<linalg::Ring> parse_ring(const std::string& text)
{
    if (text == "Z" || text == "integers") return linalg::Ring::integers();
    if (text == "Q" || text == "rationals") return linalg::Ring::rationals();
    std::string_view digits;
    if (text.size() > 1 && text[0] == 'F') digits = std::string_view(text).substr(1);
    constexpr std::string_view pf = "prime_field(";
    if (text.size() > pf.size() + 1 && text.starts_with(pf) && text.back() == ')')
        digits = std::string_view(text).substr(pf.size(), text.size() - pf.size() - 1);
    if (digits.empty()) return std::nullopt;
    auto p = parse_int(digits);
    if (!p || !linalg::is_prime(*p) || *p > (std::int64_t{1} << 31)) return std::nullopt;
    return linalg::Ring::prime_field(*p);
}

JobConfig parse_config(const std::string& text)
{
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::vector<ConfigIssue>{{"", std::string("malformed JSON: ") + e.what()}});
    }
    if (!doc.is_object()) throw ConfigError(std::vector<ConfigIssue>{{"", "the configuration must be a JSON object"}});

    Validator val;
    JobConfig cfg;
    val.only_keys(doc, "", {"ring", "generators", "sq1", "sq_overrides", "bounds", "cache_dir"});

    bool ring_ok = false;
    if (!doc.contains("ring")) {
        val.fail("/ring", "missing");
    } else if (auto r = ring_from_json(doc["ring"], val)) {
        cfg.ring = *r;
        ring_ok = true;
    }

    std::map<std::string, int> degree_of;
    bool gens_ok = false;
    if (!doc.contains("generators") || !doc["generators"].is_array() || doc["generators"].empty()) {
        val.fail("/generators", "expected a nonempty array of {name, degree}");
    } else {
        gens_ok = true;
        const auto& gens = doc["generators"];
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const std::string path = "/generators/" + std::to_string(i);
            const auto& g = gens[i];
            if (!g.is_object()) {
                val.fail(path, "expected {name, degree}");
                gens_ok = false;
                continue;
            }
            val.only_keys(g, path, {"name", "degree"});
            poly::Generator gen;
            bool ok = true;
            if (!g.contains("name") || !g["name"].is_string() || g["name"].get<std::string>().empty()) {
                val.fail(path + "/name", "expected a nonempty string");
                ok = false;
            } else {
                gen.name = g["name"].get<std::string>();
                const bool ident = std::all_of(gen.name.begin(), gen.name.end(), [](char c) {
                    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
                }) && !std::isdigit(static_cast<unsigned char>(gen.name[0]));
                if (!ident) {
                    val.fail(path + "/name", "generator names use letters, digits, '_' and ''', starting with a letter");
                    ok = false;
                } else if (degree_of.count(gen.name)) {
                    val.fail(path + "/name", "duplicate generator name '" + gen.name + "'");
                    ok = false;
                }
            }
            if (!g.contains("degree") || !g["degree"].is_number_integer()) {
                val.fail(path + "/degree", "expected an integer");
                ok = false;
            } else {
                const auto d = g["degree"].get<std::int64_t>();
                if (d < 2 || d > 1000) {
                    val.fail(path + "/degree", "degree " + std::to_string(d) + " is not allowed; the algebra must be 1-reduced (degree >= 2)");
                    ok = false;
                } else if (d % 2 != 0 && ring_ok && !cfg.ring.is_char2()) {
                    val.fail(path + "/degree", "odd degree " + std::to_string(d) + " over " + cfg.ring.name() +
                                                   ": the polynomial algebra must be evenly graded unless the coefficients are F2");
                    ok = false;
                }
                gen.degree = static_cast<int>(d);
            }
            if (ok) {
                degree_of[gen.name] = gen.degree;
                cfg.generators.push_back(gen);
            } else {
                gens_ok = false;
            }
        }
    }

    const bool have_algebra = ring_ok && gens_ok;
    std::optional<poly::PolynomialAlgebra> A;
    if (have_algebra) A.emplace(cfg.ring, poly::GeneratorSet(cfg.generators, cfg.ring));

    if (doc.contains("sq1")) {
        const auto& sq = doc["sq1"];
        if (ring_ok && !cfg.ring.is_char2()) val.fail("/sq1", "Sq1 tables require the ring F2");
        if (!sq.is_object()) {
            val.fail("/sq1", "expected an object {generator: polynomial}");
        } else {
            cfg.sq1.emplace();
            for (const auto& [name, value] : sq.items()) {
                const std::string path = "/sq1/" + name;
                if (!value.is_string()) {
                    val.fail(path, "expected a polynomial expression string");
                    continue;
                }
                if (gens_ok && !degree_of.count(name)) {
                    val.fail(path, "unknown generator '" + name + "'");
                    continue;
                }
                cfg.sq1->emplace_back(name, value.get<std::string>());
                if (!A || !cfg.ring.is_char2()) continue;
                try {
                    auto p = A->parse(value.get<std::string>());
                    const int want = 2 * degree_of[name] - 1;
                    if (!A->is_homogeneous(p)) {
                        val.fail(path, "image is not homogeneous");
                    } else if (auto d = A->degree(p); d && *d != want) {
                        val.fail(path, "image has degree " + std::to_string(*d) + ", expected " + std::to_string(want));
                    }
                } catch (const std::invalid_argument& e) {
                    val.fail(path, e.what());
                }
            }
        }
    }

    if (doc.contains("sq_overrides")) {
        const auto& ov = doc["sq_overrides"];
        if (ring_ok && !cfg.ring.is_char2()) val.fail("/sq_overrides", "operation overrides require the ring F2");
        if (!ov.is_array()) {
            val.fail("/sq_overrides", "expected an array of {p, q, args, value}");
        } else {
            for (std::size_t i = 0; i < ov.size(); ++i) {
                const std::string path = "/sq_overrides/" + std::to_string(i);
                const auto& e = ov[i];
                if (!e.is_object()) {
                    val.fail(path, "expected {p, q, args, value}");
                    continue;
                }
                val.only_keys(e, path, {"p", "q", "args", "value"});
                SqOverride o;
                auto p = e.contains("p") ? val.positive_int(e["p"], path + "/p") : std::nullopt;
                auto q = e.contains("q") ? val.positive_int(e["q"], path + "/q") : std::nullopt;
                if (!e.contains("p")) val.fail(path + "/p", "missing");
                if (!e.contains("q")) val.fail(path + "/q", "missing");
                if (!e.contains("value") || !e["value"].is_string()) val.fail(path + "/value", "expected a polynomial expression string");
                if (!e.contains("args") || !e["args"].is_array()) {
                    val.fail(path + "/args", "expected an array of monomials");
                    continue;
                }
                for (const auto& a : e["args"]) {
                    if (!a.is_string()) {
                        val.fail(path + "/args", "arguments are monomial strings");
                        break;
                    }
                    o.args.push_back(a.get<std::string>());
                }
                if (!p || !q || !e.contains("value") || !e["value"].is_string()) continue;
                o.p = *p;
                o.q = *q;
                o.value = e["value"].get<std::string>();
                if (o.args.size() != static_cast<std::size_t>(o.p + o.q)) {
                    val.fail(path + "/args", "expected p + q = " + std::to_string(o.p + o.q) + " arguments");
                    continue;
                }
                cfg.sq_overrides.push_back(o);
            }
        }
    }

    if (doc.contains("bounds")) {
        const auto& b = doc["bounds"];
        if (!b.is_object()) {
            val.fail("/bounds", "expected an object");
        } else {
            val.only_keys(b, "/bounds", {"max_degree", "max_resolution_degree", "weight_cap", "iteration_cap"});
            auto field = [&](const char* key, int& out) {
                if (!b.contains(key)) return;
                if (auto v = val.positive_int(b[key], std::string("/bounds/") + key)) out = *v;
            };
            field("max_degree", cfg.bounds.max_degree);
            field("max_resolution_degree", cfg.bounds.max_resolution_degree);
            field("weight_cap", cfg.bounds.weight_cap);
            field("iteration_cap", cfg.bounds.iteration_cap);
        }
    }

    if (doc.contains("cache_dir")) {
        if (!doc["cache_dir"].is_string() || doc["cache_dir"].get<std::string>().empty())
            val.fail("/cache_dir", "expected a nonempty path string");
        else
            cfg.cache_dir = doc["cache_dir"].get<std::string>();
    }

    // Overrides validate against the table (arity, value degree) once the rest is sound.
    if (val.issues.empty() && !cfg.sq_overrides.empty()) {
        try {
            (void)cfg.op_table();
        } catch (const std::invalid_argument& e) {
            val.fail("/sq_overrides", e.what());
        }
    }

    if (!val.issues.empty()) throw ConfigError(std::move(val.issues));
    return cfg;
}

poly::PolynomialAlgebra JobConfig::algebra() const
{
    return poly::PolynomialAlgebra(ring, poly::GeneratorSet(generators, ring));
}

std::optional<poly::Steenrod> JobConfig::steenrod() const
{
    if (!ring.is_char2()) return std::nullopt;
    const auto A = algebra();
    std::map<std::string, std::string> entries;
    if (sq1)
        for (const auto& [k, v] : *sq1) entries[k] = v;
    return poly::Steenrod(A, poly::parse_sq1_table(A, entries));
}

std::optional<hirsch::HirschOpTable> JobConfig::op_table() const
{
    auto sq = steenrod();
    if (!sq) return std::nullopt;
    auto t = hirsch::HirschOpTable::sq_structure(*sq);
    const auto& A = sq->algebra();
    for (std::size_t i = 0; i < sq_overrides.size(); ++i) {
        const auto& o = sq_overrides[i];
        std::vector<poly::Monomial> args;
        for (const auto& a : o.args) {
            auto p = A.parse(a);
            if (p.size() != 1 || !A.ring().is_one(p.begin()->second))
                throw std::invalid_argument("override " + std::to_string(i) + ": argument '" + a + "' is not a monomial");
            args.push_back(p.begin()->first);
        }
        t.set_override(o.p, o.q, std::move(args), A.parse(o.value));
    }
    return t;
}

ordered_json JobConfig::canonical() const
{
    ordered_json out;
    out["ring"] = ring.name();
    out["generators"] = ordered_json::array();
    for (const auto& g : generators) out["generators"].push_back({{"name", g.name}, {"degree", g.degree}});
    if (auto sq = steenrod()) {
        const auto& A = sq->algebra();
        ordered_json t = ordered_json::object();
        for (std::size_t g = 0; g < A.n_generators(); ++g) {
            auto v = sq->on_generator(g);
            if (!v.empty()) t[A.generators()[g].name] = A.to_string(v);
        }
        out["sq1"] = t;
        ordered_json ov = ordered_json::array();
        for (const auto& o : sq_overrides) {
            ordered_json args = ordered_json::array();
            for (const auto& a : o.args) args.push_back(A.to_string(A.parse(a)));
            ov.push_back({{"p", o.p}, {"q", o.q}, {"args", args}, {"value", A.to_string(A.parse(o.value))}});
        }
        out["sq_overrides"] = ov;
    }
    out["bounds"] = {{"max_degree", bounds.max_degree},
                     {"max_resolution_degree", bounds.max_resolution_degree},
                     {"weight_cap", bounds.effective_weight_cap()},
                     {"iteration_cap", bounds.iteration_cap}};
    return out;
}

}  // namespace loopcoh::cli
