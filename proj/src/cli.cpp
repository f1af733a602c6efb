#include "regmodels/cli.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "regmodels/errors.hpp"

namespace regmodels {

using json = nlohmann::ordered_json;

Command parse_command(const std::string& name) {
    if (name == "check") return Command::Check;
    if (name == "valuations") return Command::Valuations;
    if (name == "vreg") return Command::VReg;
    if (name == "vmin") return Command::VMin;
    if (name == "fiber") return Command::Fiber;
    if (name == "graph") return Command::Graph;
    fail(ErrorKind::InvalidInput, "unknown command " + name);
}

Format parse_format(const std::string& name) {
    if (name == "text") return Format::Text;
    if (name == "json") return Format::Json;
    if (name == "dot") return Format::Dot;
    fail(ErrorKind::InvalidInput, "unknown format " + name);
}

namespace {

long get_long(const json& j, const std::string& what) {
    if (!j.is_number_integer()) fail(ErrorKind::ParseError, what + " must be an integer");
    return j.get<long>();
}

mpq_class get_rational(const json& j) {
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    if (!j.is_string()) fail(ErrorKind::ParseError, "coefficient must be an integer or a \"num/den\" string");
    static const std::regex form(R"(\s*(-?\d+)(?:\s*/\s*(\d+))?\s*)");
    std::smatch m;
    const std::string s = j.get<std::string>();
    if (!std::regex_match(s, m, form)) fail(ErrorKind::ParseError, "bad coefficient \"" + s + "\"");
    mpz_class num(m[1].str());
    mpz_class den = m[2].matched ? mpz_class(m[2].str()) : mpz_class(1);
    if (den == 0) fail(ErrorKind::ParseError, "zero denominator in \"" + s + "\"");
    return frac(num, den);
}

}  // namespace

CoverSpec parse_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::ParseError, e.what());
    }
    if (!j.is_object()) fail(ErrorKind::ParseError, "input must be an object");
    for (const char* key : {"p", "d", "pi_exponent", "factors"})
        if (!j.contains(key)) fail(ErrorKind::ParseError, std::string("missing field ") + key);
    CoverSpec spec;
    spec.p = get_long(j["p"], "p");
    spec.d = get_long(j["d"], "d");
    spec.a = get_long(j["pi_exponent"], "pi_exponent");
    if (!j["factors"].is_array()) fail(ErrorKind::ParseError, "factors must be a list");
    for (const auto& fa : j["factors"]) {
        if (!fa.is_array() || fa.size() != 2 || !fa[0].is_array())
            fail(ErrorKind::ParseError, "each factor must be [coefficients, exponent]");
        std::vector<mpq_class> coeffs;
        for (const auto& c : fa[0]) coeffs.push_back(get_rational(c));
        spec.factors.push_back({QPoly(coeffs), get_long(fa[1], "exponent")});
    }
    return spec;
}

Cover parse_input(const std::string& text) { return validate_normalize(parse_spec(text)); }

namespace {

json strings(const std::vector<MacLaneVal>& vs) {
    json out = json::array();
    for (const auto& v : vs) out.push_back(v.str());
    return out;
}

json forest_json(const ValuationForest& f) {
    json out;
    out["valuations"] = strings(f.sorted());
    std::vector<std::pair<std::string, std::string>> edges;
    for (auto [a, b] : f.hasse_edges()) edges.emplace_back(f.members()[a].str(), f.members()[b].str());
    std::sort(edges.begin(), edges.end());
    out["hasse_edges"] = json::array();
    for (const auto& [a, b] : edges) out["hasse_edges"].push_back(a + " < " + b);
    return out;
}

json coeff_list(const QPoly& f) {
    json out = json::array();
    for (const auto& c : f.coeffs()) out.push_back(rat_str(c));
    return out;
}

json cover_json(const Cover& cover) {
    const CoverSpec& s = cover.spec;
    json out;
    out["p"] = s.p;
    out["d"] = s.d;
    out["pi_exponent"] = s.a;
    out["factors"] = json::array();
    for (size_t i = 0; i < s.factors.size(); ++i) {
        json f;
        f["polynomial"] = s.factors[i].f.str();
        f["coefficients_lowest_first"] = coeff_list(s.factors[i].f);
        f["exponent"] = s.factors[i].a;
        f["key_valuation"] = cover.base[i].str();
        out["factors"].push_back(f);
    }
    if (cover.substitution)
        out["substitution"] = "t -> " + rat_str(cover.substitution->c) + " + " + std::to_string(s.p) + "^" +
                              std::to_string(cover.substitution->b) + " t";
    out["notes"] = cover.notes;
    return out;
}

json crossing_table(const Cover& cover, const ValuationForest& f) {
    json out = json::array();
    for (const auto& c : standard_crossings(f)) {
        CrossingData cd = crossing_data(cover, c);
        json row;
        row["lower"] = c.lower().str();
        row["upper"] = c.upper().str();
        row["N"] = cd.n;
        row["e"] = cd.e;
        row["s"] = cd.s;
        row["N_tilde"] = cd.n_tilde;
        row["r"] = cd.r;
        row["lambda_tilde"] = rat_str(cd.lam_t);
        row["lambda_tilde_prime"] = rat_str(cd.lam_t_prime);
        out.push_back(row);
    }
    return out;
}

json stages_json(const Resolution& r) {
    json out;
    out["V1"] = strings(r.v1.sorted());
    out["V2"] = strings(r.v2.sorted());
    out["V3"] = strings(r.v3.sorted());
    out["V4"] = strings(r.v4.sorted());
    out["V5"] = strings(r.v5.sorted());
    return out;
}

json vreg_json(const Cover& cover, const VReg& reg, bool dump) {
    json out;
    if (dump) out["stages"] = stages_json(reg.stages);
    out["base"] = forest_json(reg.vreg);
    out["crossings"] = crossing_table(cover, reg.vreg);
    out["regularity_failures"] = regularity_failures(cover, reg.vreg);
    return out;
}

json removal_json(const RemovabilityResult& r) {
    json out = json::array();
    for (const auto& rm : r.removed) {
        json row;
        row["valuation"] = rm.v.str();
        row["clauses"] = rm.clauses;
        out.push_back(row);
    }
    return out;
}

json min_json(const Cover& cover, const Pipeline& pl) {
    const MinResult& m = pl.min;
    json out;
    out["case"] = min_case_name(m.which);
    json s = json::array();
    for (const auto& v : m.s) {
        InftyData d = infty_data(cover, v);
        json row;
        row["valuation"] = v.str();
        row["e"] = d.e;
        row["beta"] = d.beta;
        row["conditions"] = {d.cond_i, d.cond_ii, d.cond_iii, d.cond_iv};
        s.push_back(row);
    }
    out["s"] = s;
    out["v0_neighbors"] = m.v0_neighbors;
    if (m.pair) {
        InftyCrossingData icd = infty_crossing_data(cover, m.pair->first, m.pair->second);
        json pair;
        pair["v"] = m.pair->first.str();
        pair["v_prime"] = m.pair->second.str();
        pair["delta"] = icd.delta;
        pair["delta_prime"] = icd.delta_prime;
        pair["N_tilde"] = icd.n_tilde;
        pair["path"] = rat_str(icd.lo) + " .. " + rat_str(icd.hi);
        out["infinity_pair"] = pair;
    }
    if (m.s_max) out["s_max"] = m.s_max->str();
    if (m.which == MinCase::III) out["placeholder_removed"] = m.placeholder_removed;
    out["base"] = forest_json(m.vmin);
    return out;
}

const char* kind_name(DirKind k) {
    switch (k) {
        case DirKind::Down: return "down";
        case DirKind::Zero: return "zero";
        case DirKind::Class: return "class";
    }
    return "?";
}

json graph_json(const FiberGraph& g) {
    json out;
    out["vertices"] = json::array();
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        const FiberVertex& v = g.vertices[i];
        json row;
        row["id"] = i;
        row["valuation"] = v.v.str();
        row["lift"] = v.lift;
        row["mult"] = v.mult;
        row["degree"] = v.degree;
        row["genus"] = v.genus;
        row["ramification"] = json::array();
        for (auto [pts, idx] : v.ramification) row["ramification"].push_back(std::to_string(pts) + " x " + std::to_string(idx));
        row["self_intersection"] = v.self_intersection ? json(*v.self_intersection) : json(nullptr);
        out["vertices"].push_back(row);
    }
    out["edges"] = json::array();
    for (const auto& e : g.edges) {
        json row;
        row["a"] = e.a;
        row["b"] = e.b;
        row["kind"] = e.kind;
        row["fiber_size"] = e.fiber_size;
        out["edges"].push_back(row);
    }
    return out;
}

json fiber_json(const Cover& cover, const FiberGraph& g) {
    json out;
    out["components"] = json::array();
    for (const auto& c : g.components) {
        json row;
        row["valuation"] = c.v.str();
        row["e"] = c.e;
        row["mult"] = c.mult;
        row["count"] = c.count;
        row["degree"] = c.degree;
        row["genus"] = c.genus;
        row["points"] = json::array();
        for (const auto& d : c.directions) {
            json pt;
            pt["kind"] = kind_name(d.kind);
            pt["order"] = d.order;
            json fs = json::array();
            for (size_t i : d.factors) fs.push_back(cover.spec.factors[i].f.str());
            pt["factors"] = fs;
            pt["members"] = strings(d.members);
            row["points"].push_back(pt);
        }
        out["components"].push_back(row);
    }
    json gj = graph_json(g);
    out["vertices"] = gj["vertices"];
    out["edges"] = gj["edges"];
    out["contractible"] = strings(contractible_components(g));
    return out;
}

bool is_scalar(const json& j) { return !j.is_object() && !j.is_array(); }

bool is_short(const json& j) { return is_scalar(j) && (!j.is_string() || j.get<std::string>().size() <= 12); }

std::string scalar_text(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_null()) return "none";
    return j.dump();
}

void render(std::ostream& os, const json& j, int indent) {
    const std::string pad(static_cast<size_t>(indent), ' ');
    for (const auto& [key, val] : j.items()) {
        if (is_scalar(val)) {
            os << pad << key << ": " << scalar_text(val) << "\n";
        } else if (val.empty()) {
            os << pad << key << ": none\n";
        } else if (val.is_object()) {
            os << pad << key << ":\n";
            render(os, val, indent + 2);
        } else if (std::all_of(val.begin(), val.end(), is_short)) {
            os << pad << key << ": [";
            for (size_t i = 0; i < val.size(); ++i) os << (i ? ", " : "") << scalar_text(val[i]);
            os << "]\n";
        } else if (std::all_of(val.begin(), val.end(), is_scalar)) {
            os << pad << key << ":\n";
            for (const auto& x : val) os << pad << "  - " << scalar_text(x) << "\n";
        } else {
            os << pad << key << ":\n";
            for (const auto& x : val) {
                std::ostringstream item;
                render(item, x, 0);
                std::string text = item.str();
                bool first = true;
                std::istringstream lines(text);
                for (std::string line; std::getline(lines, line); first = false)
                    os << pad << (first ? "  - " : "    ") << line << "\n";
            }
        }
    }
}

std::string summary(const Pipeline& pl) {
    bool same = pl.min.vmin.size() == pl.reg.vreg.size();
    return std::string("case ") + min_case_name(pl.min.which) + ", V_min " + (same ? "= V_reg" : "is a proper subset of V_reg") +
           " (" + std::to_string(pl.min.vmin.size()) + " of " + std::to_string(pl.reg.vreg.size()) + " valuations)";
}

}  // namespace

std::string emit_dot(const FiberGraph& g) {
    auto escape = [](const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '"' || c == '{' || c == '}' || c == '<' || c == '>' || c == '\\') out += '\\';
            out += c;
        }
        return out;
    };
    std::ostringstream os;
    os << "graph fiber {\n  node [shape=record];\n";
    std::map<std::string, long> count;
    for (const auto& v : g.vertices) ++count[v.v.str()];
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        const FiberVertex& v = g.vertices[i];
        std::string name = v.v.str();
        if (count[name] > 1) name += " #" + std::to_string(v.lift);
        std::string si = v.self_intersection ? std::to_string(*v.self_intersection) : "-";
        os << "  n" << i << " [label=\"" << escape(name) << " | " << v.mult << " | " << si << "\"];\n";
    }
    std::vector<FiberEdge> edges = g.edges;
    std::sort(edges.begin(), edges.end(), [](const FiberEdge& x, const FiberEdge& y) {
        return std::tie(x.a, x.b, x.kind) < std::tie(y.a, y.b, y.kind);
    });
    for (const auto& e : edges) {
        os << "  n" << e.a << " -- n" << e.b;
        if (e.kind != "crossing") os << " [label=\"" << e.kind << "\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

std::string run(const Cover& cover, const RunConfig& cfg) {
    bool graph_like = cfg.command == Command::Fiber || cfg.command == Command::Graph;
    if (cfg.format == Format::Dot && !graph_like) fail(ErrorKind::InvalidInput, "dot output needs the fiber or graph command");

    json report;
    report["input"] = cover_json(cover);
    if (cfg.command == Command::Valuations) {
        json factors = json::array();
        for (size_t i = 0; i < cover.spec.factors.size(); ++i) {
            json row;
            row["polynomial"] = cover.spec.factors[i].f.str();
            row["key_valuation"] = cover.base[i].str();
            row["pseudovaluation"] = cover.pseudo[i].str();
            row["e"] = ram_index(cover.base[i]);
            row["predecessors"] = strings(predecessors(cover.base[i]));
            factors.push_back(row);
        }
        report["valuations"] = factors;
    } else {
        Pipeline pl{cover, build_vreg(cover), {}, {}};
        pl.removal = removability_pass(cover, pl.reg.vreg);
        pl.min = minimize(cover, pl.removal.kept);
        FiberGraph reg_graph = dual_graph(cover, pl.reg.vreg);
        FiberGraph min_graph = dual_graph(cover, pl.min.vmin, pl.reg.vreg);
        const FiberGraph& chosen = cfg.min_base ? min_graph : reg_graph;
        switch (cfg.command) {
            case Command::Check:
                report["status"] = "ok";
                report["summary"] = summary(pl);
                break;
            case Command::VReg:
                report["vreg"] = vreg_json(cover, pl.reg, cfg.dump_stages);
                break;
            case Command::VMin:
                report["vreg"] = vreg_json(cover, pl.reg, cfg.dump_stages);
                report["removed"] = removal_json(pl.removal);
                report["vmin"] = min_json(cover, pl);
                report["summary"] = summary(pl);
                break;
            case Command::Fiber:
            case Command::Graph:
                if (cfg.format == Format::Dot) return emit_dot(chosen);
                if (cfg.dump_stages) report["stages"] = stages_json(pl.reg.stages);
                report["base"] = cfg.min_base ? "V_min" : "V_reg";
                report["fiber"] = cfg.command == Command::Fiber ? fiber_json(cover, chosen) : graph_json(chosen);
                break;
            case Command::Valuations:
                break;
        }
    }
    if (cfg.format == Format::Json) return report.dump(2) + "\n";
    std::ostringstream os;
    render(os, report, 0);
    return os.str();
}

}  // namespace regmodels
