#include <CLI11.hpp>

#include <iostream>
#include <regex>
#include <string>
#include <vector>

#include "grassid/acceptance.hpp"
#include "grassid/canon.hpp"
#include "grassid/checker.hpp"
#include "grassid/reduce.hpp"
#include "grassid/text.hpp"

using namespace grassid;

namespace {

constexpr int kHolds = 0, kFails = 1, kUsage = 2, kInconclusive = 3;

struct Options {
    std::string field = "p=3";
    std::string grading;
    std::string ideal;
    int n = 6;
    unsigned long long seed = 1;
    int trials = 100;
    bool exhaustive = false;
    int max_wt = -1;
    bool trace = false;
    std::string format = "text";
    int jobs = 1;
};

// "3", "9" or "p=3,t=2[,mod=...]".
FieldPtr field_of(const std::string& s) {
    if (!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        const long q = std::stol(s);
        for (long p = 2; p <= q; ++p) {
            if (q % p) continue;
            long r = q;
            int t = 0;
            while (r % p == 0) r /= p, ++t;
            if (r != 1) throw Error("field size " + s + " is not a prime power");
            return make_field(static_cast<int>(p), t);
        }
        throw Error("bad field size " + s);
    }
    return parse_field(s);
}

// --ideal wins for the ideal, --grading for the grading; a given pair must match.
struct Setting {
    FieldPtr field;
    GradingSpec grading;
    IdealSpec ideal;
};

Setting setting_of(const Options& o) {
    Setting s{field_of(o.field), GradingSpec::canonical(), {}};
    std::optional<GradingSpec> g;
    if (!o.grading.empty()) g = parse_grading(o.grading);
    std::string id = o.ideal;
    if ((id == "I3" || id == "I4") && g) id += ":" + std::to_string(g->k);
    if (id == "I3" || id == "I4") throw Error("--ideal " + id + " needs k, as " + id + ":<k> or via --grading");
    if (!id.empty()) {
        s.ideal = parse_ideal(id, s.field);
        if (g && !(*g == s.ideal.grading()))
            throw Error("grading " + g->name() + " does not match ideal " + s.ideal.name() + " (expects " +
                        s.ideal.grading().name() + ")");
        s.grading = s.ideal.grading();
    } else {
        if (g) s.grading = *g;
        s.ideal = ideal_for_grading(s.grading, s.field);
    }
    return s;
}

std::map<std::string, std::string> key_values(const std::vector<std::string>& args, std::size_t from) {
    std::map<std::string, std::string> kv;
    for (std::size_t i = from; i < args.size(); ++i) {
        const auto eq = args[i].find('=');
        if (eq == std::string::npos) throw Error("expected key=value, got '" + args[i] + "'");
        kv[args[i].substr(0, eq)] = args[i].substr(eq + 1);
    }
    return kv;
}

int int_arg(const std::map<std::string, std::string>& kv, const std::string& key, std::optional<int> dflt = {}) {
    auto it = kv.find(key);
    if (it == kv.end()) {
        if (dflt) return *dflt;
        throw Error("missing " + key + "=");
    }
    try {
        std::size_t used = 0;
        const int v = std::stoi(it->second, &used);
        if (used == it->second.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error("bad value for " + key + ": " + it->second);
}

std::vector<int> int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, ','))
        if (!part.empty()) out.push_back(std::stoi(part));
    return out;
}

int cmd_parse(const Options& o, const std::string& text) {
    std::cout << to_string(parse_poly(text, field_of(o.field))) << "\n";
    return 0;
}

int cmd_reduce(const Options& o, const std::string& text) {
    const Setting s = setting_of(o);
    const FreePoly f = parse_poly(text, s.field);
    const auto cf = reduce(f, s.ideal);
    const bool kv = o.format == "kv";
    std::cout << (kv ? "form=" : "") << to_string(cf) << "\n";
    if (o.trace) {
        const auto steps = reduction_trace(f, s.ideal);
        if (!kv) std::cout << "trace:\n";
        for (std::size_t i = 0; i < steps.size(); ++i)
            std::cout << (kv ? "step." + std::to_string(i + 1) + "=" : "  ") << to_string(*s.field, steps[i]) << "\n";
    }
    return 0;
}

// Variables x_i stand for both parities; every pattern is checked.
std::vector<std::pair<std::string, std::string>> parity_patterns(const std::string& text) {
    static const std::regex xvar("x([0-9]+)");
    std::set<int> xs;
    for (std::sregex_iterator it(text.begin(), text.end(), xvar), end; it != end; ++it)
        xs.insert(std::stoi((*it)[1]));
    if (xs.empty()) return {{"", text}};
    if (text.find_first_of("yz") != std::string::npos)
        throw Error("x variables cannot be mixed with y and z variables");
    const std::vector<int> idx(xs.begin(), xs.end());
    std::vector<std::pair<std::string, std::string>> out;
    for (unsigned mask = 0; mask < (1u << idx.size()); ++mask) {
        std::string t = text, label;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const std::string letter = mask >> i & 1 ? "z" : "y";
            t = std::regex_replace(t, std::regex("x" + std::to_string(idx[i]) + "(?![0-9])"),
                                   letter + std::to_string(idx[i]));
            label += (i ? "," : "") + ("x" + std::to_string(idx[i]) + "=" + letter);
        }
        out.push_back({label, t});
    }
    return out;
}

int cmd_check(const Options& o, const std::string& text) {
    const Setting s = setting_of(o);
    CheckConfig cfg;
    cfg.grading = s.grading;
    cfg.n = o.n;
    cfg.mode = o.exhaustive ? CheckConfig::Mode::Exhaustive : CheckConfig::Mode::Random;
    cfg.max_wt = o.max_wt;
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    cfg.jobs = o.jobs;
    const bool kv = o.format == "kv";
    unsigned long long evals = 0;
    bool inconclusive = false;
    const auto patterns = parity_patterns(text);
    for (const auto& [label, poly] : patterns) {
        auto r = check_identity(parse_poly(poly, s.field), cfg);
        evals += r.evaluations;
        if (r.verdict == CheckReport::Verdict::Holds) continue;
        if (r.verdict == CheckReport::Verdict::Inconclusive) {
            inconclusive = true;
            continue;
        }
        if (!label.empty()) std::cout << (kv ? "pattern=" : "pattern ") << label << "\n";
        std::cout << (kv ? report_kv(r) : report_text(r));
        return kFails;
    }
    CheckReport r;
    r.verdict = inconclusive ? CheckReport::Verdict::Inconclusive : CheckReport::Verdict::Holds;
    r.evaluations = evals;
    if (inconclusive) r.note = "evaluation budget exceeded";
    if (patterns.size() > 1) r.note += (r.note.empty() ? "" : "; ") + std::to_string(patterns.size()) + " parity patterns";
    std::cout << (kv ? report_kv(r) : report_text(r));
    return inconclusive ? kInconclusive : kHolds;
}

int cmd_gen(const Options& o, const std::vector<std::string>& args) {
    if (args.empty()) throw Error("gen needs a family: g_m, fT, rT, I1, I2, I3, I4");
    const FieldPtr f = field_of(o.field);
    const auto kv = key_values(args, 1);
    const std::string& fam = args[0];
    auto zs = [&](int m) {
        std::vector<Var> out;
        for (int i = 1; i <= m; ++i) out.push_back(Var::z(i));
        return out;
    };
    if (fam == "g_m" || fam == "gm") {
        std::cout << to_string(gen_gm(f, int_arg(kv, "m"))) << "\n";
    } else if (fam == "fT" || fam == "rT") {
        const auto T = int_list(kv.count("T") ? kv.at("T") : "");
        const auto z = zs(int_arg(kv, "zs"));
        const FreePoly p = fam == "fT" ? gen_fT(f, z, T) : gen_rT(f, Var::y(int_arg(kv, "y", 1)), z, T);
        std::cout << to_string(p) << "\n";
    } else if (fam == "I1" || fam == "I2" || fam == "I3" || fam == "I4") {
        const std::string id = fam.size() == 2 && (fam == "I3" || fam == "I4") ? fam + ":" + std::to_string(int_arg(kv, "k"))
                                                                             : fam;
        for (const auto& g : gen_ideal_basis(parse_ideal(id, f))) std::cout << g.name << ": " << to_string(g.poly) << "\n";
    } else {
        throw Error("unknown family '" + fam + "'");
    }
    return 0;
}

PrTerm term_arg(const std::string& text) {
    auto [sign, u] = parse_term(text);
    if (sign != 1) throw Error("term '" + text + "' is not in sorted form");
    return u;
}

int cmd_order(const std::string& a, const std::string& b) {
    std::cout << order_name(ss_compare(term_arg(a), term_arg(b))) << "\n";
    return 0;
}

int cmd_witness(const Options& o, const std::vector<std::string>& args) {
    if (args.empty()) throw Error("witness needs a term");
    const FieldPtr f = field_of(o.field);
    const auto kv = key_values(args, 1);
    if (!kv.count("case")) throw Error("witness needs case=can|inf|kstar:<k>|k1:<k>|k2:<k>");
    const auto c = parse_case(kv.at("case"));
    const Elem alpha = static_cast<Elem>(int_arg(kv, "alpha", 1) % f->q());
    const PrTerm u = term_arg(args[0]);
    const auto a = build_witness(u, c, f, alpha);
    const auto d = certify_dominant(u, a, f);
    const bool text = o.format != "kv";
    std::cout << (text ? "case " : "case=") << c.name() << (text ? " grading " : "\ngrading=") << c.grading().name()
              << "\n";
    for (const auto& [v, g] : a.values)
        std::cout << (text ? "  " + v.name() + " = " : "witness." + v.name() + "=") << to_string(g) << "\n";
    std::cout << (text ? "value = " : "value=") << to_string(d.value) << "\n";
    std::cout << (text ? "dom support " : "dom_support=") << mask_set_text(d.dom_support) << "\n";
    std::cout << (text ? "nonzero " : "nonzero=") << (d.nonzero ? "true" : "false") << "\n";
    return d.nonzero ? 0 : 1;
}

int cmd_selftest() {
    bool all = true;
    for (const auto& s : acceptance::suites()) {
        const auto o = acceptance::timed(s);
        all = all && o.pass;
        std::cout << acceptance::status_line(o) << "\n";
        for (const auto& n : o.notes) std::cout << "      " << n << "\n";
        std::cout.flush();
    }
    std::cout << (all ? "all criteria pass" : "some criteria fail") << "\n";
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graded polynomial identities of Grassmann algebras over finite fields"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--field", o.field, "field: q, or p=<p>,t=<t>[,mod=<c0>,...]")->capture_default_str();
    app.add_option("--grading", o.grading, "canonical | alternating | kstar:<k> | k:<k>");
    app.add_option("--ideal", o.ideal, "I1 | I2 | I3[:<k>] | I4[:<k>]");
    app.add_option("--n", o.n, "truncation of the Grassmann algebra")->capture_default_str();
    app.add_option("--seed", o.seed, "random seed")->capture_default_str();
    app.add_option("--trials", o.trials, "random trials")->capture_default_str();
    app.add_flag("--exhaustive", o.exhaustive, "enumerate all assignments");
    app.add_option("--max-wt", o.max_wt, "largest blade length in substitutions");
    app.add_flag("--trace", o.trace, "print the rewrite log");
    app.add_option("--format", o.format, "text | kv")->check(CLI::IsMember({"text", "kv"}))->capture_default_str();
    app.add_option("--jobs", o.jobs, "threads for random trials")->check(CLI::PositiveNumber)->capture_default_str();
    app.fallthrough();

    std::string poly, term_a, term_b;
    std::vector<std::string> rest;
    auto* parse = app.add_subcommand("parse", "parse and print a polynomial");
    parse->add_option("poly", poly)->required();
    auto* red = app.add_subcommand("reduce", "canonical form modulo an ideal");
    red->add_option("poly", poly)->required();
    auto* check = app.add_subcommand("check", "test a graded identity");
    check->add_option("poly", poly)->required();
    auto* gen = app.add_subcommand("gen", "print generators: g_m m=<m> | fT zs=<m> T=<i,j> | rT ... | I1..I4 k=<k>");
    gen->add_option("args", rest)->required();
    auto* order = app.add_subcommand("order", "compare two terms");
    order->add_option("u", term_a)->required();
    order->add_option("v", term_b)->required();
    auto* wit = app.add_subcommand("witness", "certify a term with a witness substitution: <term> case=<case>");
    wit->add_option("args", rest)->required();
    auto* self = app.add_subcommand("selftest", "run the acceptance suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*parse) return cmd_parse(o, poly);
        if (*red) return cmd_reduce(o, poly);
        if (*check) return cmd_check(o, poly);
        if (*gen) return cmd_gen(o, rest);
        if (*order) return cmd_order(term_a, term_b);
        if (*wit) return cmd_witness(o, rest);
        if (*self) return cmd_selftest();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
