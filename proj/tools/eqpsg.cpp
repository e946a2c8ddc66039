// eqpsg: invariants, quasi-polynomial fits, Betti numbers, the Bresinsky
// family and Presburger formulas for parametric semigroups.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqpsg/eqpsg.hpp"

namespace {

using namespace eqpsg;

struct Range {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

Range parse_range(const std::string& text)
{
    try {
        auto dots = text.find("..");
        if (dots == std::string::npos) {
            std::int64_t v = std::stoll(text);
            return {v, v};
        }
        Range r{std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
        if (r.lo > r.hi) throw usage_error("empty range '" + text + "'");
        return r;
    } catch (const std::logic_error&) {
        throw usage_error("bad range '" + text + "' (expected lo..hi or a single integer)");
    }
}

ParametricFamily load_family(const std::string& spec)
{
    if (spec.empty()) throw usage_error("--family is required");
    if (spec.rfind("bresinsky:", 0) == 0) {
        try {
            return bresinsky_family(std::stoi(spec.substr(10)));
        } catch (const std::logic_error&) {
            throw usage_error("bad family '" + spec + "' (expected bresinsky:<even d>)");
        }
    }
    if (std::filesystem::is_regular_file(spec)) return load_family_file(spec);
    return parse_inline_family(spec);
}

std::string read_text(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// A .ppa file holds one formula; '#' starts a comment.
std::string read_formula_file(const std::string& path)
{
    std::string out;
    std::istringstream in(read_text(path));
    for (std::string line; std::getline(in, line);) out += line.substr(0, line.find('#')) + " ";
    return out;
}

void require_format(const std::string& format)
{
    if (format != "json" && format != "csv" && format != "table") throw usage_error("bad format '" + format + "'");
}

struct Common {
    std::string family;
    std::string n = "1..30";
    std::string field;
    std::string format = "json";
    unsigned threads = default_thread_count();
    std::optional<std::int64_t> delta_bound;
    std::optional<std::int64_t> degree_cap;
    bool normalize = false;
};

SweepOptions sweep_options(const Common& c)
{
    SweepOptions o;
    if (!c.field.empty()) o.field = FieldSpec::parse(c.field);
    o.delta_bound = c.delta_bound;
    o.degree_cap = c.degree_cap;
    o.normalize = c.normalize;
    o.threads = c.threads;
    return o;
}

void add_common(CLI::App* cmd, Common& c, bool with_invariant_flags)
{
    cmd->add_option("--family", c.family, "family file, inline generators (\"n+3, n+5\") or bresinsky:<d>")->required();
    cmd->add_option("--n", c.n, "parameter range lo..hi")->capture_default_str();
    cmd->add_option("--field", c.field, "homology field: q, f2, f<p>");
    cmd->add_option("--format", c.format, "json, csv or table")->capture_default_str();
    cmd->add_option("--threads", c.threads, "worker threads (default EQPSG_THREADS or 1)");
    cmd->add_option("--degree-cap", c.degree_cap, "box cap for Betti numbers when m > 1");
    if (with_invariant_flags) {
        cmd->add_option("--delta-bound", c.delta_bound, "scan bound for delta_count (certified when omitted)");
        cmd->add_flag("--normalize", c.normalize, "evaluate numerical invariants on S_n / gcd");
    }
}

int cmd_invariants(const Common& c, const std::string& invariants)
{
    require_format(c.format);
    auto fam = load_family(c.family);
    auto range = parse_range(c.n);
    auto sweep = run_sweep(fam, range.lo, range.hi, parse_invariant_list(invariants), sweep_options(c));
    if (c.format == "json") std::cout << sweep_json(fam, sweep).dump(2) << '\n';
    else if (c.format == "csv") std::cout << sweep_csv(sweep);
    else std::cout << sweep_table(sweep);
    return 0;
}

int cmd_eqp_fit(const Common& c, const std::string& invariants, std::int64_t pmax, std::optional<int> dmax, double holdout)
{
    require_format(c.format);
    auto fam = load_family(c.family);
    auto range = parse_range(c.n);
    auto sweep = run_sweep(fam, range.lo, range.hi, parse_invariant_list(invariants), sweep_options(c));
    FitOptions options{pmax, dmax ? *dmax : 1 + fam.degree_sum(), holdout};
    auto fits = fit_sweep(sweep, options);
    if (c.format == "json") std::cout << eqp_json(fam, sweep, options, fits).dump(2) << '\n';
    else if (c.format == "csv") std::cout << fits_csv(fits);
    else std::cout << fits_table(fits);
    for (const auto& f : fits)
        if (f.status == FitStatus::fit && !f.exact_match) return 1;
    return 0;
}

int cmd_betti(const Common& c, int i, bool graded)
{
    require_format(c.format);
    if (i < 1) throw usage_error("--i must be >= 1");
    auto fam = load_family(c.family);
    auto range = parse_range(c.n);
    std::vector<FieldSpec> fields;
    if (!c.field.empty()) fields.push_back(FieldSpec::parse(c.field));
    else if (i == 1) fields.push_back(FieldSpec::rationals());
    else fields = {FieldSpec::rationals(), FieldSpec::prime(2)};

    Json rows = Json::array();
    std::vector<std::vector<std::string>> table;
    for (std::int64_t n = range.lo; n <= range.hi; ++n) {
        auto gens = instantiate(fam, n);
        Json values = Json::object();
        Json row{{"n", n}, {"generators", generators_json(gens)}};
        std::optional<std::int64_t> first;
        bool dependent = false, complete = true;
        std::int64_t bound = 0;
        std::string graded_text;
        for (const auto& field : fields) {
            std::optional<GradedBettiTable> tab;
            if (fam.dim() == 1) {
                std::vector<std::int64_t> scalar;
                for (const auto& g : gens) scalar.push_back(g[0]);
                auto view = SemigroupView::build(scalar);
                tab = graded_betti_table(view, i, field);
                bound = betti_degree_cutoff(view, i);
            } else {
                if (!c.degree_cap) throw missing_cap();
                tab = graded_betti_table(gens, i, field, *c.degree_cap);
                bound = *c.degree_cap;
                complete = false;
            }
            const std::int64_t v = tab->coarse(i);
            values[field.str()] = v;
            if (first && *first != v) dependent = true;
            if (!first) {
                first = v;
                graded_text = tab->serialize();
            }
            table.push_back({std::to_string(n), std::to_string(i), field.str(), std::to_string(v), complete ? "true" : "false"});
        }
        row["values"] = std::move(values);
        row["complete"] = complete;
        row["degree_bound"] = bound;
        if (fields.size() > 1) row["characteristic_dependent"] = dependent;
        if (graded) row["graded"] = graded_text;
        rows.push_back(std::move(row));
    }
    if (c.format == "json") {
        Json out{{"schema", report_schema}, {"command", "betti"}, {"family", family_json(fam)}, {"i", i}, {"rows", std::move(rows)}};
        std::cout << out.dump(2) << '\n';
    } else if (c.format == "csv") {
        std::cout << "n,i,field,value,complete\n";
        for (const auto& r : table) std::cout << r[0] << ',' << r[1] << ',' << r[2] << ',' << r[3] << ',' << r[4] << '\n';
    } else {
        std::cout << render_table({"n", "i", "field", "value", "complete"}, table);
    }
    return 0;
}

int cmd_bresinsky(const std::string& format, int d, const std::string& n_text, bool skip_betti)
{
    require_format(format);
    auto range = parse_range(n_text);
    Json rows = Json::array();
    std::vector<std::vector<std::string>> table;
    int status = 0;
    for (std::int64_t n = range.lo; n <= range.hi; ++n) {
        try {
            auto r = verify_bresinsky(d, n, !skip_betti);
            rows.push_back(bresinsky_json(r));
            table.push_back({std::to_string(n), std::to_string(r.gens.a[0]) + " " + std::to_string(r.gens.a[1]) + " "
                                                    + std::to_string(r.gens.a[2]) + " " + std::to_string(r.gens.a[3]),
                             std::to_string(r.gens.modulus), std::to_string(r.lower_bound),
                             r.beta1 ? std::to_string(*r.beta1) : "", "true"});
        } catch (const verification_failure& e) {
            status = 1;
            rows.push_back(Json{{"d", d}, {"n", n}, {"verified", false}, {"error", e.what()}});
            table.push_back({std::to_string(n), "", "", "", "", "false"});
        }
    }
    if (format == "json") {
        std::cout << Json{{"schema", report_schema}, {"command", "bresinsky"}, {"d", d}, {"rows", std::move(rows)}}.dump(2) << '\n';
    } else {
        const std::vector<std::string> header{"n", "generators", "modulus", "lower_bound", "beta_1", "verified"};
        if (format == "table") std::cout << render_table(header, table);
        else {
            std::cout << "n,generators,modulus,lower_bound,beta_1,verified\n";
            for (const auto& r : table)
                std::cout << r[0] << ',' << r[1] << ',' << r[2] << ',' << r[3] << ',' << r[4] << ',' << r[5] << '\n';
        }
    }
    return status;
}

int cmd_ppa(const std::string& format, const std::string& formula_text, const std::string& formula_file,
            const std::string& builtin, const std::string& family, std::int64_t n, std::optional<std::int64_t> window,
            const std::vector<std::string>& assigns)
{
    require_format(format);
    Formula f;
    const int sources = !formula_text.empty() + !formula_file.empty() + !builtin.empty();
    if (sources != 1) throw usage_error("give exactly one of --formula, --formula-file, --builtin");
    if (!formula_text.empty()) f = parse_formula(formula_text);
    else if (!formula_file.empty()) f = parse_formula(read_formula_file(formula_file));
    else f = builtin_formula(builtin, load_family(family));

    std::map<std::string, std::int64_t> assignment;
    for (const auto& a : assigns) {
        auto eqpos = a.find('=');
        if (eqpos == std::string::npos) throw usage_error("bad assignment '" + a + "' (expected name=value)");
        try {
            assignment[a.substr(0, eqpos)] = std::stoll(a.substr(eqpos + 1));
        } catch (const std::logic_error&) {
            throw usage_error("bad assignment '" + a + "'");
        }
    }
    std::vector<std::string> open;
    for (const auto& v : f.free_variables())
        if (!assignment.count(v)) open.push_back(v);

    Json out{{"schema", report_schema}, {"command", "ppa"}, {"formula", render(f)}, {"n", n}};
    std::string flag;
    if (open.empty()) {
        auto r = eval_formula(f, n, assignment, window);
        flag = r.exact ? "exact" : "window-limited";
        out["value"] = r.value;
        out["soundness"] = flag;
        if (format == "json") std::cout << out.dump(2) << '\n';
        else std::cout << (r.value ? "true" : "false") << ' ' << flag << '\n';
        return 0;
    }
    // Remaining free variables are enumerated; fixed ones become constants.
    Formula closed = f;
    std::vector<Formula> parts{f};
    for (const auto& [name, value] : assignment) parts.push_back(eq(LinearExpr::variable(name), LinearExpr::integer(value)));
    if (!assignment.empty()) closed = Formula::exists([&] {
        std::vector<std::string> names;
        for (const auto& [name, value] : assignment) names.push_back(name);
        return names;
    }(), Formula::conjunction(parts));
    auto set = define_set(closed, n, open, window);
    flag = set.exact ? "exact" : "window-limited";
    Json tuples = Json::array();
    for (const auto& t : set.tuples) tuples.push_back(open.size() == 1 ? Json(t[0]) : Json(t));
    out["variables"] = open;
    out["window"] = set.window;
    out["soundness"] = flag;
    out["set"] = tuples;
    if (format == "json") std::cout << out.dump(2) << '\n';
    else {
        for (const auto& t : set.tuples) {
            for (std::size_t i = 0; i < t.size(); ++i) std::cout << (i ? "," : "") << t[i];
            std::cout << '\n';
        }
        std::cerr << "soundness: " << flag << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Invariants and quasi-polynomial fits for parametric numerical and affine semigroups"};
    app.require_subcommand(1);

    Common inv;
    std::string inv_list = "frobenius,genus,type";
    auto* invariants = app.add_subcommand("invariants", "tabulate invariants over a range of n");
    add_common(invariants, inv, true);
    invariants->add_option("--invariants", inv_list, "comma-separated invariant names")->capture_default_str();

    Common fitc;
    std::string fit_list = "frobenius,genus,type";
    std::int64_t pmax = 12;
    std::optional<int> dmax;
    double holdout = 0.2;
    auto* eqp = app.add_subcommand("eqp-fit", "fit eventually quasi-polynomial formulas to invariants");
    add_common(eqp, fitc, true);
    eqp->add_option("--invariants", fit_list, "comma-separated invariant names")->capture_default_str();
    eqp->add_option("--pmax", pmax, "largest period tried")->capture_default_str();
    eqp->add_option("--dmax", dmax, "largest degree tried (default 1 + sum of generator degrees)");
    eqp->add_option("--holdout", holdout, "final fraction of points reserved for checking")->capture_default_str();

    Common bet;
    int betti_i = 1;
    bool graded = false;
    auto* betti = app.add_subcommand("betti", "Betti numbers of K[S_n]");
    add_common(betti, bet, false);
    betti->add_option("--i", betti_i, "homological degree")->capture_default_str();
    betti->add_flag("--graded", graded, "include the graded table as lambda;i;beta lines");

    std::string bres_format = "json", bres_n = "2..5";
    int bres_d = 2;
    bool skip_betti = false;
    auto* bres = app.add_subcommand("bresinsky", "verify the Bresinsky-type lower bound construction");
    bres->add_option("--d", bres_d, "even degree d")->capture_default_str();
    bres->add_option("--n", bres_n, "parameter range lo..hi")->capture_default_str();
    bres->add_option("--format", bres_format, "json, csv or table")->capture_default_str();
    bres->add_flag("--skip-betti", skip_betti, "do not compute the complete beta_1");

    std::string ppa_format = "json", formula, formula_file, builtin, ppa_family;
    std::int64_t ppa_n = 0;
    std::optional<std::int64_t> window;
    std::vector<std::string> assigns;
    auto* ppa = app.add_subcommand("ppa", "evaluate a parametric Presburger formula");
    ppa->add_option("--formula", formula, "formula text");
    ppa->add_option("--formula-file", formula_file, ".ppa file holding one formula");
    ppa->add_option("--builtin", builtin, "named formula, e.g. member, pf, length_set(60)");
    ppa->add_option("--family", ppa_family, "family for --builtin");
    ppa->add_option("--n", ppa_n, "parameter value")->capture_default_str();
    ppa->add_option("--window", window, "quantifier window W (default 4 x largest constant)");
    ppa->add_option("--assign", assigns, "free variable value, name=value (repeatable)");
    ppa->add_option("--format", ppa_format, "json or table")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*invariants) return cmd_invariants(inv, inv_list);
        if (*eqp) return cmd_eqp_fit(fitc, fit_list, pmax, dmax, holdout);
        if (*betti) return cmd_betti(bet, betti_i, graded);
        if (*bres) return cmd_bresinsky(bres_format, bres_d, bres_n, skip_betti);
        if (*ppa) return cmd_ppa(ppa_format, formula, formula_file, builtin, ppa_family, ppa_n, window, assigns);
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
