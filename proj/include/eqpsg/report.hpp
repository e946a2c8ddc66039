#ifndef EQPSG_REPORT_HPP
#define EQPSG_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bresinsky.hpp"
#include "quasi_polynomial.hpp"
#include "sweep.hpp"

namespace eqpsg {

using Json = nlohmann::ordered_json;

inline constexpr int report_schema = 1;

/// Integers that fit in 64 bits are JSON numbers; larger ones are strings.
inline Json to_json(const BigInt& v)
{
    if (fits_int64(v)) return static_cast<std::int64_t>(v);
    return v.str();
}

inline Json to_json(const QuasiPolynomial& qp)
{
    Json classes = Json::array();
    for (const auto& row : qp.classes()) {
        Json r = Json::array();
        for (const auto& c : row) r.push_back(to_fraction_string(c));
        classes.push_back(std::move(r));
    }
    return Json{{"period", qp.period()}, {"onset", qp.onset()}, {"degree", degree_of(qp)}, {"classes", std::move(classes)}};
}

inline QuasiPolynomial quasi_polynomial_from_json(const Json& j)
{
    std::vector<std::vector<Rational>> classes;
    for (const auto& row : j.at("classes")) {
        std::vector<Rational> r;
        for (const auto& c : row) r.push_back(parse_fraction_string(c.get<std::string>()));
        classes.push_back(std::move(r));
    }
    return QuasiPolynomial(j.at("period").get<std::int64_t>(), j.at("onset").get<std::int64_t>(), std::move(classes));
}

inline Json to_json(const PeriodicSet& s)
{
    Json pattern = Json::array();
    for (bool b : s.pattern) pattern.push_back(b);
    return Json{{"period", s.period}, {"onset", s.onset}, {"pattern", std::move(pattern)}};
}

inline Json family_json(const ParametricFamily& fam)
{
    Json gens = Json::array();
    for (const auto& g : fam.generators()) {
        Json coords = Json::array();
        for (const auto& c : g) coords.push_back(c.str());
        gens.push_back(std::move(coords));
    }
    return Json{{"label", fam.label()}, {"dim", fam.dim()}, {"generators", std::move(gens)}};
}

inline Json generators_json(const std::vector<GeneratorVector>& gens)
{
    Json out = Json::array();
    for (const auto& g : gens) {
        if (g.size() == 1) out.push_back(g[0]);
        else out.push_back(g);
    }
    return out;
}

inline Json sweep_json(const ParametricFamily& fam, const SweepResult& sweep)
{
    Json invariants = Json::array();
    for (const auto& s : sweep.invariants) invariants.push_back(s.key);
    Json rows = Json::array();
    for (const auto& row : sweep.rows) {
        Json values = Json::object(), notes = Json::object();
        for (std::size_t c = 0; c < sweep.invariants.size(); ++c) {
            const auto& cell = row.cells[c];
            values[sweep.invariants[c].key] = cell.value ? to_json(*cell.value) : Json(nullptr);
            if (!cell.note.empty()) notes[sweep.invariants[c].key] = cell.note;
        }
        Json r{{"n", row.n}, {"generators", generators_json(row.generators)}, {"values", std::move(values)}};
        if (!notes.empty()) r["notes"] = std::move(notes);
        rows.push_back(std::move(r));
    }
    return Json{{"schema", report_schema}, {"command", "invariants"}, {"family", family_json(fam)},
                {"n_range", {sweep.lo, sweep.hi}}, {"invariants", std::move(invariants)}, {"rows", std::move(rows)}};
}

inline std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

/// One line per n; undefined values are empty fields.
inline std::string sweep_csv(const SweepResult& sweep)
{
    std::ostringstream os;
    os << "n";
    for (const auto& s : sweep.invariants) os << ',' << csv_escape(s.key);
    os << '\n';
    for (const auto& row : sweep.rows) {
        os << row.n;
        for (const auto& cell : row.cells) os << ',' << (cell.value ? cell.value->str() : std::string{});
        os << '\n';
    }
    return os.str();
}

/// Right-aligned columns; undefined values print as '-'.
inline std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& body)
{
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : body)
        for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c) os << "  ";
            os << std::string(width[c] - cells[c].size(), ' ') << cells[c];
        }
        os << '\n';
    };
    line(header);
    for (const auto& row : body) line(row);
    return os.str();
}

inline std::string sweep_table(const SweepResult& sweep)
{
    std::vector<std::string> header{"n"};
    for (const auto& s : sweep.invariants) header.push_back(s.key);
    std::vector<std::vector<std::string>> body;
    for (const auto& row : sweep.rows) {
        std::vector<std::string> cells{std::to_string(row.n)};
        for (const auto& cell : row.cells) cells.push_back(cell.value ? cell.value->str() : "-");
        body.push_back(std::move(cells));
    }
    return render_table(header, body);
}

inline Json fit_json(const FitReport& r)
{
    Json j{{"invariant", r.invariant}, {"status", to_string(r.status)}, {"defined_points", r.defined_points}};
    if (r.qp) j["quasi_polynomial"] = to_json(*r.qp);
    if (r.defined) j["defined_set"] = to_json(*r.defined);
    if (r.status == FitStatus::fit) j["verification"] = Json{{"holdout", r.holdout}, {"exact_match", r.exact_match}};
    j["note"] = r.message;
    return j;
}

/// The holdout fraction as an exact "p/q" string (to three decimals).
inline std::string holdout_fraction(double h)
{
    return to_fraction_string(Rational(static_cast<std::int64_t>(std::llround(h * 1000)), 1000));
}

inline Json eqp_json(const ParametricFamily& fam, const SweepResult& sweep, const FitOptions& options,
                     const std::vector<FitReport>& fits)
{
    Json list = Json::array();
    for (const auto& f : fits) list.push_back(fit_json(f));
    return Json{{"schema", report_schema},
                {"command", "eqp-fit"},
                {"family", family_json(fam)},
                {"n_range", {sweep.lo, sweep.hi}},
                {"options", {{"pmax", options.p_max}, {"dmax", options.d_max}, {"holdout", holdout_fraction(options.holdout)}}},
                {"fits", std::move(list)}};
}

inline std::string class_string(const std::vector<Rational>& row)
{
    std::string s = "(";
    for (std::size_t j = 0; j < row.size(); ++j) s += (j ? " " : "") + to_fraction_string(row[j]);
    return s + ")";
}

inline std::vector<std::vector<std::string>> fit_rows(const std::vector<FitReport>& fits)
{
    std::vector<std::vector<std::string>> body;
    for (const auto& f : fits) {
        std::string classes;
        if (f.qp)
            for (const auto& row : f.qp->classes()) classes += (classes.empty() ? "" : " ") + class_string(row);
        body.push_back({f.invariant, to_string(f.status), f.qp ? std::to_string(f.qp->period()) : "",
                        f.qp ? std::to_string(f.qp->onset()) : "", f.qp ? std::to_string(degree_of(*f.qp)) : "",
                        f.qp ? (f.exact_match ? "true" : "false") : "", classes});
    }
    return body;
}

inline const std::vector<std::string>& fit_header()
{
    static const std::vector<std::string> h{"invariant", "status", "period", "onset", "degree", "holdout_exact", "classes"};
    return h;
}

inline std::string fits_csv(const std::vector<FitReport>& fits)
{
    std::ostringstream os;
    const auto& h = fit_header();
    for (std::size_t i = 0; i < h.size(); ++i) os << (i ? "," : "") << h[i];
    os << '\n';
    for (const auto& row : fit_rows(fits)) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(row[i]);
        os << '\n';
    }
    return os.str();
}

inline std::string fits_table(const std::vector<FitReport>& fits) { return render_table(fit_header(), fit_rows(fits)); }

inline Json bresinsky_json(const BresinskyReport& r)
{
    Json degrees = Json::array();
    for (const auto& d : r.degrees) degrees.push_back(Json{{"mu", d.mu}, {"degree", d.degree}, {"components", d.components}});
    Json j{{"d", r.d},
           {"n", r.n},
           {"generators", r.gens.a},
           {"modulus", r.gens.modulus},
           {"lower_bound", r.lower_bound},
           {"verified", true},
           {"degrees", std::move(degrees)}};
    j["beta_1"] = r.beta1 ? Json(*r.beta1) : Json(nullptr);
    return j;
}

} // namespace eqpsg

#endif // EQPSG_REPORT_HPP
