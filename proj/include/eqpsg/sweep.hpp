#ifndef EQPSG_SWEEP_HPP
#define EQPSG_SWEEP_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "betti.hpp"
#include "errors.hpp"
#include "factorization.hpp"
#include "family.hpp"
#include "numerical_semigroup.hpp"
#include "polynomial.hpp"
#include "quasi_polynomial.hpp"
#include "simplicial.hpp"

namespace eqpsg {

enum class InvariantKind {
    frobenius,
    genus,
    type,
    fg_count,
    delta_count,
    apery_i,
    symmetric,
    irreducible,
    numerical,
    betti_i,
    length_count,
    delta_elem_count,
};

/// A requested invariant: a registered name plus its index (apery_3,
/// betti_2) or element polynomial (length_count[2n+60]).
struct InvariantSpec {
    InvariantKind kind = InvariantKind::frobenius;
    std::string key;
    int index = 0;
    PolynomialZ element;
};

inline const std::vector<std::string>& registered_invariants()
{
    static const std::vector<std::string> names{"frobenius",   "genus",       "type",      "fg_count",
                                                "delta_count", "apery_<i>",   "symmetric", "irreducible",
                                                "numerical",   "betti_<i>",   "length_count[<a(n)>]",
                                                "delta_elem_count[<a(n)>]"};
    return names;
}

inline InvariantSpec parse_invariant(const std::string& text)
{
    static const std::map<std::string, InvariantKind> plain{
        {"frobenius", InvariantKind::frobenius},     {"genus", InvariantKind::genus},
        {"type", InvariantKind::type},               {"fg_count", InvariantKind::fg_count},
        {"delta_count", InvariantKind::delta_count}, {"symmetric", InvariantKind::symmetric},
        {"irreducible", InvariantKind::irreducible}, {"numerical", InvariantKind::numerical}};
    InvariantSpec spec;
    spec.key = text;
    if (auto it = plain.find(text); it != plain.end()) {
        spec.kind = it->second;
        return spec;
    }
    for (auto [prefix, kind] : {std::pair{"apery_", InvariantKind::apery_i}, std::pair{"betti_", InvariantKind::betti_i}}) {
        const std::string p = prefix;
        if (text.rfind(p, 0) == 0 && text.size() > p.size()) {
            const std::string digits = text.substr(p.size());
            if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() < 6) {
                spec.kind = kind;
                spec.index = std::stoi(digits);
                if (spec.index < 1) break;
                return spec;
            }
        }
    }
    for (auto [prefix, kind] : {std::pair{"length_count[", InvariantKind::length_count},
                                std::pair{"delta_elem_count[", InvariantKind::delta_elem_count}}) {
        const std::string p = prefix;
        if (text.rfind(p, 0) == 0 && text.back() == ']') {
            spec.kind = kind;
            try {
                spec.element = parse_poly(text.substr(p.size(), text.size() - p.size() - 1));
            } catch (const parse_error& e) {
                throw usage_error("bad element polynomial in '" + text + "': " + e.what());
            }
            return spec;
        }
    }
    throw usage_error("unknown invariant '" + text + "'");
}

/// Comma-separated invariant list; brackets may not contain commas.
inline std::vector<InvariantSpec> parse_invariant_list(const std::string& text)
{
    std::vector<InvariantSpec> out;
    for (auto part : detail::split(text, ',')) {
        auto name = std::string(detail::trim(part));
        if (name.empty()) throw usage_error("empty invariant name");
        out.push_back(parse_invariant(name));
    }
    return out;
}

struct SweepOptions {
    FieldSpec field = FieldSpec::rationals();
    /// Scan bound for delta_count; the certified computation when unset.
    std::optional<std::int64_t> delta_bound;
    /// Box cap for Betti numbers of families with m > 1.
    std::optional<std::int64_t> degree_cap;
    /// Evaluate numerical invariants on S_n / gcd when the gcd exceeds 1.
    bool normalize = false;
    unsigned threads = 1;
};

/// One value; undefined entries carry the reason in `note`.
struct Cell {
    std::optional<BigInt> value;
    std::string note;
};

struct SweepRow {
    std::int64_t n = 0;
    std::vector<GeneratorVector> generators;
    std::vector<Cell> cells;
};

struct SweepResult {
    std::string family;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::vector<InvariantSpec> invariants;
    std::vector<SweepRow> rows;

    std::size_t column(const std::string& key) const
    {
        for (std::size_t i = 0; i < invariants.size(); ++i)
            if (invariants[i].key == key) return i;
        throw usage_error("invariant '" + key + "' was not computed");
    }

    SampleSeries series(std::size_t column) const
    {
        std::vector<std::optional<BigInt>> values;
        for (const auto& row : rows) values.push_back(row.cells[column].value);
        return SampleSeries(lo, std::move(values));
    }
};

/// Thread count from EQPSG_THREADS, else 1.
inline unsigned default_thread_count()
{
    if (const char* env = std::getenv("EQPSG_THREADS")) {
        try {
            int t = std::stoi(env);
            if (t >= 1) return static_cast<unsigned>(t);
        } catch (const std::logic_error&) {
        }
    }
    return 1;
}

namespace detail {

inline BigInt flag(bool b) { return BigInt(b ? 1 : 0); }

inline Cell numeric_cell(const SemigroupView& view, const InvariantSpec& spec, const SweepOptions& options)
{
    switch (spec.kind) {
    case InvariantKind::frobenius: return {BigInt(view.frobenius()), {}};
    case InvariantKind::genus: return {BigInt(view.genus()), {}};
    case InvariantKind::type: return {BigInt(view.type()), {}};
    case InvariantKind::fg_count: return {BigInt(view.fundamental_gaps().size()), {}};
    case InvariantKind::apery_i: return {BigInt(view.ith_apery_element(spec.index)), {}};
    case InvariantKind::symmetric: return {flag(view.is_symmetric()), {}};
    case InvariantKind::irreducible: return {flag(view.is_irreducible()), {}};
    case InvariantKind::delta_count: {
        auto r = options.delta_bound ? delta_of_semigroup(view, *options.delta_bound) : delta_set(view);
        return {BigInt(r.values.size()), r.complete ? std::string{} : "scan below the default bound"};
    }
    default: break;
    }
    throw error("not a numerical invariant");
}

inline Cell compute_cell(const std::vector<GeneratorVector>& gens, std::int64_t n, const InvariantSpec& spec,
                         const SweepOptions& options, const std::optional<SemigroupView>& view)
{
    if (spec.kind == InvariantKind::betti_i) {
        if (view) {
            auto r = coarse_betti(*view, spec.index, options.field);
            return {BigInt(r.value), {}};
        }
        if (!options.degree_cap) throw missing_cap();
        auto r = coarse_betti(gens, spec.index, options.field, options.degree_cap);
        return {BigInt(r.value), "lower bound over the box [0, " + std::to_string(r.degree_bound) + "]^m"};
    }
    if (!view) return {std::nullopt, "needs m = 1"};
    switch (spec.kind) {
    case InvariantKind::numerical: return {flag(view->is_numerical()), {}};
    case InvariantKind::length_count:
    case InvariantKind::delta_elem_count: {
        BigInt a = eval_poly(spec.element, n);
        if (!fits_int64(a)) throw generator_overflow("element exceeds 64 bits");
        auto lengths = length_set(*view, static_cast<std::int64_t>(a));
        auto count = spec.kind == InvariantKind::length_count ? lengths.size() : successive_differences(lengths).size();
        return {BigInt(count), {}};
    }
    default: break;
    }
    if (!view->is_numerical()) {
        if (!options.normalize) return {std::nullopt, "not numerical (gcd " + std::to_string(view->gcd()) + ")"};
        return numeric_cell(SemigroupView::build(view->reduced_generators()), spec, options);
    }
    return numeric_cell(*view, spec, options);
}

inline SweepRow compute_row(const ParametricFamily& fam, std::int64_t n, const std::vector<InvariantSpec>& invariants,
                            const SweepOptions& options)
{
    SweepRow row{n, {}, {}};
    try {
        row.generators = instantiate(fam, n);
    } catch (const non_positive_generator& e) {
        row.cells.assign(invariants.size(), Cell{std::nullopt, e.what()});
        return row;
    }
    std::optional<SemigroupView> view;
    if (fam.dim() == 1) {
        std::vector<std::int64_t> scalar;
        for (const auto& g : row.generators) scalar.push_back(g[0]);
        view = SemigroupView::build(std::move(scalar));
    }
    for (const auto& spec : invariants) {
        try {
            row.cells.push_back(compute_cell(row.generators, n, spec, options, view));
        } catch (const index_out_of_range& e) {
            row.cells.push_back({std::nullopt, e.what()});
        }
    }
    return row;
}

} // namespace detail

/// Computes every invariant at every n in [lo, hi]. Rows are computed by a
/// pool of workers and returned in order of n.
inline SweepResult run_sweep(const ParametricFamily& fam, std::int64_t lo, std::int64_t hi,
                             const std::vector<InvariantSpec>& invariants, const SweepOptions& options = {})
{
    if (lo > hi) throw usage_error("empty n range");
    if (lo < 0) throw usage_error("n must be >= 0");
    SweepResult result{fam.label().empty() ? fam.str() : fam.label(), lo, hi, invariants, {}};
    const auto count = static_cast<std::size_t>(hi - lo + 1);
    result.rows.resize(count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&]() {
        while (!failed) {
            std::size_t i = next++;
            if (i >= count) return;
            try {
                result.rows[i] = detail::compute_row(fam, lo + static_cast<std::int64_t>(i), invariants, options);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(count)));
    if (threads == 1) work();
    else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return result;
}

enum class FitStatus { fit, no_fit, insufficient_data, undefined };

inline const char* to_string(FitStatus s)
{
    switch (s) {
    case FitStatus::fit: return "fit";
    case FitStatus::no_fit: return "no-fit";
    case FitStatus::insufficient_data: return "insufficient-data";
    case FitStatus::undefined: return "undefined";
    }
    return "?";
}

struct FitReport {
    std::string invariant;
    FitStatus status = FitStatus::no_fit;
    std::optional<QuasiPolynomial> qp;
    /// Where the invariant is defined, as an eventually periodic set.
    std::optional<PeriodicSet> defined;
    std::size_t defined_points = 0;
    std::vector<std::int64_t> holdout;
    bool exact_match = false;
    std::string message;
};

/// Fits every swept invariant. Undefined points are left out of the value
/// fit and described separately by an eventually periodic set.
inline std::vector<FitReport> fit_sweep(const SweepResult& sweep, const FitOptions& options)
{
    std::vector<FitReport> out;
    for (std::size_t c = 0; c < sweep.invariants.size(); ++c) {
        FitReport report;
        report.invariant = sweep.invariants[c].key;
        auto series = sweep.series(c);
        std::map<std::int64_t, bool> flags;
        for (std::int64_t n = sweep.lo; n <= sweep.hi; ++n) flags[n] = series.at(n).has_value();
        try {
            report.defined = eventually_periodic_set(flags, options.p_max, options.holdout);
        } catch (const insufficient_data&) {
        }
        auto points = series.defined();
        report.defined_points = points.size();
        if (points.empty()) {
            report.status = FitStatus::undefined;
            const bool never_numerical = std::all_of(sweep.rows.begin(), sweep.rows.end(), [&](const SweepRow& r) {
                return r.cells[c].note.rfind("not numerical", 0) == 0;
            });
            report.message = never_numerical ? "never numerical in the window" : "undefined at every n in the window";
            out.push_back(std::move(report));
            continue;
        }
        try {
            report.qp = fit(series, options);
        } catch (const insufficient_data& e) {
            report.status = FitStatus::insufficient_data;
            report.message = e.what();
            out.push_back(std::move(report));
            continue;
        }
        if (!report.qp) {
            report.status = FitStatus::no_fit;
            report.message = "no quasi-polynomial with period <= " + std::to_string(options.p_max) + " and degree <= "
                             + std::to_string(options.d_max) + " matches the window";
            out.push_back(std::move(report));
            continue;
        }
        report.status = FitStatus::fit;
        const std::size_t held = detail::holdout_count(points.size(), options.holdout);
        report.exact_match = true;
        for (std::size_t i = points.size() - held; i < points.size(); ++i) {
            report.holdout.push_back(points[i].first);
            report.exact_match = report.exact_match && report.qp->eval(points[i].first) == Rational(points[i].second);
        }
        report.message = "consistent with the window [" + std::to_string(sweep.lo) + ", " + std::to_string(sweep.hi) + "]";
        out.push_back(std::move(report));
    }
    return out;
}

} // namespace eqpsg

#endif // EQPSG_SWEEP_HPP
