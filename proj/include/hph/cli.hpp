// Command-line front end. run_cli is separate from main so tests can drive it in-process.
#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "io.hpp"
#include "oracle.hpp"

namespace hph {

namespace detail {

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::IndexOutOfRange, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::IndexOutOfRange, "cannot write " + path);
    out << text;
}

inline std::optional<int> parse_time(const std::string& tok)
{
    if (tok == "inf" || tok == "infinity")
        return std::nullopt;
    return std::stoi(tok);
}

/// Step function of a parsed file: the admissible function in value mode, k/N in index mode.
inline StepSubspaceFunction step_function(const ParsedFiltration& f, int p)
{
    return f.function ? harmonic_filtration_function(*f.function, p) : normalized_step_function(f.filtration, p);
}

/// Admissible function of a parsed file; index-mode files use entry/N.
inline AdmissibleFunction admissible(const ParsedFiltration& f)
{
    if (f.function)
        return *f.function;
    return AdmissibleFunction(f.complex, f.filtration.normalized_entries());
}

inline void require_same_complex(const ParsedFiltration& a, const ParsedFiltration& b)
{
    if (!(*a.complex == *b.complex))
        throw Error(ErrorKind::ComplexMismatch, "the two files describe different complexes");
}

inline int error_exit(std::ostream& err, std::string_view name, const std::string& message, int code)
{
    ordered_json o;
    o["error"] = std::string(name);
    o["message"] = message;
    o["exit_code"] = code;
    err << o.dump() << "\n";
    return code;
}

inline int error_exit(std::ostream& err, ErrorKind kind, const std::string& message, int code)
{
    return error_exit(err, to_string(kind), message, code);
}

} // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Harmonic persistent homology of filtered simplicial complexes"};
    app.require_subcommand(1);
    app.fallthrough();
    double tol = 1e-9;
    std::uint64_t seed = 0;
    bool quiet = false;
    app.add_option("--tol", tol, "relative rank tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "seed for sampled representatives");
    app.add_flag("--quiet", quiet, "suppress warnings");

    std::string file, file_b, json_out, svg_out, csv_out, bar_spec, kind = "step", theorem;
    int p = 0, at = -1, n = 0, m = 0, samples = 0;
    double ell = 2.0;
    std::optional<int> p_opt;

    auto* betti_cmd = app.add_subcommand("betti", "Betti numbers, exact and floating");
    betti_cmd->add_option("file", file)->required();
    betti_cmd->add_option("--p", p_opt);

    auto* harmonic_cmd = app.add_subcommand("harmonic", "harmonic homology basis");
    harmonic_cmd->add_option("file", file)->required();
    harmonic_cmd->add_option("--p", p)->required();
    harmonic_cmd->add_option("--at", at, "filtration index (default: last)");

    auto* barcode_cmd = app.add_subcommand("barcode", "harmonic barcode");
    barcode_cmd->add_option("file", file)->required();
    barcode_cmd->add_option("--p", p)->required();
    barcode_cmd->add_option("--json", json_out);
    barcode_cmd->add_option("--svg", svg_out);

    auto* essential_cmd = app.add_subcommand("essential", "essential simplices and content of a simple bar");
    essential_cmd->add_option("file", file)->required();
    essential_cmd->add_option("--p", p)->required();
    essential_cmd->add_option("--bar", bar_spec, "S,T with T an index or inf")->required();
    essential_cmd->add_option("--samples", samples, "sampled representatives to compare against");

    auto* distance_cmd = app.add_subcommand("distance", "distance between two filtrations");
    distance_cmd->add_option("fileA", file)->required();
    distance_cmd->add_option("fileB", file_b)->required();
    distance_cmd->add_option("--p", p)->required();
    distance_cmd->add_option("--kind", kind)->check(CLI::IsMember({"step", "persistent", "barcode"}));
    distance_cmd->add_option("--ell", ell)->check(CLI::PositiveNumber);
    distance_cmd->add_option("--csv", csv_out, "write the breakdown here instead of stdout");

    auto* stability_cmd = app.add_subcommand("stability", "check a stability inequality");
    stability_cmd->add_option("fileA", file)->required();
    stability_cmd->add_option("fileB", file_b)->required();
    stability_cmd->add_option("--p", p)->required();
    stability_cmd->add_option("--theorem", theorem)->required()->check(CLI::IsMember({"stable", "persistent", "barcode"}));
    stability_cmd->add_option("--csv", csv_out);

    auto* ladder_cmd = app.add_subcommand("ladder", "ladder convergence example");
    ladder_cmd->add_option("--n", n)->required();
    ladder_cmd->add_option("--m", m)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        return detail::error_exit(err, "UsageError", e.what(), 1);
    }

    const double saved_tol = default_tolerance();
    set_default_tolerance(tol);
    struct Restore {
        double v;
        ~Restore() { set_default_tolerance(v); }
    } restore{saved_tol};

    auto load = [&](const std::string& path) {
        ParsedFiltration parsed = parse_filtration(detail::read_file(path));
        if (!quiet)
            for (const auto& w : parsed.warnings)
                err << "warning: " << path << ": " << w << "\n";
        return parsed;
    };

    try {
        if (betti_cmd->parsed()) {
            const auto f = load(file);
            const auto& K = *f.complex;
            ordered_json arr = ordered_json::array();
            const int lo = p_opt.value_or(0), hi = p_opt.value_or(std::max(K.max_dim(), 0));
            for (int q = lo; q <= hi; ++q) {
                const auto exact = oracle::betti(K, q);
                const auto floating = harmonic_basis(K, q, tol).space.dim();
                ordered_json o;
                o["p"] = q;
                o["oracle"] = exact;
                o["floating"] = floating;
                o["agree"] = static_cast<Eigen::Index>(exact) == floating;
                arr.push_back(o);
            }
            out << arr.dump(2) << "\n";
        } else if (harmonic_cmd->parsed()) {
            const auto f = load(file);
            const int t = at < 0 ? f.filtration.N() : at;
            if (t > f.filtration.N())
                throw Error(ErrorKind::IndexOutOfRange, "--at beyond the last filtration index");
            const auto H = harmonic_basis(*f.complex, f.filtration.subcomplex(t), p, tol);
            ordered_json o;
            o["p"] = p;
            o["at"] = t;
            o["dim"] = H.space.dim();
            o["simplices"] = labels_json(*f.complex, p);
            o["basis"] = basis_json(H.space);
            out << o.dump(2) << "\n";
        } else if (barcode_cmd->parsed()) {
            const auto f = load(file);
            const HarmonicPersistence hp(f.filtration, p, tol);
            const auto records = describe_bars(hp);
            const std::string text = emit_barcode_json(*f.complex, records);
            if (json_out.empty())
                out << text;
            else
                detail::write_file(json_out, text);
            if (!svg_out.empty()) {
                std::vector<HarmonicBar> bars;
                for (const auto& r : records)
                    bars.push_back(r.bar);
                detail::write_file(svg_out, emit_barcode_svg(bars, f.filtration.N()));
            }
        } else if (essential_cmd->parsed()) {
            const auto f = load(file);
            const auto comma = bar_spec.find(',');
            if (comma == std::string::npos)
                throw Error(ErrorKind::IndexOutOfRange, "--bar expects S,T");
            Bar bar{std::stoi(bar_spec.substr(0, comma)), detail::parse_time(bar_spec.substr(comma + 1)), 1};
            const HarmonicPersistence hp(f.filtration, p, tol);
            if (bar.s < 0 || bar.s > hp.N() || (bar.t && (*bar.t <= bar.s || *bar.t > hp.N())))
                throw Error(ErrorKind::IndexOutOfRange, "bar outside the filtration");
            const auto dimP = hp.P(bar.s, bar.t).dim();
            if (dimP != 1)
                throw Error(ErrorKind::NotSimple, "(s,t) has multiplicity " + std::to_string(dimP));
            const auto report = essential_report(hp, bar);
            ordered_json o = essential_report_json(*f.complex, report);
            if (samples > 0) {
                double worst = 0.0;
                for (const auto& z : sample_representatives(hp, bar, samples, seed))
                    worst = std::max(worst, content(*f.complex, z, report.essential));
                o["samples"] = samples;
                o["max_sample_content"] = round12(worst);
            }
            out << o.dump(2) << "\n";
        } else if (distance_cmd->parsed()) {
            const auto a = load(file), b = load(file_b);
            detail::require_same_complex(a, b);
            DistanceResult d;
            if (kind == "step")
                d = dist_filtration_functions_detail(detail::step_function(a, p), detail::step_function(b, p), ell);
            else if (kind == "persistent")
                d = dist_persistent_detail(detail::step_function(a, p), detail::step_function(b, p), ell, tol);
            else {
                const auto r = check_theorem_barcode(a.filtration, b.filtration, p, tol);
                d.value = r.lhs;
                d.terms = r.detail;
            }
            char head[128];
            std::snprintf(head, sizeof head, "# kind=%s ell=%.12g value=%.12g\n", kind.c_str(), ell, d.value);
            const std::string csv = emit_terms_csv(d.terms);
            if (csv_out.empty())
                out << head << csv;
            else {
                out << head;
                detail::write_file(csv_out, csv);
            }
        } else if (stability_cmd->parsed()) {
            const auto a = load(file), b = load(file_b);
            detail::require_same_complex(a, b);
            StabilityReport r;
            if (theorem == "stable")
                r = check_theorem_stable(detail::admissible(a), detail::admissible(b), p, tol);
            else if (theorem == "persistent")
                r = check_theorem_stable_persistent(detail::admissible(a), detail::admissible(b), p, tol);
            else
                r = check_theorem_barcode(a.filtration, b.filtration, p, tol);
            out << report_json(r).dump(2) << "\n";
            if (!csv_out.empty())
                detail::write_file(csv_out, emit_terms_csv(r.detail));
        } else if (ladder_cmd->parsed()) {
            const auto r = ladder_angle(n, m, tol);
            ordered_json o;
            o["n"] = r.n;
            o["m"] = r.m;
            o["m_ref"] = r.m_ref;
            o["cos_measured"] = round12(r.cos_measured);
            if (r.cos_closed_form) {
                o["cos_closed_form"] = round12(*r.cos_closed_form);
                o["abs_difference"] = round12(std::abs(r.cos_measured - *r.cos_closed_form));
            } else {
                o["cos_closed_form"] = nullptr;
                o["abs_difference"] = nullptr;
            }
            out << o.dump(2) << "\n";
        }
    } catch (const ParseError& e) {
        return detail::error_exit(err, e.kind(), e.what(), 2);
    } catch (const Error& e) {
        return detail::error_exit(err, e.kind(), e.detail(), e.kind() == ErrorKind::HypothesisViolated ? 3 : 1);
    } catch (const std::exception& e) {
        return detail::error_exit(err, "UsageError", e.what(), 1);
    }
    return 0;
}

} // namespace hph
