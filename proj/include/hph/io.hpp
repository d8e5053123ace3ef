// Filtration files, barcode JSON/SVG and CSV tables.
//
// File grammar, one record per line:
//     <value> <v0> <v1> ... <vk>
// '#' starts a comment, blank lines are skipped. If every value is an integer literal
// the file is read in index mode (values are filtration indices); otherwise values are
// reals in [0,1] forming an admissible function.
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "essential.hpp"
#include "persistence.hpp"
#include "stability.hpp"

namespace hph {

struct ParsedFiltration {
    std::shared_ptr<const SimplicialComplex> complex;
    Filtration filtration;
    std::optional<AdmissibleFunction> function;  // value mode only
    bool index_mode = true;
    std::vector<std::vector<double>> values;     // per simplex, indices or reals
    std::vector<std::string> warnings;           // closure repairs
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
            ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t')
            ++j;
        if (j > i)
            out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline bool is_integer_literal(std::string_view tok)
{
    if (tok.empty())
        return false;
    std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (i == tok.size())
        return false;
    for (; i < tok.size(); ++i)
        if (tok[i] < '0' || tok[i] > '9')
            return false;
    return true;
}

inline std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Record {
    int line;
    double value;
    Simplex simplex;
};

} // namespace detail

inline ParsedFiltration parse_filtration(std::string_view text)
{
    std::vector<detail::Record> records;
    bool all_integers = true;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) {
            if (end == text.size())
                break;
            continue;
        }
        const auto tokens = detail::split_ws(line);
        if (tokens.size() < 2)
            throw ParseError(ErrorKind::ParseError, line_no, "expected a value followed by at least one vertex");
        double value = 0;
        {
            std::string tok(tokens[0]);
            std::size_t used = 0;
            try {
                value = std::stod(tok, &used);
            } catch (...) {
                used = 0;
            }
            if (used != tok.size() || !std::isfinite(value))
                throw ParseError(ErrorKind::ParseError, line_no, "invalid value '" + tok + "'");
            if (!detail::is_integer_literal(tokens[0]))
                all_integers = false;
        }
        std::vector<int> vertices;
        for (std::size_t k = 1; k < tokens.size(); ++k) {
            int v = 0;
            auto [ptr, ec] = std::from_chars(tokens[k].data(), tokens[k].data() + tokens[k].size(), v);
            if (ec != std::errc() || ptr != tokens[k].data() + tokens[k].size())
                throw ParseError(ErrorKind::ParseError, line_no, "invalid vertex '" + std::string(tokens[k]) + "'");
            vertices.push_back(v);
        }
        try {
            records.push_back({line_no, value, Simplex(std::move(vertices))});
        } catch (const Error& e) {
            throw ParseError(ErrorKind::ParseError, line_no, e.detail());
        }
        if (end == text.size())
            break;
    }

    ParsedFiltration out;
    out.index_mode = all_integers;
    std::map<Simplex, std::pair<double, int>> given;  // value, line
    for (const auto& r : records) {
        if (out.index_mode && r.value < 0)
            throw ParseError(ErrorKind::ParseError, r.line, "negative filtration index");
        if (!out.index_mode && (r.value < 0.0 || r.value > 1.0))
            throw ParseError(ErrorKind::ParseError, r.line, "value outside [0,1]");
        if (!given.emplace(r.simplex, std::make_pair(r.value, r.line)).second)
            throw ParseError(ErrorKind::DuplicateSimplex, r.line, r.simplex.to_string() + " listed twice");
    }

    std::vector<Simplex> all;
    for (const auto& r : records)
        all.push_back(r.simplex);
    auto K = std::make_shared<const SimplicialComplex>(build_complex(all));
    out.complex = K;

    // Closure repair step for value mode: half the smallest gap between distinct values.
    double eps = 1e-6;
    if (!out.index_mode) {
        std::vector<double> vals;
        for (const auto& r : records)
            vals.push_back(r.value);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        double gap = 0;
        for (std::size_t i = 1; i < vals.size(); ++i)
            gap = (i == 1) ? vals[i] - vals[i - 1] : std::min(gap, vals[i] - vals[i - 1]);
        if (vals.size() > 1)
            eps = gap / 2;
    }

    const int top = K->max_dim();
    out.values.assign(static_cast<std::size_t>(top + 1), {});
    std::vector<std::vector<int>> origin(static_cast<std::size_t>(top + 1));  // source line, 0 if inserted
    for (int p = 0; p <= top; ++p) {
        out.values[p].assign(static_cast<std::size_t>(K->size(p)), std::numeric_limits<double>::infinity());
        origin[p].assign(static_cast<std::size_t>(K->size(p)), 0);
        for (int i = 0; i < K->size(p); ++i)
            if (auto it = given.find(K->simplex(p, i)); it != given.end()) {
                out.values[p][i] = it->second.first;
                origin[p][i] = it->second.second;
            }
    }
    // Walk down so that inserted faces see the final values of their cofaces.
    for (int p = top; p >= 1; --p)
        for (int i = 0; i < K->size(p); ++i)
            for (const auto& inc : K->facets(p, i)) {
                const double coface = out.values[p][i];
                if (origin[p - 1][inc.row] != 0) {
                    const double face = out.values[p - 1][inc.row];
                    if (out.index_mode ? face > coface : face >= coface)
                        throw ParseError(ErrorKind::NonMonotone, origin[p - 1][inc.row],
                                         K->simplex(p - 1, inc.row).to_string() + " has value " + detail::format_number(face) +
                                             " but its coface " + K->simplex(p, i).to_string() + " has " + detail::format_number(coface));
                    continue;
                }
                const double candidate = out.index_mode ? coface : coface - eps;
                out.values[p - 1][inc.row] = std::min(out.values[p - 1][inc.row], candidate);
            }
    for (int p = 0; p <= top; ++p)
        for (int i = 0; i < K->size(p); ++i)
            if (origin[p][i] == 0)
                out.warnings.push_back("inserted missing face " + K->simplex(p, i).to_string() + " at " +
                                       detail::format_number(out.values[p][i]));

    if (out.index_mode) {
        std::vector<std::vector<int>> entry(out.values.size());
        for (std::size_t p = 0; p < out.values.size(); ++p)
            for (double v : out.values[p])
                entry[p].push_back(static_cast<int>(v));
        out.filtration = Filtration(K, std::move(entry));
    } else {
        out.function = AdmissibleFunction(K, out.values);
        out.filtration = filtration_from_function(*out.function);
    }
    return out;
}

/// Inverse of parse_filtration: records sorted by value, then dimension, then vertices.
inline std::string write_filtration(const SimplicialComplex& K, const std::vector<std::vector<double>>& values, bool index_mode)
{
    struct Row {
        double value;
        int p;
        int i;
    };
    std::vector<Row> rows;
    for (int p = 0; p <= K.max_dim(); ++p)
        for (int i = 0; i < K.size(p); ++i)
            rows.push_back({values[p][i], p, i});
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.value != b.value)
            return a.value < b.value;
        return a.p < b.p;
    });
    std::string out;
    for (const auto& r : rows) {
        if (index_mode)
            out += std::to_string(static_cast<long long>(r.value));
        else {
            std::string v = detail::format_number(r.value);
            // Keep value mode recognizable on re-read.
            if (detail::is_integer_literal(v))
                v += ".0";
            out += v;
        }
        for (int v : K.simplex(r.p, r.i).vertices())
            out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

inline std::string write_filtration(const ParsedFiltration& parsed)
{
    return write_filtration(*parsed.complex, parsed.values, parsed.index_mode);
}

/// Rounds to 12 significant digits, mapping -0 to 0.
inline double round12(double v)
{
    if (!std::isfinite(v))
        return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

using ordered_json = nlohmann::ordered_json;

inline ordered_json simplex_json(const Simplex& s) { return ordered_json(s.vertices()); }

inline ordered_json vector_json(const Eigen::VectorXd& v)
{
    ordered_json arr = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        arr.push_back(round12(v(i)));
    return arr;
}

inline ordered_json basis_json(const Subspace& S)
{
    ordered_json arr = ordered_json::array();
    const Eigen::MatrixXd B = canonical_basis(S);
    for (Eigen::Index j = 0; j < B.cols(); ++j)
        arr.push_back(vector_json(B.col(j)));
    return arr;
}

inline ordered_json labels_json(const SimplicialComplex& K, int p)
{
    ordered_json arr = ordered_json::array();
    for (const auto& s : K.simplices(p))
        arr.push_back(simplex_json(s));
    return arr;
}

/// A bar together with its essential-simplex report when it is simple.
struct BarRecord {
    HarmonicBar bar;
    std::optional<EssentialReport> essential;
};

inline std::vector<BarRecord> describe_bars(const HarmonicPersistence& hp)
{
    std::vector<BarRecord> out;
    for (auto& hb : hp.bars()) {
        BarRecord rec{hb, std::nullopt};
        if (hb.bar.simple())
            rec.essential = essential_report(hp, hb.bar);
        out.push_back(std::move(rec));
    }
    return out;
}

inline ordered_json bar_json(const SimplicialComplex& K, const BarRecord& rec)
{
    const auto& hb = rec.bar;
    ordered_json o;
    o["p"] = hb.p;
    o["s"] = hb.bar.s;
    if (hb.bar.t)
        o["t"] = *hb.bar.t;
    else
        o["t"] = "inf";
    o["multiplicity"] = hb.bar.multiplicity;
    o["simplices"] = labels_json(K, hb.p);
    o["initial_basis"] = basis_json(hb.initial);
    if (hb.terminal)
        o["terminal_basis"] = basis_json(*hb.terminal);
    if (rec.essential) {
        ordered_json ess = ordered_json::array();
        for (const auto& s : rec.essential->essential)
            ess.push_back(simplex_json(s));
        o["essential"] = ess;
        o["content"] = round12(rec.essential->content);
    } else {
        o["essential"] = nullptr;
        o["content"] = nullptr;
    }
    return o;
}

inline std::string emit_barcode_json(const SimplicialComplex& K, const std::vector<BarRecord>& bars)
{
    ordered_json arr = ordered_json::array();
    for (const auto& rec : bars)
        arr.push_back(bar_json(K, rec));
    return arr.dump(2) + "\n";
}

inline ordered_json essential_report_json(const SimplicialComplex& K, const EssentialReport& r)
{
    ordered_json o;
    o["p"] = r.p;
    o["s"] = r.bar.s;
    if (r.bar.t)
        o["t"] = *r.bar.t;
    else
        o["t"] = "inf";
    o["simplices"] = labels_json(K, r.p);
    o["harmonic_rep"] = vector_json(r.harmonic_rep.coeffs);
    ordered_json ess = ordered_json::array();
    for (const auto& s : r.essential)
        ess.push_back(simplex_json(s));
    o["essential"] = ess;
    o["content"] = round12(r.content);
    return o;
}

inline ordered_json report_json(const StabilityReport& r)
{
    ordered_json o;
    o["theorem"] = r.theorem;
    o["lhs"] = round12(r.lhs);
    o["rhs"] = round12(r.rhs);
    o["slack"] = round12(r.slack);
    if (r.intermediate)
        o["intermediate"] = round12(*r.intermediate);
    else
        o["intermediate"] = nullptr;
    o["holds"] = r.slack >= -1e-8;
    o["terms"] = r.detail.size();
    return o;
}

inline std::string emit_terms_csv(const std::vector<StabilityTerm>& terms)
{
    std::string out = "s0,s1,t0,t1,weight,distance\n";
    char buf[256];
    for (const auto& t : terms) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", t.s0, t.s1, t.t0, t.t1, t.weight, t.distance);
        out += buf;
    }
    return out;
}

struct SvgOptions {
    int width = 640;
    int row_height = 18;
    int margin = 40;
    std::optional<int> horizon;  // right end of the axis in filtration indices; default N+1
};

/// Horizontal barcode plot, one row per bar, ∞ bars end in an arrowhead at the right margin.
inline std::string emit_barcode_svg(const std::vector<HarmonicBar>& bars, int N, const SvgOptions& opt = {})
{
    const int rows = static_cast<int>(bars.size());
    const int horizon = opt.horizon.value_or(N + 1);
    const int height = 2 * opt.margin + std::max(rows, 1) * opt.row_height;
    const double plot = opt.width - 2.0 * opt.margin;
    auto x = [&](double t) { return opt.margin + plot * t / std::max(horizon, 1); };
    std::string out;
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n",
                  opt.width, height, opt.width, height);
    out += buf;
    out += "<defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"4\" orient=\"auto\">"
           "<path d=\"M0,0 L8,4 L0,8 z\" fill=\"black\"/></marker></defs>\n";
    const int axis_y = height - opt.margin + opt.row_height / 2;
    std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%d\" x2=\"%.2f\" y2=\"%d\" stroke=\"black\"/>\n", x(0), axis_y,
                  x(horizon), axis_y);
    out += buf;
    for (int k = 0; k <= horizon; ++k) {
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.2f\" y=\"%d\" font-size=\"10\" text-anchor=\"middle\">%d</text>\n", x(k), axis_y + 14, k);
        out += buf;
    }
    for (int r = 0; r < rows; ++r) {
        const auto& b = bars[static_cast<std::size_t>(r)].bar;
        const int y = opt.margin + r * opt.row_height + opt.row_height / 2;
        const double x0 = x(b.s);
        const double x1 = b.t ? x(*b.t) : opt.width - opt.margin / 2.0;
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.2f\" y1=\"%d\" x2=\"%.2f\" y2=\"%d\" stroke=\"%s\" stroke-width=\"3\"%s/>\n", x0, y, x1, y,
                      bars[static_cast<std::size_t>(r)].p == 0 ? "steelblue" : "firebrick",
                      b.t ? "" : " marker-end=\"url(#arrow)\"");
        out += buf;
        std::snprintf(buf, sizeof buf, "<text x=\"%d\" y=\"%d\" font-size=\"10\">H%d</text>\n", 4, y + 4,
                      bars[static_cast<std::size_t>(r)].p);
        out += buf;
    }
    out += "</svg>\n";
    return out;
}

} // namespace hph
