// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "support/fixtures.hpp"
#include "support/lemmas.hpp"

using namespace hph;
using namespace fixtures;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body)
{
    Outcome o{false, ""};
    const auto t0 = Clock::now();
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass)
        ++failures;
    std::printf("%s %d %s (%.2fs) %s\n", o.pass ? "PASS" : "FAIL", id, name, seconds_since(t0), o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double x)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::vector<Simplex> sorted(std::vector<Simplex> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

Outcome introductory_bars()
{
    const auto t0 = Clock::now();
    const auto F = example12();
    const auto& K = F.complex();
    const auto b0 = barcode(F, 0), b1 = barcode(F, 1);
    const double elapsed = seconds_since(t0);
    using B = std::pair<int, std::optional<int>>;
    auto list = [](const std::vector<HarmonicBar>& bars) {
        std::vector<B> out;
        for (const auto& hb : bars)
            out.emplace_back(hb.bar.s, hb.bar.t);
        return out;
    };
    bool ok = list(b0) == std::vector<B>{{0, std::nullopt}, {1, 3}, {2, 3}, {4, 6}};
    ok = ok && list(b1) == std::vector<B>{{3, 5}, {6, std::nullopt}};
    double worst = 0;
    if (ok) {
        worst = std::max(worst, grassmann_distance(b1[0].initial, span_of(chain(K, {{a, 1}, {b, 1}, {c, -1}}))));
        worst = std::max(worst, grassmann_distance(b1[1].initial, span_of(chain(K, {{a, 1}, {b, 1}, {c, 2}, {d, -3}, {e, 3}}))));
    }
    ok = ok && worst <= 1e-8 && elapsed < 1.0;
    return {ok, "max span distance " + fmt("%.2e", worst) + ", compute " + fmt("%.3fs", elapsed)};
}

Outcome introductory_essential()
{
    const HarmonicPersistence hp(example12(), 1);
    const auto finite = sorted(essential_simplices(hp, Bar{3, 5, 1}));
    const auto infinite = sorted(essential_simplices(hp, Bar{6, std::nullopt, 1}));
    const bool ok = finite == sorted({a, b, c}) && infinite == sorted({d, e});
    return {ok, "sizes " + std::to_string(finite.size()) + " and " + std::to_string(infinite.size())};
}

Outcome introductory_content()
{
    const auto F = example12();
    const HarmonicPersistence hp(F, 1);
    const double inf = essential_report(hp, Bar{6, std::nullopt, 1}).content;
    const double fin = essential_report(hp, Bar{3, 5, 1}).content;
    const double other = content(F.complex(), Chain{1, chain(F.complex(), {{c, 1}, {d, 1}, {e, -1}})}, {d, e});
    const double e1 = std::abs(inf - std::sqrt(0.75)), e2 = std::abs(other - std::sqrt(2.0 / 3.0)), e3 = std::abs(fin - 1.0);
    return {e1 <= 1e-9 && e2 <= 1e-9 && e3 <= 1e-12,
            "errors " + fmt("%.1e", e1) + " " + fmt("%.1e", e2) + " " + fmt("%.1e", e3)};
}

Outcome ladder()
{
    bool ok = true;
    std::string detail;
    for (double alpha : {0.1, 0.25, 0.4}) {
        const auto t0 = Clock::now();
        const auto r = ladder_angle(1000, static_cast<int>(std::lround(alpha * 1000)));
        const double dt = seconds_since(t0);
        const double diff = std::abs(r.cos_measured - r.cos_closed_form.value());
        const double limit = std::abs(ladder_closed_form(1e6, alpha) - std::sqrt(alpha / (1 - alpha)));
        ok = ok && diff <= 1e-6 && limit <= 1e-3 && dt < 10.0;
        detail += fmt("a=%.2f", alpha) + fmt(" diff=%.1e", diff) + fmt(" limit=%.1e", limit) + fmt(" %.1fs; ", dt);
    }
    return {ok, detail};
}

Outcome essential_sweep()
{
    std::mt19937_64 rng(505);
    int bars = 0, samples = 0;
    double worst = -1.0;
    for (int k = 0; k < 50; ++k) {
        const auto K = random_complex(rng, 60, 12);
        const Filtration F = random_simplexwise(K, rng);
        for (int p = 0; p <= K->max_dim(); ++p) {
            const HarmonicPersistence hp(F, p);
            for (const auto& hb : hp.bars()) {
                if (!hb.bar.simple())
                    return {false, "non-simple bar in a simplex-wise filtration"};
                const auto rep = essential_report(hp, hb.bar);
                ++bars;
                for (const auto& z : sample_representatives(hp, hb.bar, 20, rng())) {
                    worst = std::max(worst, content(*K, z, rep.essential) - rep.content);
                    ++samples;
                }
            }
        }
    }
    return {worst <= 1e-9, std::to_string(bars) + " bars, " + std::to_string(samples) + " samples, worst excess " + fmt("%.2e", worst)};
}

/// Simplex-wise filtration close to F: a few swaps of neighbours that keep faces first.
Filtration nearby(const Filtration& F, std::mt19937_64& rng)
{
    const auto& K = F.complex();
    auto entry = F.entries();
    std::vector<std::pair<int, int>> at(static_cast<std::size_t>(F.N() + 1));
    for (int p = 0; p <= K.max_dim(); ++p)
        for (int i = 0; i < K.size(p); ++i)
            at[entry[p][i]] = {p, i};
    std::uniform_int_distribution<int> pos(0, F.N() - 1);
    const int swaps = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int done = 0, tries = 0; done < swaps && tries < 200; ++tries) {
        const int j = pos(rng);
        const auto [p1, i1] = at[j];
        const auto [p2, i2] = at[j + 1];
        if (K.simplex(p1, i1).is_face_of(K.simplex(p2, i2)))
            continue;
        std::swap(entry[p1][i1], entry[p2][i2]);
        std::swap(at[j], at[j + 1]);
        ++done;
    }
    return Filtration(F.complex_ptr(), entry, F.N());
}

Outcome stability_sweep()
{
    std::mt19937_64 rng(606);
    const auto t0 = Clock::now();
    double worst[3] = {1e300, 1e300, 1e300};
    int filtered = 0;
    for (int k = 0; k < 100; ++k) {
        const auto K = random_complex(rng, 80, 12);
        const int p = std::uniform_int_distribution<int>(0, std::min(1, K->max_dim()))(rng);
        const auto f = random_admissible(K, rng);
        const auto g = (k % 2) ? random_admissible(K, rng) : perturb(f, rng, 0.05);
        worst[0] = std::min(worst[0], check_theorem_stable(f, g, p).slack);
        worst[1] = std::min(worst[1], check_theorem_stable_persistent(f, g, p).slack);
        const Filtration F = random_simplexwise(K, rng);
        const Filtration G = (k % 2) ? random_simplexwise(K, rng) : nearby(F, rng);
        try {
            worst[2] = std::min(worst[2], check_theorem_barcode(F, G, p).slack);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::HypothesisViolated)
                throw;
            ++filtered;
        }
    }
    const double dt = seconds_since(t0);
    const bool ok = worst[0] >= -1e-8 && worst[1] >= -1e-8 && worst[2] >= -1e-8 && dt < 120.0;
    return {ok, "min slack " + fmt("%.3e", worst[0]) + " / " + fmt("%.3e", worst[1]) + " / " + fmt("%.3e", worst[2]) +
                    ", filtered " + std::to_string(filtered) + ", " + fmt("%.1fs", dt)};
}

Outcome oracle_equivalence()
{
    std::mt19937_64 rng(707);
    int checks = 0, mismatches = 0, largest = 0;
    for (int k = 0; k < 100; ++k) {
        const auto K = random_complex(rng, 200, 40);
        largest = std::max(largest, K->total_size());
        const Filtration F = random_coarse(K, rng, 6);
        for (int p = 0; p <= std::min(1, K->max_dim()); ++p) {
            const HarmonicPersistence hp(F, p, 1e-9);
            const auto b = oracle::persistent_betti_table(F, p);
            const auto mu = oracle::multiplicity_table(F, p);
            const auto fmu = hp.multiplicities();
            for (int s = 0; s <= F.N(); ++s) {
                ++checks;
                mismatches += hp.H(s).dim() != static_cast<Eigen::Index>(b[s][s]);
                for (int t = s; t <= F.N(); ++t) {
                    ++checks;
                    mismatches += hp.Hst(s, t).dim() != static_cast<Eigen::Index>(b[s][t]);
                }
                for (int t = s + 1; t <= F.N() + 1; ++t) {
                    ++checks;
                    mismatches += fmu[s][t] != mu[s][t];
                }
            }
        }
    }
    return {mismatches == 0, std::to_string(checks) + " dims compared, " + std::to_string(mismatches) +
                                 " mismatches, largest complex " + std::to_string(largest)};
}

Outcome lemma_suite()
{
    std::mt19937_64 rng(808);
    int fails[5] = {0, 0, 0, 0, 0};
    for (int k = 0; k < 1000; ++k) {
        fails[0] += !lemmas::subspace_distance_bound(rng, 1e-8);
        fails[1] += !lemmas::interlacing(rng, 1e-8);
        fails[2] += !lemmas::projection_composition(rng, 1e-8);
        fails[3] += !lemmas::dimension_projection(rng);
        fails[4] += !lemmas::angle_perturbation(rng, 1e-8);
    }
    std::string detail = "failures";
    for (int f : fails)
        detail += " " + std::to_string(f);
    return {std::all_of(std::begin(fails), std::end(fails), [](int f) { return f == 0; }), detail};
}

Outcome laplacian_equivalence()
{
    std::vector<Filtration> cases{example12()};
    const auto ladder = build_complex({Simplex{0, 1}, Simplex{1, 2}, Simplex{2, 3}, Simplex{3, 4}, Simplex{4, 5}, Simplex{5, 6},
                                       Simplex{6, 7}, Simplex{0, 7}, Simplex{1, 7}});
    std::mt19937_64 rng(909);
    cases.push_back(random_simplexwise(std::make_shared<const SimplicialComplex>(ladder), rng));
    cases.push_back(random_coarse(std::make_shared<const SimplicialComplex>(build_complex(
                                      {Simplex{0, 1, 3}, Simplex{1, 2, 4}, Simplex{0, 2, 5}})),
                                  rng, 3));
    for (int k = 0; k < 60; ++k)
        cases.push_back(random_coarse(random_complex(rng, 120, 20), rng, 5));
    double worst = 0;
    int spaces = 0;
    for (const auto& F : cases)
        for (int t = 0; t <= F.N(); ++t) {
            const auto sub = F.subcomplex(t);
            for (int p = 0; p <= F.complex().max_dim(); ++p) {
                worst = std::max(worst, grassmann_distance(harmonic_basis(F.complex(), sub, p).space,
                                                           laplacian_kernel(F.complex(), sub, p)));
                ++spaces;
            }
        }
    return {worst <= 1e-7, std::to_string(spaces) + " subcomplexes, worst distance " + fmt("%.2e", worst)};
}

} // namespace

int main()
{
    report(1, "introductory barcode", introductory_bars);
    report(2, "introductory essential simplices", introductory_essential);
    report(3, "content values", introductory_content);
    report(4, "ladder convergence", ladder);
    report(5, "harmonic representatives maximize content", essential_sweep);
    report(6, "stability sweeps", stability_sweep);
    report(7, "oracle equivalence", oracle_equivalence);
    report(8, "linear-algebra lemmas", lemma_suite);
    report(9, "Laplacian kernel equals harmonic space", laplacian_equivalence);
    return failures == 0 ? 0 : 1;
}
