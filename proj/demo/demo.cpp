// Walk through the introductory filtration: barcode, essential simplices, content,
// and a stability check against a slightly delayed copy.
#include <cstdio>

#include "hph/hph.hpp"

using namespace hph;

int main()
{
    const std::string text = "0 0\n1 1\n2 2\n3 0 1\n3 1 2\n3 0 2\n4 3\n5 0 1 2\n6 0 3\n6 2 3\n";
    const ParsedFiltration parsed = parse_filtration(text);
    const auto& K = *parsed.complex;

    for (int p = 0; p <= 1; ++p) {
        const HarmonicPersistence hp(parsed.filtration, p);
        std::printf("dimension %d\n", p);
        for (const auto& rec : describe_bars(hp)) {
            const auto& bar = rec.bar.bar;
            std::printf("  bar (%d, %s)", bar.s, bar.t ? std::to_string(*bar.t).c_str() : "inf");
            if (rec.essential) {
                std::printf("  essential {");
                for (std::size_t i = 0; i < rec.essential->essential.size(); ++i)
                    std::printf("%s%s", i ? " " : "", rec.essential->essential[i].to_string().c_str());
                std::printf("}  content %.6f", rec.essential->content);
            }
            std::printf("\n");
        }
    }

    // Delay the triangle by one step and compare.
    auto entry = parsed.filtration.entries();
    entry[2][0] = 6;
    const Filtration later(parsed.complex, entry, parsed.filtration.N());
    const auto r = check_theorem_barcode(parsed.filtration, later, 1);
    std::printf("barcode stability: lhs %.6f <= %.6f <= rhs %.6f\n", r.lhs, *r.intermediate, r.rhs);

    const auto ladder = ladder_angle(200, 50);
    std::printf("ladder n=200 m=50: cos %.9f, closed form %.9f\n", ladder.cos_measured, *ladder.cos_closed_form);
    std::printf("complex has %d simplices\n", K.total_size());
    return 0;
}
