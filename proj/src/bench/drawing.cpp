#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "gapcm/drawing.hpp"

namespace gapcm {

namespace {

constexpr int kSpacing = 40;
constexpr int kMargin = 30;
constexpr int kTopY = 40;
constexpr int kBottomY = 160;
constexpr int kRadius = 8;
constexpr const char* kDummyColor = "#8a2be2";

int column_x(std::size_t column) { return kMargin + static_cast<int>(column) * kSpacing; }

}  // namespace

std::string render_drawing(const BipartiteInstance& inst, const Permutation& pi2) {
    const InstanceView view(inst);
    if (pi2.size() != view.top_count()) {
        throw InputError("permutation has " + std::to_string(pi2.size()) + " nodes, top layer has " +
                         std::to_string(view.top_count()));
    }
    for (NodeId id : pi2) {
        if (!view.has_top(id)) throw InputError("permutation node " + std::to_string(id) + " is not on the top layer");
    }

    std::unordered_map<NodeId, bool> dummy;
    for (const auto& v : inst.bottom) dummy[v.id] = v.is_dummy();
    for (const auto& v : inst.top) dummy[v.id] = v.is_dummy();

    const std::size_t columns = std::max<std::size_t>({inst.pi1.size(), pi2.size(), 1});
    const int width = 2 * kMargin + static_cast<int>(columns - 1) * kSpacing;
    const int height = kBottomY + kMargin;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (const auto& e : inst.edges) {
        svg << "<line x1=\"" << column_x(inst.pi1.position(e.bottom)) << "\" y1=\"" << kBottomY << "\" x2=\""
            << column_x(pi2.position(e.top)) << "\" y2=\"" << kTopY << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    }

    for (const auto& run : count_gaps(inst, pi2).runs) {
        const int x = column_x(run.start) - kRadius - 5;
        const int w = column_x(run.end) - column_x(run.start) + 2 * (kRadius + 5);
        svg << "<rect x=\"" << x << "\" y=\"" << kTopY - kRadius - 5 << "\" width=\"" << w << "\" height=\""
            << 2 * (kRadius + 5) << "\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
    }

    auto glyph = [&](NodeId id, int x, int y) {
        if (dummy.at(id)) {
            svg << "<rect x=\"" << x - kRadius << "\" y=\"" << y - kRadius << "\" width=\"" << 2 * kRadius
                << "\" height=\"" << 2 * kRadius << "\" fill=\"" << kDummyColor << "\"><title>" << id
                << "</title></rect>\n";
        } else {
            svg << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << kRadius
                << "\" fill=\"white\" stroke=\"black\"><title>" << id << "</title></circle>\n";
        }
    };
    for (std::size_t i = 0; i < inst.pi1.size(); ++i) glyph(inst.pi1[i], column_x(i), kBottomY);
    for (std::size_t i = 0; i < pi2.size(); ++i) glyph(pi2[i], column_x(i), kTopY);

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace gapcm
