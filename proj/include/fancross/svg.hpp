#ifndef FANCROSS_SVG_HPP
#define FANCROSS_SVG_HPP

#include <string>

#include "fancross/embedding.hpp"

namespace fancross {

// Straight-line drawing of the planarization: the outer face on a
// convex polygon, the rest placed by barycentric relaxation. Real
// vertices are labeled disks, crossing points small marks. Output is
// deterministic; degenerate layouts retry with seeded jitter and then
// throw EmbeddingError.
std::string render_svg(const Embedding& e);

} // namespace fancross

#endif
