#ifndef FANCROSS_VALIDATE_HPP
#define FANCROSS_VALIDATE_HPP

#include <string>
#include <vector>

#include "fancross/embedding.hpp"

namespace fancross {

struct ValidationReport {
    std::vector<std::string> errors;

    bool ok() const { return errors.empty(); }
    // All messages joined with "; ", or "valid".
    std::string summary() const;
};

// Checks every embedding axiom: canonical edge storage, rotation
// content, crossing simplicity (no self/adjacent/duplicate crossings),
// sign reciprocity, outer reference range, graph connectivity, and the
// Euler face-count of the derived plane map. Collects all violations it
// can name; the face-count check runs only once the structural checks
// pass, since the map is not well defined before that.
ValidationReport validate(const Embedding& e);

// Convenience: throws EmbeddingError with the report summary unless valid.
void require_valid(const Embedding& e, const std::string& context = "");

} // namespace fancross

#endif
