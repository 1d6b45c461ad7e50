#pragma once

#include <optional>
#include <string>
#include <vector>

namespace graphwave {

// Bundled graph descriptions, byte-identical to the files shipped under
// share/graphwave/specs.
std::optional<std::string> builtin_spec_text(const std::string& name);

std::vector<std::string> builtin_spec_names();

}  // namespace graphwave
