#pragma once

#include <string_view>

namespace snawb::dsl {

// Text of data/presets.defs, compiled in. Checks against
// survey::catalog::core_questionnaire().
std::string_view preset_library_source();

}  // namespace snawb::dsl
