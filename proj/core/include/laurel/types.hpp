#pragma once

#include <cstdint>
#include <limits>

namespace laurel {

/// External paper identifier after interning.
using PaperId = std::uint64_t;

/// Dense node index inside a CitationGraph.
using NodeIndex = std::uint32_t;

inline constexpr NodeIndex kNoNode = std::numeric_limits<NodeIndex>::max();

} // namespace laurel
