#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace kert {

using WordId = std::uint32_t;

// 0 is the background topic; foreground topics are 1..k.
using TopicId = int;
inline constexpr TopicId kBackgroundTopic = 0;

// An order-free word set, kept sorted ascending and duplicate-free.
using Phrase = std::vector<WordId>;

}  // namespace kert
