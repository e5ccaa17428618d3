#include "laurel/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace laurel {

std::size_t resolve_jobs(std::optional<std::size_t> requested) {
    if (const char* env = std::getenv("LAUREL_JOBS")) {
        std::string_view text(env);
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc{} && ptr == text.data() + text.size() && value > 0)
            return value;
    }
    if (requested && *requested > 0)
        return *requested;
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

} // namespace laurel
