#include "kubeharden/core/record.hpp"
#include "kubeharden/core/errors.hpp"

namespace kubeharden {

std::string canonical_scalar(const NestedRecord& scalar) {
    if (scalar.is_string()) return scalar.get<std::string>();
    return scalar.dump();
}

std::string canonical_text(const NestedRecord& record) {
    return record.dump();
}

NestedRecord parse_record(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SyntaxError(std::string("invalid JSON: ") + e.what());
    }
}

std::uint64_t stable_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string stable_hash_hex(const std::string& text) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = stable_hash(text);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

} // namespace kubeharden
