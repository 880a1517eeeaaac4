#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dbcat {

/// A constant of the value universe. Values are totally ordered by kind
/// (integers, then strings, then the two sentinels) and then by literal.
class Value {
public:
    enum class Kind : std::uint8_t { Integer, String, SentinelA, SentinelB };

    Value() = default;

    static Value integer(std::int64_t v) {
        Value out;
        out.number_ = v;
        return out;
    }
    static Value string(std::string s) {
        Value out;
        out.kind_ = Kind::String;
        out.text_ = std::move(s);
        return out;
    }
    /// Reserved constants used by the helper-schema tagging; never user data.
    static Value sentinel_a() {
        Value out;
        out.kind_ = Kind::SentinelA;
        return out;
    }
    static Value sentinel_b() {
        Value out;
        out.kind_ = Kind::SentinelB;
        return out;
    }

    Kind kind() const noexcept { return kind_; }
    bool is_sentinel() const noexcept { return kind_ == Kind::SentinelA || kind_ == Kind::SentinelB; }
    std::int64_t as_integer() const noexcept { return number_; }
    const std::string& as_string() const noexcept { return text_; }

    /// DSL rendering: 12, 'text', #A, #B.
    std::string to_string() const;

    auto operator<=>(const Value&) const = default;
    bool operator==(const Value&) const = default;

private:
    Kind kind_ = Kind::Integer;
    std::int64_t number_ = 0;
    std::string text_;
};

using Tuple = std::vector<Value>;

std::string to_string(const Tuple& tuple);

struct ValueHash {
    std::size_t operator()(const Value& v) const noexcept {
        std::size_t h = std::hash<std::int64_t>{}(v.as_integer());
        h ^= std::hash<std::string>{}(v.as_string()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h ^ static_cast<std::size_t>(v.kind());
    }
};

}  // namespace dbcat
