#include "dbcat/value.hpp"

namespace dbcat {

std::string Value::to_string() const {
    switch (kind_) {
    case Kind::Integer:
        return std::to_string(number_);
    case Kind::String: {
        std::string out = "'";
        for (char c : text_) {
            if (c == '\'' || c == '\\') out += '\\';
            out += c;
        }
        out += '\'';
        return out;
    }
    case Kind::SentinelA:
        return "#A";
    case Kind::SentinelB:
        return "#B";
    }
    return {};
}

std::string to_string(const Tuple& tuple) {
    std::string out = "(";
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) out += ',';
        out += tuple[i].to_string();
    }
    out += ')';
    return out;
}

}  // namespace dbcat
