#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace molars {

enum class PrimType { String, Integer, Boolean };

inline const char* prim_type_name(PrimType t) {
    switch (t) {
        case PrimType::String: return "String";
        case PrimType::Integer: return "Integer";
        case PrimType::Boolean: return "Boolean";
    }
    return "?";
}

inline bool prim_type_from_name(const std::string& s, PrimType& out) {
    if (s == "String") { out = PrimType::String; return true; }
    if (s == "Integer") { out = PrimType::Integer; return true; }
    if (s == "Boolean") { out = PrimType::Boolean; return true; }
    return false;
}

using ObjectId = std::int32_t;
constexpr ObjectId kNoObject = -1;

// Reference to a repository object; compared by identity.
struct ObjRef {
    ObjectId id = kNoObject;
    friend bool operator==(ObjRef a, ObjRef b) { return a.id == b.id; }
};

// Runtime value of an attribute slot, variable or expression.
using Value = std::variant<std::int64_t, std::string, bool, ObjRef>;

inline bool value_is(const Value& v, PrimType t) {
    switch (t) {
        case PrimType::Integer: return std::holds_alternative<std::int64_t>(v);
        case PrimType::String: return std::holds_alternative<std::string>(v);
        case PrimType::Boolean: return std::holds_alternative<bool>(v);
    }
    return false;
}

inline std::string value_to_string(const Value& v) {
    if (auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    if (auto* s = std::get_if<std::string>(&v)) return "\"" + *s + "\"";
    if (auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
    return "@" + std::to_string(std::get<ObjRef>(v).id);
}

// Error kinds map onto the CLI exit-code contract: parse/validate problems
// exit 1, runtime failures exit 2.
enum class ErrorKind { Parse, Validate, Runtime };

struct Error : std::runtime_error {
    ErrorKind kind;
    Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void fail_parse(const std::string& msg) { throw Error(ErrorKind::Parse, msg); }
[[noreturn]] inline void fail_validate(const std::string& msg) { throw Error(ErrorKind::Validate, msg); }
[[noreturn]] inline void fail_runtime(const std::string& msg) { throw Error(ErrorKind::Runtime, msg); }

} // namespace molars
