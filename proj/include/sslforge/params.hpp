#pragma once

#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sslforge/errors.hpp"

namespace sslforge {

// String-keyed parameter assignment. Backed by an order-preserving JSON
// object so grids enumerate in declaration order and configs round-trip.
class ParamMap {
public:
    using Json = nlohmann::ordered_json;

    ParamMap() : obj_(Json::object()) {}
    explicit ParamMap(Json obj) : obj_(std::move(obj)) {
        if (!obj_.is_object()) throw ConfigError("ParamMap: expected a JSON object");
    }

    static ParamMap parse(const std::string& text) {
        Json j = Json::parse(text, nullptr, false);
        if (j.is_discarded()) throw ConfigError("ParamMap: invalid JSON");
        return ParamMap(std::move(j));
    }

    bool has(const std::string& key) const { return obj_.contains(key); }
    bool empty() const { return obj_.empty(); }

    double get_double(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        const auto& v = obj_.at(key);
        if (!v.is_number()) throw ConfigError("parameter '" + key + "' must be numeric");
        return v.get<double>();
    }

    std::int64_t get_int(const std::string& key, std::int64_t fallback) const {
        if (!has(key)) return fallback;
        const auto& v = obj_.at(key);
        if (v.is_number_integer()) return v.get<std::int64_t>();
        if (v.is_number_float()) {
            const double d = v.get<double>();
            const auto i = static_cast<std::int64_t>(d);
            if (static_cast<double>(i) != d)
                throw ConfigError("parameter '" + key + "' must be an integer");
            return i;
        }
        throw ConfigError("parameter '" + key + "' must be an integer");
    }

    bool get_bool(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const auto& v = obj_.at(key);
        if (!v.is_boolean()) throw ConfigError("parameter '" + key + "' must be a boolean");
        return v.get<bool>();
    }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        const auto& v = obj_.at(key);
        if (!v.is_string()) throw ConfigError("parameter '" + key + "' must be a string");
        return v.get<std::string>();
    }

    // Lists of index pairs, e.g. must-link constraints [[0,1],[2,3]].
    std::vector<std::pair<std::size_t, std::size_t>> get_index_pairs(
        const std::string& key) const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        if (!has(key)) return out;
        const auto& v = obj_.at(key);
        if (!v.is_array()) throw ConfigError("parameter '" + key + "' must be a list of pairs");
        for (const auto& item : v) {
            if (!item.is_array() || item.size() != 2 || !item[0].is_number() ||
                !item[1].is_number())
                throw ConfigError("parameter '" + key + "' must be a list of index pairs");
            out.emplace_back(item[0].get<std::size_t>(), item[1].get<std::size_t>());
        }
        return out;
    }

    std::vector<std::size_t> get_index_list(const std::string& key) const {
        std::vector<std::size_t> out;
        if (!has(key)) return out;
        const auto& v = obj_.at(key);
        if (!v.is_array()) throw ConfigError("parameter '" + key + "' must be a list");
        for (const auto& item : v) {
            if (!item.is_number()) throw ConfigError("parameter '" + key + "' must list indices");
            out.push_back(item.get<std::size_t>());
        }
        return out;
    }

    void set(const std::string& key, Json value) { obj_[key] = std::move(value); }

    // Consumers reject unknown names: anything outside `allowed` is an error.
    void check_allowed(const std::string& consumer,
                       std::initializer_list<const char*> allowed) const {
        std::set<std::string> ok;
        for (const char* a : allowed) ok.insert(a);
        for (auto it = obj_.begin(); it != obj_.end(); ++it) {
            if (!ok.count(it.key()))
                throw ConfigError(consumer + ": unknown parameter '" + it.key() + "'");
        }
    }

    const Json& json() const { return obj_; }
    Json& json() { return obj_; }

private:
    Json obj_;
};

}  // namespace sslforge
