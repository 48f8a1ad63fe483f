#include "charfn/config.hpp"

#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "charfn/error.hpp"

namespace charfn {

Config& Config::global() {
    static Config cfg = load_config();
    return cfg;
}

namespace {

void apply_env(const char* name, std::uint64_t& slot) {
    if (const char* v = std::getenv(name)) {
        char* end = nullptr;
        unsigned long long parsed = std::strtoull(v, &end, 10);
        require(end && *end == '\0' && parsed > 0, ErrorKind::Usage,
                std::string(name) + " must be a positive integer, got '" + v + "'");
        slot = parsed;
    }
}

} // namespace

Config load_config(const std::string& config_path) {
    Config cfg;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        require(in.good(), ErrorKind::Io, "cannot open config file " + config_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorKind::Usage, "config file " + config_path + " is not valid JSON: " + e.what());
        }
        auto pick = [&](const char* key, std::uint64_t& slot) {
            if (j.contains(key)) {
                require(j[key].is_number_unsigned() && j[key].get<std::uint64_t>() > 0,
                        ErrorKind::Usage,
                        std::string("config key ") + key + " must be a positive integer");
                slot = j[key].get<std::uint64_t>();
            }
        };
        pick("max_group_order", cfg.max_group_order);
        pick("max_cyclotomic_order", cfg.max_cyclotomic_order);
        pick("max_dual_level", cfg.max_dual_level);
        pick("max_field_size", cfg.max_field_size);
    }
    apply_env("CHARFN_MAX_GROUP_ORDER", cfg.max_group_order);
    apply_env("CHARFN_MAX_CYCLOTOMIC_ORDER", cfg.max_cyclotomic_order);
    apply_env("CHARFN_MAX_DUAL_LEVEL", cfg.max_dual_level);
    apply_env("CHARFN_MAX_FIELD_SIZE", cfg.max_field_size);
    return cfg;
}

} // namespace charfn
