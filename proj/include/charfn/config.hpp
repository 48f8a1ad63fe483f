#pragma once

#include <cstdint>
#include <string>

namespace charfn {

// Resource bounds shared by every module.  Defaults are engineering
// choices sized for desk-scale verification runs; all of them can be
// raised through a config file or CHARFN_* environment variables
// (see load_config in config.cpp).  Environment variables win over the
// config file, the config file wins over the defaults.
struct Config {
    // Largest finite group that may be fully enumerated.
    std::uint64_t max_group_order = 100000;
    // Largest cyclotomic order N for which Q(zeta_N) arithmetic is allowed.
    std::uint64_t max_cyclotomic_order = 4096; // 2^12
    // Largest extension level m for dual-group level systems.
    std::uint64_t max_dual_level = 12;
    // Largest finite field materialized with full log/antilog tables.
    // Fields serve as embedding anchors for towers, so this is allowed to
    // exceed max_group_order.
    std::uint64_t max_field_size = 1u << 20;

    static Config& global();
};

// Reads overrides from an optional JSON config file and from the
// environment (CHARFN_MAX_GROUP_ORDER, CHARFN_MAX_CYCLOTOMIC_ORDER,
// CHARFN_MAX_DUAL_LEVEL, CHARFN_MAX_FIELD_SIZE).
Config load_config(const std::string& config_path = "");

} // namespace charfn
