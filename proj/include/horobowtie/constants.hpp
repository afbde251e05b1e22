#pragma once

#include "bigscalar.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace horobowtie {

/// c0 = (2853 * delta * c_norm + 2^851)^2, the master comparison constant.
inline BigScalar compute_c0(const BigScalar& delta, const BigScalar& c_norm) {
    BigScalar lin = BigScalar(2853) * delta * c_norm + BigScalar::pow2(851);
    return lin * lin;
}

struct ConstantsLedger {
    BigScalar delta;
    BigScalar c_norm;
    BigScalar c0;

    static ConstantsLedger create(const BigScalar& delta, const BigScalar& c_norm) {
        if (delta < BigScalar(1))
            throw std::invalid_argument("ConstantsLedger: delta must be >= 1");
        if (c_norm < BigScalar(1))
            throw std::invalid_argument("ConstantsLedger: c_norm must be >= 1");
        return ConstantsLedger{delta, c_norm, compute_c0(delta, c_norm)};
    }
};

enum class ThresholdId {
    C0_x4,
    C0_x7,
    C0_x13,
    C0_x15,
    C0_x16,
    C0_x17,
    C0_x22,
    C0_x196_CN,
    DELTA_x24,
    DELTA_x54,
    DELTA_x96,
    DELTA_x144,
    DELTA_x200,
    DELTA_x288,
    DELTA_x768,
    DELTA_x1152_CN,
    DELTA_x1700,
};

inline const std::vector<std::pair<std::string, ThresholdId>>& threshold_table() {
    static const std::vector<std::pair<std::string, ThresholdId>> table = {
        {"C0_x4", ThresholdId::C0_x4},
        {"C0_x7", ThresholdId::C0_x7},
        {"C0_x13", ThresholdId::C0_x13},
        {"C0_x15", ThresholdId::C0_x15},
        {"C0_x16", ThresholdId::C0_x16},
        {"C0_x17", ThresholdId::C0_x17},
        {"C0_x22", ThresholdId::C0_x22},
        {"C0_x196_CN", ThresholdId::C0_x196_CN},
        {"DELTA_x24", ThresholdId::DELTA_x24},
        {"DELTA_x54", ThresholdId::DELTA_x54},
        {"DELTA_x96", ThresholdId::DELTA_x96},
        {"DELTA_x144", ThresholdId::DELTA_x144},
        {"DELTA_x200", ThresholdId::DELTA_x200},
        {"DELTA_x288", ThresholdId::DELTA_x288},
        {"DELTA_x768", ThresholdId::DELTA_x768},
        {"DELTA_x1152_CN", ThresholdId::DELTA_x1152_CN},
        {"DELTA_x1700", ThresholdId::DELTA_x1700},
    };
    return table;
}

inline BigScalar threshold(const ConstantsLedger& ledger, ThresholdId id) {
    switch (id) {
        case ThresholdId::C0_x4: return BigScalar(4) * ledger.c0;
        case ThresholdId::C0_x7: return BigScalar(7) * ledger.c0;
        case ThresholdId::C0_x13: return BigScalar(13) * ledger.c0;
        case ThresholdId::C0_x15: return BigScalar(15) * ledger.c0;
        case ThresholdId::C0_x16: return BigScalar(16) * ledger.c0;
        case ThresholdId::C0_x17: return BigScalar(17) * ledger.c0;
        case ThresholdId::C0_x22: return BigScalar(22) * ledger.c0;
        case ThresholdId::C0_x196_CN: return BigScalar(196) * ledger.c0 * ledger.c_norm;
        case ThresholdId::DELTA_x24: return BigScalar(24) * ledger.delta;
        case ThresholdId::DELTA_x54: return BigScalar(54) * ledger.delta;
        case ThresholdId::DELTA_x96: return BigScalar(96) * ledger.delta;
        case ThresholdId::DELTA_x144: return BigScalar(144) * ledger.delta;
        case ThresholdId::DELTA_x200: return BigScalar(200) * ledger.delta;
        case ThresholdId::DELTA_x288: return BigScalar(288) * ledger.delta;
        case ThresholdId::DELTA_x768: return BigScalar(768) * ledger.delta;
        case ThresholdId::DELTA_x1152_CN: return BigScalar(1152) * ledger.delta * ledger.c_norm;
        case ThresholdId::DELTA_x1700: return BigScalar(1700) * ledger.delta;
    }
    throw std::logic_error("threshold: unknown id");
}

inline BigScalar threshold_by_name(const ConstantsLedger& ledger, const std::string& name) {
    for (const auto& [n, id] : threshold_table())
        if (n == name) return threshold(ledger, id);
    std::string msg = "threshold_by_name: unknown threshold '" + name + "'; known:";
    for (const auto& [n, id] : threshold_table()) msg += " " + n;
    throw std::invalid_argument(msg);
}

}  // namespace horobowtie
