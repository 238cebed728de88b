#pragma once

#include <cstdint>
#include <string>

#include "snnsim/weights.hpp"

namespace snnsim {

enum class PolicyKind {
    NoMitigation,
    BnP1,
    BnP2,
    BnP3,
    ReExecutionTMR,
};

const char *to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(const std::string &s);

// Active mitigation technique plus its weight-bounding parameters. wgh_th
// is an int rather than an 8-bit code because BnP3 uses wgh_max + 1 (which
// can be 256, meaning "no code is ever bounded"); see make_policy.
struct MitigationPolicy {
    PolicyKind kind = PolicyKind::NoMitigation;
    int wgh_th = 256;
    int wgh_def = 0;
    int tmr_copies = 3;

    bool bounds_weights() const
    {
        return kind == PolicyKind::BnP1 || kind == PolicyKind::BnP2 ||
                kind == PolicyKind::BnP3;
    }
    bool protects_neurons() const { return bounds_weights(); }

    // Throws std::invalid_argument on a malformed policy (e.g. a BnP variant
    // whose replacement value is not below its threshold).
    void validate() const;
};

// Weight bounding: codes at or above the threshold are replaced with the
// policy's predefined safe value, everything below passes through.
inline std::uint8_t bound_weight(std::uint8_t wgh, const MitigationPolicy &policy)
{
    return wgh >= policy.wgh_th ? static_cast<std::uint8_t>(policy.wgh_def) : wgh;
}

// Builds a policy from the clean-model statistics:
//   BnP1  wgh_th = wgh_max,     wgh_def = 0
//   BnP2  wgh_th = wgh_max,     wgh_def = wgh_max
//   BnP3  wgh_th = wgh_max + 1, wgh_def = wgh_hp
// BnP1 keeps the threshold at the clean maximum, so clean weights equal to
// wgh_max are themselves zeroed (the >= boundary). BnP3 bounds only codes
// strictly above the clean maximum; wgh_max itself is a clean value and
// stays, which keeps BnP3 an exact identity on a fault-free crossbar.
// NoMitigation and ReExecutionTMR never bound.
MitigationPolicy make_policy(PolicyKind kind, const CleanModelStats &stats);

} // namespace snnsim
