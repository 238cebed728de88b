#include "snnsim/mitigation.hpp"

#include <stdexcept>

namespace snnsim {

const char *to_string(PolicyKind kind)
{
    switch (kind) {
    case PolicyKind::NoMitigation: return "NoMitigation";
    case PolicyKind::BnP1: return "BnP1";
    case PolicyKind::BnP2: return "BnP2";
    case PolicyKind::BnP3: return "BnP3";
    case PolicyKind::ReExecutionTMR: return "ReExecutionTMR";
    }
    return "?";
}

PolicyKind policy_kind_from_string(const std::string &s)
{
    if (s == "NoMitigation") return PolicyKind::NoMitigation;
    if (s == "BnP1") return PolicyKind::BnP1;
    if (s == "BnP2") return PolicyKind::BnP2;
    if (s == "BnP3") return PolicyKind::BnP3;
    if (s == "ReExecutionTMR") return PolicyKind::ReExecutionTMR;
    throw std::runtime_error("unknown mitigation policy: '" + s + "'");
}

void MitigationPolicy::validate() const
{
    if (tmr_copies != 3) {
        throw std::invalid_argument("MitigationPolicy: tmr_copies is fixed at 3");
    }
    if (bounds_weights()) {
        if (wgh_th < 0 || wgh_th > 256 || wgh_def < 0 || wgh_def > 255) {
            throw std::invalid_argument("MitigationPolicy: bounding codes out of range");
        }
        // The replacement value must itself be in the safe range, except for
        // BnP2 where it sits exactly on the threshold (and bounding is then
        // the identity on that code).
        if (kind == PolicyKind::BnP2 ? wgh_def > wgh_th : wgh_def >= wgh_th) {
            throw std::invalid_argument(
                    "MitigationPolicy: wgh_def must not exceed wgh_th");
        }
    }
}

MitigationPolicy make_policy(PolicyKind kind, const CleanModelStats &stats)
{
    MitigationPolicy policy;
    policy.kind = kind;
    switch (kind) {
    case PolicyKind::BnP1:
        policy.wgh_th = stats.wgh_max;
        policy.wgh_def = 0;
        break;
    case PolicyKind::BnP2:
        policy.wgh_th = stats.wgh_max;
        policy.wgh_def = stats.wgh_max;
        break;
    case PolicyKind::BnP3:
        policy.wgh_th = stats.wgh_max + 1;
        policy.wgh_def = stats.wgh_hp;
        break;
    case PolicyKind::NoMitigation:
    case PolicyKind::ReExecutionTMR:
        break;
    }
    policy.validate();
    return policy;
}

} // namespace snnsim
