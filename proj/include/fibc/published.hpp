#pragma once

#include <string>
#include <vector>

#include "circuit.hpp"

// Published length-48 weaves used as regression fixtures.
namespace fibc::published {

inline const std::string r_identity = "s1^-1 s1^-2 s2^2 s1^4 s2^-2 s1^-4 s2^-2 s1^2 s2^2 s1^4 s2^4 s1^2 s2^-4 s1^-2 s2^2 s1^-2 s2^-2 s1^2 s2^-2 s2^-1";
inline const std::string injection = "s1^1 s1^2 s2^2 s1^4 s2^4 s1^4 s2^2 s1^4 s2^2 s1^2 s2^-2 s1^2 s2^-2 s1^2 s2^2 s1^2 s2^-2 s1^2 s2^-2 s1^2 s2^-1";
inline const std::string target_ix = "s2^1 s2^4 s1^-2 s2^-2 s1^-2 s2^-4 s1^-2 s2^2 s1^2 s2^-4 s1^2 s2^4 s1^-2 s2^4 s1^-2 s2^-4 s1^-2 s2^-2 s2^-1";
inline const std::string r_not = "s1^-1 s2^2 s1^-4 s2^2 s1^-2 s2^2 s1^-2 s2^4 s1^-2 s2^-2 s1^-2 s2^4 s1^-2 s2^-2 s1^2 s2^2 s1^-2 s2^-2 s1^-2 s2^-2 s1^-2 s2^1";
inline const std::string ccs_r_not = "s1^1 s1^2 s2^2 s1^-2 s2^2 s1^-2 s2^-2 s1^-2 s2^4 s1^-2 s2^-2 s1^-2 s2^2 s1^-2 s2^2 s1^-2 s2^2 s1^2 s2^2 s1^-2 s2^-2 s1^2 s2^-2 s2^1";
inline const std::string ccs_injection = "s1^1 s1^2 s2^2 s1^2 s2^2 s1^-2 s2^2 s1^4 s2^2 s1^-2 s2^2 s1^2 s2^-2 s1^4 s2^4 s1^2 s2^-2 s1^2 s2^4 s1^2 s2^-1";
inline const std::string cnot_injection = "s1^-1 s1^-2 s2^2 s1^4 s2^2 s1^4 s2^-2 s1^2 s2^-2 s1^2 s2^4 s1^2 s2^-2 s1^2 s2^-4 s1^-2 s2^-4 s1^-2 s2^-2 s2^-1";
inline const std::string sqrt_not = "s2^-1 s1^2 s2^4 s1^-2 s2^-4 s1^2 s2^-2 s1^2 s2^4 s1^-2 s2^2 s1^2 s2^4 s1^2 s2^-2 s1^4 s2^4 s1^2 s2^-1";

struct StandaloneFixture {
    std::string name;
    std::string word;
    std::string target;  // gate_matrix name
    double printed_error;
};

inline std::vector<StandaloneFixture> standalone() {
    return {
        {"m-identity R", r_identity, "I", 1.51e-3},
        {"m-identity I", injection, "I", 1.51e-3},
        {"m-identity S", target_ix, "iX", 8.55e-4},
        {"m-not R", r_not, "iX", 8.55e-4},
        {"m-not I", injection, "I", 1.51e-3},
        {"m-not S", target_ix, "iX", 8.55e-4},
        {"ccs R", ccs_r_not, "iX", 8.55e-4},
        {"ccs I", ccs_injection, "I", 1.51e-3},
        {"ccs S", target_ix, "iX", 8.55e-4},
        {"ccs NOT", target_ix, "iX", 8.55e-4},
        {"decomposition CNOT injection", cnot_injection, "I", 1.51e-3},
        {"decomposition C-sqrt injection", injection, "I", 1.51e-3},
        {"decomposition sqrt-NOT", sqrt_not, "sqrt-iX", 1.24e-3},
        {"decomposition NOT", target_ix, "iX", 8.55e-4},
    };
}

inline Role role(const std::string& word, const std::string& target) { return Role::of(BraidWord::parse(word), gate_matrix(target)); }

inline GateCircuit m_identity_ix(const ConventionProfile& p = pinned_profile()) {
    return build_m_gate(role(r_identity, "I"), role(injection, "I"), role(target_ix, "iX"), p);
}

inline GateCircuit m_not_ix(const ConventionProfile& p = pinned_profile()) {
    return build_m_gate(role(r_not, "iX"), role(injection, "I"), role(target_ix, "iX"), p);
}

inline GateCircuit ccs_itoffoli(const ConventionProfile& p = pinned_profile()) {
    const Role s = role(target_ix, "iX");
    const GateCircuit m = build_m_gate(role(ccs_r_not, "iX"), role(ccs_injection, "I"), s, p);
    return build_ccs(m, role(target_ix, "iX"), s, p);
}

inline GateCircuit decomposition_itoffoli(const ConventionProfile& p = pinned_profile()) {
    return build_ccs_decomposition(role(cnot_injection, "I"), role(injection, "I"), role(sqrt_not, "sqrt-iX"), role(target_ix, "iX"), p);
}

}  // namespace fibc::published
