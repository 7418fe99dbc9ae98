#pragma once

#include <utility>

#include "gvi/types.hpp"

namespace gvi {

/// Weights of the KL and entropy regularizers in the policy-search
/// objective: 1/kl_coeff on KL(pi, reference), 1/ent_coeff on policy
/// entropy. They induce the backup knobs alpha = ent/(ent+kl) and
/// beta = ent*kl/(ent+kl).
struct RegParams {
    double kl_coeff;
    double ent_coeff;

    RegParams(double kl, double ent) : kl_coeff(kl), ent_coeff(ent) {
        if (!(kl > 0.0) || !std::isfinite(kl) || !(ent > 0.0) || !std::isfinite(ent))
            throw invalid_input("RegParams: coefficients must be finite and positive");
    }

    double alpha() const { return ent_coeff / (ent_coeff + kl_coeff); }
    double beta() const { return ent_coeff * kl_coeff / (ent_coeff + kl_coeff); }

    /// Inverts the map: ent = beta/(1-alpha), kl = beta/alpha.
    static RegParams from_gvi(double alpha, double beta) {
        if (!(alpha > 0.0 && alpha < 1.0)) throw invalid_input("RegParams: alpha must be in (0,1)");
        if (!(beta > 0.0) || !std::isfinite(beta))
            throw invalid_input("RegParams: beta must be finite and positive");
        return RegParams(beta / alpha, beta / (1.0 - alpha));
    }
};

/// Value of pi under the regularized objective: fixed point of
///   V = sum_a pi (r + gamma P V) - KL(pi,ref)/kl_coeff + H(pi)/ent_coeff,
/// iterated until the residual drops below tol. H is Shannon entropy.
VTable regularized_value(const Mdp& m, const PolicyTable& pi, const PolicyTable& ref,
                         const RegParams& reg, double tol = 1e-10, long max_iters = 1000000);

/// The regularized optimality operator in closed form:
///   (Lv)(s) = (1/beta) log sum_a ref^alpha exp(beta (r + gamma P v)),
/// a gamma-contraction. ref must be strictly positive.
VTable l_operator(const Mdp& m, const VTable& v, const PolicyTable& ref, const RegParams& reg);

/// The policy attaining the sup inside L: proportional to
/// ref^alpha exp(beta (r + gamma P v)), rows normalized.
PolicyTable optimal_reg_policy(const Mdp& m, const VTable& v, const PolicyTable& ref,
                               const RegParams& reg);

/// Alternates: solve v = L v to tol against the current reference, then
/// replace the reference by the attaining policy; outer_iters rounds from a
/// uniform reference. Returns the final value and reference.
std::pair<VTable, PolicyTable> pi_like_solve(const Mdp& m, const RegParams& reg, int outer_iters,
                                             double tol = 1e-10, long max_iters = 1000000);

/// Single dynamic-programming sweep: v' = L v against reference pi, and the
/// improvement step. With modified=true (the default and the variant that
/// maps exactly onto the generalized backup) the new policy reuses v inside
/// the exponent; modified=false re-derives it from v'.
std::pair<VTable, PolicyTable> vi_like_step(const Mdp& m, const VTable& v, const PolicyTable& pi,
                                            const RegParams& reg, bool modified = true);

/// The Q-table the generalized backup would hold given the sweep state:
///   Q = r + gamma P v + (alpha/beta) log pi + (alpha-gamma)/((1-gamma) beta) log|A|.
QTable gvi_equivalence(const Mdp& m, const VTable& v, const PolicyTable& pi,
                       const RegParams& reg);

}  // namespace gvi
