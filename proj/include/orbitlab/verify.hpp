#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace orbitlab::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Individual sampling checks.  All are deterministic: sample i derives its
// generator from (seed, i), so results are independent of thread count.
namespace checks {

// core
CheckResult sigma_involution(std::uint64_t samples, unsigned seed = 101);
CheckResult tau_involution(std::uint64_t samples, unsigned seed = 102);
CheckResult f_factorizes(std::uint64_t samples, unsigned seed = 103);
CheckResult reversibility(std::uint64_t samples, unsigned seed = 104);
CheckResult round_trip(std::uint64_t samples, unsigned seed = 105);
CheckResult two_form_invariance(std::uint64_t samples, unsigned seed = 106);
CheckResult jacobian_finite_diff(std::uint64_t samples, unsigned seed = 107);
CheckResult infinity_orbit(std::uint64_t samples, unsigned seed = 108);
CheckResult indeterminacy_sets();
CheckResult bidegree_laws();
CheckResult indeterminacy_orbit_checks();
CheckResult normal_form_basics();

// regions
CheckResult t0_invariance(std::uint64_t samples, unsigned seed = 201);
CheckResult rect_nesting(std::uint64_t samples, unsigned seed = 202);
CheckResult a_alternation(std::uint64_t samples, unsigned seed = 203);
CheckResult line_family(std::uint64_t samples, unsigned seed = 204);
CheckResult blade_rotation(std::uint64_t samples_per_inclusion, unsigned seed = 205);
CheckResult monotone_escape(std::uint64_t samples, unsigned seed = 206);
CheckResult transition_matches_composition(std::uint64_t samples, unsigned seed = 207);
CheckResult adapted_round_trip(std::uint64_t samples, unsigned seed = 208);
CheckResult reverse_trap(std::uint64_t samples, unsigned seed = 209);
CheckResult partition_mapping(std::uint64_t samples, unsigned seed = 210);
CheckResult plane_coverage(std::uint64_t samples, unsigned seed = 211);
CheckResult biorbit_sigma_equivariance(std::uint64_t samples, unsigned seed = 212);

// a3
CheckResult phi_cocycle(std::uint64_t samples, unsigned seed = 301);
CheckResult phi_sigma_identities(std::uint64_t samples, unsigned seed = 302);
CheckResult level_curve_inclusion(int grid = 600);
CheckResult wedge_contraction(std::uint64_t samples, unsigned seed = 303);
CheckResult wedge_coverage(std::uint64_t samples, unsigned seed = 304);
CheckResult wedge_chart_round_trip(std::uint64_t samples, unsigned seed = 305);
CheckResult wedge_transition_basics();
CheckResult comparison_gap_positive();
CheckResult escape_bound_empirical(std::uint64_t samples, unsigned seed = 306);
CheckResult area_eta_checks(unsigned seed = 307);

}  // namespace checks

// Suites: "core", "regions", "a3", "all".  Unknown names throw.
std::vector<CheckResult> run_suite(const std::string& suite);

// Prints one PASS/FAIL line per check; returns the number of failures.
// Output is byte-deterministic across runs and thread counts.
int run_and_report(const std::string& suite, std::ostream& os);

}  // namespace orbitlab::verify
