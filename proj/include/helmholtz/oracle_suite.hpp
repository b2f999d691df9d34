#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "helmholtz/bound_report.hpp"

namespace helmholtz {

/// Randomized admissible instances of the three comparison theorems.
///
/// sturm:  J_m against the matched Euler solution on [gamma m, delta m];
///         L_{kappa,m} against the matched power comparator on [rho1, rho2]
///         with sin_kappa(rho2) <= delta m; L_{kappa,m} against the matched
///         oscillatory comparator from rho1 = sin_kappa^-1(xi m) to just
///         before the next zero of L.
/// picone: roots (pi/2 + j pi) l^(1/3) of rho^-1/2 cos(rho l^(-1/3)) against zeros
///         of J_l on [l + l^(1/3), X]; zeros of L_{kappa,m+1} against zeros of
///         L_{kappa,m}.
/// sonin:  extrema envelopes of L_{kappa,m} past sin_kappa^-1(m).
enum class Theorem { sturm, picone, sonin };

const char* to_string(Theorem t);
Theorem parse_theorem(const std::string& s);

struct OracleOutcome {
  Theorem theorem = Theorem::sturm;
  int instances = 0;
  int passed = 0;
  std::vector<BoundReport> reports;  ///< one per instance, in draw order
};

/// Draws `count` instances from a generator seeded with `seed`. Identical
/// arguments give identical reports.
OracleOutcome run_oracle_instances(Theorem theorem, int count, std::uint64_t seed);

struct InjectionOutcome {
  Theorem theorem = Theorem::sturm;
  std::string expected;  ///< hypothesis name that must be raised
  std::string raised;    ///< what was actually raised ("" if nothing)
  bool ok() const { return expected == raised; }
};

/// Instances with one hypothesis deliberately broken: q_ordering,
/// initial_data, initial_sign, low_positive (sturm), sorted_zeros (picone)
/// and pq_increasing (sonin).
std::vector<InjectionOutcome> run_injected_violations();

}  // namespace helmholtz
